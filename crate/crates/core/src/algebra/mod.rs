//! The centraliser algebra `S_K(λ) = 1_λ S_K(2,r) 1_λ` for a two-part
//! partition `λ = (m + λ₂, λ₂)`, in its canonical basis `b(0), …, b(λ₂)`.
//!
//! Multiplication is driven by the triple-binomial structure constants
//!
//! ```text
//! b(i)·b(j) = Σ_{k=0}^{i} C(j+k, i)·C(j+k, k)·C(m+j+i, i-k)·b(j+k)
//! ```
//!
//! which depend only on `m`. Terms with `j+k > λ₂` vanish; that is the only
//! place where degrees are dropped.

mod char0;
mod element;
mod reduction;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, Result};
use crate::field::{Field, PrimeField, Rationals};

pub use char0::{
    char0_basis_identity, f_polynomial, minimal_polynomial_check, powers_of_b1_independent,
    FPolynomial,
};
pub use element::{AlgebraElement, ElementJson};
pub use reduction::{factorize_basis, power_reduction_check, psi, square_reduction};

/// Exact Pascal triangle `C(n, k)` for `0 ≤ k ≤ n ≤ max`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, zero for `k > n`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            BigUint::default()
        } else {
            self.rows[n][k].clone()
        }
    }

    fn reduced<F: Field>(&self, field: &F) -> Vec<Vec<F::Elem>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|c| field.from_biguint(c)).collect())
            .collect()
    }
}

/// Everything needed to multiply in `S_K(λ)`: the coefficient field, `m`,
/// `λ₂` and the precomputed structure constants.
pub struct AlgebraContext<F: Field> {
    field: F,
    m: u64,
    lambda2: usize,
    // constants[i][j] lists (degree, coefficient) of b(i)·b(j), nonzero only
    constants: Vec<Vec<Vec<(usize, F::Elem)>>>,
}

pub type ModAlgebra = AlgebraContext<PrimeField>;
pub type RationalAlgebra = AlgebraContext<Rationals>;

impl<F: Field> fmt::Debug for AlgebraContext<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraContext")
            .field("char", &self.field.characteristic())
            .field("m", &self.m)
            .field("lambda2", &self.lambda2)
            .finish()
    }
}

impl<F: Field> AlgebraContext<F> {
    pub fn new(field: F, m: u64, lambda2: usize) -> Result<Arc<Self>> {
        let top = usize::try_from(m)
            .ok()
            .and_then(|m| m.checked_add(2 * lambda2))
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("m = {m} too large")))?;
        let binomials = BinomialTable::new(top).reduced(&field);
        let m = m as usize;
        let coefficient = |i: usize, j: usize, k: usize| -> F::Elem {
            let c = field.mul(&binomials[j + k][i], &binomials[j + k][k]);
            field.mul(&c, &binomials[m + j + i][i - k])
        };
        let mut constants = Vec::with_capacity(lambda2 + 1);
        for i in 0..=lambda2 {
            let mut row = Vec::with_capacity(lambda2 + 1);
            for j in 0..=lambda2 {
                let mut terms = Vec::new();
                for k in 0..=i {
                    if j + k > lambda2 {
                        break;
                    }
                    if i > j + k {
                        // C(j+k, i) = 0
                        continue;
                    }
                    let c = coefficient(i, j, k);
                    if !field.is_zero(&c) {
                        terms.push((j + k, c));
                    }
                }
                row.push(terms);
            }
            constants.push(row);
        }
        Ok(Arc::new(Self {
            field,
            m: m as u64,
            lambda2,
            constants,
        }))
    }

    /// Context for the partition `(lambda1, lambda2)`.
    pub fn from_partition(field: F, lambda1: u64, lambda2: usize) -> Result<Arc<Self>> {
        if lambda1 < lambda2 as u64 {
            return invalid(format!("({lambda1}, {lambda2}) is not a partition"));
        }
        Self::new(field, lambda1 - lambda2 as u64, lambda2)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn lambda2(&self) -> usize {
        self.lambda2
    }

    pub fn lambda1(&self) -> u64 {
        self.m + self.lambda2 as u64
    }

    /// Degree `r = λ₁ + λ₂ = m + 2λ₂`.
    pub fn r(&self) -> u64 {
        self.m + 2 * self.lambda2 as u64
    }

    pub fn dimension(&self) -> usize {
        self.lambda2 + 1
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        self.m == other.m && self.lambda2 == other.lambda2 && self.field == other.field
    }

    pub(crate) fn structure_terms(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.constants[i][j]
    }

    fn check_degree(&self, a: usize) -> Result<()> {
        if a > self.lambda2 {
            invalid(format!("degree {a} exceeds lambda2 = {}", self.lambda2))
        } else {
            Ok(())
        }
    }
}

/// Constructors that hand out elements sharing the context.
pub trait AlgebraExt<F: Field> {
    fn zero(&self) -> AlgebraElement<F>;
    fn one(&self) -> AlgebraElement<F>;
    /// The basis element `b(a)`; an error when `a > λ₂`.
    fn basis(&self, a: usize) -> Result<AlgebraElement<F>>;
    /// `b(a)`, read as zero when `a > λ₂`.
    fn basis_or_zero(&self, a: usize) -> AlgebraElement<F>;
    fn element(&self, coeffs: Vec<F::Elem>) -> Result<AlgebraElement<F>>;
    /// `b(i)·b(j)` straight from the structure constants.
    fn mult_basis(&self, i: usize, j: usize) -> Result<AlgebraElement<F>>;
}

impl<F: Field> AlgebraExt<F> for Arc<AlgebraContext<F>> {
    fn zero(&self) -> AlgebraElement<F> {
        AlgebraElement::from_parts(self.clone(), vec![self.field.zero(); self.dimension()])
    }

    fn one(&self) -> AlgebraElement<F> {
        self.basis_or_zero(0)
    }

    fn basis(&self, a: usize) -> Result<AlgebraElement<F>> {
        self.check_degree(a)?;
        Ok(self.basis_or_zero(a))
    }

    fn basis_or_zero(&self, a: usize) -> AlgebraElement<F> {
        let mut coeffs = vec![self.field.zero(); self.dimension()];
        if a <= self.lambda2 {
            coeffs[a] = self.field.one();
        }
        AlgebraElement::from_parts(self.clone(), coeffs)
    }

    fn element(&self, coeffs: Vec<F::Elem>) -> Result<AlgebraElement<F>> {
        if coeffs.len() != self.dimension() {
            return invalid(format!(
                "expected {} coefficients, got {}",
                self.dimension(),
                coeffs.len()
            ));
        }
        Ok(AlgebraElement::from_parts(self.clone(), coeffs))
    }

    fn mult_basis(&self, i: usize, j: usize) -> Result<AlgebraElement<F>> {
        self.check_degree(i)?;
        self.check_degree(j)?;
        let mut out = self.zero();
        for (deg, c) in self.structure_terms(i, j) {
            out.coeffs[*deg] = c.clone();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn char_p(p: u32, m: u64, lambda2: usize) -> Arc<ModAlgebra> {
        AlgebraContext::new(PrimeField::new(p).unwrap(), m, lambda2).unwrap()
    }

    #[test]
    fn binomial_table_matches_small_values() {
        let t = BinomialTable::new(10);
        assert_eq!(t.get(5, 2), BigUint::from(10u32));
        assert_eq!(t.get(10, 5), BigUint::from(252u32));
        assert_eq!(t.get(3, 4), BigUint::default());
    }

    #[test]
    fn b1_squared_in_characteristic_zero() {
        for m in 0..6u64 {
            let ctx = AlgebraContext::new(Rationals, m, 3).unwrap();
            let sq = ctx.mult_basis(1, 1).unwrap();
            let q = ctx.field();
            let expected = ctx
                .element(vec![
                    q.zero(),
                    q.from_i64(m as i64 + 2),
                    q.from_i64(4),
                    q.zero(),
                ])
                .unwrap();
            assert_eq!(sq, expected);
        }
    }

    #[test]
    fn identity_is_b0() {
        let ctx = char_p(3, 2, 4);
        for a in 0..=4 {
            assert_eq!(ctx.mult_basis(0, a).unwrap(), ctx.basis(a).unwrap());
        }
    }

    #[test]
    fn b1_squared_odd_m_characteristic_two() {
        for m in [1u64, 3, 5, 7] {
            let ctx = char_p(2, m, 2);
            assert_eq!(ctx.mult_basis(1, 1).unwrap(), ctx.basis(1).unwrap());
        }
    }

    #[test]
    fn out_of_range_degrees_rejected() {
        let ctx = char_p(2, 1, 2);
        assert!(ctx.mult_basis(3, 0).is_err());
        assert!(ctx.basis(3).is_err());
        assert!(ctx.basis_or_zero(3).is_zero());
    }

    #[test]
    fn partition_constructor() {
        let ctx = AlgebraContext::from_partition(Rationals, 5, 2).unwrap();
        assert_eq!((ctx.m(), ctx.r()), (3, 7));
        assert!(AlgebraContext::from_partition(Rationals, 1, 2).is_err());
    }
}
