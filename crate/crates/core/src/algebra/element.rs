use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use super::{AlgebraContext, AlgebraExt};
use crate::error::{Error, Result};
use crate::field::Field;

/// A linear combination `Σ c_a b(a)` in a fixed algebra.
#[derive(Clone)]
pub struct AlgebraElement<F: Field> {
    ctx: Arc<AlgebraContext<F>>,
    pub(super) coeffs: Vec<F::Elem>,
}

/// Wire form: `{"char", "m", "lambda2", "coeffs"}` with decimal-string
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementJson {
    pub char: u64,
    pub m: u64,
    pub lambda2: usize,
    pub coeffs: Vec<String>,
}

impl<F: Field> AlgebraElement<F> {
    pub(super) fn from_parts(ctx: Arc<AlgebraContext<F>>, coeffs: Vec<F::Elem>) -> Self {
        debug_assert_eq!(coeffs.len(), ctx.dimension());
        Self { ctx, coeffs }
    }

    pub fn context(&self) -> &Arc<AlgebraContext<F>> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `b(a)`; zero past `λ₂`.
    pub fn coeff(&self, a: usize) -> F::Elem {
        self.coeffs
            .get(a)
            .cloned()
            .unwrap_or_else(|| self.ctx.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        let f = self.ctx.field();
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        *self == self.ctx.one()
    }

    /// Degrees carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        let f = self.ctx.field();
        (0..self.coeffs.len())
            .filter(|&a| !f.is_zero(&self.coeffs[a]))
            .collect()
    }

    /// Largest degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        let f = self.ctx.field();
        self.coeffs.iter().rposition(|c| !f.is_zero(c))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_algebra(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.ctx, other.ctx
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = self.ctx.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Self::from_parts(self.ctx.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = self.ctx.field();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Ok(Self::from_parts(self.ctx.clone(), coeffs))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.ctx.field();
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        Self::from_parts(self.ctx.clone(), coeffs)
    }

    /// Bilinear extension of the basis product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = self.ctx.field();
        let mut out = vec![f.zero(); self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (deg, c) in self.ctx.structure_terms(i, j) {
                    out[*deg] = f.add(&out[*deg], &f.mul(&xy, c));
                }
            }
        }
        Ok(Self::from_parts(self.ctx.clone(), out))
    }

    pub fn square(&self) -> Self {
        self.multiply(self).expect("same context")
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.ctx.one();
        for _ in 0..n {
            acc = acc.multiply(self).expect("same context");
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    pub fn to_json(&self) -> ElementJson {
        let f = self.ctx.field();
        ElementJson {
            char: self.ctx.characteristic(),
            m: self.ctx.m(),
            lambda2: self.ctx.lambda2(),
            coeffs: self.coeffs.iter().map(|c| f.render(c)).collect(),
        }
    }
}

impl<F: Field> PartialEq for AlgebraElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_algebra(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for AlgebraElement<F> {}

impl<F: Field> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.ctx)
    }
}

/// Renders as `b(0)+b(3)+…`; coefficients other than 1 prefix their term as
/// `c*b(a)`, and the zero element prints as `0`.
impl<F: Field> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ctx.field();
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            if !first {
                out.write_str("+")?;
            }
            first = false;
            if field.is_one(c) {
                write!(out, "b({a})")?;
            } else {
                write!(out, "{}*b({a})", field.render(c))?;
            }
        }
        if first {
            out.write_str("0")?;
        }
        Ok(())
    }
}

// Operators panic on a context mismatch, the same way ndarray panics on a
// shape mismatch; use the `try_*`/`multiply` methods to get a `Result`.

impl<F: Field> Add for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn add(self, rhs: Self) -> AlgebraElement<F> {
        self.try_add(rhs).expect("elements of the same algebra")
    }
}

impl<F: Field> Sub for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn sub(self, rhs: Self) -> AlgebraElement<F> {
        self.try_sub(rhs).expect("elements of the same algebra")
    }
}

impl<F: Field> Mul for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn mul(self, rhs: Self) -> AlgebraElement<F> {
        self.multiply(rhs).expect("elements of the same algebra")
    }
}

impl<F: Field> Neg for &AlgebraElement<F> {
    type Output = AlgebraElement<F>;
    fn neg(self) -> AlgebraElement<F> {
        let f = self.ctx.field();
        let coeffs = self.coeffs.iter().map(|c| f.neg(c)).collect();
        AlgebraElement::from_parts(self.ctx.clone(), coeffs)
    }
}
