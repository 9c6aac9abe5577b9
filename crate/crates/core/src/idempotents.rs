//! Primitive orthogonal idempotents of `S_K(λ)` in characteristic 2.
//!
//! For every `g` with `B(m,g)` odd and `g ≤ λ₂` (equivalently `m+2g ≤ r`) the
//! element
//!
//! ```text
//! e_{m,g} = Π_{u ∈ J} b(2^u) · Π_{u ∈ I} (1 - b(2^u))
//! ```
//!
//! is built from the `(1/1)` columns `J` and `(1/0)` columns `I` of the
//! binary expansion of `B(m,g)`. The functions here construct these elements,
//! their truncations and the blocks they cut out, and check the claims made
//! about them exactly.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{psi, AlgebraContext, AlgebraElement, AlgebraExt, BinomialTable, ModAlgebra};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::rank;
use crate::padic::{bit, bit_length, index_sets, kostka_cell, kostka_entry, IndexSets};

/// Largest `λ₂` for which [`exhaustive_idempotent_scan`] will enumerate the
/// whole algebra.
pub const SCAN_MAX_LAMBDA2: usize = 12;

/// One factor of the product defining `e_{m,g}`, tagged with its column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Factor {
    /// `b(2^u)`, from a `(1/1)` column.
    Basis(u32),
    /// `1 - b(2^u)`, from a `(1/0)` column.
    OneMinus(u32),
}

impl Factor {
    pub fn position(&self) -> u32 {
        match *self {
            Factor::Basis(u) | Factor::OneMinus(u) => u,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Basis(u) => write!(f, "b({})", 1u64 << u),
            Factor::OneMinus(u) => write!(f, "(1+b({}))", 1u64 << u),
        }
    }
}

/// Which factor positions survive a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Truncation {
    /// `u ≤ t`
    AtMost(u32),
    /// `u < t`
    Below(u32),
}

impl Truncation {
    fn keeps(&self, u: u32) -> bool {
        match *self {
            Truncation::AtMost(t) => u <= t,
            Truncation::Below(t) => u < t,
        }
    }
}

/// Symbolic description of `e_{m,g}` or one of its truncations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentDescriptor {
    pub m: u64,
    pub g: u64,
    pub index_sets: IndexSets,
    /// J-factors first, then I-factors, each ascending in position.
    pub factors: Vec<Factor>,
    pub truncation: Option<Truncation>,
    /// Largest nonzero column of `B(m,g)`; `None` only for `m = g = 0`.
    pub degree: Option<u32>,
}

impl IdempotentDescriptor {
    /// Describes `e_{m,g}`; fails when `B(m,g)` is even, since a `(0/1)`
    /// column would make the product zero.
    pub fn new(m: u64, g: u64) -> Result<Self> {
        let cell = kostka_cell(m, g, 2)?;
        if !cell.nonzero {
            return Err(Error::ZeroElement { m, g, n: m + 2 * g });
        }
        let index_sets = index_sets(m, g);
        let factors = index_sets
            .j
            .iter()
            .map(|&u| Factor::Basis(u))
            .chain(index_sets.i.iter().map(|&u| Factor::OneMinus(u)))
            .collect();
        Ok(Self {
            m,
            g,
            index_sets,
            factors,
            truncation: None,
            degree: cell.degree().map(|d| d as u32),
        })
    }

    pub fn truncated(&self, truncation: Truncation) -> Self {
        let mut out = self.clone();
        out.factors.retain(|f| truncation.keeps(f.position()));
        out.truncation = Some(truncation);
        out
    }

    /// Expands the product in `ctx`.
    pub fn evaluate(&self, ctx: &Arc<ModAlgebra>) -> Result<AlgebraElement<PrimeField>> {
        check_context(ctx)?;
        if ctx.m() != self.m {
            return Err(Error::ContextMismatch(format!(
                "descriptor has m = {}, algebra has m = {}",
                self.m,
                ctx.m()
            )));
        }
        if self.g > ctx.lambda2() as u64 {
            return Err(Error::OutOfDegree {
                needed: self.m + 2 * self.g,
                r: ctx.r(),
            });
        }
        let mut acc = ctx.one();
        for factor in &self.factors {
            let u = factor.position();
            let b = if (u as usize) < usize::BITS as usize - 1 {
                ctx.basis_or_zero(1 << u)
            } else {
                ctx.zero()
            };
            let term = match factor {
                Factor::Basis(_) => {
                    // g_u = 1 forces 2^u ≤ g ≤ λ₂
                    assert!(!b.is_zero(), "J-factor b(2^{u}) beyond lambda2");
                    b
                }
                Factor::OneMinus(_) => &ctx.one() - &b,
            };
            acc = acc.multiply(&term)?;
        }
        Ok(acc)
    }

    /// Factored form such as `b(1)*(1+b(2))`, or `1` for the empty product.
    pub fn factored(&self) -> String {
        if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors
                .iter()
                .map(Factor::to_string)
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

fn check_context(ctx: &ModAlgebra) -> Result<()> {
    if ctx.characteristic() == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "idempotents are constructed in characteristic 2 only, got {}",
            ctx.characteristic()
        )))
    }
}

pub fn build_idempotent(ctx: &Arc<ModAlgebra>, g: u64) -> Result<AlgebraElement<PrimeField>> {
    check_context(ctx)?;
    IdempotentDescriptor::new(ctx.m(), g)?.evaluate(ctx)
}

/// `(e_{m,g})_{≤t}` or `(e_{m,g})_{<t}`.
pub fn build_truncated(
    ctx: &Arc<ModAlgebra>,
    g: u64,
    truncation: Truncation,
) -> Result<AlgebraElement<PrimeField>> {
    check_context(ctx)?;
    IdempotentDescriptor::new(ctx.m(), g)?
        .truncated(truncation)
        .evaluate(ctx)
}

/// All `g ≤ λ₂` with `B(m,g)` odd, ascending.
pub fn admissible_g(ctx: &Arc<ModAlgebra>) -> Result<Vec<u64>> {
    check_context(ctx)?;
    let m = ctx.m();
    let mut out = Vec::new();
    for g in 0..=ctx.lambda2() as u64 {
        if kostka_entry(m, g, 2)? == 1 {
            out.push(g);
        }
    }
    Ok(out)
}

/// Number of odd `binom(m+2g, g)` with `g ≤ λ₂`, from exact big integers
/// rather than digit arithmetic.
fn odd_binomial_count(m: u64, lambda2: usize) -> usize {
    let top = m as usize + 2 * lambda2;
    let table = BinomialTable::new(top);
    (0..=lambda2)
        .filter(|&g| table.get(m as usize + 2 * g, g).bit(0))
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub m: u64,
    pub lambda2: usize,
    pub r: u64,
    pub admissible_g: Vec<u64>,
    /// `e² = e` and `e ≠ 0`, one entry per admissible `g`.
    pub idempotent: Vec<bool>,
    /// `e_g·e_d = 0`, one entry per pair in [`Self::pairs`] order.
    pub orthogonal: Vec<bool>,
    pub sum_is_identity: bool,
    pub count_matches: bool,
    pub pass: bool,
    #[serde(skip)]
    pub pairs: Vec<(u64, u64)>,
}

/// Runs every check on the complete set of idempotents for one algebra and records
/// the outcome; failures are data, not errors.
pub fn verify_complete_set(ctx: &Arc<ModAlgebra>) -> Result<VerificationReport> {
    let admissible = admissible_g(ctx)?;
    let elements = admissible
        .iter()
        .map(|&g| build_idempotent(ctx, g))
        .collect::<Result<Vec<_>>>()?;

    let idempotent: Vec<bool> = elements
        .iter()
        .map(|e| !e.is_zero() && e.is_idempotent())
        .collect();

    let mut pairs = Vec::new();
    let mut orthogonal = Vec::new();
    for a in 0..elements.len() {
        for b in (a + 1)..elements.len() {
            pairs.push((admissible[a], admissible[b]));
            orthogonal.push((&elements[a] * &elements[b]).is_zero());
        }
    }

    let sum = elements.iter().fold(ctx.zero(), |acc, e| &acc + e);
    let sum_is_identity = sum.is_one();

    let mut distinct: Vec<&[u32]> = elements
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| e.coeffs())
        .collect();
    distinct.sort();
    distinct.dedup();
    let expected = odd_binomial_count(ctx.m(), ctx.lambda2());
    let count_matches = distinct.len() == expected && admissible.len() == expected;

    let pass = idempotent.iter().all(|&x| x)
        && orthogonal.iter().all(|&x| x)
        && sum_is_identity
        && count_matches;
    Ok(VerificationReport {
        m: ctx.m(),
        lambda2: ctx.lambda2(),
        r: ctx.r(),
        admissible_g: admissible,
        idempotent,
        orthogonal,
        sum_is_identity,
        count_matches,
        pass,
        pairs,
    })
}

/// For a zero column `s` of `B(m,g)`, checks `e² · b(2^s)² = 0` and
/// `(e_{<s})² · ψ_{m,s} = 0`.
pub fn orthogonality_check(ctx: &Arc<ModAlgebra>, g: u64, s: u32) -> Result<bool> {
    check_context(ctx)?;
    let m = ctx.m();
    if kostka_entry(m, g, 2)? == 0 {
        return Err(Error::ZeroElement { m, g, n: m + 2 * g });
    }
    if bit(m + 2 * g, s) != 0 || bit(g, s) != 0 {
        return invalid(format!("column {s} of B({m},{g}) is not zero"));
    }
    let e = build_idempotent(ctx, g)?;
    let b = if s < usize::BITS - 1 {
        ctx.basis_or_zero(1 << s)
    } else {
        ctx.zero()
    };
    let first = (&e.square() * &b.square()).is_zero();
    let below = build_truncated(ctx, g, Truncation::Below(s))?;
    let second = (&below.square() * &psi(s, ctx)?).is_zero();
    Ok(first && second)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDescription {
    pub m: u64,
    pub g: u64,
    /// `a ≤ λ₂ - g` whose binary support avoids the support of `m+2g`.
    pub basis_degrees: Vec<usize>,
    /// `2^s ≤ λ₂ - g` with `(m+2g)_s = 0`.
    pub generator_degrees: Vec<usize>,
    pub dimension: usize,
}

fn require_admissible(ctx: &Arc<ModAlgebra>, g: u64) -> Result<()> {
    check_context(ctx)?;
    if g > ctx.lambda2() as u64 || kostka_entry(ctx.m(), g, 2)? == 0 {
        return invalid(format!(
            "g = {g} is not admissible for m = {}, lambda2 = {}",
            ctx.m(),
            ctx.lambda2()
        ));
    }
    Ok(())
}

pub fn block_description(ctx: &Arc<ModAlgebra>, g: u64) -> Result<BlockDescription> {
    require_admissible(ctx, g)?;
    let top = ctx.m() + 2 * g;
    // above λ₂ - g the products e·b(a) fold back onto lower degrees
    let room = ctx.lambda2() - g as usize;
    let basis_degrees: Vec<usize> = (0..=room).filter(|&a| a as u64 & top == 0).collect();
    let generator_degrees = (0..bit_length(room as u64))
        .filter(|&s| bit(top, s) == 0)
        .map(|s| 1usize << s)
        .collect();
    Ok(BlockDescription {
        m: ctx.m(),
        g,
        dimension: basis_degrees.len(),
        basis_degrees,
        generator_degrees,
    })
}

/// The listed block basis `e_{m,g}·b(a)`.
pub fn block_basis_elements(
    ctx: &Arc<ModAlgebra>,
    g: u64,
) -> Result<Vec<AlgebraElement<PrimeField>>> {
    let block = block_description(ctx, g)?;
    let e = build_idempotent(ctx, g)?;
    block
        .basis_degrees
        .iter()
        .map(|&a| e.multiply(&ctx.basis(a)?))
        .collect()
}

/// Exact rank of a family of elements.
pub fn span_rank<F: Field>(ctx: &Arc<AlgebraContext<F>>, elements: &[AlgebraElement<F>]) -> usize {
    rank(
        ctx.field(),
        elements.iter().map(|e| e.coeffs().to_vec()).collect(),
    )
}

/// Dimension of the block `e_{m,g}·S_K(λ)`, as the rank of all `e·b(a)`.
pub fn block_dimension(ctx: &Arc<ModAlgebra>, g: u64) -> Result<usize> {
    require_admissible(ctx, g)?;
    let e = build_idempotent(ctx, g)?;
    let all = (0..=ctx.lambda2())
        .map(|a| e.multiply(&ctx.basis(a)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(span_rank(ctx, &all))
}

fn sorted(mut v: Vec<AlgebraElement<PrimeField>>) -> Vec<AlgebraElement<PrimeField>> {
    v.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    v.dedup();
    v
}

/// Every solution of `x² = x` in the algebra, by enumerating all `2^{λ₂+1}`
/// elements; sorted by coefficient vector.
pub fn exhaustive_idempotent_scan(
    ctx: &Arc<ModAlgebra>,
) -> Result<Vec<AlgebraElement<PrimeField>>> {
    check_context(ctx)?;
    if ctx.lambda2() > SCAN_MAX_LAMBDA2 {
        return Err(Error::CostBound {
            size: 1u128 << (ctx.lambda2() + 1),
            bound: 1u128 << (SCAN_MAX_LAMBDA2 + 1),
        });
    }
    let dim = ctx.dimension();
    let mut found = Vec::new();
    for mask in 0u32..(1 << dim) {
        let coeffs = (0..dim).map(|a| (mask >> a) & 1).collect();
        let x = ctx.element(coeffs)?;
        if x.is_idempotent() {
            found.push(x);
        }
    }
    Ok(sorted(found))
}

/// All sums of subsets of the constructed `e_{m,g}`, sorted.
pub fn idempotent_subset_sums(ctx: &Arc<ModAlgebra>) -> Result<Vec<AlgebraElement<PrimeField>>> {
    let elements = admissible_g(ctx)?
        .into_iter()
        .map(|g| build_idempotent(ctx, g))
        .collect::<Result<Vec<_>>>()?;
    if elements.len() > 20 {
        return Err(Error::CostBound {
            size: 1u128 << elements.len(),
            bound: 1 << 20,
        });
    }
    let mut sums = Vec::with_capacity(1 << elements.len());
    for mask in 0u32..(1 << elements.len()) {
        let sum = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .fold(ctx.zero(), |acc, (_, e)| &acc + e);
        sums.push(sum);
    }
    Ok(sorted(sums))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(m: u64, lambda2: usize) -> Arc<ModAlgebra> {
        AlgebraContext::new(PrimeField::new(2).unwrap(), m, lambda2).unwrap()
    }

    fn elem(ctx: &Arc<ModAlgebra>, support: &[usize]) -> AlgebraElement<PrimeField> {
        support
            .iter()
            .fold(ctx.zero(), |acc, &a| &acc + &ctx.basis(a).unwrap())
    }

    #[test]
    fn build_examples() {
        for lambda2 in 1..6 {
            let ctx = f2(1, lambda2);
            assert_eq!(build_idempotent(&ctx, 0).unwrap(), elem(&ctx, &[0, 1]));
        }
        let ctx = f2(1, 2);
        assert_eq!(build_idempotent(&ctx, 1).unwrap(), elem(&ctx, &[1]));
        for lambda2 in 0..8 {
            let ctx = f2(0, lambda2);
            assert!(build_idempotent(&ctx, 0).unwrap().is_one());
        }
    }

    #[test]
    fn build_errors() {
        let ctx = f2(1, 5);
        assert!(matches!(
            build_idempotent(&ctx, 2),
            Err(Error::ZeroElement { .. })
        ));
        let ctx = f2(1, 2);
        assert!(matches!(
            build_idempotent(&ctx, 3),
            Err(Error::OutOfDegree { needed: 7, r: 5 })
        ));
        let ctx = AlgebraContext::new(PrimeField::new(3).unwrap(), 1, 2).unwrap();
        assert!(matches!(
            build_idempotent(&ctx, 0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn descriptor_factors() {
        let d = IdempotentDescriptor::new(1, 1).unwrap();
        assert_eq!(d.factors, vec![Factor::Basis(0), Factor::OneMinus(1)]);
        assert_eq!(d.factored(), "b(1)*(1+b(2))");
        assert_eq!(d.degree, Some(1));
        assert_eq!(IdempotentDescriptor::new(0, 0).unwrap().factored(), "1");
        assert_eq!(IdempotentDescriptor::new(0, 0).unwrap().degree, None);
    }

    #[test]
    fn truncation_examples() {
        let ctx = f2(1, 4);
        assert!(build_truncated(&ctx, 1, Truncation::Below(0))
            .unwrap()
            .is_one());
        assert_eq!(
            build_truncated(&ctx, 1, Truncation::AtMost(0)).unwrap(),
            elem(&ctx, &[1])
        );
        assert_eq!(
            build_truncated(&ctx, 1, Truncation::AtMost(10)).unwrap(),
            build_idempotent(&ctx, 1).unwrap()
        );
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_g(&f2(0, 4)).unwrap(), vec![0]);
        assert_eq!(admissible_g(&f2(1, 2)).unwrap(), vec![0, 1]);
        assert_eq!(admissible_g(&f2(1, 3)).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn verify_examples() {
        let report = verify_complete_set(&f2(1, 2)).unwrap();
        assert!(report.pass);
        assert_eq!(report.pairs, vec![(0, 1)]);
        for lambda2 in 0..6 {
            let report = verify_complete_set(&f2(0, lambda2)).unwrap();
            assert!(report.pass);
            assert_eq!(report.admissible_g, vec![0]);
        }
        let report = verify_complete_set(&f2(2, 1)).unwrap();
        assert_eq!(report.admissible_g, vec![0]);
        assert!(report.pass);
        assert_eq!(
            serde_json::to_string(&verify_complete_set(&f2(1, 2)).unwrap()).unwrap(),
            r#"{"m":1,"lambda2":2,"r":5,"admissible_g":[0,1],"idempotent":[true,true],"orthogonal":[true],"sum_is_identity":true,"count_matches":true,"pass":true}"#
        );
    }

    #[test]
    fn orthogonality_examples() {
        assert!(orthogonality_check(&f2(1, 4), 1, 2).unwrap());
        assert!(orthogonality_check(&f2(5, 8), 1, 3).unwrap());
        // m even, g = 0: column 0 is zero and ψ = m_0 = 0
        assert!(orthogonality_check(&f2(2, 4), 0, 0).unwrap());
        // column 0 of B(1,1) is (1/1)
        assert!(orthogonality_check(&f2(1, 4), 1, 0).is_err());
    }

    #[test]
    fn block_examples() {
        let b = block_description(&f2(1, 5), 1).unwrap();
        assert_eq!(b.basis_degrees, vec![0, 4]);
        assert_eq!(b.generator_degrees, vec![4]);
        let b = block_description(&f2(0, 3), 0).unwrap();
        assert_eq!(b.basis_degrees, vec![0, 1, 2, 3]);
        assert_eq!(b.generator_degrees, vec![1, 2]);
        let b = block_description(&f2(1, 5), 3).unwrap();
        assert_eq!(b.basis_degrees, vec![0]);
        assert!(block_description(&f2(1, 5), 2).is_err());
        let b = block_description(&f2(1, 0), 0).unwrap();
        assert_eq!(b.dimension, 1);
        // b(4) is available but e_{1,1}·b(4) is a multiple of e_{1,1}
        let ctx = f2(1, 4);
        assert_eq!(block_description(&ctx, 1).unwrap().basis_degrees, vec![0]);
        assert_eq!(block_dimension(&ctx, 1).unwrap(), 1);
    }

    #[test]
    fn block_dimensions_sum_to_algebra_dimension() {
        for m in 0..6 {
            for l in 0..12 {
                let ctx = f2(m, l);
                let total: usize = admissible_g(&ctx)
                    .unwrap()
                    .into_iter()
                    .map(|g| block_description(&ctx, g).unwrap().dimension)
                    .sum();
                assert_eq!(total, l + 1, "m={m} lambda2={l}");
            }
        }
    }

    #[test]
    fn block_basis_first_element_is_e() {
        let ctx = f2(1, 5);
        let basis = block_basis_elements(&ctx, 1).unwrap();
        assert_eq!(basis[0], build_idempotent(&ctx, 1).unwrap());
        let expected = &(&ctx.basis(1).unwrap() * &(&ctx.one() + &ctx.basis(2).unwrap()))
            * &ctx.basis(4).unwrap();
        assert_eq!(basis[1], expected);
        assert_eq!(span_rank(&ctx, &basis), basis.len());
    }

    #[test]
    fn scan_examples() {
        let ctx = f2(0, 4);
        let found = exhaustive_idempotent_scan(&ctx).unwrap();
        assert_eq!(found, vec![ctx.zero(), ctx.one()]);
        let ctx = f2(1, 2);
        let found = exhaustive_idempotent_scan(&ctx).unwrap();
        assert_eq!(found.len(), 4);
        assert_eq!(found, idempotent_subset_sums(&ctx).unwrap());
        let ctx = f2(1, 0);
        assert_eq!(exhaustive_idempotent_scan(&ctx).unwrap().len(), 2);
        assert!(matches!(
            exhaustive_idempotent_scan(&f2(1, 13)),
            Err(Error::CostBound { .. })
        ));
    }
}
