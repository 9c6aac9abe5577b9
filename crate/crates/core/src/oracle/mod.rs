//! Brute-force model of `S_K(λ)` acting on the λ-weight space of `E^{⊗r}`.
//!
//! With `E` spanned by `v_1, v_2`, a basis vector of `E^{⊗r}` is a word over
//! `{1, 2}`; the weight-λ words are those with exactly `λ₂` letters equal to
//! 2. The divided power `e^(i)` sends a word to the sum of all words obtained
//! by rewriting `i` of its 2s as 1s, and `f^(i)` rewrites `i` of its 1s as 2s.
//! Then `b(i) = 1_λ f^(i) e^(i) 1_λ` is an explicit integer matrix, reduced
//! mod `p`. None of this uses the structure constants, so it is an
//! independent check on them.

mod matrix;

use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraContext, AlgebraElement, AlgebraExt, ModAlgebra};
use crate::error::{invalid, Error, Result};
use crate::field::PrimeField;
use crate::idempotents::{admissible_g, build_idempotent};

pub use matrix::{family_rank, OracleMatrix};

/// Default refusal threshold on `binom(r, λ₂)`.
pub const DEFAULT_COST_BOUND: u128 = 100_000;

/// A word over `{1, 2}`, one letter per tensor factor.
pub type Word = Vec<u8>;

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Weight-λ words of length `r`, in lexicographic order (`1 < 2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBasis {
    r: usize,
    lambda2: usize,
    words: Vec<Word>,
}

impl WeightBasis {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn lambda2(&self) -> usize {
        self.lambda2
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Position of `word` in the basis, by lexicographic ranking; `None` for
    /// words of the wrong length or weight.
    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        if word.len() != self.r || word.iter().filter(|&&l| l == 2).count() != self.lambda2 {
            return None;
        }
        let mut index: u128 = 0;
        let mut twos_left = self.lambda2 as u64;
        for (pos, &letter) in word.iter().enumerate() {
            match letter {
                1 => {}
                2 => {
                    // words sharing the prefix but with a 1 here come first
                    let remaining = (self.r - pos - 1) as u64;
                    index += binomial(remaining, twos_left);
                    twos_left -= 1;
                }
                _ => return None,
            }
        }
        usize::try_from(index).ok()
    }
}

fn check_cost(r: usize, lambda2: usize, cost_bound: u128) -> Result<()> {
    let size = binomial(r as u64, lambda2 as u64);
    if size > cost_bound {
        Err(Error::CostBound {
            size,
            bound: cost_bound,
        })
    } else {
        Ok(())
    }
}

pub fn weight_basis(r: usize, lambda2: usize, cost_bound: u128) -> Result<WeightBasis> {
    if lambda2 > r {
        return invalid(format!("lambda2 = {lambda2} exceeds r = {r}"));
    }
    check_cost(r, lambda2, cost_bound)?;
    let mut words: Vec<Word> = (0..r)
        .combinations(lambda2)
        .map(|twos| {
            let mut w = vec![1u8; r];
            for pos in twos {
                w[pos] = 2;
            }
            w
        })
        .collect();
    words.sort_unstable();
    Ok(WeightBasis { r, lambda2, words })
}

/// Every word obtained from `word` by rewriting exactly `count` of its
/// `letter_from` letters as the other letter, each with coefficient 1.
pub fn divided_power_transfer(word: &[u8], letter_from: u8, count: usize) -> Vec<Word> {
    let letter_to = if letter_from == 1 { 2 } else { 1 };
    let positions: Vec<usize> = (0..word.len())
        .filter(|&i| word[i] == letter_from)
        .collect();
    positions
        .into_iter()
        .combinations(count)
        .map(|chosen| {
            let mut w = word.to_vec();
            for pos in chosen {
                w[pos] = letter_to;
            }
            w
        })
        .collect()
}

fn assemble_b_matrix(i: usize, basis: &WeightBasis, p: u32) -> OracleMatrix {
    let n = basis.len();
    let columns: Vec<Vec<(usize, u64)>> = basis
        .words
        .par_iter()
        .map(|word| {
            let mut counts: Vec<(usize, u64)> = Vec::new();
            for lowered in divided_power_transfer(word, 2, i) {
                for raised in divided_power_transfer(&lowered, 1, i) {
                    // f^(i) e^(i) preserves the weight
                    let row = basis
                        .index_of(&raised)
                        .expect("composite stays in the weight space");
                    counts.push((row, 1));
                }
            }
            counts.sort_unstable();
            counts
                .into_iter()
                .coalesce(|a, b| {
                    if a.0 == b.0 {
                        Ok((a.0, a.1 + b.1))
                    } else {
                        Err((a, b))
                    }
                })
                .collect()
        })
        .collect();
    let mut m = OracleMatrix::zeros(p, n);
    for (col, entries) in columns.into_iter().enumerate() {
        for (row, count) in entries {
            m.add_to(row, col, (count % u64::from(p)) as u32);
        }
    }
    m
}

/// The matrix of `b(i)` on the weight space. For `i > λ₂` there are not
/// enough 2s to rewrite and the matrix is zero.
pub fn b_matrix(
    i: usize,
    r: usize,
    lambda2: usize,
    p: u32,
    cost_bound: u128,
) -> Result<OracleMatrix> {
    PrimeField::new(p)?;
    let basis = weight_basis(r, lambda2, cost_bound)?;
    Ok(assemble_b_matrix(i, &basis, p))
}

/// Weight basis together with the matrices of `b(0), …, b(λ₂)`.
#[derive(Debug, Clone)]
pub struct TensorOracle {
    basis: WeightBasis,
    p: u32,
    mats: Vec<OracleMatrix>,
}

impl TensorOracle {
    pub fn new(r: usize, lambda2: usize, p: u32, cost_bound: u128) -> Result<Self> {
        PrimeField::new(p)?;
        if 2 * lambda2 > r {
            return invalid(format!("lambda2 = {lambda2} exceeds r/2 for r = {r}"));
        }
        let basis = weight_basis(r, lambda2, cost_bound)?;
        let mats = (0..=lambda2)
            .map(|i| assemble_b_matrix(i, &basis, p))
            .collect();
        Ok(Self { basis, p, mats })
    }

    pub fn basis(&self) -> &WeightBasis {
        &self.basis
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn b(&self, i: usize) -> &OracleMatrix {
        &self.mats[i]
    }

    /// Assembles `b(i)` for any `i`, including `i > λ₂`.
    pub fn b_beyond(&self, i: usize) -> OracleMatrix {
        assemble_b_matrix(i, &self.basis, self.p)
    }

    /// `Σ c_a·b(a)` as a matrix.
    pub fn realize(&self, x: &AlgebraElement<PrimeField>) -> Result<OracleMatrix> {
        let ctx = x.context();
        if ctx.characteristic() != u64::from(self.p)
            || ctx.lambda2() != self.basis.lambda2
            || ctx.r() != self.basis.r as u64
        {
            return Err(Error::ContextMismatch(format!(
                "oracle is r = {}, lambda2 = {}, p = {}; element lives in {:?}",
                self.basis.r, self.basis.lambda2, self.p, ctx
            )));
        }
        let mut acc = OracleMatrix::zeros(self.p, self.dimension());
        for (a, &c) in x.coeffs().iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.mats[a].scale(c));
            }
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub r: usize,
    pub lambda2: usize,
    pub m: u64,
    pub p: u32,
    pub dim: usize,
    pub products_checked: usize,
    /// `(i, j)` pairs whose matrix product disagrees with the structure
    /// constants.
    pub mismatches: Vec<(usize, usize)>,
    /// The matrices of `b(0), …, b(λ₂)` are linearly independent.
    pub independent: bool,
    /// The matrix of `b(λ₂+1)` vanishes.
    pub truncation_zero: bool,
    pub pass: bool,
}

/// Compares every product `b(i)·b(j)` computed from the structure constants
/// with the product of the tensor-space matrices.
pub fn compare_structure_constants(
    r: usize,
    lambda2: usize,
    p: u32,
    cost_bound: u128,
) -> Result<StructureReport> {
    let oracle = TensorOracle::new(r, lambda2, p, cost_bound)?;
    let m = (r - 2 * lambda2) as u64;
    let ctx = AlgebraContext::new(PrimeField::new(p)?, m, lambda2)?;
    let pairs: Vec<(usize, usize)> = (0..=lambda2).cartesian_product(0..=lambda2).collect();
    let mismatches = pairs
        .iter()
        .map(|&(i, j)| -> Result<Option<(usize, usize)>> {
            let lhs = oracle.b(i).mul(oracle.b(j));
            let rhs = oracle.realize(&ctx.mult_basis(i, j)?)?;
            Ok((lhs != rhs).then_some((i, j)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let independent = family_rank(&oracle.mats) == lambda2 + 1;
    let truncation_zero = oracle.b_beyond(lambda2 + 1).is_zero();
    let pass = mismatches.is_empty() && independent && truncation_zero;
    Ok(StructureReport {
        r,
        lambda2,
        m,
        p,
        dim: oracle.dimension(),
        products_checked: pairs.len(),
        mismatches,
        independent,
        truncation_zero,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub g: u64,
    pub rank: usize,
    pub idempotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub r: u64,
    pub m: u64,
    pub p: u32,
    pub per_g: Vec<RankEntry>,
    pub rank_sum: usize,
    pub dim: usize,
    pub pass: bool,
    #[serde(skip)]
    pub orthogonal: bool,
    #[serde(skip)]
    pub sum_is_identity: bool,
}

/// Realizes every `e_{m,g}` as a matrix on the weight space and records its
/// rank, together with idempotency, orthogonality and the sum-to-identity
/// check. Ranks are computed over `F_2`.
pub fn idempotent_rank_report(ctx: &Arc<ModAlgebra>, cost_bound: u128) -> Result<RankReport> {
    if ctx.characteristic() != 2 {
        return Err(Error::Unsupported(
            "rank report is defined in characteristic 2".into(),
        ));
    }
    let r = usize::try_from(ctx.r()).map_err(|_| Error::InvalidArgument("r too large".into()))?;
    let oracle = TensorOracle::new(r, ctx.lambda2(), 2, cost_bound)?;
    let gs = admissible_g(ctx)?;
    let mats = gs
        .iter()
        .map(|&g| oracle.realize(&build_idempotent(ctx, g)?))
        .collect::<Result<Vec<_>>>()?;
    let per_g: Vec<RankEntry> = gs
        .iter()
        .zip(&mats)
        .map(|(&g, mat)| RankEntry {
            g,
            rank: mat.rank(),
            idempotent: mat.is_idempotent(),
        })
        .collect();
    let orthogonal = (0..mats.len())
        .tuple_combinations()
        .all(|(a, b)| mats[a].mul(&mats[b]).is_zero());
    let n = oracle.dimension();
    let sum = mats
        .iter()
        .fold(OracleMatrix::zeros(2, n), |acc, m| acc.add(m));
    let sum_is_identity = sum == OracleMatrix::identity(2, n);
    let rank_sum = per_g.iter().map(|e| e.rank).sum();
    let pass = per_g.iter().all(|e| e.idempotent && e.rank >= 1)
        && orthogonal
        && sum_is_identity
        && rank_sum == n;
    Ok(RankReport {
        r: ctx.r(),
        m: ctx.m(),
        p: 2,
        per_g,
        rank_sum,
        dim: n,
        pass,
        orthogonal,
        sum_is_identity,
    })
}
