//! Characteristic zero: `b(k)` as a polynomial in `x = b(1)`.
//!
//! With `F_k(T) = Π_{a=0}^{k-1} (T - a(m+a+1))` one has
//! `(k!)²·b(k) = F_k(x)`, and `F_{λ₂+1}` is the minimal polynomial of `x`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraContext, AlgebraElement, AlgebraExt};
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::linalg::rank;

/// `F_k(T)` with exact integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolynomial {
    pub m: u64,
    pub k: usize,
    pub coeffs: Vec<BigInt>,
}

impl FPolynomial {
    /// The roots `a(m+a+1)` for `0 ≤ a < k`.
    pub fn roots(&self) -> Vec<BigInt> {
        (0..self.k as u64)
            .map(|a| BigInt::from(a) * BigInt::from(self.m + a + 1))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation at an algebra element.
    pub fn eval<F: Field>(&self, x: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let ctx = x.context();
        let f = ctx.field();
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc
                .multiply(x)?
                .try_add(&ctx.one().scale(&f.from_bigint(c)))?;
        }
        Ok(acc)
    }

    /// Product form, e.g. `T(T-3)(T-8)`.
    pub fn factored(&self) -> String {
        self.roots()
            .iter()
            .map(|r| {
                if r.is_zero() {
                    "T".to_string()
                } else {
                    format!("(T-{r})")
                }
            })
            .collect()
    }
}

/// Expanded form, highest power first: `T^3-11*T^2+24*T`.
impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let mono = match d {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{d}"),
            };
            let body = if d == 0 {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn f_polynomial(k: usize, m: u64) -> Result<FPolynomial> {
    if k == 0 {
        return invalid("F_k is defined for k >= 1");
    }
    let mut coeffs = vec![BigInt::one()];
    for a in 0..k as u64 {
        let root = BigInt::from(a) * BigInt::from(m + a + 1);
        // multiply by (T - root)
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &root;
        }
        coeffs = next;
    }
    Ok(FPolynomial { m, k, coeffs })
}

fn require_char_zero<F: Field>(ctx: &AlgebraContext<F>) -> Result<()> {
    if ctx.characteristic() == 0 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "needs characteristic 0, got {}",
            ctx.characteristic()
        )))
    }
}

/// Whether `(k!)²·b(k) = F_k(b(1))` holds in the algebra.
pub fn char0_basis_identity<F: Field>(k: usize, ctx: &Arc<AlgebraContext<F>>) -> Result<bool> {
    require_char_zero(ctx)?;
    if k == 0 || k > ctx.lambda2() {
        return invalid(format!("need 1 <= k <= lambda2 = {}", ctx.lambda2()));
    }
    let f = ctx.field();
    let factorial: BigInt = (1..=k as u64).map(BigInt::from).product();
    let lhs = ctx
        .basis(k)?
        .scale(&f.from_bigint(&(&factorial * &factorial)));
    let rhs = f_polynomial(k, ctx.m())?.eval(&ctx.basis_or_zero(1))?;
    Ok(lhs == rhs)
}

/// Whether `F_{λ₂+1}(b(1)) = 0` while `F_k(b(1)) ≠ 0` for every `k ≤ λ₂`.
pub fn minimal_polynomial_check<F: Field>(ctx: &Arc<AlgebraContext<F>>) -> Result<bool> {
    require_char_zero(ctx)?;
    let x = ctx.basis_or_zero(1);
    let top = f_polynomial(ctx.lambda2() + 1, ctx.m())?;
    if !top.eval(&x)?.is_zero() {
        return Ok(false);
    }
    for k in 1..=ctx.lambda2() {
        if f_polynomial(k, ctx.m())?.eval(&x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `1, b(1), …, b(1)^{λ₂}` are linearly independent, i.e. `b(1)`
/// generates the algebra.
pub fn powers_of_b1_independent<F: Field>(ctx: &Arc<AlgebraContext<F>>) -> Result<bool> {
    require_char_zero(ctx)?;
    let x = ctx.basis_or_zero(1);
    let mut rows = Vec::with_capacity(ctx.dimension());
    let mut power = ctx.one();
    for _ in 0..ctx.dimension() {
        rows.push(power.coeffs().to_vec());
        power = power.multiply(&x)?;
    }
    Ok(rank(ctx.field(), rows) == ctx.dimension())
}
