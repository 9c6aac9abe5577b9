//! Positive-characteristic reductions: the p-adic factorization of `b(i)`,
//! the characteristic-2 recursion for `b(2^t)²`, and the leading term of
//! `b(p^t)^n` for odd `p`.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{AlgebraContext, AlgebraElement, AlgebraExt};
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::padic::{bit, p_adic};

fn require_char_two<F: Field>(ctx: &AlgebraContext<F>) -> Result<()> {
    if ctx.characteristic() == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "needs characteristic 2, got {}",
            ctx.characteristic()
        )))
    }
}

/// Evaluates `Π_t b(i_t·p^t)` over the base-`p` digits of `i`.
///
/// The product equals `b(i)`; the point of computing it through `multiply` is
/// that it can be compared against the basis vector.
pub fn factorize_basis<F: Field>(
    i: usize,
    ctx: &Arc<AlgebraContext<F>>,
) -> Result<AlgebraElement<F>> {
    let p = ctx.characteristic();
    if p == 0 {
        return Err(Error::Unsupported(
            "p-adic factorization needs positive characteristic".into(),
        ));
    }
    if i > ctx.lambda2() {
        return invalid(format!("degree {i} exceeds lambda2 = {}", ctx.lambda2()));
    }
    let digits = p_adic(i as u64, p)?;
    let mut acc = ctx.one();
    let mut place: usize = 1;
    for &d in digits.digits() {
        if d != 0 {
            acc = acc.multiply(&ctx.basis(d as usize * place)?)?;
        }
        place = place.saturating_mul(p as usize);
    }
    Ok(acc)
}

/// `b(2^t)²` through the carry-style recursion
///
/// ```text
/// b(2^t)² = b(2^t)·[m_t + Γ(t)],   Γ(0) = 0,   Γ(t) = b(2^{t-1})² + m_{t-1}·Γ(t-1)
/// ```
///
/// Each earlier square is itself produced by the recursion, never by squaring
/// `b(2^i)` directly.
pub fn square_reduction<F: Field>(
    t: u32,
    ctx: &Arc<AlgebraContext<F>>,
) -> Result<AlgebraElement<F>> {
    require_char_two(ctx)?;
    if t >= usize::BITS - 1 || (1usize << t) > ctx.lambda2() {
        return invalid(format!("2^{t} exceeds lambda2 = {}", ctx.lambda2()));
    }
    let f = ctx.field();
    let m = ctx.m();
    let digit = |i: u32| {
        if bit(m, i) == 1 {
            f.one()
        } else {
            f.zero()
        }
    };
    let mut gamma = ctx.zero();
    let mut square = ctx.zero();
    for i in 0..=t {
        if i > 0 {
            gamma = square.try_add(&gamma.scale(&digit(i - 1)))?;
        }
        let bracket = ctx.one().scale(&digit(i)).try_add(&gamma)?;
        square = ctx.basis(1 << i)?.multiply(&bracket)?;
    }
    Ok(square)
}

/// `ψ_{m,s} = m_s + Σ_{i=v-1}^{s-1} b(2^i)²` where `0 ≤ v ≤ s` is maximal
/// with `m_{v-1} = 0`; `b(2^{-1})` and `m_{-1}` read as zero.
///
/// Satisfies `b(2^s)² = b(2^s)·ψ_{m,s}`.
pub fn psi<F: Field>(s: u32, ctx: &Arc<AlgebraContext<F>>) -> Result<AlgebraElement<F>> {
    require_char_two(ctx)?;
    let m = ctx.m();
    let v = (0..=s)
        .rev()
        .find(|&v| v == 0 || bit(m, v - 1) == 0)
        .unwrap_or(0);
    let mut acc = if bit(m, s) == 1 {
        ctx.one()
    } else {
        ctx.zero()
    };
    // i = v - 1 = -1 contributes b(2^{-1})² = 0
    for i in v.saturating_sub(1)..s {
        let b = basis_power_of_two(i, ctx);
        acc = acc.try_add(&b.square())?;
    }
    Ok(acc)
}

pub(crate) fn basis_power_of_two<F: Field>(
    u: u32,
    ctx: &Arc<AlgebraContext<F>>,
) -> AlgebraElement<F> {
    if u >= usize::BITS {
        ctx.zero()
    } else {
        ctx.basis_or_zero(1 << u)
    }
}

/// Checks that `b(p^t)^n = (n!)²·b(n·p^t) + (lower-degree terms)`.
pub fn power_reduction_check<F: Field>(
    t: u32,
    n: u32,
    ctx: &Arc<AlgebraContext<F>>,
) -> Result<bool> {
    let p = ctx.characteristic();
    if p == 0 {
        return Err(Error::Unsupported(
            "degree reduction needs positive characteristic".into(),
        ));
    }
    if n == 0 || u64::from(n) >= p {
        return invalid(format!("need 1 <= n < p, got n = {n}, p = {p}"));
    }
    let base = (p as usize)
        .checked_pow(t)
        .filter(|&q| {
            q.checked_mul(n as usize)
                .is_some_and(|top| top <= ctx.lambda2())
        })
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{n}·{p}^{t} exceeds lambda2 = {}", ctx.lambda2()))
        })?;
    let top = base * n as usize;
    let power = ctx.basis(base)?.pow(n);
    let f = ctx.field();
    let factorial: BigUint = (1..=n).map(BigUint::from).product();
    let expected = f.from_biguint(&(&factorial * &factorial));
    let leading_ok = power.coeff(top) == expected;
    let nothing_above = power.degree().is_some_and(|d| d <= top) || power.is_zero();
    Ok(leading_ok && nothing_above)
}
