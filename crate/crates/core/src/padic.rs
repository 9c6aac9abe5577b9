//! Digit-level combinatorics of the two-part p-Kostka matrix.
//!
//! Everything here is a pure function of small natural numbers. The entry of
//! the Kostka matrix at `(m, g)` is 1 exactly when `B(m,g) = binom(m+2g, g)`
//! is nonzero modulo `p`, which Lucas' theorem reduces to a column-by-column
//! comparison of the digits of `m+2g` and `g`.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        invalid(format!("{p} is not prime"))
    }
}

/// Binary digit `i` of `n`; zero past the top bit.
#[inline]
pub fn bit(n: u64, i: u32) -> u64 {
    if i >= 64 {
        0
    } else {
        (n >> i) & 1
    }
}

/// Number of significant bits of `n` (0 for `n = 0`).
#[inline]
pub fn bit_length(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Base-`p` expansion of a natural number, least significant digit first.
///
/// The digit list is kept canonical: no trailing zeros, so zero has no digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PAdicDigits {
    base: u64,
    digits: Vec<u64>,
    value: u64,
}

impl PAdicDigits {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Digit at position `i`, with the convention that positions past the end
    /// carry zero.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Positions carrying a nonzero digit.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, _)| i)
    }

    /// Rebuilds a number from a digit list that may carry trailing zeros.
    pub fn from_digits(base: u64, digits: &[u64]) -> Result<Self> {
        check_prime(base)?;
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return invalid(format!("digit {d} out of range for base {base}"));
        }
        let mut value: u64 = 0;
        for &d in digits.iter().rev() {
            value = value
                .checked_mul(base)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| crate::Error::InvalidArgument("digit list overflows u64".into()))?;
        }
        p_adic(value, base)
    }
}

impl fmt::Display for PAdicDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

pub fn p_adic(n: u64, p: u64) -> Result<PAdicDigits> {
    check_prime(p)?;
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    Ok(PAdicDigits {
        base: p,
        digits,
        value: n,
    })
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// `binom(a, b) mod p` for single digits `a, b < p`.
fn digit_binomial(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut num = 1;
    let mut den = 1;
    for i in 0..b {
        num = mul(num, a - i);
        den = mul(den, i + 1);
    }
    // b < p, so b! is a unit mod p
    mul(num, pow_mod(den, p - 2, p))
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn lucas_binomial(n: u64, k: u64, p: u64) -> Result<u64> {
    check_prime(p)?;
    if k > n {
        return Ok(0);
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1 % p;
    while n > 0 || k > 0 {
        let term = digit_binomial(n % p, k % p, p);
        if term == 0 {
            return Ok(0);
        }
        acc = ((acc as u128 * term as u128) % p as u128) as u64;
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// The `(m, g)` entry of the two-part p-Kostka matrix.
pub fn kostka_entry(m: u64, g: u64, p: u64) -> Result<u8> {
    let n = m
        .checked_add(g.saturating_mul(2))
        .ok_or_else(|| crate::Error::InvalidArgument("m + 2g overflows".into()))?;
    Ok(u8::from(lucas_binomial(n, g, p)? != 0))
}

/// One column of the digit-wise expansion of `B(m,g)`: digit `u` of `m+2g`
/// over digit `u` of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Column {
    pub top: u64,
    pub bottom: u64,
}

impl Column {
    pub fn is_zero(&self) -> bool {
        self.top == 0 && self.bottom == 0
    }

    /// Factor contributed to `e_{m,g}` in characteristic 2.
    pub fn factor_symbol(&self, u: usize) -> String {
        match (self.top, self.bottom) {
            (1, 1) => format!("b(2^{u})"),
            (1, 0) => format!("(1-b(2^{u}))"),
            (0, 0) => "1".to_string(),
            (0, 1) => "0".to_string(),
            _ => "?".to_string(),
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})", self.top, self.bottom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostkaCell {
    pub m: u64,
    pub g: u64,
    pub p: u64,
    pub columns: Vec<Column>,
    pub nonzero: bool,
}

impl KostkaCell {
    /// Largest position holding a nonzero column; `None` when `m + 2g = 0`.
    pub fn degree(&self) -> Option<usize> {
        self.columns.iter().rposition(|c| !c.is_zero())
    }

    pub fn column(&self, u: usize) -> Column {
        self.columns
            .get(u)
            .copied()
            .unwrap_or(Column { top: 0, bottom: 0 })
    }
}

pub fn kostka_cell(m: u64, g: u64, p: u64) -> Result<KostkaCell> {
    let top = p_adic(m + 2 * g, p)?;
    let bottom = p_adic(g, p)?;
    let width = top.len().max(bottom.len());
    let columns: Vec<Column> = (0..width)
        .map(|u| Column {
            top: top.digit(u),
            bottom: bottom.digit(u),
        })
        .collect();
    let nonzero = columns.iter().all(|c| c.bottom <= c.top);
    Ok(KostkaCell {
        m,
        g,
        p,
        columns,
        nonzero,
    })
}

/// A finite window `0..=m_max` x `0..=g_max` of the Kostka matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostkaWindow {
    pub p: u64,
    pub rows: Vec<Vec<u8>>,
}

impl KostkaWindow {
    pub fn to_csv(&self) -> String {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut out = (0..width)
            .map(|g| format!("g={g}"))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("window serializes")
    }
}

pub fn kostka_window(m_max: u64, g_max: u64, p: u64) -> Result<KostkaWindow> {
    check_prime(p)?;
    let rows = (0..=m_max)
        .map(|m| (0..=g_max).map(|g| kostka_entry(m, g, p)).collect())
        .collect::<Result<Vec<Vec<u8>>>>()?;
    Ok(KostkaWindow { p, rows })
}

/// Carries of the binary addition `m + 2g`.
///
/// `x[i]` is the carry from column `i` into column `i+1`, so that
/// `m_i + g_{i-1} + x_{i-1} = (m+2g)_i + 2 x_i` with negative indices reading 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarrySequence {
    pub m: u64,
    pub g: u64,
    pub x: Vec<u64>,
}

impl CarrySequence {
    pub fn carry(&self, i: usize) -> u64 {
        self.x.get(i).copied().unwrap_or(0)
    }
}

pub fn carry_sequence(m: u64, g: u64) -> CarrySequence {
    let len = bit_length(m).max(bit_length(g) + 1) as usize + 1;
    let mut x = Vec::with_capacity(len);
    let mut carry = 0;
    for i in 0..len as u32 {
        let g_prev = if i == 0 { 0 } else { bit(g, i - 1) };
        let column_sum = bit(m, i) + g_prev + carry;
        carry = column_sum / 2;
        x.push(carry);
    }
    CarrySequence { m, g, x }
}

/// Positions of the `(1/0)` and `(1/1)` columns of `B(m,g)` in base 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSets {
    pub m: u64,
    pub g: u64,
    /// `g_u = 0`, `(m+2g)_u = 1`
    pub i: Vec<u32>,
    /// `g_u = 1`, `(m+2g)_u = 1`
    pub j: Vec<u32>,
}

pub fn index_sets(m: u64, g: u64) -> IndexSets {
    let n = m + 2 * g;
    let (mut i, mut j) = (Vec::new(), Vec::new());
    for u in 0..bit_length(n) {
        if bit(n, u) == 1 {
            if bit(g, u) == 0 {
                i.push(u);
            } else {
                j.push(u);
            }
        }
    }
    IndexSets { m, g, i, j }
}

/// Cuts `B(m,g)` just before column `u`: returns `n = [m_0, .., m_u]` and
/// `d = [g_0, .., g_{u-1}]`, whose expansion is the first `u` columns of
/// `B(m,g)` followed by a `(1/0)` column.
pub fn splitting(m: u64, g: u64, u: u32) -> Result<(u64, u64)> {
    if u >= 63 {
        return invalid(format!("split position {u} out of range"));
    }
    if bit(m + 2 * g, u) != 1 {
        return invalid(format!("column {u} of B({m},{g}) has top digit 0"));
    }
    if kostka_entry(m, g, 2)? == 0 {
        return invalid(format!("B({m},{g}) is even"));
    }
    let n = m & ((1u64 << (u + 1)) - 1);
    let d = g & ((1u64 << u) - 1);
    Ok((n, d))
}
