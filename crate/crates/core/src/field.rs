//! Exact coefficient fields: residues modulo a prime and the rationals.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::padic::check_prime;

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Send + Sync;

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image of an integer.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Image of a natural number, the path used for binomial coefficients.
    fn from_biguint(&self, n: &BigUint) -> Self::Elem {
        self.from_bigint(&BigInt::from(n.clone()))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Decimal rendering; rationals as `num/den`.
    fn render(&self, a: &Self::Elem) -> String;
}

/// The prime field `F_p` with residues stored in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(u64::from(p))?;
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        u64::from(self.p)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) + u64::from(*b)) % u64::from(self.p)) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (u64::from(*a) * u64::from(*b) % u64::from(self.p)) as u32
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        let p = u64::from(self.p);
        let (mut base, mut exp, mut acc) = (u64::from(*a) % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u32)
    }

    fn from_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        r.to_u32().expect("residue fits in u32")
    }

    fn from_biguint(&self, n: &BigUint) -> u32 {
        (n % self.p).to_u32().expect("residue fits in u32")
    }

    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}
