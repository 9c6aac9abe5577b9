use rayon::prelude::*;

use crate::field::PrimeField;
use crate::linalg::{rank, Gf2Matrix};

/// Dense square matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMatrix {
    p: u32,
    n: usize,
    data: Vec<u32>,
}

impl OracleMatrix {
    pub fn zeros(p: u32, n: usize) -> Self {
        Self {
            p,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.n + col]
    }

    pub(crate) fn add_to(&mut self, row: usize, col: usize, value: u32) {
        let e = &mut self.data[row * self.n + col];
        *e = ((u64::from(*e) + u64::from(value)) % u64::from(self.p)) as u32;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.p, other.p, "matrices over different fields");
        assert_eq!(self.n, other.n, "matrices of different size");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let p = u64::from(self.p);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((u64::from(a) + u64::from(b)) % p) as u32)
            .collect();
        Self {
            p: self.p,
            n: self.n,
            data,
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = u64::from(self.p);
        let c = u64::from(c) % p;
        let data = self
            .data
            .iter()
            .map(|&a| (u64::from(a) * c % p) as u32)
            .collect();
        Self {
            p: self.p,
            n: self.n,
            data,
        }
    }

    /// Matrix product, rows computed in parallel. Zero entries of `self` are
    /// skipped, which matters for the sparse low-degree `b(i)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let n = self.n;
        let p = u64::from(self.p);
        let max_term = (p - 1) * (p - 1);
        // number of products that can be summed before a u64 could overflow
        let flush_every = if max_term == 0 {
            usize::MAX
        } else {
            ((u64::MAX - (p - 1)) / max_term).min(usize::MAX as u64) as usize
        };
        let mut data = vec![0u32; n * n];
        data.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(i, out_row)| {
                let mut acc = vec![0u64; n];
                let mut pending = 0usize;
                for k in 0..n {
                    let a = u64::from(self.data[i * n + k]);
                    if a == 0 {
                        continue;
                    }
                    if pending == flush_every {
                        acc.iter_mut().for_each(|x| *x %= p);
                        pending = 0;
                    }
                    let b_row = &other.data[k * n..(k + 1) * n];
                    for (x, &b) in acc.iter_mut().zip(b_row) {
                        *x += a * u64::from(b);
                    }
                    pending += 1;
                }
                for (o, x) in out_row.iter_mut().zip(&acc) {
                    *o = (x % p) as u32;
                }
            });
        Self { p: self.p, n, data }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Exact rank; bit-packed elimination when `p = 2`.
    pub fn rank(&self) -> usize {
        if self.p == 2 {
            let mut packed = Gf2Matrix::zeros(self.n, self.n);
            for r in 0..self.n {
                for c in 0..self.n {
                    if self.get(r, c) == 1 {
                        packed.set(r, c, true);
                    }
                }
            }
            packed.rank()
        } else {
            let field = PrimeField::new(self.p).expect("prime modulus");
            let rows = self
                .data
                .chunks(self.n.max(1))
                .map(<[u32]>::to_vec)
                .collect();
            rank(&field, rows)
        }
    }
}

/// Rank of a family of matrices viewed as vectors of length `n²`.
pub fn family_rank(mats: &[OracleMatrix]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let field = PrimeField::new(first.p).expect("prime modulus");
    rank(&field, mats.iter().map(|m| m.data.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(p: u32, rows: &[&[u32]]) -> OracleMatrix {
        let n = rows.len();
        let mut m = OracleMatrix::zeros(p, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.add_to(i, j, x);
            }
        }
        m
    }

    #[test]
    fn product_small() {
        let a = from_rows(5, &[&[1, 2], &[3, 4]]);
        let b = from_rows(5, &[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), from_rows(5, &[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&OracleMatrix::identity(5, 2)), a);
    }

    #[test]
    fn product_with_large_prime_does_not_overflow() {
        let p = 4_294_967_291u32; // largest prime below 2^32
        let n = 8;
        let mut a = OracleMatrix::zeros(p, n);
        for i in 0..n {
            for j in 0..n {
                a.add_to(i, j, p - 1);
            }
        }
        // (-1)·(-1) summed n times
        let c = a.mul(&a);
        assert!(c.entries().iter().all(|&x| x == n as u32));
    }

    #[test]
    fn ranks() {
        let a = from_rows(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(OracleMatrix::identity(3, 4).rank(), 4);
        let b = from_rows(3, &[&[1, 2], &[2, 1]]);
        assert_eq!(b.rank(), 1);
        assert_eq!(
            family_rank(&[
                OracleMatrix::identity(2, 2),
                a.clone(),
                a.add(&OracleMatrix::identity(2, 2))
            ]),
            2
        );
    }
}
