//! Exact ranks: a generic row reduction over any [`Field`], and a bit-packed
//! variant for `F_2`.

use crate::field::Field;

/// Rank of the matrix whose rows are `rows`, by Gaussian elimination.
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<F::Elem> = rows[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for r in (rank + 1)..rows.len() {
            let factor = rows[r][col].clone();
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..ncols {
                let delta = field.mul(&factor, &pivot_row[c]);
                rows[r][c] = field.sub(&rows[r][c], &delta);
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dense `F_2` matrix with each row packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    nrows: usize,
    ncols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let words_per_row = ncols.div_ceil(64);
        Self {
            nrows,
            ncols,
            words_per_row,
            data: vec![0; nrows * words_per_row],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let wpr = m.words_per_row;
        let mut rank = 0;
        for col in 0..m.ncols {
            let Some(pivot) = (rank..m.nrows).find(|&r| m.get(r, col)) else {
                continue;
            };
            if pivot != rank {
                for w in 0..wpr {
                    m.data.swap(rank * wpr + w, pivot * wpr + w);
                }
            }
            let pivot_row = m.row(rank).to_vec();
            let first_word = col / 64;
            for r in (rank + 1)..m.nrows {
                if m.get(r, col) {
                    let row = &mut m.data[r * wpr..(r + 1) * wpr];
                    for w in first_word..wpr {
                        row[w] ^= pivot_row[w];
                    }
                }
            }
            rank += 1;
            if rank == m.nrows {
                break;
            }
        }
        rank
    }
}
