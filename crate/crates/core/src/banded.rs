//! Banded LU factorisation with partial pivoting.
//!
//! Storage is row-wise with a window of `2 kl + ku + 1` columns per row,
//! `[i - kl, i + kl + ku]`. The extra `kl` columns on the right absorb fill
//! from row interchanges.

use crate::error::{Error, Result};

/// Relative pivot threshold against `‖A‖∞`.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// A square matrix with `kl` sub-diagonals and `ku` super-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSystem {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandedSystem {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    /// Builds a matrix from sparse rows `(column, value)`. Every entry outside
    /// the band is reported in the error.
    pub fn build(n: usize, kl: usize, ku: usize, rows: &[Vec<(usize, f64)>]) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: rows.len(),
            });
        }
        let mut sys = Self::zeros(n, kl, ku);
        let mut offending = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                if sys.in_band(i, j) {
                    *sys.at_mut(i, j) += v;
                } else {
                    offending.push((i, j));
                }
            }
        }
        if !offending.is_empty() {
            return Err(Error::Bandwidth {
                lower: kl,
                upper: ku,
                offending,
            });
        }
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.kl
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.ku
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && j + self.kl >= i && j <= i + self.ku
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        let k = self.idx(i, j);
        &mut self.data[k]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.data[self.idx(i, j)]
        } else {
            0.0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) -> Result<()> {
        if !self.in_band(i, j) {
            return Err(Error::Bandwidth {
                lower: self.kl,
                upper: self.ku,
                offending: vec![(i, j)],
            });
        }
        *self.at_mut(i, j) = v;
        Ok(())
    }

    fn row_range(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        i.saturating_sub(self.kl)..=(i + self.ku).min(self.n - 1)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect())
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// LU factorisation with row pivoting restricted to the `kl` rows below
    /// the diagonal.
    pub fn factor(&self) -> Result<BandedLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let norm = self.norm_inf();
        let threshold = PIVOT_TOLERANCE * norm;
        let mut work = self.clone();
        let mut multipliers = vec![0.0; n * kl];
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + kl + ku).min(n - 1);

            let (p, pivot) = (k..=last_row).map(|r| (r, work.data[work.idx(r, k)])).fold(
                (k, 0.0f64),
                |best, (r, v)| {
                    if v.abs() > best.1.abs() {
                        (r, v)
                    } else {
                        best
                    }
                },
            );
            if pivot.is_nan() || pivot.abs() <= threshold {
                return Err(Error::Singular {
                    step: k,
                    pivot: pivot.abs(),
                    threshold,
                });
            }
            pivots[k] = p;
            if p != k {
                for j in k..=last_col {
                    let (a, b) = (work.idx(k, j), work.idx(p, j));
                    work.data.swap(a, b);
                }
            }

            for r in k + 1..=last_row {
                let ir = work.idx(r, k);
                let m = work.data[ir] / pivot;
                work.data[ir] = 0.0;
                multipliers[k * kl + (r - k - 1)] = m;
                if m != 0.0 {
                    for j in k + 1..=last_col {
                        let src = work.data[work.idx(k, j)];
                        *work.at_mut(r, j) -= m * src;
                    }
                }
            }
        }

        Ok(BandedLu {
            n,
            kl,
            ku,
            norm_inf: norm,
            factors: work,
            multipliers,
            pivots,
        })
    }
}

/// Factored form of a [`BandedSystem`]; immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    norm_inf: f64,
    factors: BandedSystem,
    multipliers: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `‖A‖∞` of the matrix that was factored.
    pub fn norm_inf(&self) -> f64 {
        self.norm_inf
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn solve_in_place(&self, b: &mut [f64]) -> Result<()> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: b.len(),
            });
        }
        for k in 0..n {
            b.swap(k, self.pivots[k]);
            let bk = b[k];
            for r in k + 1..=(k + kl).min(n - 1) {
                b[r] -= self.multipliers[k * kl + (r - k - 1)] * bk;
            }
        }
        let u = &self.factors;
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..=(i + kl + ku).min(n - 1) {
                s -= u.data[u.idx(i, j)] * b[j];
            }
            b[i] = s / u.data[u.idx(i, i)];
        }
        Ok(())
    }
}
