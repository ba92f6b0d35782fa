//! Dense Cholesky factorization `A = R Rᵀ` of a symmetric positive definite
//! matrix, stored as a packed lower triangle and reused for any number of
//! right-hand sides.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
pub struct NotPositiveDefinite {
    pub pivot: usize,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    // row i occupies lower[i*(i+1)/2 .. i*(i+1)/2 + i + 1]
    lower: Vec<f64>,
}

#[inline]
fn row_start(i: usize) -> usize {
    i * (i + 1) / 2
}

impl Cholesky {
    /// Factors the `n×n` matrix whose lower-triangle entry `(i, j)` is
    /// `entry(i, j)` for `j <= i`. The upper triangle is never read.
    pub fn factor<F>(n: usize, entry: F) -> Result<Self, NotPositiveDefinite>
    where
        F: Fn(usize, usize) -> f64,
    {
        let mut lower = vec![0.0; row_start(n)];
        for i in 0..n {
            let ri = row_start(i);
            for j in 0..=i {
                let rj = row_start(j);
                let dot: f64 = lower[ri..ri + j]
                    .iter()
                    .zip(&lower[rj..rj + j])
                    .map(|(x, y)| x * y)
                    .sum();
                let s = entry(i, j) - dot;
                if i == j {
                    if !(s > 0.0) || !s.is_finite() {
                        return Err(NotPositiveDefinite { pivot: i, value: s });
                    }
                    lower[ri + i] = s.sqrt();
                } else {
                    lower[ri + j] = s / lower[rj + j];
                }
            }
        }
        Ok(Self { n, lower })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Overwrites `b` with `A⁻¹ b`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.n);
        // forward: R y = b
        for i in 0..self.n {
            let ri = row_start(i);
            let dot: f64 = self.lower[ri..ri + i].iter().zip(&b[..i]).map(|(x, y)| x * y).sum();
            b[i] = (b[i] - dot) / self.lower[ri + i];
        }
        // backward: Rᵀ x = y, walking columns of R
        for i in (0..self.n).rev() {
            let ri = row_start(i);
            b[i] /= self.lower[ri + i];
            let xi = b[i];
            for (bj, lij) in b[..i].iter_mut().zip(&self.lower[ri..ri + i]) {
                *bj -= lij * xi;
            }
        }
    }
}
