//! Envelope (profile) `L D L^T` factorization of `A - sigma I` without pivoting.
//!
//! Row `i` of `L` is stored densely from the first column touched by row `i` of `A`. Fill stays
//! inside that envelope, so the cost is `O(n * width^2)` for the x-ordered operators.
//! By Sylvester's law the negative pivots count the eigenvalues below `sigma`.

use super::sparse::CsrMatrix;
use crate::error::{Error, Result};
use crate::par::Parallelism;

#[derive(Debug, Clone)]
pub struct EnvelopeLdl {
    first: Vec<usize>,
    offsets: Vec<usize>,
    l: Vec<f64>,
    d: Vec<f64>,
}

impl EnvelopeLdl {
    pub fn factor(a: &CsrMatrix, shift: f64) -> Result<Self> {
        let n = a.dim();
        let first: Vec<usize> = (0..n)
            .map(|i| a.row(i).next().map_or(i, |(j, _)| j.min(i)))
            .collect();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for i in 0..n {
            offsets.push(offsets[i] + (i - first[i]));
        }
        let mut l = vec![0.0; offsets[n]];
        let mut d = vec![0.0; n];
        for i in 0..n {
            let fi = first[i];
            let (done, rest) = l.split_at_mut(offsets[i]);
            let row = &mut rest[..i - fi];
            let mut diag = -shift;
            for (j, v) in a.row(i) {
                if j < i {
                    row[j - fi] = v;
                } else if j == i {
                    diag += v;
                }
            }
            // row[k] holds l_ik * d_k once column k is processed.
            for j in fi..i {
                let fj = first[j];
                let start = fi.max(fj);
                let lj = &done[offsets[j]..offsets[j + 1]];
                let mut s = row[j - fi];
                for k in start..j {
                    s -= row[k - fi] * lj[k - fj];
                }
                row[j - fi] = s;
            }
            for j in fi..i {
                let u = row[j - fi];
                let lij = u / d[j];
                diag -= u * lij;
                row[j - fi] = lij;
            }
            if diag == 0.0 || !diag.is_finite() {
                return Err(Error::SingularShift { shift });
            }
            d[i] = diag;
        }
        Ok(Self { first, offsets, l, d })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn negative_pivots(&self) -> usize {
        self.d.iter().filter(|&&p| p < 0.0).count()
    }

    /// Overwrites `b` with `(A - sigma I)^{-1} b`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let fi = self.first[i];
            let li = &self.l[self.offsets[i]..self.offsets[i + 1]];
            let s: f64 = li.iter().zip(&b[fi..i]).map(|(a, x)| a * x).sum();
            b[i] -= s;
        }
        for (bi, di) in b.iter_mut().zip(&self.d) {
            *bi /= di;
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let li = &self.l[self.offsets[i]..self.offsets[i + 1]];
            let yi = b[i];
            for (x, a) in b[fi..i].iter_mut().zip(li) {
                *x -= a * yi;
            }
        }
    }

    /// Solves for every column of a column-major block.
    pub fn solve_block(&self, block: &mut [f64], par: Parallelism) {
        let n = self.dim();
        par.for_each_chunk(block, n, |_, col| self.solve_in_place(col));
    }
}
