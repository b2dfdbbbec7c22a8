//! Lowest eigenpairs by restarted block Krylov iteration on the shift-inverted operator.
//!
//! With `sigma` below the regular spectrum, `T = (H - sigma)^{-1}` maps the wanted eigenvalues to
//! its largest ones. Each restart builds the basis `T X, T^2 X, ...` from the current block `X`,
//! performs Rayleigh-Ritz on `T` over it and keeps the leading Ritz vectors. `T V` is carried along
//! with `V`, so a restart costs `(steps + 1) * block` solves. Cutoff nodes produce modes with
//! `|lambda| ~ cutoff`; their Ritz values of `T` sit near zero and are never selected.

use nalgebra::{DMatrix, DMatrixView, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::discretize::DiscretizedOperator;
use super::ldl::EnvelopeLdl;
use crate::error::{Error, Result};
use crate::par::Parallelism;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Residual bound relative to `max(1, |lambda|)`.
    pub tolerance: f64,
    pub max_restarts: usize,
    /// Krylov blocks appended per restart.
    pub krylov_steps: usize,
    /// Block width; by default sized from the eigenvalue count just above `lambda_count`.
    pub block: Option<usize>,
    pub retain_vectors: bool,
    pub seed: u64,
    pub parallelism: Parallelism,
    /// Operators up to this dimension start from a dense eigendecomposition.
    pub dense_threshold: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_restarts: 400,
            krylov_steps: 6,
            block: None,
            retain_vectors: true,
            seed: 0x5eed_1aa5,
            parallelism: Parallelism::default(),
            dense_threshold: 2000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveMetadata {
    pub method: &'static str,
    pub iterations: usize,
    pub shift: f64,
    pub block: usize,
    pub dimension: usize,
    /// Eigenvalues attributable to cutoff nodes; never reported.
    pub excluded_cutoff_modes: usize,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit vectors in the operator's unknowns, one per eigenvalue.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub metadata: SolveMetadata,
}

pub fn solve_lowest(op: &DiscretizedOperator, count: usize) -> Result<EigenResult> {
    solve_lowest_with(op, count, &SolveOptions::default())
}

/// Number of regular eigenvalues strictly below `sigma`, by inertia.
pub fn count_below(op: &DiscretizedOperator, sigma: f64) -> Result<usize> {
    if sigma.is_nan() || sigma.abs() >= 0.5 * op.cutoff() {
        return Err(Error::InvalidArgument(format!(
            "shift {sigma} is not small against the cutoff {}",
            op.cutoff()
        )));
    }
    let f = EnvelopeLdl::factor(op.matrix(), sigma)?;
    Ok(f.negative_pivots() - op.pinned_counts().0)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Regular eigenvalues of `H` below `sigma`, or `None` if the factorization breaks down.
fn below(op: &DiscretizedOperator, sigma: f64, low: usize) -> Option<usize> {
    EnvelopeLdl::factor(op.matrix(), sigma)
        .ok()
        .map(|f| f.negative_pivots().saturating_sub(low))
}

/// Shift just below the lowest regular eigenvalue, placed by inertia.
///
/// Bisection brackets `lambda_1` and `lambda_count`; the shift then sits a tenth of that spread
/// under `lambda_1`, so the wanted eigenvalues dominate `(H - sigma)^{-1}` even when the bottom of
/// the spectrum lies far from the potential minimum.
fn choose_shift(op: &DiscretizedOperator, count: usize) -> Result<(f64, f64, EnvelopeLdl)> {
    let low = op.pinned_counts().0;
    let vmin = (0..op.dimension())
        .filter(|&i| !op.is_pinned(i))
        .map(|i| op.potential()[i])
        .fold(f64::INFINITY, f64::min);
    let vmin = if vmin.is_finite() { vmin } else { 0.0 };
    let unit = 1.0f64.max(1e-3 * vmin.abs());

    let mut lo = vmin - unit;
    let mut tries = 0;
    while below(op, lo, low) != Some(0) {
        lo -= unit * 10f64.powi(tries);
        tries += 1;
        if tries > 8 {
            return Err(Error::SingularShift { shift: lo });
        }
    }
    // Smallest probe with at least `count` eigenvalues below it.
    let mut step = unit;
    let mut hi = lo + step;
    let mut hi_count = None;
    for _ in 0..200 {
        match below(op, hi, low) {
            Some(c) if c >= count => {
                hi_count = Some(c);
                break;
            }
            Some(0) => lo = hi,
            _ => {}
        }
        step *= 2.0;
        hi += step;
        if hi.abs() >= 0.5 * op.cutoff() {
            break;
        }
    }
    let spread = if hi_count.is_some() {
        // Tighten both ends: lo stays below lambda_1, hi stays above lambda_count.
        lo = bisect(lo, hi, |mid| below(op, mid, low) == Some(0)).0;
        let top = bisect(
            lo,
            hi,
            |mid| !matches!(below(op, mid, low), Some(c) if c >= count),
        )
        .1;
        top - lo
    } else {
        unit
    };
    let sigma = lo - (0.1 * spread).max(1e-6 * lo.abs().max(1.0));
    let f = EnvelopeLdl::factor(op.matrix(), sigma)?;
    if f.negative_pivots() != low {
        return Err(Error::SingularShift { shift: sigma });
    }
    Ok((sigma, lo + spread, f))
}

/// Twelve halvings of `[a, b]`, moving `a` up wherever `stays_low` holds and `b` down elsewhere.
fn bisect(mut a: f64, mut b: f64, stays_low: impl Fn(f64) -> bool) -> (f64, f64) {
    for _ in 0..12 {
        let mid = 0.5 * (a + b);
        if stays_low(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}

/// Column-major block of vectors of a common length.
#[derive(Clone)]
struct Block {
    rows: usize,
    data: Vec<f64>,
}

impl Block {
    fn new(rows: usize) -> Self {
        Self {
            rows,
            data: Vec::new(),
        }
    }

    fn cols(&self) -> usize {
        self.data.len() / self.rows
    }

    fn col(&self, k: usize) -> &[f64] {
        &self.data[k * self.rows..(k + 1) * self.rows]
    }

    fn view(&self) -> DMatrixView<'_, f64> {
        DMatrixView::from_slice(&self.data, self.rows, self.cols())
    }

    fn push(&mut self, v: &[f64]) {
        self.data.extend_from_slice(v);
    }

    fn extend(&mut self, other: &Block) {
        self.data.extend_from_slice(&other.data);
    }

    /// `self * coeffs`.
    fn times(&self, coeffs: &DMatrix<f64>) -> Block {
        let m: DMatrix<f64> = self.view() * coeffs;
        Block {
            rows: self.rows,
            data: m.as_slice().to_vec(),
        }
    }
}

/// `y -= B (B^T y)` for every column of `y`.
fn project_out(basis: &Block, y: &mut Block) {
    if basis.cols() == 0 || y.cols() == 0 {
        return;
    }
    let b = basis.view();
    let coeffs = b.tr_mul(&y.view());
    let correction = b * coeffs;
    for (v, c) in y.data.iter_mut().zip(correction.as_slice()) {
        *v -= c;
    }
}

/// Orthonormalizes `cands` against the orthonormal `basis` and against each other (classical
/// Gram-Schmidt, twice), dropping columns that are numerically dependent.
fn orthonormalize(basis: &Block, mut cands: Block) -> Block {
    let original: Vec<f64> = (0..cands.cols()).map(|k| norm(cands.col(k))).collect();
    project_out(basis, &mut cands);
    project_out(basis, &mut cands);
    let mut kept = Block::new(cands.rows);
    for (k, orig) in original.into_iter().enumerate() {
        let mut y = Block {
            rows: cands.rows,
            data: cands.col(k).to_vec(),
        };
        project_out(&kept, &mut y);
        project_out(&kept, &mut y);
        let mut r = norm(&y.data);
        if r.is_nan() || r <= 1e-13 * orig {
            continue;
        }
        if r < 1e-6 * orig {
            // Heavy cancellation: one more sweep restores orthogonality to working precision.
            y.data.iter_mut().for_each(|v| *v /= r);
            project_out(basis, &mut y);
            project_out(&kept, &mut y);
            r = norm(&y.data);
        }
        y.data.iter_mut().for_each(|v| *v /= r);
        kept.push(&y.data);
    }
    kept
}

fn apply_inverse(f: &EnvelopeLdl, block: &Block, par: Parallelism) -> Block {
    let mut out = block.clone();
    par.for_each_chunk(&mut out.data, block.rows, |_, col| f.solve_in_place(col));
    out
}

fn dense_start(op: &DiscretizedOperator, p: usize) -> Block {
    let n = op.dimension();
    let a = op.matrix();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for (j, v) in a.row(i) {
            m[(i, j)] = v;
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n)
        .filter(|&k| eig.eigenvalues[k].abs() < 0.5 * op.cutoff())
        .collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out = Block::new(n);
    for k in order.into_iter().take(p) {
        out.push(eig.eigenvectors.column(k).as_slice());
    }
    out
}

pub fn solve_lowest_with(op: &DiscretizedOperator, count: usize, opts: &SolveOptions) -> Result<EigenResult> {
    let dim = op.dimension();
    let regular = op.regular_dimension();
    if count == 0 || count > regular {
        return Err(Error::InvalidArgument(format!(
            "cannot compute {count} eigenvalues of an operator with {regular} regular modes"
        )));
    }
    let par = opts.parallelism;
    let (sigma, upper, factor) = choose_shift(op, count)?;
    // A block reaching well past lambda_count keeps near-degenerate clusters at the boundary from
    // stalling the iteration.
    let p = match opts.block {
        Some(b) => b.max(count),
        None => {
            let reach = below(op, upper + 2.0 * (upper - sigma), op.pinned_counts().0).unwrap_or(0);
            reach.clamp(count + 4.max(count / 4), 2 * count + 8)
        }
    }
    .min(regular);

    let dense = dim <= opts.dense_threshold;
    let start = if dense {
        dense_start(op, p)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        Block {
            rows: dim,
            data: (0..dim * p).map(|_| rng.random::<f64>() - 0.5).collect(),
        }
    };
    let x0 = orthonormalize(&Block::new(dim), start);
    let mut tx = apply_inverse(&factor, &x0, par);

    let h = op.matrix();
    let mut residuals = Vec::new();
    let mut values = Vec::new();
    for restart in 1..=opts.max_restarts {
        // Every basis vector lies in the range of T, which keeps cutoff-node components at their
        // physical size; the Ritz block itself carries rounding noise there.
        let mut v = Block::new(dim);
        let mut tv = Block::new(dim);
        let mut cands = tx;
        for _ in 0..=opts.krylov_steps {
            let fresh = orthonormalize(&v, cands);
            if fresh.cols() == 0 {
                break;
            }
            let tfresh = apply_inverse(&factor, &fresh, par);
            v.extend(&fresh);
            tv.extend(&tfresh);
            cands = tfresh;
        }

        let q = v.cols();
        let gram = v.view().tr_mul(&tv.view());
        let g = DMatrix::from_fn(q, q, |i, j| 0.5 * (gram[(i, j)] + gram[(j, i)]));
        let eig = SymmetricEigen::new(g);
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        order.truncate(p.min(q));
        if order.len() < count || eig.eigenvalues[order[count - 1]] <= 0.0 {
            return Err(Error::NoConvergence {
                iterations: restart,
                residual: f64::INFINITY,
            });
        }
        let picked = DMatrix::from_fn(q, order.len(), |i, j| eig.eigenvectors[(i, order[j])]);
        let x = v.times(&picked);
        tx = tv.times(&picked);

        values = order[..count]
            .iter()
            .map(|&k| sigma + 1.0 / eig.eigenvalues[k])
            .collect::<Vec<f64>>();
        residuals = par.map(count, |i| {
            let mut r = vec![0.0; dim];
            h.mul_vec(x.col(i), &mut r);
            axpy(-values[i], x.col(i), &mut r);
            norm(&r)
        });
        let converged = residuals
            .iter()
            .zip(&values)
            .all(|(r, l)| *r <= opts.tolerance * l.abs().max(1.0));
        if converged {
            let max_residual = residuals.iter().copied().fold(0.0, f64::max);
            let eigenvectors = opts
                .retain_vectors
                .then(|| (0..count).map(|i| fix_sign(x.col(i).to_vec())).collect());
            return Ok(EigenResult {
                eigenvalues: values,
                eigenvectors,
                metadata: SolveMetadata {
                    method: if dense { "dense+krylov" } else { "krylov" },
                    iterations: restart,
                    shift: sigma,
                    block: p,
                    dimension: dim,
                    excluded_cutoff_modes: dim - regular,
                    residuals,
                    max_residual,
                },
            });
        }
    }
    let worst = residuals
        .iter()
        .zip(&values)
        .map(|(r, l)| r / l.abs().max(1.0))
        .fold(0.0, f64::max);
    Err(Error::NoConvergence {
        iterations: opts.max_restarts,
        residual: worst,
    })
}

/// Makes the entry of largest magnitude positive so vectors are reproducible.
fn fix_sign(mut v: Vec<f64>) -> Vec<f64> {
    let mut best = 0.0f64;
    let mut sign = 1.0;
    for &x in &v {
        if x.abs() > best {
            best = x.abs();
            sign = x.signum();
        }
    }
    if sign < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}
