//! Thick-restart (Krylov–Schur) Lanczos for the top eigenvalue of a
//! symmetric operator on the complement of the all-ones vector.
//!
//! Every new Krylov vector is orthogonalized against the whole basis twice
//! (classical Gram–Schmidt), so the projected matrix is built from the
//! Gram–Schmidt coefficients and no ghost copies appear. On restart the top
//! half of the Ritz vectors is kept; their couplings to the carried residual
//! vector are recovered by the next Gram–Schmidt pass.
//!
//! Dot products are summed per fixed-size chunk and the chunk sums are added
//! in order, so results do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::dense::symmetric_eigen;

const CHUNK: usize = 4096;

#[derive(Clone, Debug)]
pub struct LanczosOptions {
    /// Target for the explicit residual `‖A y − θ y‖`.
    pub tol: f64,
    /// Matrix-vector product budget; `None` picks [`default_max_matvecs`].
    pub max_matvecs: Option<usize>,
    /// Maximum number of basis vectors held at once.
    pub basis_size: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_matvecs: None, basis_size: 100, seed: 0x4d41_524b_4f46_4621 }
    }
}

/// Matrix-vector budget for an operator of dimension `n`: `5√n`, but never
/// fewer than 300 so small graphs still reach full Krylov dimension.
pub fn default_max_matvecs(n: usize) -> usize {
    ((5.0 * (n as f64).sqrt()).ceil() as usize).max(300)
}

/// Outcome of a top-eigenvalue run.
#[derive(Clone, Debug, PartialEq)]
pub struct Lambda2 {
    pub value: f64,
    /// Explicit residual norm of the returned Ritz pair.
    pub residual: f64,
    pub converged: bool,
    pub matvecs: usize,
    pub restarts: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let partial: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u * v).sum::<f64>())
        .collect();
    partial.iter().sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: &mut [f64], s: f64) {
    a.par_iter_mut().for_each(|x| *x *= s);
}

/// Removes the component along the all-ones vector.
fn deflate(w: &mut [f64]) {
    let partial: Vec<f64> = w.par_chunks(CHUNK).map(|c| c.iter().sum::<f64>()).collect();
    let mean = partial.iter().sum::<f64>() / w.len() as f64;
    w.par_iter_mut().for_each(|x| *x -= mean);
}

/// One classical Gram–Schmidt pass of `w` against `basis`; returns the
/// removed coefficients.
fn gram_schmidt_pass(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let k = basis.len();
    let partial: Vec<Vec<f64>> = w
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, wc)| {
            let off = ci * CHUNK;
            basis
                .iter()
                .map(|q| q[off..off + wc.len()].iter().zip(wc).map(|(a, b)| a * b).sum::<f64>())
                .collect()
        })
        .collect();
    let mut coeffs = vec![0.0; k];
    for chunk in &partial {
        for (c, s) in coeffs.iter_mut().zip(chunk) {
            *c += s;
        }
    }
    w.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, wc)| {
        let (off, len) = (ci * CHUNK, wc.len());
        for (q, &c) in basis.iter().zip(&coeffs) {
            for (x, &qv) in wc.iter_mut().zip(&q[off..off + len]) {
                *x -= c * qv;
            }
        }
    });
    coeffs
}

fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut c = gram_schmidt_pass(basis, w);
    for (a, b) in c.iter_mut().zip(gram_schmidt_pass(basis, w)) {
        *a += b;
    }
    c
}

/// `Σ_l coeffs[l] · basis[l]`.
fn combine(basis: &[Vec<f64>], coeffs: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    out.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, oc)| {
        let (off, len) = (ci * CHUNK, oc.len());
        for (q, &c) in basis.iter().zip(coeffs) {
            for (x, &qv) in oc.iter_mut().zip(&q[off..off + len]) {
                *x += c * qv;
            }
        }
    });
    out
}

/// Largest eigenvalue of `A` restricted to the complement of the all-ones
/// vector, for a symmetric operator `apply(x, y): y = A x` of dimension `n`
/// that maps that complement to itself.
///
/// Returns `None` when the complement is trivial (`n < 2`).
pub fn lanczos_top<F>(n: usize, apply: F, opts: &LanczosOptions) -> Option<Lambda2>
where
    F: Fn(&[f64], &mut [f64]),
{
    if n < 2 {
        return None;
    }
    let m = opts.basis_size.max(2).min(n - 1);
    let cap = opts.max_matvecs.unwrap_or_else(|| default_max_matvecs(n));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    deflate(&mut start);
    let s = norm(&start);
    scale(&mut start, 1.0 / s);

    let mut q: Vec<Vec<f64>> = vec![start];
    let mut h = vec![0.0; m * m];
    let mut kept = 0;
    let mut matvecs = 0;
    let mut restarts = 0;
    let mut w = vec![0.0; n];

    let explicit_residual = |x: &[f64], theta: f64, w: &mut Vec<f64>| {
        apply(x, w);
        deflate(w);
        w.par_iter_mut().zip(x).for_each(|(a, b)| *a -= theta * b);
        norm(w)
    };

    loop {
        let mut size = m;
        let mut beta = 0.0;
        let mut breakdown = false;
        let mut truncated = false;
        for j in kept..m {
            // keep one product in reserve for the final residual check
            if matvecs + 1 >= cap && j > 0 {
                size = j;
                truncated = true;
                break;
            }
            apply(&q[j], &mut w);
            matvecs += 1;
            deflate(&mut w);
            let coeffs = orthogonalize(&q[..=j], &mut w);
            for (i, &c) in coeffs.iter().enumerate() {
                h[i * m + j] = c;
                h[j * m + i] = c;
            }
            beta = norm(&w);
            if beta <= 1e-12 * (1.0 + coeffs[j].abs()) {
                size = j + 1;
                breakdown = true;
                break;
            }
            let mut next = w.clone();
            scale(&mut next, 1.0 / beta);
            q.push(next);
        }

        let mut sub = vec![0.0; size * size];
        for i in 0..size {
            sub[i * size..(i + 1) * size].copy_from_slice(&h[i * m..i * m + size]);
        }
        let eig = symmetric_eigen(&sub, size, true);
        let y = eig.vectors.expect("vectors requested");
        let theta = eig.values[size - 1];
        let estimate = if breakdown { 0.0 } else { (beta * y[(size - 1) * size + size - 1]).abs() };

        let out_of_budget = truncated || matvecs + 1 >= cap;
        if estimate <= opts.tol || breakdown || out_of_budget {
            let top: Vec<f64> = (0..size).map(|l| y[l * size + size - 1]).collect();
            let mut x = combine(&q[..size], &top, n);
            let xn = norm(&x);
            scale(&mut x, 1.0 / xn);
            let residual = explicit_residual(&x, theta, &mut w);
            matvecs += 1;
            let converged = residual <= opts.tol;
            if converged || breakdown || out_of_budget {
                return Some(Lambda2 { value: theta, residual, converged, matvecs, restarts });
            }
        }

        let keep = (size / 2).max(1);
        let mut next_q = Vec::with_capacity(m + 1);
        for idx in size - keep..size {
            let col: Vec<f64> = (0..size).map(|l| y[l * size + idx]).collect();
            next_q.push(combine(&q[..size], &col, n));
        }
        next_q.push(q.pop().expect("residual vector"));
        q = next_q;
        h.iter_mut().for_each(|x| *x = 0.0);
        for (i, idx) in (size - keep..size).enumerate() {
            h[i * m + i] = eig.values[idx];
        }
        kept = keep;
        restarts += 1;
    }
}
