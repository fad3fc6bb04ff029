//! Spectra of Dehn-twist Markoff graphs.
//!
//! The adjacency operator of a Dehn graph is 3-regular (loops counted once
//! per fixing twist), so its top eigenvalue is 3 with multiplicity equal to
//! the number of components. [`lambda2`] finds the next one by Lanczos on the
//! complement of the constants; [`full_spectrum`] diagonalizes the whole
//! matrix for small graphs.

mod dense;
mod kesten_mckay;
mod lanczos;
mod symmetry;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{connected_components, GeneratorSet, MarkoffGraph};
use crate::surface::Triple;

pub use dense::{symmetric_eigen, symmetric_eigenvalues, SymmetricEigen};
pub use kesten_mckay::{kesten_mckay_density, kesten_mckay_mass};
pub use lanczos::{default_max_matvecs, lanczos_top, Lambda2, LanczosOptions};

/// Degree of every Dehn graph.
pub const DEGREE: u32 = 3;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_DENSE_CAP: usize = 12_000;
pub const DEFAULT_BINS: usize = 60;
pub const MIN_BINS: usize = 10;
/// Eigenvalues this close to 3 count as Perron values.
pub const PERRON_WINDOW: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("spectral analysis needs the dehn generator set, not `{0}`")]
    NotDehn(GeneratorSet),
    #[error("graph has {vertices} vertices, above the dense cap of {cap}; use lambda2 instead")]
    TooLarge { vertices: usize, cap: usize },
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("dense eigensolver failed: {0}")]
    Dense(String),
    #[error("symmetry image {0} is not a vertex")]
    BrokenSymmetry(Triple),
    #[error("need at least {MIN_BINS} histogram bins, got {0}")]
    TooFewBins(usize),
}

fn require_dehn(g: &MarkoffGraph) -> Result<(), SpectralError> {
    match g.generators() {
        GeneratorSet::Dehn => Ok(()),
        other => Err(SpectralError::NotDehn(other)),
    }
}

/// Second eigenvalue with the default Lanczos settings and residual target
/// `tol`.
pub fn lambda2(g: &MarkoffGraph, tol: f64) -> Result<Lambda2, SpectralError> {
    lambda2_with(g, &LanczosOptions { tol, ..LanczosOptions::default() })
}

pub fn lambda2_with(g: &MarkoffGraph, opts: &LanczosOptions) -> Result<Lambda2, SpectralError> {
    require_dehn(g)?;
    lanczos_top(g.vertex_count(), |x, y| g.apply_adjacency(x, y), opts).ok_or(SpectralError::TooSmall)
}

/// All eigenvalues, ascending, for graphs up to [`DEFAULT_DENSE_CAP`]
/// vertices.
pub fn full_spectrum(g: &MarkoffGraph) -> Result<Vec<f64>, SpectralError> {
    full_spectrum_capped(g, DEFAULT_DENSE_CAP)
}

pub fn full_spectrum_capped(g: &MarkoffGraph, cap: usize) -> Result<Vec<f64>, SpectralError> {
    require_dehn(g)?;
    if g.vertex_count() > cap {
        return Err(SpectralError::TooLarge { vertices: g.vertex_count(), cap });
    }
    symmetry::block_spectrum(g)
}

/// Row-major adjacency matrix on `vertices` (all vertices when `None`).
/// The vertex set should be a union of components.
pub fn dense_adjacency(g: &MarkoffGraph, vertices: Option<&[u32]>) -> (usize, Vec<f64>) {
    let all: Vec<u32>;
    let vertices = match vertices {
        Some(v) => v,
        None => {
            all = (0..g.vertex_count() as u32).collect();
            &all
        }
    };
    let n = vertices.len();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v as usize] = i;
    }
    let mut a = vec![0.0; n * n];
    for (i, &v) in vertices.iter().enumerate() {
        for &u in g.neighbors(v) {
            let j = local[u as usize];
            assert!(j != usize::MAX, "vertex set is not closed under adjacency");
            a[i * n + j] += 1.0;
        }
    }
    (n, a)
}

/// Full spectrum by tridiagonalization of the unreduced adjacency matrix.
/// Cubic in `V`; meant for cross-checking [`full_spectrum`] on small graphs.
pub fn reference_spectrum(g: &MarkoffGraph) -> Vec<f64> {
    let (n, a) = dense_adjacency(g, None);
    symmetric_eigenvalues(&a, n)
}

/// Second-largest entry of an ascending spectrum.
pub fn second_largest(spectrum: &[f64]) -> Option<f64> {
    spectrum.len().checked_sub(2).map(|i| spectrum[i])
}

/// Eigenvalues strictly between `2√2` and the Perron value 3.
pub fn exceptional_count(spectrum: &[f64]) -> usize {
    let edge = 2.0 * 2f64.sqrt();
    spectrum
        .iter()
        .filter(|&&l| l > edge && l < DEGREE as f64 - PERRON_WINDOW)
        .count()
}

/// Eigenvalues within [`PERRON_WINDOW`] of 3.
pub fn perron_multiplicity(spectrum: &[f64]) -> usize {
    spectrum
        .iter()
        .filter(|&&l| (l - DEGREE as f64).abs() <= PERRON_WINDOW)
        .count()
}

/// `(½(d − λ₂), √(2d(d − λ₂)))`, the Cheeger bounds on edge expansion.
pub fn cheeger_bounds(lambda2: f64, d: u32) -> (f64, f64) {
    let d = d as f64;
    let gap = (d - lambda2).max(0.0);
    (0.5 * gap, (2.0 * d * gap).sqrt())
}

/// Binned spectrum against the Kesten–McKay law for `d = 3`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramComparison {
    pub edges: Vec<f64>,
    pub empirical: Vec<f64>,
    pub kesten_mckay: Vec<f64>,
    pub l1_distance: f64,
}

impl HistogramComparison {
    pub fn bin_centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }
}

/// Equal-width histogram of `spectrum` over `[−3, 3]`, normalized as a
/// density, with Kesten–McKay bin averages and their L1 distance.
pub fn histogram_compare(spectrum: &[f64], nbins: usize) -> Result<HistogramComparison, SpectralError> {
    if nbins < MIN_BINS {
        return Err(SpectralError::TooFewBins(nbins));
    }
    let (lo, hi) = (-(DEGREE as f64), DEGREE as f64);
    let width = (hi - lo) / nbins as f64;
    let edges: Vec<f64> = (0..=nbins).map(|i| lo + i as f64 * width).collect();
    let mut counts = vec![0usize; nbins];
    for &l in spectrum {
        let bin = ((l - lo) / width).floor().clamp(0.0, (nbins - 1) as f64) as usize;
        counts[bin] += 1;
    }
    let total = spectrum.len().max(1) as f64;
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / (total * width)).collect();
    let kesten_mckay: Vec<f64> = edges
        .windows(2)
        .map(|w| kesten_mckay_mass(DEGREE, w[0], w[1]) / width)
        .collect();
    let l1_distance = empirical
        .iter()
        .zip(&kesten_mckay)
        .map(|(e, k)| (e - k).abs() * width)
        .sum();
    Ok(HistogramComparison { edges, empirical, kesten_mckay, l1_distance })
}

/// Summary of the spectral analysis of one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub p: u64,
    pub vertices: usize,
    pub lambda2: f64,
    pub residual: f64,
    pub converged: bool,
    pub multiplicity_of_3: usize,
    pub spectrum: Option<Vec<f64>>,
    pub exceptional_count: Option<usize>,
    pub cheeger_lower: f64,
    pub cheeger_upper: f64,
}

/// Lanczos `λ₂` plus, when the graph fits under `dense_cap`, the full
/// spectrum and the statistics that need it.
pub fn spectral_report(g: &MarkoffGraph, tol: f64, dense_cap: usize) -> Result<SpectralReport, SpectralError> {
    let l2 = lambda2(g, tol)?;
    let spectrum = if g.vertex_count() <= dense_cap { Some(full_spectrum_capped(g, dense_cap)?) } else { None };
    let multiplicity_of_3 = match &spectrum {
        Some(s) => perron_multiplicity(s),
        None => connected_components(g).len(),
    };
    let (cheeger_lower, cheeger_upper) = cheeger_bounds(l2.value, DEGREE);
    Ok(SpectralReport {
        p: g.surface().p(),
        vertices: g.vertex_count(),
        lambda2: l2.value,
        residual: l2.residual,
        converged: l2.converged,
        multiplicity_of_3,
        exceptional_count: spectrum.as_deref().map(exceptional_count),
        spectrum,
        cheeger_lower,
        cheeger_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;
    use crate::graph::{build_graph, component_labels};
    use crate::surface::LevelSurface;

    fn dehn(p: u64, k: i64) -> MarkoffGraph {
        build_graph(&LevelSurface::new(p, k, 3).unwrap(), GeneratorSet::Dehn, k == 0).unwrap()
    }

    #[test]
    fn blocked_spectrum_matches_reference() {
        for p in [5u64, 7, 11, 13, 17, 19] {
            for k in 0..p as i64 {
                let g = dehn(p, k);
                let fast = full_spectrum(&g).unwrap();
                let slow = reference_spectrum(&g);
                assert_eq!(fast.len(), slow.len());
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).abs() < 1e-9, "p={p} k={k}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn mod_7_spectrum() {
        let g = dehn(7, 0);
        let s = full_spectrum(&g).unwrap();
        assert_eq!(s.len(), 28);
        assert!((s[27] - 3.0).abs() < 1e-9);
        assert!((s.iter().sum::<f64>() - 2.0).abs() < 1e-9);
        let l2 = lambda2(&g, DEFAULT_TOL).unwrap();
        assert!(l2.converged && l2.residual <= DEFAULT_TOL);
        assert!((l2.value - s[26]).abs() < DEFAULT_TOL);
    }

    #[test]
    fn disconnected_graph_gives_three() {
        let g = dehn(7, 2);
        assert_eq!(connected_components(&g).len(), 10);
        let l2 = lambda2(&g, DEFAULT_TOL).unwrap();
        assert!((l2.value - 3.0).abs() < 1e-9);
        let s = full_spectrum(&g).unwrap();
        assert_eq!(perron_multiplicity(&s), 10);
    }

    #[test]
    fn trace_and_range() {
        for p in primes_in(5, 40) {
            for k in [0, 1, 2, 5] {
                let g = dehn(p, k);
                let s = full_spectrum(&g).unwrap();
                let trace: f64 = s.iter().sum();
                assert!((trace - g.total_loop_weight() as f64).abs() < 1e-6 * s.len() as f64);
                assert!(s.iter().all(|&l| l.abs() <= 3.0 + 1e-9));
                assert_eq!(perron_multiplicity(&s), connected_components(&g).len(), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn rejects_extended_generators_and_big_graphs() {
        let s = LevelSurface::new(7, 0, 3).unwrap();
        let g = build_graph(&s, GeneratorSet::MovesPerms, false).unwrap();
        assert_eq!(lambda2(&g, 1e-8).unwrap_err(), SpectralError::NotDehn(GeneratorSet::MovesPerms));
        let g = dehn(13, 0);
        assert!(matches!(full_spectrum_capped(&g, 100), Err(SpectralError::TooLarge { vertices: 208, cap: 100 })));
    }

    #[test]
    fn cheeger_examples() {
        assert_eq!(cheeger_bounds(3.0, 3), (0.0, 0.0));
        let (lo, hi) = cheeger_bounds(2.0 * 2f64.sqrt(), 3);
        assert!((lo - 0.0857864376).abs() < 1e-9);
        assert!((hi - 1.0146118723).abs() < 1e-9);
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(exceptional_count(&[-2.8, 0.0, 2.82, 2.8284, 3.0]), 0);
        assert_eq!(exceptional_count(&[2.83, 2.9, 2.9999999, 3.0]), 2);
    }

    #[test]
    fn histogram_basics() {
        assert_eq!(histogram_compare(&[0.0], 9).unwrap_err(), SpectralError::TooFewBins(9));
        let h = histogram_compare(&[-3.0, -0.01, 0.0, 3.0], 10).unwrap();
        assert_eq!(h.edges.len(), 11);
        let mass: f64 = h.empirical.iter().map(|e| e * h.width()).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        assert!((h.empirical[0] * h.width() - 0.25).abs() < 1e-12);
        assert!((h.empirical[9] * h.width() - 0.25).abs() < 1e-12);
        let km: f64 = h.kesten_mckay.iter().map(|e| e * h.width()).sum();
        assert!((km - 1.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_of_kesten_mckay_quantiles_is_close() {
        // deterministic "sample": quantiles of the law itself
        let n = 20_000;
        let mut sample = Vec::with_capacity(n);
        let edge = 2.0 * 2f64.sqrt();
        let (mut x, mut acc) = (-edge, 0.0);
        let step = 1e-5;
        for i in 0..n {
            let target = (i as f64 + 0.5) / n as f64;
            while acc < target && x < edge {
                acc += kesten_mckay_mass(3, x, x + step);
                x += step;
            }
            sample.push(x);
        }
        let h = histogram_compare(&sample, 60).unwrap();
        assert!(h.l1_distance < 0.01, "{}", h.l1_distance);
        assert_eq!(exceptional_count(&sample), 0);
    }

    /// Minimum over all proper subsets S with |S| ≤ n/2 of e(S, S^c) / |S|.
    fn edge_expansion(n: usize, a: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for mask in 1u32..(1 << n) - 1 {
            let size = mask.count_ones() as usize;
            if 2 * size > n {
                continue;
            }
            let mut cut = 0.0;
            for i in 0..n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        cut += a[i * n + j];
                    }
                }
            }
            best = best.min(cut / size as f64);
        }
        best
    }

    #[test]
    fn cheeger_sandwich_on_small_components() {
        let mut checked = 0;
        for p in primes_in(5, 31) {
            for k in 0..p as i64 {
                let g = dehn(p, k);
                let labels = component_labels(&g);
                let count = *labels.iter().max().unwrap() as usize + 1;
                for c in 0..count as u32 {
                    let members: Vec<u32> = (0..g.vertex_count() as u32).filter(|&v| labels[v as usize] == c).collect();
                    if members.len() < 4 || members.len() > 20 {
                        continue;
                    }
                    let (n, a) = dense_adjacency(&g, Some(&members));
                    let ev = symmetric_eigenvalues(&a, n);
                    let (lo, hi) = cheeger_bounds(ev[n - 2], 3);
                    let h = edge_expansion(n, &a);
                    assert!(lo <= h + 1e-12 && h <= hi + 1e-12, "p={p} k={k}: {lo} <= {h} <= {hi}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 20);
    }
}
