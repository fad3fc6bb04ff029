//! Orbits of the Cayley cubic `x² + y² + z² = xyz + 4` over `F_p`.
//!
//! Writing `x = g^u + g^{−u}`, `y = g^v + g^{−v}` for a generator `g` of
//! `F_{p²}^×` turns the Markoff moves and permutations into 2×2 integer
//! matrices acting on `(u, v) mod p² − 1` (see [`move_matrix`]). The orbits
//! are then indexed by the divisors `t` of `p² − 1` that are multiples of
//! `p + 1` or `p − 1`, and their sizes follow from orbit–stabilizer.

mod fricke;
mod linear;

use bitvec::prelude::*;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors_of, factorize, ArithError, Factorization, PrimeField};
use crate::surface::{LevelSurface, Move, SurfaceError, Triple};

pub use fricke::{fricke_check, FrickeReport, Mat2};
pub use linear::{linear_action_check, move_matrix, ExponentModel, ExponentPair, MoveMatrix};

/// Largest prime for which [`empirical_orbits`] runs by default.
pub const DEFAULT_EMPIRICAL_CAP: u64 = 199;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error(transparent)]
    Field(#[from] ArithError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("prime {p} is above the enumeration cap {cap}")]
    AboveCap { p: u64, cap: u64 },
    #[error("move {0} does not act linearly on exponents")]
    NotLinear(Move),
    #[error("matrix is not unimodular mod {p} (det = {det})")]
    NotUnimodular { p: u64, det: u64 },
}

/// The splitting `p + ε = 2·Π_{Q+} q^e`, `p − ε = 2^{e₂−1}·Π_{Q−} q^e` with
/// `ε = (−1)^{(p−1)/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonDecomposition {
    pub p: u64,
    pub epsilon: i8,
    /// Exponent of 2 in `p² − 1`.
    pub e2: u32,
    pub q_plus: Vec<(u64, u32)>,
    pub q_minus: Vec<(u64, u32)>,
}

impl EpsilonDecomposition {
    pub fn p_plus_epsilon(&self) -> u64 {
        if self.epsilon > 0 {
            self.p + 1
        } else {
            self.p - 1
        }
    }

    pub fn p_minus_epsilon(&self) -> u64 {
        if self.epsilon > 0 {
            self.p - 1
        } else {
            self.p + 1
        }
    }
}

pub fn epsilon_decomposition(p: u64) -> Result<EpsilonDecomposition, CayleyError> {
    PrimeField::new(p)?;
    let epsilon: i8 = if p % 4 == 1 { 1 } else { -1 };
    let (plus, minus) = if epsilon > 0 { (p + 1, p - 1) } else { (p - 1, p + 1) };
    let odd = |f: Factorization| f.pairs().iter().copied().filter(|&(q, _)| q != 2).collect::<Vec<_>>();
    let fm = factorize(minus);
    Ok(EpsilonDecomposition {
        p,
        epsilon,
        e2: fm.exponent_of(2) + 1,
        q_plus: odd(factorize(plus)),
        q_minus: odd(fm),
    })
}

/// Closed-form number of orbits, under moves and permutations, or with the
/// double sign changes as well.
pub fn count_orbits(p: u64, signs: bool) -> Result<u64, CayleyError> {
    let d = epsilon_decomposition(p)?;
    let prod = |qs: &[(u64, u32)]| qs.iter().map(|&(_, e)| e as u64 + 1).product::<u64>();
    let (minus, plus) = (prod(&d.q_minus), prod(&d.q_plus));
    let e2 = d.e2 as u64;
    Ok(if signs { (e2 - 1) * minus + plus - 1 } else { e2 * minus + 2 * plus - 2 })
}

/// One predicted orbit, labelled by its divisor `t` of `p² − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPrediction {
    pub t: u64,
    /// `(q, f(q))` for every prime `q` dividing `p² − 1`.
    pub exponents: Vec<(u64, u32)>,
    pub size: u64,
    /// Divisor of the orbit absorbed by sign changes (the one with
    /// `f(2) = e₂ − 1`), if any.
    pub merged_with: Option<u64>,
}

fn orbit_size(n: &Factorization, t: u64) -> u64 {
    let mut twice = 1u64;
    for &(q, e) in n.pairs() {
        let f = valuation(t, q);
        if f < e {
            twice *= (q * q - 1) * q.pow(2 * (e - f - 1));
        }
    }
    let total = n.value();
    if t == total || 2 * t == total {
        twice
    } else {
        twice / 2
    }
}

fn valuation(mut t: u64, q: u64) -> u32 {
    let mut f = 0;
    while t % q == 0 {
        t /= q;
        f += 1;
    }
    f
}

/// Orbits predicted from the factorization of `p² − 1`, sorted by size and
/// then by `t`.
pub fn predict_orbits(p: u64, signs: bool) -> Result<Vec<OrbitPrediction>, CayleyError> {
    PrimeField::new(p)?;
    let n = factorize(p * p - 1);
    let e2 = n.exponent_of(2);
    let real: Vec<u64> = divisors_of(&n)
        .into_iter()
        .filter(|t| t % (p + 1) == 0 || t % (p - 1) == 0)
        .collect();
    let describe = |t: u64| OrbitPrediction {
        t,
        exponents: n.primes().map(|q| (q, valuation(t, q))).collect(),
        size: orbit_size(&n, t),
        merged_with: None,
    };
    // Sign changes translate (u, v) by (p² − 1)/2, which only moves the power
    // of 2: the f(2) = e₂ − 1 orbit of each odd part joins the f(2) = e₂ one.
    // Halving a real t with f(2) = e₂ keeps it real, so the partner exists.
    let mut out: Vec<OrbitPrediction> = if signs {
        real.iter()
            .filter(|&&t| valuation(t, 2) != e2 - 1)
            .map(|&t| {
                let mut orbit = describe(t);
                if valuation(t, 2) == e2 {
                    debug_assert!(real.binary_search(&(t / 2)).is_ok());
                    orbit.size += orbit_size(&n, t / 2);
                    orbit.merged_with = Some(t / 2);
                }
                orbit
            })
            .collect()
    } else {
        real.into_iter().map(describe).collect()
    };
    out.sort_by_key(|o| (o.size, o.t));
    Ok(out)
}

/// Ascending orbit sizes from [`predict_orbits`].
pub fn predicted_sizes(p: u64, signs: bool) -> Result<Vec<u64>, CayleyError> {
    Ok(predict_orbits(p, signs)?.into_iter().map(|o| o.size).collect())
}

fn cayley_moves(signs: bool) -> &'static [Move] {
    use Move::*;
    if signs {
        &[M1, M2, M3, T12, T23, T13, S12, S13, S23]
    } else {
        &[M1, M2, M3, T12, T23, T13]
    }
}

/// Orbit sizes by exhaustive search over the points of the Cayley cubic
/// mod `p`, ascending. Refuses primes above `cap`.
pub fn empirical_orbits(p: u64, signs: bool, cap: u64) -> Result<Vec<u64>, CayleyError> {
    if p > cap {
        return Err(CayleyError::AboveCap { p, cap });
    }
    let s = LevelSurface::cayley(p)?;
    let pu = p as usize;
    let key = |t: Triple| (t.x as usize * pu + t.y as usize) * pu + t.z as usize;
    let mut visited = bitvec![0; pu * pu * pu];
    let moves = cayley_moves(signs);
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for seed in s.enumerate_solutions() {
        if visited[key(seed)] {
            continue;
        }
        visited.set(key(seed), true);
        stack.push(seed);
        let mut size = 0u64;
        while let Some(t) = stack.pop() {
            size += 1;
            for &m in moves {
                let w = s.image(m, t);
                if !visited[key(w)] {
                    visited.set(key(w), true);
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    Ok(sizes)
}

/// One row of the prediction-versus-enumeration comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitComparison {
    pub p: u64,
    pub signs: bool,
    pub predicted: Vec<u64>,
    pub empirical: Option<Vec<u64>>,
}

impl OrbitComparison {
    /// `None` when enumeration was skipped.
    pub fn matches(&self) -> Option<bool> {
        self.empirical.as_ref().map(|e| *e == self.predicted)
    }
}

/// Predictions for every prime in `primes`, with enumeration for those up to
/// `cap`. Primes are processed in parallel.
pub fn compare_orbits(primes: &[u64], signs: bool, cap: u64) -> Result<Vec<OrbitComparison>, CayleyError> {
    primes
        .par_iter()
        .map(|&p| {
            let predicted = predicted_sizes(p, signs)?;
            let empirical = if p <= cap { Some(empirical_orbits(p, signs, cap)?) } else { None };
            Ok(OrbitComparison { p, signs, predicted, empirical })
        })
        .collect()
}
