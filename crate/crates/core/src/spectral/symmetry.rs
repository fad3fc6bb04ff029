//! Block diagonalization of the Dehn adjacency by the Klein four-group
//! generated by `T23` and `S23`.
//!
//! Both maps conjugate the twist set to itself (`T23` fixes `D1` and swaps
//! `D2`, `D3`; `S23` commutes with every twist), so the adjacency operator
//! preserves each isotypic component. For a character `χ` an orbit `O` with
//! representative `r` contributes the unit vector proportional to
//! `Σ_g χ(g) e_{g·r}` whenever `χ` is trivial on the stabilizer of `r`, and
//! the matrix entries in that basis are
//!
//! ```text
//! B[O1, O2] = √(|O1| / |O2|) · Σ_{w ~ r1, w ∈ O2} χ(h_w),   h_w · r2 = w.
//! ```

use faer::{Mat, Side};

use crate::graph::MarkoffGraph;
use crate::surface::{Move, Triple};

use super::SpectralError;

/// Group element encoded as bits: bit 0 applies `T23`, bit 1 applies `S23`.
fn act(g: u8, t: Triple, p: u32) -> Triple {
    let mut t = t;
    if g & 2 != 0 {
        t = Triple::new(t.x, (p - t.y) % p, (p - t.z) % p);
    }
    if g & 1 != 0 {
        t = Triple::new(t.x, t.z, t.y);
    }
    t
}

fn character(chi: u8, g: u8) -> f64 {
    if (chi & g).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

struct Orbits {
    orbit_of: Vec<u32>,
    element_of: Vec<u8>,
    reps: Vec<u32>,
    stabilizers: Vec<u8>,
}

fn orbits(g: &MarkoffGraph) -> Result<Orbits, SpectralError> {
    let n = g.vertex_count();
    let p = g.surface().p() as u32;
    let index = g.index();
    let mut orbit_of = vec![u32::MAX; n];
    let mut element_of = vec![0u8; n];
    let mut reps = Vec::new();
    let mut stabilizers = Vec::new();
    for v in 0..n as u32 {
        if orbit_of[v as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        let mut stab = 0u8;
        for e in 0..4u8 {
            let image = act(e, index.triple(v), p);
            let w = index.index_of(image).ok_or(SpectralError::BrokenSymmetry(image))?;
            if orbit_of[w as usize] == u32::MAX {
                orbit_of[w as usize] = id;
                element_of[w as usize] = e;
            }
            if w == v {
                stab |= 1 << e;
            }
        }
        reps.push(v);
        stabilizers.push(stab);
    }
    Ok(Orbits { orbit_of, element_of, reps, stabilizers })
}

/// The unsymmetrized block of character `chi`, row-major, with its dimension.
#[allow(clippy::needless_range_loop)]
fn character_block(g: &MarkoffGraph, o: &Orbits, chi: u8) -> (usize, Vec<f64>) {
    let orbit_size = |id: usize| 4.0 / o.stabilizers[id].count_ones() as f64;
    let valid = |id: usize| (0..4u8).all(|e| o.stabilizers[id] & (1 << e) == 0 || character(chi, e) == 1.0);
    let mut pos = vec![usize::MAX; o.reps.len()];
    let mut dim = 0;
    for id in 0..o.reps.len() {
        if valid(id) {
            pos[id] = dim;
            dim += 1;
        }
    }
    let mut b = vec![0.0; dim * dim];
    for (id1, &r1) in o.reps.iter().enumerate() {
        if pos[id1] == usize::MAX {
            continue;
        }
        for &w in g.neighbors(r1) {
            let id2 = o.orbit_of[w as usize] as usize;
            if pos[id2] == usize::MAX {
                continue;
            }
            let c = character(chi, o.element_of[w as usize]);
            b[pos[id1] * dim + pos[id2]] += c * (orbit_size(id1) / orbit_size(id2)).sqrt();
        }
    }
    (dim, b)
}

/// Symmetric blocks, one per character, row-major with their dimensions.
pub(crate) fn symmetry_blocks(g: &MarkoffGraph) -> Result<Vec<(usize, Vec<f64>)>, SpectralError> {
    debug_assert!(g.generators().moves().iter().all(|m| matches!(m, Move::D1 | Move::D2 | Move::D3)));
    let o = orbits(g)?;
    Ok((0..4u8)
        .map(|chi| {
            let (dim, mut b) = character_block(g, &o, chi);
            for i in 0..dim {
                for j in 0..i {
                    let avg = 0.5 * (b[i * dim + j] + b[j * dim + i]);
                    b[i * dim + j] = avg;
                    b[j * dim + i] = avg;
                }
            }
            (dim, b)
        })
        .collect())
}

/// All adjacency eigenvalues, ascending, via the four symmetry blocks.
pub(crate) fn block_spectrum(g: &MarkoffGraph) -> Result<Vec<f64>, SpectralError> {
    let mut spectrum = Vec::with_capacity(g.vertex_count());
    for (dim, b) in symmetry_blocks(g)? {
        if dim == 0 {
            continue;
        }
        let m = Mat::<f64>::from_fn(dim, dim, |i, j| b[i * dim + j]);
        let ev = m
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| SpectralError::Dense(format!("{e:?}")))?;
        spectrum.extend(ev);
    }
    spectrum.sort_by(f64::total_cmp);
    Ok(spectrum)
}
