//! Markoff graphs: the points of a level surface joined by a chosen set of
//! symmetries, stored in compressed sparse row form.
//!
//! With the Dehn generators `D1, D2, D3` every vertex has exactly three
//! neighbour entries. A generator fixing a vertex contributes one diagonal
//! entry (a loop of weight 1), so every row of the adjacency operator sums to
//! 3 and the top eigenvalue is exactly 3. The extended generator sets are
//! used for connectivity only; their neighbour lists are deduplicated.

mod union_find;

use std::collections::VecDeque;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::surface::{LevelSurface, Move, SurfaceError, Triple};

pub use union_find::DisjointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("the surface has no points to build a graph on")]
    EmptySurface,
    #[error("origin can only be excluded on the level k = 0 (got k = {0})")]
    OriginOnNonzeroLevel(u64),
    #[error("move {mv} sent {from} to {to}, which is not a vertex")]
    BrokenImage { mv: Move, from: Triple, to: Triple },
    #[error("unknown generator set `{0}` (expected dehn, perms or full)")]
    UnknownGenerators(String),
}

/// Which symmetries contribute edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorSet {
    /// `D1, D2, D3`: a 3-regular (multi)graph.
    Dehn,
    /// Dehn twists plus the three transpositions.
    MovesPerms,
    /// Dehn twists, transpositions and double sign changes.
    MovesPermsSigns,
}

impl GeneratorSet {
    pub fn moves(self) -> &'static [Move] {
        use Move::*;
        match self {
            GeneratorSet::Dehn => &[D1, D2, D3],
            GeneratorSet::MovesPerms => &[D1, D2, D3, T12, T23, T13],
            GeneratorSet::MovesPermsSigns => &[D1, D2, D3, T12, T23, T13, S12, S13, S23],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorSet::Dehn => "dehn",
            GeneratorSet::MovesPerms => "perms",
            GeneratorSet::MovesPermsSigns => "full",
        }
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorSet {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dehn" => Ok(GeneratorSet::Dehn),
            "perms" => Ok(GeneratorSet::MovesPerms),
            "full" => Ok(GeneratorSet::MovesPermsSigns),
            _ => Err(GraphError::UnknownGenerators(s.to_owned())),
        }
    }
}

/// Bijection between the (lexicographically ordered) points of a surface and
/// dense indices `0..V`.
///
/// Lookups go through a prefix table over `(x, y)`; each `(x, y)` has at most
/// two points, so `index_of` is O(1).
#[derive(Clone, Debug)]
pub struct VertexIndex {
    p: u32,
    row_start: Vec<u32>,
    triples: Vec<Triple>,
}

impl VertexIndex {
    /// `triples` must be strictly increasing.
    pub fn new(p: u64, triples: Vec<Triple>) -> Self {
        debug_assert!(triples.windows(2).all(|w| w[0] < w[1]));
        let p = p as u32;
        let cells = p as usize * p as usize;
        let mut row_start = vec![0u32; cells + 1];
        for t in &triples {
            row_start[t.x as usize * p as usize + t.y as usize + 1] += 1;
        }
        for i in 0..cells {
            row_start[i + 1] += row_start[i];
        }
        Self { p, row_start, triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triple(&self, v: u32) -> Triple {
        self.triples[v as usize]
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn index_of(&self, t: Triple) -> Option<u32> {
        if t.x >= self.p || t.y >= self.p {
            return None;
        }
        let cell = t.x as usize * self.p as usize + t.y as usize;
        let (lo, hi) = (self.row_start[cell], self.row_start[cell + 1]);
        (lo..hi).find(|&i| self.triples[i as usize].z == t.z)
    }
}

/// Immutable adjacency structure of a Markoff graph.
#[derive(Clone, Debug)]
pub struct MarkoffGraph {
    surface: LevelSurface,
    generators: GeneratorSet,
    origin_excluded: bool,
    index: VertexIndex,
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    loops: Vec<u8>,
}

impl MarkoffGraph {
    pub fn surface(&self) -> &LevelSurface {
        &self.surface
    }

    pub fn generators(&self) -> GeneratorSet {
        self.generators
    }

    pub fn origin_excluded(&self) -> bool {
        self.origin_excluded
    }

    pub fn index(&self) -> &VertexIndex {
        &self.index
    }

    pub fn vertex_count(&self) -> usize {
        self.index.len()
    }

    /// Neighbour entries of `v`; a loop appears as `v` itself, and with the
    /// Dehn generators repeated entries are parallel edges.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let (lo, hi) = (self.offsets[v as usize], self.offsets[v as usize + 1]);
        &self.neighbors[lo as usize..hi as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn loop_count(&self, v: u32) -> u8 {
        self.loops[v as usize]
    }

    /// Number of vertices carrying at least one loop.
    pub fn loop_vertex_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l > 0).count()
    }

    /// Trace of the adjacency operator.
    pub fn total_loop_weight(&self) -> usize {
        self.loops.iter().map(|&l| l as usize).sum()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.vertex_count() as u32).all(|v| self.degree(v) == d)
    }

    /// Checks `A[u][v] = A[v][u]`, multiplicities included.
    pub fn is_symmetric(&self) -> bool {
        (0..self.vertex_count() as u32).all(|v| {
            self.neighbors(v).iter().all(|&u| {
                let forward = self.neighbors(v).iter().filter(|&&w| w == u).count();
                let backward = self.neighbors(u).iter().filter(|&&w| w == v).count();
                forward == backward
            })
        })
    }

    /// `y = A x`, parallel over rows.
    pub fn apply_adjacency(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.vertex_count());
        assert_eq!(y.len(), self.vertex_count());
        y.par_iter_mut().enumerate().for_each(|(v, out)| {
            *out = self.neighbors(v as u32).iter().map(|&u| x[u as usize]).sum();
        });
    }

    /// Writes `u v` per edge with `u <= v`; loops appear as `v v`.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        for v in 0..self.vertex_count() as u32 {
            for &u in self.neighbors(v) {
                if v <= u {
                    writeln!(w, "{v} {u}")?;
                }
            }
        }
        Ok(())
    }
}

/// Builds the graph on the points of `s` with edges from `gens`.
///
/// `exclude_origin` drops `(0,0,0)`, which is only allowed on the level
/// `k = 0` where the origin is an isolated fixed point of every move.
pub fn build_graph(
    s: &LevelSurface,
    gens: GeneratorSet,
    exclude_origin: bool,
) -> Result<MarkoffGraph, GraphError> {
    if exclude_origin && s.k() != 0 {
        return Err(GraphError::OriginOnNonzeroLevel(s.k()));
    }
    let mut triples = s.enumerate_solutions();
    if exclude_origin {
        triples.retain(|&t| t != Triple::ORIGIN);
    }
    if triples.is_empty() {
        return Err(GraphError::EmptySurface);
    }
    let index = VertexIndex::new(s.p(), triples);
    let n = index.len();
    let moves = gens.moves();

    let mut offsets = Vec::with_capacity(n + 1);
    let mut neighbors = Vec::with_capacity(n * moves.len());
    let mut loops = vec![0u8; n];
    let mut row = Vec::with_capacity(moves.len());
    offsets.push(0u32);
    for v in 0..n as u32 {
        let t = index.triple(v);
        row.clear();
        for &m in moves {
            let image = s.image(m, t);
            let u = index
                .index_of(image)
                .ok_or(GraphError::BrokenImage { mv: m, from: t, to: image })?;
            row.push(u);
        }
        if gens != GeneratorSet::Dehn {
            row.sort_unstable();
            row.dedup();
        }
        loops[v as usize] = row.iter().filter(|&&u| u == v).count() as u8;
        neighbors.extend_from_slice(&row);
        offsets.push(neighbors.len() as u32);
    }
    Ok(MarkoffGraph {
        surface: *s,
        generators: gens,
        origin_excluded: exclude_origin,
        index,
        offsets,
        neighbors,
        loops,
    })
}

fn union_all(g: &MarkoffGraph) -> DisjointSet {
    let mut ds = DisjointSet::new(g.vertex_count());
    for v in 0..g.vertex_count() as u32 {
        for &u in g.neighbors(v) {
            ds.union(v, u);
        }
    }
    ds
}

/// Component sizes in ascending order.
pub fn connected_components(g: &MarkoffGraph) -> Vec<usize> {
    union_all(g).set_sizes()
}

/// Component label of every vertex, numbered by first appearance.
pub fn component_labels(g: &MarkoffGraph) -> Vec<u32> {
    union_all(g).labels()
}

/// Component sizes by breadth-first search; an independent check on the
/// union-find route.
pub fn bfs_component_sizes(g: &MarkoffGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start as u32);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

/// One cell of a component table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRow {
    pub p: u64,
    pub k: u64,
    pub a: u64,
    pub gens: GeneratorSet,
    pub component_sizes: Vec<usize>,
}

impl ComponentRow {
    pub fn sizes_string(&self) -> String {
        join_sizes(&self.component_sizes)
    }
}

/// Space-separated sizes, the format used in the printed tables.
pub fn join_sizes<T: fmt::Display>(sizes: &[T]) -> String {
    sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// Component sizes for one level (origin included).
pub fn component_row(p: u64, k: u64, a: i64, gens: GeneratorSet) -> Result<ComponentRow, GraphError> {
    let s = LevelSurface::new(p, k as i64, a)?;
    let g = build_graph(&s, gens, false)?;
    Ok(ComponentRow { p, k: s.k(), a: s.a(), gens, component_sizes: connected_components(&g) })
}

/// Rows for every level `0 <= k < p` of every prime in `primes`, ordered by
/// `(p, k)`. Cells are computed in parallel.
pub fn component_table(primes: &[u64], a: i64, gens: GeneratorSet) -> Result<Vec<ComponentRow>, GraphError> {
    let cells: Vec<(u64, u64)> = primes.iter().flat_map(|&p| (0..p).map(move |k| (p, k))).collect();
    cells
        .par_iter()
        .map(|&(p, k)| component_row(p, k, a, gens))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;

    fn graph(p: u64, k: i64, a: i64, gens: GeneratorSet, exclude: bool) -> MarkoffGraph {
        build_graph(&LevelSurface::new(p, k, a).unwrap(), gens, exclude).unwrap()
    }

    #[test]
    fn mod_7_dehn_graph() {
        let g = graph(7, 0, 1, GeneratorSet::Dehn, true);
        assert_eq!(g.vertex_count(), 28);
        let loops: Vec<Triple> = (0..28u32)
            .filter(|&v| g.loop_count(v) > 0)
            .map(|v| g.index().triple(v))
            .collect();
        assert_eq!(loops, vec![Triple::new(4, 1, 1), Triple::new(4, 6, 6)]);
        assert_eq!(g.total_loop_weight(), 2);
        assert!(g.is_regular(3));
        assert!(g.is_symmetric());
    }

    #[test]
    fn mod_11_has_no_loops() {
        let g = graph(11, 0, 3, GeneratorSet::Dehn, true);
        assert_eq!(g.vertex_count(), 88);
        assert_eq!(g.loop_vertex_count(), 0);
        assert_eq!(graph(5, 0, 3, GeneratorSet::Dehn, false).vertex_count(), 41);
    }

    #[test]
    fn origin_exclusion_needs_level_zero() {
        let s = LevelSurface::new(7, 2, 3).unwrap();
        assert_eq!(
            build_graph(&s, GeneratorSet::Dehn, true).unwrap_err(),
            GraphError::OriginOnNonzeroLevel(2)
        );
    }

    #[test]
    fn figure_five_components() {
        let full = graph(7, 2, 3, GeneratorSet::MovesPermsSigns, false);
        assert_eq!(connected_components(&full), vec![4, 6, 16, 24]);
        let perms = graph(7, 2, 3, GeneratorSet::MovesPerms, false);
        assert_eq!(connected_components(&perms), vec![1, 3, 4, 6, 12, 24]);
        // the twists alone leave ten components on this level
        let dehn = graph(7, 2, 3, GeneratorSet::Dehn, false);
        assert_eq!(connected_components(&dehn), vec![1, 1, 2, 2, 4, 4, 4, 8, 8, 16]);
        assert_eq!(connected_components(&graph(13, 6, 3, GeneratorSet::MovesPermsSigns, false)), vec![16, 128]);
    }

    #[test]
    fn union_find_agrees_with_bfs() {
        for p in primes_in(5, 31) {
            for k in 0..p as i64 {
                for gens in [GeneratorSet::Dehn, GeneratorSet::MovesPerms, GeneratorSet::MovesPermsSigns] {
                    let g = graph(p, k, 3, gens, false);
                    let sizes = connected_components(&g);
                    assert_eq!(sizes, bfs_component_sizes(&g), "p={p} k={k} {gens}");
                    assert_eq!(sizes.iter().sum::<usize>(), g.vertex_count());
                }
            }
        }
    }

    #[test]
    fn symmetric_for_every_generator_set() {
        for p in [5, 7, 11, 13] {
            for k in 0..p as i64 {
                for gens in [GeneratorSet::Dehn, GeneratorSet::MovesPerms, GeneratorSet::MovesPermsSigns] {
                    assert!(graph(p, k, 3, gens, false).is_symmetric(), "p={p} k={k} {gens}");
                }
            }
        }
    }

    #[test]
    fn vertex_index_roundtrip() {
        let g = graph(13, 4, 3, GeneratorSet::Dehn, false);
        for v in 0..g.vertex_count() as u32 {
            assert_eq!(g.index().index_of(g.index().triple(v)), Some(v));
        }
        assert_eq!(g.index().index_of(Triple::new(0, 0, 0)), None);
        assert_eq!(g.index().index_of(Triple::new(13, 0, 0)), None);
    }

    #[test]
    fn edge_list_format() {
        let g = graph(7, 0, 1, GeneratorSet::Dehn, true);
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // 28 * 3 entries: 2 loops (one line each) + 41 edges
        assert_eq!(lines.len(), 2 + (28 * 3 - 2) / 2);
        let loops = lines.iter().filter(|l| {
            let mut it = l.split(' ');
            it.next() == it.next()
        });
        assert_eq!(loops.count(), 2);
    }

    #[test]
    fn parse_generator_sets() {
        assert_eq!("full".parse::<GeneratorSet>().unwrap(), GeneratorSet::MovesPermsSigns);
        assert_eq!("Dehn".parse::<GeneratorSet>().unwrap(), GeneratorSet::Dehn);
        assert!("all".parse::<GeneratorSet>().is_err());
    }
}
