//! Markoff-type level surfaces over prime fields and the graphs generated by
//! their Vieta involutions.
//!
//! * [`arith`]: prime fields, Legendre symbols, square roots, `F_{p²}`.
//! * [`surface`]: the surfaces `x² + y² + z² − a·xyz = k` and their moves.
//! * [`graph`]: Markoff graphs and their connected components.
//! * [`spectral`]: adjacency spectra, `λ₂`, Kesten–McKay comparison.
//! * [`cayley`]: orbit structure of the Cayley cubic `k = 4`, `a = 1`.

pub mod arith;
pub mod cayley;
pub mod graph;
pub mod spectral;
pub mod surface;

pub use graph::{build_graph, connected_components, GeneratorSet, MarkoffGraph};
pub use surface::{LevelSurface, Move, Triple};
