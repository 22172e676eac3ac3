//! Matchings, Birkhoff–von Neumann decomposition, and regular multigraphs.

mod bvn;
mod coloring;
mod matching;
mod regular;

pub use bvn::{bvn_decompose, BvnDecomposition, BvnTerm, DEFAULT_BVN_TOL};
pub use coloring::edge_color_regular;
pub use matching::{perfect_matching, PermutationMatching};
pub use regular::{random_regular_digraph, spread_regular_digraph, RegularMultigraph};
