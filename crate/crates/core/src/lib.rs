//! Single-shortcut diameter minimization for edge-weighted trees.
//!
//! Given a tree with positive edge weights and a cost for every possible
//! shortcut, find the shortcut whose addition makes the diameter smallest.
//! Vertex and path indices are 0-based throughout the library.

pub mod approx;
pub mod closure;
pub mod cost;
pub mod decision;
pub mod envelope;
pub mod exact;
pub mod error;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod tree;
pub mod wdoap;

pub use approx::{solve_approx, solve_tree_approx};
pub use closure::{solve_general, GeneralSolution};
pub use cost::{check_graph_metric, CostClass, CostOracle};
pub use decision::feasible;
pub use error::{CostError, Error, InstanceError, ParseError, TreeError};
pub use exact::{solve, solve_tree};
pub use tree::{decompose, hanging_weights, Tree, TreeDecomposition};
pub use wdoap::{induce_instance, DenseCost, PathCost, PathInstance};

/// A shortcut `(u, v)` with `u < v`, its cost and the resulting diameter.
///
/// For path-level solvers `u` and `v` are path indices; for tree-level
/// solvers they are vertex ids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub u: usize,
    pub v: usize,
    pub cost: f64,
    pub diameter: f64,
}
