//! Finite-difference realizations of `-d^2/dx^2 + V` on `F_n` and their lowest eigenpairs.

pub mod cluster;
pub mod discretize;
pub mod eigen;
pub mod ldl;
pub mod potential;
pub mod sparse;
pub mod trace;

pub use cluster::{cluster, cluster_values};
pub use discretize::{discretize, DiscretizedOperator, NodeInfo, DEFAULT_MESH};
pub use eigen::{count_below, solve_lowest, solve_lowest_with, EigenResult, SolveMetadata, SolveOptions};
pub use potential::{Potential, PotentialKind, DEFAULT_CUTOFF};
pub use trace::{eigenfunction_trace, TracePoint};
