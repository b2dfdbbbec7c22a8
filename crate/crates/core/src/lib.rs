//! Laakso spaces `L_j` and their quantum-graph approximations `F_n`.
//!
//! The crate builds the graphs, decomposes them into shapes, enumerates the closed-form spectra of
//! the free, square-well and conducting-plate Hamiltonians, computes the same spectra numerically,
//! and evaluates the spectral zeta function and the plate Casimir energy.

pub mod error;
pub mod graph;
pub mod numeric;
pub mod par;
pub mod plates;
pub mod sequence;
pub mod shapes;
pub mod spectrum;
pub mod well;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{build_graph, QuantumGraph};
pub use par::Parallelism;
pub use plates::PlateConfig;
pub use sequence::{level_products, JSequence, SequenceKind};

/// Exact rationals for column positions, well offsets and eigenvalue coefficients.
pub type Rational = num_rational::Ratio<i128>;

/// Serializes a ratio as `"p/q"`, or `"p"` when integral.
pub(crate) fn serialize_ratio<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}
