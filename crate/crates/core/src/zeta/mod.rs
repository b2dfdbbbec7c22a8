//! Spectral zeta functions and zeta-regularized Casimir quantities.

pub mod casimir;
pub mod periodic;
pub mod riemann;

pub use casimir::{
    casimir_force, casimir_force_as_printed, casimir_report, energy_derivative, plate_spectral_zeta,
    plate_zeta_energy, regularized_families, CasimirReport, RegularizedEnergy, RegularizedFamily,
};
pub use periodic::{
    constant_j_zeta, period2_zeta, spectral_dimension, spectral_zeta_periodic, zeta_limit_half, zeta_poles,
    ZetaMode, ZetaValue,
};
pub use riemann::{geometric_continuation, hurwitz_half_sum, riemann_zeta, riemann_zeta_complex};
