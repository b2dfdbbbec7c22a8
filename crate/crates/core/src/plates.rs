//! Conducting-plate configurations on constant-`j` Laakso spaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::JSequence;

/// Two conducting plates placed symmetrically on `F_1` of the space with `j_n = N`.
///
/// `Z` nodes of `F_1` lie strictly between the plates, so `Z + 1` cells are interior and
/// `N - (Z + 1)` exterior. `x0` is the distance from either plate to the center `x = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateConfig {
    n: u64,
    z: u64,
    x0: f64,
    hbar: f64,
}

impl PlateConfig {
    pub fn new(n: u64, z: u64, x0: f64) -> Result<Self> {
        Self::with_hbar(n, z, x0, 1.0)
    }

    pub fn with_hbar(n: u64, z: u64, x0: f64, hbar: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPlates(format!("N = {n} must be at least 2")));
        }
        if z + 2 > n {
            return Err(Error::InvalidPlates(format!(
                "Z = {z} exceeds N - 2 = {}",
                n as i64 - 2
            )));
        }
        if !(n - z - 1).is_multiple_of(2) {
            return Err(Error::InvalidPlates(format!(
                "N - (Z + 1) = {} must be even for symmetric plates",
                n - z - 1
            )));
        }
        if !(x0.is_finite() && x0 > 0.0 && x0 < 0.5) {
            return Err(Error::InvalidPlates(format!("X_0 = {x0} must lie in (0, 1/2)")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidPlates(format!("hbar = {hbar} must be positive")));
        }
        Ok(Self { n, z, x0, hbar })
    }

    /// Same configuration at a different plate distance.
    pub fn with_x0(&self, x0: f64) -> Result<Self> {
        Self::with_hbar(self.n, self.z, x0, self.hbar)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// The constant sequence `j_n = N`.
    pub fn sequence(&self) -> JSequence {
        JSequence::constant(self.n).expect("N >= 2 was validated")
    }

    /// `F_1` columns carrying the plates.
    pub fn plate_columns(&self) -> (u64, u64) {
        let c = (self.n - self.z - 1) / 2;
        (c, self.n - c)
    }

    /// Fraction `(Z + 1) / N` of cells lying between the plates.
    pub fn interior_fraction(&self) -> f64 {
        (self.z + 1) as f64 / self.n as f64
    }

    /// Plate distance at which the plates sit on their natural columns and every cell keeps its
    /// unperturbed length.
    pub fn natural_x0(&self) -> f64 {
        (self.z + 1) as f64 / (2 * self.n) as f64
    }

    /// Cell lengths `(interior, exterior)` in `F_n` with `I_n` cells per row.
    pub fn cell_lengths(&self, i_n: u128) -> (f64, f64) {
        let i_n = i_n as f64;
        let q = self.interior_fraction();
        let interior = 2.0 * self.n as f64 * self.x0 / (self.z + 1) as f64 / i_n;
        let exterior = (1.0 - 2.0 * self.x0) / (1.0 - q) / i_n;
        (interior, exterior)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PlateConfig::new(4, 1, 0.25).is_ok());
        assert!(PlateConfig::new(5, 2, 0.3).is_ok());
        // N - (Z + 1) odd
        assert!(PlateConfig::new(4, 0, 0.2).is_err());
        // Z > N - 2
        assert!(PlateConfig::new(2, 1, 0.2).is_err());
        assert!(PlateConfig::new(2, 0, 0.2).is_err());
        assert!(PlateConfig::new(1, 0, 0.2).is_err());
        assert!(PlateConfig::new(4, 1, 0.5).is_err());
        assert!(PlateConfig::new(4, 1, 0.0).is_err());
        assert!(PlateConfig::with_hbar(4, 1, 0.2, -1.0).is_err());
    }

    #[test]
    fn natural_position_keeps_lengths() {
        let cfg = PlateConfig::new(4, 1, 0.25).unwrap();
        assert_eq!(cfg.natural_x0(), 0.25);
        let (a, b) = cfg.cell_lengths(4);
        assert_eq!(a, 0.25);
        assert_eq!(b, 0.25);
        assert_eq!(cfg.plate_columns(), (1, 3));
    }
}
