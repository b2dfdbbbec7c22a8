//! Potentials depending on `x` only, with singular points replaced by a finite cutoff.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_CUTOFF: f64 = 1e15;

#[derive(Clone)]
pub enum PotentialKind {
    Free,
    /// `0` on `[1/4, 3/4]`, the cutoff elsewhere.
    SquareWell,
    /// `-1/(x - 1/2)^2 + 1/4`, with `-cutoff` at `x = 1/2`.
    Coulomb,
    /// `1/(x(1 - x))`, with `+cutoff` at `x = 0` and `x = 1`.
    Parabolic,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl PotentialKind {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialKind::Free => "free",
            PotentialKind::SquareWell => "square-well",
            PotentialKind::Coulomb => "coulomb",
            PotentialKind::Parabolic => "parabolic",
            PotentialKind::Custom(_) => "custom",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Potential {
    kind: PotentialKind,
    cutoff: f64,
}

impl Potential {
    pub fn new(kind: PotentialKind, cutoff: f64) -> Result<Self> {
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "cutoff {cutoff} must be positive and finite"
            )));
        }
        Ok(Self { kind, cutoff })
    }

    pub fn free() -> Self {
        Self::new(PotentialKind::Free, DEFAULT_CUTOFF).unwrap()
    }

    pub fn square_well() -> Self {
        Self::new(PotentialKind::SquareWell, DEFAULT_CUTOFF).unwrap()
    }

    pub fn coulomb() -> Self {
        Self::new(PotentialKind::Coulomb, DEFAULT_CUTOFF).unwrap()
    }

    pub fn parabolic() -> Self {
        Self::new(PotentialKind::Parabolic, DEFAULT_CUTOFF).unwrap()
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(PotentialKind::Custom(Arc::new(f)), DEFAULT_CUTOFF).unwrap()
    }

    /// Parses `free`, `square-well`, `coulomb` or `parabolic`.
    pub fn from_name(name: &str, cutoff: f64) -> Result<Self> {
        let kind = match name {
            "free" => PotentialKind::Free,
            "square-well" => PotentialKind::SquareWell,
            "coulomb" => PotentialKind::Coulomb,
            "parabolic" => PotentialKind::Parabolic,
            other => {
                return Err(Error::InvalidArgument(format!("unknown potential {other:?}")));
            }
        };
        Self::new(kind, cutoff)
    }

    pub fn with_cutoff(self, cutoff: f64) -> Result<Self> {
        Self::new(self.kind, cutoff)
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Free => 0.0,
            PotentialKind::SquareWell => {
                if (0.25..=0.75).contains(&x) {
                    0.0
                } else {
                    self.cutoff
                }
            }
            PotentialKind::Coulomb => {
                if x == 0.5 {
                    -self.cutoff
                } else {
                    -1.0 / ((x - 0.5) * (x - 0.5)) + 0.25
                }
            }
            PotentialKind::Parabolic => {
                if x == 0.0 || x == 1.0 {
                    self.cutoff
                } else {
                    1.0 / (x * (1.0 - x))
                }
            }
            PotentialKind::Custom(f) => f(x),
        }
    }

    /// Whether `v` is a cutoff value rather than a physical one.
    pub fn is_cutoff(&self, v: f64) -> bool {
        v.abs() >= self.cutoff
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let w = Potential::square_well();
        assert_eq!(w.eval(0.25), 0.0);
        assert_eq!(w.eval(0.75), 0.0);
        assert_eq!(w.eval(0.2499), 1e15);
        let c = Potential::coulomb();
        assert_eq!(c.eval(0.5), -1e15);
        assert_eq!(c.eval(0.0), -3.75);
        let p = Potential::parabolic();
        assert_eq!(p.eval(1.0), 1e15);
        assert_eq!(p.eval(0.5), 4.0);
        assert!(Potential::from_name("harmonic", 1.0).is_err());
        assert!(Potential::free().with_cutoff(0.0).is_err());
    }
}
