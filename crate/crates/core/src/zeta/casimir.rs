//! Zeta-regularized Casimir energy and force between two conducting plates.
//!
//! Every plate family has frequencies `omega = pi c mode scale` (times `I_n = N^n` for the level
//! families), so at `s = -1/2` its contribution `sum g omega` factors into a mode sum, regularized by
//! `zeta(-1)` or the half-integer Hurwitz value, times a level sum, regularized as a geometric
//! series. The result is linear in `alpha = 1/(2 X_0)` and `beta = 1/(1 - 2 X_0)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::riemann::{
    geometric_continuation, geometric_continuation_complex, hurwitz_half_sum, hurwitz_half_sum_complex,
    riemann_zeta, riemann_zeta_complex,
};
use crate::error::{Error, Result};
use crate::plates::PlateConfig;
use crate::spectrum::{ModeType, Scale};

/// Level dependence of a family's multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelWeight {
    /// A single level with this multiplicity and no `I_n` factor.
    Single(f64),
    /// Levels `n >= 2` with multiplicity `sum a b^n` and frequencies carrying `I_n = N^n`.
    Geometric(Vec<(f64, f64)>),
}

/// One family of the plate spectrum in the form the regularization consumes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularizedFamily {
    pub id: &'static str,
    pub scale: Scale,
    /// `omega = pi * frequency * mode * scale (* I_n)`.
    pub frequency: f64,
    pub mode: ModeType,
    pub weight: LevelWeight,
}

pub fn regularized_families(cfg: &PlateConfig) -> Vec<RegularizedFamily> {
    let n = cfg.n() as f64;
    let z1 = cfg.z() as f64 + 1.0;
    let outside = n - z1;
    let r = outside / n;
    let q = z1 / n;
    let fam = |id, scale, frequency, mode, weight| RegularizedFamily {
        id,
        scale,
        frequency,
        mode,
        weight,
    };
    use LevelWeight::{Geometric, Single};
    use ModeType::{HalfInteger as Half, Positive as Int};
    use Scale::{Exterior as Ext, Interior as Inn};
    vec![
        fam("plates-1", Inn, 1.0, Int, Single(1.0)),
        fam("plates-2", Ext, 2.0, Half, Single(2.0)),
        fam("plates-3", Ext, outside, Half, Single(2.0)),
        fam("plates-4", Ext, outside, Int, Single(outside - 2.0)),
        fam("plates-5", Inn, z1, Int, Single(z1)),
        fam("plates-6", Ext, r, Half, Geometric(vec![(1.0, 2.0)])),
        fam(
            "plates-7",
            Ext,
            r,
            Int,
            Geometric(vec![((n - 1.0) * outside / (2.0 * n * n), 2.0 * n)]),
        ),
        fam(
            "plates-8",
            Ext,
            r / 2.0,
            Int,
            Geometric(vec![(outside / (4.0 * n * n), 2.0 * n), (-0.5, 2.0)]),
        ),
        fam(
            "plates-9",
            Inn,
            q,
            Int,
            Geometric(vec![(z1 * (n - 1.0) / (2.0 * n * n), 2.0 * n), (0.5, 2.0)]),
        ),
        fam(
            "plates-10",
            Inn,
            q / 2.0,
            Int,
            Geometric(vec![(z1 / (4.0 * n * n), 2.0 * n), (-0.25, 2.0)]),
        ),
    ]
}

/// `(A, B)` with `zeta(-1/2) = A alpha + B beta`.
fn minus_half_coefficients(cfg: &PlateConfig) -> Result<(f64, f64)> {
    let n = cfg.n() as f64;
    let mut coeff = (0.0, 0.0);
    for f in regularized_families(cfg) {
        let modes = match f.mode {
            ModeType::HalfInteger => hurwitz_half_sum(-1.0)?,
            _ => riemann_zeta(-1.0)?,
        };
        let levels = match &f.weight {
            LevelWeight::Single(g) => *g,
            LevelWeight::Geometric(terms) => {
                let mut total = 0.0;
                for &(a, b) in terms {
                    // sum_{n>=2} a (b N)^n
                    let ratio = b * n;
                    total += a * ratio * ratio * geometric_continuation(ratio)?;
                }
                total
            }
        };
        let term = PI * f.frequency * modes * levels;
        match f.scale {
            Scale::Interior => coeff.0 += term,
            _ => coeff.1 += term,
        }
    }
    Ok(coeff)
}

/// `E(X_0) = a / X_0 + b / (1 - 2 X_0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularizedEnergy {
    pub a: f64,
    pub b: f64,
    pub total: f64,
}

impl RegularizedEnergy {
    /// Energy at another plate distance; `a` and `b` do not depend on it.
    pub fn at(&self, x0: f64) -> f64 {
        self.a / x0 + self.b / (1.0 - 2.0 * x0)
    }
}

/// Casimir energy `(hbar / 2) zeta(-1/2)` of the plate configuration.
pub fn plate_zeta_energy(cfg: &PlateConfig) -> Result<RegularizedEnergy> {
    let (a_coeff, b_coeff) = minus_half_coefficients(cfg)?;
    let hbar = cfg.hbar();
    let a = hbar * a_coeff / 4.0;
    let b = hbar * b_coeff / 2.0;
    let x0 = cfg.x0();
    Ok(RegularizedEnergy {
        a,
        b,
        total: a / x0 + b / (1.0 - 2.0 * x0),
    })
}

/// Spectral zeta function `sum g lambda^-s` of the plate configuration, continued in `s`.
pub fn plate_spectral_zeta(cfg: &PlateConfig, s: f64) -> Result<f64> {
    let sc = Complex64::new(s, 0.0);
    let zeta = riemann_zeta_complex(2.0 * sc)?;
    let half = hurwitz_half_sum_complex(2.0 * sc)?;
    let n = cfg.n() as f64;
    let alpha = 1.0 / (2.0 * cfg.x0());
    let beta = 1.0 / (1.0 - 2.0 * cfg.x0());
    let n_pow = n.powf(-2.0 * s);
    let mut total = Complex64::new(0.0, 0.0);
    for f in regularized_families(cfg) {
        let scale = match f.scale {
            Scale::Interior => alpha,
            _ => beta,
        };
        let prefactor = (PI * f.frequency * scale).powf(-2.0 * s);
        let modes = match f.mode {
            ModeType::HalfInteger => half,
            _ => zeta,
        };
        let levels = match &f.weight {
            LevelWeight::Single(g) => Complex64::new(*g, 0.0),
            LevelWeight::Geometric(terms) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(a, b) in terms {
                    let ratio = Complex64::new(b * n_pow, 0.0);
                    acc += a * ratio * ratio * geometric_continuation_complex(ratio)?;
                }
                acc
            }
        };
        total += prefactor * modes * levels;
    }
    Ok(total.re)
}

/// Closed-form force `dE/dX_0`; positive means attractive.
pub fn casimir_force(cfg: &PlateConfig) -> Result<f64> {
    Ok(force_terms(cfg, PI))
}

/// The closed form as typeset in the source, whose second term lacks its factor of `pi`.
///
/// It agrees with [`casimir_force`] only when `N = Z + 3`, where that term vanishes.
pub fn casimir_force_as_printed(cfg: &PlateConfig) -> Result<f64> {
    Ok(force_terms(cfg, 1.0))
}

fn force_terms(cfg: &PlateConfig, second_term_pi: f64) -> f64 {
    let n = cfg.n() as f64;
    let z1 = cfg.z() as f64 + 1.0;
    let z3 = z1 + 2.0;
    let x = cfg.x0();
    let r = 1.0 - z1 / n;
    let e2 = (1.0 - 2.0 * x).powi(2);
    let i2 = x * x;
    let one_2n = 1.0 - 2.0 * n;
    let one_2n2 = 1.0 - 2.0 * n * n;
    let terms = [
        2.0 * PI * (n - z1) / (24.0 * one_2n * e2),
        -second_term_pi * (n - z3) * (n - z1) / (12.0 * e2),
        -2.0 * PI * n.powi(3) * (n - 2.0) / (12.0 * one_2n2) * (r * r / e2),
        -5.0 * PI * r / (24.0 * e2) * (n * n * (n - z1) / one_2n2 - n * n / one_2n),
        PI * z1 * z1 / (48.0 * i2),
        PI * n * z1 * z1 * (n - 2.0) / (24.0 * i2 * one_2n2),
        5.0 * PI * n * z1 * z1 / (96.0 * one_2n2 * i2),
        PI / (6.0 * e2),
        PI / (48.0 * i2),
        -PI * n * n * r / (24.0 * one_2n * e2),
        PI * n * z1 / (96.0 * i2 * one_2n),
        -PI * n * n * r / (12.0 * e2 * one_2n),
        PI * z1 * n / (48.0 * i2 * one_2n),
    ];
    cfg.hbar() * terms.iter().sum::<f64>()
}

/// Central difference `(E(X_0 + h) - E(X_0 - h)) / 2h` of the regularized energy.
pub fn energy_derivative(cfg: &PlateConfig, step: f64) -> Result<f64> {
    let plus = plate_zeta_energy(&cfg.with_x0(cfg.x0() + step)?)?.total;
    let minus = plate_zeta_energy(&cfg.with_x0(cfg.x0() - step)?)?.total;
    Ok((plus - minus) / (2.0 * step))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CasimirReport {
    pub energy: RegularizedEnergy,
    /// Closed-form force.
    pub force: f64,
    /// Finite-difference derivative of the energy; authoritative on disagreement.
    pub oracle_force: f64,
    /// `force` and `oracle_force` agree to `1e-6` relative.
    pub agreement: bool,
    pub force_as_printed: f64,
    pub as_printed_agrees: bool,
}

pub fn casimir_report(cfg: &PlateConfig) -> Result<CasimirReport> {
    let energy = plate_zeta_energy(cfg)?;
    let step = 1e-6_f64.min(cfg.x0() / 4.0).min((0.5 - cfg.x0()) / 4.0);
    let oracle = energy_derivative(cfg, step)?;
    let force = casimir_force(cfg)?;
    let printed = casimir_force_as_printed(cfg)?;
    let agrees = |v: f64| (v - oracle).abs() <= 1e-6 * oracle.abs().max(1e-300);
    if !oracle.is_finite() {
        return Err(Error::InvalidPlates("energy derivative is not finite".into()));
    }
    Ok(CasimirReport {
        energy,
        force,
        oracle_force: oracle,
        agreement: agrees(force),
        force_as_printed: printed,
        as_printed_agrees: agrees(printed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_match_the_level_sums() {
        // At s = -1/2 the level sums reduce to ratios 2N and 2N^2.
        let cfg = PlateConfig::new(4, 1, 0.2).unwrap();
        for f in regularized_families(&cfg) {
            if let LevelWeight::Geometric(terms) = f.weight {
                for (_, b) in terms {
                    assert!(b == 2.0 || b == 8.0);
                }
            }
        }
    }

    #[test]
    fn force_scales_with_hbar() {
        let a = PlateConfig::new(5, 2, 0.3).unwrap();
        let b = PlateConfig::with_hbar(5, 2, 0.3, 2.5).unwrap();
        let fa = casimir_force(&a).unwrap();
        let fb = casimir_force(&b).unwrap();
        assert!((fb - 2.5 * fa).abs() < 1e-12 * fb.abs());
    }

    #[test]
    fn printed_form_agrees_only_when_second_term_vanishes() {
        let equal = PlateConfig::new(4, 1, 0.2).unwrap();
        assert_eq!(
            casimir_force(&equal).unwrap(),
            casimir_force_as_printed(&equal).unwrap()
        );
        let differ = PlateConfig::new(6, 1, 0.15).unwrap();
        assert!(casimir_report(&differ).unwrap().agreement);
        assert!(!casimir_report(&differ).unwrap().as_printed_agrees);
    }
}
