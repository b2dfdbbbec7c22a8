//! Spectrum of the Laplacian with Dirichlet conditions on two conducting plates.
//!
//! Interior families scale with `alpha = 1 / (2 X_0)`, exterior ones with `beta = 1 / (1 - 2 X_0)`.
//! With `q = (Z + 1) / N` and `r = 1 - q`, the level-`n` families read `omega = I_n k pi r beta`
//! and the like, and `lambda = omega^2`.

use std::f64::consts::PI;

use super::{FamilyDescriptor, LineSink, ModeType, Scale, SpectralLine, SpectrumQuery};
use crate::error::{Error, Result};
use crate::plates::PlateConfig;
use crate::Rational;

const fn family(
    id: &'static str,
    mode: ModeType,
    min_level: usize,
    eigenvalue: &'static str,
    multiplicity: &'static str,
) -> FamilyDescriptor {
    FamilyDescriptor {
        id,
        mode,
        min_level,
        max_level: if min_level < 2 { Some(min_level) } else { None },
        eigenvalue,
        multiplicity,
    }
}

pub const FAMILIES: [FamilyDescriptor; 10] = [
    family("plates-1", ModeType::Positive, 0, "(k pi alpha)^2", "1"),
    family(
        "plates-2",
        ModeType::HalfInteger,
        0,
        "((k + 1/2) 2 pi beta)^2",
        "2",
    ),
    family(
        "plates-3",
        ModeType::HalfInteger,
        1,
        "((k + 1/2) pi (N - Z - 1) beta)^2",
        "2",
    ),
    family(
        "plates-4",
        ModeType::Positive,
        1,
        "(k pi (N - Z - 1) beta)^2",
        "N - Z - 3",
    ),
    family(
        "plates-5",
        ModeType::Positive,
        1,
        "(k pi (Z + 1) alpha)^2",
        "Z + 1",
    ),
    family(
        "plates-6",
        ModeType::HalfInteger,
        2,
        "(I_n (k + 1/2) pi r beta)^2",
        "2^n",
    ),
    family(
        "plates-7",
        ModeType::Positive,
        2,
        "(I_n k pi r beta)^2",
        "r I_(n-1) 2^(n-1) (N - 2) + 2^(n-1) r I_(n-1)",
    ),
    family(
        "plates-8",
        ModeType::Positive,
        2,
        "(I_n k pi r beta / 2)^2",
        "2^(n-2) (r I_(n-1) - 1) - 2^(n-2)",
    ),
    family(
        "plates-9",
        ModeType::Positive,
        2,
        "(I_n k pi (Z + 1) alpha / N)^2",
        "q I_(n-1) 2^(n-1) (N - 2) + 2^(n-1) q I_(n-1) + 2^(n-1)",
    ),
    family(
        "plates-10",
        ModeType::Positive,
        2,
        "(I_n k pi (Z + 1) alpha / (2N))^2",
        "2^(n-2) (q I_(n-1) - 1)",
    ),
];

/// Level-`n` multiplicities of families 6 to 10 (`n >= 2`), in order.
///
/// `r I_{n-1} = (N - Z - 1) N^{n-2}` and `q I_{n-1} = (Z + 1) N^{n-2}` are integers.
pub fn level_multiplicities(cfg: &PlateConfig, n: usize) -> Result<[i128; 5]> {
    assert!(n >= 2);
    let big_n = cfg.n() as i128;
    let np = big_n
        .checked_pow(n as u32 - 2)
        .ok_or(Error::Overflow("N^(n-2)"))?;
    let r_i = (big_n - cfg.z() as i128 - 1) * np;
    let q_i = (cfg.z() as i128 + 1) * np;
    let two = |e: usize| 1i128 << e;
    Ok([
        two(n),
        r_i * two(n - 1) * (big_n - 2) + two(n - 1) * r_i,
        two(n - 2) * (r_i - 1) - two(n - 2),
        q_i * two(n - 1) * (big_n - 2) + two(n - 1) * q_i + two(n - 1),
        two(n - 2) * (q_i - 1),
    ])
}

pub fn plates_spectrum(cfg: &PlateConfig, q: &SpectrumQuery) -> Result<Vec<SpectralLine>> {
    let mut sink = LineSink::new(q);
    let big_n = cfg.n() as i128;
    let z1 = cfg.z() as i128 + 1;
    let outside = big_n - z1;
    let alpha = 1.0 / (2.0 * cfg.x0());
    let beta = 1.0 / (1.0 - 2.0 * cfg.x0());
    let inner = (Scale::Interior, alpha);
    // At X_0 = 1/4 both regions have the same scale, so their lines must share a merge key.
    let outer = if alpha == beta {
        (Scale::Interior, beta)
    } else {
        (Scale::Exterior, beta)
    };
    let int = Rational::from_integer;

    sink.emit(&FAMILIES[0], 0, int(1), inner, 1)?;
    sink.emit(&FAMILIES[1], 0, int(2), outer, 2)?;
    sink.emit(&FAMILIES[2], 1, int(outside), outer, 2)?;
    sink.emit(&FAMILIES[3], 1, int(outside), outer, outside - 2)?;
    sink.emit(&FAMILIES[4], 1, int(z1), inner, z1)?;

    // Families 8 and 10 hold the lowest level-n eigenvalue.
    let lowest_scale =
        (outside as f64 / big_n as f64 * beta / 2.0).min(z1 as f64 / (2 * big_n) as f64 * alpha);
    let mut i_n = big_n;
    for n in 2.. {
        i_n = i_n.checked_mul(big_n).ok_or(Error::Overflow("I_n"))?;
        let floor = PI * i_n as f64 * lowest_scale;
        if floor * floor > q.lambda_max() {
            break;
        }
        let mult = level_multiplicities(cfg, n)?;
        let r_base = Rational::new(i_n * outside, big_n);
        let q_base = Rational::new(i_n * z1, big_n);
        sink.emit(&FAMILIES[5], n, r_base, outer, mult[0])?;
        sink.emit(&FAMILIES[6], n, r_base, outer, mult[1])?;
        sink.emit(&FAMILIES[7], n, r_base / 2, outer, mult[2])?;
        sink.emit(&FAMILIES[8], n, q_base, inner, mult[3])?;
        sink.emit(&FAMILIES[9], n, q_base / 2, inner, mult[4])?;
    }
    Ok(sink.finish(q.policy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{MergePolicy, SpectrumQuery};

    #[test]
    fn lowest_line_at_natural_position() {
        let cfg = PlateConfig::new(4, 1, 0.25).unwrap();
        let per_family =
            plates_spectrum(&cfg, &SpectrumQuery::new(50.0, MergePolicy::PerFamily).unwrap()).unwrap();
        let two = per_family
            .iter()
            .find(|l| l.sources[0].family == "plates-2")
            .unwrap();
        assert!((two.lambda - 4.0 * PI * PI).abs() < 1e-12);
        assert_eq!(two.multiplicity, 2);
        // Equal region scales at X_0 = 1/4: families 1, 2 and 3 all land on 4 pi^2.
        let lines = plates_spectrum(&cfg, &SpectrumQuery::merged(50.0).unwrap()).unwrap();
        assert!((lines[0].lambda - 4.0 * PI * PI).abs() < 1e-12);
        assert_eq!(lines[0].multiplicity, 5);
        assert_eq!(lines.len(), 1);
    }

    #[test]
    fn interior_family_scales_with_separation() {
        for x0 in [0.1, 0.2, 0.35] {
            let cfg = PlateConfig::new(5, 2, x0).unwrap();
            let lines =
                plates_spectrum(&cfg, &SpectrumQuery::new(2000.0, MergePolicy::PerFamily).unwrap()).unwrap();
            for l in lines.iter().filter(|l| l.sources[0].family == "plates-1") {
                let k = l.sources[0].k as f64;
                let scaled = l.lambda * (2.0 * x0) * (2.0 * x0);
                assert!((scaled - (k * PI) * (k * PI)).abs() < 1e-9 * scaled);
            }
        }
    }

    #[test]
    fn multiplicities_nonnegative() {
        for (n_big, z) in [(3, 0), (4, 1), (5, 0), (5, 2), (6, 1), (7, 4), (9, 2)] {
            let cfg = PlateConfig::new(n_big, z, 0.2).unwrap();
            for n in 2..=8 {
                assert!(level_multiplicities(&cfg, n).unwrap().iter().all(|&m| m >= 0));
            }
        }
    }
}
