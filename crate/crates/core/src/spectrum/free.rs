//! Spectrum of the free Laplacian (Kirchhoff conditions everywhere).

use std::f64::consts::PI;

use super::{FamilyDescriptor, LineSink, ModeType, Scale, SpectralLine, SpectrumQuery};
use crate::error::Result;
use crate::sequence::JSequence;
use crate::Rational;

pub const FAMILIES: [FamilyDescriptor; 5] = [
    FamilyDescriptor {
        id: "free-1",
        mode: ModeType::NonNegative,
        min_level: 0,
        max_level: Some(0),
        eigenvalue: "pi^2 k^2",
        multiplicity: "1",
    },
    FamilyDescriptor {
        id: "free-2",
        mode: ModeType::HalfInteger,
        min_level: 1,
        max_level: None,
        eigenvalue: "pi^2 (k + 1/2)^2 I_n^2",
        multiplicity: "2^n",
    },
    FamilyDescriptor {
        id: "free-3",
        mode: ModeType::Positive,
        min_level: 1,
        max_level: None,
        eigenvalue: "pi^2 k^2 I_n^2",
        multiplicity: "2^(n-1) (j_n - 2) I_(n-1)",
    },
    FamilyDescriptor {
        id: "free-4",
        mode: ModeType::Positive,
        min_level: 2,
        max_level: None,
        eigenvalue: "pi^2 k^2 I_n^2",
        multiplicity: "2^(n-1) (I_(n-1) - 1)",
    },
    FamilyDescriptor {
        id: "free-5",
        mode: ModeType::Positive,
        min_level: 2,
        max_level: None,
        eigenvalue: "pi^2 k^2 I_n^2 / 4",
        multiplicity: "2^(n-2) (I_(n-1) - 1)",
    },
];

/// Walks the levels `n >= 1` whose lowest eigenvalue `pi^2 I_n^2 / 4` can lie below `lambda_max`,
/// yielding `(n, j_n, I_{n-1}, I_n)`.
///
/// `j_n` is only requested once `I_n >= 2 I_{n-1}` no longer rules the level out, so explicit
/// prefixes that are long enough for the ceiling never error.
pub(crate) fn contributing_levels(
    seq: &JSequence,
    lambda_max: f64,
) -> Result<Vec<(usize, i128, i128, i128)>> {
    let floor = |i: i128| PI * PI * (i as f64) * (i as f64) / 4.0;
    let mut out = Vec::new();
    let mut i_prev: i128 = 1;
    for n in 1.. {
        if floor(2 * i_prev) > lambda_max {
            break;
        }
        let j = seq.j(n)? as i128;
        let i_n = i_prev
            .checked_mul(j)
            .ok_or(crate::error::Error::Overflow("I_n"))?;
        if floor(i_n) > lambda_max {
            break;
        }
        out.push((n, j, i_prev, i_n));
        i_prev = i_n;
    }
    Ok(out)
}

pub fn free_spectrum(seq: &JSequence, q: &SpectrumQuery) -> Result<Vec<SpectralLine>> {
    let mut sink = LineSink::new(q);
    let unit = (Scale::Unit, 1.0);
    let int = Rational::from_integer;
    sink.emit(&FAMILIES[0], 0, int(1), unit, 1)?;
    for (n, j, i_prev, i_n) in contributing_levels(seq, q.lambda_max())? {
        let two = |e: usize| 1i128 << e;
        sink.emit(&FAMILIES[1], n, int(i_n), unit, two(n))?;
        sink.emit(&FAMILIES[2], n, int(i_n), unit, two(n - 1) * (j - 2) * i_prev)?;
        if n >= 2 {
            sink.emit(&FAMILIES[3], n, int(i_n), unit, two(n - 1) * (i_prev - 1))?;
            sink.emit(
                &FAMILIES[4],
                n,
                Rational::new(i_n, 2),
                unit,
                two(n - 2) * (i_prev - 1),
            )?;
        }
    }
    Ok(sink.finish(q.policy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{MergePolicy, SpectrumQuery};

    fn lines(seq: &JSequence, lmax: f64) -> Vec<(f64, u64)> {
        free_spectrum(seq, &SpectrumQuery::merged(lmax).unwrap())
            .unwrap()
            .iter()
            .map(|l| (l.lambda / (PI * PI), l.multiplicity))
            .collect()
    }

    #[test]
    fn constant_two_low_lines() {
        let two = JSequence::constant(2).unwrap();
        assert_eq!(lines(&two, 10.0), vec![(0.0, 1), (1.0, 3)]);
        assert_eq!(lines(&two, 1.0), vec![(0.0, 1)]);
    }

    #[test]
    fn constant_three_has_nine_pi_squared() {
        let three = JSequence::constant(3).unwrap();
        let l = free_spectrum(
            &three,
            &SpectrumQuery::new(100.0, MergePolicy::PerFamily).unwrap(),
        )
        .unwrap();
        let nine = l.iter().find(|l| l.sources[0].family == "free-3").unwrap();
        assert!((nine.lambda - 9.0 * PI * PI).abs() < 1e-12);
        assert_eq!(nine.multiplicity, 1);
        assert_eq!((nine.sources[0].n, nine.sources[0].k), (1, 1));
    }

    #[test]
    fn explicit_prefix_only_needs_contributing_levels() {
        // Any I_1 >= 2 puts level 1 above 9, so no j is read; a ceiling of 50 needs j_2.
        let seq = JSequence::explicit(vec![2]).unwrap();
        assert!(free_spectrum(&seq, &SpectrumQuery::merged(9.0).unwrap()).is_ok());
        assert!(free_spectrum(&seq, &SpectrumQuery::merged(50.0).unwrap()).is_err());
    }
}
