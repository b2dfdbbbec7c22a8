//! Spectrum of the infinite square well with walls at `x = 1/4` and `x = 3/4`.
//!
//! Families 4 to 10 carry case-split multiplicities guarded by where the wall column `w_n` falls
//! among the loop sets and crosses of `F_n`. Every guard is evaluated in exact rational arithmetic
//! for all `1 <= m <= I_{n-1}`; the first satisfied case in listed order wins, and disagreeing
//! overlaps are reported as diagnostics.

use num_rational::Ratio;
use num_traits::Zero;

use super::free::contributing_levels;
use super::{Diagnostic, FamilyDescriptor, LineSink, ModeType, Scale, Spectrum, SpectrumQuery};
use crate::error::Result;
use crate::sequence::JSequence;
use crate::well::{well_geometry, WellGeometry};
use crate::Rational;

const fn family(
    id: &'static str,
    min_level: usize,
    max_level: Option<usize>,
    eigenvalue: &'static str,
    multiplicity: &'static str,
) -> FamilyDescriptor {
    FamilyDescriptor {
        id,
        mode: ModeType::Positive,
        min_level,
        max_level,
        eigenvalue,
        multiplicity,
    }
}

pub const FAMILIES: [FamilyDescriptor; 10] = [
    family("well-1", 0, Some(0), "4 pi^2 k^2", "1"),
    family("well-2", 1, Some(1), "pi^2 k^2 / d_1^2", "2 if j_1 in {2, 3}"),
    family("well-3", 1, Some(1), "9 pi^2 k^2", "1 if j_1 = 3"),
    family(
        "well-4",
        1,
        None,
        "pi^2 k^2 / d_n^2",
        "2^n, loop-set guard, d_n != 0",
    ),
    family("well-5", 1, None, "pi^2 k^2 I_n^2", "interior loops"),
    family(
        "well-6",
        2,
        None,
        "pi^2 k^2 / d_n^2",
        "2^(n-1), cross guard, d_n != 0",
    ),
    family("well-7", 2, None, "pi^2 k^2 I_n^2", "2^(n-1), half-cross guard"),
    family(
        "well-8",
        2,
        None,
        "pi^2 k^2 / (d_n + 1/I_n)^2",
        "2^(n-1), split-cross guard",
    ),
    family("well-9", 2, None, "pi^2 k^2 I_n^2", "twice the interior crosses"),
    family("well-10", 2, None, "pi^2 k^2 I_n^2 / 4", "interior crosses"),
];

/// Interval tests on `w_n` with integer endpoints.
struct Guards(Rational);

impl Guards {
    /// `a < w < b`
    fn open(&self, a: i128, b: i128) -> bool {
        Ratio::from_integer(a) < self.0 && self.0 < Ratio::from_integer(b)
    }
    /// `a <= w <= b`
    fn closed(&self, a: i128, b: i128) -> bool {
        Ratio::from_integer(a) <= self.0 && self.0 <= Ratio::from_integer(b)
    }
    /// `a < w <= b`
    fn half_open(&self, a: i128, b: i128) -> bool {
        Ratio::from_integer(a) < self.0 && self.0 <= Ratio::from_integer(b)
    }
}

type Case<'a> = (
    &'a str,
    Box<dyn Fn(&Guards, i128) -> bool + 'a>,
    Box<dyn Fn(i128) -> i128 + 'a>,
);

/// Multiplicity of a case-split family at one level: the first satisfied `(case, m)` in order.
fn case_split(
    fam: &FamilyDescriptor,
    g: &WellGeometry,
    cases: &[Case<'_>],
    diagnostics: &mut Vec<Diagnostic>,
) -> i128 {
    let guards = Guards(g.w);
    let mut hits: Vec<(&str, i128, i128)> = Vec::new();
    for (name, guard, value) in cases {
        for m in 1..=g.i_prev as i128 {
            if guard(&guards, m) {
                hits.push((name, m, value(m)));
            }
        }
    }
    let Some(&(_, _, first)) = hits.first() else {
        return 0;
    };
    if hits.iter().any(|&(_, _, v)| v != first) {
        let detail = hits
            .iter()
            .map(|(c, m, v)| format!("{c}(m={m})={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        diagnostics.push(Diagnostic {
            family: fam.id.into(),
            level: g.level,
            message: format!("overlapping guards disagree at w_n = {}: {detail}", g.w),
        });
    }
    first
}

pub fn square_well_spectrum(seq: &JSequence, q: &SpectrumQuery) -> Result<Spectrum> {
    let mut sink = LineSink::new(q);
    let mut diagnostics = Vec::new();
    let unit = (Scale::Unit, 1.0);
    let int = Rational::from_integer;

    sink.emit(&FAMILIES[0], 0, int(2), unit, 1)?;

    for (n, j, i_prev, i_n) in contributing_levels(seq, q.lambda_max())? {
        let g = well_geometry(seq, n)?;
        let two = |e: usize| 1i128 << e;
        let d = g.d;
        let inv_d = (!d.is_zero()).then(|| d.recip());

        if n == 1 {
            let j1 = j;
            if j1 == 2 || j1 == 3 {
                let inv_d1 = inv_d.expect("d_1 > 0 whenever j_1 is 2 or 3");
                sink.emit(&FAMILIES[1], 1, inv_d1, unit, 2)?;
            }
            if j1 == 3 {
                sink.emit(&FAMILIES[2], 1, int(3), unit, 1)?;
            }
        }

        let all_loops = two(n - 1) * (j - 2) * i_prev;
        let cases4: Vec<Case> = vec![(
            "loop-set",
            Box::new(|gd: &Guards, m| gd.open((m - 1) * j + 1, m * j - 1)),
            Box::new(|_| two(n)),
        )];
        let cases5: Vec<Case> = vec![
            (
                "loop-set",
                Box::new(|gd: &Guards, m| gd.closed((m - 1) * j + 1, m * j - 1)),
                Box::new(|m| all_loops - two(n) * (1 + g.ceil_w() - 2 * m)),
            ),
            (
                "cross",
                Box::new(|gd: &Guards, m| gd.closed(m * j - 1, m * j + 1)),
                Box::new(|m| all_loops - m * two(n) * (j - 2)),
            ),
        ];
        if let Some(inv_d) = inv_d {
            let m4 = case_split(&FAMILIES[3], &g, &cases4, &mut diagnostics);
            sink.emit(&FAMILIES[3], n, inv_d, unit, m4)?;
        }
        let m5 = case_split(&FAMILIES[4], &g, &cases5, &mut diagnostics);
        sink.emit(&FAMILIES[4], n, int(i_n), unit, m5)?;

        if n < 2 {
            continue;
        }
        let crosses = two(n - 2) * (i_prev - 1);
        let cases6: Vec<Case> = vec![(
            "cross",
            Box::new(|gd: &Guards, m| gd.open(m * j - 1, m * j + 1)),
            Box::new(|_| two(n - 1)),
        )];
        let cases7: Vec<Case> = vec![(
            "half-cross",
            Box::new(|gd: &Guards, m| gd.half_open(m * j - 1, m * j)),
            Box::new(|_| two(n - 1)),
        )];
        let cases8: Vec<Case> = vec![(
            "split-cross",
            Box::new(|gd: &Guards, m| gd.open(m * j - 1, m * j)),
            Box::new(|_| two(n - 1)),
        )];
        let cases9: Vec<Case> = vec![
            (
                "loop-set",
                Box::new(|gd: &Guards, m| gd.closed((m - 1) * j + 1, m * j - 1)),
                Box::new(|m| 2 * crosses - (m - 1) * two(n)),
            ),
            (
                "cross",
                Box::new(|gd: &Guards, m| gd.half_open(m * j - 1, m * j + 1)),
                Box::new(|m| 2 * crosses - m * two(n)),
            ),
        ];
        let cases10: Vec<Case> = vec![
            (
                "loop-set",
                Box::new(|gd: &Guards, m| gd.closed((m - 1) * j + 1, m * j - 1)),
                Box::new(|m| crosses - (m - 1) * two(n - 1)),
            ),
            (
                "cross",
                Box::new(|gd: &Guards, m| gd.half_open(m * j - 1, m * j + 1)),
                Box::new(|m| crosses - m * two(n - 1)),
            ),
        ];
        if let Some(inv_d) = inv_d {
            let m6 = case_split(&FAMILIES[5], &g, &cases6, &mut diagnostics);
            sink.emit(&FAMILIES[5], n, inv_d, unit, m6)?;
        }
        let m7 = case_split(&FAMILIES[6], &g, &cases7, &mut diagnostics);
        sink.emit(&FAMILIES[6], n, int(i_n), unit, m7)?;
        let split = (d + Rational::new(1, i_n)).recip();
        let m8 = case_split(&FAMILIES[7], &g, &cases8, &mut diagnostics);
        sink.emit(&FAMILIES[7], n, split, unit, m8)?;
        let m9 = case_split(&FAMILIES[8], &g, &cases9, &mut diagnostics);
        sink.emit(&FAMILIES[8], n, int(i_n), unit, m9)?;
        let m10 = case_split(&FAMILIES[9], &g, &cases10, &mut diagnostics);
        sink.emit(&FAMILIES[9], n, Rational::new(i_n, 2), unit, m10)?;
    }
    Ok(Spectrum {
        lines: sink.finish(q.policy()),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{MergePolicy, SpectrumQuery};
    use std::f64::consts::PI;

    fn two_three() -> JSequence {
        JSequence::periodic(vec![2, 3]).unwrap()
    }

    #[test]
    fn table_lines_below_160() {
        let s = square_well_spectrum(&two_three(), &SpectrumQuery::merged(160.0).unwrap()).unwrap();
        let got: Vec<(f64, u64)> = s
            .lines
            .iter()
            .map(|l| (l.lambda / (PI * PI), l.multiplicity))
            .collect();
        assert_eq!(got, vec![(4.0, 1), (9.0, 1), (16.0, 3)]);
        assert!(s.diagnostics.is_empty());
    }

    #[test]
    fn family_one_alone_below_160() {
        let s = square_well_spectrum(
            &two_three(),
            &SpectrumQuery::new(160.0, MergePolicy::PerFamily).unwrap(),
        )
        .unwrap();
        let ks: Vec<u64> = s
            .lines
            .iter()
            .filter(|l| l.sources[0].family == "well-1")
            .map(|l| l.sources[0].k)
            .collect();
        assert_eq!(ks, vec![1, 2]);
        let two = s.lines.iter().find(|l| l.sources[0].family == "well-2").unwrap();
        assert_eq!((two.multiplicity, two.lambda / (PI * PI)), (2, 16.0));
    }

    #[test]
    fn nine_pi_squared_comes_from_half_cross_scale() {
        let s = square_well_spectrum(
            &two_three(),
            &SpectrumQuery::new(100.0, MergePolicy::PerFamily).unwrap(),
        )
        .unwrap();
        let nine: Vec<_> = s
            .lines
            .iter()
            .filter(|l| (l.lambda / (PI * PI) - 9.0).abs() < 1e-9)
            .collect();
        assert_eq!(nine.len(), 1);
        assert_eq!(nine[0].sources[0].family, "well-10");
        assert_eq!(nine[0].sources[0].n, 2);
    }
}
