//! Spectral zeta function of periodic Laakso spaces.
//!
//! Grouping the free spectrum by level residue modulo the period `T` turns the level sums into
//! geometric series in `I_T^{-2s}`, which continue meromorphically to the whole plane.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::riemann::riemann_zeta_complex;
use crate::error::{Error, Result};
use crate::sequence::{level_products, JSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaMode {
    /// `Re(2s)` exceeds the spectral dimension; the eigenvalue series converges.
    Series,
    /// Only the continuation is defined at `s`.
    Continued,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub s: Complex64,
    pub value: Complex64,
    pub mode: ZetaMode,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `x^s` for real `x > 0`.
fn pow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// Relative test for a vanishing denominator `a - b`.
fn vanishes(a: Complex64, b: f64) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(b.abs())
}

fn period_data(seq: &JSequence) -> Result<(usize, Vec<f64>, Vec<f64>)> {
    let t = seq.require_period()?;
    let p = level_products(seq, t + 1)?;
    let products = p.entries().iter().map(|&i| i as f64).collect();
    let js = (1..=t + 1)
        .map(|i| seq.j(i).map(|j| j as f64))
        .collect::<Result<_>>()?;
    Ok((t, products, js))
}

/// The bracket multiplying `zeta_R(2s) / pi^(2s)`.
fn bracket(seq: &JSequence, s: Complex64) -> Result<Complex64> {
    let (t, i, j) = period_data(seq)?;
    let i_t = i[t];
    let two_t = (t as f64).exp2();
    let a = pow(i_t, 2.0 * s);
    if vanishes(a, i_t * two_t) || vanishes(a, two_t) {
        return Err(Error::Pole(format!("{s}")));
    }
    let g1 = a / (a - i_t * two_t);
    let g2 = a / (a - two_t);
    let four_s = pow(2.0, 2.0 * s);
    let mut total = c(0.0);
    for p in 2..=t + 1 {
        let weight = ((p - 1) as f64).exp2();
        let ip = pow(i[p], 2.0 * s);
        total += g1 * (weight * i[p - 1] * (four_s / 2.0 + j[p - 1] - 1.0)) / ip;
        total += g2 * (weight * (1.5 * four_s - 3.0)) / ip;
    }
    let j1 = j[0];
    Ok(total + (2.0 * four_s - 4.0 + j1) / pow(j1, 2.0 * s) + 1.0)
}

fn mode(seq: &JSequence, s: Complex64) -> Result<ZetaMode> {
    Ok(if 2.0 * s.re > spectral_dimension(seq)? {
        ZetaMode::Series
    } else {
        ZetaMode::Continued
    })
}

/// `zeta_L(s) = sum g lambda^-s` over the nonzero free spectrum, continued.
///
/// At `s = 1/2` the Riemann factor has a pole cancelled by a zero of the bracket; that point
/// returns [`zeta_limit_half`].
pub fn spectral_zeta_periodic(seq: &JSequence, s: Complex64) -> Result<ZetaValue> {
    let m = mode(seq, s)?;
    if s == c(0.5) {
        return Ok(ZetaValue {
            s,
            value: c(zeta_limit_half(seq)?),
            mode: m,
        });
    }
    let value = riemann_zeta_complex(2.0 * s)? / pow(PI, 2.0 * s) * bracket(seq, s)?;
    Ok(ZetaValue { s, value, mode: m })
}

/// Closed form for `j_n = j` at every level.
pub fn constant_j_zeta(j: u64, s: Complex64) -> Result<ZetaValue> {
    let seq = JSequence::constant(j)?;
    let jf = j as f64;
    let x = pow(jf, 2.0 * s);
    let u = pow(2.0, 2.0 * s);
    if vanishes(x, 2.0 * jf) || vanishes(x, 2.0) {
        return Err(Error::Pole(format!("{s}")));
    }
    let num = x * x - jf * x + 2.0 * u * x - 6.0 * x - 3.0 * u * jf + 8.0 * jf - u + 2.0;
    let bracket = num / ((x - 2.0 * jf) * (x - 2.0));
    let value = riemann_zeta_complex(2.0 * s)? / pow(PI, 2.0 * s) * bracket;
    Ok(ZetaValue {
        s,
        value,
        mode: mode(&seq, s)?,
    })
}

/// Closed form for a sequence of period 2.
pub fn period2_zeta(j1: u64, j2: u64, s: Complex64) -> Result<ZetaValue> {
    let seq = JSequence::periodic(vec![j1, j2])?;
    let (a, b) = (j1 as f64, j2 as f64);
    let i2 = a * b;
    let x2 = pow(i2, 2.0 * s);
    if vanishes(x2, 4.0 * i2) || vanishes(x2, 4.0) {
        return Err(Error::Pole(format!("{s}")));
    }
    let u = pow(2.0, 2.0 * s);
    let xa = pow(a, 2.0 * s);
    let half_u = u / 2.0;
    let bracket = (2.0 * a / (x2 - 4.0 * i2)) * (half_u + b - 1.0 + 2.0 * b * (half_u + a - 1.0) / xa)
        + ((3.0 * u - 6.0) / (x2 - 4.0)) * (1.0 + 2.0 / xa)
        + (2.0 * u - 4.0 + a) / xa
        + 1.0;
    let value = riemann_zeta_complex(2.0 * s)? / pow(PI, 2.0 * s) * bracket;
    Ok(ZetaValue {
        s,
        value,
        mode: mode(&seq, s)?,
    })
}

/// `lim_{s -> 1/2} zeta_L(s)`; the constant-2 space has a genuine pole there and is rejected.
pub fn zeta_limit_half(seq: &JSequence) -> Result<f64> {
    if seq.is_constant(2) {
        return Err(Error::Excluded("the constant j = 2 space has a pole at s = 1/2"));
    }
    let (t, i, j) = period_data(seq)?;
    let i_t = i[t];
    let two_t = (t as f64).exp2();
    let mut total = 0.0;
    for p in 2..=t + 1 {
        let w = (p as f64).exp2();
        total += w * LN_2 / (j[p - 1] * (1.0 - two_t)) - w * i[p].ln() / (1.0 - two_t)
            + w * i_t * 3.0 * LN_2 / (i[p] * (i_t - two_t));
    }
    let j1 = j[0];
    total += (t as f64 + 2.0).exp2() * i_t.ln() / (1.0 - two_t) + 8.0 * LN_2 / j1 - 2.0 * j1.ln();
    Ok(total / (2.0 * PI))
}

/// Both pole families for every `m` in `m_range`, the first family first.
pub fn zeta_poles(seq: &JSequence, m_range: std::ops::RangeInclusive<i64>) -> Result<Vec<Complex64>> {
    let (t, i, _) = period_data(seq)?;
    let i_t = i[t];
    let denom = (i_t * i_t).ln();
    let t_ln2 = t as f64 * LN_2;
    let pole = |base: f64, m: i64| Complex64::new(base, 2.0 * t as f64 * PI * m as f64) / denom;
    let mut out: Vec<Complex64> = m_range.clone().map(|m| pole(t_ln2 + i_t.ln(), m)).collect();
    out.extend(m_range.map(|m| pole(t_ln2, m)));
    Ok(out)
}

/// `ln(2^T I_T) / ln(I_T)`.
pub fn spectral_dimension(seq: &JSequence) -> Result<f64> {
    let (t, i, _) = period_data(seq)?;
    let i_t = i[t];
    Ok((t as f64 * LN_2 + i_t.ln()) / i_t.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn periodic(v: Vec<u64>) -> JSequence {
        JSequence::periodic(v).unwrap()
    }

    #[test]
    fn constant_two_at_minus_half() {
        let v = constant_j_zeta(2, c(-0.5)).unwrap().value;
        assert!((v.re + 5.0 * PI / 28.0).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
        let w = spectral_zeta_periodic(&periodic(vec![2]), c(-0.5)).unwrap();
        assert!((w.value.re + 5.0 * PI / 28.0).abs() < 1e-13);
        assert_eq!(w.mode, ZetaMode::Continued);
    }

    #[test]
    fn displayed_minus_half_formula() {
        for j in 2..=10u64 {
            let jf = j as f64;
            let expected = -PI / 12.0
                * (13.0 / 8.0 + (3.0 * jf - 2.0) / (8.0 * jf * jf - 4.0) + 9.0 / (16.0 * jf - 8.0));
            let v = constant_j_zeta(j, c(-0.5)).unwrap().value.re;
            assert!((v - expected).abs() < 1e-13, "j = {j}");
            assert!(v < 0.0);
        }
    }

    #[test]
    fn limit_half_values() {
        let cases: [(Vec<u64>, f64); 5] = [
            (vec![3], 0.238_662_447_841_0),
            (vec![4], -0.165_476_700_114_5),
            (vec![2, 3], 1.262_286_299_323_9),
            (vec![3, 2], 0.962_096_549_890_9),
            (vec![3, 5, 2], 0.133_001_225_030_2),
        ];
        for (v, expected) in cases {
            let got = zeta_limit_half(&periodic(v.clone())).unwrap();
            assert!((got - expected).abs() < 1e-12, "{v:?}: {got}");
        }
        assert!(zeta_limit_half(&periodic(vec![2])).is_err());
        assert!(zeta_limit_half(&periodic(vec![2, 2])).is_err());
        assert!(spectral_zeta_periodic(&periodic(vec![2]), c(0.5)).is_err());
    }

    #[test]
    fn poles_and_dimension() {
        let two = periodic(vec![2]);
        let p = zeta_poles(&two, 0..=0).unwrap();
        assert!((p[0] - c(1.0)).norm() < 1e-15);
        assert!((p[1] - c(0.5)).norm() < 1e-15);
        assert_eq!(spectral_dimension(&two).unwrap(), 2.0);
        assert!((spectral_dimension(&periodic(vec![3])).unwrap() - 1.630_929_753_571_457).abs() < 1e-14);
        assert!(spectral_zeta_periodic(&two, p[0]).is_err());
    }

    #[test]
    fn non_periodic_rejected() {
        let e = JSequence::explicit(vec![2, 3]).unwrap();
        assert_eq!(spectral_dimension(&e), Err(Error::NotPeriodic));
    }
}
