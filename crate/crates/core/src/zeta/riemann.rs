//! Riemann and half-integer Hurwitz zeta values, and the continued geometric series.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_2, B_4, ..., B_24`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// `zeta(s)` for `s` in `{-1, 0}` or `s > 1`.
///
/// The two special values are exact; the convergent range uses Euler-Maclaurin summation with an
/// absolute error far below `1e-12`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if s == -1.0 {
        Ok(-1.0 / 12.0)
    } else if s == 0.0 {
        Ok(-0.5)
    } else if s > 1.0 && s.is_finite() {
        Ok(euler_maclaurin(Complex64::new(s, 0.0)).re)
    } else {
        Err(Error::UnsupportedArgument(format!(
            "zeta({s}): only s in {{-1, 0}} or s > 1 is supported"
        )))
    }
}

/// Analytic continuation of `zeta(s)` for `Re(s) >= -10` and `|Im(s)| <= 100`, `s != 1`.
pub fn riemann_zeta_complex(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("1 (Riemann zeta)".into()));
    }
    if !(s.re >= -10.0 && s.im.abs() <= 100.0 && s.re.is_finite()) {
        return Err(Error::UnsupportedArgument(format!(
            "zeta({s}): continuation limited to Re(s) >= -10, |Im(s)| <= 100"
        )));
    }
    Ok(euler_maclaurin(s))
}

/// `sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_k B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1)`.
fn euler_maclaurin(s: Complex64) -> Complex64 {
    let big_n = 12 + s.im.abs().ceil() as u32;
    let nf = big_n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..big_n {
        sum += (-s * (n as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // term_k = B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = n_pow / nf;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        sum += rising * power * (b / factorial);
        let next = 2 * k as u32;
        rising *= (s + (next - 1) as f64) * (s + next as f64);
        factorial *= ((next + 1) * (next + 2)) as f64;
        power /= nf * nf;
    }
    sum
}

/// `sum_{k>=0} (k + 1/2)^-s`, continued through `(2^s - 1) zeta(s)`.
pub fn hurwitz_half_sum(s: f64) -> Result<f64> {
    Ok((s.exp2() - 1.0) * riemann_zeta(s)?)
}

/// Complex counterpart of [`hurwitz_half_sum`].
pub fn hurwitz_half_sum_complex(s: Complex64) -> Result<Complex64> {
    let two_s = (s * std::f64::consts::LN_2).exp();
    Ok((two_s - 1.0) * riemann_zeta_complex(s)?)
}

/// `1 / (1 - r)`, the continuation of `sum_{n>=0} r^n` for every `r != 1`.
pub fn geometric_continuation(r: f64) -> Result<f64> {
    if r == 1.0 {
        return Err(Error::Pole("ratio 1 in a geometric series".into()));
    }
    Ok(1.0 / (1.0 - r))
}

/// Complex counterpart of [`geometric_continuation`].
pub fn geometric_continuation_complex(r: Complex64) -> Result<Complex64> {
    if r == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("ratio 1 in a geometric series".into()));
    }
    Ok((Complex64::new(1.0, 0.0) - r).inv())
}
