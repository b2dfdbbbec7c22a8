//! Spectral zeta functions against direct eigenvalue sums, and the Casimir closed forms.

use std::f64::consts::PI;

use laakso_core::zeta::{
    casimir_force, casimir_report, constant_j_zeta, period2_zeta, plate_spectral_zeta, plate_zeta_energy,
    spectral_dimension, spectral_zeta_periodic, zeta_poles, ZetaMode,
};
use laakso_core::{level_products, JSequence, PlateConfig};
use num_complex::Complex64;

fn periodic(v: &[u64]) -> JSequence {
    JSequence::periodic(v.to_vec()).unwrap()
}

/// `sum g lambda^-2` over the nonzero free spectrum, levels `0..=levels`, from the family table
/// with `sum k^-4 = pi^4 / 90` and `sum (k + 1/2)^-4 = pi^4 / 6`.
fn direct_series_at_two(seq: &JSequence, levels: usize) -> f64 {
    let z4 = PI.powi(4) / 90.0;
    let h4 = PI.powi(4) / 6.0;
    let p = level_products(seq, levels).unwrap();
    let at = |scale: f64, modes: f64, mult: f64| mult * modes / (PI * scale).powi(4);
    let mut total = at(1.0, z4, 1.0);
    for n in 1..=levels {
        let i_n = p.get(n) as f64;
        let i_prev = p.get(n - 1) as f64;
        let j = seq.j(n).unwrap() as f64;
        let two = |e: usize| (e as f64).exp2();
        total += at(i_n, h4, two(n));
        total += at(i_n, z4, two(n - 1) * (j - 2.0) * i_prev);
        if n >= 2 {
            total += at(i_n, z4, two(n - 1) * (i_prev - 1.0));
            total += at(i_n / 2.0, z4, two(n - 2) * (i_prev - 1.0));
        }
    }
    total
}

#[test]
fn continuation_matches_direct_series() {
    for v in [&[2][..], &[3], &[2, 3], &[3, 2], &[4, 5, 3], &[7]] {
        let seq = periodic(v);
        let z = spectral_zeta_periodic(&seq, Complex64::new(2.0, 0.0)).unwrap();
        assert_eq!(z.mode, ZetaMode::Series);
        let direct = direct_series_at_two(&seq, 25.min(40 / v.iter().max().unwrap().ilog2() as usize));
        assert!(
            (z.value.re - direct).abs() < 1e-10 * direct,
            "{v:?}: {} vs {direct}",
            z.value.re
        );
        assert!(z.value.im.abs() < 1e-15);
    }
}

fn sample_points() -> Vec<Complex64> {
    let re = [-1.7, -0.5, 0.2, 1.3, 2.6];
    let im = [0.0, 0.37, -1.9, 4.1];
    re.iter()
        .flat_map(|&a| im.iter().map(move |&b| Complex64::new(a, b)))
        .collect()
}

#[test]
fn constant_and_period_two_reductions() {
    let points = sample_points();
    assert_eq!(points.len(), 20);
    for s in &points {
        for j in [2u64, 3, 5] {
            let general = spectral_zeta_periodic(&periodic(&[j]), *s).unwrap().value;
            let closed = constant_j_zeta(j, *s).unwrap().value;
            assert!(
                (general - closed).norm() <= 1e-12 * closed.norm().max(1.0),
                "j={j} s={s}"
            );
        }
        for (a, b) in [(2u64, 3u64), (3, 2), (4, 7)] {
            let general = spectral_zeta_periodic(&periodic(&[a, b]), *s).unwrap().value;
            let closed = period2_zeta(a, b, *s).unwrap().value;
            assert!(
                (general - closed).norm() <= 1e-12 * closed.norm().max(1.0),
                "({a},{b}) s={s}"
            );
        }
    }
}

#[test]
fn constant_two_minus_half() {
    let v = constant_j_zeta(2, Complex64::new(-0.5, 0.0)).unwrap().value;
    assert!((v.re + 5.0 * PI / 28.0).abs() < 1e-12);
}

#[test]
fn poles_annihilate_the_denominators() {
    for v in [&[2][..], &[3], &[2, 3], &[3, 5, 2]] {
        let seq = periodic(v);
        let t = v.len();
        let i_t = level_products(&seq, t).unwrap().get(t) as f64;
        let two_t = (t as f64).exp2();
        let poles = zeta_poles(&seq, -1..=1).unwrap();
        let (first, second) = poles.split_at(3);
        for p in first {
            let x = (2.0 * p * i_t.ln()).exp();
            assert!((x - two_t * i_t).norm() < 1e-10 * two_t * i_t, "{v:?} {p}");
        }
        for p in second {
            let x = (2.0 * p * i_t.ln()).exp();
            assert!((x - two_t).norm() < 1e-10 * two_t, "{v:?} {p}");
        }
        let max_re = poles.iter().map(|p| p.re).fold(f64::MIN, f64::max);
        assert!((spectral_dimension(&seq).unwrap() - 2.0 * max_re).abs() < 1e-14);
    }
}

#[test]
fn spectral_dimension_formulas() {
    for j in 2..=9u64 {
        let jf = j as f64;
        let d = spectral_dimension(&periodic(&[j])).unwrap();
        assert!((d - (2.0 * jf).ln() / jf.ln()).abs() < 1e-14);
    }
    let d = spectral_dimension(&periodic(&[2, 3])).unwrap();
    assert!((d - 24f64.ln() / 6f64.ln()).abs() < 1e-14);
}

const GOLDEN: [((u64, u64, f64), f64, f64); 3] = [
    ((4, 1, 0.2), 1.758_399_113_904_43, 2.742_157_566_137_40),
    ((5, 2, 0.3), 2.840_612_405_031_59, 6.544_984_694_978_74),
    ((6, 1, 0.15), 2.275_759_936_499_28, 2.479_569_430_840_76),
];

#[test]
fn casimir_golden_values() {
    for ((n, z, x0), zeta, force) in GOLDEN {
        let cfg = PlateConfig::new(n, z, x0).unwrap();
        let got = plate_spectral_zeta(&cfg, -0.5).unwrap();
        assert!((got - zeta).abs() < 1e-12 * zeta, "{got}");
        let energy = plate_zeta_energy(&cfg).unwrap();
        assert!((energy.total - 0.5 * zeta).abs() < 1e-12 * zeta);
        let f = casimir_force(&cfg).unwrap();
        assert!((f - force).abs() < 1e-12 * force, "{f}");
    }
}

#[test]
fn closed_form_force_is_the_energy_derivative() {
    for (n, z) in [(4, 1), (5, 0), (5, 2), (6, 1), (9, 4)] {
        for x0 in [0.07, 0.15, 0.3, 0.42] {
            let cfg = PlateConfig::new(n, z, x0).unwrap();
            let r = casimir_report(&cfg).unwrap();
            assert!(r.agreement, "({n}, {z}, {x0}): {} vs {}", r.force, r.oracle_force);
            let e = r.energy;
            let analytic = -e.a / (x0 * x0) + 2.0 * e.b / ((1.0 - 2.0 * x0) * (1.0 - 2.0 * x0));
            assert!((analytic - r.force).abs() < 1e-12 * r.force.abs().max(1.0));
        }
    }
}

#[test]
fn energy_splits_into_separation_terms() {
    let base = PlateConfig::new(6, 1, 0.15).unwrap();
    let e = plate_zeta_energy(&base).unwrap();
    for x0 in [0.05, 0.2, 0.33, 0.45] {
        let cfg = base.with_x0(x0).unwrap();
        let other = plate_zeta_energy(&cfg).unwrap();
        assert!((other.a - e.a).abs() < 1e-12 * e.a.abs());
        assert!((other.b - e.b).abs() < 1e-12 * e.b.abs().max(1e-300));
        assert!((e.at(x0) - other.total).abs() < 1e-12 * other.total.abs());
        let zeta = plate_spectral_zeta(&cfg, -0.5).unwrap();
        assert!((0.5 * zeta - other.total).abs() < 1e-12 * other.total.abs());
    }
}

#[test]
fn force_grows_as_inverse_square_separation() {
    for (n, z) in [(4, 1), (5, 2), (6, 1)] {
        let near = casimir_force(&PlateConfig::new(n, z, 1e-3).unwrap()).unwrap();
        let far = casimir_force(&PlateConfig::new(n, z, 2e-3).unwrap()).unwrap();
        let ratio = near / far;
        assert!((ratio - 4.0).abs() <= 0.02 * 4.0, "({n}, {z}): ratio {ratio}");
    }
}
