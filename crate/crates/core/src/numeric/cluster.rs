//! Grouping of nearly equal eigenvalues into multiplicities.

use super::eigen::EigenResult;
use crate::spectrum::SpectralLine;

/// Greedy pass over ascending values: a value joins the open cluster when it lies within
/// `rel_tol * max(1, |mean|)` of the cluster mean.
pub fn cluster_values(values: &[f64], rel_tol: f64) -> Vec<SpectralLine> {
    let mut lines = Vec::new();
    let mut sum = 0.0;
    let mut count = 0u64;
    for &v in values {
        if count > 0 {
            let mean = sum / count as f64;
            if (v - mean).abs() <= rel_tol * mean.abs().max(1.0) {
                sum += v;
                count += 1;
                continue;
            }
            lines.push(line(mean, count));
        }
        sum = v;
        count = 1;
    }
    if count > 0 {
        lines.push(line(sum / count as f64, count));
    }
    lines
}

fn line(lambda: f64, multiplicity: u64) -> SpectralLine {
    SpectralLine {
        lambda,
        multiplicity,
        sources: Vec::new(),
        exact: None,
    }
}

pub fn cluster(result: &EigenResult, rel_tol: f64) -> Vec<SpectralLine> {
    cluster_values(&result.eigenvalues, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        let l = cluster_values(&[39.47, 39.49], 1e-2);
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].multiplicity, 2);
        assert!((l[0].lambda - 39.48).abs() < 1e-12);
        assert!(cluster_values(&[], 1e-2).is_empty());
        let exact = cluster_values(&[0.0, 1.0, 1.0, 1.0, 4.0], 1e-12);
        let m: Vec<u64> = exact.iter().map(|l| l.multiplicity).collect();
        assert_eq!(m, vec![1, 3, 1]);
    }

    #[test]
    fn small_values_use_absolute_floor() {
        // Near zero the tolerance is rel_tol itself.
        let l = cluster_values(&[0.0, 0.005, 0.02], 1e-2);
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].multiplicity, 2);
    }
}
