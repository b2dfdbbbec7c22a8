//! Eigenvectors sampled as functions on the graph.

use serde::Serialize;

use super::discretize::DiscretizedOperator;
use super::eigen::EigenResult;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    pub x: f64,
    pub row: String,
    pub value: f64,
}

/// Node values `u = y / sqrt(m)` of eigenvector `index`, so that `sum m u^2 = 1`.
///
/// The sign is fixed by making the entry of largest magnitude positive.
pub fn eigenfunction_trace(
    op: &DiscretizedOperator,
    result: &EigenResult,
    index: usize,
) -> Result<Vec<TracePoint>> {
    let vectors = result.eigenvectors.as_ref().ok_or(Error::NoEigenvectors)?;
    let y = vectors.get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: vectors.len(),
    })?;
    let mut values: Vec<f64> = y.iter().zip(op.mass()).map(|(v, m)| v / m.sqrt()).collect();
    let peak = values
        .iter()
        .copied()
        .fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
    if peak < 0.0 {
        values.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(op
        .nodes()
        .iter()
        .enumerate()
        .zip(values)
        .map(|((i, n), value)| TracePoint {
            x: n.x,
            row: op.row_label(i).to_string(),
            value,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::numeric::{discretize, solve_lowest, Potential};
    use crate::sequence::JSequence;

    #[test]
    fn free_ground_state_is_flat_and_normalized() {
        let g = build_graph(&JSequence::constant(3).unwrap(), 2, None).unwrap();
        let op = discretize(&g, 5, &Potential::free()).unwrap();
        let r = solve_lowest(&op, 2).unwrap();
        let t = eigenfunction_trace(&op, &r, 0).unwrap();
        let max = t.iter().map(|p| p.value).fold(f64::MIN, f64::max);
        let min = t.iter().map(|p| p.value).fold(f64::MAX, f64::min);
        assert!(min > 0.0);
        assert!((max - min) / max < 1e-8);
        let l2: f64 = t.iter().zip(op.mass()).map(|(p, m)| m * p.value * p.value).sum();
        assert!((l2 - 1.0).abs() < 1e-10);
        assert!(matches!(
            eigenfunction_trace(&op, &r, 2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }
}
