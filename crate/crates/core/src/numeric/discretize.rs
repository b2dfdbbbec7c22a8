//! Assembly of the lumped finite-difference operator.
//!
//! Every edge carries `M` interior nodes at spacing `h_e = length_e / (M + 1)`. Vertex unknowns are
//! shared by all incident edges. With stiffness `K` (edge weights `1/h_e`) and lumped mass `m`
//! (`h_e` per interior node, `sum h_e / 2` per vertex) the operator is
//! `H = m^{-1/2} K m^{-1/2} + diag(V)`, which is symmetric and reduces to the central second
//! difference along edges and to the Kirchhoff balance at free vertices. Conducting vertices carry
//! no unknown, which imposes the Dirichlet condition.
//!
//! Unknowns are numbered by increasing `x`: the vertices of a column, then the interior nodes of
//! the cells to its right one sub-step at a time. That keeps the matrix bandwidth near `3 * 2^(n-1)`.

use std::io::{self, Write};

use serde::Serialize;

use super::potential::Potential;
use super::sparse::CsrMatrix;
use crate::error::{Error, Result};
use crate::graph::QuantumGraph;

#[derive(Debug, Clone, Serialize)]
pub struct NodeInfo {
    /// An edge containing the node; for a vertex, one of its incident edges.
    pub edge: usize,
    /// Distance from the tail of `edge`.
    pub arclength: f64,
    pub x: f64,
    /// Graph vertex id when the node is a vertex.
    pub vertex: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    matrix: CsrMatrix,
    stiffness: CsrMatrix,
    mass: Vec<f64>,
    potential: Vec<f64>,
    nodes: Vec<NodeInfo>,
    rows: Vec<String>,
    mesh: usize,
    cutoff: f64,
}

impl DiscretizedOperator {
    pub fn dimension(&self) -> usize {
        self.nodes.len()
    }

    /// The symmetric operator `H`.
    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    /// The unscaled kinetic part `K`; its rows sum to zero at nodes away from Dirichlet vertices.
    pub fn stiffness(&self) -> &CsrMatrix {
        &self.stiffness
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Potential value on the diagonal of each unknown.
    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn nodes(&self) -> &[NodeInfo] {
        &self.nodes
    }

    /// Row label of the edge each node is attributed to.
    pub fn row_label(&self, index: usize) -> &str {
        &self.rows[index]
    }

    pub fn mesh(&self) -> usize {
        self.mesh
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Whether the node's potential is a cutoff value; such nodes only carry spurious modes.
    pub fn is_pinned(&self, index: usize) -> bool {
        self.potential[index].abs() >= self.cutoff
    }

    /// Count of nodes pinned at `-cutoff`, `+cutoff`.
    pub fn pinned_counts(&self) -> (usize, usize) {
        let low = self.potential.iter().filter(|&&v| v <= -self.cutoff).count();
        let high = self.potential.iter().filter(|&&v| v >= self.cutoff).count();
        (low, high)
    }

    /// Eigenvalues not tied to cutoff nodes.
    pub fn regular_dimension(&self) -> usize {
        let (low, high) = self.pinned_counts();
        self.dimension() - low - high
    }

    pub fn write_coordinate(&self, w: impl Write) -> io::Result<()> {
        self.matrix.write_coordinate(w)
    }
}

/// Default interior points per edge: at least eight nodes per cell.
pub const DEFAULT_MESH: usize = 7;

pub fn discretize(graph: &QuantumGraph, mesh: usize, potential: &Potential) -> Result<DiscretizedOperator> {
    if mesh < 2 {
        return Err(Error::MeshTooCoarse(mesh));
    }
    for e in graph.edges() {
        if !(e.length.is_finite() && e.length > 0.0) {
            return Err(Error::DegenerateEdge {
                edge: e.id,
                length: e.length,
            });
        }
    }
    let vertices = graph.vertices();
    let edges = graph.edges();
    let steps = mesh + 1;
    let i_n = graph.columns();
    let rows_per_column = graph.rows() as usize;
    // Unperturbed coordinates are exact ratios of small integers, so dividing once keeps wall
    // nodes exactly on 1/4 and 3/4.
    let exact_x = graph.plates().is_none();
    let denom = (steps as u128 * i_n as u128) as f64;

    let mut vertex_index = vec![usize::MAX; vertices.len()];
    let mut edge_base = vec![0usize; edges.len()];
    let mut nodes = Vec::with_capacity(edges.len() * mesh + vertices.len());
    let mut labels = Vec::with_capacity(nodes.capacity());
    let mut first_edge = vec![usize::MAX; vertices.len()];
    for e in edges {
        for v in [e.tail, e.head] {
            if first_edge[v] == usize::MAX {
                first_edge[v] = e.id;
            }
        }
    }

    let mut vi = 0;
    for c in 0..=i_n {
        while vi < vertices.len() && vertices[vi].column == c {
            let v = &vertices[vi];
            if !v.conducting {
                vertex_index[vi] = nodes.len();
                let e = &edges[first_edge[vi]];
                nodes.push(NodeInfo {
                    edge: e.id,
                    arclength: if e.tail == vi { 0.0 } else { e.length },
                    x: v.position,
                    vertex: Some(vi),
                });
                labels.push(e.row.to_string());
            }
            vi += 1;
        }
        if c == i_n {
            break;
        }
        let first = c as usize * rows_per_column;
        let column_edges = &edges[first..first + rows_per_column];
        for (r, e) in column_edges.iter().enumerate() {
            edge_base[e.id] = nodes.len() + r;
        }
        for i in 1..=mesh {
            for e in column_edges {
                let h = e.length / steps as f64;
                let x = if exact_x {
                    (e.column as u128 * steps as u128 + i as u128) as f64 / denom
                } else {
                    let a = vertices[e.tail].position;
                    a + i as f64 * h
                };
                nodes.push(NodeInfo {
                    edge: e.id,
                    arclength: i as f64 * h,
                    x,
                    vertex: None,
                });
                labels.push(e.row.to_string());
            }
        }
    }
    let dim = nodes.len();
    let index_of = |e: usize, i: usize| edge_base[e] + (i - 1) * rows_per_column;

    let mut mass = vec![0.0; dim];
    let mut k_rows: Vec<Vec<(usize, f64)>> = vec![Vec::with_capacity(3); dim];
    for e in edges {
        let h = e.length / steps as f64;
        let w = 1.0 / h;
        let chain = |i: usize| -> Option<usize> {
            if i == 0 {
                Some(vertex_index[e.tail]).filter(|&k| k != usize::MAX)
            } else if i == steps {
                Some(vertex_index[e.head]).filter(|&k| k != usize::MAX)
            } else {
                Some(index_of(e.id, i))
            }
        };
        for i in 1..=mesh {
            mass[index_of(e.id, i)] += h;
        }
        for end in [chain(0), chain(steps)].into_iter().flatten() {
            mass[end] += 0.5 * h;
        }
        for i in 0..steps {
            let (p, q) = (chain(i), chain(i + 1));
            if let Some(p) = p {
                k_rows[p].push((p, w));
            }
            if let Some(q) = q {
                k_rows[q].push((q, w));
            }
            if let (Some(p), Some(q)) = (p, q) {
                k_rows[p].push((q, -w));
                k_rows[q].push((p, -w));
            }
        }
    }
    let stiffness = CsrMatrix::from_rows(k_rows);

    let potential_values: Vec<f64> = nodes.iter().map(|nd| potential.eval(nd.x)).collect();
    let scale: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    let h_rows = (0..dim)
        .map(|i| {
            stiffness
                .row(i)
                .map(|(j, v)| {
                    let mut entry = v * scale[i] * scale[j];
                    if i == j {
                        entry += potential_values[i];
                    }
                    (j, entry)
                })
                .collect()
        })
        .collect();

    Ok(DiscretizedOperator {
        matrix: CsrMatrix::from_rows(h_rows),
        stiffness,
        mass,
        potential: potential_values,
        nodes,
        rows: labels,
        mesh,
        cutoff: potential.cutoff(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::plates::PlateConfig;
    use crate::sequence::JSequence;

    #[test]
    fn sizes_and_symmetry() {
        let seq = JSequence::periodic(vec![2, 3]).unwrap();
        let g = build_graph(&seq, 2, None).unwrap();
        let op = discretize(&g, 3, &Potential::free()).unwrap();
        assert_eq!(op.dimension(), g.edges().len() * 3 + g.vertices().len());
        assert_eq!(op.matrix().asymmetry(), 0.0);
        let total: f64 = op.mass().iter().sum();
        // The 2^n rows each have unit length.
        assert!((total - 4.0).abs() < 1e-12);
        for w in op.nodes().windows(2) {
            assert!(w[0].x <= w[1].x);
        }
    }

    #[test]
    fn kinetic_rows_balance() {
        let seq = JSequence::constant(3).unwrap();
        let g = build_graph(&seq, 2, None).unwrap();
        let op = discretize(&g, 4, &Potential::free()).unwrap();
        let k = op.stiffness();
        for i in 0..op.dimension() {
            let s: f64 = k.row(i).map(|(_, v)| v).sum();
            assert!(s.abs() < 1e-9 * k.get(i, i), "row {i}: {s}");
        }
    }

    #[test]
    fn conducting_vertices_are_removed() {
        let cfg = PlateConfig::new(4, 1, 0.2).unwrap();
        let g = build_graph(&cfg.sequence(), 2, Some(&cfg)).unwrap();
        let op = discretize(&g, 3, &Potential::free()).unwrap();
        let conducting = g.vertices().iter().filter(|v| v.conducting).count();
        assert!(conducting > 0);
        assert_eq!(
            op.dimension(),
            g.edges().len() * 3 + g.vertices().len() - conducting
        );
        assert!(op
            .nodes()
            .iter()
            .all(|n| n.vertex.is_none_or(|v| !g.vertices()[v].conducting)));
        // Dirichlet rows keep a positive surplus on the diagonal.
        let k = op.stiffness();
        let surplus = (0..op.dimension())
            .filter(|&i| k.row(i).map(|(_, v)| v).sum::<f64>() > 1e-9)
            .count();
        assert!(surplus > 0);
    }

    #[test]
    fn wall_nodes_sit_on_the_well() {
        let seq = JSequence::constant(2).unwrap();
        let g = build_graph(&seq, 2, None).unwrap();
        let op = discretize(&g, 3, &Potential::square_well()).unwrap();
        let at_wall: Vec<f64> = op
            .nodes()
            .iter()
            .zip(op.potential())
            .filter(|(n, _)| n.x == 0.25 || n.x == 0.75)
            .map(|(_, &v)| v)
            .collect();
        assert!(!at_wall.is_empty());
        assert!(at_wall.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        let seq = JSequence::constant(2).unwrap();
        let g = build_graph(&seq, 1, None).unwrap();
        assert!(matches!(
            discretize(&g, 1, &Potential::free()),
            Err(Error::MeshTooCoarse(1))
        ));
    }
}
