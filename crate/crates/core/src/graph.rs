//! Explicit `F_n` quantum-graph approximations of a Laakso space.
//!
//! `F_n` has `2^n` rows of `I_n` cells each. A row is the binary string `w_1 .. w_n` recording
//! which copy was taken at every level. Cell `c` of row `w` spans columns `[c, c + 1]`. At a column
//! first created at level `i`, the rows `w` and `w` with bit `i` flipped share one vertex, so
//! every interior vertex has degree 4 and the `2^n` vertices at `x = 0` and `x = 1` have degree 1.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::plates::PlateConfig;
use crate::sequence::{level_products, JSequence, LevelProducts};
use crate::shapes::{decompose, Shape};
use crate::Rational;

const MAX_EDGES: u128 = 1 << 28;

/// The copy choices `w_1 .. w_len`; bit `i - 1` holds `w_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowLabel {
    bits: u64,
    len: u8,
}

impl RowLabel {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len < 64);
        debug_assert!(len == 63 || bits < (1u64 << len));
        Self { bits, len: len as u8 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `w_level`, 1-based.
    pub fn bit(&self, level: usize) -> bool {
        self.bits >> (level - 1) & 1 == 1
    }

    pub fn flipped(&self, level: usize) -> Self {
        Self::new(self.bits ^ (1 << (level - 1)), self.len())
    }
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for level in 1..=self.len() {
            f.write_str(if self.bit(level) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for RowLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: usize,
    pub column: u64,
    /// Unperturbed coordinate `column / I_n`.
    pub x: Rational,
    /// Physical coordinate; differs from `x` only when plates stretch the cells.
    pub position: f64,
    /// Level at which the column first appears; 0 for the ends `x = 0, 1`.
    pub level: usize,
    pub conducting: bool,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: usize,
    /// Left endpoint.
    pub tail: usize,
    /// Right endpoint.
    pub head: usize,
    /// Left column index.
    pub column: u64,
    pub row: RowLabel,
    pub length: f64,
}

#[derive(Debug, Clone)]
pub struct QuantumGraph {
    level: usize,
    products: LevelProducts,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    shapes: Vec<Shape>,
    plates: Option<PlateConfig>,
    /// First vertex id of every column.
    column_offsets: Vec<usize>,
}

impl QuantumGraph {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn products(&self) -> &LevelProducts {
        &self.products
    }

    /// `I_n`, the number of cells per row.
    pub fn columns(&self) -> u64 {
        self.products.get(self.level) as u64
    }

    pub fn rows(&self) -> u64 {
        1 << self.level
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn plates(&self) -> Option<&PlateConfig> {
        self.plates.as_ref()
    }

    /// `j_n` of the top level (`None` for `F_0`).
    pub fn top_subdivision(&self) -> Option<u64> {
        (self.level > 0).then(|| (self.products.get(self.level) / self.products.get(self.level - 1)) as u64)
    }

    /// Exact edge length; `None` once plates perturb the cells.
    pub fn exact_length(&self) -> Option<Rational> {
        self.plates
            .is_none()
            .then(|| Ratio::new(1, self.products.get(self.level) as i128))
    }

    /// Id of the cell in `column` on `row`.
    pub fn edge_id(&self, column: u64, row: RowLabel) -> usize {
        (column as usize) * (self.rows() as usize) + row.bits() as usize
    }

    /// Vertex at `column` reached by `row`.
    pub fn vertex_at(&self, column: u64, row: RowLabel) -> usize {
        let level = column_level(&self.products, self.level, column);
        self.column_offsets[column as usize] + class_index(row.bits(), level)
    }

    /// Edges incident to `v`, split into those ending at `v` and those starting at `v`.
    pub fn incidence(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut inc = vec![(Vec::new(), Vec::new()); self.vertices.len()];
        for e in &self.edges {
            inc[e.head].0.push(e.id);
            inc[e.tail].1.push(e.id);
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Level at which `column` of `F_n` first appears: 0 at the ends, else the least `i` with
/// `column` a multiple of `I_n / I_i`.
pub fn column_level(products: &LevelProducts, n: usize, column: u64) -> usize {
    let i_n = products.get(n);
    let k = column as u128;
    if k == 0 || k == i_n {
        return 0;
    }
    (1..=n)
        .find(|&i| k.is_multiple_of(i_n / products.get(i)))
        .expect("column n divides every integer")
}

/// Index of the vertex class containing row `bits` at a column of the given level.
fn class_index(bits: u64, level: usize) -> usize {
    if level == 0 {
        return bits as usize;
    }
    let low = (1u64 << (level - 1)) - 1;
    ((bits & low) | ((bits >> level) << (level - 1))) as usize
}

pub fn build_graph(seq: &JSequence, n: usize, plates: Option<&PlateConfig>) -> Result<QuantumGraph> {
    if n >= 63 {
        return Err(Error::InvalidArgument(format!("level {n} is too deep")));
    }
    let products = level_products(seq, n)?;
    let i_n = products.get(n);
    let rows = 1u128 << n;
    if rows.checked_mul(i_n).is_none_or(|e| e > MAX_EDGES) {
        return Err(Error::InvalidArgument(format!(
            "F_{n} has 2^{n} * {i_n} cells, more than the supported {MAX_EDGES}"
        )));
    }
    let i_n64 = i_n as u64;
    let rows = rows as u64;

    let stretch = match plates {
        Some(cfg) => Some(PlateStretch::new(cfg, seq, n, i_n)?),
        None => None,
    };

    let mut vertices = Vec::new();
    let mut column_offsets = Vec::with_capacity(i_n64 as usize + 1);
    for k in 0..=i_n64 {
        column_offsets.push(vertices.len());
        let level = column_level(&products, n, k);
        let classes = if level == 0 { rows } else { rows / 2 };
        let x = Ratio::new(k as i128, i_n as i128);
        let (position, conducting) = match &stretch {
            Some(s) => (s.position(k), s.is_plate(k)),
            None => (k as f64 / i_n as f64, false),
        };
        let degree = if level == 0 { 1 } else { 4 };
        for _ in 0..classes {
            vertices.push(Vertex {
                id: vertices.len(),
                column: k,
                x,
                position,
                level,
                conducting,
                degree,
            });
        }
    }

    let mut edges = Vec::with_capacity((rows * i_n64) as usize);
    for c in 0..i_n64 {
        let left_level = column_level(&products, n, c);
        let right_level = column_level(&products, n, c + 1);
        let length = match &stretch {
            Some(s) => s.position(c + 1) - s.position(c),
            None => 1.0 / i_n as f64,
        };
        for w in 0..rows {
            edges.push(Edge {
                id: edges.len(),
                tail: column_offsets[c as usize] + class_index(w, left_level),
                head: column_offsets[c as usize + 1] + class_index(w, right_level),
                column: c,
                row: RowLabel::new(w, n),
                length,
            });
        }
    }

    let mut graph = QuantumGraph {
        level: n,
        products,
        vertices,
        edges,
        shapes: Vec::new(),
        plates: plates.copied(),
        column_offsets,
    };
    graph.shapes = decompose(&graph);
    Ok(graph)
}

/// Piecewise-linear map from column index to physical position for a plate configuration.
struct PlateStretch {
    left: u64,
    right: u64,
    interior: f64,
    exterior: f64,
}

impl PlateStretch {
    fn new(cfg: &PlateConfig, seq: &JSequence, n: usize, i_n: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPlates(
                "plates sit on F_1 columns, so the level must be at least 1".into(),
            ));
        }
        if seq.j(1)? != cfg.n() {
            return Err(Error::InvalidPlates(format!(
                "plates need j_1 = N = {}, found {}",
                cfg.n(),
                seq.j(1)?
            )));
        }
        let (c1, c2) = cfg.plate_columns();
        let per_cell = (i_n / cfg.n() as u128) as u64;
        let (interior, exterior) = cfg.cell_lengths(i_n);
        Ok(Self {
            left: c1 * per_cell,
            right: c2 * per_cell,
            interior,
            exterior,
        })
    }

    fn position(&self, k: u64) -> f64 {
        if k <= self.left {
            k as f64 * self.exterior
        } else if k <= self.right {
            self.left as f64 * self.exterior + (k - self.left) as f64 * self.interior
        } else {
            self.left as f64 * self.exterior
                + (self.right - self.left) as f64 * self.interior
                + (k - self.right) as f64 * self.exterior
        }
    }

    fn is_plate(&self, k: u64) -> bool {
        k == self.left || k == self.right
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(values: Vec<u64>, n: usize) -> QuantumGraph {
        build_graph(&JSequence::explicit(values).unwrap(), n, None).unwrap()
    }

    #[test]
    fn cell_counts_and_lengths() {
        let g = graph(vec![2, 2], 2);
        assert_eq!(g.edges().len(), 16);
        assert!(g.edges().iter().all(|e| e.length == 0.25));
        assert_eq!(g.exact_length(), Some(Ratio::new(1, 4)));

        let g = graph(vec![2, 3], 2);
        assert_eq!(g.edges().len(), 24);
        assert!(g.edges().iter().all(|e| (e.length - 1.0 / 6.0).abs() < 1e-16));

        let g0 = graph(vec![2], 0);
        assert_eq!(g0.edges().len(), 1);
        assert_eq!(g0.vertices().len(), 2);
    }

    #[test]
    fn vertex_degrees_and_coordinates() {
        let g = graph(vec![2, 3, 2], 3);
        let i_n = g.columns();
        for v in g.vertices() {
            assert_eq!(v.x, Ratio::new(v.column as i128, i_n as i128));
        }
        let mut deg = vec![0; g.vertices().len()];
        for e in g.edges() {
            deg[e.tail] += 1;
            deg[e.head] += 1;
            assert_eq!(g.vertices()[e.tail].column, e.column);
            assert_eq!(g.vertices()[e.head].column, e.column + 1);
        }
        for v in g.vertices() {
            assert_eq!(deg[v.id], v.degree);
        }
        assert_eq!(
            g.vertices().iter().filter(|v| v.column == 0).count(),
            g.rows() as usize
        );
        assert!(g.is_connected());
    }

    #[test]
    fn reflections_are_automorphisms() {
        let g = graph(vec![3, 2, 2], 3);
        let i_n = g.columns();
        let full = g.rows() - 1;
        for e in g.edges() {
            // x -> 1 - x
            let mirror = &g.edges()[g.edge_id(i_n - 1 - e.column, e.row)];
            let t = &g.vertices()[e.tail];
            let mt = &g.vertices()[mirror.head];
            assert_eq!(t.column, i_n - mt.column);
            // complementing every copy choice
            let flipped = RowLabel::new(e.row.bits() ^ full, g.level());
            let f = &g.edges()[g.edge_id(e.column, flipped)];
            assert_eq!(g.vertex_at(e.column, flipped), f.tail);
        }
        // Vertices must map consistently: rows sharing a vertex still share it after reflection.
        for e1 in g.edges() {
            for e2 in g.edges().iter().filter(|e2| e2.column == e1.column) {
                let same_tail = e1.tail == e2.tail;
                let r1 = RowLabel::new(e1.row.bits() ^ full, 3);
                let r2 = RowLabel::new(e2.row.bits() ^ full, 3);
                assert_eq!(
                    same_tail,
                    g.vertex_at(e1.column, r1) == g.vertex_at(e2.column, r2)
                );
                let m1 = g.edge_id(i_n - 1 - e1.column, e1.row);
                let m2 = g.edge_id(i_n - 1 - e2.column, e2.row);
                assert_eq!(same_tail, g.edges()[m1].head == g.edges()[m2].head);
            }
        }
    }

    #[test]
    fn natural_plate_position_preserves_lengths() {
        let cfg = PlateConfig::new(4, 1, 0.25).unwrap();
        let g = build_graph(&cfg.sequence(), 1, Some(&cfg)).unwrap();
        assert!(g.edges().iter().all(|e| e.length == 0.25));
        let plates: Vec<u64> = g
            .vertices()
            .iter()
            .filter(|v| v.conducting)
            .map(|v| v.column)
            .collect();
        assert_eq!(plates, vec![1, 3]);
    }

    #[test]
    fn stretched_plates_keep_total_length() {
        let cfg = PlateConfig::new(5, 2, 0.3).unwrap();
        let g = build_graph(&cfg.sequence(), 3, Some(&cfg)).unwrap();
        let row0: f64 = g
            .edges()
            .iter()
            .filter(|e| e.row.bits() == 0)
            .map(|e| e.length)
            .sum();
        assert!((row0 - 1.0).abs() < 1e-12);
        let left = g.vertices().iter().find(|v| v.conducting).unwrap();
        assert!((left.position - 0.2).abs() < 1e-12);
        assert!(build_graph(&JSequence::constant(3).unwrap(), 2, Some(&cfg)).is_err());
    }

    #[test]
    fn row_labels_print_level_one_first() {
        let r = RowLabel::new(0b001, 3);
        assert_eq!(r.to_string(), "100");
        assert!(r.bit(1));
        assert_eq!(r.flipped(3).to_string(), "101");
    }
}
