//! Shape decomposition of `F_n` into V's, loops and crosses, with region splits.
//!
//! The brute-force decomposition cuts every vertex created at the top level `n` into a left and a
//! right half and takes connected components of the cells; the closed forms count the same shapes
//! from `j_n` and `I_{n-1}` alone.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{QuantumGraph, RowLabel};
use crate::plates::PlateConfig;
use crate::sequence::{level_products, JSequence};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    V,
    Loop,
    Cross,
    HalfCross,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub kind: ShapeKind,
    /// Column interval `[a, b]`.
    pub columns: (u64, u64),
    /// Row of the lowest-numbered constituent cell.
    pub row: RowLabel,
    pub edges: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union_all(&mut self, items: &[usize]) {
        if let Some((&first, rest)) = items.split_first() {
            let root = self.find(first);
            for &e in rest {
                let r = self.find(e);
                self.0[r] = root;
            }
        }
    }
}

pub(crate) fn decompose(g: &QuantumGraph) -> Vec<Shape> {
    let n = g.level();
    if n == 0 {
        return Vec::new();
    }
    let mut uf = UnionFind((0..g.edges().len()).collect());
    for (v, (left, right)) in g.incidence().iter().enumerate() {
        if g.vertices()[v].level == n {
            uf.union_all(left);
            uf.union_all(right);
        } else {
            let all: Vec<usize> = left.iter().chain(right).copied().collect();
            uf.union_all(&all);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in 0..g.edges().len() {
        let root = uf.find(e);
        groups.entry(root).or_default().push(e);
    }
    let mut shapes: Vec<Shape> = groups.into_values().map(|es| classify(g, es)).collect();
    shapes.sort_by_key(|s| s.edges[0]);
    shapes
}

fn classify(g: &QuantumGraph, mut edges: Vec<usize>) -> Shape {
    edges.sort_unstable();
    let cells: Vec<_> = edges.iter().map(|&e| &g.edges()[e]).collect();
    let a = cells.iter().map(|e| e.column).min().unwrap();
    let b = cells.iter().map(|e| e.column).max().unwrap() + 1;
    let kind = match (cells.len(), b - a) {
        (2, 1) if cells[0].tail == cells[1].tail && cells[0].head == cells[1].head => ShapeKind::Loop,
        (2, 1) if cells[0].tail == cells[1].tail || cells[0].head == cells[1].head => ShapeKind::V,
        (8, 2) => ShapeKind::Cross,
        (len, width) => panic!(
            "F_{} decomposes into an unexpected component of {len} cells over {width} columns",
            g.level()
        ),
    };
    Shape {
        kind,
        columns: (a, b),
        row: cells[0].row,
        edges,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub v: u64,
    pub loops: u64,
    pub crosses: u64,
}

impl KindCounts {
    /// Cells covered: a V or loop holds 2 cells, a cross 8.
    pub fn cells(&self) -> u64 {
        2 * self.v + 2 * self.loops + 8 * self.crosses
    }

    fn add(&mut self, kind: ShapeKind) {
        match kind {
            ShapeKind::V => self.v += 1,
            ShapeKind::Loop => self.loops += 1,
            ShapeKind::Cross => self.crosses += 1,
            ShapeKind::HalfCross => {}
        }
    }
}

/// Where a census splits shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Walls at `x = 1/4` and `x = 3/4`.
    SquareWell,
    /// Walls at the plate columns.
    Plates(PlateConfig),
}

impl Region {
    /// Wall positions in column units of `F_n`.
    pub fn walls(&self, i_n: u128) -> (Rational, Rational) {
        let i = i_n as i128;
        match self {
            Region::SquareWell => (Ratio::new(i, 4), Ratio::new(3 * i, 4)),
            Region::Plates(cfg) => {
                let (c1, c2) = cfg.plate_columns();
                let n = cfg.n() as i128;
                (Ratio::new(c1 as i128 * i, n), Ratio::new(c2 as i128 * i, n))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSplit {
    pub interior: KindCounts,
    pub exterior: KindCounts,
    pub straddling: KindCounts,
    /// Straddling crosses whose center lies inside or on a wall.
    pub interior_half_crosses: u64,
    /// Straddling crosses whose center lies outside or on a wall.
    pub exterior_half_crosses: u64,
    pub half_crosses: Vec<Shape>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeCensus {
    pub level: usize,
    pub counts: KindCounts,
    pub split: Option<RegionSplit>,
}

pub fn shape_census(g: &QuantumGraph, region: Option<&Region>) -> ShapeCensus {
    let mut counts = KindCounts::default();
    for s in g.shapes() {
        counts.add(s.kind);
    }
    let split = region.map(|r| split_by_region(g, r));
    ShapeCensus {
        level: g.level(),
        counts,
        split,
    }
}

fn split_by_region(g: &QuantumGraph, region: &Region) -> RegionSplit {
    let (lo, hi) = region.walls(g.products().get(g.level()));
    let mut split = RegionSplit {
        interior: KindCounts::default(),
        exterior: KindCounts::default(),
        straddling: KindCounts::default(),
        interior_half_crosses: 0,
        exterior_half_crosses: 0,
        half_crosses: Vec::new(),
    };
    let col = |k: u64| Ratio::from_integer(k as i128);
    for s in g.shapes() {
        let (a, b) = (col(s.columns.0), col(s.columns.1));
        if a >= lo && b <= hi {
            split.interior.add(s.kind);
        } else if b <= lo || a >= hi {
            split.exterior.add(s.kind);
        } else {
            split.straddling.add(s.kind);
            if s.kind != ShapeKind::Cross {
                continue;
            }
            let center = col(s.columns.0 + 1);
            let half = |column: u64| Shape {
                kind: ShapeKind::HalfCross,
                columns: (column, column + 1),
                row: s.row,
                edges: s
                    .edges
                    .iter()
                    .copied()
                    .filter(|&e| g.edges()[e].column == column)
                    .collect(),
            };
            // The wall cuts the left or the right half; `inner`/`outer` name the column
            // on each side of the center.
            let (inner, outer) = if a < lo && lo < b {
                (s.columns.0 + 1, s.columns.0)
            } else {
                (s.columns.0, s.columns.0 + 1)
            };
            if center >= lo && center <= hi {
                split.interior_half_crosses += 1;
                split.half_crosses.push(half(inner));
            }
            if center <= lo || center >= hi {
                split.exterior_half_crosses += 1;
                split.half_crosses.push(half(outer));
            }
        }
    }
    split
}

/// `V = 2^n`, loops `2^{n-1}(j_n - 2)I_{n-1}`, crosses `2^{n-2}(I_{n-1} - 1)`.
pub fn closed_form_census(seq: &JSequence, n: usize) -> Result<KindCounts> {
    if n == 0 {
        return Ok(KindCounts::default());
    }
    let p = level_products(seq, n)?;
    let (i_prev, j) = (p.get(n - 1) as u64, seq.j(n)?);
    let two = |e: usize| 1u64 << e;
    Ok(KindCounts {
        v: two(n),
        loops: two(n - 1) * (j - 2) * i_prev,
        crosses: if n >= 2 { two(n - 2) * (i_prev - 1) } else { 0 },
    })
}

/// Closed-form counts for a plate configuration, with half-crosses counted as halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlateRegionCounts {
    pub interior_cells: u64,
    pub interior_loops: u64,
    pub exterior_loops: u64,
    pub exterior_v: u64,
    /// Twice the interior cross count, so that half-crosses stay integral.
    pub interior_crosses_x2: u64,
    pub exterior_crosses_x2: u64,
    pub plate_crosses: u64,
}

pub fn plate_region_counts(cfg: &PlateConfig, n: usize) -> PlateRegionCounts {
    assert!(n >= 1);
    let (big_n, z) = (cfg.n(), cfg.z());
    let two = |e: usize| 1u64 << e;
    let inside = z + 1;
    let outside = big_n - z - 1;
    let interior_cells = inside * two(n) * big_n.pow(n as u32 - 1);
    if n == 1 {
        return PlateRegionCounts {
            interior_cells,
            interior_loops: inside,
            exterior_loops: outside - 2,
            exterior_v: 2,
            interior_crosses_x2: 0,
            exterior_crosses_x2: 0,
            plate_crosses: 0,
        };
    }
    let np = big_n.pow(n as u32 - 2);
    PlateRegionCounts {
        interior_cells,
        interior_loops: inside * two(n - 1) * np * (big_n - 2),
        exterior_loops: outside * two(n - 1) * np * (big_n - 2),
        exterior_v: two(n),
        interior_crosses_x2: 2 * inside * two(n - 2) * np,
        exterior_crosses_x2: 2 * two(n - 2) * (outside * np - 1),
        plate_crosses: two(n - 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColumnSpan {
    pub kind: ShapeKind,
    /// Loop-set or cross index; `None` for V's.
    pub m: Option<u64>,
    pub a: u64,
    pub b: u64,
}

/// Column intervals of the V's, the loop sets and the crosses of `F_n`, left to right.
///
/// Loop sets are empty (`a == b`) when `j_n = 2`.
pub fn column_boundaries(seq: &JSequence, n: usize) -> Result<Vec<ColumnSpan>> {
    assert!(n >= 1, "column boundaries need n >= 1");
    let p = level_products(seq, n)?;
    let (i_n, i_prev, j) = (p.get(n) as u64, p.get(n - 1) as u64, seq.j(n)?);
    let mut spans = vec![ColumnSpan {
        kind: ShapeKind::V,
        m: None,
        a: 0,
        b: 1,
    }];
    for m in 1..=i_prev {
        spans.push(ColumnSpan {
            kind: ShapeKind::Loop,
            m: Some(m),
            a: (m - 1) * j + 1,
            b: m * j - 1,
        });
        if m < i_prev {
            spans.push(ColumnSpan {
                kind: ShapeKind::Cross,
                m: Some(m),
                a: m * j - 1,
                b: m * j + 1,
            });
        }
    }
    spans.push(ColumnSpan {
        kind: ShapeKind::V,
        m: None,
        a: i_n - 1,
        b: i_n,
    });
    Ok(spans)
}
