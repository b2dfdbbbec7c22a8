//! Square-well geometry: the wall column `w_n = I_n / 4` and the offset `d_n` of the first node
//! column inside the well, plus closed-form counts of the shapes inside it.

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::sequence::{level_products, JSequence};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WellGeometry {
    pub level: usize,
    /// Columns between `x = 0` and the wall `x = 1/4`.
    #[serde(serialize_with = "crate::serialize_ratio")]
    pub w: Rational,
    /// Distance in `x` from the wall to the nearest node column at or inside it.
    #[serde(serialize_with = "crate::serialize_ratio")]
    pub d: Rational,
    /// A node column sits exactly on the wall.
    pub wall_on_node: bool,
    /// `j_n` and `I_{n-1}`, the inputs of every case guard.
    pub j: u64,
    pub i_prev: u64,
    pub i_n: u64,
}

impl WellGeometry {
    /// `ceil(w_n)`.
    pub fn ceil_w(&self) -> i128 {
        self.w.ceil().to_integer()
    }
}

pub fn well_geometry(seq: &JSequence, n: usize) -> Result<WellGeometry> {
    assert!(n >= 1, "well geometry needs n >= 1");
    let p = level_products(seq, n)?;
    let i_n = p.get(n) as i128;
    let w = Ratio::new(i_n, 4);
    let d = (w.ceil() - w) / i_n;
    Ok(WellGeometry {
        level: n,
        w,
        d,
        wall_on_node: d.is_zero(),
        j: seq.j(n)?,
        i_prev: p.get(n - 1) as u64,
        i_n: i_n as u64,
    })
}

/// Which half of the `m`-range partition holds `w_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaCase {
    /// `(m - 1) j_n < w_n <= m j_n - 1`: the wall cuts a loop set.
    LoopSet { m: u64 },
    /// `m j_n - 1 < w_n <= m j_n`: the wall cuts the left half of cross `m`.
    CrossHalf { m: u64 },
}

impl LemmaCase {
    /// Locates `w` among the loop sets and crosses, `1 <= m <= I_{n-1}`.
    pub fn locate(geom: &WellGeometry) -> Self {
        let j = geom.j as i128;
        let int = |v: i128| Ratio::from_integer(v);
        for m in 1..=geom.i_prev {
            let mi = m as i128;
            if int((mi - 1) * j) < geom.w && geom.w <= int(mi * j - 1) {
                return LemmaCase::LoopSet { m };
            }
            if int(mi * j - 1) < geom.w && geom.w <= int(mi * j) {
                return LemmaCase::CrossHalf { m };
            }
        }
        unreachable!("0 < w_n < I_n / 2 always falls in some loop set or cross")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InteriorCounts {
    pub full_crosses: u64,
    pub half_crosses: u64,
    pub loops: u64,
    pub case: LemmaCase,
}

/// Loops, crosses and half-crosses strictly inside the square well of `F_n`.
pub fn interior_shape_counts(seq: &JSequence, n: usize) -> Result<InteriorCounts> {
    let g = well_geometry(seq, n)?;
    let case = LemmaCase::locate(&g);
    let two = |e: usize| 1i128 << e;
    let (j, i_prev) = (g.j as i128, g.i_prev as i128);
    let all_loops = two(n - 1) * (j - 2) * i_prev;
    let (loops, crosses, half) = match case {
        LemmaCase::LoopSet { m } => {
            let m = m as i128;
            let loops = all_loops - two(n) * (1 + g.ceil_w() - 2 * m);
            let crosses = if n >= 2 {
                two(n - 2) * (i_prev - 1) - (m - 1) * two(n - 1)
            } else {
                0
            };
            (loops, crosses, 0)
        }
        LemmaCase::CrossHalf { m } => {
            let m = m as i128;
            let loops = all_loops - m * two(n) * (j - 2);
            let (crosses, half) = if n >= 2 {
                (two(n - 2) * (i_prev - 1) - m * two(n - 1), two(n - 1))
            } else {
                (0, 0)
            };
            (loops, crosses, half)
        }
    };
    debug_assert!(loops >= 0 && crosses >= 0);
    Ok(InteriorCounts {
        full_crosses: crosses as u64,
        half_crosses: half as u64,
        loops: loops as u64,
        case,
    })
}
