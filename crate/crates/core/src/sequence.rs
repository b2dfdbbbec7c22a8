//! j-sequences and the level products `I_n = j_1 * ... * j_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// A finite prefix; indexing past it is an error.
    Explicit,
    /// One full period, repeated forever.
    Periodic,
}

/// The subdivision sequence `{j_n}` defining a Laakso space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JSequence {
    kind: SequenceKind,
    values: Vec<u64>,
}

impl JSequence {
    pub fn new(kind: SequenceKind, values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v < 2) {
            return Err(Error::InvalidSubdivision {
                index: i + 1,
                value: v,
            });
        }
        Ok(Self { kind, values })
    }

    pub fn explicit(values: Vec<u64>) -> Result<Self> {
        Self::new(SequenceKind::Explicit, values)
    }

    pub fn periodic(values: Vec<u64>) -> Result<Self> {
        Self::new(SequenceKind::Periodic, values)
    }

    /// The space with `j_n = j` for every `n`.
    pub fn constant(j: u64) -> Result<Self> {
        Self::periodic(vec![j])
    }

    /// Parses a comma-separated list such as `"2,3"`.
    pub fn parse(list: &str, periodic: bool) -> Result<Self> {
        let values = list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad j value {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let kind = if periodic {
            SequenceKind::Periodic
        } else {
            SequenceKind::Explicit
        };
        Self::new(kind, values)
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Period `T` of a periodic sequence.
    pub fn period(&self) -> Option<usize> {
        match self.kind {
            SequenceKind::Periodic => Some(self.values.len()),
            SequenceKind::Explicit => None,
        }
    }

    pub fn require_period(&self) -> Result<usize> {
        self.period().ok_or(Error::NotPeriodic)
    }

    /// `j_i` with 1-based `i`.
    pub fn j(&self, i: usize) -> Result<u64> {
        assert!(i >= 1, "j-sequence indices start at 1");
        match self.kind {
            SequenceKind::Periodic => Ok(self.values[(i - 1) % self.values.len()]),
            SequenceKind::Explicit => self.values.get(i - 1).copied().ok_or(Error::SequenceTooShort {
                len: self.values.len(),
                level: i,
            }),
        }
    }

    /// True when every `j_n` equals `j` (only possible for periodic sequences).
    pub fn is_constant(&self, j: u64) -> bool {
        self.kind == SequenceKind::Periodic && self.values.iter().all(|&v| v == j)
    }
}

impl fmt::Display for JSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .values
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        match self.kind {
            SequenceKind::Periodic => write!(f, "[{body}, ...]"),
            SequenceKind::Explicit => write!(f, "[{body}]"),
        }
    }
}

/// `I_0 ..= I_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelProducts {
    entries: Vec<u128>,
}

impl LevelProducts {
    pub fn entries(&self) -> &[u128] {
        &self.entries
    }

    /// Highest level `n` stored.
    pub fn level(&self) -> usize {
        self.entries.len() - 1
    }

    /// `I_k`; panics when `k` exceeds the stored level.
    pub fn get(&self, k: usize) -> u128 {
        self.entries[k]
    }
}

pub fn level_products(seq: &JSequence, n: usize) -> Result<LevelProducts> {
    let mut entries = Vec::with_capacity(n + 1);
    entries.push(1u128);
    for i in 1..=n {
        let j = seq.j(i)? as u128;
        let next = entries[i - 1].checked_mul(j).ok_or(Error::Overflow("I_n"))?;
        entries.push(next);
    }
    Ok(LevelProducts { entries })
}

/// Hausdorff dimension `1 + ln(2^T) / ln(I_T)` of a periodic Laakso space.
pub fn hausdorff_dimension(seq: &JSequence) -> Result<f64> {
    let t = seq.require_period()?;
    hausdorff_estimate(seq, t)
}

/// Finite-level estimate `1 + ln(2^n) / ln(I_n)`; exact for periodic sequences when `n` is a
/// multiple of the period.
pub fn hausdorff_estimate(seq: &JSequence, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension estimate needs n >= 1".into()));
    }
    let i_n = level_products(seq, n)?.get(n) as f64;
    Ok(1.0 + n as f64 * std::f64::consts::LN_2 / i_n.ln())
}
