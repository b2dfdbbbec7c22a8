//! Closed-form spectra: every family emits `(lambda, multiplicity, source)` lines up to a ceiling.
//!
//! Each eigenvalue carries an exact key `pi^2 * coeff * scale^2` with a rational `coeff`, so lines
//! from different families merge on exact equality rather than on a float tolerance.

pub mod free;
pub mod plates;
pub mod square_well;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

pub use free::free_spectrum;
pub use plates::plates_spectrum;
pub use square_well::square_well_spectrum;

/// Length scale multiplying the rational part of an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    /// The unit interval.
    Unit,
    /// `1 / (2 X_0)`, the inverse plate separation.
    Interior,
    /// `1 / (1 - 2 X_0)`, the inverse total exterior length.
    Exterior,
}

/// `lambda = pi^2 * coeff * scale^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactEigenvalue {
    pub scale: Scale,
    pub coeff: Rational,
}

impl ExactEigenvalue {
    pub fn unit(coeff: Rational) -> Self {
        Self {
            scale: Scale::Unit,
            coeff,
        }
    }

    /// Evaluates with the given numeric value of `scale`.
    pub fn value(&self, scale: f64) -> f64 {
        let c = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        PI * PI * c * scale * scale
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSource {
    pub family: String,
    pub n: usize,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub lambda: f64,
    pub multiplicity: u64,
    pub sources: Vec<LineSource>,
    /// Exact parameterization; absent for numerically computed lines.
    #[serde(skip)]
    pub exact: Option<ExactEigenvalue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergePolicy {
    /// Combine lines with equal exact eigenvalues.
    #[default]
    Merged,
    /// One line per family, level and mode.
    PerFamily,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumQuery {
    lambda_max: f64,
    policy: MergePolicy,
}

impl SpectrumQuery {
    pub fn new(lambda_max: f64, policy: MergePolicy) -> Result<Self> {
        if !(lambda_max.is_finite() && lambda_max > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "lambda_max = {lambda_max} must be positive and finite"
            )));
        }
        Ok(Self { lambda_max, policy })
    }

    pub fn merged(lambda_max: f64) -> Result<Self> {
        Self::new(lambda_max, MergePolicy::Merged)
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn policy(&self) -> MergePolicy {
        self.policy
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeType {
    /// `k = 1, 2, ...`
    Positive,
    /// `k = 0, 1, ...`
    NonNegative,
    /// `k + 1/2` with `k = 0, 1, ...`
    HalfInteger,
}

impl ModeType {
    fn first(self) -> u64 {
        match self {
            ModeType::Positive => 1,
            ModeType::NonNegative | ModeType::HalfInteger => 0,
        }
    }

    /// Twice the mode value: `2k` or `2k + 1`.
    fn doubled(self, k: u64) -> i128 {
        match self {
            ModeType::HalfInteger => 2 * k as i128 + 1,
            _ => 2 * k as i128,
        }
    }
}

/// Static description of one eigenvalue family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub id: &'static str,
    pub mode: ModeType,
    /// Smallest level contributing.
    pub min_level: usize,
    /// Highest level contributing; `None` for all levels.
    pub max_level: Option<usize>,
    pub eigenvalue: &'static str,
    pub multiplicity: &'static str,
}

/// A family-level observation that does not invalidate the spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub family: String,
    pub level: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub lines: Vec<SpectralLine>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Spectrum {
    /// Sum of multiplicities.
    pub fn count(&self) -> u64 {
        self.lines.iter().map(|l| l.multiplicity).sum()
    }
}

/// Accumulates family lines for one generator call.
pub(crate) struct LineSink {
    lambda_max: f64,
    lines: Vec<SpectralLine>,
}

impl LineSink {
    pub(crate) fn new(q: &SpectrumQuery) -> Self {
        Self {
            lambda_max: q.lambda_max,
            lines: Vec::new(),
        }
    }

    /// Emits every mode of `family` at level `n` with eigenvalue `pi^2 (mode * base)^2 scale^2`
    /// up to the ceiling, where `mode` is `k` or `k + 1/2`.
    pub(crate) fn emit(
        &mut self,
        family: &FamilyDescriptor,
        n: usize,
        base: Rational,
        scale: (Scale, f64),
        multiplicity: i128,
    ) -> Result<()> {
        if multiplicity < 0 {
            return Err(Error::NegativeMultiplicity {
                family: family.id.to_string(),
                level: n,
                value: multiplicity,
            });
        }
        if multiplicity == 0 {
            return Ok(());
        }
        let mut k = family.mode.first();
        loop {
            let mode = Rational::new(family.mode.doubled(k), 2);
            let exact = ExactEigenvalue {
                scale: scale.0,
                coeff: (mode * base) * (mode * base),
            };
            let lambda = exact.value(scale.1);
            if lambda > self.lambda_max {
                return Ok(());
            }
            self.lines.push(SpectralLine {
                lambda,
                multiplicity: multiplicity as u64,
                sources: vec![LineSource {
                    family: family.id.to_string(),
                    n,
                    k,
                }],
                exact: Some(exact),
            });
            k += 1;
        }
    }

    pub(crate) fn finish(self, policy: MergePolicy) -> Vec<SpectralLine> {
        merge_lines(self.lines, policy)
    }
}

fn family_order(id: &str) -> (&str, u32) {
    match id.rsplit_once('-') {
        Some((prefix, num)) => (prefix, num.parse().unwrap_or(u32::MAX)),
        None => (id, u32::MAX),
    }
}

fn sort_lines(lines: &mut [SpectralLine]) {
    lines.sort_by(|a, b| {
        a.lambda.total_cmp(&b.lambda).then_with(|| {
            let fa = a.sources.first().map(|s| family_order(&s.family));
            let fb = b.sources.first().map(|s| family_order(&s.family));
            fa.cmp(&fb)
        })
    });
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum MergeKey {
    Exact(ExactEigenvalue),
    Float(u64),
}

/// Combines lines with equal exact eigenvalues (or bitwise-equal floats for lines without an
/// exact key) and sorts ascending by eigenvalue, ties by family.
pub fn merge_lines(mut lines: Vec<SpectralLine>, policy: MergePolicy) -> Vec<SpectralLine> {
    if policy == MergePolicy::PerFamily {
        sort_lines(&mut lines);
        return lines;
    }
    sort_lines(&mut lines);
    let mut groups: BTreeMap<MergeKey, SpectralLine> = BTreeMap::new();
    for line in lines {
        let key = match line.exact {
            Some(e) => MergeKey::Exact(e),
            None => MergeKey::Float(line.lambda.to_bits()),
        };
        match groups.get_mut(&key) {
            Some(acc) => {
                acc.multiplicity += line.multiplicity;
                acc.sources.extend(line.sources);
            }
            None => {
                groups.insert(key, line);
            }
        }
    }
    let mut merged: Vec<SpectralLine> = groups.into_values().collect();
    sort_lines(&mut merged);
    merged
}
