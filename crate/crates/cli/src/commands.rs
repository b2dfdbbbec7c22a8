//! One function per subcommand: validate, dispatch to the library, encode.

use std::fs::File;
use std::io::BufWriter;

use laakso_core::graph::QuantumGraph;
use laakso_core::numeric::{
    cluster, discretize, eigenfunction_trace, solve_lowest_with, Potential, SolveOptions,
};
use laakso_core::sequence::{hausdorff_dimension, hausdorff_estimate};
use laakso_core::shapes::{closed_form_census, shape_census, Region};
use laakso_core::spectrum::{
    free_spectrum, plates_spectrum, square_well_spectrum, MergePolicy, SpectralLine, SpectrumQuery,
};
use laakso_core::zeta::{
    casimir_report, plate_spectral_zeta, spectral_dimension, spectral_zeta_periodic, zeta_poles, ZetaMode,
};
use laakso_core::{build_graph, level_products, JSequence, Parallelism, PlateConfig};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{canonical_json, csv_string, emit, format_float, to_value};
use crate::{
    CasimirArgs, CensusArgs, DescribeArgs, Failure, Format, OutputArgs, PlateArgs, RegionArg, SequenceArgs,
    SolveArgs, SpectrumArgs, SpectrumKind, ZetaArgs,
};

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn sequence(a: &SequenceArgs) -> Result<JSequence, Failure> {
    let list = a.j.as_deref().ok_or_else(|| invalid("--j is required"))?;
    Ok(JSequence::parse(list, a.periodic)?)
}

fn plate_config(a: &PlateArgs) -> Result<Option<PlateConfig>, Failure> {
    let Some(spec) = a.plates.as_deref() else {
        return Ok(None);
    };
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [n, z, x0] = parts[..] else {
        return Err(invalid(format!("--plates {spec:?}: expected N,Z,X0")));
    };
    let bad = |what: &str| invalid(format!("--plates {spec:?}: {what} is not a number"));
    let n: u64 = n.parse().map_err(|_| bad("N"))?;
    let z: u64 = z.parse().map_err(|_| bad("Z"))?;
    let x0: f64 = x0.parse().map_err(|_| bad("X0"))?;
    Ok(Some(PlateConfig::with_hbar(n, z, x0, a.hbar)?))
}

fn require_plates(a: &PlateArgs) -> Result<PlateConfig, Failure> {
    plate_config(a)?.ok_or_else(|| invalid("--plates N,Z,X0 is required"))
}

/// The sequence from `--j`, or the constant `N` sequence of `--plates`; not both.
fn sequence_or_plates(s: &SequenceArgs, p: &PlateArgs) -> Result<(JSequence, Option<PlateConfig>), Failure> {
    match (plate_config(p)?, &s.j) {
        (Some(_), Some(_)) => Err(invalid("give either --j or --plates, not both")),
        (Some(cfg), None) => Ok((cfg.sequence(), Some(cfg))),
        (None, _) => Ok((sequence(s)?, None)),
    }
}

fn finish(
    out: &OutputArgs,
    json: &Value,
    csv: impl FnOnce() -> std::io::Result<String>,
) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => canonical_json(json),
        Format::Csv => csv()?,
    };
    emit(&text, out.output.as_deref())?;
    Ok(())
}

pub fn describe(a: &DescribeArgs) -> Result<(), Failure> {
    let seq = sequence(&a.seq)?;
    let n = a.n.or(seq.period()).unwrap_or(seq.values().len());
    if n == 0 {
        return Err(invalid("--n must be at least 1"));
    }
    let products = level_products(&seq, n)?;
    let mut levels = Vec::new();
    for k in 1..=n {
        let c = closed_form_census(&seq, k)?;
        levels.push(json!({
            "level": k,
            "j": seq.j(k)?,
            "columns": products.get(k) as u64,
            "v": c.v,
            "loops": c.loops,
            "crosses": c.crosses,
        }));
    }
    let mut doc = json!({
        "sequence": to_value(&seq),
        "level": n,
        "levels": levels,
        "hausdorff_estimate": hausdorff_estimate(&seq, n)?,
    });
    if seq.period().is_some() {
        let poles = zeta_poles(&seq, 0..=0)?;
        doc["hausdorff_dimension"] = json!(hausdorff_dimension(&seq)?);
        doc["spectral_dimension"] = json!(spectral_dimension(&seq)?);
        doc["leading_poles"] = json!(poles.iter().map(|p| [p.re, p.im]).collect::<Vec<_>>());
    }
    #[derive(Serialize)]
    struct Row {
        level: Value,
        j: Value,
        columns: Value,
        v: Value,
        loops: Value,
        crosses: Value,
    }
    let rows: Vec<Row> = levels
        .iter()
        .map(|l| Row {
            level: l["level"].clone(),
            j: l["j"].clone(),
            columns: l["columns"].clone(),
            v: l["v"].clone(),
            loops: l["loops"].clone(),
            crosses: l["crosses"].clone(),
        })
        .collect();
    finish(&a.out, &doc, || csv_string(&rows))
}

/// CSV form of a spectral line; `sources` is `family:n:k` joined by `;`.
#[derive(Serialize)]
struct LineRow {
    lambda: String,
    multiplicity: u64,
    sources: String,
}

fn line_rows(lines: &[SpectralLine]) -> Vec<LineRow> {
    lines
        .iter()
        .map(|l| LineRow {
            lambda: format_float(l.lambda),
            multiplicity: l.multiplicity,
            sources: l
                .sources
                .iter()
                .map(|s| format!("{}:{}:{}", s.family, s.n, s.k))
                .collect::<Vec<_>>()
                .join(";"),
        })
        .collect()
}

pub fn spectrum(a: &SpectrumArgs) -> Result<(), Failure> {
    let policy = if a.per_family {
        MergePolicy::PerFamily
    } else {
        MergePolicy::Merged
    };
    let q = SpectrumQuery::new(a.lambda_max, policy)?;
    let (kind, lines, diagnostics) = match a.kind {
        SpectrumKind::Free => ("free", free_spectrum(&sequence(&a.seq)?, &q)?, Vec::new()),
        SpectrumKind::SquareWell => {
            let s = square_well_spectrum(&sequence(&a.seq)?, &q)?;
            ("square-well", s.lines, s.diagnostics)
        }
        SpectrumKind::Plates => {
            if a.seq.j.is_some() {
                return Err(invalid("plate spectra take --plates, not --j"));
            }
            (
                "plates",
                plates_spectrum(&require_plates(&a.plates)?, &q)?,
                Vec::new(),
            )
        }
    };
    let doc = json!({
        "kind": kind,
        "lambda_max": a.lambda_max,
        "policy": to_value(&policy),
        "count": lines.iter().map(|l| l.multiplicity).sum::<u64>(),
        "lines": to_value(&lines),
        "diagnostics": to_value(&diagnostics),
    });
    finish(&a.out, &doc, || csv_string(&line_rows(&lines)))
}

fn solve_graph(a: &SolveArgs) -> Result<QuantumGraph, Failure> {
    let (seq, plates) = sequence_or_plates(&a.seq, &a.plates)?;
    Ok(build_graph(&seq, a.n, plates.as_ref())?)
}

pub fn solve(a: &SolveArgs) -> Result<(), Failure> {
    if !(a.cluster_tol >= 0.0 && a.cluster_tol.is_finite()) {
        return Err(invalid("--cluster-tol must be a finite nonnegative number"));
    }
    if !(a.tolerance > 0.0 && a.tolerance.is_finite()) {
        return Err(invalid("--tolerance must be positive"));
    }
    let potential = Potential::from_name(&a.potential, a.cutoff)?;
    let graph = solve_graph(a)?;
    let op = discretize(&graph, a.mesh, &potential)?;
    if let Some(path) = &a.matrix_output {
        op.write_coordinate(BufWriter::new(File::create(path)?))?;
    }
    let opts = SolveOptions {
        tolerance: a.tolerance,
        retain_vectors: a.trace.is_some(),
        parallelism: if a.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
        ..SolveOptions::default()
    };
    let result = solve_lowest_with(&op, a.count, &opts)?;
    if let (Some(index), Some(path)) = (a.trace, &a.trace_output) {
        #[derive(Serialize)]
        struct TraceRow {
            x: String,
            row: String,
            value: String,
        }
        let rows: Vec<TraceRow> = eigenfunction_trace(&op, &result, index)?
            .into_iter()
            .map(|p| TraceRow {
                x: format_float(p.x),
                row: p.row,
                value: format_float(p.value),
            })
            .collect();
        emit(&csv_string(&rows)?, Some(path))?;
    }
    let clusters: Vec<Value> = cluster(&result, a.cluster_tol)
        .iter()
        .map(|l| json!({"lambda": l.lambda, "multiplicity": l.multiplicity}))
        .collect();
    let doc = json!({
        "level": a.n,
        "potential": potential.kind().name(),
        "cutoff": a.cutoff,
        "mesh": a.mesh,
        "plates": a.plates.plates.is_some(),
        "eigenvalues": result.eigenvalues,
        "clusters": clusters,
        "metadata": to_value(&result.metadata),
    });
    #[derive(Serialize)]
    struct Row {
        index: usize,
        lambda: String,
        residual: String,
    }
    let rows: Vec<Row> = result
        .eigenvalues
        .iter()
        .zip(&result.metadata.residuals)
        .enumerate()
        .map(|(index, (l, r))| Row {
            index,
            lambda: format_float(*l),
            residual: format_float(*r),
        })
        .collect();
    finish(&a.out, &doc, || csv_string(&rows))
}

fn mode_name(m: ZetaMode) -> Value {
    to_value(&m)
}

pub fn zeta(a: &ZetaArgs) -> Result<(), Failure> {
    let s = Complex64::new(a.s, a.s_im);
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(invalid("s must be finite"));
    }
    // The continuation only exists for periodic spaces, so `--j` always repeats here.
    let periodic = SequenceArgs {
        periodic: true,
        ..a.seq.clone()
    };
    let (seq, plates) = sequence_or_plates(&periodic, &a.plates)?;
    let (value, mode) = match plates {
        Some(cfg) => {
            if a.s_im != 0.0 {
                return Err(invalid("plate zeta functions take real s"));
            }
            let v = plate_spectral_zeta(&cfg, a.s)?;
            let mode = if 2.0 * a.s > spectral_dimension(&seq)? {
                ZetaMode::Series
            } else {
                ZetaMode::Continued
            };
            (Complex64::new(v, 0.0), mode)
        }
        None => {
            let z = spectral_zeta_periodic(&seq, s)?;
            (z.value, z.mode)
        }
    };
    let mut doc = json!({
        "s": [s.re, s.im],
        "value": [value.re, value.im],
        "mode": mode_name(mode),
    });
    if let Some(m) = a.poles {
        let m = i64::from(m);
        let poles = zeta_poles(&seq, -m..=m)?;
        let half = poles.len() / 2;
        let pack = |ps: &[Complex64]| ps.iter().map(|p| [p.re, p.im]).collect::<Vec<_>>();
        doc["poles"] = json!({"first": pack(&poles[..half]), "second": pack(&poles[half..])});
    }
    #[derive(Serialize)]
    struct Row {
        s_re: String,
        s_im: String,
        value_re: String,
        value_im: String,
        mode: Value,
    }
    let row = Row {
        s_re: format_float(s.re),
        s_im: format_float(s.im),
        value_re: format_float(value.re),
        value_im: format_float(value.im),
        mode: mode_name(mode),
    };
    finish(&a.out, &doc, || csv_string(&[row]))
}

pub fn casimir(a: &CasimirArgs) -> Result<(), Failure> {
    let cfg = require_plates(&a.plates)?;
    let report = casimir_report(&cfg)?;
    let mut doc = to_value(&report);
    doc["config"] = json!({"n": cfg.n(), "z": cfg.z(), "x0": cfg.x0(), "hbar": cfg.hbar()});
    #[derive(Serialize)]
    struct Row {
        x0: String,
        energy: String,
        force: String,
        oracle_force: String,
        agreement: bool,
    }
    let row = |r: &laakso_core::zeta::CasimirReport, x0: f64| Row {
        x0: format_float(x0),
        energy: format_float(r.energy.total),
        force: format_float(r.force),
        oracle_force: format_float(r.oracle_force),
        agreement: r.agreement,
    };
    let mut rows = vec![row(&report, cfg.x0())];
    if let Some(points) = a.sweep {
        if points == 0 {
            return Err(invalid("--sweep needs at least one point"));
        }
        rows.clear();
        let mut sweep = Vec::with_capacity(points);
        for i in 1..=points {
            let x0 = i as f64 / (2.0 * (points + 1) as f64);
            let r = casimir_report(&cfg.with_x0(x0)?)?;
            sweep.push(json!({"x0": x0, "energy": r.energy.total, "force": r.force,
                "oracle_force": r.oracle_force, "agreement": r.agreement}));
            rows.push(row(&r, x0));
        }
        doc["sweep"] = Value::Array(sweep);
    }
    finish(&a.out, &doc, || csv_string(&rows))
}

pub fn census(a: &CensusArgs) -> Result<(), Failure> {
    let (seq, plates) = sequence_or_plates(&a.seq, &a.plates)?;
    let region = match a.region {
        None => None,
        Some(RegionArg::SquareWell) => Some(Region::SquareWell),
        Some(RegionArg::Plates) => Some(Region::Plates(
            plates.ok_or_else(|| invalid("--region plates needs --plates N,Z,X0"))?,
        )),
    };
    let graph = build_graph(&seq, a.n, plates.as_ref())?;
    let census = shape_census(&graph, region.as_ref());
    let closed = closed_form_census(&seq, a.n)?;
    let mut split = to_value(&census.split);
    if let Value::Object(map) = &mut split {
        // Shape lists grow like the graph; the counts carry the information.
        map.remove("half_crosses");
    }
    let doc = json!({
        "level": census.level,
        "counts": to_value(&census.counts),
        "closed_form": to_value(&closed),
        "agree": census.counts == closed,
        "split": split,
    });
    #[derive(Serialize)]
    struct Row {
        part: &'static str,
        v: u64,
        loops: u64,
        crosses: u64,
    }
    let mut rows = vec![Row {
        part: "total",
        v: census.counts.v,
        loops: census.counts.loops,
        crosses: census.counts.crosses,
    }];
    if let Some(s) = &census.split {
        for (part, c) in [
            ("interior", s.interior),
            ("exterior", s.exterior),
            ("straddling", s.straddling),
        ] {
            rows.push(Row {
                part,
                v: c.v,
                loops: c.loops,
                crosses: c.crosses,
            });
        }
    }
    finish(&a.out, &doc, || csv_string(&rows))
}
