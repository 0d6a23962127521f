use std::fs;
use std::path::{Path, PathBuf};

use planar_switch::classifier::{analyze_pair, Analysis, Certificate};
use planar_switch::collinearity::Orientation;
use planar_switch::report::{classify_document, normal_form_document, Report};
use planar_switch::trajectory::{
    self, simulate_with, to_original, worst_trajectory_with, PolicySpec, Trajectory, WorstOptions,
};
use planar_switch::{Tolerances, Vec2, VerdictKind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{BatchArgs, Common, Format, FrameArg, InputArgs, PolicyArg, SimulateArgs, WorstArgs};
use crate::io::{emit, read_document, use_color, CliError};
use crate::render;

fn tolerances(c: &Common) -> Result<Tolerances, CliError> {
    let ok = |v: f64| v.is_finite() && v > 0.0;
    if !ok(c.tol_degenerate) || !ok(c.tol_ratio) {
        return Err(CliError::Invalid("tolerances must be positive and finite".into()));
    }
    Ok(Tolerances { degenerate: c.tol_degenerate, ratio: c.tol_ratio })
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize");
    out.push(b'\n');
    out
}

pub fn classify(args: &InputArgs) -> Result<(), CliError> {
    let tol = tolerances(&args.common)?;
    let doc = read_document(&args.input)?;
    let report = classify_document(&doc, &tol)?;
    let out = match args.common.format {
        Format::Json => json(&report),
        Format::Text => render::report(&report, use_color(args.common.output.is_some())).into_bytes(),
    };
    emit(args.common.output.as_deref(), &out)
}

pub fn normal_form(args: &InputArgs) -> Result<(), CliError> {
    let tol = tolerances(&args.common)?;
    let doc = read_document(&args.input)?;
    let report = normal_form_document(&doc, &tol)?;
    let out = match args.common.format {
        Format::Json => json(&report),
        Format::Text => render::normal_form(&report).into_bytes(),
    };
    emit(args.common.output.as_deref(), &out)
}

fn csv(traj: &Trajectory) -> Vec<u8> {
    let mut out = Vec::new();
    trajectory::write_csv(traj, &mut out).expect("writing to memory");
    out
}

/// Refuse systems without a worst trajectory.
fn worst_ready(analysis: &Analysis) -> Result<(), CliError> {
    let (Some(_), Some(data)) = (&analysis.nf, &analysis.collinearity) else {
        return Err(CliError::OutOfScope("the matrices commute; there is no worst trajectory".into()));
    };
    if data.big_delta_sign < 0 {
        return Err(CliError::OutOfScope(
            "Delta < 0: the fields are never collinear and the worst trajectory is undefined (verdict GUAS)".into(),
        ));
    }
    if data.orientation == Orientation::Inverse {
        let detail = match &analysis.verdict.certificate {
            Certificate::StaticInstability { u0, unstable_eigenvalue } => {
                format!(" (u0 = {u0}, unstable eigenvalue = {unstable_eigenvalue})")
            }
            _ => String::new(),
        };
        return Err(CliError::OutOfScope(format!(
            "inverse orientation: the worst trajectory is undefined; the certificate is static instability{detail}"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct WorstSummary {
    pub rotating: bool,
    pub verdict: VerdictKind,
    pub certificate: String,
    pub ratio_analytic: Option<f64>,
    pub ratio_measured: Vec<f64>,
    pub switches: usize,
    pub termination: trajectory::Termination,
}

impl WorstSummary {
    fn text(&self, color: bool) -> String {
        let verdict = render::verdict(self.verdict, color);
        if self.rotating {
            let measured: Vec<String> = self.ratio_measured.iter().map(|r| r.to_string()).collect();
            format!(
                "rotating; R analytic = {}, R measured = [{}]; {verdict}\n",
                self.ratio_analytic.unwrap_or(f64::NAN),
                measured.join(", ")
            )
        } else {
            let why = match self.certificate.as_str() {
                "ProjectiveCone" => " (projective cone)",
                "SingularCase" => " (singular case)",
                "CoincidentDirectLines" => " (coincident direct lines)",
                _ => "",
            };
            format!("non-rotating; {verdict}{why}\n")
        }
    }
}

pub fn worst(args: &WorstArgs) -> Result<(), CliError> {
    let tol = tolerances(&args.common)?;
    if args.dt.is_some_and(|dt| !(dt > 0.0)) {
        return Err(CliError::Invalid("--dt must be positive".into()));
    }
    let doc = read_document(&args.input)?;
    let analysis = analyze_pair(&doc.pair()?, &tol)?;
    worst_ready(&analysis)?;
    let nf = analysis.nf.as_ref().expect("checked by worst_ready");
    let x0 = Vec2::new(args.x0.0, args.x0.1);
    let (y0, dt) = match args.frame {
        FrameArg::NormalForm => (x0, args.dt),
        FrameArg::Original => (
            nf.from_original(x0).ok_or_else(|| CliError::Invalid("singular change of basis".into()))?,
            args.dt.map(|dt| dt * nf.tau),
        ),
    };
    let opts = WorstOptions { max_half_turns: args.half_turns, sample_dt: dt, ..WorstOptions::default() };
    let mut traj = worst_trajectory_with(nf, y0, &opts, &tol)?;
    let summary = WorstSummary {
        rotating: traj.rotating,
        verdict: analysis.verdict.kind,
        certificate: analysis.verdict.certificate.name().to_string(),
        ratio_analytic: match &analysis.verdict.certificate {
            Certificate::RatioRotation(r) => Some(r.r),
            _ => None,
        },
        ratio_measured: traj.half_turn_ratios.clone(),
        switches: traj.switch_events.len(),
        termination: traj.termination,
    };
    if args.frame == FrameArg::Original {
        traj = to_original(nf, traj);
    }
    emit(args.common.output.as_deref(), &csv(&traj))?;
    let text = match args.common.format {
        Format::Json => json(&summary),
        Format::Text => summary.text(use_color(false)).into_bytes(),
    };
    print_summary(args.common.output.is_some(), &text)
}

/// Summaries go to standard output unless the data itself does.
fn print_summary(data_in_file: bool, text: &[u8]) -> Result<(), CliError> {
    if data_in_file {
        emit(None, text)
    } else {
        eprint!("{}", String::from_utf8_lossy(text));
        Ok(())
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let tol = tolerances(&args.common)?;
    let doc = read_document(&args.input)?;
    let pair = doc.pair()?;
    let policy = match args.policy {
        PolicyArg::Constant => {
            let u = args.u.ok_or_else(|| CliError::Invalid("--policy constant needs --u".into()))?;
            PolicySpec::ConstantU { u }
        }
        PolicyArg::Random => {
            PolicySpec::RandomDwell { seed: args.seed, dwell_min: args.dwell_min, dwell_max: args.dwell_max }
        }
        PolicyArg::Worst => {
            worst_ready(&analyze_pair(&pair, &tol)?)?;
            PolicySpec::WorstCase
        }
    };
    policy.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
    let x0 = Vec2::new(args.x0.0, args.x0.1);
    let traj = simulate_with(&pair, policy, x0, args.t_max, args.dt, &tol)?;
    emit(args.common.output.as_deref(), &csv(&traj))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BatchRow {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Default, PartialEq)]
pub struct BatchSummary {
    #[serde(rename = "GUAS")]
    pub guas: usize,
    #[serde(rename = "UniformlyStableNotGUAS")]
    pub uniformly_stable: usize,
    #[serde(rename = "Unbounded")]
    pub unbounded: usize,
    pub errors: usize,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct BatchTable {
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

fn batch_files(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    if let [dir] = inputs {
        if dir.is_dir() {
            let entries = fs::read_dir(dir).map_err(|source| CliError::Read { path: dir.clone(), source })?;
            let mut files = Vec::new();
            for entry in entries {
                let path = entry.map_err(|source| CliError::Read { path: dir.clone(), source })?.path();
                if path.is_file() && path.extension().is_some_and(|e| e == "json") {
                    files.push(path);
                }
            }
            files.sort();
            return Ok(files);
        }
    }
    Ok(inputs.to_vec())
}

/// Returns whether any file failed to read or parse.
pub fn batch(args: &BatchArgs) -> Result<bool, CliError> {
    let tol = tolerances(&args.common)?;
    let files = batch_files(&args.input)?;
    if files.is_empty() {
        eprintln!("warning: no input files found");
    }
    let results: Vec<(BatchRow, bool)> = files.par_iter().map(|path| batch_row(path, &tol)).collect();
    let failed = results.iter().any(|(_, bad)| *bad);
    let rows: Vec<BatchRow> = results.into_iter().map(|(row, _)| row).collect();
    let mut summary = BatchSummary::default();
    for row in &rows {
        match row.report.as_ref().map(|r| r.verdict) {
            Some(VerdictKind::Guas) => summary.guas += 1,
            Some(VerdictKind::UniformlyStableNotGuas) => summary.uniformly_stable += 1,
            Some(VerdictKind::Unbounded) => summary.unbounded += 1,
            None => summary.errors += 1,
        }
    }
    let table = BatchTable { rows, summary };
    let out = match args.common.format {
        Format::Json => json(&table),
        Format::Text => batch_text(&table, use_color(args.common.output.is_some())).into_bytes(),
    };
    emit(args.common.output.as_deref(), &out)?;
    Ok(failed)
}

fn batch_row(path: &Path, tol: &Tolerances) -> (BatchRow, bool) {
    let file = path.display().to_string();
    let result = read_document(path).and_then(|doc| classify_document(&doc, tol).map_err(CliError::from));
    match result {
        Ok(report) => (BatchRow { file, report: Some(report), error: None }, false),
        Err(e) => {
            let bad = matches!(e, CliError::Read { .. } | CliError::Parse { .. });
            (BatchRow { file, report: None, error: Some(e.to_string()) }, bad)
        }
    }
}

fn batch_text(table: &BatchTable, color: bool) -> String {
    let mut s = String::new();
    for row in &table.rows {
        match (&row.report, &row.error) {
            (Some(r), _) => {
                let case = r.case.map_or("-".to_string(), |c| c.to_string());
                s += &format!("{}\t{}\t{}\t{}\n", row.file, render::verdict(r.verdict, color), case, r.certificate.name());
            }
            (None, Some(e)) => s += &format!("{}\terror\t{}\n", row.file, e),
            (None, None) => {}
        }
    }
    let t = &table.summary;
    s += &format!(
        "summary: GUAS={} UniformlyStableNotGUAS={} Unbounded={} errors={}\n",
        t.guas, t.uniformly_stable, t.unbounded, t.errors
    );
    s
}
