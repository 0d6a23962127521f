//! Browser bindings for the planar switched-system classifier.
//!
//! Trajectories cross the boundary as flat `Float64Array`s with four numbers
//! per sample: `t, x1, x2, mode`, where `mode` is 1 while `A` is active, 0
//! for `B` and the convex weight `u` for a mixed field.

use planar_switch::classifier::analyze_pair;
use planar_switch::collinearity::Orientation;
use planar_switch::report::{classify_document, InputDocument};
use planar_switch::sampling::{random_case, random_params, random_similarity, realize};
use planar_switch::trajectory::{self, simulate, Active, Mode, PolicySpec, Trajectory, WorstOptions};
use planar_switch::{Certificate, SystemPair, Tolerances, Vec2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

fn parse(input: &str) -> Result<(InputDocument, SystemPair), String> {
    let doc: InputDocument = serde_json::from_str(input).map_err(|e| format!("malformed input: {e}"))?;
    let pair = doc.pair().map_err(|e| e.to_string())?;
    Ok((doc, pair))
}

fn flatten(traj: &Trajectory) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * traj.samples.len());
    for s in &traj.samples {
        let mode = match s.active {
            Active::Mode(Mode::A) => 1.0,
            Active::Mode(Mode::B) => 0.0,
            Active::Mixed(u) => u,
        };
        out.extend_from_slice(&[s.t, s.state.x1, s.state.x2, mode]);
    }
    out
}

/// Pretty JSON report for a system document.
pub fn classify_text(input: &str) -> Result<String, String> {
    let (doc, _) = parse(input)?;
    let report = classify_document(&doc, &Tolerances::default()).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())
}

/// Worst trajectory from `x0` in input coordinates. Under static
/// instability there is none, and the escaping constant control is
/// returned instead.
pub fn worst_samples(input: &str, x1: f64, x2: f64, half_turns: usize) -> Result<Vec<f64>, String> {
    let (_, pair) = parse(input)?;
    let tol = Tolerances::default();
    let analysis = analyze_pair(&pair, &tol).map_err(|e| e.to_string())?;
    let x0 = Vec2::new(x1, x2);
    let (Some(nf), Some(data)) = (&analysis.nf, &analysis.collinearity) else {
        return Err("the matrices commute; there is no worst trajectory".into());
    };
    if data.big_delta_sign < 0 {
        return Err("Delta < 0: the fields are never parallel, so there is no worst trajectory (GUAS)".into());
    }
    if data.orientation == Orientation::Inverse {
        return match analysis.verdict.certificate {
            Certificate::StaticInstability { u0, unstable_eigenvalue } => {
                let t = 12.0 / unstable_eigenvalue;
                let traj = simulate(&pair, PolicySpec::ConstantU { u: u0 }, x0, t, t / 400.0).map_err(|e| e.to_string())?;
                Ok(flatten(&traj))
            }
            _ => Err("inverse orientation: there is no worst trajectory".into()),
        };
    }
    let y0 = nf.from_original(x0).ok_or("singular change of basis")?;
    let opts = WorstOptions { max_half_turns: half_turns, sample_dt: Some(0.01), ..WorstOptions::default() };
    let traj = trajectory::worst_trajectory_with(nf, y0, &opts, &tol).map_err(|e| e.to_string())?;
    Ok(flatten(&trajectory::to_original(nf, traj)))
}

/// Switching between `A` and `B` after uniform random dwell times.
pub fn random_dwell_samples(input: &str, seed: u64, x1: f64, x2: f64, dwell_max: f64, t_max: f64) -> Result<Vec<f64>, String> {
    let (_, pair) = parse(input)?;
    let policy = PolicySpec::RandomDwell { seed, dwell_min: dwell_max / 10.0, dwell_max };
    let traj = simulate(&pair, policy, Vec2::new(x1, x2), t_max, t_max / 2000.0).map_err(|e| e.to_string())?;
    Ok(flatten(&traj))
}

/// A random valid system, written as an input document.
pub fn random_system_text(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let case = random_case(&mut rng);
    let p = random_params(&mut rng, case);
    let pair = realize(&p.pair(), &random_similarity(&mut rng, 4.0), 1.0);
    let doc = InputDocument {
        a: pair.a.rows(),
        b: pair.b.rows(),
        label: Some(format!("random {} system, seed {seed}", case.label())),
    };
    serde_json::to_string(&doc).expect("documents serialize")
}

#[wasm_bindgen]
pub fn classify(input: &str) -> Result<String, JsError> {
    classify_text(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = worstTrajectory)]
pub fn worst_trajectory(input: &str, x1: f64, x2: f64, half_turns: usize) -> Result<Vec<f64>, JsError> {
    worst_samples(input, x1, x2, half_turns).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = randomDwell)]
pub fn random_dwell(input: &str, seed: u32, x1: f64, x2: f64, dwell_max: f64, t_max: f64) -> Result<Vec<f64>, JsError> {
    random_dwell_samples(input, u64::from(seed), x1, x2, dwell_max, t_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = randomSystem)]
pub fn random_system(seed: u32) -> String {
    random_system_text(u64::from(seed))
}
