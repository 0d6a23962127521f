//! Worst trajectories and switching simulations on exact flows.
//!
//! All flows are matrix exponentials, so switching instants are found by
//! bisection on the exact flow and nothing is integrated step by step.

use std::fmt;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::{projective_guas_check, ratio_r_with, ConeArc, ProjectiveOutcome};
use crate::collinearity::{self, quadratic_q, Orientation, ZSet};
use crate::error::{Error, Result};
use crate::invariants::{normal_form, CaseTag, NormalForm, SystemPair};
use crate::linalg2::{expm_normal, expm_reference, Mat2, Vec2};
use crate::tolerance::Tolerances;

/// Residual allowed between a closed-form switching point and its line.
pub const LINE_RESIDUAL_TOL: f64 = 1e-10;
/// Absolute time resolution of crossing bisection.
pub const CROSSING_TIME_TOL: f64 = 1e-12;
/// Hard cap on switching events when the worst trajectory does not rotate.
pub const MAX_EVENTS: usize = 10_000;
const INTERIOR_SAMPLES: usize = 15;
const GROWTH_LIMIT: f64 = 1e150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    pub fn other(self) -> Mode {
        match self {
            Mode::A => Mode::B,
            Mode::B => Mode::A,
        }
    }

    fn relabel(self, swapped: bool) -> Mode {
        if swapped {
            self.other()
        } else {
            self
        }
    }
}

/// What drives the state over a sample: one of the two modes, or the
/// constant convex combination `u·A + (1 − u)·B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Active {
    Mode(Mode),
    Mixed(f64),
}

impl fmt::Display for Active {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Active::Mode(Mode::A) => f.write_str("A"),
            Active::Mode(Mode::B) => f.write_str("B"),
            Active::Mixed(u) => write!(f, "u={u}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Line {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub state: Vec2,
    pub active: Active,
    /// Set when the sample is a switching instant; the mode switched to.
    pub switch_to: Option<Mode>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwitchEvent {
    pub t: f64,
    pub line: Option<Line>,
    pub state: Vec2,
    pub to: Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    NormalForm,
    Original,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    MaxHalfTurns,
    TimeLimit,
    /// Norm fell below `1e−9·‖x0‖` (inside the invariant cone when there is one).
    Converged,
    /// Norm crossed the caller's growth threshold.
    Threshold,
    EventCap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub frame: Frame,
    pub samples: Vec<Sample>,
    pub switch_events: Vec<SwitchEvent>,
    pub half_turn_ratios: Vec<f64>,
    pub rotating: bool,
    pub termination: Termination,
}

impl Trajectory {
    pub fn final_state(&self) -> Option<Vec2> {
        self.samples.last().map(|s| s.state)
    }

    pub fn final_time(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }

    /// Largest norm seen, relative to the first sample.
    pub fn max_growth(&self) -> f64 {
        let Some(first) = self.samples.first() else {
            return 0.0;
        };
        let n0 = first.state.norm();
        self.samples.iter().fold(0.0f64, |m, s| m.max(s.state.norm() / n0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PolicySpec {
    ConstantU { u: f64 },
    RandomDwell { seed: u64, dwell_min: f64, dwell_max: f64 },
    WorstCase,
}

impl PolicySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PolicySpec::ConstantU { u } if !(0.0..=1.0).contains(&u) => {
                Err(Error::PreconditionViolated(format!("u = {u} is outside [0, 1]")))
            }
            PolicySpec::RandomDwell { dwell_min, dwell_max, .. } if !(dwell_min > 0.0 && dwell_max >= dwell_min) => {
                Err(Error::PreconditionViolated(format!(
                    "dwell range [{dwell_min}, {dwell_max}] needs 0 < min <= max"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Knobs for `worst_trajectory_with`. Times are in normal-form units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorstOptions {
    pub max_half_turns: usize,
    pub t_max: Option<f64>,
    /// Grid for samples between switches; `None` puts a few evenly spaced
    /// samples on every arc.
    pub sample_dt: Option<f64>,
    /// Stop once the norm exceeds this multiple of the starting norm.
    pub stop_above: Option<f64>,
    /// Keep only switching instants and the endpoints.
    pub sparse: bool,
}

impl Default for WorstOptions {
    fn default() -> Self {
        WorstOptions { max_half_turns: 50, t_max: None, sample_dt: None, stop_above: None, sparse: false }
    }
}

struct Recorder {
    samples: Vec<Sample>,
    events: Vec<SwitchEvent>,
    dt: Option<f64>,
    sparse: bool,
}

impl Recorder {
    fn new(dt: Option<f64>, sparse: bool) -> Self {
        Recorder { samples: Vec::new(), events: Vec::new(), dt, sparse }
    }

    fn push(&mut self, t: f64, state: Vec2, active: Active, switch_to: Option<Mode>) {
        if let Some(last) = self.samples.last_mut() {
            if t <= last.t {
                // a switch landing on a grid time replaces the grid sample
                *last = Sample { t: last.t, state, active, switch_to: switch_to.or(last.switch_to) };
                return;
            }
        }
        self.samples.push(Sample { t, state, active, switch_to });
    }

    /// Samples strictly inside `(t0, t0 + dur)`.
    fn arc(&mut self, t0: f64, dur: f64, active: Active, flow: impl Fn(f64) -> Vec2) {
        if self.sparse || dur <= 0.0 {
            return;
        }
        let t1 = t0 + dur;
        match self.dt {
            Some(dt) => {
                let mut j = (t0 / dt).floor() as u64 + 1;
                loop {
                    let t = j as f64 * dt;
                    if t >= t1 {
                        break;
                    }
                    if t > t0 {
                        self.push(t, flow(t - t0), active, None);
                    }
                    j += 1;
                }
            }
            None => {
                for i in 1..=INTERIOR_SAMPLES {
                    let s = dur * i as f64 / (INTERIOR_SAMPLES + 1) as f64;
                    self.push(t0 + s, flow(s), active, None);
                }
            }
        }
    }

    fn switch(&mut self, t: f64, state: Vec2, to: Mode, line: Option<Line>) {
        self.push(t, state, Active::Mode(to), Some(to));
        self.events.push(SwitchEvent { t, line, state, to });
    }
}

fn nf_matrix(nf: &NormalForm, mode: Mode) -> &Mat2 {
    match mode {
        Mode::A => &nf.a_nf,
        Mode::B => &nf.b_nf,
    }
}

fn nf_flow(nf: &NormalForm, mode: Mode, t: f64) -> Result<Mat2> {
    Ok(expm_normal(nf_matrix(nf, mode), t)?)
}

/// `Q` of the unit vector along `x`.
fn q_unit(nf: &NormalForm, x: Vec2) -> f64 {
    let n = x.norm();
    if n == 0.0 || !n.is_finite() {
        return 0.0;
    }
    quadratic_q(nf, x.scale(1.0 / n))
}

/// Times in `[0, horizon]` where the flow of `mode` from `x0` meets `Z`,
/// sorted. A start on `Z` gives a root at `0`.
pub fn z_crossing_times(nf: &NormalForm, mode: Mode, x0: Vec2, zset: &ZSet, horizon: f64) -> Result<Vec<f64>> {
    if matches!(zset, ZSet::OriginOnly) || !(horizon > 0.0) {
        return Ok(Vec::new());
    }
    let m = nf_matrix(nf, mode);
    let q_at = |t: f64| -> Result<f64> { Ok(q_unit(nf, nf_flow(nf, mode, t)? * x0)) };
    // rotation per grid step stays below 0.01 rad
    let h = 0.01 / m.norm_inf().max(1e-300);
    let steps = ((horizon / h).ceil() as usize).max(1);
    let mut roots = Vec::new();
    let mut t_prev = 0.0;
    let mut q_prev = q_at(0.0)?;
    if q_prev == 0.0 {
        roots.push(0.0);
    }
    for i in 1..=steps {
        let t = horizon * i as f64 / steps as f64;
        let q = q_at(t)?;
        if q == 0.0 {
            roots.push(t);
        } else if q_prev != 0.0 && (q < 0.0) != (q_prev < 0.0) {
            let (mut lo, mut hi, q_lo) = (t_prev, t, q_prev);
            while hi - lo > CROSSING_TIME_TOL {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let qm = q_at(mid)?;
                if qm == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if (qm < 0.0) == (q_lo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        t_prev = t;
        q_prev = q;
    }
    Ok(roots)
}

fn require_direct(data: &collinearity::CollinearityData) -> Result<()> {
    if data.big_delta_sign < 0 || data.orientation != Orientation::Direct {
        return Err(Error::PreconditionViolated(
            "the worst trajectory needs Delta >= 0 and direct orientation".into(),
        ));
    }
    Ok(())
}

/// Worst trajectory in normal-form coordinates with default options.
pub fn worst_trajectory(nf: &NormalForm, x0: Vec2, max_half_turns: usize) -> Result<Trajectory> {
    worst_trajectory_with(nf, x0, &WorstOptions { max_half_turns, ..WorstOptions::default() }, &Tolerances::default())
}

pub fn worst_trajectory_with(nf: &NormalForm, x0: Vec2, opts: &WorstOptions, tol: &Tolerances) -> Result<Trajectory> {
    if !x0.is_finite() || x0.norm() == 0.0 {
        return Err(Error::PreconditionViolated("initial state must be finite and nonzero".into()));
    }
    let data = collinearity::analyze(nf, tol)?;
    require_direct(&data)?;
    let rotating = nf.case.is_regular() && data.big_delta_sign > 0 && nf.inv.k < 0.0;
    if rotating {
        rotating_worst(nf, &data.zset, x0, opts, tol)
    } else {
        sliding_free_worst(nf, &data.zset, x0, opts)
    }
}

fn line_of(zset: &ZSet, x: Vec2) -> Option<Line> {
    let (plus, minus) = zset.lines()?;
    Some(if plus.line_residual(x) <= minus.line_residual(x) { Line::Plus } else { Line::Minus })
}

fn rotating_worst(nf: &NormalForm, zset: &ZSet, x0: Vec2, opts: &WorstOptions, tol: &Tolerances) -> Result<Trajectory> {
    let rr = ratio_r_with(&nf.inv, nf, tol)?;
    let ZSet::TwoLines { plus, minus } = *zset else {
        return Err(Error::Inconsistent("rotating case without two collinearity lines".into()));
    };
    let d = plus.direction();
    let mut y = d.scale(d.dot(x0) / d.dot(d));
    if y.norm() == 0.0 {
        y = d.normalized().scale(x0.norm());
    }
    let n0 = y.norm();
    let ea = nf_flow(nf, Mode::A, rr.t1)?;
    let eb = nf_flow(nf, Mode::B, rr.t2)?;
    let mut rec = Recorder::new(opts.sample_dt, opts.sparse);
    rec.push(0.0, y, Active::Mode(Mode::A), None);
    let mut t = 0.0;
    let mut ratios = Vec::new();
    let mut termination = Termination::MaxHalfTurns;

    let legs = [(Mode::A, rr.t1, ea, minus, Line::Minus), (Mode::B, rr.t2, eb, plus, Line::Plus)];
    'turns: for _ in 0..opts.max_half_turns {
        let start = y;
        for &(mode, dur, e, target, line) in &legs {
            let from = y;
            let flow = |s: f64| nf_flow(nf, mode, s).map(|m| m * from).unwrap_or(from);
            if let Some(t_max) = opts.t_max {
                if t + dur > t_max {
                    rec.arc(t, t_max - t, Active::Mode(mode), flow);
                    rec.push(t_max, flow(t_max - t), Active::Mode(mode), None);
                    termination = Termination::TimeLimit;
                    break 'turns;
                }
            }
            rec.arc(t, dur, Active::Mode(mode), flow);
            y = e * y;
            t += dur;
            let residual = target.line_residual(y);
            if !(residual <= LINE_RESIDUAL_TOL) {
                return Err(Error::Inconsistent(format!(
                    "closed-form switching time misses the collinearity line by {residual:e}"
                )));
            }
            rec.switch(t, y, mode.other(), Some(line));
        }
        ratios.push(y.norm() / start.norm());
        if opts.stop_above.is_some_and(|thr| y.norm() > thr * n0) {
            termination = Termination::Threshold;
            break;
        }
        if y.norm() < 1e-280 * n0.max(1.0) {
            termination = Termination::Converged;
            break;
        }
    }
    if opts.sparse {
        if let Some(last) = rec.samples.last().copied() {
            if last.t < t {
                rec.samples.push(Sample { t, state: y, active: last.active, switch_to: None });
            }
        }
    }
    Ok(Trajectory {
        frame: Frame::NormalForm,
        samples: rec.samples,
        switch_events: rec.events,
        half_turn_ratios: ratios,
        rotating: true,
        termination,
    })
}

/// Outward radial cosine of the field of `mode` at `x`.
fn radial_cos(nf: &NormalForm, mode: Mode, x: Vec2) -> f64 {
    let f = *nf_matrix(nf, mode) * x;
    f.dot(x) / (f.norm() * x.norm())
}

/// The field making the smallest angle with the outward radial direction
/// just after `y`, looking a tiny step along the current field.
fn choose_mode(nf: &NormalForm, current: Mode, y: Vec2) -> Mode {
    let dir = *nf_matrix(nf, current) * y;
    let z = y + dir.scale(1e-7 * y.norm() / dir.norm());
    let (ca, cb) = (radial_cos(nf, Mode::A, z), radial_cos(nf, Mode::B, z));
    if (ca - cb).abs() <= 1e-15 {
        current
    } else if ca > cb {
        Mode::A
    } else {
        Mode::B
    }
}

fn line_angle(x: Vec2) -> f64 {
    let a = x.x2.atan2(x.x1);
    let pi = std::f64::consts::PI;
    if a > std::f64::consts::FRAC_PI_2 {
        a - pi
    } else if a <= -std::f64::consts::FRAC_PI_2 {
        a + pi
    } else {
        a
    }
}

fn sliding_free_worst(nf: &NormalForm, zset: &ZSet, x0: Vec2, opts: &WorstOptions) -> Result<Trajectory> {
    let cone: Option<ConeArc> = if nf.case == CaseTag::R1 && nf.inv.k > 0.0 {
        match projective_guas_check(nf, zset)? {
            ProjectiveOutcome::Guas(arc) => Some(arc),
            ProjectiveOutcome::Inconclusive => None,
        }
    } else {
        None
    };
    let n0 = x0.norm();
    let mut y = x0;
    let mut mode = choose_mode(nf, Mode::A, y);
    let mut rec = Recorder::new(opts.sample_dt, opts.sparse);
    rec.push(0.0, y, Active::Mode(mode), None);
    let mut t = 0.0;
    let mut crossings = 0usize;
    let mut windows = 0usize;
    let termination = loop {
        let rate = nf_matrix(nf, mode).eigenvalues().max_real_part().abs().max(1e-12);
        let mut window = 10.0 / rate;
        if let Some(t_max) = opts.t_max {
            window = window.min(t_max - t);
        }
        let roots = z_crossing_times(nf, mode, y, zset, window)?;
        let skip = 1e-9 * window.max(1.0);
        let next = roots.into_iter().find(|&r| r > skip);
        let dur = next.unwrap_or(window);
        let from = y;
        let flow = |s: f64| nf_flow(nf, mode, s).map(|m| m * from).unwrap_or(from);
        rec.arc(t, dur, Active::Mode(mode), flow);
        y = nf_flow(nf, mode, dur)? * y;
        t += dur;
        windows += 1;
        if next.is_some() {
            crossings += 1;
            let chosen = choose_mode(nf, mode, y);
            if chosen != mode {
                mode = chosen;
                rec.switch(t, y, mode, line_of(zset, y));
            } else {
                rec.push(t, y, Active::Mode(mode), None);
            }
        } else {
            rec.push(t, y, Active::Mode(mode), None);
        }
        let in_cone = cone.is_none_or(|arc| arc.contains(line_angle(y)));
        if y.norm() < 1e-9 * n0 && in_cone {
            break Termination::Converged;
        }
        if opts.stop_above.is_some_and(|thr| y.norm() > thr * n0) {
            break Termination::Threshold;
        }
        if opts.t_max.is_some_and(|t_max| t >= t_max) {
            break Termination::TimeLimit;
        }
        if crossings >= MAX_EVENTS || windows >= 10 * MAX_EVENTS {
            break Termination::EventCap;
        }
    };
    Ok(Trajectory {
        frame: Frame::NormalForm,
        samples: rec.samples,
        switch_events: rec.events,
        half_turn_ratios: Vec::new(),
        rotating: false,
        termination,
    })
}

/// Flow `pair` from `x0` under `policy` up to `t_max`, sampling on the
/// `sample_dt` grid and at every switch.
pub fn simulate(pair: &SystemPair, policy: PolicySpec, x0: Vec2, t_max: f64, sample_dt: f64) -> Result<Trajectory> {
    simulate_with(pair, policy, x0, t_max, sample_dt, &Tolerances::default())
}

pub fn simulate_with(
    pair: &SystemPair,
    policy: PolicySpec,
    x0: Vec2,
    t_max: f64,
    sample_dt: f64,
    tol: &Tolerances,
) -> Result<Trajectory> {
    if !(t_max > 0.0 && sample_dt > 0.0) {
        return Err(Error::PreconditionViolated("t_max and sample_dt must be positive".into()));
    }
    if !x0.is_finite() || x0.norm() == 0.0 {
        return Err(Error::PreconditionViolated("initial state must be finite and nonzero".into()));
    }
    if !pair.a.is_finite() || !pair.b.is_finite() {
        return Err(crate::error::LinalgError::NonFinite.into());
    }
    policy.validate()?;
    match policy {
        PolicySpec::ConstantU { u } => Ok(constant(pair, u, x0, t_max, sample_dt)),
        PolicySpec::RandomDwell { seed, dwell_min, dwell_max } => {
            Ok(random_dwell(pair, seed, dwell_min, dwell_max, x0, t_max, sample_dt))
        }
        PolicySpec::WorstCase => worst_case(pair, x0, t_max, sample_dt, tol),
    }
}

fn constant(pair: &SystemPair, u: f64, x0: Vec2, t_max: f64, dt: f64) -> Trajectory {
    let m = pair.a * u + pair.b * (1.0 - u);
    let active = if u == 1.0 {
        Active::Mode(Mode::A)
    } else if u == 0.0 {
        Active::Mode(Mode::B)
    } else {
        Active::Mixed(u)
    };
    let mut rec = Recorder::new(Some(dt), false);
    rec.push(0.0, x0, active, None);
    let mut termination = Termination::TimeLimit;
    let n = (t_max / dt).floor() as u64;
    for j in 1..=n {
        let t = j as f64 * dt;
        let x = expm_reference(&m, t) * x0;
        rec.push(t, x, active, None);
        if !(x.norm() <= GROWTH_LIMIT * x0.norm()) {
            termination = Termination::Threshold;
            break;
        }
    }
    if termination == Termination::TimeLimit && rec.samples.last().is_some_and(|s| s.t < t_max) {
        rec.push(t_max, expm_reference(&m, t_max) * x0, active, None);
    }
    Trajectory {
        frame: Frame::Original,
        samples: rec.samples,
        switch_events: Vec::new(),
        half_turn_ratios: Vec::new(),
        rotating: false,
        termination,
    }
}

fn random_dwell(pair: &SystemPair, seed: u64, dmin: f64, dmax: f64, x0: Vec2, t_max: f64, dt: f64) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder::new(Some(dt), false);
    let mut mode = Mode::A;
    let mut x = x0;
    let mut t = 0.0;
    rec.push(0.0, x, Active::Mode(mode), None);
    let mut termination = Termination::TimeLimit;
    while t < t_max {
        let dwell = if dmax > dmin { rng.random_range(dmin..=dmax) } else { dmin };
        let dur = dwell.min(t_max - t);
        let m = match mode {
            Mode::A => pair.a,
            Mode::B => pair.b,
        };
        let from = x;
        rec.arc(t, dur, Active::Mode(mode), |s| expm_reference(&m, s) * from);
        x = expm_reference(&m, dur) * x;
        t += dur;
        if !(x.norm() <= GROWTH_LIMIT * x0.norm()) {
            rec.push(t, x, Active::Mode(mode), None);
            termination = Termination::Threshold;
            break;
        }
        if t < t_max {
            mode = mode.other();
            rec.switch(t, x, mode, None);
        } else {
            rec.push(t, x, Active::Mode(mode), None);
        }
    }
    Trajectory {
        frame: Frame::Original,
        samples: rec.samples,
        switch_events: rec.events,
        half_turn_ratios: Vec::new(),
        rotating: false,
        termination,
    }
}

fn worst_case(pair: &SystemPair, x0: Vec2, t_max: f64, dt: f64, tol: &Tolerances) -> Result<Trajectory> {
    let nf = normal_form(pair, tol)?;
    let y0 = nf
        .from_original(x0)
        .ok_or_else(|| Error::Inconsistent("singular normal-form transform".into()))?;
    let opts = WorstOptions {
        max_half_turns: usize::MAX,
        t_max: Some(t_max * nf.tau),
        sample_dt: Some(dt * nf.tau),
        stop_above: Some(GROWTH_LIMIT),
        sparse: false,
    };
    let traj = worst_trajectory_with(&nf, y0, &opts, tol)?;
    Ok(to_original(&nf, traj))
}

/// Express a normal-form trajectory in input coordinates and time.
pub fn to_original(nf: &NormalForm, traj: Trajectory) -> Trajectory {
    if traj.frame == Frame::Original {
        return traj;
    }
    let relabel = |a: Active| match a {
        Active::Mode(m) => Active::Mode(m.relabel(nf.swapped)),
        other => other,
    };
    let samples = traj
        .samples
        .into_iter()
        .map(|s| Sample {
            t: s.t / nf.tau,
            state: nf.to_original(s.state),
            active: relabel(s.active),
            switch_to: s.switch_to.map(|m| m.relabel(nf.swapped)),
        })
        .collect();
    let switch_events = traj
        .switch_events
        .into_iter()
        .map(|e| SwitchEvent {
            t: e.t / nf.tau,
            line: e.line,
            state: nf.to_original(e.state),
            to: e.to.relabel(nf.swapped),
        })
        .collect();
    Trajectory { frame: Frame::Original, samples, switch_events, ..traj }
}

pub const CSV_HEADER: &str = "t,x1,x2,norm,active,event";

fn event_label(s: &Sample) -> &'static str {
    match s.switch_to {
        Some(Mode::A) => "switch+",
        Some(Mode::B) => "switch-",
        None => "",
    }
}

pub fn write_csv<W: Write>(traj: &Trajectory, mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for s in &traj.samples {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            s.t,
            s.state.x1,
            s.state.x2,
            s.state.norm(),
            s.active,
            event_label(s)
        )?;
    }
    Ok(())
}
