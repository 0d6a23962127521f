//! The stability decision tree and its certificates.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::collinearity::{self, chi_vanishes, discriminant_delta, CollinearityData, Orientation, ProjectiveSlope, ZSet};
use crate::error::{Error, Result};
use crate::invariants::{
    normal_form_oriented, validate_h0, CaseTag, DegeneracyNote, H0Outcome, InvariantTriple, NormalForm,
    RejectionReason, SystemPair,
};
use crate::linalg2::{Mat2, Vec2};
use crate::tolerance::{Tolerances, FRAGILE_FACTOR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaBranch {
    TrigArctan,
    TrigHalfPi,
    Hyperbolic,
    Parabolic,
}

/// Duration of the `B`-flow carrying `D⁻` onto `D⁺` in normal-form time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub theta: f64,
    pub branch: ThetaBranch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RatioBranch {
    GenericBranch,
    DegenerateBranch,
}

/// Norm gain of the worst trajectory over half a turn. Times are in
/// normal-form units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioR {
    #[serde(rename = "R")]
    pub r: f64,
    pub t1: f64,
    pub t2: f64,
    pub formula_branch: RatioBranch,
    pub theta_branch: ThetaBranch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "GUAS")]
    Guas,
    #[serde(rename = "UniformlyStableNotGUAS")]
    UniformlyStableNotGuas,
    Unbounded,
}

impl VerdictKind {
    pub fn label(self) -> &'static str {
        match self {
            VerdictKind::Guas => "GUAS",
            VerdictKind::UniformlyStableNotGuas => "UniformlyStableNotGUAS",
            VerdictKind::Unbounded => "Unbounded",
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Arc of the projective line, as line angles in radians. The arc runs
/// counterclockwise from `start` to `end` (`end − start < π`); angles are
/// taken mod π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeArc {
    pub start: f64,
    pub end: f64,
    pub m_plus: ProjectiveSlope,
    pub m_minus: ProjectiveSlope,
    pub b_plus_inside: bool,
    pub b_minus_inside: bool,
}

impl ConeArc {
    /// Whether the line at `angle` lies strictly inside the arc.
    pub fn contains(&self, angle: f64) -> bool {
        let pi = std::f64::consts::PI;
        let mut a = angle;
        while a <= self.start {
            a += pi;
        }
        while a > self.start + pi {
            a -= pi;
        }
        a < self.end
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Certificate {
    DefiniteQ,
    /// `u0` weights the first input matrix; the eigenvalue is in input time
    /// units.
    StaticInstability { u0: f64, unstable_eigenvalue: f64 },
    RatioRotation(RatioR),
    ProjectiveCone(ConeArc),
    /// `V(y) = c₀·y₁² + c₁·y₂²` in normal-form coordinates, `xᵀ·P·x` in
    /// input coordinates.
    SemidefiniteLyapunov { v_coeffs: [f64; 2], v_matrix: Mat2 },
    /// `Z` is a single line along which the fields point the same way.
    CoincidentDirectLines,
    SingularCase,
    Commuting,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::DefiniteQ => "DefiniteQ",
            Certificate::StaticInstability { .. } => "StaticInstability",
            Certificate::RatioRotation(_) => "RatioRotation",
            Certificate::ProjectiveCone(_) => "ProjectiveCone",
            Certificate::SemidefiniteLyapunov { .. } => "SemidefiniteLyapunov",
            Certificate::CoincidentDirectLines => "CoincidentDirectLines",
            Certificate::SingularCase => "SingularCase",
            Certificate::Commuting => "Commuting",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
}

/// Everything computed on the way to a verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub verdict: Verdict,
    pub nf: Option<NormalForm>,
    pub collinearity: Option<CollinearityData>,
    pub notes: Vec<DegeneracyNote>,
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(what.to_string()))
    }
}

pub fn theta(inv: &InvariantTriple, big_delta: f64) -> Result<ThetaValue> {
    require(inv.k < 0.0, "theta needs k < 0")?;
    require(big_delta > 0.0, "theta needs Delta > 0")?;
    let (eta, rho, k) = (inv.eta, inv.rho, inv.k);
    let sq = big_delta.sqrt();
    match inv.delta_sign {
        -1 => {
            let den = k * rho + 2.0 * eta;
            if den == 0.0 {
                Ok(ThetaValue { theta: FRAC_PI_2, branch: ThetaBranch::TrigHalfPi })
            } else {
                Ok(ThetaValue { theta: sq.atan2(den), branch: ThetaBranch::TrigArctan })
            }
        }
        1 => {
            let arg = sq / (k * rho - 2.0 * eta);
            if !(arg > 0.0 && arg < 1.0) {
                return Err(Error::Inconsistent(format!("hyperbolic angle argument {arg} outside (0, 1)")));
            }
            Ok(ThetaValue { theta: arg.atanh(), branch: ThetaBranch::Hyperbolic })
        }
        _ => {
            let t = sq / (k * rho);
            if !(t > 0.0) {
                return Err(Error::Inconsistent(format!("parabolic angle {t} is not positive")));
            }
            Ok(ThetaValue { theta: t, branch: ThetaBranch::Parabolic })
        }
    }
}

/// Closed-form `ℛ` with the branch chosen by whether `ρ − sign(δ)·η/k`
/// vanishes under the default tolerances.
pub fn ratio_r(inv: &InvariantTriple, nf: &NormalForm) -> Result<RatioR> {
    ratio_r_with(inv, nf, &Tolerances::default())
}

pub fn ratio_r_with(inv: &InvariantTriple, nf: &NormalForm, tol: &Tolerances) -> Result<RatioR> {
    require(nf.case.is_regular(), "ratio R needs a regular case")?;
    require(inv.k < 2.0 * inv.eta * inv.rho, "ratio R needs k < 2 eta rho")?;
    let big_delta = discriminant_delta(inv);
    let th = theta(inv, big_delta)?;
    let (eta, rho, k, s) = (inv.eta, inv.rho, inv.k, inv.sign());
    let sq = big_delta.sqrt();
    let growth = (sq / k + rho * th.theta).exp();
    let degenerate = inv.delta_sign < 0 && chi_vanishes(inv, tol);
    let r = if degenerate {
        (k * k + eta * eta).sqrt() / -eta * growth
    } else {
        let tr_ab = (nf.a_nf * nf.b_nf).trace();
        let det_b = nf.b_nf.det();
        let num = (-k + sq) / (-k - sq) * (2.0 * k * rho * rho - s * (tr_ab + sq));
        let den = 2.0 * k * det_b.sqrt() * inv.chi();
        (num / den).abs() * growth
    };
    if !r.is_finite() {
        return Err(Error::Inconsistent(format!("ratio R evaluated to {r}")));
    }
    Ok(RatioR {
        r,
        t1: sq / (eta * k),
        t2: th.theta,
        formula_branch: if degenerate { RatioBranch::DegenerateBranch } else { RatioBranch::GenericBranch },
        theta_branch: th.branch,
    })
}

/// `(u₀, λ)` with `λ > 0` an eigenvalue of `u₀A_nf + (1−u₀)B_nf`.
pub fn static_instability_certificate(nf: &NormalForm, alphas: (f64, f64)) -> Result<(f64, f64)> {
    let (ap, am) = alphas;
    let prod = ap * am;
    let sum = ap + am;
    let den = 1.0 + prod - sum;
    require(den != 0.0, "static instability needs 1 + a+a- - (a+ + a-) != 0")?;
    let u0 = (prod - 0.5 * sum) / den;
    require(u0 > 0.0 && u0 < 1.0, "static instability needs u0 in (0, 1)")?;
    let m = nf.a_nf * u0 + nf.b_nf * (1.0 - u0);
    if !(m.det() < 0.0) {
        return Err(Error::Inconsistent(format!("det M(u0) = {} is not negative", m.det())));
    }
    Ok((u0, m.eigenvalues().max_real_part()))
}

/// Pointwise check of the semidefinite Lyapunov identities at fixed
/// pseudo-random points.
pub fn semidefinite_lyapunov_check(nf: &NormalForm) -> bool {
    let (eta, rho) = (nf.inv.eta, nf.inv.rho);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..100).all(|_| {
        let x = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let grad = Vec2::new(2.0 * x.x1, 2.0 * x.x2 / (4.0 * eta * eta));
        let sq = (x.x2 + 2.0 * eta * x.x1).powi(2);
        let va = grad.dot(nf.a_nf * x);
        let vb = grad.dot(nf.b_nf * x);
        let (ea, eb) = (sq / (2.0 * eta), rho * sq / (2.0 * eta * eta));
        let scale = 1.0f64.max(1.0 / (eta * eta)).max(rho.abs() / (eta * eta));
        let tol = 1e-10 * scale;
        (va - ea).abs() <= tol && (vb - eb).abs() <= tol && va <= tol && vb <= tol
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectiveOutcome {
    Guas(ConeArc),
    Inconclusive,
}

/// Looks for an eigenline of `B_nf` in the component of `RP¹ ∖ Z` that
/// contains the eigenline of `A_nf`.
pub fn projective_guas_check(nf: &NormalForm, zset: &ZSet) -> Result<ProjectiveOutcome> {
    let inv = &nf.inv;
    require(nf.case == CaseTag::R1, "projective check needs the R1 case")?;
    require(inv.k > 0.0, "projective check needs k > 0")?;
    let ZSet::TwoLines { plus, minus } = *zset else {
        return Err(Error::PreconditionViolated("projective check needs two collinearity lines".into()));
    };
    let pi = std::f64::consts::PI;
    let (pa, pb) = (plus.angle(), minus.angle());
    let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
    let inside = |phi: f64| lo < phi && phi < hi;
    let (start, end) = if inside(0.0) { (lo, hi) } else { (hi, lo + pi) };
    let mut arc = ConeArc { start, end, m_plus: plus, m_minus: minus, b_plus_inside: false, b_minus_inside: false };
    arc.b_plus_inside = arc.contains(inv.k.atan());
    arc.b_minus_inside = arc.contains((-inv.k).atan());
    Ok(if arc.b_plus_inside || arc.b_minus_inside {
        ProjectiveOutcome::Guas(arc)
    } else {
        ProjectiveOutcome::Inconclusive
    })
}

pub fn classify(pair: &SystemPair) -> Result<Verdict> {
    classify_with(pair, &Tolerances::default())
}

pub fn classify_with(pair: &SystemPair, tol: &Tolerances) -> Result<Verdict> {
    Ok(analyze_pair(pair, tol)?.verdict)
}

fn verdict(kind: VerdictKind, certificate: Certificate) -> Verdict {
    Verdict { kind, certificate, warnings: Vec::new() }
}

/// Runs the full decision tree.
pub fn analyze_pair(pair: &SystemPair, tol: &Tolerances) -> Result<Analysis> {
    let ctx = match validate_h0(pair, tol)? {
        H0Outcome::Ok(ctx) => ctx,
        H0Outcome::Rejected(RejectionReason::Commuting) => {
            return Ok(Analysis {
                verdict: verdict(VerdictKind::Guas, Certificate::Commuting),
                nf: None,
                collinearity: None,
                notes: Vec::new(),
            })
        }
        H0Outcome::Rejected(r) => return Err(r.into()),
    };
    let mut nf = normal_form_oriented(&ctx, tol)?;
    let mut notes = nf.notes.clone();
    let mut data = collinearity::analyze_noted(&nf, tol, &mut notes)?;
    if data.big_delta_sign == 0 && nf.case.is_regular() {
        // Δ was declared zero: move k onto the root so the certificate is exact
        let k = collinearity::coincident_k(&nf.inv);
        nf.inv.k = k;
        nf.b_nf = SystemPair::normal(nf.case, nf.inv.eta, nf.inv.rho, k).b;
        data = collinearity::analyze_noted(&nf, tol, &mut Vec::new())?;
        if data.big_delta_sign != 0 {
            return Err(Error::Inconsistent(format!("Delta = {} after moving k to {k}", data.big_delta)));
        }
    }
    let mut v = decide(&nf, &data, pair, tol)?;
    let mut warnings: Vec<String> = notes.iter().map(DegeneracyNote::message).collect();
    warnings.append(&mut v.warnings);
    v.warnings = warnings;
    Ok(Analysis { verdict: v, nf: Some(nf), collinearity: Some(data), notes })
}

fn decide(nf: &NormalForm, data: &CollinearityData, user: &SystemPair, tol: &Tolerances) -> Result<Verdict> {
    let inv = &nf.inv;
    match (data.big_delta_sign, data.orientation) {
        (-1, _) => Ok(verdict(VerdictKind::Guas, Certificate::DefiniteQ)),
        (0, Orientation::Direct) => Ok(verdict(VerdictKind::Guas, Certificate::CoincidentDirectLines)),
        (0, _) => {
            if !semidefinite_lyapunov_check(nf) {
                return Err(Error::Inconsistent("semidefinite Lyapunov identities failed".into()));
            }
            let d = Mat2::diag(1.0, 1.0 / (4.0 * inv.eta * inv.eta));
            let ti = nf
                .t
                .inverse()
                .ok_or_else(|| Error::Inconsistent("singular normal-form transform".into()))?;
            let p = ti.transpose() * d * ti;
            Ok(verdict(
                VerdictKind::UniformlyStableNotGuas,
                Certificate::SemidefiniteLyapunov { v_coeffs: [d.a11, d.a22], v_matrix: p },
            ))
        }
        (_, Orientation::Inverse) => {
            let alphas = match (data.alpha_plus, data.alpha_minus) {
                (Some(p), Some(m)) => (p, m),
                _ => return Err(Error::Inconsistent("missing collinearity factors".into())),
            };
            let (u0_nf, lambda_nf) = static_instability_certificate(nf, alphas)?;
            let u0 = if nf.swapped { 1.0 - u0_nf } else { u0_nf };
            let lambda = lambda_nf * nf.tau;
            let m = user.a * u0 + user.b * (1.0 - u0);
            let direct = m.eigenvalues().max_real_part();
            if !(m.det() < 0.0) || (direct - lambda).abs() > 1e-6 * lambda.abs().max(m.max_abs()) {
                return Err(Error::Inconsistent(format!(
                    "static instability does not carry over to input coordinates (eigenvalue {direct} vs {lambda})"
                )));
            }
            Ok(verdict(
                VerdictKind::Unbounded,
                Certificate::StaticInstability { u0, unstable_eigenvalue: direct },
            ))
        }
        (_, _) if inv.k == 0.0 => Ok(verdict(VerdictKind::Guas, Certificate::SingularCase)),
        (_, _) if inv.k > 0.0 => {
            if nf.case != CaseTag::R1 {
                return Err(Error::Inconsistent(format!(
                    "positive k = {} with direct orientation in case {}",
                    inv.k, nf.case
                )));
            }
            match projective_guas_check(nf, &data.zset)? {
                ProjectiveOutcome::Guas(arc) => Ok(verdict(VerdictKind::Guas, Certificate::ProjectiveCone(arc))),
                ProjectiveOutcome::Inconclusive => {
                    Err(Error::Inconsistent("projective cone check was inconclusive".into()))
                }
            }
        }
        (_, _) => {
            let rr = ratio_r_with(inv, nf, tol)?;
            let mut v = if tol.ratio_is_one(rr.r) {
                let mut v = verdict(VerdictKind::UniformlyStableNotGuas, Certificate::RatioRotation(rr));
                v.warnings.push(format!("fragile classification: R = {} is within tolerance of 1", rr.r));
                v
            } else if rr.r < 1.0 {
                verdict(VerdictKind::Guas, Certificate::RatioRotation(rr))
            } else {
                verdict(VerdictKind::Unbounded, Certificate::RatioRotation(rr))
            };
            if v.warnings.is_empty() && (rr.r - 1.0).abs() <= FRAGILE_FACTOR * tol.ratio * rr.r.max(1.0) {
                v.warnings.push(format!("fragile classification: R = {} is close to 1", rr.r));
            }
            Ok(v)
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::normal_form;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn nf(case: CaseTag, eta: f64, rho: f64, k: f64) -> NormalForm {
        normal_form(&SystemPair::normal(case, eta, rho, k), &tol()).unwrap()
    }

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps * b.abs().max(1.0)
    }

    #[test]
    fn theta_branches() {
        let t = theta(&nf(CaseTag::Rminus1, -1.0, -1.0, -1.0).inv, 1.0).unwrap();
        assert!(close(t.theta, 0.75 * PI, 1e-14));
        assert_eq!(t.branch, ThetaBranch::TrigArctan);

        let t = theta(&nf(CaseTag::R1, -1.0, -2.0, -1.0).inv, 13.0).unwrap();
        assert!(close(t.theta, 1.479572267305463, 1e-13));
        assert_eq!(t.branch, ThetaBranch::Hyperbolic);

        let t = theta(&nf(CaseTag::R0, -1.0, -1.0, -1.0).inv, 5.0).unwrap();
        assert!(close(t.theta, 5f64.sqrt(), 1e-14));
        assert_eq!(t.branch, ThetaBranch::Parabolic);
    }

    #[test]
    fn theta_half_pi_when_denominator_vanishes() {
        // kρ + 2η = 0 with k = −2, ρ = −1, η = −1
        let t = theta(&nf(CaseTag::Rminus1, -1.0, -1.0, -2.0).inv, 4.0 + 8.0 - 4.0).unwrap();
        assert_eq!(t.branch, ThetaBranch::TrigHalfPi);
        assert_eq!(t.theta, FRAC_PI_2);
    }

    #[test]
    fn theta_rejects_bad_input() {
        let inv = nf(CaseTag::Rminus1, -1.0, -1.0, 1.0).inv;
        assert!(matches!(theta(&inv, 1.0), Err(Error::PreconditionViolated(_))));
        let inv = nf(CaseTag::Rminus1, -1.0, -1.0, -1.0).inv;
        assert!(matches!(theta(&inv, 0.0), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn ratio_examples() {
        let n = nf(CaseTag::Rminus1, -1.0, -1.0, -1.0);
        let r = ratio_r(&n.inv, &n).unwrap();
        assert_eq!(r.formula_branch, RatioBranch::DegenerateBranch);
        assert!(close(r.r, 0.049310368782674, 1e-12));
        assert!(close(r.r, 2f64.sqrt() * (-1.0 - 0.75 * PI).exp(), 1e-13));
        assert!(close(r.t1, 1.0, 1e-14));

        let n = nf(CaseTag::Rminus1, -0.7, -1.3, -0.7 / 1.3);
        let r = ratio_r(&n.inv, &n).unwrap();
        assert_eq!(r.formula_branch, RatioBranch::DegenerateBranch);
        assert!(close(r.r, 0.018329201084512674, 1e-12));

        let n = nf(CaseTag::R1, -1.0, -2.0, -1.0);
        let r = ratio_r(&n.inv, &n).unwrap();
        assert_eq!(r.formula_branch, RatioBranch::GenericBranch);
        assert!(close(r.r, 0.0035008774468514, 1e-12));
        assert!(close(r.t1, 13f64.sqrt(), 1e-14));

        let n = nf(CaseTag::R0, -1.0, -1.0, -1.0);
        let r = ratio_r(&n.inv, &n).unwrap();
        assert!(close(r.r, 0.0299055168706815, 1e-12));

        let n = nf(CaseTag::Rminus1, -0.01, -0.01, -10.0);
        let r = ratio_r(&n.inv, &n).unwrap();
        assert!(close(r.r, 362.157179452, 1e-9));
        assert!(close(r.t2, 1.562796641441907, 1e-12));
    }

    #[test]
    fn static_instability_example() {
        let n = nf(CaseTag::Rminus1, -0.1, -0.1, 1.0);
        let data = collinearity::analyze(&n, &tol()).unwrap();
        assert_eq!(data.orientation, Orientation::Inverse);
        let alphas = (data.alpha_plus.unwrap(), data.alpha_minus.unwrap());
        let (u0, lam) = static_instability_certificate(&n, alphas).unwrap();
        assert!(close(u0, 0.75, 1e-12));
        assert!(close(lam, -0.1 + 0.125f64.sqrt(), 1e-12));
        let m = n.a_nf * u0 + n.b_nf * (1.0 - u0);
        assert!(close(m.det(), -0.115, 1e-12));
        let (p, s) = (alphas.0 * alphas.1, alphas.0 + alphas.1);
        let expected = -data.big_delta / (4.0 * n.a_nf.det() * (1.0 + p - s));
        assert!((m.det() - expected).abs() <= 1e-9);
    }

    #[test]
    fn lyapunov_example() {
        let k = 2.0 + 2.0 * 2f64.sqrt();
        let n = nf(CaseTag::Rminus1, -1.0, -1.0, k);
        assert!(semidefinite_lyapunov_check(&n));
        let v = classify(&n.pair()).unwrap();
        assert_eq!(v.kind, VerdictKind::UniformlyStableNotGuas);
        match v.certificate {
            Certificate::SemidefiniteLyapunov { v_coeffs, .. } => {
                assert_eq!(v_coeffs, [1.0, 0.25]);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn lyapunov_point_values() {
        let n = nf(CaseTag::Rminus1, -1.0, -1.0, 2.0 + 2.0 * 2f64.sqrt());
        let x = Vec2::new(1.0, 0.0);
        let grad = Vec2::new(2.0 * x.x1, 2.0 * x.x2 / 4.0);
        assert!(close(grad.dot(n.a_nf * x), -2.0, 1e-14));
        let on_line = Vec2::new(1.0, 2.0);
        let grad = Vec2::new(2.0, 1.0);
        assert_eq!(grad.dot(n.a_nf * on_line), 0.0);
    }

    #[test]
    fn projective_examples() {
        let n = nf(CaseTag::R1, -1.0, -2.0, 0.52);
        let data = collinearity::analyze(&n, &tol()).unwrap();
        match projective_guas_check(&n, &data.zset).unwrap() {
            ProjectiveOutcome::Guas(arc) => {
                assert!(arc.contains(0.0));
                assert!(arc.b_plus_inside && arc.b_minus_inside);
                assert!(!arc.contains(1.2205f64.atan()));
            }
            ProjectiveOutcome::Inconclusive => panic!("expected a cone"),
        }

        // ρ − η/k = 0: k = η/ρ
        let n = nf(CaseTag::R1, -1.0, -2.0, 0.5);
        let data = collinearity::analyze(&n, &tol()).unwrap();
        let ProjectiveOutcome::Guas(arc) = projective_guas_check(&n, &data.zset).unwrap() else {
            panic!("expected a cone");
        };
        assert!(arc.b_plus_inside);
    }

    #[test]
    fn decision_tree_examples() {
        let pair = SystemPair::new(Mat2::new(-1.0, 1.0, 0.0, -1.0), Mat2::diag(-2.0, -4.0));
        let v = classify(&pair).unwrap();
        assert_eq!((v.kind, v.certificate.name()), (VerdictKind::Guas, "SingularCase"));

        let v = classify(&SystemPair::normal(CaseTag::Rminus1, -0.1, -0.1, 1.0)).unwrap();
        assert_eq!(v.kind, VerdictKind::Unbounded);
        match v.certificate {
            Certificate::StaticInstability { u0, .. } => assert!(close(u0, 0.75, 1e-12)),
            other => panic!("unexpected certificate {other:?}"),
        }

        let v = classify(&SystemPair::normal(CaseTag::Rminus1, -1.0, -1.0, 2.0 - 2.0 * 2f64.sqrt())).unwrap();
        assert_eq!((v.kind, v.certificate.name()), (VerdictKind::Guas, "CoincidentDirectLines"));

        let v = classify(&SystemPair::normal(CaseTag::Rminus1, -0.01, -0.01, -10.0)).unwrap();
        assert_eq!((v.kind, v.certificate.name()), (VerdictKind::Unbounded, "RatioRotation"));
    }

    #[test]
    fn commuting_and_out_of_scope() {
        let a = Mat2::new(-1.0, 1.0, 0.0, -1.0);
        let v = classify(&SystemPair::new(a, a * 2.0)).unwrap();
        assert_eq!((v.kind, v.certificate.name()), (VerdictKind::Guas, "Commuting"));

        let pair = SystemPair::new(Mat2::diag(-1.0, -2.0), Mat2::new(-1.0, 1.0, 1.0, -3.0));
        assert!(matches!(classify(&pair), Err(Error::BothDiagonalizable)));

        let pair = SystemPair::new(a, Mat2::diag(-1.0, 0.5));
        assert!(matches!(classify(&pair), Err(Error::NotHurwitz { .. })));
    }

    #[test]
    fn swapped_static_instability_maps_weight() {
        let pair = SystemPair::normal(CaseTag::Rminus1, -0.1, -0.1, 1.0).swapped();
        let v = classify(&pair).unwrap();
        match v.certificate {
            Certificate::StaticInstability { u0, unstable_eigenvalue } => {
                assert!(close(u0, 0.25, 1e-12));
                let m = pair.a * u0 + pair.b * (1.0 - u0);
                assert!(close(m.eigenvalues().max_real_part(), unstable_eigenvalue, 1e-12));
                assert!(unstable_eigenvalue > 0.0);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }
}
