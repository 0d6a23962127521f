//! The set `Z` where the two vector fields are collinear.
//!
//! `Z` is the zero set of the binary quadratic form `Q(x) = det(Ax, Bx)`,
//! whose discriminant is `Δ = k² − 4ηρk + 4·sign(δ)·η²`. When `Δ ≥ 0` the
//! lines of `Z` carry collinearity factors `α±` with `Bx = α±·Ax`; their
//! common sign tells whether the fields point the same way (direct) or
//! opposite ways (inverse).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{decide_zero, CaseTag, DegeneracyNote, InvariantTriple, NormalForm};
use crate::linalg2::{Mat2, Vec2};
use crate::tolerance::Tolerances;

/// Slope of a line through the origin, with the vertical line as a
/// first-class value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProjectiveSlope {
    Finite(f64),
    Infinity,
}

impl ProjectiveSlope {
    /// `(1, m)`, or `(0, 1)` for the vertical line.
    pub fn direction(self) -> Vec2 {
        match self {
            ProjectiveSlope::Finite(m) => Vec2::new(1.0, m),
            ProjectiveSlope::Infinity => Vec2::new(0.0, 1.0),
        }
    }

    /// Angle of the line in `(−π/2, π/2]`.
    pub fn angle(self) -> f64 {
        match self {
            ProjectiveSlope::Finite(m) => m.atan(),
            ProjectiveSlope::Infinity => std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ProjectiveSlope::Finite(m) => Some(m),
            ProjectiveSlope::Infinity => None,
        }
    }

    /// Signed distance-like residual of `x` from the line, relative to `|x|`.
    pub fn line_residual(self, x: Vec2) -> f64 {
        let d = self.direction();
        d.cross(x).abs() / (d.norm() * x.norm())
    }
}

impl std::fmt::Display for ProjectiveSlope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectiveSlope::Finite(m) => write!(f, "{m}"),
            ProjectiveSlope::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ZSet {
    OriginOnly,
    OneLine(ProjectiveSlope),
    TwoLines { plus: ProjectiveSlope, minus: ProjectiveSlope },
}

impl ZSet {
    /// `(D⁺, D⁻)`; both equal for a single line.
    pub fn lines(&self) -> Option<(ProjectiveSlope, ProjectiveSlope)> {
        match *self {
            ZSet::OriginOnly => None,
            ZSet::OneLine(m) => Some((m, m)),
            ZSet::TwoLines { plus, minus } => Some((plus, minus)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Direct,
    Inverse,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollinearityData {
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    /// `sign(Δ)` under the degeneracy tolerance.
    pub big_delta_sign: i8,
    pub zset: ZSet,
    pub alpha_plus: Option<f64>,
    pub alpha_minus: Option<f64>,
    pub orientation: Orientation,
}

/// `k² − 4ηρk + sign(δ)·4η²`.
pub fn discriminant_delta(inv: &InvariantTriple) -> f64 {
    inv.k * inv.k - 4.0 * inv.eta * inv.rho * inv.k + inv.sign() * 4.0 * inv.eta * inv.eta
}

/// The root of `k ↦ Δ` nearest to the current `k`: `2ηρ ± 2|η|·√(ρ² − sign(δ))`.
pub fn coincident_k(inv: &InvariantTriple) -> f64 {
    let (eta, rho) = (inv.eta, inv.rho);
    let w = 2.0 * eta.abs() * (rho * rho - inv.sign()).max(0.0).sqrt();
    let mid = 2.0 * eta * rho;
    if inv.k >= mid {
        mid + w
    } else {
        mid - w
    }
}

/// Magnitude of the terms that make up `Δ`, for its zero test.
fn delta_scale(inv: &InvariantTriple) -> f64 {
    let terms = [inv.k * inv.k, 4.0 * inv.eta * inv.rho * inv.k, 4.0 * inv.eta * inv.eta];
    terms.iter().fold(0.0f64, |m, t| m.max(t.abs()))
}

pub(crate) fn delta_sign_noted(inv: &InvariantTriple, tol: &Tolerances, notes: &mut Vec<DegeneracyNote>) -> i8 {
    let d = discriminant_delta(inv);
    if decide_zero("Delta", d, delta_scale(inv), tol, notes) {
        0
    } else if d > 0.0 {
        1
    } else {
        -1
    }
}

/// Coefficients `(c₁₁, c₁₂, c₂₂)` of `Q = c₁₁x₁² + c₁₂x₁x₂ + c₂₂x₂²` in
/// normal-form coordinates.
pub fn q_coefficients(inv: &InvariantTriple, case: CaseTag) -> (f64, f64, f64) {
    let (eta, rho, k) = (inv.eta, inv.rho, inv.k);
    match case {
        CaseTag::S1 => (0.0, 2.0 * eta, rho + 1.0),
        CaseTag::Sminus1 => (0.0, -2.0 * eta, rho - 1.0),
        _ => (eta * k, k, inv.chi()),
    }
}

/// `Q(x) = det(A_nf·x, B_nf·x)`.
pub fn quadratic_q(nf: &NormalForm, x: Vec2) -> f64 {
    (nf.a_nf * x).cross(nf.b_nf * x)
}

/// `Q(x)` from the case formula.
pub fn quadratic_q_formula(inv: &InvariantTriple, case: CaseTag, x: Vec2) -> f64 {
    let (c11, c12, c22) = q_coefficients(inv, case);
    c11 * x.x1 * x.x1 + c12 * x.x1 * x.x2 + c22 * x.x2 * x.x2
}

/// `det(Ax, Bx)` for an arbitrary pair.
pub fn q_of(a: &Mat2, b: &Mat2, x: Vec2) -> f64 {
    (*a * x).cross(*b * x)
}

fn chi_scale(inv: &InvariantTriple) -> f64 {
    inv.rho.abs().max((inv.eta / inv.k).abs())
}

/// Whether `ρ − sign(δ)·η/k` vanishes, putting one line of `Z` on the
/// vertical axis. Regular cases only.
pub fn chi_vanishes(inv: &InvariantTriple, tol: &Tolerances) -> bool {
    tol.is_zero(inv.chi(), chi_scale(inv))
}

pub fn slopes(inv: &InvariantTriple, case: CaseTag, tol: &Tolerances) -> ZSet {
    slopes_noted(inv, case, tol, &mut Vec::new())
}

pub(crate) fn slopes_noted(
    inv: &InvariantTriple,
    case: CaseTag,
    tol: &Tolerances,
    notes: &mut Vec<DegeneracyNote>,
) -> ZSet {
    let sign = if case.is_regular() { delta_sign_noted(inv, tol, notes) } else { 1 };
    slopes_given(inv, case, sign, tol, notes)
}

fn slopes_given(
    inv: &InvariantTriple,
    case: CaseTag,
    big_delta_sign: i8,
    tol: &Tolerances,
    notes: &mut Vec<DegeneracyNote>,
) -> ZSet {
    let (eta, rho, k) = (inv.eta, inv.rho, inv.k);
    match case {
        CaseTag::S1 => {
            return ZSet::TwoLines {
                plus: ProjectiveSlope::Finite(0.0),
                minus: ProjectiveSlope::Finite(-2.0 * eta / (rho + 1.0)),
            }
        }
        CaseTag::Sminus1 => {
            return ZSet::TwoLines {
                plus: ProjectiveSlope::Finite(0.0),
                minus: ProjectiveSlope::Finite(2.0 * eta / (rho - 1.0)),
            }
        }
        _ => {}
    }

    let big_delta = discriminant_delta(inv);
    let chi = inv.chi();
    match big_delta_sign {
        -1 => ZSet::OriginOnly,
        0 => ZSet::OneLine(ProjectiveSlope::Finite(-k / (2.0 * chi))),
        _ => {
            let root = big_delta.sqrt();
            let chi_zero = decide_zero("rho - sign(delta) eta/k", chi, chi_scale(inv), tol, notes);
            // Roots of χm² + km + ηk = 0, each from the cancellation-free
            // formula; a vanishing χ sends one root to the vertical line.
            let over_chi = |num: f64| {
                if chi_zero {
                    ProjectiveSlope::Infinity
                } else {
                    ProjectiveSlope::Finite(num / (2.0 * chi))
                }
            };
            let (plus, minus) = if k < 0.0 {
                (over_chi(-k + root), ProjectiveSlope::Finite(2.0 * eta * k / (-k + root)))
            } else {
                (ProjectiveSlope::Finite(2.0 * eta * k / (-k - root)), over_chi(-k - root))
            };
            ZSet::TwoLines { plus, minus }
        }
    }
}

/// Closed-form `α` on a line, used to cross-check least squares.
fn alpha_formula(nf: &NormalForm, m: ProjectiveSlope) -> f64 {
    let inv = &nf.inv;
    match (nf.case, m) {
        (CaseTag::S1 | CaseTag::Sminus1, ProjectiveSlope::Finite(m)) if m == 0.0 => nf.b_nf.a11 / inv.eta,
        (CaseTag::S1 | CaseTag::Sminus1, _) => nf.b_nf.a22 / inv.eta,
        (_, ProjectiveSlope::Finite(m)) => (inv.k + inv.rho * m) / (inv.eta * m),
        (_, ProjectiveSlope::Infinity) => inv.rho / inv.eta,
    }
}

fn alpha_on(nf: &NormalForm, m: ProjectiveSlope) -> Result<f64> {
    let x = m.direction();
    let ax = nf.a_nf * x;
    let bx = nf.b_nf * x;
    let alpha = ax.dot(bx) / ax.dot(ax);
    let residual = (bx - ax.scale(alpha)).norm();
    if residual > 1e-9 * bx.norm() {
        return Err(Error::Inconsistent(format!(
            "NotCollinear: Bx - alpha Ax has residual {residual:e} on slope {m}"
        )));
    }
    let formula = alpha_formula(nf, m);
    if (formula - alpha).abs() > 1e-8 * alpha.abs().max(1.0) {
        return Err(Error::Inconsistent(format!(
            "collinearity factor {alpha} disagrees with closed form {formula} on slope {m}"
        )));
    }
    Ok(alpha)
}

/// `(α⁺, α⁻)` with `B_nf·x = α±·A_nf·x` on `D±`.
pub fn alphas(nf: &NormalForm, zset: &ZSet) -> Result<(f64, f64)> {
    let (plus, minus) = zset
        .lines()
        .ok_or_else(|| Error::PreconditionViolated("collinearity factors need Delta >= 0".into()))?;
    Ok((alpha_on(nf, plus)?, alpha_on(nf, minus)?))
}

pub fn orientation(inv: &InvariantTriple, big_delta_sign: i8, tol: &Tolerances) -> Result<Orientation> {
    if big_delta_sign < 0 {
        return Ok(Orientation::NotApplicable);
    }
    let gap = inv.k - 2.0 * inv.eta * inv.rho;
    let scale = inv.k.abs().max((2.0 * inv.eta * inv.rho).abs());
    if tol.is_zero(gap, scale) {
        return Err(Error::Inconsistent(format!(
            "InconsistentInvariants: Delta >= 0 with k = 2 eta rho (k = {}, 2 eta rho = {})",
            inv.k,
            2.0 * inv.eta * inv.rho
        )));
    }
    Ok(if gap < 0.0 { Orientation::Direct } else { Orientation::Inverse })
}

/// `A_nf·x · ∂θ ≤ 0` at sample points of every line of `Z`.
pub fn clockwise_check(nf: &NormalForm, zset: &ZSet) -> bool {
    let Some((plus, minus)) = zset.lines() else {
        return true;
    };
    [plus, minus].iter().all(|m| {
        let d = m.direction();
        [1.0, -1.0, 0.25, -3.0].iter().all(|&h| {
            let x = d.scale(h);
            let rate = (nf.a_nf * x).dot(x.perp());
            rate <= 1e-12 * x.dot(x).max(1.0)
        })
    })
}

/// Full collinearity analysis of a normal form.
pub fn analyze(nf: &NormalForm, tol: &Tolerances) -> Result<CollinearityData> {
    analyze_noted(nf, tol, &mut Vec::new())
}

pub(crate) fn analyze_noted(
    nf: &NormalForm,
    tol: &Tolerances,
    notes: &mut Vec<DegeneracyNote>,
) -> Result<CollinearityData> {
    let inv = &nf.inv;
    let big_delta = discriminant_delta(inv);
    let big_delta_sign = if nf.case.is_regular() { delta_sign_noted(inv, tol, notes) } else { 1 };
    let zset = slopes_given(inv, nf.case, big_delta_sign, tol, notes);
    let orientation = orientation(inv, big_delta_sign, tol)?;
    let (alpha_plus, alpha_minus) = match zset {
        ZSet::OriginOnly => (None, None),
        _ => {
            let (p, m) = alphas(nf, &zset)?;
            (Some(p), Some(m))
        }
    };
    Ok(CollinearityData { big_delta, big_delta_sign, zset, alpha_plus, alpha_minus, orientation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{normal_form, SystemPair};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn inv(eta: f64, rho: f64, k: f64, delta_sign: i8) -> InvariantTriple {
        InvariantTriple {
            eta,
            rho,
            k,
            delta: 4.0 * f64::from(delta_sign),
            delta_sign,
            singular_branch: None,
        }
    }

    fn nf(case: CaseTag, eta: f64, rho: f64, k: f64) -> NormalForm {
        normal_form(&SystemPair::normal(case, eta, rho, k), &tol()).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(discriminant_delta(&inv(-1.0, -1.0, -1.0, -1)), 1.0);
        let mut s = inv(-1.0, -3.0, 0.0, 1);
        s.singular_branch = Some(crate::invariants::SingularBranch::Sminus1);
        assert_eq!(discriminant_delta(&s), 4.0);
        assert_eq!(discriminant_delta(&inv(-1.0, -1.0, 1.0, -1)), -7.0);
    }

    #[test]
    fn coincident_roots() {
        let r2 = 2.0f64.sqrt();
        assert!((coincident_k(&inv(-1.0, -1.0, 4.9, -1)) - (2.0 + 2.0 * r2)).abs() < 1e-15);
        assert!((coincident_k(&inv(-1.0, -1.0, -0.8, -1)) - (2.0 - 2.0 * r2)).abs() < 1e-15);
        assert_eq!(coincident_k(&inv(-1.0, -2.0, 7.9, 0)), 8.0);
        for k in [2.0 + 2.0 * r2, 2.0 - 2.0 * r2] {
            assert!(discriminant_delta(&inv(-1.0, -1.0, k, -1)).abs() < 1e-14);
        }
    }

    #[test]
    fn q_examples() {
        let s = nf(CaseTag::Sminus1, -1.0, -3.0, 0.0);
        assert_eq!(quadratic_q(&s, Vec2::ZERO), 0.0);
        assert_eq!(quadratic_q(&s, Vec2::new(1.0, 0.0)), 0.0);
        let r = nf(CaseTag::R1, -1.0, -2.0, -1.0);
        assert_eq!(quadratic_q(&r, Vec2::new(1.0, 1.0)), -3.0);
        assert_eq!(quadratic_q_formula(&r.inv, r.case, Vec2::new(1.0, 1.0)), -3.0);
    }

    #[test]
    fn slope_examples() {
        let r = nf(CaseTag::R1, -1.0, -2.0, -1.0);
        match slopes(&r.inv, r.case, &tol()) {
            ZSet::TwoLines { plus: ProjectiveSlope::Finite(p), minus: ProjectiveSlope::Finite(m) } => {
                let s13 = 13f64.sqrt();
                assert!((p - (1.0 + s13) / -6.0).abs() < 1e-15);
                assert!((m - (1.0 - s13) / -6.0).abs() < 1e-15);
                // k < m⁺ < m⁻ < −k
                assert!(-1.0 < p && p < m && m < 1.0);
            }
            other => panic!("{other:?}"),
        }

        let r = nf(CaseTag::Rminus1, -1.0, -1.0, -1.0);
        assert_eq!(
            slopes(&r.inv, r.case, &tol()),
            ZSet::TwoLines { plus: ProjectiveSlope::Infinity, minus: ProjectiveSlope::Finite(1.0) }
        );

        let s = nf(CaseTag::Sminus1, -1.0, -3.0, 0.0);
        assert_eq!(
            slopes(&s.inv, s.case, &tol()),
            ZSet::TwoLines { plus: ProjectiveSlope::Finite(0.0), minus: ProjectiveSlope::Finite(0.5) }
        );
    }

    #[test]
    fn r1_vertical_line_when_chi_vanishes() {
        // ρ = η/k with k > 0.
        let (eta, k) = (-1.0, 0.5);
        let r = nf(CaseTag::R1, eta, eta / k, k);
        assert_eq!(
            slopes(&r.inv, r.case, &tol()),
            ZSet::TwoLines { plus: ProjectiveSlope::Finite(1.0), minus: ProjectiveSlope::Infinity }
        );
    }

    #[test]
    fn alpha_identities_rminus1() {
        let r = nf(CaseTag::Rminus1, -0.1, -0.1, 1.0);
        let z = slopes(&r.inv, r.case, &tol());
        let (ap, am) = alphas(&r, &z).unwrap();
        assert!((ap + am - (-98.0)).abs() < 1e-9 * 98.0);
        assert!((ap * am - 101.0).abs() < 1e-9 * 101.0);
    }

    #[test]
    fn alphas_need_lines() {
        let r = nf(CaseTag::Rminus1, -1.0, -1.0, 1.0);
        assert!(alphas(&r, &ZSet::OriginOnly).is_err());
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&inv(-1.0, -2.0, -1.0, 1), 1, &tol()).unwrap(), Orientation::Direct);
        assert_eq!(orientation(&inv(-0.1, -0.1, 1.0, -1), 1, &tol()).unwrap(), Orientation::Inverse);
        assert_eq!(orientation(&inv(-1.0, -3.0, 0.0, 1), 1, &tol()).unwrap(), Orientation::Direct);
        assert_eq!(orientation(&inv(-1.0, -1.0, 1.0, -1), -1, &tol()).unwrap(), Orientation::NotApplicable);
        assert!(orientation(&inv(-1.0, -1.0, 2.0, -1), 1, &tol()).is_err());
    }

    #[test]
    fn clockwise_examples() {
        let r = nf(CaseTag::R1, -1.0, -2.0, -1.0);
        let z = slopes(&r.inv, r.case, &tol());
        assert!(clockwise_check(&r, &z));
        if let ZSet::TwoLines { plus: ProjectiveSlope::Finite(m), .. } = z {
            let x = Vec2::new(1.0, m);
            assert!(((r.a_nf * x).dot(x.perp()) + m * m).abs() < 1e-15);
        }
        let s = nf(CaseTag::Sminus1, -1.0, -3.0, 0.0);
        let x = Vec2::new(1.0, 0.0);
        assert_eq!((s.a_nf * x).dot(x.perp()), 0.0);
        let x = Vec2::new(0.0, 1.0);
        assert_eq!((s.a_nf * x).dot(x.perp()), -1.0);
    }

    #[test]
    fn single_line_at_zero_delta() {
        let k = 2.0 + 2.0 * 2f64.sqrt();
        let r = nf(CaseTag::Rminus1, -1.0, -1.0, k);
        let data = analyze(&r, &tol()).unwrap();
        assert_eq!(data.big_delta_sign, 0);
        assert!(matches!(data.zset, ZSet::OneLine(_)));
        assert_eq!(data.orientation, Orientation::Inverse);
        // Z is x₂ + 2ηx₁ = 0, slope −2η = 2.
        let (m, _) = data.zset.lines().unwrap();
        assert!((m.finite().unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(data.alpha_plus, data.alpha_minus);
    }
}
