//! Coordinate-invariant parameters `(η, ρ, k)` and the normal forms they
//! parameterize.
//!
//! The input pair is first checked against the standing hypothesis: both
//! matrices Hurwitz, not commuting, and at least one of them
//! nondiagonalizable. When only `B` is nondiagonalizable the roles are
//! exchanged (the system is symmetric under `(A, B, u) ↦ (B, A, 1 − u)`) and
//! the swap is remembered so reports can speak about the user's matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Which};
use crate::linalg2::{commutator, spectral_kind, Mat2, SpectralKind, Vec2};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemPair {
    pub a: Mat2,
    pub b: Mat2,
}

impl SystemPair {
    pub const fn new(a: Mat2, b: Mat2) -> Self {
        Self { a, b }
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a }
    }

    /// `T⁻¹AT`, `T⁻¹BT`.
    pub fn conjugated(&self, t: &Mat2) -> Option<Self> {
        Some(Self { a: self.a.conjugate_by(t)?, b: self.b.conjugate_by(t)? })
    }

    pub fn scaled(&self, tau_a: f64, tau_b: f64) -> Self {
        Self { a: self.a.scale(tau_a), b: self.b.scale(tau_b) }
    }

    /// The normal-form pair for the given case and parameters.
    ///
    /// `A = [[η, 1], [0, η]]`; `B` is `[[ρ, ±1/k], [k, ρ]]` in the regular
    /// cases (sign `+` for R₁, `−` for R₋₁), `[[ρ, 0], [k, ρ]]` for R₀, and
    /// `diag(ρ∓1, ρ±1)` for the singular cases (`k` is ignored).
    pub fn normal(case: CaseTag, eta: f64, rho: f64, k: f64) -> Self {
        let a = Mat2::new(eta, 1.0, 0.0, eta);
        let b = match case {
            CaseTag::R1 => Mat2::new(rho, 1.0 / k, k, rho),
            CaseTag::Rminus1 => Mat2::new(rho, -1.0 / k, k, rho),
            CaseTag::R0 => Mat2::new(rho, 0.0, k, rho),
            CaseTag::S1 => Mat2::diag(rho - 1.0, rho + 1.0),
            CaseTag::Sminus1 => Mat2::diag(rho + 1.0, rho - 1.0),
        };
        Self { a, b }
    }

    /// Joint scale used by the degeneracy tolerances.
    fn scales(&self) -> (f64, f64) {
        (self.a.max_abs(), self.b.max_abs())
    }

    /// `Tr(AB) − ½·Tr(A)·Tr(B)`, the off-diagonal coupling entry of `B` in
    /// coordinates where `A` is a Jordan block.
    pub fn coupling(&self) -> f64 {
        (self.a * self.b).trace() - 0.5 * self.a.trace() * self.b.trace()
    }
}

/// Outcome of the standing-hypothesis check for a pair that is at least
/// Hurwitz.
#[derive(Clone, Debug, PartialEq)]
pub enum H0Outcome {
    Ok(CaseContext),
    Rejected(RejectionReason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectionReason {
    Commuting,
    BothDiagonalizable,
}

impl From<RejectionReason> for Error {
    fn from(r: RejectionReason) -> Self {
        match r {
            RejectionReason::Commuting => Error::Commuting,
            RejectionReason::BothDiagonalizable => Error::BothDiagonalizable,
        }
    }
}

/// A pair oriented so that `A` is nondiagonalizable.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseContext {
    pub pair: SystemPair,
    pub swapped: bool,
    pub kind_a: SpectralKind,
    pub kind_b: SpectralKind,
}

fn check_hurwitz(m: &Mat2, which: Which) -> Result<()> {
    let (trace, det) = (m.trace(), m.det());
    if trace < 0.0 && det > 0.0 {
        Ok(())
    } else {
        Err(Error::NotHurwitz { which, trace, det })
    }
}

pub fn validate_h0(pair: &SystemPair, tol: &Tolerances) -> Result<H0Outcome> {
    if !pair.a.is_finite() || !pair.b.is_finite() {
        return Err(crate::error::LinalgError::NonFinite.into());
    }
    check_hurwitz(&pair.a, Which::A)?;
    check_hurwitz(&pair.b, Which::B)?;

    let (sa, sb) = pair.scales();
    let comm = commutator(&pair.a, &pair.b);
    if tol.is_zero(comm.max_abs(), sa * sb) {
        return Ok(H0Outcome::Rejected(RejectionReason::Commuting));
    }

    let kind_a = spectral_kind(&pair.a, tol);
    let kind_b = spectral_kind(&pair.b, tol);
    Ok(if !kind_a.is_diagonalizable() {
        H0Outcome::Ok(CaseContext { pair: *pair, swapped: false, kind_a, kind_b })
    } else if !kind_b.is_diagonalizable() {
        H0Outcome::Ok(CaseContext { pair: pair.swapped(), swapped: true, kind_a: kind_b, kind_b: kind_a })
    } else {
        H0Outcome::Rejected(RejectionReason::BothDiagonalizable)
    })
}

/// `validate_h0` with rejections turned into errors.
pub fn require_h0(pair: &SystemPair, tol: &Tolerances) -> Result<CaseContext> {
    match validate_h0(pair, tol)? {
        H0Outcome::Ok(ctx) => Ok(ctx),
        H0Outcome::Rejected(r) => Err(r.into()),
    }
}

/// Which diagonal form `B` takes when `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingularBranch {
    /// `B = diag(ρ−1, ρ+1)`: `A`'s eigenvector carries `B`'s smaller eigenvalue.
    S1,
    /// `B = diag(ρ+1, ρ−1)`: `A`'s eigenvector carries `B`'s larger eigenvalue.
    Sminus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantTriple {
    pub eta: f64,
    pub rho: f64,
    pub k: f64,
    /// Discriminant of `B`'s characteristic polynomial, as computed.
    pub delta: f64,
    /// `sign(δ)` under the degeneracy tolerance.
    pub delta_sign: i8,
    /// Set exactly when `k = 0`.
    pub singular_branch: Option<SingularBranch>,
}

impl InvariantTriple {
    pub fn sign(&self) -> f64 {
        f64::from(self.delta_sign)
    }

    /// `k = 0`.
    pub fn is_singular(&self) -> bool {
        self.k == 0.0
    }

    /// `ρ − sign(δ)·η/k`, the coefficient of `x₂²` in `Q`; regular cases only.
    pub fn chi(&self) -> f64 {
        self.rho - self.sign() * self.eta / self.k
    }

    pub fn det_a_nf(&self) -> f64 {
        self.eta * self.eta
    }

    /// `ρ² − sign(δ)` (the same in the singular case, where `sign(δ) = 1`).
    pub fn det_b_nf(&self) -> f64 {
        self.rho * self.rho - self.sign()
    }

    /// `Tr(A_nf·B_nf)`.
    pub fn trace_ab_nf(&self) -> f64 {
        if self.is_singular() {
            2.0 * self.eta * self.rho
        } else {
            2.0 * self.eta * self.rho + self.k
        }
    }
}

/// A record of one near-zero case decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyNote {
    pub quantity: String,
    pub value: f64,
    /// Zero band the value was compared against.
    pub threshold: f64,
    pub treated_as_zero: bool,
}

impl DegeneracyNote {
    pub fn message(&self) -> String {
        if self.treated_as_zero {
            format!(
                "fragile classification: {} = {:e} treated as zero (|value| <= {:e})",
                self.quantity, self.value, self.threshold
            )
        } else {
            format!(
                "fragile classification: {} = {:e} is within 10x of the zero band {:e}",
                self.quantity, self.value, self.threshold
            )
        }
    }
}

/// Decide whether `q` is zero and note it when the decision is borderline.
pub(crate) fn decide_zero(
    name: &str,
    q: f64,
    scale: f64,
    tol: &Tolerances,
    notes: &mut Vec<DegeneracyNote>,
) -> bool {
    let zero = tol.is_zero(q, scale);
    if tol.is_fragile(q, scale) && q != 0.0 {
        notes.push(DegeneracyNote {
            quantity: name.to_string(),
            value: q,
            threshold: tol.band(scale),
            treated_as_zero: zero,
        });
    }
    zero
}

/// Eigenvector of a nondiagonalizable `A` and the generalized vector that
/// completes it to a Jordan basis.
fn jordan_basis(a: &Mat2) -> (Vec2, Vec2) {
    let lambda = a.trace() / 2.0;
    let n = *a - Mat2::IDENTITY.scale(lambda);
    let (e1, e2) = (Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
    // Probe (1,0) first; take (0,1) only when it is the better-conditioned choice.
    let v = if (n * e2).norm() > (n * e1).norm() { e2 } else { e1 };
    (n * v, v)
}

pub fn compute_invariants(pair: &SystemPair, tol: &Tolerances) -> InvariantTriple {
    compute_invariants_noted(pair, tol, &mut Vec::new())
}

pub(crate) fn compute_invariants_noted(
    pair: &SystemPair,
    tol: &Tolerances,
    notes: &mut Vec<DegeneracyNote>,
) -> InvariantTriple {
    let (sa, sb) = pair.scales();
    let (tr_a, tr_b) = (pair.a.trace(), pair.b.trace());
    let delta = tr_b * tr_b - 4.0 * pair.b.det();
    let delta_zero = decide_zero("delta", delta, sb * sb, tol, notes);
    let c = pair.coupling();
    let c_zero = decide_zero("k (coupling Tr(AB) - Tr(A)Tr(B)/2)", c, sa * sb, tol, notes);

    let (eta, rho, k, delta_sign) = if delta_zero {
        (tr_a / 2.0, tr_b / 2.0, c, 0)
    } else {
        let root = delta.abs().sqrt();
        (tr_a / root, tr_b / root, 4.0 * c / delta.abs(), if delta > 0.0 { 1 } else { -1 })
    };
    let k = if c_zero { 0.0 } else { k };

    let singular_branch = c_zero.then(|| {
        let (eig, _) = jordan_basis(&pair.a);
        let mu = eig.dot(pair.b * eig) / eig.dot(eig);
        if 2.0 * mu - tr_b < 0.0 {
            SingularBranch::S1
        } else {
            SingularBranch::Sminus1
        }
    });

    InvariantTriple { eta, rho, k, delta, delta_sign, singular_branch }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    S1,
    #[serde(rename = "S-1")]
    Sminus1,
    R1,
    #[serde(rename = "R-1")]
    Rminus1,
    R0,
}

impl CaseTag {
    pub fn is_regular(self) -> bool {
        matches!(self, CaseTag::R1 | CaseTag::Rminus1 | CaseTag::R0)
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseTag::S1 => "S1",
            CaseTag::Sminus1 => "S-1",
            CaseTag::R1 => "R1",
            CaseTag::Rminus1 => "R-1",
            CaseTag::R0 => "R0",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

pub fn case_tag(inv: &InvariantTriple) -> CaseTag {
    match (inv.singular_branch, inv.delta_sign) {
        (Some(SingularBranch::S1), _) => CaseTag::S1,
        (Some(SingularBranch::Sminus1), _) => CaseTag::Sminus1,
        (None, 1) => CaseTag::R1,
        (None, -1) => CaseTag::Rminus1,
        (None, _) => CaseTag::R0,
    }
}

/// Normal-form pair together with the change of basis and time scale that
/// realize it: `T⁻¹·(A/τ)·T = A_nf`, `T⁻¹·(B/τ)·T = B_nf`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub a_nf: Mat2,
    pub b_nf: Mat2,
    pub t: Mat2,
    pub tau: f64,
    pub case: CaseTag,
    pub inv: InvariantTriple,
    /// Whether the user's `A` and `B` were exchanged so that `A` is the
    /// nondiagonalizable matrix.
    pub swapped: bool,
    pub notes: Vec<DegeneracyNote>,
}

impl NormalForm {
    pub fn pair(&self) -> SystemPair {
        SystemPair::new(self.a_nf, self.b_nf)
    }

    /// Max-entry residuals of the two similarity relations, relative to the
    /// normal-form entries, against the oriented input pair.
    pub fn residuals(&self, oriented: &SystemPair) -> (f64, f64) {
        let t_inv = self.t.inverse().unwrap_or(Mat2::ZERO);
        let ra = (t_inv * oriented.a.scale(1.0 / self.tau) * self.t).max_abs_diff(&self.a_nf);
        let rb = (t_inv * oriented.b.scale(1.0 / self.tau) * self.t).max_abs_diff(&self.b_nf);
        (ra / self.a_nf.max_abs().max(1.0), rb / self.b_nf.max_abs().max(1.0))
    }

    /// Residuals against the pair as the user supplied it.
    pub fn residuals_user(&self, user: &SystemPair) -> (f64, f64) {
        if self.swapped {
            self.residuals(&user.swapped())
        } else {
            self.residuals(user)
        }
    }

    pub fn to_original(&self, y: Vec2) -> Vec2 {
        self.t * y
    }

    pub fn from_original(&self, x: Vec2) -> Option<Vec2> {
        Some(self.t.inverse()? * x)
    }
}

/// Build the normal form of a pair satisfying the standing hypothesis.
pub fn normal_form(pair: &SystemPair, tol: &Tolerances) -> Result<NormalForm> {
    let ctx = require_h0(pair, tol)?;
    normal_form_oriented(&ctx, tol)
}

pub(crate) fn normal_form_oriented(ctx: &CaseContext, tol: &Tolerances) -> Result<NormalForm> {
    let pair = &ctx.pair;
    let mut notes = Vec::new();
    let inv = compute_invariants_noted(pair, tol, &mut notes);

    let (eig, gen) = jordan_basis(&pair.a);
    let p = Mat2::from_columns(eig, gen);
    let bj = pair
        .b
        .conjugate_by(&p)
        .ok_or_else(|| Error::Inconsistent("Jordan basis of A is singular".into()))?;
    let (a, b, c, d) = (bj.a11, bj.a12, bj.a21, bj.a22);

    let (shear, tau, scaling, case) = if inv.is_singular() {
        if a == d {
            return Err(Error::Inconsistent("singular case with a repeated eigenvalue of B".into()));
        }
        let shear = Mat2::new(1.0, -b / (a - d), 0.0, 1.0);
        let root = inv.delta.abs().sqrt();
        let case = if d > a { CaseTag::S1 } else { CaseTag::Sminus1 };
        if case != case_tag(&inv) {
            return Err(Error::Inconsistent("singular branch disagrees between eigen-line test and diagonal form".into()));
        }
        (shear, root / 2.0, quarter_scaling(inv.delta), case)
    } else {
        let shear = Mat2::new(1.0, (a - d) / (2.0 * c), 0.0, 1.0);
        let case = case_tag(&inv);
        if inv.delta_sign == 0 {
            (shear, 1.0, Mat2::IDENTITY, case)
        } else {
            (shear, inv.delta.abs().sqrt() / 2.0, quarter_scaling(inv.delta), case)
        }
    };

    let t = p * shear * scaling;
    let normal = SystemPair::normal(case, inv.eta, inv.rho, inv.k);
    Ok(NormalForm {
        a_nf: normal.a,
        b_nf: normal.b,
        t,
        tau,
        case,
        inv,
        swapped: ctx.swapped,
        notes,
    })
}

/// `diag(√2/|δ|^{1/4}, |δ|^{1/4}/√2)`.
fn quarter_scaling(delta: f64) -> Mat2 {
    let q = delta.abs().powf(0.25);
    let s = std::f64::consts::SQRT_2;
    Mat2::diag(s / q, q / s)
}
