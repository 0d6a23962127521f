//! Random systems built from normal-form parameters, for fuzzing and demos.

use rand::Rng;

use crate::invariants::{CaseTag, SystemPair};
use crate::linalg2::Mat2;

pub const ALL_CASES: [CaseTag; 5] = [CaseTag::S1, CaseTag::Sminus1, CaseTag::R1, CaseTag::Rminus1, CaseTag::R0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NfParams {
    pub case: CaseTag,
    pub eta: f64,
    pub rho: f64,
    pub k: f64,
}

impl NfParams {
    pub fn new(case: CaseTag, eta: f64, rho: f64, k: f64) -> Self {
        NfParams { case, eta, rho, k }
    }

    pub fn pair(&self) -> SystemPair {
        SystemPair::normal(self.case, self.eta, self.rho, self.k)
    }

    /// `sign(δ)` of the case.
    pub fn sign(&self) -> f64 {
        match self.case {
            CaseTag::R1 | CaseTag::S1 | CaseTag::Sminus1 => 1.0,
            CaseTag::Rminus1 => -1.0,
            CaseTag::R0 => 0.0,
        }
    }

    /// `Δ` computed from the parameters.
    pub fn big_delta(&self) -> f64 {
        match self.case {
            CaseTag::S1 | CaseTag::Sminus1 => 4.0 * self.eta * self.eta,
            _ => {
                let (e, r, k) = (self.eta, self.rho, self.k);
                k * k - 4.0 * e * r * k + 4.0 * self.sign() * e * e
            }
        }
    }
}

pub fn random_case<R: Rng + ?Sized>(rng: &mut R) -> CaseTag {
    ALL_CASES[rng.random_range(0..ALL_CASES.len())]
}

/// Parameters keeping both matrices Hurwitz: `η, ρ ∈ [−3, −0.2]`, with
/// `ρ < −1.1` where `B` has eigenvalues `ρ ± 1`, and `0.05 ≤ |k| ≤ 5`.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, case: CaseTag) -> NfParams {
    let eta = rng.random_range(-3.0..-0.2);
    let rho = match case {
        CaseTag::R1 | CaseTag::S1 | CaseTag::Sminus1 => rng.random_range(-3.0..-1.1),
        _ => rng.random_range(-3.0..-0.2),
    };
    let k = if case.is_regular() {
        let mag = rng.random_range(0.05..5.0);
        if rng.random_bool(0.5) {
            mag
        } else {
            -mag
        }
    } else {
        0.0
    };
    NfParams { case, eta, rho, k }
}

/// `R(θ₁)·diag(s, s·c)·R(θ₂)` with condition number `c ≤ max_cond`, a
/// random overall scale `s ∈ [0.5, 2]` and a random reflection.
pub fn random_similarity<R: Rng + ?Sized>(rng: &mut R, max_cond: f64) -> Mat2 {
    let rot = |th: f64| {
        let (s, c) = th.sin_cos();
        Mat2::new(c, -s, s, c)
    };
    let pi = std::f64::consts::PI;
    let cond = rng.random_range(1.0..max_cond.max(1.0 + f64::EPSILON));
    let s = rng.random_range(0.5..2.0);
    let flip = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
    rot(rng.random_range(-pi..pi)) * Mat2::diag(s, flip * s * cond) * rot(rng.random_range(-pi..pi))
}

/// `(τ·T⁻¹AT, τ·T⁻¹BT)`.
pub fn realize(pair: &SystemPair, t: &Mat2, tau: f64) -> SystemPair {
    let conj = pair.conjugated(t).expect("similarity must be invertible");
    conj.scaled(tau, tau)
}
