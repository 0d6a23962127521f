//! Real 2×2 linear algebra.
//!
//! Everything here is closed form: traces, determinants, commutators,
//! spectral classification through the discriminant of the characteristic
//! polynomial, and exact exponentials for the matrix shapes that appear in
//! the normal forms. `expm_reference` is a generic scaling-and-squaring
//! series used as an independent check of the closed forms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::LinalgError;
use crate::tolerance::Tolerances;

/// A point or direction in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn try_new(x1: f64, x2: f64) -> Result<Self, LinalgError> {
        if x1.is_finite() && x2.is_finite() {
            Ok(Self { x1, x2 })
        } else {
            Err(LinalgError::NonFinite)
        }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// `det[self other]`, positive when `other` is counter-clockwise of `self`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x1 * s, self.x2 * s)
    }

    pub fn normalized(self) -> Vec2 {
        self.scale(1.0 / self.norm())
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Polar angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.x2.atan2(self.x1)
    }

    /// The tangent field of rotation, `(-x2, x1)`.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.x2, self.x1)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

/// Real 2×2 matrix, stored row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    /// Checked constructor: rejects NaN and infinite entries.
    pub fn try_new(a11: f64, a12: f64, a21: f64, a22: f64) -> Result<Self, LinalgError> {
        let m = Self::new(a11, a12, a21, a22);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(LinalgError::NonFinite)
        }
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self, LinalgError> {
        Self::try_new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, 0.0, d2)
    }

    /// Matrix whose columns are `c1` and `c2`.
    pub fn from_columns(c1: Vec2, c2: Vec2) -> Self {
        Self::new(c1.x1, c2.x1, c1.x2, c2.x2)
    }

    pub fn col1(&self) -> Vec2 {
        Vec2::new(self.a11, self.a21)
    }

    pub fn col2(&self) -> Vec2 {
        Vec2::new(self.a12, self.a22)
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    pub fn trace(&self) -> f64 {
        trace(self)
    }

    pub fn det(&self) -> f64 {
        det(self)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let inv = Mat2::new(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d);
        inv.is_finite().then_some(inv)
    }

    /// `T⁻¹ · self · T`.
    pub fn conjugate_by(&self, t: &Mat2) -> Option<Mat2> {
        Some(t.inverse()? * *self * *t)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a21.abs()).max(self.a22.abs())
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (self.a11.abs() + self.a12.abs()).max(self.a21.abs() + self.a22.abs())
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// 2-norm condition number from the singular values.
    pub fn condition_number(&self) -> f64 {
        let fro2 = self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22;
        let d = self.det().abs();
        let disc = (fro2 * fro2 - 4.0 * d * d).max(0.0).sqrt();
        let smax = ((fro2 + disc) / 2.0).sqrt();
        smax * smax / d
    }

    pub fn eigenvalues(&self) -> Eigenvalues {
        eigenvalues(self)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2::new(self.a11 + r.a11, self.a12 + r.a12, self.a21 + r.a21, self.a22 + r.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2::new(self.a11 - r.a11, self.a12 - r.a12, self.a21 - r.a21, self.a22 - r.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * r.a11 + self.a12 * r.a21,
            self.a11 * r.a12 + self.a12 * r.a22,
            self.a21 * r.a11 + self.a22 * r.a21,
            self.a21 * r.a12 + self.a22 * r.a22,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a11 * v.x1 + self.a12 * v.x2, self.a21 * v.x1 + self.a22 * v.x2)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(s)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

pub fn trace(m: &Mat2) -> f64 {
    m.a11 + m.a22
}

pub fn det(m: &Mat2) -> f64 {
    m.a11 * m.a22 - m.a12 * m.a21
}

/// `AB − BA`.
pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    // Entry-wise form keeps the antisymmetry `[A,B] = −[B,A]` bit-exact.
    let c12 = a.a11 * b.a12 + a.a12 * b.a22 - (b.a11 * a.a12 + b.a12 * a.a22);
    let c21 = a.a21 * b.a11 + a.a22 * b.a21 - (b.a21 * a.a11 + b.a22 * a.a21);
    let c11 = a.a12 * b.a21 - b.a12 * a.a21;
    let c22 = a.a21 * b.a12 - b.a21 * a.a12;
    Mat2::new(c11, c12, c21, c22)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectralTag {
    RealDistinct,
    ComplexPair,
    RepeatedDiagonalizable,
    RepeatedNondiagonalizable,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralKind {
    pub tag: SpectralTag,
    /// `trace² − 4·det`.
    pub discriminant: f64,
}

impl SpectralKind {
    pub fn is_diagonalizable(&self) -> bool {
        self.tag != SpectralTag::RepeatedNondiagonalizable
    }
}

pub fn discriminant(m: &Mat2) -> f64 {
    let t = m.trace();
    t * t - 4.0 * m.det()
}

/// Whether `m` is a scalar multiple of the identity within tolerance.
pub fn is_scalar(m: &Mat2, tol: &Tolerances) -> bool {
    let s = m.max_abs();
    tol.is_zero(m.a12, s) && tol.is_zero(m.a21, s) && tol.is_zero(m.a11 - m.a22, s)
}

pub fn spectral_kind(m: &Mat2, tol: &Tolerances) -> SpectralKind {
    let d = discriminant(m);
    let s = m.max_abs();
    let tag = if tol.is_zero(d, s * s) {
        if is_scalar(m, tol) {
            SpectralTag::RepeatedDiagonalizable
        } else {
            SpectralTag::RepeatedNondiagonalizable
        }
    } else if d > 0.0 {
        SpectralTag::RealDistinct
    } else {
        SpectralTag::ComplexPair
    };
    SpectralKind { tag, discriminant: d }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eigenvalues {
    /// Real eigenvalues, larger first.
    Real(f64, f64),
    Complex { re: f64, im: f64 },
}

impl Eigenvalues {
    pub fn max_real_part(&self) -> f64 {
        match *self {
            Eigenvalues::Real(l, _) => l,
            Eigenvalues::Complex { re, .. } => re,
        }
    }
}

pub fn eigenvalues(m: &Mat2) -> Eigenvalues {
    let half = m.trace() / 2.0;
    let d = discriminant(m);
    if d >= 0.0 {
        let r = d.sqrt() / 2.0;
        // Cancellation-free small root from the product of the roots.
        let big = if half >= 0.0 { half + r } else { half - r };
        let small = if big != 0.0 { m.det() / big } else { 0.0 };
        let (l1, l2) = if big >= small { (big, small) } else { (small, big) };
        Eigenvalues::Real(l1, l2)
    } else {
        Eigenvalues::Complex { re: half, im: (-d).sqrt() / 2.0 }
    }
}

/// Closed-form exponential shapes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormalShape {
    /// `diag(d1, d2)`
    Diagonal { d1: f64, d2: f64 },
    /// `[[λ, b], [0, λ]]`
    UpperShear { lambda: f64, b: f64 },
    /// `[[λ, 0], [c, λ]]`
    LowerShear { lambda: f64, c: f64 },
    /// `[[ρ, b], [c, ρ]]` with `bc < 0`
    Elliptic { rho: f64, b: f64, c: f64 },
    /// `[[ρ, b], [c, ρ]]` with `bc > 0`
    Hyperbolic { rho: f64, b: f64, c: f64 },
}

impl NormalShape {
    pub fn detect(m: &Mat2) -> Result<Self, LinalgError> {
        if !m.is_finite() {
            return Err(LinalgError::NonFinite);
        }
        let eps = 1e-12 * m.max_abs().max(1.0);
        let zero12 = m.a12.abs() <= eps;
        let zero21 = m.a21.abs() <= eps;
        if zero12 && zero21 {
            return Ok(NormalShape::Diagonal { d1: m.a11, d2: m.a22 });
        }
        if (m.a11 - m.a22).abs() > eps {
            return Err(LinalgError::ShapeMismatch(*m));
        }
        let lambda = 0.5 * (m.a11 + m.a22);
        Ok(if zero21 {
            NormalShape::UpperShear { lambda, b: m.a12 }
        } else if zero12 {
            NormalShape::LowerShear { lambda, c: m.a21 }
        } else if m.a12 * m.a21 < 0.0 {
            NormalShape::Elliptic { rho: lambda, b: m.a12, c: m.a21 }
        } else {
            NormalShape::Hyperbolic { rho: lambda, b: m.a12, c: m.a21 }
        })
    }
}

/// Exact `exp(M t)` for the normal-form shapes.
///
/// Jordan blocks give `e^{ηt}[[1, t], [0, 1]]`, the rotation-like block
/// `[[ρ, −1/k], [k, ρ]]` gives `e^{ρt}[[cos t, −sin t/k], [k sin t, cos t]]`,
/// its hyperbolic sibling uses `cosh`/`sinh`, and the lower shear
/// `[[ρ, 0], [k, ρ]]` gives `e^{ρt}[[1, 0], [kt, 1]]`. Off-diagonal products
/// other than `±1` are handled by the frequency `√|bc|`.
pub fn expm_normal(m: &Mat2, t: f64) -> Result<Mat2, LinalgError> {
    Ok(match NormalShape::detect(m)? {
        NormalShape::Diagonal { d1, d2 } => Mat2::diag((d1 * t).exp(), (d2 * t).exp()),
        NormalShape::UpperShear { lambda, b } => Mat2::new(1.0, b * t, 0.0, 1.0).scale((lambda * t).exp()),
        NormalShape::LowerShear { lambda, c } => Mat2::new(1.0, 0.0, c * t, 1.0).scale((lambda * t).exp()),
        NormalShape::Elliptic { rho, b, c } => {
            let w = (-(b * c)).sqrt();
            let (s, co) = (w * t).sin_cos();
            Mat2::new(co, b * s / w, c * s / w, co).scale((rho * t).exp())
        }
        NormalShape::Hyperbolic { rho, b, c } => {
            let w = (b * c).sqrt();
            let (ep, em) = (((rho + w) * t).exp(), ((rho - w) * t).exp());
            let (s, co) = (0.5 * (ep - em), 0.5 * (ep + em));
            Mat2::new(co, b * s / w, c * s / w, co)
        }
    })
}

const REFERENCE_SERIES_ORDER: usize = 18;
const REFERENCE_MAX_SQUARINGS: u32 = 20;

/// `exp(M t)` by scaling and squaring a truncated Taylor series.
///
/// Independent of the closed forms; used to check them and to flow
/// arbitrary convex combinations in simulations.
pub fn expm_reference(m: &Mat2, t: f64) -> Mat2 {
    let x = m.scale(t);
    let norm = x.norm_inf();
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 && squarings < REFERENCE_MAX_SQUARINGS {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let y = x.scale(0.5f64.powi(squarings as i32));
    // Horner: I + y(I + y/2(I + y/3(...)))
    let mut acc = Mat2::IDENTITY;
    for j in (1..=REFERENCE_SERIES_ORDER).rev() {
        acc = Mat2::IDENTITY + (y * acc).scale(1.0 / j as f64);
    }
    for _ in 0..squarings {
        acc = acc * acc;
    }
    acc
}
