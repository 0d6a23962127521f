//! Stability of planar two-mode switched linear systems
//! `ẋ = u(t)·A·x + (1 − u(t))·B·x` under arbitrary switching, when at least
//! one of the two Hurwitz matrices is nondiagonalizable.
//!
//! The pipeline is: [`invariants`] (standing-hypothesis checks, `(η, ρ, k)`,
//! normal forms) → [`collinearity`] (the set where the fields are parallel)
//! → [`classifier`] (verdict with a checkable certificate). [`trajectory`]
//! builds worst trajectories from exact flows and simulates arbitrary
//! switching policies as an independent check.

pub mod classifier;
pub mod collinearity;
pub mod error;
pub mod invariants;
pub mod linalg2;
pub mod report;
pub mod sampling;
pub mod tolerance;
pub mod trajectory;

pub use classifier::{classify, classify_with, Certificate, Verdict, VerdictKind};
pub use error::{Error, Result};
pub use invariants::{normal_form, CaseTag, InvariantTriple, NormalForm, SystemPair};
pub use linalg2::{Mat2, Vec2};
pub use tolerance::Tolerances;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
