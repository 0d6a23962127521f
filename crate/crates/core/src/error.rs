use thiserror::Error;

use crate::linalg2::Mat2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix {0} is not one of the closed-form exponential shapes")]
    ShapeMismatch(Mat2),
}

/// Which of the two input matrices a message refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Which {
    A,
    B,
}

impl std::fmt::Display for Which {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Which::A => "A",
            Which::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{which} is not Hurwitz: trace={trace}, det={det}")]
    NotHurwitz { which: Which, trace: f64, det: f64 },
    #[error(
        "both A and B are diagonalizable; this is the diagonalizable case \
         (cross-ratio conditions of the earlier planar switched-system literature) and is out of scope"
    )]
    BothDiagonalizable,
    #[error("A and B commute; the pair is trivially GUAS and has no normal form")]
    Commuting,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Inputs the tool refuses by scope rather than because they are malformed.
    pub fn is_out_of_scope(&self) -> bool {
        matches!(self, Error::BothDiagonalizable | Error::Commuting)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
