//! Exact blow-spherical invariants of real analytic plane curve germs, and
//! combinatorics of piecewise-geodesic links on the 2-sphere.

pub mod arith;
pub mod input;
pub mod invariants;
pub mod link;
pub mod oracle;
pub mod par;
pub mod puiseux;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, GermError>;

#[derive(Debug, Error)]
pub enum GermError {
    #[error("root count of the zero polynomial is undefined")]
    IndeterminateRootCount,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown variable '{name}' at line {line}, column {col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("non-rational literal '{lit}' at line {line}, column {col}")]
    NonRationalLiteral { lit: String, line: usize, col: usize },
    #[error("germ does not pass through the origin: {0}")]
    NotThroughOrigin(String),
    #[error("degenerate branch: {0}")]
    DegenerateBranch(String),
    #[error("parametrization is not injective: {0}")]
    NotInjective(String),
    #[error("the zero polynomial does not define a curve germ")]
    ZeroPolynomial,
    #[error("the origin is an isolated point of the real zero set")]
    IsolatedOrigin,
    #[error("the origin is not on the curve")]
    OriginNotOnCurve,
    #[error("invalid invariant: {0}")]
    InvalidInvariant(String),
    #[error("arcs overlap along a segment: {0}")]
    NonFiniteIntersection(String),
    #[error("ill-posed arc between antipodal points: {0}")]
    IllPosedArc(String),
    #[error("invalid link: {0}")]
    InvalidLink(String),
    #[error("point is not in general position: {0}")]
    NotGeneric(String),
    #[error("base point lies on the link; choose another point")]
    RegenerateLambda,
    #[error("link is not antipodally invariant")]
    NotAntipodal,
    #[error("nac lower bound only: the cycle cap was reached with {bound} circles")]
    NacLowerBound { bound: usize, witness: Vec<Vec<usize>> },
    #[error("oracle did not stabilise: {0}")]
    OracleInconclusive(String),
    #[error("oracle trials disagree: {0}")]
    OracleDisagreement(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl GermError {
    /// Process exit status for the command-line tool.
    ///
    /// 1: a verification disagreed; 2: bad input; 3: the germ is degenerate;
    /// 4: a precondition of the requested computation fails.
    pub fn exit_code(&self) -> i32 {
        use GermError::*;
        match self {
            Parse { .. } | UnknownVariable { .. } | NonRationalLiteral { .. } | InvalidInvariant(_) => 2,
            InvalidLink(_) | NonFiniteIntersection(_) | IllPosedArc(_) | Io(_) | Json(_) => 2,
            NotThroughOrigin(_) | DegenerateBranch(_) | NotInjective(_) | ZeroPolynomial => 3,
            IsolatedOrigin | OriginNotOnCurve | IndeterminateRootCount => 3,
            NotGeneric(_) | RegenerateLambda | NotAntipodal | NacLowerBound { .. } => 4,
            OracleInconclusive(_) | OracleDisagreement(_) | Internal(_) => 1,
        }
    }
}
