//! Error type shared by every module of the crate.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("function has a pole at {0}")]
    PoleAt(Complex64),

    #[error("invalid lattice: Im(tau) must be positive, got tau = {0}")]
    InvalidLattice(Complex64),

    #[error("point {0} lies on a lattice point")]
    PointOnLattice(Complex64),

    #[error("dF and dG vanish simultaneously at {0}; the curve is not regular there")]
    NotRegularCurve(Complex64),

    #[error("{function} has a pole at {point}, which is not a declared puncture")]
    PoleOffPuncture { function: &'static str, point: String },

    #[error("G is constant, so the Lagrangian Gauss map is undefined")]
    ConstantG,

    #[error("not unimodular: |alpha|^2 - |beta|^2 = {0}, expected 1")]
    NotUnimodular(f64),

    #[error("cycle passes within {distance:e} of a pole at {pole}")]
    PoleOnCycle { pole: Complex64, distance: f64 },

    #[error("invalid modulus: alpha = {0} must lie in (0, pi)")]
    InvalidModulus(f64),

    #[error("p1 and p2 both vanish at alpha = {0}")]
    NotBothZero(f64),

    #[error("end at {0} is not embedded and has no asymptotic model")]
    NotEmbeddedEnd(String),

    #[error("Osserman inequality violated: deg rho = {deg} < {rhs}")]
    InequalityViolated { deg: i64, rhs: i64 },

    #[error("mesh has no vertices")]
    EmptyMesh,

    #[error("period condition violated on cycle {cycle}: Re of period = {value:e}")]
    PeriodConditionViolated { cycle: String, value: f64 },

    #[error("base point {0} is a puncture or pole")]
    InvalidBasePoint(Complex64),

    #[error("bracket lost: {0}")]
    BracketLost(String),

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("unknown catalog entry '{0}'")]
    UnknownCatalogId(String),

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("catalog entry {id}: expected {expected}, computed {computed}")]
    CatalogMismatch { id: String, expected: String, computed: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
