use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term has modulus {0:e}, too close to zero to invert")]
    NearZeroConstantTerm(f64),

    #[error("inner series must vanish at the origin (|c0| = {0:e})")]
    InnerNotVanishing(f64),

    #[error("point {0} lies outside the closed unit disk")]
    OutsideDisk(Complex64),

    #[error("base point {0} lies outside the closed unit disk")]
    BasePointOutsideClosedDisk(Complex64),

    #[error("Blaschke zero {0} is not strictly inside the unit disk")]
    ZeroOnOrOutsideBoundary(Complex64),

    #[error("function must vanish at the origin, found value {0}")]
    BasePointNotZero(Complex64),

    #[error("derivative is not available at {0}")]
    DerivativeUnavailable(Complex64),

    #[error("|phi(z0)| = {0} is not a boundary maximum")]
    NotBoundaryMax(f64),

    #[error("boundary quotient z0 phi'(z0)/phi(z0) has imaginary part {0:e}")]
    NonRealQuotient(f64),

    #[error("phi(e^(i theta0)) = {0} but the obstruction requires -1")]
    HypothesisViolated(Complex64),

    #[error("rotations e^(i theta) z are excluded from the boundary obstruction")]
    ExcludedRotation,

    #[error("consistency check `{what}` failed: deviation {deviation:e}")]
    ConsistencyCheck { what: &'static str, deviation: f64 },

    #[error("logarithm branch point hit at z = {0}")]
    BranchPointSingularity(Complex64),

    #[error("map is not a contraction of the closed disk: self-map bound {self_map:.6}, Lipschitz constant {lipschitz:.6}")]
    NotContractive { self_map: f64, lipschitz: f64 },

    #[error("fixed-point iteration did not converge after {iterations} steps (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("curve samples at theta = {theta1:.6} and {theta2:.6} are only {distance:e} apart")]
    SelfIntersectionSuspected {
        theta1: f64,
        theta2: f64,
        distance: f64,
    },

    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
