use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angular frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),

    #[error("coefficient constraint violated: {0}")]
    CoefficientConstraintViolated(String),

    #[error("phi = {0} lies outside [-pi/2, pi/2)")]
    PhiOutOfRange(f64),

    #[error("t = {t} precedes the reference time t0 = {t0}")]
    TimeBeforeReference { t: f64, t0: f64 },

    #[error("Fock index {n} exceeds the supported maximum {max}")]
    IndexTooLarge { n: u32, max: u32 },

    #[error("adaptive quadrature did not converge within depth {max_depth}")]
    QuadratureNonConvergence { max_depth: u32 },

    #[error("superposition weights are not normalized: |b_n|^2 + |b_m|^2 = {norm}")]
    WeightNormalizationViolated { norm: f64 },

    #[error("superposition requires two distinct Fock indices, got n = m = {0}")]
    DuplicateFockIndex(u32),

    #[error("atan_xy is undefined at the origin")]
    UndefinedAngle,

    #[error("{name} must be positive, got {value}")]
    NonPositiveConstant { name: &'static str, value: f64 },
}
