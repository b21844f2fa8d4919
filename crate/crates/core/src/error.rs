use thiserror::Error;

/// Errors raised by the solver and its diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spatial dimension must be at least 1")]
    ZeroDimension,

    #[error("lattice with radius {m} in dimension {d} exceeds the limit of {limit} modes")]
    LatticeTooLarge { d: usize, m: usize, limit: usize },

    #[error("grid with {per_axis} samples per axis cannot resolve radius {m}; need at least {required}")]
    Undersampled { per_axis: usize, m: usize, required: usize },

    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },

    #[error("fields live on different lattices (d={left_d}, m={left_m} vs d={right_d}, m={right_m})")]
    LatticeMismatch { left_d: usize, left_m: usize, right_d: usize, right_m: usize },

    #[error("point has {got} coordinates, lattice dimension is {expected}")]
    PointDimension { expected: usize, got: usize },

    #[error("{name} = {value} is out of range: {expected}")]
    Domain { name: &'static str, value: f64, expected: &'static str },

    #[error(
        "Mittag-Leffler E[{alpha}, {b}]({z_re}{z_im:+}i) not resolved to tolerance (error estimate {est_error:e})"
    )]
    NonConvergence { alpha: f64, b: f64, z_re: f64, z_im: f64, est_error: f64 },

    #[error("eigenbasis is ill-conditioned (condition estimate {condition:e} > {limit:e})")]
    IllConditioned { condition: f64, limit: f64 },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("Schur decomposition did not converge")]
    EigenFailure,

    #[error("no snapshot stored at t = {t}")]
    UnknownSnapshot { t: f64 },

    #[error("series must be non-decreasing, drops at index {index}")]
    NotMonotone { index: usize },

    #[error("series must be non-negative, value {value} at index {index}")]
    Negative { index: usize, value: f64 },

    #[error("{what} needs at least {required} entries, got {got}")]
    InsufficientPoints { what: &'static str, required: usize, got: usize },

    #[error("series lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("implicit step at t = {t} hit a singular matrix")]
    SingularStep { t: f64 },

    #[error("operation requires {what}")]
    Unsupported { what: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T: crate::Real>(name: &'static str, value: T, expected: &'static str) -> Error {
    Error::Domain { name, value: value.to_f64_lossy(), expected }
}
