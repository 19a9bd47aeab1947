use std::path::PathBuf;

use crate::dsl::ParseError;

/// Errors produced anywhere in the construction pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("evaluation point at distance {distance:.3e} from center {center} exceeds trust radius {radius:.3e}")]
    OutOfTrustRadius { center: f64, distance: f64, radius: f64 },

    #[error("series centers differ: {0} vs {1}")]
    CenterMismatch(f64, f64),

    #[error("division by a series with constant term {0:.3e} (singular denominator)")]
    DivisionBySingularSeries(f64),

    #[error("derivative requested of a series of order 0")]
    OrderTooLow,

    #[error("non-finite value produced: {0}")]
    NonFinite(&'static str),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("lowering failed: {0}")]
    Lowering(String),

    #[error("curve file {path}:{line}:{column}: {message}")]
    CurveFile {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid Björling data: {0}")]
    InvalidData(String),

    #[error("point ({u}, {v}) lies outside the characteristic diamond ({a}, {b})")]
    OutOfDomain { u: f64, v: f64, a: f64, b: f64 },

    #[error("imaginary residual {residual:.3e} at ({u}, {v}) exceeds tolerance; raise the series order")]
    RealityCheckFailed { u: f64, v: f64, residual: f64 },

    #[error("Gauss map undefined at t = {0}: both gamma_3' and L_3 vanish")]
    UndefinedGauss(f64),

    #[error("Gauss map branches disagree at t = {t} by {deviation:.3e}")]
    BranchMismatch { t: f64, deviation: f64 },

    #[error("characteristic denominator vanishes at t = {0}")]
    DegenerateCharacteristic(f64),

    #[error("delta quantities undefined at t = {0}")]
    UndefinedDelta(f64),

    #[error("at grid point ({i}, {j})")]
    AtGridPoint {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
