use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input for `{0}`")]
    NonFinite(&'static str),

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("mass-squared splitting is zero; the length scale is infinite")]
    DegeneratePair,

    #[error("wave-packet amplitude needs both production and detection widths")]
    MissingWidths,

    #[error(
        "widths inconsistent: sigma_x^2 = {total2:e} but sigma_xP^2 + sigma_xD^2 = {parts2:e}"
    )]
    InconsistentWidths { total2: f64, parts2: f64 },

    #[error("amplitudes not normalized: sum of |A|^2 = {0}")]
    NotNormalized(f64),

    #[error("eigenvalue {re:e}{im:+e}i of rho*rho_tilde is not real and non-negative")]
    Spectral { re: f64, im: f64 },

    #[error(
        "quadrature did not converge: estimated error {error:e} after {evaluations} evaluations"
    )]
    Quadrature { error: f64, evaluations: usize },

    #[error("line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid value for `{key}`: {message}")]
    InvalidKey { key: String, message: String },

    #[error("grid point sigma_x = {sigma_x_m:e} m, L = {baseline_km} km: {source}")]
    GridPoint {
        sigma_x_m: f64,
        baseline_km: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{name} violated: residual {value:e}")]
    Invariant { name: &'static str, value: f64 },

    #[error("nothing to emit")]
    EmptyOutput,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
