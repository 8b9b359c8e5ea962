//! Configuration-driven sweeps over laser detuning and drive amplitude.
//!
//! Every rate-like quantity in a configuration is given in multiples of the
//! vacuum decay rate `gamma0`, lengths carry an explicit unit suffix in the key
//! (`_nm`, `_um`), and angles are in degrees or radians as the key says.

mod config;
mod csv;
mod report;
mod sweep;

pub use config::{
    Axis, DetectionMode, DipoleOrientation, GeometryConfig, InjectedRates, ObservableSelection,
    RateSource, SweepConfig,
};
pub use csv::{emit_csv, write_csv};
pub use report::{report_extrema, Extrema, FluorescencePeaks};
pub use sweep::{resolve_rates, run_sweep, PointRecord, ResolvedRates, ScanGrid};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("rate extraction failed: {0}")]
    Rates(#[from] crate::photonic::PhotonicError),
    #[error("grid has no records")]
    EmptyGrid,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ScanError>;
