//! Parameter sweeps, exponent fits and the bundled invariant suites.

mod config;
mod fit;
mod sweep;
pub mod verify;

pub use config::{Features, Format, Grid, Guards, SweepConfig};
pub use fit::{fit_exponent, Fit, Which};
pub use sweep::{encode_records, encode_rows, evaluate_point, sweep, GridPoint, ReportRow};
pub use verify::{verify, VerifySummary, SUITES};
