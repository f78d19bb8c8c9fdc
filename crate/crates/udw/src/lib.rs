//! Files, sweeps and CSV output around [`udw_core`].
//!
//! - [`config_file`]: `key = value` configuration files.
//! - [`spec_file`]: sweep specifications in the same syntax.
//! - [`sweep`]: grid evaluation with shared kernels on a thread pool.
//! - [`csv_out`]: the fixed CSV schemas.
//! - [`presets`]: one sweep per published figure.

pub mod config_file;
pub mod csv_out;
pub mod presets;
pub mod spec_file;
pub mod sweep;

pub use config_file::{load_config, parse_config, ConfigDraft, ConfigFileError, PositionRule, ScenarioKind};
pub use csv_out::{emit_csv, write_csv, OutputError};
pub use presets::{preset, UnknownPreset, PRESET_NAMES};
pub use spec_file::{load_sweep_spec, parse_sweep_spec, SpecFileError};
pub use sweep::{evaluate_point, run_sweep, Axis, Grid, Row, RowValues, SweepError, SweepMode, SweepResult, SweepSpec};
