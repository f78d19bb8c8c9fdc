//! Sweep specification files.
//!
//! Same `key = value` syntax as config files. Config keys set the baseline;
//! in addition:
//!
//! ```text
//! scenarios = free, periodic, dirichlet
//! grid.a = 0, 0.5, 1
//! grid.T = linspace(0.02, 2, 100)
//! grid.sigma = logspace(-3, 0, 31)
//! mode = ratio          # or certify (default)
//! mode_index = 3        # resonant mode for ratio sweeps
//! threads = 8
//! ```
//!
//! Grids are applied in file order; the last one varies fastest.

use crate::config_file::{parse_entries, parse_number, read_text, ConfigDraft, ConfigFileError, Entry, ScenarioKind};
use crate::sweep::{Axis, Grid, SweepMode, SweepSpec};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum SpecFileError {
    #[error(transparent)]
    Config(#[from] ConfigFileError),
    #[error("line {line}: {message}")]
    Bad { line: usize, message: String },
}

fn bad(entry: &Entry, message: impl Into<String>) -> SpecFileError {
    SpecFileError::Bad { line: entry.line, message: message.into() }
}

/// Parses `v1, v2, ...`, `linspace(lo, hi, n)` or `logspace(lo, hi, n)`.
pub fn parse_grid_values(text: &str) -> Result<Vec<f64>, String> {
    let text = text.trim();
    for (name, log) in [("linspace", false), ("logspace", true)] {
        if let Some(inner) = text.strip_prefix(name) {
            let inner = inner
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| format!("expected `{name}(lo, hi, n)`"))?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("`{name}` takes three arguments"));
            }
            let lo: f64 = parts[0].parse().map_err(|_| format!("bad number `{}`", parts[0]))?;
            let hi: f64 = parts[1].parse().map_err(|_| format!("bad number `{}`", parts[1]))?;
            let n: usize = parts[2].parse().map_err(|_| format!("bad point count `{}`", parts[2]))?;
            let grid = if log { Grid::logspace(Axis::Amplitude, lo, hi, n) } else { Grid::linspace(Axis::Amplitude, lo, hi, n) };
            return Ok(grid.values);
        }
    }
    text.split(',')
        .map(str::trim)
        .map(|s| s.parse::<f64>().map_err(|_| format!("bad number `{s}`")))
        .collect()
}

pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec, SpecFileError> {
    let mut draft = ConfigDraft::default();
    let mut scenarios: Option<Vec<ScenarioKind>> = None;
    let mut grids: Vec<Grid> = Vec::new();
    let mut mode_name: Option<String> = None;
    let mut mode_index: Option<u32> = None;
    let mut threads = 0usize;

    for entry in parse_entries(text)? {
        if draft.apply(&entry)? {
            continue;
        }
        if let Some(name) = entry.key.strip_prefix("grid.") {
            let axis = Axis::from_name(name.trim()).ok_or_else(|| bad(&entry, format!("`{name}` cannot be swept")))?;
            let values = parse_grid_values(&entry.value).map_err(|m| bad(&entry, m))?;
            grids.push(Grid::new(axis, values));
            continue;
        }
        match entry.key.as_str() {
            "scenarios" => {
                let list = entry
                    .value
                    .split(',')
                    .map(|s| s.parse::<ScenarioKind>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|m| bad(&entry, m))?;
                scenarios = Some(list);
            }
            "mode" => mode_name = Some(entry.value.to_ascii_lowercase()),
            "mode_index" | "m" => {
                let v = parse_number(&entry)?;
                if !(v >= 1.0 && v.fract() == 0.0 && v <= f64::from(u32::MAX)) {
                    return Err(bad(&entry, "mode index must be a positive integer"));
                }
                mode_index = Some(v as u32);
            }
            "threads" => {
                threads = entry.value.parse().map_err(|_| bad(&entry, "threads must be a non-negative integer"))?;
            }
            _ => return Err(ConfigFileError::UnknownKey { line: entry.line, key: entry.key }.into()),
        }
    }

    let mode = match (mode_name.as_deref(), mode_index) {
        (None | Some("certify"), None) => SweepMode::Certify,
        (None | Some("ratio"), Some(mode_index)) => SweepMode::Ratio { mode_index },
        (Some("ratio"), None) => SweepMode::Ratio { mode_index: 0 },
        (Some("certify"), Some(_)) => {
            return Err(SpecFileError::Bad { line: 0, message: "`mode_index` only applies to ratio sweeps".into() })
        }
        (Some(other), _) => {
            return Err(SpecFileError::Bad { line: 0, message: format!("unknown mode `{other}` (expected certify or ratio)") })
        }
    };

    let scenarios = scenarios.unwrap_or_else(|| vec![draft.scenario.unwrap_or(ScenarioKind::Free)]);
    Ok(SweepSpec {
        baseline: draft.base(),
        scenarios,
        length: draft.length,
        position: draft.position.unwrap_or_default(),
        grids,
        mode,
        threads,
    })
}

pub fn load_sweep_spec(path: &Path) -> Result<SweepSpec, SpecFileError> {
    parse_sweep_spec(&read_text(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config_file::PositionRule;
    use crate::sweep::SweepError;
    use udw_core::PhysicalConfig;

    #[test]
    fn full_spec() {
        let text = "
            lambda = 0.02
            scenarios = periodic, dirichlet
            L = 3
            position_fraction = 0.25
            grid.a = 0, 0.5, 1
            grid.T = linspace(0.5, 2, 4)
            threads = 2
        ";
        let spec = parse_sweep_spec(text).unwrap();
        assert_eq!(spec.baseline, PhysicalConfig::reference().with_coupling(0.02));
        assert_eq!(spec.scenarios, vec![ScenarioKind::Periodic, ScenarioKind::Dirichlet]);
        assert_eq!(spec.length, Some(3.0));
        assert_eq!(spec.position, PositionRule::FractionOfLength(0.25));
        assert_eq!(spec.grids[0], Grid::new(Axis::Amplitude, vec![0.0, 0.5, 1.0]));
        assert_eq!(spec.grids[1], Grid::new(Axis::Duration, vec![0.5, 1.0, 1.5, 2.0]));
        assert_eq!(spec.threads, 2);
        assert_eq!(spec.mode, SweepMode::Certify);
        assert_eq!(spec.row_count(), 24);
        spec.validate().unwrap();
    }

    #[test]
    fn ratio_spec() {
        let spec = parse_sweep_spec("scenario = dirichlet\nmode = ratio\nmode_index = 3\ngrid.a = 1").unwrap();
        assert_eq!(spec.mode, SweepMode::Ratio { mode_index: 3 });
        assert_eq!(spec.scenarios, vec![ScenarioKind::Dirichlet]);
        let spec = parse_sweep_spec("scenario = dirichlet\nmode = ratio").unwrap();
        assert_eq!(spec.validate(), Err(SweepError::InvalidModeIndex));
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid_values("1, 2,3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_grid_values("logspace(0, 2, 3)").unwrap(), vec![1.0, 10.0, 100.0]);
        assert!(parse_grid_values("linspace(0, 1)").is_err());
        assert!(parse_grid_values("1, x").is_err());
    }

    #[test]
    fn bad_keys() {
        let err = parse_sweep_spec("grid.scenario = 1").unwrap_err();
        assert_eq!(err.to_string(), "line 1: `scenario` cannot be swept");
        let err = parse_sweep_spec("\nspeed = 3").unwrap_err();
        assert_eq!(err.to_string(), "line 2: unknown key `speed`");
        assert!(parse_sweep_spec("mode = fast").is_err());
        assert!(parse_sweep_spec("mode_index = 2.5").is_err());
    }

    #[test]
    fn empty_grid_is_a_validation_error() {
        let spec = parse_sweep_spec("grid.T = linspace(0, 1, 0)").unwrap();
        assert_eq!(spec.validate(), Err(SweepError::EmptyGrid(Axis::Duration)));
    }
}
