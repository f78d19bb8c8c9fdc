//! Plain-text configuration files.
//!
//! One `key = value` per line; `#` starts a comment. Every field of
//! [`PhysicalConfig`] is addressable by its name or a short alias:
//!
//! | key | alias | meaning |
//! |-----|-------|---------|
//! | `coupling` | `lambda` | coupling strength λ |
//! | `atom_size` | `sigma` | Gaussian width σ |
//! | `gap` | `omega` | energy gap Ω |
//! | `duration` | `T` | interaction time |
//! | `amplitude` | `a` | ground-state amplitude |
//! | `scenario` | | `free`, `periodic` or `dirichlet` |
//! | `length` | `L` | cavity length |
//! | `position` | `x_a` | atom position |
//! | `position_fraction` | | atom position as a fraction of `L` |
//! | `cutoff` | `N_c` | momentum cutoff in units of 1/σ |
//!
//! Missing keys take the values of [`PhysicalConfig::reference`]; a cavity
//! with no position puts the atom at `πL/6`.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use udw_core::{BoundaryScenario, CavityKind, ConfigError, PhysicalConfig, ResonantSetup};

/// Default atom position in a cavity, as a fraction of its length.
pub const DEFAULT_POSITION_FRACTION: f64 = PI / 6.0;

#[derive(Debug, thiserror::Error)]
pub enum ConfigFileError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` is given more than once")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: `{value}` is not a number (key `{key}`)")]
    BadNumber { line: usize, key: String, value: String },
    #[error("line {line}: {message}")]
    BadValue { line: usize, message: String },
    #[error("`position` and `position_fraction` cannot both be set")]
    ConflictingPosition,
    #[error("a {scenario} cavity needs `length`")]
    MissingLength { scenario: &'static str },
    #[error("the resonant reference needs a periodic or dirichlet cavity")]
    NotACavity,
    #[error(transparent)]
    Invalid(#[from] ConfigError),
    #[error("reading {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

/// One `key = value` line.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Splits a document into entries, dropping comments and blank lines.
/// Keys are returned as written.
pub fn parse_entries(text: &str) -> Result<Vec<Entry>, ConfigFileError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigFileError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigFileError::Syntax { line });
        }
        entries.push(Entry { line, key: key.to_string(), value: value.to_string() });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioKind {
    Free,
    Periodic,
    Dirichlet,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Free => "free",
            ScenarioKind::Periodic => "periodic",
            ScenarioKind::Dirichlet => "dirichlet",
        }
    }

    pub fn cavity(self) -> Option<CavityKind> {
        match self {
            ScenarioKind::Free => None,
            ScenarioKind::Periodic => Some(CavityKind::Periodic),
            ScenarioKind::Dirichlet => Some(CavityKind::Dirichlet),
        }
    }

    pub fn of(scenario: &BoundaryScenario) -> Self {
        match scenario {
            BoundaryScenario::FreeSpace => ScenarioKind::Free,
            BoundaryScenario::Periodic { .. } => ScenarioKind::Periodic,
            BoundaryScenario::Dirichlet { .. } => ScenarioKind::Dirichlet,
        }
    }

    pub fn build(self, length: f64, position: f64) -> BoundaryScenario {
        match self {
            ScenarioKind::Free => BoundaryScenario::FreeSpace,
            ScenarioKind::Periodic => BoundaryScenario::Periodic { length, position },
            ScenarioKind::Dirichlet => BoundaryScenario::Dirichlet { length, position },
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "free" | "freespace" | "free_space" => Ok(ScenarioKind::Free),
            "periodic" => Ok(ScenarioKind::Periodic),
            "dirichlet" => Ok(ScenarioKind::Dirichlet),
            other => Err(format!("unknown scenario `{other}` (expected free, periodic or dirichlet)")),
        }
    }
}

/// Where the atom sits inside a cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PositionRule {
    Absolute(f64),
    FractionOfLength(f64),
}

impl PositionRule {
    pub fn resolve(self, length: f64) -> f64 {
        match self {
            PositionRule::Absolute(x) => x,
            PositionRule::FractionOfLength(f) => f * length,
        }
    }
}

impl Default for PositionRule {
    fn default() -> Self {
        PositionRule::FractionOfLength(DEFAULT_POSITION_FRACTION)
    }
}

/// Maps a key or alias to its canonical name.
pub fn canonical_key(key: &str) -> Option<&'static str> {
    Some(match key {
        "coupling" | "lambda" => "coupling",
        "atom_size" | "sigma" => "atom_size",
        "gap" | "omega" | "Omega" => "gap",
        "duration" | "T" => "duration",
        "amplitude" | "a" => "amplitude",
        "scenario" => "scenario",
        "length" | "L" => "length",
        "position" | "x_a" => "position",
        "position_fraction" => "position_fraction",
        "cutoff" | "N_c" => "cutoff",
        _ => return None,
    })
}

pub(crate) fn parse_number(entry: &Entry) -> Result<f64, ConfigFileError> {
    entry.value.parse::<f64>().map_err(|_| ConfigFileError::BadNumber {
        line: entry.line,
        key: entry.key.clone(),
        value: entry.value.clone(),
    })
}

/// A configuration with every field optional, as read from a file.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConfigDraft {
    pub coupling: Option<f64>,
    pub atom_size: Option<f64>,
    pub gap: Option<f64>,
    pub duration: Option<f64>,
    pub amplitude: Option<f64>,
    pub scenario: Option<ScenarioKind>,
    pub length: Option<f64>,
    pub position: Option<PositionRule>,
    pub cutoff: Option<f64>,
}

impl ConfigDraft {
    /// Applies `entry` if its key is a config field. Returns `Ok(false)` for
    /// keys that are not config fields so callers can handle them.
    pub fn apply(&mut self, entry: &Entry) -> Result<bool, ConfigFileError> {
        let Some(key) = canonical_key(&entry.key) else { return Ok(false) };
        let duplicate = || ConfigFileError::DuplicateKey { line: entry.line, key: entry.key.clone() };
        let set = |slot: &mut Option<f64>| -> Result<(), ConfigFileError> {
            if slot.is_some() {
                return Err(duplicate());
            }
            *slot = Some(parse_number(entry)?);
            Ok(())
        };
        match key {
            "coupling" => set(&mut self.coupling)?,
            "atom_size" => set(&mut self.atom_size)?,
            "gap" => set(&mut self.gap)?,
            "duration" => set(&mut self.duration)?,
            "amplitude" => set(&mut self.amplitude)?,
            "length" => set(&mut self.length)?,
            "cutoff" => set(&mut self.cutoff)?,
            "scenario" => {
                if self.scenario.is_some() {
                    return Err(duplicate());
                }
                let kind = entry
                    .value
                    .parse::<ScenarioKind>()
                    .map_err(|message| ConfigFileError::BadValue { line: entry.line, message })?;
                self.scenario = Some(kind);
            }
            "position" | "position_fraction" => {
                if self.position.is_some() {
                    return Err(ConfigFileError::ConflictingPosition);
                }
                let v = parse_number(entry)?;
                self.position = Some(if key == "position" {
                    PositionRule::Absolute(v)
                } else {
                    PositionRule::FractionOfLength(v)
                });
            }
            _ => unreachable!("canonical_key returned an unhandled key"),
        }
        Ok(true)
    }

    /// Non-geometric fields, filled from the reference configuration; the
    /// scenario is left as free space.
    pub fn base(&self) -> PhysicalConfig {
        let r = PhysicalConfig::reference();
        PhysicalConfig {
            coupling: self.coupling.unwrap_or(r.coupling),
            atom_size: self.atom_size.unwrap_or(r.atom_size),
            gap: self.gap.unwrap_or(r.gap),
            duration: self.duration.unwrap_or(r.duration),
            amplitude: self.amplitude.unwrap_or(r.amplitude),
            scenario: BoundaryScenario::FreeSpace,
            cutoff: self.cutoff.unwrap_or(r.cutoff),
        }
    }

    pub fn resolve(&self) -> Result<PhysicalConfig, ConfigFileError> {
        let kind = self.scenario.unwrap_or(ScenarioKind::Free);
        let mut config = self.base();
        if kind != ScenarioKind::Free {
            let length = self.length.ok_or(ConfigFileError::MissingLength { scenario: kind.name() })?;
            let position = self.position.unwrap_or_default().resolve(length);
            config.scenario = kind.build(length, position);
        }
        Ok(config.validate()?)
    }

    /// As [`resolve`](Self::resolve), but a missing length is taken from the
    /// resonance condition of `setup`.
    pub fn resolve_resonant(&self, setup: &ResonantSetup) -> Result<PhysicalConfig, ConfigFileError> {
        let kind = self.scenario.and_then(ScenarioKind::cavity).ok_or(ConfigFileError::NotACavity)?;
        let mut draft = *self;
        if draft.length.is_none() {
            draft.length = Some(setup.length(kind, self.base().gap));
        }
        draft.resolve()
    }
}

pub fn parse_draft(text: &str) -> Result<ConfigDraft, ConfigFileError> {
    let mut draft = ConfigDraft::default();
    for entry in parse_entries(text)? {
        if !draft.apply(&entry)? {
            return Err(ConfigFileError::UnknownKey { line: entry.line, key: entry.key });
        }
    }
    Ok(draft)
}

pub fn parse_config(text: &str) -> Result<PhysicalConfig, ConfigFileError> {
    parse_draft(text)?.resolve()
}

pub fn read_text(path: &Path) -> Result<String, ConfigFileError> {
    fs::read_to_string(path).map_err(|source| ConfigFileError::Io { path: path.to_path_buf(), source })
}

pub fn load_draft(path: &Path) -> Result<ConfigDraft, ConfigFileError> {
    parse_draft(&read_text(path)?)
}

pub fn load_config(path: &Path) -> Result<PhysicalConfig, ConfigFileError> {
    parse_config(&read_text(path)?)
}

/// Writes `config` in the file format; `parse_config` reads it back exactly.
pub fn render_config(config: &PhysicalConfig) -> String {
    let mut out = format!(
        "coupling = {:e}\natom_size = {:e}\ngap = {:e}\nduration = {:e}\namplitude = {:e}\ncutoff = {:e}\nscenario = {}\n",
        config.coupling,
        config.atom_size,
        config.gap,
        config.duration,
        config.amplitude,
        config.cutoff,
        config.scenario.name(),
    );
    if let (Some(length), Some(position)) = (config.scenario.length(), config.scenario.position()) {
        out.push_str(&format!("length = {length:e}\nposition = {position:e}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_the_reference() {
        assert_eq!(parse_config("").unwrap(), PhysicalConfig::reference());
        assert_eq!(parse_config("# nothing\n\n   \n").unwrap(), PhysicalConfig::reference());
    }

    #[test]
    fn aliases_and_comments() {
        let text = "lambda = 0.02  # stronger\nsigma=0.002\nT = 2\na = 0.5\nscenario = Dirichlet\nL = 10\nx_a = 2.5\nN_c = 12\nomega = 1.5\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.coupling, 0.02);
        assert_eq!(cfg.atom_size, 0.002);
        assert_eq!(cfg.duration, 2.0);
        assert_eq!(cfg.amplitude, 0.5);
        assert_eq!(cfg.gap, 1.5);
        assert_eq!(cfg.cutoff, 12.0);
        assert_eq!(cfg.scenario, BoundaryScenario::Dirichlet { length: 10.0, position: 2.5 });
    }

    #[test]
    fn default_and_fractional_positions() {
        let cfg = parse_config("scenario = periodic\nlength = 3").unwrap();
        assert_eq!(cfg.scenario.position(), Some(3.0 * PI / 6.0));
        let cfg = parse_config("scenario = dirichlet\nlength = 4\nposition_fraction = 0.25").unwrap();
        assert_eq!(cfg.scenario.position(), Some(1.0));
        assert!(matches!(
            parse_config("scenario = dirichlet\nlength = 4\nposition_fraction = 0.25\nx_a = 1"),
            Err(ConfigFileError::ConflictingPosition)
        ));
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_config("lambda = 0.01\nfoo = 1").unwrap_err();
        assert_eq!(err.to_string(), "line 2: unknown key `foo`");
        let err = parse_config("\n\nT 1").unwrap_err();
        assert_eq!(err.to_string(), "line 3: expected `key = value`");
        let err = parse_config("T = one").unwrap_err();
        assert_eq!(err.to_string(), "line 1: `one` is not a number (key `T`)");
        let err = parse_config("T = 1\nduration = 2").unwrap_err();
        assert!(matches!(err, ConfigFileError::DuplicateKey { line: 2, .. }));
        let err = parse_config("scenario = box").unwrap_err();
        assert!(matches!(err, ConfigFileError::BadValue { line: 1, .. }));
    }

    #[test]
    fn invalid_values_are_rejected() {
        assert!(matches!(
            parse_config("lambda = 0").unwrap_err(),
            ConfigFileError::Invalid(ConfigError::NonPositiveCoupling)
        ));
        assert!(matches!(
            parse_config("lambda = NaN").unwrap_err(),
            ConfigFileError::Invalid(ConfigError::NonPositiveCoupling)
        ));
        assert!(matches!(parse_config("scenario = periodic").unwrap_err(), ConfigFileError::MissingLength { .. }));
        assert!(matches!(
            parse_config("scenario = dirichlet\nL = 3\nx_a = 3").unwrap_err(),
            ConfigFileError::Invalid(ConfigError::PositionOutsideCavity { .. })
        ));
    }

    #[test]
    fn render_round_trips() {
        let configs = [
            PhysicalConfig::reference(),
            PhysicalConfig::reference()
                .with_amplitude(1.0 / 3.0)
                .with_scenario(BoundaryScenario::Dirichlet { length: 3.0 * PI, position: PI * PI / 2.0 }),
            PhysicalConfig::reference().with_scenario(BoundaryScenario::Periodic { length: 7.0, position: 0.1 }),
        ];
        for cfg in configs {
            assert_eq!(parse_config(&render_config(&cfg)).unwrap(), cfg);
        }
    }

    #[test]
    fn resonant_length_is_derived() {
        let setup = ResonantSetup::new(3).unwrap();
        let cfg = parse_draft("scenario = dirichlet").unwrap().resolve_resonant(&setup).unwrap();
        assert_eq!(cfg.scenario.length(), Some(3.0 * PI));
        assert!(matches!(parse_draft("").unwrap().resolve_resonant(&setup), Err(ConfigFileError::NotACavity)));
    }
}
