//! Parameter sweeps over grids of configurations.
//!
//! Rows are ordered lexicographically: scenario first, then the grids in the
//! order they were declared, with the last grid varying fastest. Kernels do
//! not depend on the initial amplitude, so they are computed once per
//! distinct remaining configuration and shared.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use udw_core::{
    certify_with_kernels, compute_kernels, difference_ratio_with_kernels, BoundaryScenario, Error, KernelSet,
    PhysicalConfig, ResonantSetup,
};

use crate::config_file::{canonical_key, PositionRule, ScenarioKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Amplitude,
    Duration,
    Coupling,
    AtomSize,
    Gap,
    Length,
    Position,
    Cutoff,
}

impl Axis {
    pub const ALL: [Axis; 8] = [
        Axis::Amplitude,
        Axis::Duration,
        Axis::Coupling,
        Axis::AtomSize,
        Axis::Gap,
        Axis::Length,
        Axis::Position,
        Axis::Cutoff,
    ];

    /// Column name in the CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Axis::Amplitude => "a",
            Axis::Duration => "T",
            Axis::Coupling => "lambda",
            Axis::AtomSize => "sigma",
            Axis::Gap => "omega",
            Axis::Length => "L",
            Axis::Position => "x_a",
            Axis::Cutoff => "N_c",
        }
    }

    /// Accepts the column name, the config field name or its alias.
    pub fn from_name(name: &str) -> Option<Axis> {
        if let Some(axis) = Axis::ALL.iter().find(|a| a.name() == name) {
            return Some(*axis);
        }
        Some(match canonical_key(name)? {
            "coupling" => Axis::Coupling,
            "atom_size" => Axis::AtomSize,
            "gap" => Axis::Gap,
            "duration" => Axis::Duration,
            "amplitude" => Axis::Amplitude,
            "length" => Axis::Length,
            "position" => Axis::Position,
            "cutoff" => Axis::Cutoff,
            _ => return None,
        })
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub axis: Axis,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn new(axis: Axis, values: Vec<f64>) -> Self {
        Grid { axis, values }
    }

    /// `n` evenly spaced points from `lo` to `hi` inclusive.
    pub fn linspace(axis: Axis, lo: f64, hi: f64, n: usize) -> Self {
        let values = match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        };
        Grid { axis, values }
    }

    /// `n` points from `10^lo` to `10^hi`, evenly spaced in the exponent.
    pub fn logspace(axis: Axis, lo: f64, hi: f64, n: usize) -> Self {
        let mut grid = Grid::linspace(axis, lo, hi, n);
        for v in &mut grid.values {
            *v = 10f64.powf(*v);
        }
        grid
    }

    fn check(&self) -> Result<(), SweepError> {
        if self.values.is_empty() {
            return Err(SweepError::EmptyGrid(self.axis));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(SweepError::NonFiniteGrid(self.axis));
        }
        let increasing = self.values.windows(2).all(|w| w[1] > w[0]);
        let decreasing = self.values.windows(2).all(|w| w[1] < w[0]);
        if !(increasing || decreasing) {
            return Err(SweepError::NonMonotoneGrid(self.axis));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Certify,
    /// Also compares against the resonant single-mode reference for mode
    /// `mode_index`; cavity lengths follow from the resonance condition.
    Ratio { mode_index: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Fixed values for every field that is not swept. Its scenario is
    /// ignored; geometry comes from `scenarios`, `length` and `position`.
    pub baseline: PhysicalConfig,
    pub scenarios: Vec<ScenarioKind>,
    /// Cavity length when `L` is not swept and the mode does not fix it.
    pub length: Option<f64>,
    /// Atom placement when `x_a` is not swept.
    pub position: PositionRule,
    pub grids: Vec<Grid>,
    pub mode: SweepMode,
    /// Worker threads; 0 lets the pool pick.
    pub threads: usize,
}

impl SweepSpec {
    pub fn new(baseline: PhysicalConfig, scenarios: Vec<ScenarioKind>) -> Self {
        SweepSpec {
            baseline,
            scenarios,
            length: None,
            position: PositionRule::default(),
            grids: Vec::new(),
            mode: SweepMode::Certify,
            threads: 0,
        }
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grids.push(grid);
        self
    }

    pub fn with_length(mut self, length: f64) -> Self {
        self.length = Some(length);
        self
    }

    pub fn with_position(mut self, position: PositionRule) -> Self {
        self.position = position;
        self
    }

    pub fn with_mode(mut self, mode: SweepMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    fn grid(&self, axis: Axis) -> Option<&Grid> {
        self.grids.iter().find(|g| g.axis == axis)
    }

    /// Number of rows the sweep produces.
    pub fn row_count(&self) -> usize {
        self.scenarios.len() * self.grids.iter().map(|g| g.values.len()).product::<usize>()
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.scenarios.is_empty() {
            return Err(SweepError::NoScenarios);
        }
        for (i, s) in self.scenarios.iter().enumerate() {
            if self.scenarios[..i].contains(s) {
                return Err(SweepError::DuplicateScenario(*s));
            }
        }
        for (i, g) in self.grids.iter().enumerate() {
            if self.grids[..i].iter().any(|h| h.axis == g.axis) {
                return Err(SweepError::DuplicateAxis(g.axis));
            }
            g.check()?;
        }
        let has_free = self.scenarios.contains(&ScenarioKind::Free);
        for axis in [Axis::Length, Axis::Position] {
            if has_free && self.grid(axis).is_some() {
                return Err(SweepError::GeometryAxisWithFreeSpace(axis));
            }
        }
        match self.mode {
            SweepMode::Certify => {
                if self.scenarios.iter().any(|s| *s != ScenarioKind::Free)
                    && self.length.is_none()
                    && self.grid(Axis::Length).is_none()
                {
                    return Err(SweepError::MissingLength);
                }
            }
            SweepMode::Ratio { mode_index } => {
                ResonantSetup::new(mode_index).map_err(|_| SweepError::InvalidModeIndex)?;
                if has_free {
                    return Err(SweepError::RatioNeedsCavity);
                }
                if self.length.is_some() || self.grid(Axis::Length).is_some() {
                    return Err(SweepError::LengthFixedByResonance);
                }
            }
        }
        Ok(())
    }

    /// Every grid point, in row order. Configurations are not validated.
    pub fn points(&self) -> Vec<PhysicalConfig> {
        let per_scenario: usize = self.grids.iter().map(|g| g.values.len()).product();
        let mut out = Vec::with_capacity(self.row_count());
        let mut index = vec![0usize; self.grids.len()];
        for &kind in &self.scenarios {
            for flat in 0..per_scenario {
                // mixed-radix digits, last grid fastest
                let mut rest = flat;
                for (d, grid) in self.grids.iter().enumerate().rev() {
                    index[d] = rest % grid.values.len();
                    rest /= grid.values.len();
                }
                out.push(self.point(kind, &index));
            }
        }
        out
    }

    fn point(&self, kind: ScenarioKind, index: &[usize]) -> PhysicalConfig {
        let mut cfg = self.baseline;
        let mut length = self.length;
        let mut position = None;
        for (grid, &i) in self.grids.iter().zip(index) {
            let v = grid.values[i];
            match grid.axis {
                Axis::Amplitude => cfg.amplitude = v,
                Axis::Duration => cfg.duration = v,
                Axis::Coupling => cfg.coupling = v,
                Axis::AtomSize => cfg.atom_size = v,
                Axis::Gap => cfg.gap = v,
                Axis::Cutoff => cfg.cutoff = v,
                Axis::Length => length = Some(v),
                Axis::Position => position = Some(v),
            }
        }
        cfg.scenario = match kind.cavity() {
            None => BoundaryScenario::FreeSpace,
            Some(cavity) => {
                let length = match self.mode {
                    SweepMode::Ratio { mode_index } => {
                        ResonantSetup::new(mode_index).map(|s| s.length(cavity, cfg.gap)).unwrap_or(f64::NAN)
                    }
                    SweepMode::Certify => length.unwrap_or(f64::NAN),
                };
                let position = position.unwrap_or_else(|| self.position.resolve(length));
                kind.build(length, position)
            }
        };
        cfg
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error("no scenarios to sweep")]
    NoScenarios,
    #[error("scenario `{0}` is listed twice")]
    DuplicateScenario(ScenarioKind),
    #[error("grid `{0}` is declared twice")]
    DuplicateAxis(Axis),
    #[error("grid `{0}` is empty")]
    EmptyGrid(Axis),
    #[error("grid `{0}` contains a non-finite value")]
    NonFiniteGrid(Axis),
    #[error("grid `{0}` is not strictly monotone")]
    NonMonotoneGrid(Axis),
    #[error("grid `{0}` has no meaning in free space")]
    GeometryAxisWithFreeSpace(Axis),
    #[error("cavity scenarios need a length or an `L` grid")]
    MissingLength,
    #[error("resonant mode index must be at least 1")]
    InvalidModeIndex,
    #[error("the resonant reference needs periodic or dirichlet scenarios only")]
    RatioNeedsCavity,
    #[error("cavity length is fixed by the resonant mode and cannot be set")]
    LengthFixedByResonance,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Outputs of one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowValues {
    pub purity: f64,
    pub min_entropy_bits: f64,
    pub kernel_err: f64,
    pub h_rwa: Option<f64>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub config: PhysicalConfig,
    pub outcome: Result<RowValues, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub mode: SweepMode,
    pub rows: Vec<Row>,
}

impl SweepResult {
    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }
}

fn evaluate_with(config: &PhysicalConfig, kernels: &Result<KernelSet, Error>, mode: SweepMode) -> Row {
    let outcome = (|| -> Result<RowValues, Error> {
        let kernels = kernels.as_ref().map_err(Clone::clone)?;
        let report = certify_with_kernels(config, kernels)?;
        let (h_rwa, ratio) = match mode {
            SweepMode::Certify => (None, None),
            SweepMode::Ratio { mode_index } => {
                let setup = ResonantSetup::new(mode_index)?;
                let rec = difference_ratio_with_kernels(config, &setup, kernels)?;
                (Some(rec.h_rwa), Some(rec.ratio))
            }
        };
        Ok(RowValues {
            purity: report.purity,
            min_entropy_bits: report.min_entropy_bits,
            kernel_err: kernels.error_estimate,
            h_rwa,
            ratio,
        })
    })();
    Row { config: *config, outcome: outcome.map_err(|e| e.to_string()) }
}

/// Evaluates a single configuration.
pub fn evaluate_point(config: &PhysicalConfig, mode: SweepMode) -> Row {
    evaluate_with(config, &compute_kernels(&config.with_amplitude(0.0)), mode)
}

/// Kernels depend on everything except the amplitude.
fn kernel_key(cfg: &PhysicalConfig) -> [u64; 8] {
    let (tag, length, position) = match cfg.scenario {
        BoundaryScenario::FreeSpace => (0, 0.0, 0.0),
        BoundaryScenario::Periodic { length, position } => (1, length, position),
        BoundaryScenario::Dirichlet { length, position } => (2, length, position),
    };
    [
        tag,
        cfg.coupling.to_bits(),
        cfg.atom_size.to_bits(),
        cfg.gap.to_bits(),
        cfg.duration.to_bits(),
        cfg.cutoff.to_bits(),
        length.to_bits(),
        position.to_bits(),
    ]
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let points = spec.points();

    let mut slots: BTreeMap<[u64; 8], usize> = BTreeMap::new();
    let mut unique: Vec<PhysicalConfig> = Vec::new();
    let slot_of: Vec<usize> = points
        .iter()
        .map(|cfg| {
            *slots.entry(kernel_key(cfg)).or_insert_with(|| {
                unique.push(cfg.with_amplitude(0.0));
                unique.len() - 1
            })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads)
        .build()
        .map_err(|e| SweepError::ThreadPool(e.to_string()))?;
    let rows = pool.install(|| {
        let kernels: Vec<Result<KernelSet, Error>> = unique.par_iter().map(compute_kernels).collect();
        points
            .par_iter()
            .zip(slot_of.par_iter())
            .map(|(cfg, &slot)| evaluate_with(cfg, &kernels[slot], spec.mode))
            .collect::<Vec<Row>>()
    });
    Ok(SweepResult { mode: spec.mode, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SweepSpec {
        SweepSpec::new(PhysicalConfig::reference(), vec![ScenarioKind::Free, ScenarioKind::Periodic])
            .with_length(3.0)
            .with_grid(Grid::new(Axis::Amplitude, vec![0.0, 0.5, 1.0]))
            .with_grid(Grid::new(Axis::Duration, vec![0.5, 1.0]))
    }

    #[test]
    fn points_are_lexicographic() {
        let spec = small_spec();
        let pts = spec.points();
        assert_eq!(pts.len(), spec.row_count());
        assert_eq!(pts.len(), 12);
        let key: Vec<(f64, f64)> = pts[..6].iter().map(|c| (c.amplitude, c.duration)).collect();
        assert_eq!(key, vec![(0.0, 0.5), (0.0, 1.0), (0.5, 0.5), (0.5, 1.0), (1.0, 0.5), (1.0, 1.0)]);
        assert!(pts[..6].iter().all(|c| c.scenario == BoundaryScenario::FreeSpace));
        assert!(pts[6..].iter().all(|c| c.scenario.length() == Some(3.0)));
    }

    #[test]
    fn no_grids_is_one_point_per_scenario() {
        let spec = SweepSpec::new(PhysicalConfig::reference(), vec![ScenarioKind::Free]);
        assert_eq!(spec.points(), vec![PhysicalConfig::reference()]);
    }

    #[test]
    fn validation() {
        let empty = small_spec().with_grid(Grid::new(Axis::Coupling, vec![]));
        assert_eq!(empty.validate(), Err(SweepError::EmptyGrid(Axis::Coupling)));
        let bumpy = small_spec().with_grid(Grid::new(Axis::Coupling, vec![0.01, 0.02, 0.015]));
        assert_eq!(bumpy.validate(), Err(SweepError::NonMonotoneGrid(Axis::Coupling)));
        let flat = small_spec().with_grid(Grid::new(Axis::Coupling, vec![0.01, 0.01]));
        assert_eq!(flat.validate(), Err(SweepError::NonMonotoneGrid(Axis::Coupling)));
        let twice = small_spec().with_grid(Grid::new(Axis::Duration, vec![2.0]));
        assert_eq!(twice.validate(), Err(SweepError::DuplicateAxis(Axis::Duration)));
        let free_l = small_spec().with_grid(Grid::new(Axis::Length, vec![3.0, 4.0]));
        assert_eq!(free_l.validate(), Err(SweepError::GeometryAxisWithFreeSpace(Axis::Length)));
        let mut no_len = small_spec();
        no_len.length = None;
        assert_eq!(no_len.validate(), Err(SweepError::MissingLength));
        let ratio = small_spec().with_mode(SweepMode::Ratio { mode_index: 3 });
        assert_eq!(ratio.validate(), Err(SweepError::RatioNeedsCavity));
        assert!(small_spec().validate().is_ok());
        let descending = small_spec().with_grid(Grid::new(Axis::Coupling, vec![0.02, 0.01]));
        assert!(descending.validate().is_ok());
    }

    #[test]
    fn grids() {
        let g = Grid::linspace(Axis::Duration, 0.0, 1.0, 5);
        assert_eq!(g.values, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = Grid::logspace(Axis::AtomSize, -3.0, -1.0, 3);
        assert!((g.values[0] - 1e-3).abs() < 1e-18 && (g.values[2] - 0.1).abs() < 1e-16);
        assert_eq!(Axis::from_name("sigma"), Some(Axis::AtomSize));
        assert_eq!(Axis::from_name("atom_size"), Some(Axis::AtomSize));
        assert_eq!(Axis::from_name("T"), Some(Axis::Duration));
        assert_eq!(Axis::from_name("scenario"), None);
    }

    #[test]
    fn shared_kernels_match_direct_evaluation() {
        let spec = small_spec();
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 12);
        for row in &result.rows {
            assert_eq!(row, &evaluate_point(&row.config, SweepMode::Certify));
        }
    }

    #[test]
    fn row_errors_do_not_abort() {
        let spec = SweepSpec::new(PhysicalConfig::reference(), vec![ScenarioKind::Free])
            .with_grid(Grid::new(Axis::Coupling, vec![0.01, 1.0]));
        let result = run_sweep(&spec).unwrap();
        assert!(result.rows[0].outcome.is_ok());
        assert!(result.rows[1].outcome.as_ref().unwrap_err().contains("perturbation theory breaks down"));
        assert_eq!(result.error_count(), 1);
    }

    #[test]
    fn ratio_mode_derives_resonant_lengths() {
        let spec = SweepSpec::new(PhysicalConfig::reference(), vec![ScenarioKind::Dirichlet])
            .with_mode(SweepMode::Ratio { mode_index: 3 })
            .with_grid(Grid::new(Axis::Amplitude, vec![1.0]));
        let result = run_sweep(&spec).unwrap();
        let row = &result.rows[0];
        assert!((row.config.scenario.length().unwrap() - 3.0 * std::f64::consts::PI).abs() < 1e-15);
        let v = row.outcome.as_ref().unwrap();
        assert_eq!(v.h_rwa, Some(1.0));
        assert_eq!(v.ratio, Some(1.0 - v.min_entropy_bits));
    }
}
