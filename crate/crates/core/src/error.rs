use thiserror::Error;

/// A violated constraint on a [`PhysicalConfig`](crate::PhysicalConfig).
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ConfigError {
    #[error("coupling must be positive")]
    NonPositiveCoupling,
    #[error("atom size must be positive")]
    NonPositiveAtomSize,
    #[error("gap must be positive")]
    NonPositiveGap,
    #[error("duration must be non-negative")]
    NegativeDuration,
    #[error("amplitude must lie in [0, 1]")]
    AmplitudeOutOfRange,
    #[error("cutoff must be positive")]
    NonPositiveCutoff,
    #[error("cavity length must be positive")]
    NonPositiveLength,
    #[error("atom position must be finite")]
    NonFinitePosition,
    #[error("atom position {position} lies outside the Dirichlet cavity (0, {length})")]
    PositionOutsideCavity { position: f64, length: f64 },
    #[error("atom size {atom_size} exceeds 1/100 of the cavity length {length}")]
    AtomTooLarge { atom_size: f64, length: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("mode integral did not converge: error estimate {estimate:e} above tolerance {tolerance:e} after {panels} panels")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64, panels: usize },
    #[error("perturbation theory breaks down: second-order entry of magnitude {magnitude} exceeds {limit}")]
    PerturbationBreakdown { magnitude: f64, limit: f64 },
    #[error("second-order state has trace {trace}, expected 1")]
    TraceViolation { trace: f64 },
    #[error("state is not physical: eigenvalue {eigenvalue:e} below -1e-8")]
    UnphysicalState { eigenvalue: f64 },
    #[error("purity {purity} outside [1/2, 1]")]
    PurityOutOfRange { purity: f64 },
    #[error("measurement grid needs at least 64 points per angle, got {points}")]
    GridTooCoarse { points: usize },
    #[error("no single-mode reference exists in free space")]
    FreeSpaceReference,
    #[error("resonant mode index must be at least 1")]
    InvalidModeIndex,
    #[error("cavity length {length} is not resonant with mode {mode} (expected {expected})")]
    NotResonant { length: f64, mode: u32, expected: f64 },
    #[error("difference ratio undefined: reference min-entropy is zero")]
    UndefinedRatio,
}
