//! Physical parameters shared by every stage of the computation.

use crate::error::ConfigError;
use crate::math::exp;

/// Field boundary conditions seen by the detector.
///
/// Cavity mode grids: `k_n = 2πn/L` (periodic, both propagation directions
/// folded into one weight) and `k_n = πn/L` (Dirichlet), `n ≥ 1`. The
/// periodic results never depend on `position`; it is kept only so a
/// configuration round-trips through files unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryScenario {
    FreeSpace,
    Periodic { length: f64, position: f64 },
    Dirichlet { length: f64, position: f64 },
}

impl BoundaryScenario {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryScenario::FreeSpace => "free",
            BoundaryScenario::Periodic { .. } => "periodic",
            BoundaryScenario::Dirichlet { .. } => "dirichlet",
        }
    }

    pub fn length(&self) -> Option<f64> {
        match *self {
            BoundaryScenario::FreeSpace => None,
            BoundaryScenario::Periodic { length, .. } | BoundaryScenario::Dirichlet { length, .. } => Some(length),
        }
    }

    pub fn position(&self) -> Option<f64> {
        match *self {
            BoundaryScenario::FreeSpace => None,
            BoundaryScenario::Periodic { position, .. } | BoundaryScenario::Dirichlet { position, .. } => {
                Some(position)
            }
        }
    }

    pub fn is_cavity(&self) -> bool {
        !matches!(self, BoundaryScenario::FreeSpace)
    }
}

/// Gaussian detector smearing of size `σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProfile {
    pub atom_size: f64,
}

impl GaussianProfile {
    pub fn new(atom_size: f64) -> Self {
        GaussianProfile { atom_size }
    }

    pub fn transform(&self, k: f64) -> f64 {
        profile_ft(k, self.atom_size)
    }

    /// `F̃(k)²`, the factor that enters every mode weight.
    pub fn transform_squared(&self, k: f64) -> f64 {
        let s = self.atom_size * k;
        exp(-2.0 * s * s)
    }
}

/// Momentum-space profile `F̃(k) = exp(-σ²k²)`.
///
/// Note: the exact Fourier transform of the normalised spatial Gaussian
/// `exp(-x²/σ²)/(σ√π)` is `exp(-σ²k²/4)`. This crate uses `exp(-σ²k²)`
/// throughout, so `σ` is effectively twice the spatial width parameter.
pub fn profile_ft(k: f64, sigma: f64) -> f64 {
    let s = sigma * k;
    exp(-s * s)
}

/// Every parameter of one detector run, in natural units.
///
/// The initial atomic state is `a|g⟩ + √(1-a²)|e⟩`; modes are kept up to
/// `k ≤ cutoff / atom_size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    /// Coupling strength λ.
    pub coupling: f64,
    /// Profile scale σ.
    pub atom_size: f64,
    /// Atomic gap Ω.
    pub gap: f64,
    /// Interaction time T.
    pub duration: f64,
    /// Ground-state amplitude a.
    pub amplitude: f64,
    pub scenario: BoundaryScenario,
    /// Dimensionless cutoff N_c.
    pub cutoff: f64,
}

impl PhysicalConfig {
    /// Baseline shared by most of the figures: `λ=0.01, σ=0.001, Ω=1, T=1,
    /// a=1`, free space, `N_c=6`.
    pub fn reference() -> Self {
        PhysicalConfig {
            coupling: 0.01,
            atom_size: 0.001,
            gap: 1.0,
            duration: 1.0,
            amplitude: 1.0,
            scenario: BoundaryScenario::FreeSpace,
            cutoff: 6.0,
        }
    }

    pub fn validate(self) -> Result<Self, ConfigError> {
        self.check()?;
        Ok(self)
    }

    /// Checks every constraint without consuming the configuration. NaN
    /// fails every check.
    pub fn check(&self) -> Result<(), ConfigError> {
        if !(self.coupling > 0.0 && self.coupling.is_finite()) {
            return Err(ConfigError::NonPositiveCoupling);
        }
        if !(self.atom_size > 0.0 && self.atom_size.is_finite()) {
            return Err(ConfigError::NonPositiveAtomSize);
        }
        if !(self.gap > 0.0 && self.gap.is_finite()) {
            return Err(ConfigError::NonPositiveGap);
        }
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return Err(ConfigError::NegativeDuration);
        }
        if !(0.0..=1.0).contains(&self.amplitude) {
            return Err(ConfigError::AmplitudeOutOfRange);
        }
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(ConfigError::NonPositiveCutoff);
        }
        match self.scenario {
            BoundaryScenario::FreeSpace => {}
            BoundaryScenario::Periodic { length, position } | BoundaryScenario::Dirichlet { length, position } => {
                if !(length > 0.0 && length.is_finite()) {
                    return Err(ConfigError::NonPositiveLength);
                }
                if !position.is_finite() {
                    return Err(ConfigError::NonFinitePosition);
                }
                if matches!(self.scenario, BoundaryScenario::Dirichlet { .. }) && !(position > 0.0 && position < length)
                {
                    return Err(ConfigError::PositionOutsideCavity { position, length });
                }
                if self.atom_size > length / 100.0 {
                    return Err(ConfigError::AtomTooLarge { atom_size: self.atom_size, length });
                }
            }
        }
        Ok(())
    }

    pub fn profile(&self) -> GaussianProfile {
        GaussianProfile::new(self.atom_size)
    }

    /// Largest momentum kept in mode integrals and sums, `N_c/σ`.
    pub fn momentum_cutoff(&self) -> f64 {
        self.cutoff / self.atom_size
    }

    pub fn with_duration(mut self, duration: f64) -> Self {
        self.duration = duration;
        self
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }

    pub fn with_atom_size(mut self, atom_size: f64) -> Self {
        self.atom_size = atom_size;
        self
    }

    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_scenario(mut self, scenario: BoundaryScenario) -> Self {
        self.scenario = scenario;
        self
    }
}
