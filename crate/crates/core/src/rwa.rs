//! Single-mode, rotating-wave (Jaynes–Cummings) reference for a cavity
//! tuned into resonance with mode `m`, and the relative overestimate `R` of
//! the randomness it predicts.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::RangeInclusive;

use crate::error::Error;
use crate::kernels::{compute_kernels, KernelSet};
use crate::math::{abs, cos, sin, sinc, sqrt};
use crate::params::{BoundaryScenario, PhysicalConfig};
use crate::randomness::{certify_with_kernels, min_entropy_optimal};
use crate::state::DensityMatrix2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CavityKind {
    Periodic,
    Dirichlet,
}

/// The atom is resonant with cavity mode `m`: `k_m = Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResonantSetup {
    mode_index: u32,
}

impl ResonantSetup {
    pub fn new(mode_index: u32) -> Result<Self, Error> {
        if mode_index == 0 {
            return Err(Error::InvalidModeIndex);
        }
        Ok(ResonantSetup { mode_index })
    }

    pub fn mode_index(&self) -> u32 {
        self.mode_index
    }

    /// `L = 2πm/Ω` (periodic) or `L = πm/Ω` (Dirichlet).
    pub fn length(&self, kind: CavityKind, gap: f64) -> f64 {
        let m = f64::from(self.mode_index);
        match kind {
            CavityKind::Periodic => 2.0 * PI * m / gap,
            CavityKind::Dirichlet => PI * m / gap,
        }
    }

    /// Resonant cavity with the atom at `position_fraction · L`.
    pub fn scenario(&self, kind: CavityKind, gap: f64, position_fraction: f64) -> BoundaryScenario {
        let length = self.length(kind, gap);
        let position = position_fraction * length;
        match kind {
            CavityKind::Periodic => BoundaryScenario::Periodic { length, position },
            CavityKind::Dirichlet => BoundaryScenario::Dirichlet { length, position },
        }
    }

    /// Frequency of mode `n` in units fixed by resonance, `ω_n = nΩ/m`.
    pub fn mode_frequency(&self, n: u32, gap: f64) -> f64 {
        f64::from(n) * gap / f64::from(self.mode_index)
    }

    fn check(&self, config: &PhysicalConfig) -> Result<CavityKind, Error> {
        let (kind, length) = match config.scenario {
            BoundaryScenario::FreeSpace => return Err(Error::FreeSpaceReference),
            BoundaryScenario::Periodic { length, .. } => (CavityKind::Periodic, length),
            BoundaryScenario::Dirichlet { length, .. } => (CavityKind::Dirichlet, length),
        };
        let expected = self.length(kind, config.gap);
        if abs(length - expected) > 1e-9 * expected {
            return Err(Error::NotResonant { length, mode: self.mode_index, expected });
        }
        Ok(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRecord {
    pub h_full: f64,
    pub h_rwa: f64,
    /// `(H_rwa - H_full) / H_rwa`.
    pub ratio: f64,
}

/// Rotation angle of the resonant Jaynes–Cummings dynamics,
/// `Θ = λΩF̃(Ω)T/√(2πm)` (periodic) or `λΩF̃(Ω) sin(Ωx_a) T/√(πm)` (Dirichlet).
pub fn theta(config: &PhysicalConfig, setup: &ResonantSetup) -> Result<f64, Error> {
    config.check()?;
    let kind = setup.check(config)?;
    let m = f64::from(setup.mode_index);
    let base = config.coupling * config.gap * config.profile().transform(config.gap) * config.duration;
    Ok(match (kind, config.scenario) {
        (CavityKind::Dirichlet, BoundaryScenario::Dirichlet { position, .. }) => {
            base * sin(config.gap * position) / sqrt(PI * m)
        }
        _ => base / sqrt(2.0 * PI * m),
    })
}

/// Exact resonant single-mode final state.
pub fn rwa_state_exact(amplitude: f64, theta: f64) -> DensityMatrix2 {
    let a = amplitude;
    let b2 = f64::max(0.0, 1.0 - a * a);
    let ab = a * sqrt(b2);
    let (c, s) = (cos(theta), sin(theta));
    DensityMatrix2::from_real(a * a + b2 * s * s, ab * c, b2 * c * c)
}

/// The exact state expanded to `O(Θ²)`; this is what the second-order full
/// model is compared against.
pub fn rwa_state_second_order(amplitude: f64, theta: f64) -> DensityMatrix2 {
    let a = amplitude;
    let b2 = f64::max(0.0, 1.0 - a * a);
    let ab = a * sqrt(b2);
    let t2 = theta * theta;
    DensityMatrix2::from_real(a * a + b2 * t2, ab * (1.0 - 0.5 * t2), b2 * (1.0 - t2))
}

/// `|Θ|` above which the quadratic expansion should not be trusted.
pub const SECOND_ORDER_THETA_LIMIT: f64 = 0.3;

pub fn difference_ratio(config: &PhysicalConfig, setup: &ResonantSetup) -> Result<RatioRecord, Error> {
    setup.check(config)?;
    let kernels = compute_kernels(config)?;
    difference_ratio_with_kernels(config, setup, &kernels)
}

pub fn difference_ratio_with_kernels(
    config: &PhysicalConfig,
    setup: &ResonantSetup,
    kernels: &KernelSet,
) -> Result<RatioRecord, Error> {
    let angle = theta(config, setup)?;
    let h_full = certify_with_kernels(config, kernels)?.min_entropy_bits;
    let h_rwa = min_entropy_optimal(rwa_state_second_order(config.amplitude, angle).purity())?;
    if h_rwa == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(RatioRecord { h_full, h_rwa, ratio: (h_rwa - h_full) / h_rwa })
}

/// First-order switching amplitudes of one cavity mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitudes {
    pub mode: u32,
    pub frequency: f64,
    /// `|∫₀ᵀ e^{i(Ω-ω_n)t} dt|`
    pub rotating: f64,
    /// `|∫₀ᵀ e^{i(Ω+ω_n)t} dt|`
    pub counter_rotating: f64,
}

/// `|∫₀ᵀ e^{iut} dt| = 2|sin(uT/2)/u|`.
fn window_amplitude(u: f64, duration: f64) -> f64 {
    abs(duration * sinc(0.5 * u * duration))
}

/// Rotating and counter-rotating switching amplitudes for each mode in
/// `modes`. The resonant mode's rotating amplitude grows as `T`; all others
/// stay bounded by `2/|Ω ∓ ω_n|`.
pub fn appendix_diagnostic(
    config: &PhysicalConfig,
    setup: &ResonantSetup,
    modes: RangeInclusive<u32>,
) -> Result<Vec<ModeAmplitudes>, Error> {
    config.check()?;
    setup.check(config)?;
    Ok(modes
        .map(|n| {
            let omega_n = setup.mode_frequency(n, config.gap);
            let detuning = if n == setup.mode_index { 0.0 } else { config.gap - omega_n };
            ModeAmplitudes {
                mode: n,
                frequency: omega_n,
                rotating: window_amplitude(detuning, config.duration),
                counter_rotating: window_amplitude(config.gap + omega_n, config.duration),
            }
        })
        .collect())
}
