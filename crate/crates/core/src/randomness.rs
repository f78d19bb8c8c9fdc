//! Certified randomness of one projective measurement on the atom.
//!
//! The field is reduced to an effective qubit through the Schmidt
//! decomposition of the global pure state, `√λ₀|0f₀⟩ + √λ₁|1f₁⟩`. Two routes
//! give the optimal conditional min-entropy:
//!
//! * closed form in the purity, [`min_entropy_optimal`];
//! * an explicit search over measurement bases of the Helstrom guessing
//!   probability, [`optimize_measurement`], kept as an independent check.

use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::Error;
use crate::kernels::{compute_kernels, KernelSet};
use crate::math::{cos, floor, log2, sin, sqrt};
use crate::params::PhysicalConfig;
use crate::state::{schmidt_pair, state_from_kernels, SchmidtPair};

const PURITY_SLACK: f64 = 1e-12;

/// `|m₀⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩`, `|m₁⟩ = sin θ|0⟩ - e^{iφ} cos θ|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        MeasurementBasis { theta, phi }
    }

    /// Mutually unbiased with the Schmidt basis.
    pub fn unbiased() -> Self {
        MeasurementBasis { theta: PI / 4.0, phi: 0.0 }
    }

    pub fn vectors(&self) -> ([Complex64; 2], [Complex64; 2]) {
        let (c, s) = (cos(self.theta), sin(self.theta));
        let phase = Complex64::new(cos(self.phi), sin(self.phi));
        ([Complex64::new(c, 0.0), phase * s], [Complex64::new(s, 0.0), -phase * c])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomnessReport {
    pub guessing_probability: f64,
    pub min_entropy_bits: f64,
    /// Best basis found; only the measurement search fills this.
    pub optimal_basis: Option<MeasurementBasis>,
    pub purity: f64,
    pub schmidt: Option<SchmidtPair>,
}

/// Guessing probability of the optimal measurement, `½ + √((1 - Tr ρ²)/2)`.
pub fn optimal_guessing_probability(purity: f64) -> Result<f64, Error> {
    if !(purity >= 0.5 - PURITY_SLACK && purity <= 1.0 + PURITY_SLACK) {
        return Err(Error::PurityOutOfRange { purity });
    }
    let p = purity.clamp(0.5, 1.0);
    Ok(0.5 + sqrt(0.5 * (1.0 - p)))
}

/// Optimal min-entropy in bits, `-log₂[½ + √((1 - Tr ρ²)/2)]`.
pub fn min_entropy_optimal(purity: f64) -> Result<f64, Error> {
    optimal_guessing_probability(purity).map(|pg| -log2(pg))
}

/// Holevo–Helstrom guessing probability for the given basis.
///
/// The unnormalised conditional adversary states are
/// `|e_x⟩ = √λ₀⟨m_x|0⟩|0⟩ + √λ₁⟨m_x|1⟩|1⟩` and `P_g = ½ + ½√(1 - 4|⟨e₀|e₁⟩|²)`.
pub fn helstrom_min_entropy(schmidt: &SchmidtPair, basis: &MeasurementBasis) -> RandomnessReport {
    let (m0, m1) = basis.vectors();
    let (r0, r1) = (sqrt(schmidt.major), sqrt(schmidt.minor));
    // ⟨m|0⟩ = m[0]*, ⟨m|1⟩ = m[1]*
    let e0 = [m0[0].conj() * r0, m0[1].conj() * r1];
    let e1 = [m1[0].conj() * r0, m1[1].conj() * r1];
    let overlap = e0[0].conj() * e1[0] + e0[1].conj() * e1[1];
    let norm = sqrt(f64::max(0.0, 1.0 - 4.0 * overlap.norm_sqr()));
    let pg = 0.5 + 0.5 * norm;
    RandomnessReport {
        guessing_probability: pg,
        min_entropy_bits: -log2(pg),
        optimal_basis: Some(*basis),
        purity: schmidt.purity(),
        schmidt: Some(*schmidt),
    }
}

/// Resolution of the basis search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementGrid {
    pub theta_points: usize,
    pub phi_points: usize,
    pub refine_iterations: usize,
}

impl Default for MeasurementGrid {
    fn default() -> Self {
        MeasurementGrid { theta_points: 64, phi_points: 64, refine_iterations: 40 }
    }
}

/// Exhaustive grid over `θ ∈ [0, π/2]`, `φ ∈ [0, 2π)`, then coordinate
/// descent with a halving step from the best grid point.
pub fn optimize_measurement(schmidt: &SchmidtPair, grid: &MeasurementGrid) -> Result<RandomnessReport, Error> {
    let coarsest = grid.theta_points.min(grid.phi_points);
    if coarsest < 64 {
        return Err(Error::GridTooCoarse { points: coarsest });
    }
    let d_theta = FRAC_PI_2 / (grid.theta_points - 1) as f64;
    let d_phi = 2.0 * PI / grid.phi_points as f64;
    let score = |theta: f64, phi: f64| helstrom_min_entropy(schmidt, &MeasurementBasis::new(theta, phi)).min_entropy_bits;

    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..grid.theta_points {
        let theta = i as f64 * d_theta;
        for j in 0..grid.phi_points {
            let phi = j as f64 * d_phi;
            let h = score(theta, phi);
            if h > best.2 {
                best = (theta, phi, h);
            }
        }
    }

    let (mut theta, mut phi, mut h) = best;
    let (mut step_theta, mut step_phi) = (d_theta, d_phi);
    for _ in 0..grid.refine_iterations {
        for candidate in [theta - step_theta, theta + step_theta] {
            let candidate = candidate.clamp(0.0, FRAC_PI_2);
            let v = score(candidate, phi);
            if v > h {
                theta = candidate;
                h = v;
            }
        }
        for candidate in [phi - step_phi, phi + step_phi] {
            let candidate = candidate - 2.0 * PI * floor(candidate / (2.0 * PI));
            let v = score(theta, candidate);
            if v > h {
                phi = candidate;
                h = v;
            }
        }
        step_theta *= 0.5;
        step_phi *= 0.5;
    }
    Ok(helstrom_min_entropy(schmidt, &MeasurementBasis::new(theta, phi)))
}

/// Full pipeline for one configuration.
pub fn certify(config: &PhysicalConfig) -> Result<RandomnessReport, Error> {
    let kernels = compute_kernels(config)?;
    certify_with_kernels(config, &kernels)
}

/// As [`certify`] with kernels computed elsewhere (e.g. shared by several
/// amplitudes). The purity is taken from the clamped Schmidt pair.
pub fn certify_with_kernels(config: &PhysicalConfig, kernels: &KernelSet) -> Result<RandomnessReport, Error> {
    config.check()?;
    let rho = state_from_kernels(config.amplitude, kernels)?;
    let schmidt = schmidt_pair(&rho)?;
    let purity = schmidt.purity();
    let pg = optimal_guessing_probability(purity)?;
    Ok(RandomnessReport {
        guessing_probability: pg,
        min_entropy_bits: -log2(pg),
        optimal_basis: None,
        purity,
        schmidt: Some(schmidt),
    })
}
