//! Reduced atomic state after the interaction, to second order in `λ`.
//!
//! Basis `{|g⟩, |e⟩}` with `|g⟩` in row 0. Starting from
//! `|ψ⟩ = a|g⟩ + b|e⟩`, `b = √(1-a²)`, the state is
//!
//! ```text
//! ρ₀₀ = a² + b² J₋₋ + 2a² Re X₊₊
//! ρ₀₁ = ab (1 + J₋₊ + X₊₊ + X₋₋*)
//! ρ₁₁ = b² + a² J₊₊ + 2b² Re X₋₋
//! ρ₁₀ = ρ₀₁*
//! ```

use num_complex::Complex64;

use crate::error::Error;
use crate::kernels::{compute_kernels, KernelSet};
use crate::math::{abs, sqrt};
use crate::params::PhysicalConfig;

/// Second-order entries larger than this mean the coupling is too strong for
/// the expansion.
pub const BREAKDOWN_LIMIT: f64 = 0.1;
/// Eigenvalues in `[-NEGATIVE_TOLERANCE, 0)` are truncation noise and are
/// clamped to zero; anything lower is an error.
pub const NEGATIVE_TOLERANCE: f64 = 1e-8;
const TRACE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        DensityMatrix2 { entries }
    }

    pub fn from_real(r00: f64, r01: f64, r11: f64) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        DensityMatrix2 { entries: [[c(r00), c(r01)], [c(r01), c(r11)]] }
    }

    /// Projector onto `a|g⟩ + √(1-a²)|e⟩`.
    pub fn pure(amplitude: f64) -> Self {
        let a = amplitude;
        let b2 = f64::max(0.0, 1.0 - a * a);
        Self::from_real(a * a, a * sqrt(b2), b2)
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0].re + self.entries[1][1].re
    }

    pub fn purity(&self) -> f64 {
        let e = &self.entries;
        e[0][0].norm_sqr() + e[1][1].norm_sqr() + e[0][1].norm_sqr() + e[1][0].norm_sqr()
    }

    /// Raw eigenvalues, descending, without clamping.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let e = &self.entries;
        let mean = 0.5 * (e[0][0].re + e[1][1].re);
        let half_diff = 0.5 * (e[0][0].re - e[1][1].re);
        let radius = sqrt(half_diff * half_diff + e[0][1].norm_sqr());
        (mean + radius, mean - radius)
    }

    pub fn max_abs_difference(&self, other: &DensityMatrix2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }
}

/// `√(1-a²)`, clamped so rounding never produces NaN.
fn excited_amplitude(a: f64) -> f64 {
    sqrt(f64::max(0.0, 1.0 - a * a))
}

/// Squared Schmidt coefficients of the atom–field pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtPair {
    pub major: f64,
    pub minor: f64,
}

impl SchmidtPair {
    /// Builds a pair from one coefficient; `major` is clamped into `[1/2, 1]`.
    pub fn from_major(major: f64) -> Self {
        let major = major.clamp(0.5, 1.0);
        SchmidtPair { major, minor: 1.0 - major }
    }

    pub fn purity(&self) -> f64 {
        self.major * self.major + self.minor * self.minor
    }
}

/// Second-order correction matrix built from the kernels.
pub fn second_order_correction(amplitude: f64, kernels: &KernelSet) -> [[Complex64; 2]; 2] {
    let a = amplitude;
    let b = excited_amplitude(a);
    let (a2, b2, ab) = (a * a, b * b, a * b);
    let k = kernels;
    let d00 = b2 * k.j_mm.re + 2.0 * a2 * k.x_pp.re;
    let d11 = a2 * k.j_pp.re + 2.0 * b2 * k.x_mm.re;
    let d01 = (k.j_mp + k.x_pp + k.x_mm.conj()) * ab;
    [[Complex64::new(d00, 0.0), d01], [d01.conj(), Complex64::new(d11, 0.0)]]
}

/// Assembles the second-order state from precomputed kernels.
pub fn state_from_kernels(amplitude: f64, kernels: &KernelSet) -> Result<DensityMatrix2, Error> {
    let delta = second_order_correction(amplitude, kernels);
    let magnitude = delta.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if magnitude > BREAKDOWN_LIMIT {
        return Err(Error::PerturbationBreakdown { magnitude, limit: BREAKDOWN_LIMIT });
    }
    let mut rho = DensityMatrix2::pure(amplitude);
    for i in 0..2 {
        for j in 0..2 {
            rho.entries[i][j] += delta[i][j];
        }
    }
    let trace = rho.trace();
    if abs(trace - 1.0) > TRACE_TOLERANCE {
        return Err(Error::TraceViolation { trace });
    }
    Ok(rho)
}

pub fn evolve_perturbative(config: &PhysicalConfig) -> Result<DensityMatrix2, Error> {
    let kernels = compute_kernels(config)?;
    state_from_kernels(config.amplitude, &kernels)
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix2) -> f64 {
    rho.purity()
}

/// Eigenvalues of `ρ` as a Schmidt pair, after clamping small negative
/// eigenvalues and renormalising to unit sum.
pub fn schmidt_pair(rho: &DensityMatrix2) -> Result<SchmidtPair, Error> {
    let (hi, lo) = rho.eigenvalues();
    if lo < -NEGATIVE_TOLERANCE {
        return Err(Error::UnphysicalState { eigenvalue: lo });
    }
    let lo = f64::max(lo, 0.0);
    let sum = hi + lo;
    Ok(SchmidtPair { major: hi / sum, minor: lo / sum })
}
