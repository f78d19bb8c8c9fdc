//! Second-order kernels `X₊₊, X₋₋, J₊₊, J₋₋, J₊₋, J₋₊`.
//!
//! For every scenario the kernels share the structure
//!
//! ```text
//! X±± = -λ² Σ_k w(k) · ordered(k ± Ω)
//! J±± =  λ² Σ_k w(k) · same_sign(k ± Ω)
//! J±∓ =  λ² Σ_k w(k) · cross(k, Ω, ±)
//! ```
//!
//! where `Σ_k` is `∫₀^{N_c/σ} dk` in free space and a sum over cavity modes
//! `k_n ≤ N_c/σ` otherwise, and the mode weight is
//!
//! | scenario  | `w`                               |
//! |-----------|-----------------------------------|
//! | free      | `k/(2π) F̃(k)²`                    |
//! | periodic  | `(k_n/L) F̃(k_n)²`                 |
//! | Dirichlet | `(k_n/L) F̃(k_n)² sin²(k_n x_a)`   |
//!
//! All six kernels are accumulated on the same quadrature mesh (or the same
//! mode loop), so `2 Re X_rr + J_rr = 0` holds to rounding.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::math::{abs, cos, floor, sin, sin_defect, sinc, CompensatedSum};
use crate::params::{BoundaryScenario, PhysicalConfig};
use crate::quadrature::{integrate, Tolerance};
use crate::time_factors::cross_envelope;

/// Components of the unscaled mode integrand: `Re/Im` of the two ordered
/// factors, the two same-sign factors, and the real envelope of the cross
/// factor.
const COMPONENTS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSet {
    pub x_pp: Complex64,
    pub x_mm: Complex64,
    pub j_pp: Complex64,
    pub j_mm: Complex64,
    pub j_pm: Complex64,
    pub j_mp: Complex64,
    pub scenario: BoundaryScenario,
    /// Quadrature error estimate (free space) or magnitude of the last
    /// retained mode (cavities), already scaled by `λ²`.
    pub error_estimate: f64,
}

impl KernelSet {
    pub fn zero(scenario: BoundaryScenario) -> Self {
        let z = Complex64::new(0.0, 0.0);
        KernelSet { x_pp: z, x_mm: z, j_pp: z, j_mm: z, j_pm: z, j_mp: z, scenario, error_estimate: 0.0 }
    }

    pub fn as_array(&self) -> [Complex64; 6] {
        [self.x_pp, self.x_mm, self.j_pp, self.j_mm, self.j_pm, self.j_mp]
    }

    /// `max(|2 Re X₊₊ + J₊₊|, |2 Re X₋₋ + J₋₋|)`.
    pub fn trace_defect(&self) -> f64 {
        f64::max(abs(2.0 * self.x_pp.re + self.j_pp.re), abs(2.0 * self.x_mm.re + self.j_mm.re))
    }

    /// Largest relative change of any kernel between `self` and `other`.
    pub fn max_relative_change(&self, other: &KernelSet) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(a, b)| {
                let scale = f64::max(a.norm(), b.norm());
                if scale == 0.0 {
                    0.0
                } else {
                    (a - b).norm() / scale
                }
            })
            .fold(0.0, f64::max)
    }

    fn from_integrals(raw: &[f64; COMPONENTS], coupling: f64, gap: f64, duration: f64) -> (Self, f64) {
        let l2 = coupling * coupling;
        let phase = Complex64::new(cos(gap * duration), sin(gap * duration));
        let j_pm = phase * (l2 * raw[6]);
        let set = KernelSet {
            x_pp: Complex64::new(-(l2 * raw[0]), -(l2 * raw[1])),
            x_mm: Complex64::new(-(l2 * raw[2]), -(l2 * raw[3])),
            j_pp: Complex64::new(l2 * raw[4], 0.0),
            j_mm: Complex64::new(l2 * raw[5], 0.0),
            j_pm,
            j_mp: j_pm.conj(),
            scenario: BoundaryScenario::FreeSpace,
            error_estimate: 0.0,
        };
        (set, l2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOptions {
    /// Tolerances on the integrals before the `λ²` prefactor, so the mesh
    /// (and hence every kernel) scales exactly with `λ²`.
    pub tolerance: Tolerance,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions { tolerance: Tolerance::default() }
    }
}

/// Unscaled integrand for one mode with weight `w`.
#[inline]
fn mode_terms(k: f64, weight: f64, gap: f64, duration: f64) -> [f64; COMPONENTS] {
    let t2 = duration * duration;
    let up = k + gap;
    let um = k - gap;
    let sp = sinc(0.5 * up * duration);
    let sm = sinc(0.5 * um * duration);
    let same_p = t2 * sp * sp;
    let same_m = t2 * sm * sm;
    [
        weight * (0.5 * same_p),
        weight * (t2 * sin_defect(up * duration)),
        weight * (0.5 * same_m),
        weight * (t2 * sin_defect(um * duration)),
        weight * same_p,
        weight * same_m,
        weight * cross_envelope(k, gap, duration),
    ]
}

pub fn compute_kernels(config: &PhysicalConfig) -> Result<KernelSet, Error> {
    compute_kernels_with(config, &KernelOptions::default())
}

pub fn compute_kernels_with(config: &PhysicalConfig, options: &KernelOptions) -> Result<KernelSet, Error> {
    config.check()?;
    if config.duration == 0.0 {
        return Ok(KernelSet::zero(config.scenario));
    }
    let (raw, raw_error) = match config.scenario {
        BoundaryScenario::FreeSpace => free_space_integrals(config, options)?,
        BoundaryScenario::Periodic { length, .. } => {
            let spacing = 2.0 * PI / length;
            mode_sum(config, spacing, |k| k / length)
        }
        BoundaryScenario::Dirichlet { length, position } => {
            let spacing = PI / length;
            mode_sum(config, spacing, |k| {
                let s = sin(k * position);
                k / length * s * s
            })
        }
    };
    let (mut set, l2) = KernelSet::from_integrals(&raw, config.coupling, config.gap, config.duration);
    set.scenario = config.scenario;
    set.error_estimate = l2 * raw_error;
    Ok(set)
}

fn free_space_integrals(config: &PhysicalConfig, options: &KernelOptions) -> Result<([f64; COMPONENTS], f64), Error> {
    let k_max = config.momentum_cutoff();
    let gap = config.gap;
    let duration = config.duration;
    let profile = config.profile();

    // Split at the resonance k = Ω and at a few oscillation periods around it.
    let mut breaks: Vec<f64> = Vec::with_capacity(12);
    breaks.push(0.0);
    let period = 2.0 * PI / duration;
    for j in -4i32..=4 {
        let b = gap + f64::from(j) * period;
        if b > 0.0 && b < k_max {
            breaks.push(b);
        }
    }
    breaks.push(k_max);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let est = integrate(
        |k| {
            let w = k / (2.0 * PI) * profile.transform_squared(k);
            mode_terms(k, w, gap, duration)
        },
        &breaks,
        &options.tolerance,
    );
    if !est.converged {
        let worst = (0..COMPONENTS)
            .map(|c| est.error[c] / f64::max(options.tolerance.abs, options.tolerance.rel * abs(est.value[c])))
            .fold(0.0, f64::max);
        return Err(Error::QuadratureNonConvergence {
            estimate: est.max_error(),
            tolerance: est.max_error() / worst,
            panels: est.panels,
        });
    }
    Ok((est.value, est.max_error()))
}

/// Sums modes `k_n = n·spacing`, `1 ≤ n`, `k_n ≤ N_c/σ`.
fn mode_sum(config: &PhysicalConfig, spacing: f64, density: impl Fn(f64) -> f64) -> ([f64; COMPONENTS], f64) {
    let n_max = floor(config.momentum_cutoff() / spacing) as u64;
    let profile = config.profile();
    let mut sums = [CompensatedSum::default(); COMPONENTS];
    let mut last = [0.0; COMPONENTS];
    for n in 1..=n_max {
        let k = n as f64 * spacing;
        let w = density(k) * profile.transform_squared(k);
        last = mode_terms(k, w, config.gap, config.duration);
        for (s, v) in sums.iter_mut().zip(last.iter()) {
            s.add(*v);
        }
    }
    let mut value = [0.0; COMPONENTS];
    for (v, s) in value.iter_mut().zip(sums.iter()) {
        *v = s.value();
    }
    let tail = last.iter().map(|v| abs(*v)).fold(0.0, f64::max);
    (value, tail)
}

/// Recomputes the kernels at each cutoff in `cutoffs`.
pub fn kernel_convergence_probe(config: &PhysicalConfig, cutoffs: &[f64]) -> Result<Vec<(f64, KernelSet)>, Error> {
    cutoffs
        .iter()
        .map(|&nc| compute_kernels(&config.with_cutoff(nc)).map(|k| (nc, k)))
        .collect()
}
