//! Certified randomness from a two-level Unruh–DeWitt detector.
//!
//! A two-level atom with a Gaussian spatial profile is coupled (derivative
//! coupling, sharp switching on `[0, T]`) to a massless scalar field in
//! 1+1 dimensions: free space, a periodic loop, or a Dirichlet cavity. The
//! reduced atomic state is evaluated to second order in the coupling, and
//! the conditional min-entropy of an optimal projective measurement is
//! computed against an adversary holding the field.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. Units are
//! natural, `c = ħ = 1`.
//!
//! Pipeline:
//!
//! ```text
//! PhysicalConfig --compute_kernels--> KernelSet --evolve--> DensityMatrix2
//!                                                      |
//!                                         purity / SchmidtPair --> RandomnessReport
//! ```
//!
//! [`rwa`] holds the single-mode, rotating-wave (Jaynes–Cummings) reference
//! used to measure how much that approximation overestimates the randomness.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod kernels;
pub mod params;
pub mod quadrature;
pub mod randomness;
pub mod rwa;
pub mod state;
pub mod time_factors;

mod math;

pub use error::{ConfigError, Error};
pub use kernels::{compute_kernels, compute_kernels_with, kernel_convergence_probe, KernelOptions, KernelSet};
pub use params::{profile_ft, BoundaryScenario, GaussianProfile, PhysicalConfig};
pub use randomness::{
    certify, certify_with_kernels, helstrom_min_entropy, min_entropy_optimal, optimize_measurement,
    MeasurementBasis, MeasurementGrid, RandomnessReport,
};
pub use rwa::{
    appendix_diagnostic, difference_ratio, difference_ratio_with_kernels, rwa_state_exact,
    rwa_state_second_order, theta, CavityKind, ModeAmplitudes, RatioRecord, ResonantSetup,
};
pub use state::{evolve_perturbative, purity, schmidt_pair, state_from_kernels, DensityMatrix2, SchmidtPair};
pub use time_factors::{cross_j_factor, ordered_time_factor, same_sign_j_factor, CrossSign};

pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;
