//! Closed-form time integrals for the sharp switching window `[0, T]`.
//!
//! With `f(u) = ∫₀ᵀ e^{iut} dt`, every second-order kernel reduces to one of
//! three factors per mode. They are written in terms of `sinc` so the
//! removable singularities at `u = 0` and `k = Ω` need no special casing at
//! the call sites.

use num_complex::Complex64;

use crate::math::{cos, sin, sin_defect, sinc};

/// Which of the two cross kernels: `+` selects `J₊₋`, `-` selects `J₋₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSign {
    Plus,
    Minus,
}

impl CrossSign {
    fn value(self) -> f64 {
        match self {
            CrossSign::Plus => 1.0,
            CrossSign::Minus => -1.0,
        }
    }
}

/// Time-ordered double integral `∫₀ᵀdt ∫₀ᵗdt' e^{-iut} e^{iut'}`, i.e.
/// `T/(iu) - (e^{-iuT} - 1)/u²`.
///
/// Real part `2 sin²(uT/2)/u²`, imaginary part `(sin uT - uT)/u²`; tends to
/// `T²/2` as `u → 0`.
pub fn ordered_time_factor(u: f64, duration: f64) -> Complex64 {
    let t2 = duration * duration;
    let s = sinc(0.5 * u * duration);
    Complex64::new(0.5 * t2 * s * s, t2 * sin_defect(u * duration))
}

/// `|f(u)|² = 4 sin²(uT/2)/u²`, limit `T²` at `u = 0`.
pub fn same_sign_j_factor(u: f64, duration: f64) -> f64 {
    let s = sinc(0.5 * u * duration);
    duration * duration * s * s
}

/// `f(k±Ω) f(k∓Ω)*`, i.e. `[1 + e^{±2iΩT} - 2cos(kT) e^{±iΩT}] / (k² - Ω²)`.
///
/// Factorised as `T² sinc((k+Ω)T/2) sinc((k-Ω)T/2) e^{±iΩT}`; at `k = Ω`
/// this is `T sin(ΩT) e^{±iΩT} / Ω`.
pub fn cross_j_factor(k: f64, gap: f64, duration: f64, sign: CrossSign) -> Complex64 {
    let magnitude = cross_envelope(k, gap, duration);
    let phase = sign.value() * gap * duration;
    Complex64::new(magnitude * cos(phase), magnitude * sin(phase))
}

/// Real envelope of [`cross_j_factor`]; its phase `e^{±iΩT}` does not depend
/// on `k` and is applied once per kernel.
#[inline]
pub(crate) fn cross_envelope(k: f64, gap: f64, duration: f64) -> f64 {
    duration * duration * sinc(0.5 * (k + gap) * duration) * sinc(0.5 * (k - gap) * duration)
}
