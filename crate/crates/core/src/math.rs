// Thin wrappers over libm so the rest of the crate reads like std code.

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `sin(x)/x` with the removable singularity at zero filled in.
#[inline]
pub(crate) fn sinc(x: f64) -> f64 {
    if abs(x) < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        sin(x) / x
    }
}

/// `(sin(x) - x) / x²`, evaluated by its Taylor series near zero where the
/// direct form cancels catastrophically.
#[inline]
pub(crate) fn sin_defect(x: f64) -> f64 {
    if abs(x) < 0.5 {
        let x2 = x * x;
        let mut term = -x / 6.0;
        let mut sum = term;
        for j in 1..12u32 {
            let j = f64::from(j);
            term *= -x2 / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
            sum += term;
        }
        sum
    } else {
        (sin(x) - x) / (x * x)
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if abs(self.sum) >= abs(x) {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_branches_meet() {
        for &x in &[9.9e-5, 1.0e-4, 1.01e-4] {
            let direct = sin(x) / x;
            assert!((sinc(x) - direct).abs() < 1e-15);
        }
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn sin_defect_branches_meet() {
        for &x in &[0.4999, 0.5, 0.5001, -0.5] {
            let direct = (sin(x) - x) / (x * x);
            let series = {
                let x2 = x * x;
                let mut term = -x / 6.0;
                let mut sum = term;
                for j in 1..12 {
                    let j = j as f64;
                    term *= -x2 / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
                    sum += term;
                }
                sum
            };
            assert!((direct - series).abs() < 1e-14, "x={x}");
        }
        assert!((sin_defect(1e-6) + 1e-6 / 6.0).abs() < 1e-20);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-13).abs() < 1e-25);
    }
}
