//! Globally adaptive 21-point Gauss–Kronrod quadrature for vector-valued
//! integrands.
//!
//! All components share one mesh. Kernels that must satisfy exact algebraic
//! relations with each other are therefore integrated with identical nodes
//! and weights.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::math::{abs, CompensatedSum};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_973_482,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights, attached to XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-13, rel: 1e-12, max_panels: 200_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    pub panels: usize,
    pub converged: bool,
}

impl<const N: usize> Estimate<N> {
    pub fn max_error(&self) -> f64 {
        self.error.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    lo: f64,
    hi: f64,
    value: [f64; N],
    error: [f64; N],
    worst: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<const N: usize> Eq for Panel<N> {}

impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Panel<N> {
    // Largest error first; ties broken by position so the refinement order
    // is fully deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.worst.total_cmp(&other.worst).then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// QUADPACK-style error rescaling for one component. The flag is set when
/// the estimate sits on the rounding floor and bisection cannot improve it.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> (f64, bool) {
    let mut scaled = abs(err);
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = libm::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let mut at_floor = scaled == 0.0;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let floor = 50.0 * f64::EPSILON * res_abs;
        if floor >= scaled {
            scaled = floor;
            at_floor = true;
        }
    }
    (scaled, at_floor)
}

/// One 21-point Kronrod panel with its embedded 10-point Gauss error estimate.
pub fn gauss_kronrod_21<const N: usize, F>(f: &mut F, lo: f64, hi: f64) -> ([f64; N], [f64; N])
where
    F: FnMut(f64) -> [f64; N],
{
    let (value, error, _) = kronrod_panel(f, lo, hi);
    (value, error)
}

fn kronrod_panel<const N: usize, F>(f: &mut F, lo: f64, hi: f64) -> ([f64; N], [f64; N], bool)
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let abs_half = abs(half);

    let mut samples = [[0.0; N]; 21];
    samples[0] = f(center);
    for j in 0..10 {
        let dx = half * XGK[j];
        samples[1 + 2 * j] = f(center - dx);
        samples[2 + 2 * j] = f(center + dx);
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut all_at_floor = true;
    for c in 0..N {
        let fc = samples[0][c];
        let mut kronrod = WGK[10] * fc;
        let mut gauss = 0.0;
        let mut res_abs = abs(kronrod);
        for j in 0..10 {
            let a = samples[1 + 2 * j][c];
            let b = samples[2 + 2 * j][c];
            kronrod += WGK[j] * (a + b);
            res_abs += WGK[j] * (abs(a) + abs(b));
            if j % 2 == 1 {
                gauss += WG[j / 2] * (a + b);
            }
        }
        let mean = 0.5 * kronrod;
        let mut res_asc = WGK[10] * abs(fc - mean);
        for j in 0..10 {
            let a = samples[1 + 2 * j][c];
            let b = samples[2 + 2 * j][c];
            res_asc += WGK[j] * (abs(a - mean) + abs(b - mean));
        }
        value[c] = kronrod * half;
        let (e, at_floor) = rescale_error((kronrod - gauss) * half, res_abs * abs_half, res_asc * abs_half);
        error[c] = e;
        all_at_floor &= at_floor;
    }
    (value, error, all_at_floor)
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per interval between consecutive (sorted, distinct) breakpoints
/// and bisecting the worst panel until every component satisfies
/// `error ≤ max(abs, rel·|value|)` or the panel budget runs out. Panels whose
/// error is already at the rounding floor are retired rather than split; if
/// only such panels remain the result counts as converged.
pub fn integrate<const N: usize, F>(mut f: F, breakpoints: &[f64], tol: &Tolerance) -> Estimate<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let mut mesh = Mesh::<N>::new();
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            mesh.add(&mut f, w[0], w[1]);
        }
    }

    let mut exhausted = false;
    loop {
        while !mesh.satisfied(tol) {
            if mesh.active.is_empty() {
                break;
            }
            if mesh.active.len() + mesh.retired.len() >= tol.max_panels {
                exhausted = true;
                break;
            }
            let Some(worst) = mesh.active.pop() else { break };
            let mid = 0.5 * (worst.lo + worst.hi);
            if !(mid > worst.lo && mid < worst.hi) {
                // cannot split further in floating point
                mesh.active.push(worst);
                exhausted = true;
                break;
            }
            for c in 0..N {
                mesh.total_value[c] -= worst.value[c];
                mesh.total_error[c] -= worst.error[c];
            }
            mesh.add(&mut f, worst.lo, mid);
            mesh.add(&mut f, mid, worst.hi);
        }
        if exhausted || mesh.active.is_empty() {
            break;
        }
        // The running totals drift; resynchronise and refine further if the
        // exact totals still miss the target.
        let (value, error) = ordered_totals(mesh.active.iter().chain(mesh.retired.iter()));
        mesh.total_value = value;
        mesh.total_error = error;
        if mesh.satisfied(tol) {
            break;
        }
    }

    let rounding_limited = mesh.active.is_empty() && !exhausted;
    let panels = mesh.active.len() + mesh.retired.len();
    let (value, error) = ordered_totals(mesh.active.iter().chain(mesh.retired.iter()));
    let converged = rounding_limited || (0..N).all(|c| error[c] <= f64::max(tol.abs, tol.rel * abs(value[c])));
    Estimate { value, error, panels, converged }
}

/// Compensated totals over `panels`, summed in position order so the result
/// does not depend on the refinement history.
fn ordered_totals<'a, const N: usize>(panels: impl Iterator<Item = &'a Panel<N>>) -> ([f64; N], [f64; N]) {
    let mut panels: Vec<&Panel<N>> = panels.collect();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut sums = [CompensatedSum::default(); N];
    let mut errors = [CompensatedSum::default(); N];
    for p in &panels {
        for c in 0..N {
            sums[c].add(p.value[c]);
            errors[c].add(p.error[c]);
        }
    }
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for c in 0..N {
        value[c] = sums[c].value();
        error[c] = errors[c].value();
    }
    (value, error)
}

struct Mesh<const N: usize> {
    active: BinaryHeap<Panel<N>>,
    retired: Vec<Panel<N>>,
    total_value: [f64; N],
    total_error: [f64; N],
}

impl<const N: usize> Mesh<N> {
    fn new() -> Self {
        Mesh { active: BinaryHeap::new(), retired: Vec::new(), total_value: [0.0; N], total_error: [0.0; N] }
    }

    fn add<F: FnMut(f64) -> [f64; N]>(&mut self, f: &mut F, lo: f64, hi: f64) {
        let (value, error, at_floor) = kronrod_panel(f, lo, hi);
        for c in 0..N {
            self.total_value[c] += value[c];
            self.total_error[c] += error[c];
        }
        let worst = error.iter().copied().fold(0.0, f64::max);
        let panel = Panel { lo, hi, value, error, worst };
        if at_floor {
            self.retired.push(panel);
        } else {
            self.active.push(panel);
        }
    }

    fn satisfied(&self, tol: &Tolerance) -> bool {
        (0..N).all(|c| self.total_error[c] <= f64::max(tol.abs, tol.rel * abs(self.total_value[c])))
    }
}
