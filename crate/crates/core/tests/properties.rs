use std::f64::consts::{FRAC_1_SQRT_2, PI};

use proptest::prelude::*;
use udw_core::*;

fn scenario_strategy() -> impl Strategy<Value = BoundaryScenario> {
    prop_oneof![
        Just(BoundaryScenario::FreeSpace),
        (1.0f64..20.0, 0.0f64..1.0).prop_map(|(length, f)| BoundaryScenario::Periodic { length, position: f * length }),
        (1.0f64..20.0, 0.01f64..0.99).prop_map(|(length, f)| BoundaryScenario::Dirichlet { length, position: f * length }),
    ]
}

prop_compose! {
    fn config_strategy()(
        coupling in 1e-3f64..2e-2,
        atom_size in 1e-3f64..1e-2,
        gap in 0.5f64..2.0,
        duration in 0.05f64..4.0,
        amplitude in 0.0f64..=1.0,
        scenario in scenario_strategy(),
    ) -> PhysicalConfig {
        PhysicalConfig { coupling, atom_size, gap, duration, amplitude, scenario, cutoff: 6.0 }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn state_is_hermitian_with_unit_trace(cfg in config_strategy()) {
        let k = compute_kernels(&cfg).unwrap();
        prop_assert!((2.0 * k.x_pp.re + k.j_pp.re).abs() < 1e-10);
        prop_assert!((2.0 * k.x_mm.re + k.j_mm.re).abs() < 1e-10);
        prop_assert_eq!(k.j_mp, k.j_pm.conj());
        let rho = state_from_kernels(cfg.amplitude, &k).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        prop_assert_eq!(rho.entries[1][0], rho.entries[0][1].conj());
    }

    #[test]
    fn purity_deficit_scales_as_coupling_squared(cfg in config_strategy(), factor in 1.5f64..4.0) {
        let weak = compute_kernels(&cfg).unwrap();
        let strong = compute_kernels(&cfg.with_coupling(cfg.coupling * factor)).unwrap();
        for (w, s) in weak.as_array().iter().zip(strong.as_array().iter()) {
            let expected = w * factor * factor;
            prop_assert!((s - expected).norm() <= 1e-13 * expected.norm().max(1e-300));
        }
    }

    #[test]
    fn certified_entropy_is_a_valid_bit_fraction(cfg in config_strategy()) {
        let report = certify(&cfg).unwrap();
        prop_assert!(report.purity > 0.5 && report.purity <= 1.0 + 1e-15);
        prop_assert!(report.min_entropy_bits >= 0.0 && report.min_entropy_bits <= 1.0);
        let s = report.schmidt.unwrap();
        prop_assert!((s.major + s.minor - 1.0).abs() < 1e-15);
    }

    #[test]
    fn schmidt_squares_sum_to_purity(major in 0.5f64..1.0) {
        let rho = DensityMatrix2::from_real(major, 0.0, 1.0 - major);
        let p = schmidt_pair(&rho).unwrap();
        prop_assert!((p.major * p.major + p.minor * p.minor - rho.purity()).abs() < 1e-14);
    }

    #[test]
    fn basis_search_reaches_the_closed_form(major in 0.5f64..1.0) {
        let pair = SchmidtPair::from_major(major);
        let best = optimize_measurement(&pair, &MeasurementGrid::default()).unwrap();
        let closed = min_entropy_optimal(pair.purity()).unwrap();
        prop_assert!((best.min_entropy_bits - closed).abs() < 1e-6);
    }

    #[test]
    fn no_basis_beats_the_closed_form(major in 0.5f64..1.0, theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI)) {
        let pair = SchmidtPair::from_major(major);
        let h = helstrom_min_entropy(&pair, &MeasurementBasis::new(theta, phi)).min_entropy_bits;
        prop_assert!(h <= min_entropy_optimal(pair.purity()).unwrap() + 1e-12);
    }

    #[test]
    fn helstrom_ignores_the_relative_phase(major in 0.5f64..1.0, theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI)) {
        let pair = SchmidtPair::from_major(major);
        let a = helstrom_min_entropy(&pair, &MeasurementBasis::new(theta, phi));
        let b = helstrom_min_entropy(&pair, &MeasurementBasis::new(theta, phi + PI));
        let c = helstrom_min_entropy(&pair, &MeasurementBasis::new(theta, 0.0));
        prop_assert!((a.min_entropy_bits - b.min_entropy_bits).abs() < 1e-12);
        prop_assert!((a.min_entropy_bits - c.min_entropy_bits).abs() < 1e-12);
    }

    #[test]
    fn exact_rwa_state_is_physical(a in 0.0f64..=1.0, theta in -10.0f64..10.0) {
        let rho = rwa_state_exact(a, theta);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-15);
        prop_assert!(rho.eigenvalues().1 > -1e-15);
    }

    #[test]
    fn invalid_amplitude_is_rejected(a in prop_oneof![-10.0f64..-1e-9, (1.0 + 1e-9)..10.0]) {
        let cfg = PhysicalConfig::reference().with_amplitude(a);
        prop_assert_eq!(cfg.validate(), Err(ConfigError::AmplitudeOutOfRange));
    }
}

#[test]
fn cutoff_convergence_at_reference_sizes() {
    for &sigma in &[0.001, 0.002, 0.1] {
        let cfg = PhysicalConfig::reference().with_atom_size(sigma);
        let probe = kernel_convergence_probe(&cfg, &[6.0, 12.0]).unwrap();
        let change = probe[0].1.max_relative_change(&probe[1].1);
        assert!(change < 1e-8, "sigma={sigma}: {change:e}");
    }
}

#[test]
fn long_cavities_approach_free_space() {
    let base = PhysicalConfig::reference();
    let free = compute_kernels(&base).unwrap();
    let short = compute_kernels(&base.with_scenario(BoundaryScenario::Periodic { length: 3.0, position: 0.0 })).unwrap();
    let long = compute_kernels(&base.with_scenario(BoundaryScenario::Periodic { length: 3000.0, position: 0.0 })).unwrap();
    let d_short = (short.j_pp - free.j_pp).norm();
    let d_long = (long.j_pp - free.j_pp).norm();
    assert!(d_long < 1e-4 * d_short, "{d_short:e} {d_long:e}");
}

#[test]
fn larger_atoms_are_less_entangled() {
    let base = PhysicalConfig::reference();
    let mut last = 0.0;
    for &sigma in &[0.001, 0.01, 0.1, 1.0] {
        let p = evolve_perturbative(&base.with_atom_size(sigma)).unwrap().purity();
        assert!(p > last);
        last = p;
    }
}

#[test]
fn ground_state_is_not_always_optimal() {
    let base = PhysicalConfig::reference().with_duration(0.5);
    let ground = certify(&base).unwrap().min_entropy_bits;
    let best = (1..50)
        .map(|i| certify(&base.with_amplitude(i as f64 / 50.0)).unwrap().min_entropy_bits)
        .fold(f64::MIN, f64::max);
    assert!(best > ground + 1e-6);
}

fn fig7(kind: CavityKind, a: f64, t: f64) -> (PhysicalConfig, ResonantSetup) {
    let setup = ResonantSetup::new(3).unwrap();
    let cfg = PhysicalConfig::reference()
        .with_amplitude(a)
        .with_duration(t)
        .with_scenario(setup.scenario(kind, 1.0, PI / 6.0));
    (cfg, setup)
}

#[test]
fn ratio_is_non_negative_on_a_coarse_grid() {
    for kind in [CavityKind::Periodic, CavityKind::Dirichlet] {
        for i in 0..=10 {
            for &t in &[0.25, 1.0, 3.0, 6.0, 12.0] {
                let (cfg, setup) = fig7(kind, i as f64 / 10.0, t);
                let r = difference_ratio(&cfg, &setup).unwrap();
                assert!(r.ratio >= 0.0, "{kind:?} a={} T={t}: {}", cfg.amplitude, r.ratio);
            }
        }
    }
}

#[test]
fn second_order_and_exact_references_agree_at_small_angle() {
    for kind in [CavityKind::Periodic, CavityKind::Dirichlet] {
        for i in 0..=10 {
            for &t in &[0.25, 0.5, 1.0, 2.0, 3.0] {
                let (cfg, setup) = fig7(kind, i as f64 / 10.0, t);
                let r = difference_ratio(&cfg, &setup).unwrap();
                let h_exact = min_entropy_optimal(rwa_state_exact(cfg.amplitude, theta(&cfg, &setup).unwrap()).purity()).unwrap();
                let r_exact = (h_exact - r.h_full) / h_exact;
                assert!((r_exact - r.ratio).abs() < 1e-6, "{kind:?} a={} T={t}", cfg.amplitude);
            }
        }
    }
}

#[test]
fn strong_coupling_overestimate_reaches_ten_percent() {
    let setup = ResonantSetup::new(3).unwrap();
    let mut best: f64 = 0.0;
    for &lambda in &[0.02, 0.03, 0.05] {
        for &a in &[0.0, FRAC_1_SQRT_2, 1.0] {
            let cfg = PhysicalConfig::reference()
                .with_coupling(lambda)
                .with_amplitude(a)
                .with_scenario(setup.scenario(CavityKind::Dirichlet, 1.0, PI / 6.0));
            if let Ok(r) = difference_ratio(&cfg, &setup) {
                best = best.max(r.ratio);
            }
        }
    }
    assert!((0.05..0.5).contains(&best), "{best}");
}

#[test]
fn resonant_amplitude_outgrows_the_rest_linearly() {
    let setup = ResonantSetup::new(3).unwrap();
    let scenario = setup.scenario(CavityKind::Periodic, 1.0, 0.0);
    let dominance = |t: f64| {
        let cfg = PhysicalConfig::reference().with_duration(t).with_scenario(scenario);
        let table = appendix_diagnostic(&cfg, &setup, 1..=50).unwrap();
        let resonant = table.iter().find(|r| r.mode == 3).unwrap().rotating;
        let bounded = table
            .iter()
            .flat_map(|r| {
                let rot = if r.mode == 3 { 0.0 } else { r.rotating };
                [rot, r.counter_rotating]
            })
            .fold(0.0, f64::max);
        (resonant, bounded)
    };
    for &t in &[10.0, 40.0, 160.0] {
        let (resonant, bounded) = dominance(t);
        assert_eq!(resonant, t);
        // beyond the first few periods the bounded terms saturate at 2/|Ω - ω_n|
        assert!(bounded <= 2.0 / (1.0 - 2.0 / 3.0) + 1e-12);
        assert!(resonant / bounded >= t / 6.0);
    }
}
