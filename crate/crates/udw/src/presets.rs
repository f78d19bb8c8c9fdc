//! Built-in sweeps, one per published figure.
//!
//! All share `λ = 0.01`, `σ = 0.001`, `Ω = 1`, `N_c = 6` unless the figure
//! varies that parameter, and put cavity atoms at `x_a = πL/6`. Grid
//! densities are not published and are chosen here.

use std::f64::consts::FRAC_1_SQRT_2;

use udw_core::PhysicalConfig;

use crate::config_file::{PositionRule, ScenarioKind};
use crate::sweep::{Axis, Grid, SweepMode, SweepSpec};

pub const PRESET_NAMES: [&str; 8] =
    ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7-periodic", "fig7-dirichlet", "coupling"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown preset `{0}` (available: fig2, fig3, fig4, fig5, fig6, fig7-periodic, fig7-dirichlet, coupling)")]
pub struct UnknownPreset(pub String);

/// Ground, `|+⟩` and excited initial states.
fn three_states() -> Grid {
    Grid::new(Axis::Amplitude, vec![0.0, FRAC_1_SQRT_2, 1.0])
}

pub fn preset(name: &str) -> Result<SweepSpec, UnknownPreset> {
    use ScenarioKind::*;
    let base = PhysicalConfig::reference();
    let all = vec![Free, Periodic, Dirichlet];
    Ok(match name {
        // free space, initial state against interaction time
        "fig2" => SweepSpec::new(base, vec![Free])
            .with_grid(Grid::linspace(Axis::Amplitude, 0.0, 1.0, 51))
            .with_grid(Grid::linspace(Axis::Duration, 0.02, 2.0, 100)),
        // the three scenarios against time, L = 3
        "fig3" => SweepSpec::new(base, all)
            .with_length(3.0)
            .with_grid(three_states())
            .with_grid(Grid::linspace(Axis::Duration, 0.02, 6.0, 300)),
        // free space, atom size against initial state, T = 1
        "fig4" => SweepSpec::new(base, vec![Free])
            .with_grid(Grid::logspace(Axis::AtomSize, -3.0, 0.0, 31))
            .with_grid(Grid::linspace(Axis::Amplitude, 0.0, 1.0, 21)),
        // cavity length, T = 1
        "fig5" => SweepSpec::new(base, vec![Periodic, Dirichlet])
            .with_grid(three_states())
            .with_grid(Grid::new(
                Axis::Length,
                vec![1.0, 2.0, 3.0, 5.0, 7.0, 10.0, 15.0, 20.0, 30.0, 50.0, 70.0, 100.0],
            )),
        // atom position in a Dirichlet cavity, L = 10, T = 1
        "fig6" => SweepSpec::new(base, vec![Dirichlet])
            .with_length(10.0)
            .with_grid(three_states())
            .with_grid(Grid::new(Axis::Position, (1..=50).map(|i| 10.0 * f64::from(i) / 51.0).collect())),
        "fig7-periodic" | "fig7-dirichlet" => {
            let kind = if name == "fig7-periodic" { Periodic } else { Dirichlet };
            SweepSpec::new(base, vec![kind])
                .with_mode(SweepMode::Ratio { mode_index: 3 })
                .with_position(PositionRule::default())
                .with_grid(Grid::linspace(Axis::Amplitude, 0.0, 1.0, 21))
                .with_grid(Grid::linspace(Axis::Duration, 0.25, 15.0, 60))
        }
        // coupling strength, T = 1, L = 3
        "coupling" => SweepSpec::new(base, all)
            .with_length(3.0)
            .with_grid(three_states())
            .with_grid(Grid::logspace(Axis::Coupling, -3.0, -1.0, 21)),
        other => return Err(UnknownPreset(other.to_string())),
    })
}
