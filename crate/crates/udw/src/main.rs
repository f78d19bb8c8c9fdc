use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use udw::config_file::load_draft;
use udw::csv_out::{self, write_appendix, write_csv};
use udw::{evaluate_point, load_sweep_spec, preset, run_sweep, SweepMode, SweepResult, PRESET_NAMES};
use udw_core::{appendix_diagnostic, ResonantSetup};

#[derive(Parser)]
#[command(name = "udw", version, about = "Certified randomness from an atom coupled to a quantum field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one configuration
    Certify {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run a parameter sweep from a preset or a spec file
    Sweep {
        #[arg(long, value_name = "NAME", conflicts_with = "config", required_unless_present_any = ["config", "list_presets"])]
        preset: Option<String>,
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Worker threads (0 = all cores); overrides the spec
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
        /// Print the preset names and exit
        #[arg(long)]
        list_presets: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Compare one cavity configuration with the resonant single-mode model
    CompareRwa {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[arg(long, value_name = "M")]
        mode_index: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Tabulate rotating and counter-rotating mode amplitudes
    DiagnoseAppendix {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[arg(long, value_name = "M")]
        mode_index: u32,
        /// Highest mode index in the table
        #[arg(long, value_name = "N", default_value_t = 50)]
        max_n: u32,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl Output {
    fn write<F>(&self, write: F) -> Result<()>
    where
        F: FnOnce(&mut dyn Write) -> Result<(), csv::Error>,
    {
        match &self.out {
            Some(path) => csv_out::to_file(path, |sink| write(sink))?,
            None => write(&mut io::stdout().lock()).context("writing to stdout")?,
        }
        Ok(())
    }
}

fn single_point(config: &Path, mode: SweepMode, out: &Output) -> Result<()> {
    let draft = load_draft(config)?;
    let cfg = match mode {
        SweepMode::Certify => draft.resolve()?,
        SweepMode::Ratio { mode_index } => draft.resolve_resonant(&ResonantSetup::new(mode_index)?)?,
    };
    let row = evaluate_point(&cfg, mode);
    if let Err(message) = &row.outcome {
        bail!("{message}");
    }
    out.write(|sink| write_csv(&SweepResult { mode, rows: vec![row] }, sink))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Certify { config, out } => single_point(&config, SweepMode::Certify, &out),
        Command::CompareRwa { config, mode_index, out } => single_point(&config, SweepMode::Ratio { mode_index }, &out),
        Command::Sweep { preset: name, config, threads, list_presets, out } => {
            if list_presets {
                println!("{}", PRESET_NAMES.join("\n"));
                return Ok(());
            }
            let mut spec = match (name, config) {
                (Some(name), _) => preset(&name)?,
                (None, Some(path)) => load_sweep_spec(&path)?,
                (None, None) => bail!("either --preset or --config is required"),
            };
            if let Some(threads) = threads {
                spec.threads = threads;
            }
            let result = run_sweep(&spec)?;
            out.write(|sink| write_csv(&result, sink))?;
            let failed = result.error_count();
            if failed > 0 {
                eprintln!("{failed} of {} rows failed; see the error column", result.rows.len());
            }
            Ok(())
        }
        Command::DiagnoseAppendix { config, mode_index, max_n, out } => {
            let setup = ResonantSetup::new(mode_index)?;
            let cfg = load_draft(&config)?.resolve_resonant(&setup)?;
            let table = appendix_diagnostic(&cfg, &setup, 1..=max_n)?;
            out.write(|sink| write_appendix(&table, sink))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
