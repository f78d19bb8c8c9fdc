//! CSV output. Numbers are written with 12 significant digits in scientific
//! notation; records end in `\n`; text fields are quoted only when needed.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use udw_core::ModeAmplitudes;

use crate::sweep::{SweepMode, SweepResult};

pub const CERTIFY_COLUMNS: [&str; 13] =
    ["a", "T", "lambda", "sigma", "omega", "scenario", "L", "x_a", "N_c", "purity", "min_entropy_bits", "kernel_err", "error"];

pub const RATIO_COLUMNS: [&str; 15] = [
    "a",
    "T",
    "lambda",
    "sigma",
    "omega",
    "scenario",
    "L",
    "x_a",
    "N_c",
    "purity",
    "min_entropy_bits",
    "kernel_err",
    "H_rwa",
    "R",
    "error",
];

pub const APPENDIX_COLUMNS: [&str; 4] = ["n", "omega_n", "rotating", "counter_rotating"];

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error("creating {}: {source}", path.display())]
    Create { path: PathBuf, source: io::Error },
    #[error("writing {}: {source}", path.display())]
    Write { path: PathBuf, source: csv::Error },
}

pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn columns(mode: SweepMode) -> &'static [&'static str] {
    match mode {
        SweepMode::Certify => &CERTIFY_COLUMNS,
        SweepMode::Ratio { .. } => &RATIO_COLUMNS,
    }
}

fn writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink)
}

pub fn write_csv<W: Write>(result: &SweepResult, sink: W) -> Result<(), csv::Error> {
    let ratio = matches!(result.mode, SweepMode::Ratio { .. });
    let mut w = writer(sink);
    w.write_record(columns(result.mode))?;
    let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
    for row in &result.rows {
        let c = &row.config;
        let mut record = vec![
            format_number(c.amplitude),
            format_number(c.duration),
            format_number(c.coupling),
            format_number(c.atom_size),
            format_number(c.gap),
            c.scenario.name().to_string(),
            opt(c.scenario.length()),
            opt(c.scenario.position()),
            format_number(c.cutoff),
        ];
        match &row.outcome {
            Ok(v) => {
                record.push(format_number(v.purity));
                record.push(format_number(v.min_entropy_bits));
                record.push(format_number(v.kernel_err));
                if ratio {
                    record.push(opt(v.h_rwa));
                    record.push(opt(v.ratio));
                }
                record.push(String::new());
            }
            Err(message) => {
                let blanks = if ratio { 5 } else { 3 };
                record.extend(std::iter::repeat(String::new()).take(blanks));
                record.push(message.clone());
            }
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_appendix<W: Write>(table: &[ModeAmplitudes], sink: W) -> Result<(), csv::Error> {
    let mut w = writer(sink);
    w.write_record(APPENDIX_COLUMNS)?;
    for row in table {
        w.write_record([
            row.mode.to_string(),
            format_number(row.frequency),
            format_number(row.rotating),
            format_number(row.counter_rotating),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Creates `path` and hands a buffered writer to `write`.
pub fn to_file<F>(path: &Path, write: F) -> Result<(), OutputError>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<(), csv::Error>,
{
    let file = File::create(path).map_err(|source| OutputError::Create { path: path.to_path_buf(), source })?;
    let mut sink = BufWriter::new(file);
    write(&mut sink)
        .and_then(|()| sink.flush().map_err(csv::Error::from))
        .map_err(|source| OutputError::Write { path: path.to_path_buf(), source })
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<(), OutputError> {
    to_file(path, |sink| write_csv(result, sink))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{Row, RowValues};
    use udw_core::{BoundaryScenario, PhysicalConfig};

    fn rows() -> SweepResult {
        let ok = RowValues { purity: 0.9996, min_entropy_bits: 0.96, kernel_err: 1e-17, h_rwa: None, ratio: None };
        SweepResult {
            mode: SweepMode::Certify,
            rows: vec![
                Row { config: PhysicalConfig::reference(), outcome: Ok(ok) },
                Row {
                    config: PhysicalConfig::reference()
                        .with_coupling(1.0)
                        .with_scenario(BoundaryScenario::Periodic { length: 3.0, position: 0.5 }),
                    outcome: Err("breakdown, \"strong\"".to_string()),
                },
            ],
        }
    }

    #[test]
    fn certify_layout() {
        let mut buf = Vec::new();
        write_csv(&rows(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,T,lambda,sigma,omega,scenario,L,x_a,N_c,purity,min_entropy_bits,kernel_err,error");
        assert_eq!(
            lines[1],
            "1.00000000000e0,1.00000000000e0,1.00000000000e-2,1.00000000000e-3,1.00000000000e0,free,,,\
             6.00000000000e0,9.99600000000e-1,9.60000000000e-1,1.00000000000e-17,"
        );
        assert_eq!(
            lines[2],
            "1.00000000000e0,1.00000000000e0,1.00000000000e0,1.00000000000e-3,1.00000000000e0,periodic,\
             3.00000000000e0,5.00000000000e-1,6.00000000000e0,,,,\"breakdown, \"\"strong\"\"\""
        );
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn ratio_layout_blanks_all_outputs_on_error() {
        let mut result = rows();
        result.mode = SweepMode::Ratio { mode_index: 3 };
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], RATIO_COLUMNS.join(","));
        assert!(lines[1].ends_with("1.00000000000e-17,,,"));
        assert!(lines[2].contains(",,,,,,\"breakdown"));
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(format_number(-0.000123456789012345), "-1.23456789012e-4");
    }

    #[test]
    fn missing_directory_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        let err = emit_csv(&rows(), &path).unwrap_err();
        assert!(err.to_string().contains("missing"), "{err}");
    }
}
