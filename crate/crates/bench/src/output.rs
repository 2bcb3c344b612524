//! CSV and JSON emission. JSON carries the same rows as the CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::crossover::CrossoverRow;
use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Column of the sweep CSV whose values vary between identical runs.
pub const SWEEP_NONDETERMINISTIC: &[&str] = &["wall_time_s"];

/// A file, or stdout when `path` is `None`.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(BufWriter::new(File::create(p)?))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

#[derive(Serialize)]
struct JsonTable<'a, T> {
    nondeterministic_columns: &'a [&'a str],
    rows: &'a [T],
}

/// Writes `rows` with a serde-derived header. In CSV the nondeterministic
/// columns are listed on a leading `#` comment line.
pub fn write_rows<T: Serialize>(out: &mut dyn Write, rows: &[T], format: Format, nondeterministic: &[&str]) -> Result<()> {
    match format {
        Format::Csv => {
            if !nondeterministic.is_empty() {
                writeln!(out, "# nondeterministic columns: {}", nondeterministic.join(","))?;
            }
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &JsonTable { nondeterministic_columns: nondeterministic, rows })?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

const NO_CROSSOVER: &str = "no crossover in range";

#[derive(Serialize)]
struct CrossoverCsv {
    gate_time_s: f64,
    speedup_factor: f64,
    crossover_time_s: String,
    crossover_error: String,
}

/// Crossover table; in CSV missing crossovers are spelled out.
pub fn write_crossover(out: &mut dyn Write, rows: &[CrossoverRow], format: Format) -> Result<()> {
    match format {
        Format::Json => write_rows(out, rows, format, &[]),
        Format::Csv => {
            let text = |v: Option<f64>| v.map_or_else(|| NO_CROSSOVER.to_string(), |x| format!("{x:e}"));
            let csv: Vec<CrossoverCsv> = rows
                .iter()
                .map(|r| CrossoverCsv {
                    gate_time_s: r.gate_time_s,
                    speedup_factor: r.speedup_factor,
                    crossover_time_s: text(r.crossover_time_s),
                    crossover_error: text(r.crossover_error),
                })
                .collect();
            write_rows(out, &csv, format, &[])
        }
    }
}
