//! Batch reports as versioned JSON or fixed-column CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::batch::{BatchConfig, BatchOutcome, BatchRow, BatchSummary};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 10] = [
    "p",
    "d_plus",
    "D",
    "gamma",
    "conjecture_ok",
    "mst_eq_ok",
    "euler_num",
    "euler_den",
    "mmp_class",
    "micros",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

impl ReportFormat {
    /// `csv` for a `.csv` extension, JSON otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    config: &'a BatchConfig,
    summary: &'a BatchSummary,
    rows: &'a [BatchRow],
}

pub fn to_json(outcome: &BatchOutcome) -> Result<String> {
    let report = JsonReport {
        schema: SCHEMA_VERSION,
        config: &outcome.config,
        summary: &outcome.summary,
        rows: &outcome.rows,
    };
    let mut s = serde_json::to_string_pretty(&report)?;
    s.push('\n');
    Ok(s)
}

pub fn write_csv<W: Write>(rows: &[BatchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in rows {
        let d_plus: Vec<String> = r.d_plus.iter().map(|d| d.to_string()).collect();
        w.write_record([
            r.p.to_string(),
            d_plus.join(" "),
            r.bold_d.to_string(),
            r.gamma.to_string(),
            r.conjecture_ok.to_string(),
            r.mst_eq_ok.to_string(),
            r.euler.numer().to_string(),
            r.euler.denom().to_string(),
            r.mmp_class.name().to_string(),
            r.micros.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv(rows: &[BatchRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Inconsistent(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Inconsistent(format!("csv: {other:?}")),
    }
}

pub fn write_report(outcome: &BatchOutcome, path: &Path, format: ReportFormat) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    match format {
        ReportFormat::Json => f.write_all(to_json(outcome)?.as_bytes())?,
        ReportFormat::Csv => write_csv(&outcome.rows, &mut f)?,
    }
    f.flush()?;
    Ok(())
}
