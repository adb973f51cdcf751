//! CSV output with the fixed column order
//! `axis_name, axis_value, duplex, ed_model, method, kind, value, raw_value,
//! ci_low, ci_high, n_trials, seed`.

use std::io::{Read, Write};
use std::path::Path;

use super::{HarnessError, SweepResult, SweepRow};

pub const CSV_COLUMNS: [&str; 12] = [
    "axis_name",
    "axis_value",
    "duplex",
    "ed_model",
    "method",
    "kind",
    "value",
    "raw_value",
    "ci_low",
    "ci_high",
    "n_trials",
    "seed",
];

fn csv_err(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Csv(e.to_string())
}

/// Writes the rows (header first, even for an empty result).
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for row in &result.rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| HarnessError::Io(e.to_string()))
}

pub fn emit_csv(result: &SweepResult) -> Result<String, HarnessError> {
    let mut buf = Vec::new();
    write_csv(result, &mut buf)?;
    String::from_utf8(buf).map_err(csv_err)
}

pub fn emit_csv_file(result: &SweepResult, path: &Path) -> Result<(), HarnessError> {
    let f = std::fs::File::create(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    write_csv(result, f)
}

/// Reads rows back; the header must match [`CSV_COLUMNS`] exactly.
pub fn read_csv<R: Read>(input: R) -> Result<SweepResult, HarnessError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_COLUMNS.iter().copied()) {
        return Err(HarnessError::Csv(format!("unexpected header {:?}", header)));
    }
    let rows = r.deserialize::<SweepRow>().collect::<Result<Vec<_>, _>>().map_err(csv_err)?;
    Ok(SweepResult { rows, failures: Vec::new() })
}

pub fn parse_csv(text: &str) -> Result<SweepResult, HarnessError> {
    read_csv(text.as_bytes())
}
