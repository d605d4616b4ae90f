//! CSV and JSON emission.

use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::scan::Table;
use crate::CliError;

pub const CSV_HEADER: [&str; 7] = ["x", "t", "region", "s", "u", "err_order", "error"];

fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:?}")).unwrap_or_default()
}

pub fn to_csv(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in &table.rows {
        w.write_record([
            format!("{:?}", r.x),
            format!("{:?}", r.t),
            r.region.clone(),
            num(r.s),
            num(r.u),
            num(r.err_order),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn to_json(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(table).map_err(|e| CliError::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn from_json(bytes: &[u8]) -> Result<Table, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Config(format!("table: {e}")))
}

pub fn render(table: &Table, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => to_csv(table),
        Format::Json => to_json(table),
    }
}

/// Writes the table to `path`, or to standard output when `path` is `None`.
pub fn write_output(table: &Table, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    if table.rows.is_empty() {
        return Err(CliError::Config("scan produced no rows".into()));
    }
    let bytes = render(table, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().lock().write_all(&bytes).map_err(|e| CliError::Io(e.to_string())),
    }
}
