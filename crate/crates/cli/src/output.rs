//! CSV and JSON emission.
//!
//! CSV has a header row and numbers with 9 significant digits; infinite
//! values are written as `inf` in CSV and `null` in JSON. JSON documents are
//! `{"columns": [...], "rows": [[...], ...]}`.

use std::io::Write;

use dlcz_core::analysis::DataTable;
use serde_json::{json, Value};

use crate::config::Format;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Rows of cells under named columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table { columns: columns.iter().map(|c| c.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

impl From<DataTable> for Table {
    fn from(t: DataTable) -> Self {
        Table { columns: t.columns, rows: t.rows.into_iter().map(|r| r.into_iter().map(Cell::Num).collect()).collect() }
    }
}

/// `x` with 9 significant digits, in positional notation for moderate
/// magnitudes and scientific notation otherwise.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn csv_text(cell: &Cell) -> String {
    match cell {
        Cell::Num(x) => format_number(*x),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::Num(x) if x.is_finite() => {
            let rounded: f64 = format_number(*x).parse().expect("formatted numbers parse");
            json!(rounded)
        }
        Cell::Num(_) | Cell::Empty => Value::Null,
        Cell::Text(s) => json!(s),
    }
}

pub fn write_table(table: &Table, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
            w.write_record(&table.columns).map_err(|e| CliError::Output(e.into()))?;
            for row in &table.rows {
                w.write_record(row.iter().map(csv_text)).map_err(|e| CliError::Output(e.into()))?;
            }
            w.flush().map_err(CliError::Output)?;
        }
        Format::Json => {
            let doc = json!({
                "columns": table.columns,
                "rows": table.rows.iter().map(|r| r.iter().map(json_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| CliError::Output(e.into()))?;
            out.write_all(b"\n").map_err(CliError::Output)?;
        }
    }
    Ok(())
}

/// Renders a table to a string.
pub fn render(table: &Table, format: Format) -> Result<String> {
    let mut buf = Vec::new();
    write_table(table, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("tables render as UTF-8"))
}
