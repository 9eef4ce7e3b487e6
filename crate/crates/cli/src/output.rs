use std::io::{self, Write};

use psibound::parse::OutputFormat;
use serde::Serialize;

/// `v` with `digits` significant digits; scientific outside `[1e-4, 1e15)`.
pub fn num(v: f64, digits: u32) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-4..15).contains(&mag) {
        return format!("{:.*e}", (digits - 1) as usize, v);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

/// A rectangular table rendered as aligned text or CSV.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_human(&self, out: &mut impl Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: Vec<&str>| -> String {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(self.header.clone()))?;
        for r in &self.rows {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    pub fn write_csv(&self, out: impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()
    }
}

#[derive(Serialize)]
struct Rows<'a, T: Serialize, S: Serialize> {
    rows: &'a [T],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<S>,
}

pub fn write_json<T: Serialize, S: Serialize>(out: &mut impl Write, rows: &[T], summary: Option<S>) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &Rows { rows, summary })?;
    writeln!(out)
}

/// Write `table` as text or CSV, or `rows` as JSON.
pub fn emit<T: Serialize, S: Serialize>(
    format: OutputFormat,
    table: &Table,
    rows: &[T],
    summary: Option<S>,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Human => table.write_human(out),
        OutputFormat::Csv => table.write_csv(out),
        OutputFormat::Json => write_json(out, rows, summary),
    }
}
