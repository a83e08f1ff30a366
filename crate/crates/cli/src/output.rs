//! Aligned text tables and JSON records.

use std::io::{self, Write};

use num::One;
use serde_json::Value;

use obsinfer_core::rational::{fmt_rational, int, to_f64};
use obsinfer_core::Rational;

use crate::args::Format;

/// `1/3 (0.333333...)`, `1/2 (0.5)` or `1`.
pub fn show(r: &Rational) -> String {
    if r.denom().is_one() {
        return fmt_rational(r);
    }
    let scaled = r * int(1_000_000);
    let digits = if scaled.is_integer() {
        let s = format!("{:.6}", to_f64(r));
        s.trim_end_matches('0').to_string()
    } else {
        format!("{:.6}...", to_f64(r))
    };
    format!("{} ({digits})", fmt_rational(r))
}

/// The exact value and its decimal form for a record.
pub fn exact_fields(r: &Rational) -> (Value, Value) {
    (Value::from(fmt_rational(r)), Value::from(to_f64(r)))
}

#[derive(Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, out: &mut impl Write) -> io::Result<()> {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i < widths.len() {
                    widths[i] = widths[i].max(cell.chars().count());
                }
            }
        }
        let line = |out: &mut dyn Write, cells: &[String]| -> io::Result<()> {
            let mut text = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    text.push_str(cell);
                } else {
                    let pad = widths[i].saturating_sub(cell.chars().count());
                    text.push_str(cell);
                    text.push_str(&" ".repeat(pad + 2));
                }
            }
            writeln!(out, "{}", text.trim_end())
        };
        line(out, &self.header)?;
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(out, &rule)?;
        for row in &self.rows {
            line(out, row)?;
        }
        Ok(())
    }
}

/// Prints the table or the records, depending on the format.
pub fn emit(format: Format, table: &Table, records: &[Value]) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Table => table.render(&mut out),
        Format::Records => records.iter().try_for_each(|r| writeln!(out, "{r}")),
    }
}
