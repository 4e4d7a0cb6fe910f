//! CSV tables, JSON envelopes and the one-column data file format.
//!
//! CSV: comma separator, `.` decimal point, `\n` line endings, a mandatory
//! header row, numbers in shortest round-trip form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Command;
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A numeric table with named columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut String) {
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{}", fmt_num(*v)).unwrap();
            }
            out.push('\n');
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        self.write_csv(&mut s);
        s
    }

    /// Parses one CSV table as written by [`Table::write_csv`].
    pub fn parse_csv(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines().filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| CliError::Data("empty table".into()))?;
        let mut table = Self::new(header.split(','));
        for line in lines {
            let row = line
                .split(',')
                .map(|f| f.parse::<f64>().map_err(|e| CliError::Data(format!("`{f}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != table.columns.len() {
                return Err(CliError::Data(format!("row has {} fields, header has {}", row.len(), table.columns.len())));
            }
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// Shortest representation that parses back to the same `f64`; exponent
/// form for very small or large magnitudes, no trailing `.0` on integers.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(int) => int.to_string(),
        None => s,
    }
}

/// Common wrapper of every JSON document: library version and the parsed
/// flags, followed by the command-specific body.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub version: &'static str,
    pub config: &'a Command,
    #[serde(flatten)]
    pub body: T,
}

pub fn to_json<T: Serialize>(config: &Command, body: T) -> String {
    let env = Envelope { version: VERSION, config, body };
    let mut s = serde_json::to_string_pretty(&env).expect("JSON serialization of plain data");
    s.push('\n');
    s
}

/// Whitespace/newline separated decimal literals, at least two of them.
pub fn parse_data(text: &str) -> Result<Vec<f64>, CliError> {
    let values = text
        .split_whitespace()
        .map(|tok| match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(_) => Err(CliError::Data(format!("non-finite value `{tok}`"))),
            Err(e) => Err(CliError::Data(format!("`{tok}`: {e}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() < 2 {
        return Err(CliError::Data(format!("need at least 2 values, found {}", values.len())));
    }
    Ok(values)
}
