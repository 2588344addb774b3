//! CSV and JSON writers with a fixed dialect: comma separated, header row,
//! `{:.16e}` numbers, LF line endings.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Numeric table whose first column is the abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
    comments: Vec<(String, f64)>,
}

impl FigureTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Rejects rows of the wrong width, non-finite values and abscissae that
    /// do not strictly increase.
    pub fn push(&mut self, row: Vec<f64>) -> CliResult<()> {
        if row.len() != self.header.len() {
            return Err(CliError::BadArgs(format!(
                "row has {} columns, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        if let Some(bad) = row.iter().find(|x| !x.is_finite()) {
            return Err(CliError::Numeric(tfd_core::TfdError::InvalidParameter(format!(
                "non-finite value {bad} in output row"
            ))));
        }
        if let Some(prev) = self.rows.last() {
            if !(row[0] > prev[0]) {
                return Err(CliError::BadArgs(format!(
                    "abscissa must strictly increase: {} after {}",
                    row[0], prev[0]
                )));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    /// Trailing `# name,value` line.
    pub fn add_comment(&mut self, name: impl Into<String>, value: f64) {
        self.comments.push((name.into(), value));
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(BufWriter::new(file));
        let io = |e: csv::Error| CliError::io(path, e.into());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| format_number(x))).map_err(io)?;
        }
        for (name, value) in &self.comments {
            w.write_record([format!("# {name}"), format_number(*value)]).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(path, e.into()))?;
    text.push('\n');
    let mut file = File::create(path).map_err(|e| CliError::io(path, e))?;
    file.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))
}
