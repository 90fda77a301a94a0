use serde_json::{json, Map, Value};
use weyl_lab::moments::FitResult;

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// Version of every CSV layout, written as the first line.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(v) => Value::from(v),
                Err(_) => Value::from(v.to_string()),
            },
            Cell::Float(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u128> for Cell {
    fn from(v: u128) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Output of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    /// Command arguments plus seed and budget. Never the thread count, so
    /// that output does not depend on it.
    pub config: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub fit: Option<FitResult>,
    /// Invariant violations; any makes the process exit with code 1.
    pub violations: Vec<String>,
    /// Warnings for stderr that do not affect the exit code.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, config: Map<String, Value>, columns: &[&'static str]) -> Self {
        Self { command, config, columns: columns.to_vec(), rows: Vec::new(), fit: None, violations: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => Ok(self.render_json()),
        }
    }

    fn render_csv(&self) -> CliResult<String> {
        let mut out = format!("# schema={SCHEMA}\n");
        if let Some(fit) = &self.fit {
            out.push_str(&format!(
                "# fit exponent={:.16e} intercept={:.16e} max_residual={:.16e} with_log_factor={} points={}\n",
                fit.exponent, fit.intercept, fit.max_residual, fit.with_log_factor, fit.points
            ));
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::usage(format!("csv encoding failed: {e}"));
        w.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    fn render_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("config".into(), Value::Object(self.config.clone()));
        top.insert("rows".into(), Value::Array(rows));
        if let Some(fit) = &self.fit {
            top.insert(
                "fit".into(),
                json!({
                    "exponent": fit.exponent,
                    "intercept": fit.intercept,
                    "max_residual": fit.max_residual,
                    "with_log_factor": fit.with_log_factor,
                    "points": fit.points,
                }),
            );
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialize");
        s.push('\n');
        s
    }
}
