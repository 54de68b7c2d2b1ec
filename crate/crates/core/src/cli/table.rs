use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{config_err, CliResult, Command, RunConfig, TOOL, VERSION};

/// Column-major report body shared by the CSV and JSON writers.
///
/// Cells are JSON values: integers and floats as numbers, big integers and
/// exact rationals as strings, non-finite floats as the strings `NaN`,
/// `inf` and `-inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// RFC 4180 CSV with a header line and LF line endings.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fail = |e: csv::Error| config_err(format!("csv: {e}"));
        w.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text)).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| config_err(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| config_err(e.to_string()))
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A float cell; non-finite values become strings since JSON has no
/// representation for them.
pub(crate) fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("NaN")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

/// Exact or big values, written as decimal or `p/q` strings.
pub(crate) fn text(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

/// JSON report: tool version, configuration echo, creation time and results.
/// Everything except `timestamp` is a function of the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub config: RunConfig,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub results: Table,
}

impl ReportEnvelope {
    pub fn new(command: Command, config: RunConfig, results: Table) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ReportEnvelope {
            tool: TOOL.into(),
            version: VERSION.into(),
            command,
            config,
            timestamp,
            results,
        }
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| config_err(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| config_err(format!("report: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["vertex", "p"]);
        t.push(vec![text("(1,2)"), num(0.5)]);
        t.push(vec![text("x"), num(f64::NAN)]);
        assert_eq!(t.to_csv().unwrap(), "vertex,p\n\"(1,2)\",0.5\nx,NaN\n");
    }
}
