//! Output plumbing: the run configuration echoed into every artifact,
//! numeric tables, and the CSV/JSON renderers.
//!
//! Rendering is deterministic: identical configuration and build produce
//! byte-identical files. No timestamps, no map iteration, and float
//! formatting is the shortest round-trip form.

use serde::Serialize;

/// Output schema version embedded in every JSON artifact.
pub const SCHEMA_VERSION: &str = "v1";

/// Echo of the command line, embedded in every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub version: &'static str,
    pub command: String,
    pub knot: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub tol: f64,
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfig {
    /// `key = value` comment lines for CSV headers, in field order.
    pub fn comment_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("# version = {}", self.version),
            format!("# command = {}", self.command),
            format!("# knot = {}", self.knot),
        ];
        if let Some(b) = self.branch {
            lines.push(format!("# branch = {b}"));
        }
        if let Some(y) = self.y {
            lines.push(format!("# y = {}", fmt_f64(y)));
        }
        if let Some(y) = self.y_min {
            lines.push(format!("# y_min = {}", fmt_f64(y)));
        }
        if let Some(y) = self.y_max {
            lines.push(format!("# y_max = {}", fmt_f64(y)));
        }
        if let Some(s) = self.samples {
            lines.push(format!("# samples = {s}"));
        }
        lines.push(format!("# tol = {}", fmt_f64(self.tol)));
        lines
    }
}

/// A numeric result table with enough metadata to reproduce the run.
#[derive(Debug, Serialize)]
pub struct ResultTable {
    pub schema: &'static str,
    pub config: RunConfig,
    /// Human-oriented description of the grid the rows live on.
    pub grid: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(config: RunConfig, grid: String, columns: Vec<&'static str>) -> Self {
        ResultTable { schema: SCHEMA_VERSION, config, grid, columns, rows: Vec::new() }
    }

    /// RFC-4180-style CSV with `#` metadata comment lines on top.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in self.config.comment_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str(&format!("# grid = {}\n", csv_quote(&self.grid)));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }
}

/// Wrap a JSON-serializable payload with the schema and config echo.
pub fn json_artifact<T: Serialize>(config: &RunConfig, payload: &T) -> String {
    #[derive(Serialize)]
    struct Artifact<'a, T> {
        schema: &'static str,
        config: &'a RunConfig,
        result: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Artifact {
        schema: SCHEMA_VERSION,
        config,
        result: payload,
    })
    .expect("artifact serializes");
    s.push('\n');
    s
}

/// Shortest round-trip float formatting; exponent form outside a sane
/// fixed-point window.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return String::from("0");
    }
    let a = v.abs();
    if (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Quote a CSV field when it contains separators or quotes.
pub fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(3.0), "3");
        assert_eq!(fmt_f64(2.5), "2.5");
        assert_eq!(fmt_f64(1e12), "1000000000000");
        assert_eq!(fmt_f64(1e18), "1e18");
        assert_eq!(fmt_f64(-4.25e-7), "-4.25e-7");
        // round trip
        for v in [1.0 / 3.0, 5.353553390593274, -8.0, 1e-300] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_quote("plain"), "plain");
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
