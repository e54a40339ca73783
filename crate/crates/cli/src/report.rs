use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub value: f64,
    /// Formula the quantity is traced to.
    pub paper_ref: String,
    pub method: String,
    /// Achieved absolute accuracy, or rounding scale for closed forms.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// Column table for sweeps; rendered as the CSV body.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub inputs: Map<String, Value>,
    pub results: Vec<ResultEntry>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    pub fn new(subcommand: &str, inputs: Map<String, Value>) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            inputs,
            results: Vec::new(),
            status: "ok".into(),
            error: None,
            table: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64, paper_ref: &str, method: &str, tolerance: f64) {
        self.results.push(ResultEntry {
            name: name.into(),
            value,
            paper_ref: paper_ref.into(),
            method: method.into(),
            tolerance,
        });
    }

    /// Closed-form value; tolerance is its rounding scale.
    pub fn exact(&mut self, name: impl Into<String>, value: f64, paper_ref: &str) {
        self.push(name, value, paper_ref, "closed_form", rounding(value));
    }

    pub fn failed(mut self, kind: &str, message: String) -> Self {
        self.status = "error".into();
        self.results.clear();
        self.table = None;
        self.error = Some(ErrorInfo {
            kind: kind.into(),
            message,
        });
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(table) = &self.table {
            out.push_str(&table.header.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|v| v.map(number).unwrap_or_default()).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            return out;
        }
        if let Some(err) = &self.error {
            out.push_str("status,kind,message\n");
            out.push_str(&format!("error,{},{}\n", field(&err.kind), field(&err.message)));
            return out;
        }
        out.push_str("name,value,paper_ref,method,tolerance\n");
        for r in &self.results {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                field(&r.name),
                number(r.value),
                field(&r.paper_ref),
                field(&r.method),
                number(r.tolerance)
            ));
        }
        out
    }
}

pub fn rounding(value: f64) -> f64 {
    4.0 * f64::EPSILON * value.abs()
}

/// 17 significant digits, `.` decimal point.
pub fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
