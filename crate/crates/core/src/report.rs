//! Machine-readable verification reports and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// One named check of a suite. `paper_ref` names the mathematical result the
/// check certifies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub details: serde_json::Value,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        paper_ref: impl Into<String>,
        ok: bool,
        details: impl Serialize,
    ) -> Self {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            status: Status::from_bool(ok),
            details: serde_json::to_value(details).unwrap_or(serde_json::Value::Null),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: u32,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.status.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let _ = writeln!(out, "suite {} (degree bound {})", self.suite, self.bound);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  [{}] {:width$}  {}",
                c.status.as_str(),
                c.id,
                c.paper_ref,
                width = width
            );
            if let Some(summary) = c.details.get("summary").and_then(|s| s.as_str()) {
                for line in summary.lines() {
                    let _ = writeln!(out, "         {line}");
                }
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        );
        out
    }
}

/// One row of a per-degree dimension table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub degree: u32,
    pub expected_dim: u64,
    pub computed_dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl DimRow {
    pub fn new(degree: u32, expected_dim: u64, computed_dim: u64) -> Self {
        DimRow {
            degree,
            expected_dim,
            computed_dim,
            witness: None,
        }
    }

    pub fn agrees(&self) -> bool {
        self.expected_dim == self.computed_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DimTable(pub Vec<DimRow>);

impl DimTable {
    pub fn passed(&self) -> bool {
        self.0.iter().all(DimRow::agrees)
    }

    pub fn first_disagreement(&self) -> Option<&DimRow> {
        self.0.iter().find(|r| !r.agrees())
    }

    pub fn rows(&self) -> &[DimRow] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_degree: Option<u32>,
}

impl QuotientCheck {
    pub fn new(name: impl Into<String>, ok: bool, witness_degree: Option<u32>) -> Self {
        QuotientCheck {
            name: name.into(),
            status: Status::from_bool(ok),
            witness_degree,
        }
    }
}

/// Summary of a quotient algebra computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub quotient: String,
    pub degree_bound: u32,
    pub dims: Vec<u64>,
    pub checks: Vec<QuotientCheck>,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.passed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let report = SuiteReport {
            suite: "wu".into(),
            bound: 12,
            checks: vec![Check::new("a", "Wu formula", true, serde_json::json!({"x": 1}))],
        };
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["suite"], "wu");
        assert_eq!(v["bound"], 12);
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][0]["paper_ref"], "Wu formula");
        assert!(report.passed());
    }

    #[test]
    fn dim_rows_omit_missing_witness() {
        let row = DimRow::new(3, 1, 1);
        let v = serde_json::to_value(&row).unwrap();
        assert!(v.get("witness").is_none());
        let q = QuotientCheck::new("connectivity", false, Some(3));
        assert_eq!(serde_json::to_value(&q).unwrap()["witness_degree"], 3);
    }
}
