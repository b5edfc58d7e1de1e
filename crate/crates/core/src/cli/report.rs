use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cohom::GradedDims;

/// JSON Schema for the structured report.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInfo {
    pub bottom: u32,
    pub top: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaInfo {
    pub term_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome {
            ok: true,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        CheckOutcome {
            ok: false,
            witness: Some(witness.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationRow {
    pub n: u32,
    pub dims: GradedDims,
    pub concentration_degree: i64,
    pub stated_bound: i64,
    pub meets_stated_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyInfo {
    pub truncations: Vec<TruncationRow>,
    pub renormalized: GradedDims,
    pub stabilization: BTreeMap<i64, u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub function: String,
    pub variables: Vec<String>,
    pub d: u32,
    pub delta: u32,
    pub milnor_number: Option<u64>,
    pub isolated: Option<bool>,
    pub window: WindowInfo,
    pub lambda: LambdaInfo,
    pub checks: BTreeMap<String, CheckOutcome>,
    pub cohomology: Option<CohomologyInfo>,
    pub axioms: Vec<String>,
    /// Wall-clock milliseconds per stage.
    pub timing: BTreeMap<String, f64>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|c| c.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(s, "function      {}", self.function);
        let _ = writeln!(s, "variables     {}", self.variables.join(", "));
        let _ = writeln!(s, "d             {}", self.d);
        let _ = writeln!(s, "delta         {}", self.delta);
        let _ = writeln!(s, "milnor_number {}", opt(self.milnor_number));
        let _ = writeln!(
            s,
            "isolated      {}",
            self.isolated.map_or("-".to_string(), |b| b.to_string())
        );
        let _ = writeln!(
            s,
            "window        [-{}, {}]",
            self.window.bottom, self.window.top
        );
        let _ = writeln!(s, "lambda terms  {}", self.lambda.term_count);
        if let Some(p) = &self.lambda.polynomial {
            let _ = writeln!(s, "lambda        {p}");
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<12} {:<6} witness", "check", "result");
        for (name, c) in &self.checks {
            let _ = writeln!(
                s,
                "{:<12} {:<6} {}",
                name,
                if c.ok { "pass" } else { "FAIL" },
                c.witness.as_deref().unwrap_or("")
            );
        }
        if let Some(c) = &self.cohomology {
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "{:<4} {:<24} {:>13} {:>12}",
                "n", "H*(X^n)", "reduced deg", "stated bound"
            );
            for row in &c.truncations {
                let _ = writeln!(
                    s,
                    "{:<4} {:<24} {:>13} {:>12}",
                    row.n,
                    row.dims.to_string(),
                    row.concentration_degree,
                    row.stated_bound
                );
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "renormalized  {}", c.renormalized);
            let stab: Vec<String> = c
                .stabilization
                .iter()
                .map(|(k, n)| format!("{k}: {n}"))
                .collect();
            let _ = writeln!(s, "stabilization {{{}}}", stab.join(", "));
        }
        if !self.axioms.is_empty() {
            let _ = writeln!(s);
            for a in &self.axioms {
                let _ = writeln!(s, "axiom: {a}");
            }
        }
        s
    }
}
