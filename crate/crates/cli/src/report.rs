//! Serializable reports. Field order is the JSON key order.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub checks: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub code: CodeSummary,
    pub r: usize,
    /// Original qubit at each standard-form column.
    pub qubit_order: Vec<usize>,
    pub standard_form: Vec<String>,
    pub logical_x_standard: Vec<String>,
    pub logical_z_standard: Vec<String>,
    pub stabilizers: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
    pub destabilizers: Vec<String>,
    pub tableau_valid: bool,
}

fn section(out: &mut String, title: &str, rows: &[String]) {
    let _ = writeln!(out, "{title}:");
    for r in rows {
        let _ = writeln!(out, "  {r}");
    }
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}, k = {}, checks = {}, r = {}", self.code.n, self.code.k, self.code.checks, self.r);
        let order: Vec<String> = self.qubit_order.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "qubit order: {}", order.join(" "));
        section(&mut s, "standard form", &self.standard_form);
        section(&mut s, "logical X (standard form)", &self.logical_x_standard);
        section(&mut s, "logical Z (standard form)", &self.logical_z_standard);
        section(&mut s, "stabilizers", &self.stabilizers);
        section(&mut s, "logical X", &self.logical_x);
        section(&mut s, "logical Z", &self.logical_z);
        section(&mut s, "destabilizers", &self.destabilizers);
        let _ = writeln!(s, "tableau: {}", if self.tableau_valid { "valid" } else { "INVALID" });
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentationSummary {
    pub kind: String,
    pub rows: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedded_pairs: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutomorphismSummary {
    pub generators: usize,
    /// Exact group order as a decimal string.
    pub order: String,
    pub complete: bool,
    pub search_nodes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateEntry {
    pub source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<String>,
    /// Physical circuit, applied after `correction`.
    pub circuit: Vec<String>,
    pub correction: String,
    pub action: Vec<String>,
    pub name: Option<String>,
    pub two_qubit_gates: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GatesReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub code: CodeSummary,
    pub representation: RepresentationSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<AutomorphismSummary>,
    pub complete: bool,
    pub logical_group_order: String,
    pub gates: Vec<GateEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<String>,
}

impl GatesReport {
    pub fn to_text(&self, elapsed: Duration) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}, k = {}, checks = {}", self.code.n, self.code.k, self.code.checks);
        let _ = write!(s, "representation: {} ({} rows)", self.representation.kind, self.representation.rows);
        if let Some(m) = self.representation.embedded_pairs {
            let _ = write!(s, ", embedded with {m} pairs");
        }
        s.push('\n');
        if let Some(a) = &self.automorphisms {
            let _ = writeln!(s, "automorphism group order: {} ({} generators)", a.order, a.generators);
        }
        if !self.complete {
            s.push_str("search budget exhausted: results are incomplete\n");
        }
        let _ = writeln!(s, "logical action group order: {}", self.logical_group_order);
        for (i, g) in self.gates.iter().enumerate() {
            let _ = writeln!(s, "gate {i}: {}", g.name.as_deref().unwrap_or("(unnamed action)"));
            if let Some(p) = &g.permutation {
                let _ = writeln!(s, "  permutation: {p}");
            }
            let _ = writeln!(s, "  correction: {}", g.correction);
            let _ = writeln!(s, "  circuit: {}", if g.circuit.is_empty() { "(empty)".to_string() } else { g.circuit.join("; ") });
            let _ = writeln!(s, "  action: {}", g.action.join(" "));
            let _ = writeln!(s, "  two-qubit gates: {}", g.two_qubit_gates);
        }
        for r in &self.rejected {
            let _ = writeln!(s, "rejected {r}");
        }
        let _ = writeln!(s, "elapsed: {:.3} s", elapsed.as_secs_f64());
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FindGateReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub code: CodeSummary,
    pub target: String,
    pub realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub complete: bool,
    /// Correction gates first, then the circuit.
    pub circuit: Option<Vec<String>>,
    pub correction: Option<String>,
    pub action: Option<Vec<String>>,
    pub name: Option<String>,
    pub two_qubit_gates: Option<usize>,
    pub verified: bool,
}

impl FindGateReport {
    pub fn not_found(code: CodeSummary, target: &str, message: &str, complete: bool) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "find-gate",
            code,
            target: target.to_string(),
            realizable: false,
            message: Some(message.to_string()),
            complete,
            circuit: None,
            correction: None,
            action: None,
            name: None,
            two_qubit_gates: None,
            verified: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub code: CodeSummary,
    /// The circuit as given keeps every stabilizer with its sign.
    pub valid: bool,
    /// The circuit maps stabilizers to stabilizers and logicals to logicals, up to signs.
    pub logical: bool,
    pub correction: Option<String>,
    pub corrected_valid: bool,
    pub action: Option<Vec<String>>,
    pub name: Option<String>,
    pub error: Option<String>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = match (self.valid, self.logical) {
            (true, _) => "valid",
            (false, true) => "invalid as given; valid after Pauli correction",
            (false, false) => "invalid",
        };
        let _ = writeln!(s, "verdict: {verdict}");
        if let Some(c) = &self.correction {
            let _ = writeln!(s, "correction: {c}");
        }
        if let Some(a) = &self.action {
            let _ = writeln!(s, "action: {}", a.join(" "));
            let _ = writeln!(s, "name: {}", self.name.as_deref().unwrap_or("(unnamed)"));
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        s
    }
}
