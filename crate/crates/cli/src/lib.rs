//! Command-line front end: argument parsing, command execution and reports.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use autgates::{
    discover_embedded_gates, discover_gates, parse_target, pauli_correct_and_action, verify_preserves_stabilizers,
    BitMatrix, CliffordCircuit, CodeError, DiscoveryOptions, EmbeddingError, EmbeddingSpec, LogSearchError,
    LogicalActionGroup, LogicalReport, RepKind, RowSource, SearchBudget, StabilizerCode,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub mod report;

use report::{
    AnalyzeReport, AutomorphismSummary, CodeSummary, FindGateReport, GateEntry, GatesReport, RepresentationSummary,
    VerifyReport, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_REALIZABLE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Upper bound on logical group elements visited by the cheapest-word search.
const MIN_COST_LIMIT: usize = 200_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Code { path: PathBuf, source: CodeError },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    NotRealizable(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Discovery(#[from] autgates::DiscoveryError),
    #[error(transparent)]
    Mapping(#[from] autgates::CliffordMapError),
    #[error(transparent)]
    Search(LogSearchError),
    #[error("refusing to emit an unverified circuit: {0}")]
    Unverified(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Code { .. } | Self::Parse(_) => EXIT_PARSE,
            Self::Embedding(EmbeddingError::Parse { .. } | EmbeddingError::PairOutOfRange(..) | EmbeddingError::BadPair(..)) => EXIT_PARSE,
            Self::NotRealizable(_) => EXIT_NOT_REALIZABLE,
            Self::Search(LogSearchError::TooLarge(_)) => EXIT_BUDGET,
            _ => EXIT_ERROR,
        }
    }
}

impl From<LogSearchError> for CliError {
    fn from(e: LogSearchError) -> Self {
        match e {
            LogSearchError::BadTarget(msg) => Self::Parse(msg),
            LogSearchError::NotSymplectic(d) => Self::Parse(format!("target must be a {d}x{d} symplectic matrix")),
            LogSearchError::NotRealizable => Self::NotRealizable("target is not generated by the discovered gates".into()),
            other => Self::Search(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "autgates", version, about = "Find logical Clifford gates of stabilizer codes from code automorphisms")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepArg {
    Hswap,
    Sswap,
    Sqrtxswap,
    Threeblock,
}

impl From<RepArg> for RepKind {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Hswap => RepKind::HSwap,
            RepArg::Sswap => RepKind::SSwap,
            RepArg::Sqrtxswap => RepKind::SqrtXSwap,
            RepArg::Threeblock => RepKind::ThreeBlock,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RowsArg {
    /// The checks as written in the code file.
    Given,
    /// Every element of the stabilizer group.
    Codewords,
    /// Rows of the standard form.
    Standard,
}

impl From<RowsArg> for RowSource {
    fn from(r: RowsArg) -> Self {
        match r {
            RowsArg::Given => RowSource::AsGiven,
            RowsArg::Codewords => RowSource::AllCodewords,
            RowsArg::Standard => RowSource::StandardFormRows,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "threeblock")]
    pub rep: RepArg,
    #[arg(long, value_enum, default_value = "given")]
    pub rows: RowsArg,
    /// Time limit for the automorphism search in milliseconds.
    #[arg(long = "budget", env = "AUTGATES_BUDGET_MS", value_name = "MS")]
    pub budget_ms: Option<u64>,
    /// Pairs file for the embedded-code search, or `all` for every pair.
    #[arg(long, value_name = "PAIRS")]
    pub embed: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard form, logical operators and destabilizers of a code.
    Analyze { code: PathBuf },
    /// Discover logical gates from automorphisms.
    Gates {
        code: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Drop gates with more two-qubit gates than this.
        #[arg(long)]
        max_two_qubit: Option<usize>,
    },
    /// Find a circuit with a given logical action.
    FindGate {
        code: PathBuf,
        /// Gate names on logical qubits (`H(0) S(1)`, `CNOT(0,1)`, `I`) or a file of 0/1 rows.
        #[arg(long)]
        target: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Emit OpenQASM 2 instead of the plain circuit format.
        #[arg(long)]
        qasm: bool,
    },
    /// Check a circuit against a code.
    Verify { code: PathBuf, circuit: PathBuf },
}

/// Text written to stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_code(path: &Path) -> Result<StabilizerCode, CliError> {
    StabilizerCode::parse_text(&read(path)?).map_err(|source| CliError::Code { path: path.to_path_buf(), source })
}

fn options(search: &SearchArgs) -> DiscoveryOptions {
    let budget = match search.budget_ms {
        Some(ms) => SearchBudget::with_time_limit(Duration::from_millis(ms)),
        None => SearchBudget::default(),
    };
    DiscoveryOptions { kind: search.rep.into(), rows: search.rows.into(), budget, ..Default::default() }
}

fn embedding(search: &SearchArgs, n: usize) -> Result<Option<EmbeddingSpec>, CliError> {
    match search.embed.as_deref() {
        None => Ok(None),
        Some("all") => Ok(Some(EmbeddingSpec::all_pairs(n))),
        Some(path) => Ok(Some(EmbeddingSpec::parse_text(&read(Path::new(path))?, n)?)),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn code_summary(code: &StabilizerCode) -> CodeSummary {
    CodeSummary { n: code.n(), k: code.k(), checks: code.checks().len() }
}

/// Rows as 0/1 strings with `|` between the X and Z halves.
fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    let half = m.num_cols() / 2;
    m.to_strings().into_iter().map(|r| format!("{}|{}", &r[..half], &r[half..])).collect()
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze { code } => analyze(code, cli.json),
        Command::Gates { code, search, max_two_qubit } => gates(code, search, *max_two_qubit, cli.json),
        Command::FindGate { code, target, search, qasm } => find_gate(code, target, search, *qasm, cli.json),
        Command::Verify { code, circuit } => verify(code, circuit, cli.json),
    }
}

fn analyze(path: &Path, as_json: bool) -> Result<Outcome, CliError> {
    let code = load_code(path)?;
    let sf = code.standard_form();
    let t = code.tableau();
    let (lx, lz) = sf.logical_paulis_permuted();
    let tableau_valid = t.matrix().is_symplectic().unwrap_or(false)
        && t.matrix().mul(&t.inverse_matrix()) == BitMatrix::identity(2 * code.n());
    let report = AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        code: code_summary(&code),
        r: sf.r,
        qubit_order: sf.qubit_perm.clone(),
        standard_form: matrix_rows(&sf.matrix()),
        logical_x_standard: matrix_rows(&lx),
        logical_z_standard: matrix_rows(&lz),
        stabilizers: t.stabilizers().iter().map(ToString::to_string).collect(),
        logical_x: t.logical_x().iter().map(ToString::to_string).collect(),
        logical_z: t.logical_z().iter().map(ToString::to_string).collect(),
        destabilizers: t.destabilizer_rows().iter().map(ToString::to_string).collect(),
        tableau_valid,
    };
    let stdout = if as_json { json(&report) } else { report.to_text() };
    Ok(Outcome { stdout, code: if tableau_valid { EXIT_OK } else { EXIT_ERROR } })
}

fn gate_entry(
    code: &StabilizerCode,
    permutation: Option<String>,
    circuit: &CliffordCircuit,
    report: &LogicalReport,
    source: &'static str,
) -> Result<GateEntry, CliError> {
    let corrected = report.corrected(circuit);
    if !verify_preserves_stabilizers(code.tableau(), &corrected) {
        return Err(CliError::Unverified(circuit.to_text()));
    }
    Ok(GateEntry {
        source,
        permutation,
        circuit: circuit.gates().iter().map(ToString::to_string).collect(),
        correction: report.correction.to_string(),
        action: matrix_rows(&report.action),
        name: report.name.clone(),
        two_qubit_gates: circuit.entangling_count(),
        verified: true,
    })
}

fn gates(path: &Path, search: &SearchArgs, max_two_qubit: Option<usize>, as_json: bool) -> Result<Outcome, CliError> {
    let code = load_code(path)?;
    let opts = options(search);
    let start = Instant::now();
    let mut entries = Vec::new();
    let mut actions = Vec::new();
    let mut rejected = Vec::new();
    let (aut, complete, embedded_pairs) = match embedding(search, code.n())? {
        None => {
            let d = discover_gates(&code, &opts)?;
            for g in &d.gates {
                entries.push(gate_entry(&code, Some(g.permutation.to_string()), &g.circuit, &g.report, "automorphism")?);
                actions.push((g.report.clone(), g.circuit.clone()));
            }
            let summary = AutomorphismSummary {
                generators: d.automorphisms.generators.len(),
                order: d.automorphisms.group.order().to_string(),
                complete: d.automorphisms.complete,
                search_nodes: d.automorphisms.nodes,
            };
            (Some(summary), d.automorphisms.complete, None)
        }
        Some(spec) => {
            let d = discover_embedded_gates(&code, &spec, &opts)?;
            for g in &d.gates {
                entries.push(gate_entry(&code, None, &g.circuit, &g.report, "embedded")?);
                actions.push((g.report.clone(), g.circuit.clone()));
            }
            rejected = d.rejected.iter().map(|(i, r)| format!("generator {i}: {r}")).collect();
            (None, d.complete, Some(spec.m()))
        }
    };
    let lambda = LogicalActionGroup::from_reports(code.k(), actions.iter().map(|(r, c)| (r, c)))?;
    if let Some(cap) = max_two_qubit {
        entries.retain(|e| e.two_qubit_gates <= cap);
    }
    let report = GatesReport {
        schema_version: SCHEMA_VERSION,
        command: "gates",
        code: code_summary(&code),
        representation: RepresentationSummary {
            kind: RepKind::from(search.rep).name().to_string(),
            rows: format!("{:?}", search.rows).to_lowercase(),
            embedded_pairs,
        },
        automorphisms: aut,
        complete,
        logical_group_order: lambda.order().to_string(),
        gates: entries,
        rejected,
    };
    let stdout = if as_json { json(&report) } else { report.to_text(start.elapsed()) };
    Ok(Outcome { stdout, code: if complete { EXIT_OK } else { EXIT_BUDGET } })
}

fn load_target(target: &str, k: usize) -> Result<BitMatrix, CliError> {
    let path = Path::new(target);
    let text = if path.is_file() { read(path)? } else { target.to_string() };
    Ok(parse_target(&text, k)?)
}

fn find_gate(path: &Path, target: &str, search: &SearchArgs, qasm: bool, as_json: bool) -> Result<Outcome, CliError> {
    let code = load_code(path)?;
    let goal = load_target(target, code.k())?;
    let opts = options(search);
    let (pairs, complete): (Vec<(LogicalReport, CliffordCircuit)>, bool) = match embedding(search, code.n())? {
        None => {
            let d = discover_gates(&code, &opts)?;
            (d.gates.into_iter().map(|g| (g.report, g.circuit)).collect(), d.automorphisms.complete)
        }
        Some(spec) => {
            let d = discover_embedded_gates(&code, &spec, &opts)?;
            (d.gates.into_iter().map(|g| (g.report, g.circuit)).collect(), d.complete)
        }
    };
    let lambda = LogicalActionGroup::from_reports(code.k(), pairs.iter().map(|(r, c)| (r, c)))?;
    let found = if lambda.contains(&goal)? {
        let syn = match lambda.synthesize_min_cost(&goal, code.tableau(), MIN_COST_LIMIT) {
            Ok(s) => s,
            Err(LogSearchError::TooLarge(_)) => lambda.synthesize(&goal, code.tableau())?,
            Err(e) => return Err(e.into()),
        };
        Some(syn)
    } else {
        None
    };
    let Some(syn) = found else {
        let msg = if complete {
            "target is not generated by the discovered gates".to_string()
        } else {
            "target not found; the automorphism search was cut short by the budget".to_string()
        };
        if as_json {
            let report = FindGateReport::not_found(code_summary(&code), target, &msg, complete);
            return Ok(Outcome { stdout: json(&report), code: if complete { EXIT_NOT_REALIZABLE } else { EXIT_BUDGET } });
        }
        return if complete { Err(CliError::NotRealizable(msg)) } else { Ok(Outcome { stdout: format!("# {msg}\n"), code: EXIT_BUDGET }) };
    };
    let corrected = syn.corrected_circuit();
    let verified = verify_preserves_stabilizers(code.tableau(), &corrected);
    if !verified {
        return Err(CliError::Unverified(corrected.to_text()));
    }
    let report = FindGateReport {
        schema_version: SCHEMA_VERSION,
        command: "find-gate",
        code: code_summary(&code),
        target: target.to_string(),
        realizable: true,
        message: None,
        complete,
        circuit: Some(corrected.gates().iter().map(ToString::to_string).collect()),
        correction: Some(syn.report.correction.to_string()),
        action: Some(matrix_rows(&syn.report.action)),
        name: syn.report.name.clone(),
        two_qubit_gates: Some(corrected.entangling_count()),
        verified,
    };
    let stdout = if as_json {
        json(&report)
    } else if qasm {
        corrected.to_qasm()
    } else {
        let mut s = format!(
            "# target {target}: realized, correction {}, verified\n",
            syn.report.correction
        );
        s.push_str(&corrected.to_text());
        s
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}

fn verify(code_path: &Path, circuit_path: &Path, as_json: bool) -> Result<Outcome, CliError> {
    let code = load_code(code_path)?;
    let circ = CliffordCircuit::parse_text(&read(circuit_path)?, Some(code.n()))
        .map_err(|e| CliError::Parse(format!("{}: {e}", circuit_path.display())))?;
    let valid = verify_preserves_stabilizers(code.tableau(), &circ);
    let report = match pauli_correct_and_action(code.tableau(), &circ) {
        Ok(r) => VerifyReport {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            code: code_summary(&code),
            valid,
            logical: true,
            correction: Some(r.correction.to_string()),
            corrected_valid: verify_preserves_stabilizers(code.tableau(), &r.corrected(&circ)),
            action: Some(matrix_rows(&r.action)),
            name: r.name.clone(),
            error: None,
        },
        Err(e) => VerifyReport {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            code: code_summary(&code),
            valid,
            logical: false,
            correction: None,
            corrected_valid: false,
            action: None,
            name: None,
            error: Some(e.to_string()),
        },
    };
    let stdout = if as_json { json(&report) } else { report.to_text() };
    Ok(Outcome { stdout, code: if report.valid { EXIT_OK } else { EXIT_NOT_REALIZABLE } })
}
