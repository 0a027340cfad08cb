//! Clifford circuits over single-qubit Cliffords, Paulis and SWAP, CNOT, CZ, C(X,X).
//!
//! Gates are listed in time order. Conjugating a Pauli by a circuit applies the
//! first gate first, and the symplectic matrix of a circuit has the image of
//! `X_i` in row `i` and of `Z_i` in row `n + i`, so the matrix of `a` followed by
//! `b` is `U_a U_b`.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PhasedPauli;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate {gate} uses qubit {qubit} but the circuit has {n} qubits")]
    QubitOutOfRange { gate: String, qubit: usize, n: usize },
    #[error("gate {0} needs two distinct qubits")]
    RepeatedQubit(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    SqrtX(usize),
    SqrtXdg(usize),
    /// `H S†`: X to Y, Y to Z, Z to X.
    Gamma(usize),
    /// `S H`: X to Z, Z to Y, Y to X.
    GammaDg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Swap(usize, usize),
    /// Control, target.
    Cnot(usize, usize),
    Cz(usize, usize),
    /// `(H ⊗ H) CZ (H ⊗ H)`.
    Cxx(usize, usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "SDG",
            Gate::SqrtX(_) => "SQRTX",
            Gate::SqrtXdg(_) => "SQRTXDG",
            Gate::Gamma(_) => "GAMMA",
            Gate::GammaDg(_) => "GAMMADG",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Swap(..) => "SWAP",
            Gate::Cnot(..) => "CNOT",
            Gate::Cz(..) => "CZ",
            Gate::Cxx(..) => "CXX",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::SqrtX(q)
            | Gate::SqrtXdg(q)
            | Gate::Gamma(q)
            | Gate::GammaDg(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q) => vec![q],
            Gate::Swap(a, b) | Gate::Cnot(a, b) | Gate::Cz(a, b) | Gate::Cxx(a, b) => vec![a, b],
        }
    }

    /// Entangling gates: CNOT, CZ and C(X,X). SWAP is a relabeling and not counted.
    pub fn is_entangling(&self) -> bool {
        matches!(self, Gate::Cnot(..) | Gate::Cz(..) | Gate::Cxx(..))
    }

    pub fn is_pauli(&self) -> bool {
        matches!(self, Gate::X(_) | Gate::Y(_) | Gate::Z(_))
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::SqrtX(q) => Gate::SqrtXdg(q),
            Gate::SqrtXdg(q) => Gate::SqrtX(q),
            Gate::Gamma(q) => Gate::GammaDg(q),
            Gate::GammaDg(q) => Gate::Gamma(q),
            g => g,
        }
    }

    /// Same gate with qubits renamed through `map`.
    pub fn relabeled(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map(q)),
            Gate::S(q) => Gate::S(map(q)),
            Gate::Sdg(q) => Gate::Sdg(map(q)),
            Gate::SqrtX(q) => Gate::SqrtX(map(q)),
            Gate::SqrtXdg(q) => Gate::SqrtXdg(map(q)),
            Gate::Gamma(q) => Gate::Gamma(map(q)),
            Gate::GammaDg(q) => Gate::GammaDg(map(q)),
            Gate::X(q) => Gate::X(map(q)),
            Gate::Y(q) => Gate::Y(map(q)),
            Gate::Z(q) => Gate::Z(map(q)),
            Gate::Swap(a, b) => Gate::Swap(map(a), map(b)),
            Gate::Cnot(a, b) => Gate::Cnot(map(a), map(b)),
            Gate::Cz(a, b) => Gate::Cz(map(a), map(b)),
            Gate::Cxx(a, b) => Gate::Cxx(map(a), map(b)),
        }
    }

    fn parse_line(line: &str, lineno: usize) -> Result<Gate, CircuitError> {
        let err = |msg: String| CircuitError::Parse { line: lineno, msg };
        let mut parts = line.split_whitespace();
        let name = parts.next().ok_or_else(|| err("missing gate name".into()))?.to_ascii_uppercase();
        let args: Vec<usize> = parts
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad qubit index {t:?}"))))
            .collect::<Result<_, _>>()?;
        let one = |f: fn(usize) -> Gate| match args.as_slice() {
            [q] => Ok(f(*q)),
            _ => Err(err(format!("{name} takes one qubit"))),
        };
        let two = |f: fn(usize, usize) -> Gate| match args.as_slice() {
            [a, b] => Ok(f(*a, *b)),
            _ => Err(err(format!("{name} takes two qubits"))),
        };
        match name.as_str() {
            "H" => one(Gate::H),
            "S" => one(Gate::S),
            "SDG" => one(Gate::Sdg),
            "SQRTX" | "SX" => one(Gate::SqrtX),
            "SQRTXDG" | "SXDG" => one(Gate::SqrtXdg),
            "GAMMA" => one(Gate::Gamma),
            "GAMMADG" => one(Gate::GammaDg),
            "X" => one(Gate::X),
            "Y" => one(Gate::Y),
            "Z" => one(Gate::Z),
            "SWAP" => two(Gate::Swap),
            "CNOT" | "CX" => two(Gate::Cnot),
            "CZ" => two(Gate::Cz),
            "CXX" => two(Gate::Cxx),
            _ => Err(err(format!("unknown gate {name:?}"))),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.qubits().iter().map(usize::to_string).collect();
        write!(f, "{} {}", self.name(), qs.join(" "))
    }
}

/// Phase update `p += delta(a, b)` and new bits for the six single-qubit
/// Clifford classes acting on `(p, a, b, c)` with `c = a ⊕ b`.
fn single_qubit_rule(gate: &Gate, a: bool, b: bool) -> (i32, bool, bool) {
    let (ai, bi) = (a as i32, b as i32);
    let c = a ^ b;
    let ci = c as i32;
    match gate {
        Gate::H(_) => (ci - ai - bi, b, a),
        Gate::S(_) => (ai, a, c),
        Gate::SqrtX(_) => (-bi, c, b),
        Gate::Gamma(_) => (ci - bi, c, a),
        Gate::GammaDg(_) => (ci - ai, b, c),
        // S† = S Z and √X† = √X X: conjugate by the Pauli first.
        Gate::Sdg(_) => (2 * ai + ai, a, c),
        Gate::SqrtXdg(_) => (2 * bi - bi, c, b),
        Gate::X(_) => (2 * bi, a, b),
        Gate::Y(_) => (2 * ci, a, b),
        Gate::Z(_) => (2 * ai, a, b),
        _ => unreachable!("two-qubit gate"),
    }
}

/// Images of `X_a, Z_a, X_b, Z_b` on the two qubits `(a, b)`, as `(phase, xa, za, xb, zb)`.
type TwoQubitTable = [(u8, [bool; 4]); 4];

const CNOT_TABLE: TwoQubitTable = [
    (0, [true, false, true, false]),
    (0, [false, true, false, false]),
    (0, [false, false, true, false]),
    (0, [false, true, false, true]),
];
const CZ_TABLE: TwoQubitTable = [
    (0, [true, false, false, true]),
    (0, [false, true, false, false]),
    (0, [false, true, true, false]),
    (0, [false, false, false, true]),
];
const CXX_TABLE: TwoQubitTable = [
    (0, [true, false, false, false]),
    (0, [false, true, true, false]),
    (0, [false, false, true, false]),
    (0, [true, false, false, true]),
];
const SWAP_TABLE: TwoQubitTable = [
    (0, [false, false, true, false]),
    (0, [false, false, false, true]),
    (0, [true, false, false, false]),
    (0, [false, true, false, false]),
];

fn table_entry(e: &(u8, [bool; 4])) -> PhasedPauli {
    let [xa, za, xb, zb] = e.1;
    PhasedPauli::new(e.0, BitVector::from_bools([xa, xb]), BitVector::from_bools([za, zb]))
}

fn apply_two_qubit(table: &TwoQubitTable, a: usize, b: usize, p: &mut PhasedPauli) {
    let bits = [p.x().get(a), p.z().get(a), p.x().get(b), p.z().get(b)];
    let mut image = PhasedPauli::identity(2);
    for (on, entry) in bits.iter().zip(table) {
        if *on {
            image = image.multiply(&table_entry(entry));
        }
    }
    p.x_mut().set(a, image.x().get(0));
    p.x_mut().set(b, image.x().get(1));
    p.z_mut().set(a, image.z().get(0));
    p.z_mut().set(b, image.z().get(1));
    p.add_phase(image.phase());
}

/// Replaces `p` by `g p g†`.
pub fn conjugate_gate(g: &Gate, p: &mut PhasedPauli) {
    match *g {
        Gate::Swap(a, b) => apply_two_qubit(&SWAP_TABLE, a, b, p),
        Gate::Cnot(a, b) => apply_two_qubit(&CNOT_TABLE, a, b, p),
        Gate::Cz(a, b) => apply_two_qubit(&CZ_TABLE, a, b, p),
        Gate::Cxx(a, b) => apply_two_qubit(&CXX_TABLE, a, b, p),
        _ => {
            let q = g.qubits()[0];
            let (delta, na, nb) = single_qubit_rule(g, p.x().get(q), p.z().get(q));
            p.x_mut().set(q, na);
            p.z_mut().set(q, nb);
            p.add_phase(delta.rem_euclid(4) as u8);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Self::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<(), CircuitError> {
        let qs = g.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= self.n) {
            return Err(CircuitError::QubitOutOfRange { gate: g.to_string(), qubit: q, n: self.n });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CircuitError::RepeatedQubit(g.to_string()));
        }
        self.gates.push(g);
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "circuit width mismatch");
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Self { n: self.n, gates }
    }

    pub fn inverse(&self) -> Self {
        Self { n: self.n, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Circuit applying the Pauli operator `p` (its phase is dropped).
    pub fn pauli(p: &PhasedPauli) -> Self {
        let mut c = Self::new(p.n());
        for q in 0..p.n() {
            match (p.x().get(q), p.z().get(q)) {
                (true, false) => c.gates.push(Gate::X(q)),
                (false, true) => c.gates.push(Gate::Z(q)),
                (true, true) => c.gates.push(Gate::Y(q)),
                (false, false) => {}
            }
        }
        c
    }

    pub fn conjugate(&self, p: &PhasedPauli) -> PhasedPauli {
        assert_eq!(p.n(), self.n, "Pauli/circuit width mismatch");
        let mut out = p.clone();
        for g in &self.gates {
            conjugate_gate(g, &mut out);
        }
        out
    }

    /// The binary symplectic matrix of the circuit.
    pub fn symplectic(&self) -> BitMatrix {
        let n = self.n;
        let rows = (0..2 * n)
            .map(|i| {
                let p = PhasedPauli::from_symplectic(0, &BitVector::unit(2 * n, i));
                self.conjugate(&p).symplectic()
            })
            .collect();
        BitMatrix::from_rows(2 * n, rows)
    }

    pub fn entangling_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangling()).count()
    }

    /// Cancels adjacent inverse pairs, shortens SWAP runs, and rewrites runs of diagonal gates
    /// conjugated by Hadamards (`H S H = √X`, `H⊗H CZ H⊗H = C(X,X)`). The
    /// unitary is unchanged up to global phase.
    pub fn simplified(&self) -> Self {
        let mut slots: Vec<Option<Gate>> = self.gates.iter().copied().map(Some).collect();
        while cancel_inverse_pairs(&mut slots) | rewrite_conjugated_runs(&mut slots) | shorten_swap_runs(&mut slots) {}
        Self { n: self.n, gates: slots.into_iter().flatten().collect() }
    }

    /// Drops Pauli gates.
    pub fn without_paulis(&self) -> Self {
        Self { n: self.n, gates: self.gates.iter().filter(|g| !g.is_pauli()).copied().collect() }
    }

    /// Parses the text format: one gate per line (`H 0`, `CNOT 0 2`, ...), `#` comments.
    /// Without `n`, the width is one more than the largest index used.
    pub fn parse_text(text: &str, n: Option<usize>) -> Result<Self, CircuitError> {
        let mut gates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            gates.push(Gate::parse_line(line, i + 1)?);
        }
        let width = n.unwrap_or_else(|| gates.iter().flat_map(Gate::qubits).max().map_or(0, |m| m + 1));
        Self::from_gates(width, gates)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn to_qasm(&self) -> String {
        let mut s = format!("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{}];\n", self.n);
        let mut line = |t: String| {
            s.push_str(&t);
            s.push('\n');
        };
        for g in &self.gates {
            match *g {
                Gate::H(q) => line(format!("h q[{q}];")),
                Gate::S(q) => line(format!("s q[{q}];")),
                Gate::Sdg(q) => line(format!("sdg q[{q}];")),
                Gate::SqrtX(q) => line(format!("sx q[{q}];")),
                Gate::SqrtXdg(q) => line(format!("sxdg q[{q}];")),
                Gate::Gamma(q) => {
                    line(format!("sdg q[{q}];"));
                    line(format!("h q[{q}];"));
                }
                Gate::GammaDg(q) => {
                    line(format!("h q[{q}];"));
                    line(format!("s q[{q}];"));
                }
                Gate::X(q) => line(format!("x q[{q}];")),
                Gate::Y(q) => line(format!("y q[{q}];")),
                Gate::Z(q) => line(format!("z q[{q}];")),
                Gate::Swap(a, b) => line(format!("swap q[{a}],q[{b}];")),
                Gate::Cnot(a, b) => line(format!("cx q[{a}],q[{b}];")),
                Gate::Cz(a, b) => line(format!("cz q[{a}],q[{b}];")),
                Gate::Cxx(a, b) => {
                    line(format!("h q[{a}];"));
                    line(format!("h q[{b}];"));
                    line(format!("cz q[{a}],q[{b}];"));
                    line(format!("h q[{a}];"));
                    line(format!("h q[{b}];"));
                }
            }
        }
        s
    }
}

impl fmt::Debug for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.gates.iter().map(Gate::to_string).collect();
        write!(f, "Circuit(n={}; {})", self.n, gs.join(", "))
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn touches(g: &Gate, q: usize) -> bool {
    g.qubits().contains(&q)
}

fn prev_on(slots: &[Option<Gate>], i: usize, q: usize) -> Option<usize> {
    (0..i).rev().find(|&j| slots[j].is_some_and(|g| touches(&g, q)))
}

fn next_on(slots: &[Option<Gate>], i: usize, q: usize) -> Option<usize> {
    (i + 1..slots.len()).find(|&j| slots[j].is_some_and(|g| touches(&g, q)))
}

fn same_gate(a: &Gate, b: &Gate) -> bool {
    match (a, b) {
        (Gate::Swap(p, q), Gate::Swap(r, s)) | (Gate::Cz(p, q), Gate::Cz(r, s)) | (Gate::Cxx(p, q), Gate::Cxx(r, s)) => {
            (p, q) == (r, s) || (p, q) == (s, r)
        }
        _ => a == b,
    }
}

fn cancel_inverse_pairs(slots: &mut [Option<Gate>]) -> bool {
    let mut changed = false;
    for i in 0..slots.len() {
        let Some(g) = slots[i] else { continue };
        let qs = g.qubits();
        let Some(j) = next_on(slots, i, qs[0]) else { continue };
        let partner = slots[j].expect("occupied");
        if same_gate(&g.inverse(), &partner) && qs.iter().all(|&q| next_on(slots, i, q) == Some(j)) {
            slots[i] = None;
            slots[j] = None;
            changed = true;
        }
    }
    changed
}

/// Replaces a contiguous run of SWAPs by one SWAP per cycle element when shorter.
fn shorten_swap_runs(slots: &mut [Option<Gate>]) -> bool {
    let mut changed = false;
    let mut i = 0;
    while i < slots.len() {
        if !matches!(slots[i], Some(Gate::Swap(..))) {
            i += 1;
            continue;
        }
        let mut run = Vec::new();
        let mut e = i;
        while e < slots.len() {
            match slots[e] {
                Some(Gate::Swap(..)) => run.push(e),
                Some(_) => break,
                None => {}
            }
            e += 1;
        }
        let width = run.iter().flat_map(|&r| slots[r].expect("occupied").qubits()).max().expect("non-empty") + 1;
        // Position currently holding the state that started on each qubit.
        let mut pos: Vec<usize> = (0..width).collect();
        for &r in &run {
            if let Some(Gate::Swap(a, b)) = slots[r] {
                for p in pos.iter_mut() {
                    if *p == a {
                        *p = b;
                    } else if *p == b {
                        *p = a;
                    }
                }
            }
        }
        let perm = crate::perm::Permutation::from_images(pos).expect("bijective");
        let canonical: Vec<Gate> = perm.cycles().iter().flat_map(|c| c[1..].iter().map(move |&j| Gate::Swap(c[0], j))).collect();
        if canonical.len() < run.len() {
            for (k, &r) in run.iter().enumerate() {
                slots[r] = canonical.get(k).copied();
            }
            changed = true;
        }
        i = e;
    }
    changed
}

fn is_diagonal(g: &Gate) -> bool {
    matches!(g, Gate::S(_) | Gate::Sdg(_) | Gate::Z(_) | Gate::Cz(..))
}

fn rewrite_conjugated_runs(slots: &mut [Option<Gate>]) -> bool {
    let mut changed = false;
    let mut i = 0;
    while i < slots.len() {
        if !slots[i].is_some_and(|g| is_diagonal(&g)) {
            i += 1;
            continue;
        }
        let mut run = vec![i];
        let mut e = i + 1;
        while e < slots.len() {
            match slots[e] {
                Some(g) if is_diagonal(&g) => run.push(e),
                Some(_) => break,
                None => {}
            }
            e += 1;
        }
        let mut touched: Vec<usize> = run.iter().flat_map(|&r| slots[r].expect("occupied").qubits()).collect();
        touched.sort_unstable();
        touched.dedup();
        let last = *run.last().expect("non-empty");
        let hadamards: Option<Vec<(usize, usize)>> = touched
            .iter()
            .map(|&q| {
                let p = prev_on(slots, i, q).filter(|&p| slots[p] == Some(Gate::H(q)))?;
                let n = next_on(slots, last, q).filter(|&n| slots[n] == Some(Gate::H(q)))?;
                Some((p, n))
            })
            .collect();
        if let Some(hs) = hadamards {
            for (p, n) in hs {
                slots[p] = None;
                slots[n] = None;
            }
            for &r in &run {
                slots[r] = slots[r].map(|g| match g {
                    Gate::S(q) => Gate::SqrtX(q),
                    Gate::Sdg(q) => Gate::SqrtXdg(q),
                    Gate::Z(q) => Gate::X(q),
                    Gate::Cz(a, b) => Gate::Cxx(a, b),
                    other => other,
                });
            }
            changed = true;
        }
        i = e;
    }
    changed
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PhasedPauli {
        s.parse().unwrap()
    }

    fn conj(g: Gate, s: &str) -> PhasedPauli {
        let c = CliffordCircuit::from_gates(p(s).n(), vec![g]).unwrap();
        c.conjugate(&p(s))
    }

    #[test]
    fn gamma_cycles_x_y_z() {
        assert_eq!(conj(Gate::Gamma(0), "X"), p("Y"));
        assert_eq!(conj(Gate::Gamma(0), "Y"), p("Z"));
        assert_eq!(conj(Gate::Gamma(0), "Z"), p("X"));
        assert_eq!(conj(Gate::GammaDg(0), "X"), p("Z"));
    }

    #[test]
    fn phase_gates_on_y() {
        assert_eq!(conj(Gate::S(0), "Y"), p("-X"));
        assert_eq!(conj(Gate::H(0), "Y"), p("-Y"));
        assert_eq!(conj(Gate::SqrtX(0), "Z"), p("-Y"));
        assert_eq!(conj(Gate::Sdg(0), "X"), p("-Y"));
    }

    #[test]
    fn inverse_undoes() {
        let c = CliffordCircuit::parse_text("H 0\nS 1\nCNOT 0 1\nGAMMA 2\nCXX 1 2\nSQRTX 0\nSWAP 0 2\nY 1", None).unwrap();
        let inv = c.inverse();
        for s in ["XII", "IYI", "ZZX", "-iYXZ"] {
            assert_eq!(inv.conjugate(&c.conjugate(&p(s))), p(s));
        }
        assert_eq!(c.then(&inv).symplectic(), BitMatrix::identity(6));
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let text = "H 0\nSWAP 1 4\nCNOT 0 2\nCZ 0 1\nCXX 0 3\nSQRTX 2\nX 0\n";
        let c = CliffordCircuit::parse_text(text, None).unwrap();
        assert_eq!(c.n(), 5);
        assert_eq!(c.to_text(), text);
        assert!(matches!(CliffordCircuit::parse_text("FOO 1", None), Err(CircuitError::Parse { line: 1, .. })));
        assert!(matches!(CliffordCircuit::parse_text("CZ 1 1", None), Err(CircuitError::RepeatedQubit(_))));
        assert!(matches!(CliffordCircuit::parse_text("H 3", Some(2)), Err(CircuitError::QubitOutOfRange { .. })));
        assert!(CliffordCircuit::parse_text("# only a comment\n", None).unwrap().is_empty());
    }

    #[test]
    fn symplectic_of_single_gates() {
        let s = CliffordCircuit::from_gates(1, vec![Gate::S(0)]).unwrap();
        assert_eq!(s.symplectic(), BitMatrix::parse01(&["11", "01"]).unwrap());
        let h = CliffordCircuit::from_gates(1, vec![Gate::H(0)]).unwrap();
        assert_eq!(h.symplectic(), BitMatrix::parse01(&["01", "10"]).unwrap());
    }

    #[test]
    fn qasm_expands_composites() {
        let c = CliffordCircuit::from_gates(2, vec![Gate::Cxx(0, 1), Gate::Gamma(1)]).unwrap();
        let q = c.to_qasm();
        assert!(q.starts_with("OPENQASM 2.0;"));
        assert_eq!(q.matches("h q[").count(), 5);
        assert!(q.contains("cz q[0],q[1];"));
    }

    #[test]
    fn simplifier_rewrites_conjugated_diagonals() {
        let c = CliffordCircuit::parse_text("H 0\nH 1\nH 2\nS 0\nS 2\nCZ 0 2\nH 0\nH 1\nH 2\nSWAP 0 1\nSWAP 1 0\n", None).unwrap();
        let s = c.simplified();
        assert_eq!(s.gates(), &[Gate::SqrtX(0), Gate::SqrtX(2), Gate::Cxx(0, 2)]);
        assert_eq!(s.symplectic(), c.symplectic());
        let p = PhasedPauli::parse("XYZ").unwrap();
        assert_eq!(s.conjugate(&p), c.conjugate(&p));
    }

    #[test]
    fn simplifier_shortens_swap_runs() {
        let c = CliffordCircuit::parse_text("SWAP 2 3\nSWAP 1 2\nSWAP 2 3\n", None).unwrap();
        let s = c.simplified();
        assert_eq!(s.gates(), &[Gate::Swap(1, 3)]);
        assert_eq!(s.symplectic(), c.symplectic());
    }
}
