//! Logical action group of a set of discovered gates, and synthesis of target
//! logical Cliffords as words in those gates.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigUint;
use thiserror::Error;

use crate::circuit::{CircuitError, CliffordCircuit};
use crate::cliffordmap::{pauli_correct_and_action, verify_preserves_stabilizers, CliffordMapError, LogicalReport};
use crate::gf2::{BitMatrix, BitVector};
use crate::perm::{PermGroup, Permutation, Word};
use crate::stabcode::Tableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogSearchError {
    #[error("target is not a {0}x{0} symplectic matrix")]
    NotSymplectic(usize),
    #[error("target logical action is not generated by the available gates")]
    NotRealizable,
    #[error("generator {0} has a {1}x{1} action, expected {2}x{2}")]
    ActionShape(usize, usize, usize),
    #[error("cannot parse target: {0}")]
    BadTarget(String),
    #[error("group has more than {0} elements; exhaustive search skipped")]
    TooLarge(usize),
    #[error("synthesized circuit does not realize the target")]
    VerificationFailed,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Mapping(#[from] CliffordMapError),
}

/// Cost used to rank circuits: entangling gates first, then total gates.
pub fn circuit_cost(c: &CliffordCircuit) -> (usize, usize) {
    (c.entangling_count(), c.gates().iter().filter(|g| !g.is_pauli()).count())
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    /// Composed generator circuits; the correction in `report` goes before it.
    pub circuit: CliffordCircuit,
    pub report: LogicalReport,
    pub word: Word,
}

impl Synthesis {
    pub fn corrected_circuit(&self) -> CliffordCircuit {
        self.report.corrected(&self.circuit)
    }
}

/// The group generated by logical actions, acting on the orbits of the
/// logical basis vectors `e_0 … e_{2k-1}` (a faithful action).
#[derive(Debug, Clone)]
pub struct LogicalActionGroup {
    k: usize,
    actions: Vec<BitMatrix>,
    circuits: Vec<CliffordCircuit>,
    points: Vec<BitVector>,
    index: HashMap<BitVector, usize>,
    group: PermGroup,
}

impl LogicalActionGroup {
    /// `generators` are `(action, circuit)` pairs. Circuits need not carry their
    /// Pauli correction; synthesized words get a fresh one.
    pub fn new(k: usize, generators: Vec<(BitMatrix, CliffordCircuit)>) -> Result<Self, LogSearchError> {
        for (i, (a, _)) in generators.iter().enumerate() {
            if a.num_rows() != 2 * k || a.num_cols() != 2 * k {
                return Err(LogSearchError::ActionShape(i, a.num_rows() / 2, 2 * k));
            }
            if k > 0 && !a.is_symplectic().unwrap_or(false) {
                return Err(LogSearchError::NotSymplectic(2 * k));
            }
        }
        let (actions, circuits): (Vec<_>, Vec<_>) = generators.into_iter().unzip();
        let mut points: Vec<BitVector> = (0..2 * k).map(|i| BitVector::unit(2 * k, i)).collect();
        let mut index: HashMap<BitVector, usize> = points.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut next = 0;
        while next < points.len() {
            for a in &actions {
                let img = a.left_mul_vec(&points[next]);
                if !index.contains_key(&img) {
                    index.insert(img.clone(), points.len());
                    points.push(img);
                }
            }
            next += 1;
        }
        let perms = actions
            .iter()
            .map(|a| {
                let images = points.iter().map(|v| index[&a.left_mul_vec(v)]).collect();
                Permutation::from_images(images).expect("symplectic maps are bijective")
            })
            .collect();
        let group = PermGroup::new(points.len(), perms).expect("consistent degree");
        Ok(Self { k, actions, circuits, points, index, group })
    }

    /// Logical actions of certified gates with their uncorrected circuits.
    pub fn from_reports<'a>(k: usize, gates: impl IntoIterator<Item = (&'a LogicalReport, &'a CliffordCircuit)>) -> Result<Self, LogSearchError> {
        let gens = gates.into_iter().map(|(r, c)| (r.action.clone(), c.clone())).collect();
        Self::new(k, gens)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn actions(&self) -> &[BitMatrix] {
        &self.actions
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }

    fn as_permutation(&self, target: &BitMatrix) -> Result<Permutation, LogSearchError> {
        let k2 = 2 * self.k;
        if target.num_rows() != k2 || target.num_cols() != k2 || (self.k > 0 && !target.is_symplectic().unwrap_or(false)) {
            return Err(LogSearchError::NotSymplectic(k2));
        }
        let mut images = Vec::with_capacity(self.points.len());
        for v in &self.points {
            match self.index.get(&target.left_mul_vec(v)) {
                Some(&i) => images.push(i),
                None => return Err(LogSearchError::NotRealizable),
            }
        }
        Permutation::from_images(images).map_err(|_| LogSearchError::NotRealizable)
    }

    pub fn contains(&self, target: &BitMatrix) -> Result<bool, LogSearchError> {
        match self.as_permutation(target) {
            Ok(p) => Ok(self.group.contains(&p)),
            Err(LogSearchError::NotRealizable) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn compose(&self, word: &[crate::perm::Letter]) -> CliffordCircuit {
        let n = self.circuits.first().map_or(0, CliffordCircuit::n);
        word.iter().fold(CliffordCircuit::new(n), |acc, l| {
            let c = &self.circuits[l.generator];
            acc.then(&if l.inverse { c.inverse() } else { c.clone() })
        })
    }

    fn finish(&self, target: &BitMatrix, t: &Tableau, word: Word) -> Result<Synthesis, LogSearchError> {
        let circuit = if self.circuits.is_empty() { CliffordCircuit::new(t.n()) } else { self.compose(&word) }.simplified();
        let report = pauli_correct_and_action(t, &circuit)?;
        if &report.action != target || !verify_preserves_stabilizers(t, &report.corrected(&circuit)) {
            return Err(LogSearchError::VerificationFailed);
        }
        Ok(Synthesis { circuit, report, word })
    }

    /// Circuit for `target` from a stabilizer-chain membership word.
    pub fn synthesize(&self, target: &BitMatrix, t: &Tableau) -> Result<Synthesis, LogSearchError> {
        let p = self.as_permutation(target)?;
        let word = self.group.membership(&p).map_err(|_| LogSearchError::NotRealizable)?;
        self.finish(target, t, word)
    }

    /// Cheapest word by [`circuit_cost`] (summed over letters), found by a
    /// shortest-path search over group elements. Gives up past `max_elements`.
    pub fn synthesize_min_cost(&self, target: &BitMatrix, t: &Tableau, max_elements: usize) -> Result<Synthesis, LogSearchError> {
        if !self.contains(target)? {
            return Err(LogSearchError::NotRealizable);
        }
        let k2 = 2 * self.k;
        let identity = BitMatrix::identity(k2);
        let mut letters = Vec::new();
        for (i, (a, c)) in self.actions.iter().zip(&self.circuits).enumerate() {
            if a == &identity {
                continue;
            }
            let cost = circuit_cost(c);
            letters.push((crate::perm::Letter { generator: i, inverse: false }, a.clone(), cost));
            let inv = a.invert().expect("symplectic");
            if &inv != a {
                letters.push((crate::perm::Letter { generator: i, inverse: true }, inv, cost));
            }
        }
        // Nodes are indices into `nodes`; `best[i]` holds the cost and parent edge.
        let mut nodes = vec![identity.clone()];
        let mut ids: HashMap<BitMatrix, usize> = [(identity, 0)].into_iter().collect();
        let mut best: Vec<((usize, usize), Option<(usize, crate::perm::Letter)>)> = vec![((0, 0), None)];
        let mut heap = BinaryHeap::new();
        heap.push(Reverse(((0usize, 0usize), 0usize)));
        let goal = loop {
            let Some(Reverse((cost, i))) = heap.pop() else {
                return Err(LogSearchError::NotRealizable);
            };
            if best[i].0 < cost {
                continue;
            }
            if &nodes[i] == target {
                break i;
            }
            for (letter, a, c) in &letters {
                let next = nodes[i].mul(a);
                let nc = (cost.0 + c.0, cost.1 + c.1);
                let j = match ids.get(&next) {
                    Some(&j) if best[j].0 <= nc => continue,
                    Some(&j) => j,
                    None => {
                        if nodes.len() >= max_elements {
                            return Err(LogSearchError::TooLarge(max_elements));
                        }
                        ids.insert(next.clone(), nodes.len());
                        nodes.push(next);
                        best.push((nc, None));
                        nodes.len() - 1
                    }
                };
                best[j] = (nc, Some((i, *letter)));
                heap.push(Reverse((nc, j)));
            }
        };
        let mut word = Vec::new();
        let mut cur = goal;
        while let (_, Some((prev, letter))) = best[cur] {
            word.push(letter);
            cur = prev;
        }
        word.reverse();
        self.finish(target, t, word)
    }

    /// Every element reachable from the generators; an oracle for small groups.
    pub fn enumerate_actions(&self, max_elements: usize) -> Result<Vec<BitMatrix>, LogSearchError> {
        let identity = BitMatrix::identity(2 * self.k);
        let mut seen = vec![identity.clone()];
        let mut set: std::collections::HashSet<BitMatrix> = [identity].into_iter().collect();
        let mut i = 0;
        while i < seen.len() {
            for a in &self.actions {
                let next = seen[i].mul(a);
                if set.insert(next.clone()) {
                    if set.len() > max_elements {
                        return Err(LogSearchError::TooLarge(max_elements));
                    }
                    seen.push(next);
                }
            }
            i += 1;
        }
        Ok(seen)
    }
}

/// Order of the logical action group.
pub fn action_group_order(l: &LogicalActionGroup) -> BigUint {
    l.order()
}

/// Parses a target given either as gate names on logical qubits
/// (`"H(0) S(1)"`, `"CNOT(0,1)"`, `"I"`) applied left to right, or as `2k`
/// rows of 0/1.
pub fn parse_target(text: &str, k: usize) -> Result<BitMatrix, LogSearchError> {
    let trimmed = text.trim();
    let is_matrix = !trimmed.is_empty() && trimmed.chars().all(|c| matches!(c, '0' | '1' | '|' | ' ' | '\t' | '\n' | '\r' | ','));
    if is_matrix {
        let rows: Vec<&str> = trimmed.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let m = BitMatrix::parse01(&rows).map_err(|e| LogSearchError::BadTarget(e.to_string()))?;
        if m.num_rows() != 2 * k || m.num_cols() != 2 * k || !m.is_symplectic().unwrap_or(false) {
            return Err(LogSearchError::NotSymplectic(2 * k));
        }
        return Ok(m);
    }
    if trimmed.eq_ignore_ascii_case("I") {
        return Ok(BitMatrix::identity(2 * k));
    }
    let mut lines = String::new();
    for tok in trimmed.split_inclusive(')') {
        let tok = tok.trim().trim_start_matches([';', '*']).trim();
        if tok.is_empty() {
            continue;
        }
        if !tok.ends_with(')') || !tok.contains('(') {
            return Err(LogSearchError::BadTarget(format!("expected NAME(i) or NAME(i,j), got {tok:?}")));
        }
        lines.push_str(&tok.replace(['(', ','], " ").replace(')', ""));
        lines.push('\n');
    }
    let c = CliffordCircuit::parse_text(&lines, Some(k)).map_err(|e| LogSearchError::BadTarget(e.to_string()))?;
    Ok(c.symplectic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::stabcode::StabilizerCode;

    fn single(g: Gate) -> BitMatrix {
        CliffordCircuit::from_gates(1, vec![g]).unwrap().symplectic()
    }

    #[test]
    fn trivial_group() {
        let l = LogicalActionGroup::new(1, vec![]).unwrap();
        assert_eq!(action_group_order(&l), BigUint::from(1u8));
        let code = StabilizerCode::new(1, vec![]).unwrap();
        let s = l.synthesize(&BitMatrix::identity(2), code.tableau()).unwrap();
        assert!(s.circuit.is_empty());
        assert_eq!(l.synthesize(&single(Gate::H(0)), code.tableau()).unwrap_err(), LogSearchError::NotRealizable);
    }

    #[test]
    fn full_single_qubit_clifford_group() {
        // Bare qubit: logical operators are the physical ones.
        let code = StabilizerCode::new(1, vec![]).unwrap();
        let h = CliffordCircuit::from_gates(1, vec![Gate::H(0)]).unwrap();
        let s = CliffordCircuit::from_gates(1, vec![Gate::S(0)]).unwrap();
        let l = LogicalActionGroup::new(1, vec![(h.symplectic(), h), (s.symplectic(), s)]).unwrap();
        assert_eq!(l.order(), BigUint::from(6u8));
        assert_eq!(l.enumerate_actions(100).unwrap().len(), 6);
        let target = single(Gate::Gamma(0));
        let syn = l.synthesize(&target, code.tableau()).unwrap();
        assert_eq!(syn.report.action, target);
        let cheap = l.synthesize_min_cost(&target, code.tableau(), 100).unwrap();
        assert_eq!(cheap.word.len(), 2);
    }

    #[test]
    fn parses_targets() {
        assert_eq!(parse_target("I", 2).unwrap(), BitMatrix::identity(4));
        let cnot = CliffordCircuit::from_gates(2, vec![Gate::Cnot(0, 1)]).unwrap().symplectic();
        assert_eq!(parse_target("CNOT(0,1)", 2).unwrap(), cnot);
        let hs = CliffordCircuit::from_gates(2, vec![Gate::H(0), Gate::S(1)]).unwrap().symplectic();
        assert_eq!(parse_target("H(0) S(1)", 2).unwrap(), hs);
        assert_eq!(parse_target("01\n10", 1).unwrap(), single(Gate::H(0)));
        assert!(matches!(parse_target("FOO(0)", 1), Err(LogSearchError::BadTarget(_))));
        assert!(matches!(parse_target("H(3)", 2), Err(LogSearchError::BadTarget(_))));
        assert_eq!(parse_target("11\n11", 1), Err(LogSearchError::NotSymplectic(2)));
    }
}
