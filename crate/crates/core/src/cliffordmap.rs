//! From structured column permutations to Clifford circuits, and from circuits
//! to Pauli corrections and logical actions.

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::binrep::{BlockRep, RepKind};
use crate::circuit::{CliffordCircuit, Gate};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PhasedPauli;
use crate::perm::Permutation;
use crate::stabcode::Tableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordMapError {
    #[error("permutation does not split as a symplectic block plus an auxiliary block")]
    NotDirectSum,
    #[error("conjugated permutation is not symplectic")]
    NotSymplectic,
    #[error("permutation does not respect the qubit block structure at column {0}")]
    NotStructured(usize),
    #[error("permutation has degree {got}, representation has width {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("tableau row {row} is mapped outside the normalizer of the code")]
    NotLogicalOperator { row: usize },
    #[error("stabilizer row {row} is mapped onto a non-trivial logical operator")]
    StabilizerToLogical { row: usize },
    #[error("circuit acts on {got} qubits, code has {expected}")]
    WidthMismatch { expected: usize, got: usize },
}

fn permutation_matrix(p: &Permutation) -> BitMatrix {
    let m = p.degree();
    let mut out = BitMatrix::zeros(m, m);
    for j in 0..m {
        out.set(j, p.apply(j), true);
    }
    out
}

/// `E P E⁻¹`, reduced to its symplectic block for three-block representations.
pub fn perm_to_symplectic(rep: &BlockRep, p: &Permutation) -> Result<BitMatrix, CliffordMapError> {
    let width = rep.width();
    if p.degree() != width {
        return Err(CliffordMapError::DegreeMismatch { expected: width, got: p.degree() });
    }
    let e_inv = rep.e.invert().expect("representation transform is invertible");
    let conj = rep.e.mul(&permutation_matrix(p)).mul(&e_inv);
    let n = rep.n;
    let u = if rep.kind.blocks() == 3 {
        let upper_right = conj.submatrix(0..2 * n, 2 * n..3 * n);
        let lower_left = conj.submatrix(2 * n..3 * n, 0..2 * n);
        if !upper_right.is_zero() || !lower_left.is_zero() {
            return Err(CliffordMapError::NotDirectSum);
        }
        conj.submatrix(0..2 * n, 0..2 * n)
    } else {
        conj
    };
    if !u.is_symplectic().unwrap_or(false) {
        return Err(CliffordMapError::NotSymplectic);
    }
    Ok(u)
}

/// Single-qubit gate whose action permutes the blocks of one qubit by `sigma`
/// (block `b` goes to block `sigma[b]`).
fn gate_for_block_perm(kind: RepKind, sigma: &[usize], q: usize) -> Option<Gate> {
    match (kind, sigma) {
        (_, [0, 1]) | (_, [0, 1, 2]) => None,
        (RepKind::HSwap, [1, 0]) => Some(Gate::H(q)),
        (RepKind::SSwap, [1, 0]) => Some(Gate::S(q)),
        (RepKind::SqrtXSwap, [1, 0]) => Some(Gate::SqrtX(q)),
        (RepKind::ThreeBlock, [1, 0, 2]) => Some(Gate::H(q)),
        (RepKind::ThreeBlock, [0, 2, 1]) => Some(Gate::S(q)),
        (RepKind::ThreeBlock, [2, 1, 0]) => Some(Gate::SqrtX(q)),
        (RepKind::ThreeBlock, [1, 2, 0]) => Some(Gate::Gamma(q)),
        (RepKind::ThreeBlock, [2, 0, 1]) => Some(Gate::GammaDg(q)),
        _ => unreachable!("block permutation {sigma:?} for {kind}"),
    }
}

/// SWAP gates moving the state of qubit `j` to qubit `images[j]`.
pub fn swaps_for_qubit_permutation(images: &[usize]) -> Vec<Gate> {
    let p = Permutation::from_images(images.to_vec()).expect("qubit permutation");
    let mut gates = Vec::new();
    for cycle in p.cycles() {
        for &j in &cycle[1..] {
            gates.push(Gate::Swap(cycle[0], j));
        }
    }
    gates
}

/// Decodes a structured permutation as single-qubit gates followed by SWAPs.
pub fn perm_to_circuit(rep: &BlockRep, p: &Permutation) -> Result<CliffordCircuit, CliffordMapError> {
    let n = rep.n;
    let blocks = rep.kind.blocks();
    if p.degree() != blocks * n {
        return Err(CliffordMapError::DegreeMismatch { expected: blocks * n, got: p.degree() });
    }
    let mut qubit_images = vec![0; n];
    let mut gates = Vec::new();
    for i in 0..n {
        let target = p.apply(i) % n;
        let mut sigma = vec![0; blocks];
        let mut seen = vec![false; blocks];
        for (b, slot) in sigma.iter_mut().enumerate() {
            let img = p.apply(b * n + i);
            if img % n != target || seen[img / n] {
                return Err(CliffordMapError::NotStructured(b * n + i));
            }
            seen[img / n] = true;
            *slot = img / n;
        }
        qubit_images[i] = target;
        if let Some(g) = gate_for_block_perm(rep.kind, &sigma, i) {
            gates.push(g);
        }
    }
    gates.extend(swaps_for_qubit_permutation(&qubit_images));
    Ok(CliffordCircuit::from_gates(n, gates).expect("indices in range"))
}

/// Result of checking a circuit against a code's tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalReport {
    /// Pauli applied before the circuit so that every stabilizer keeps its sign.
    pub correction: PhasedPauli,
    /// `2k × 2k` logical action: row `i < k` is the image of logical `X_i`, row `k + i` of `Z_i`.
    pub action: BitMatrix,
    pub name: Option<String>,
}

impl LogicalReport {
    pub fn needs_correction(&self) -> bool {
        !self.correction.is_identity()
    }

    /// The correction followed by `circ`.
    pub fn corrected(&self, circ: &CliffordCircuit) -> CliffordCircuit {
        CliffordCircuit::pauli(&self.correction).then(circ)
    }
}

/// Pauli correction and logical action of `circ` on the code described by `t`.
///
/// Logical operators are normalized so that a mapped logical `X_j`/`Z_j`
/// carries the sign of `i^{a_X·a_Z}` times the tableau product, i.e. `Y = iXZ`.
pub fn pauli_correct_and_action(t: &Tableau, circ: &CliffordCircuit) -> Result<LogicalReport, CliffordMapError> {
    let n = t.n();
    if circ.n() != n {
        return Err(CliffordMapError::WidthMismatch { expected: n, got: circ.n() });
    }
    let m = t.m();
    let k = t.k();
    let mut correction = PhasedPauli::identity(n);
    let mut action_rows = Vec::with_capacity(2 * k);
    let rows: Vec<usize> = (0..n).chain(n + m..2 * n).collect();
    for &i in &rows {
        let mapped = circ.conjugate(t.row(i));
        let b = t.coordinates(&mapped.symplectic());
        if !b.slice(n..n + m).is_zero() {
            return Err(CliffordMapError::NotLogicalOperator { row: i });
        }
        let a_x = b.slice(m..n);
        let a_z = b.slice(n + m..2 * n);
        if i < m && !(a_x.is_zero() && a_z.is_zero()) {
            return Err(CliffordMapError::StabilizerToLogical { row: i });
        }
        if i >= m {
            action_rows.push(a_x.concat(&a_z));
        }
        let product = t.product(&b);
        debug_assert_eq!(product.symplectic(), mapped.symplectic());
        let v = (product.phase() as usize + a_x.overlap(&a_z)) % 4;
        if v != mapped.phase() as usize {
            debug_assert_eq!((v + 4 - mapped.phase() as usize) % 4, 2);
            let partner = t.row((i + n) % (2 * n));
            let flip = PhasedPauli::new(0, partner.x().clone(), partner.z().clone());
            correction = correction.multiply(&flip);
        }
    }
    // Hermitian with a + sign, e.g. Y rather than iXZ.
    let ys = correction.y_count();
    correction.set_phase((ys % 4) as u8);
    let action = BitMatrix::from_rows(2 * k, action_rows);
    if k > 0 && !action.is_symplectic().unwrap_or(false) {
        return Err(CliffordMapError::NotLogicalOperator { row: n });
    }
    let name = logical_name(&action);
    Ok(LogicalReport { correction, action, name })
}

/// Independent check: every signed stabilizer generator is mapped to an element of the
/// stabilizer group with exactly the same sign.
pub fn verify_preserves_stabilizers(t: &Tableau, circ: &CliffordCircuit) -> bool {
    if circ.n() != t.n() {
        return false;
    }
    let gens = t.stabilizers();
    let n = t.n();
    let g = BitMatrix::from_rows(2 * n, gens.iter().map(PhasedPauli::symplectic).collect());
    gens.iter().all(|s| {
        let mapped = circ.conjugate(s);
        let Ok(coeffs) = g.solve_in_span(&mapped.symplectic()) else {
            return false;
        };
        let mut acc = PhasedPauli::identity(n);
        for j in coeffs.ones_iter() {
            acc = acc.multiply(&gens[j]);
        }
        acc == mapped
    })
}

/// Name of a logical action on up to three logical qubits, when it is a single
/// listed gate or a tensor product of single-qubit Cliffords.
pub fn logical_name(action: &BitMatrix) -> Option<String> {
    let k = action.num_rows() / 2;
    if k == 0 || k > 3 {
        return None;
    }
    static TABLES: OnceLock<Vec<HashMap<BitMatrix, String>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| (1..=3).map(build_name_table).collect());
    tables[k - 1].get(action).cloned()
}

const SINGLE_NAMES: [(&str, fn(usize) -> Option<Gate>); 6] = [
    ("I", |_| None),
    ("H", |q| Some(Gate::H(q))),
    ("S", |q| Some(Gate::S(q))),
    ("SQRTX", |q| Some(Gate::SqrtX(q))),
    ("GAMMA", |q| Some(Gate::Gamma(q))),
    ("GAMMADG", |q| Some(Gate::GammaDg(q))),
];

fn build_name_table(k: usize) -> HashMap<BitMatrix, String> {
    let mut table = HashMap::new();
    // Two-qubit gates first so that names like SWAP are preferred.
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            for (name, g) in [
                ("CNOT", Gate::Cnot(a, b)),
                ("CZ", Gate::Cz(a, b)),
                ("SWAP", Gate::Swap(a, b)),
                ("CXX", Gate::Cxx(a, b)),
            ] {
                if matches!(g, Gate::Cz(..) | Gate::Swap(..) | Gate::Cxx(..)) && a > b {
                    continue;
                }
                let c = CliffordCircuit::from_gates(k, vec![g]).expect("valid");
                table.entry(c.symplectic()).or_insert_with(|| format!("{name}({a},{b})"));
            }
        }
    }
    for code in 0..6usize.pow(k as u32) {
        let mut gates = Vec::new();
        let mut parts = Vec::new();
        let mut c = code;
        for q in 0..k {
            let (name, f) = SINGLE_NAMES[c % 6];
            c /= 6;
            if let Some(g) = f(q) {
                gates.push(g);
                parts.push(format!("{name}({q})"));
            }
        }
        let circ = CliffordCircuit::from_gates(k, gates).expect("valid");
        let label = if parts.is_empty() { "I".to_string() } else { parts.join(" ") };
        table.entry(circ.symplectic()).or_insert(label);
    }
    table
}

/// Symplectic matrix of a permutation of qubits (`images[j]` receives qubit `j`).
pub fn qubit_permutation_symplectic(images: &[usize]) -> BitMatrix {
    let n = images.len();
    let mut u = BitMatrix::zeros(2 * n, 2 * n);
    for (j, &q) in images.iter().enumerate() {
        u.set(j, q, true);
        u.set(n + j, n + q, true);
    }
    u
}

/// Applies the inverse logical basis change: a vector of logical coordinates to `(x|z)`.
pub fn logical_vector(t: &Tableau, coords: &BitVector) -> BitVector {
    let k = t.k();
    let n = t.n();
    let mut out = BitVector::zeros(2 * n);
    for j in coords.ones_iter() {
        let row = if j < k { &t.logical_x()[j] } else { &t.logical_z()[j - k] };
        out.xor_assign(&row.symplectic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabcode::StabilizerCode;

    fn five() -> StabilizerCode {
        StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap()
    }

    #[test]
    fn s_type_cycle_single_qubit() {
        let code = StabilizerCode::from_strings(&["Z"]).unwrap();
        let rep = BlockRep::build(&code, RepKind::ThreeBlock);
        let p = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(perm_to_symplectic(&rep, &p).unwrap(), BitMatrix::parse01(&["11", "01"]).unwrap());
        let h = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert_eq!(perm_to_symplectic(&rep, &h).unwrap(), BitMatrix::parse01(&["01", "10"]).unwrap());
        assert_eq!(perm_to_circuit(&rep, &p).unwrap().gates(), &[Gate::S(0)]);
    }

    #[test]
    fn three_cycles_are_gamma_gates() {
        let code = StabilizerCode::from_strings(&["Z"]).unwrap();
        let rep = BlockRep::build(&code, RepKind::ThreeBlock);
        for (cycle, gate) in [(&[0usize, 1, 2][..], Gate::Gamma(0)), (&[0, 2, 1][..], Gate::GammaDg(0))] {
            let p = Permutation::from_cycles(3, &[cycle]).unwrap();
            let circ = perm_to_circuit(&rep, &p).unwrap();
            assert_eq!(circ.gates(), &[gate]);
            assert_eq!(circ.symplectic(), perm_to_symplectic(&rep, &p).unwrap());
        }
    }

    #[test]
    fn qubit_permutation_gives_q_plus_q() {
        let code = StabilizerCode::new(3, vec![]).unwrap();
        let rep = BlockRep::build(&code, RepKind::ThreeBlock);
        let p = Permutation::from_images(vec![1, 2, 0, 4, 5, 3, 7, 8, 6]).unwrap();
        let u = perm_to_symplectic(&rep, &p).unwrap();
        assert_eq!(u, qubit_permutation_symplectic(&[1, 2, 0]));
        assert_eq!(perm_to_circuit(&rep, &p).unwrap().symplectic(), u);
    }

    #[test]
    fn unstructured_permutation_rejected() {
        let code = StabilizerCode::new(2, vec![]).unwrap();
        let rep = BlockRep::build(&code, RepKind::ThreeBlock);
        let p = Permutation::from_cycles(6, &[&[0, 3]]).unwrap();
        assert!(matches!(perm_to_circuit(&rep, &p), Err(CliffordMapError::NotStructured(_))));
    }

    #[test]
    fn identity_circuit_is_trivial_logical() {
        let code = five();
        let r = pauli_correct_and_action(code.tableau(), &CliffordCircuit::new(5)).unwrap();
        assert!(!r.needs_correction());
        assert_eq!(r.action, BitMatrix::identity(2));
        assert_eq!(r.name.as_deref(), Some("I"));
    }

    #[test]
    fn stray_x_is_rejected() {
        let code = five();
        let c = CliffordCircuit::from_gates(5, vec![Gate::X(0)]).unwrap();
        assert!(!verify_preserves_stabilizers(code.tableau(), &c));
        let r = pauli_correct_and_action(code.tableau(), &c).unwrap();
        assert!(r.needs_correction());
        assert!(verify_preserves_stabilizers(code.tableau(), &r.corrected(&c)));
    }

    #[test]
    fn stabilizer_as_circuit_preserves_signs() {
        let code = five();
        let g = CliffordCircuit::pauli(&code.checks()[0]);
        assert!(verify_preserves_stabilizers(code.tableau(), &g));
    }

    #[test]
    fn single_hadamard_is_not_logical() {
        let code = five();
        let c = CliffordCircuit::from_gates(5, vec![Gate::H(0)]).unwrap();
        assert!(pauli_correct_and_action(code.tableau(), &c).is_err());
    }

    #[test]
    fn names_cover_single_qubit_group() {
        let table = build_name_table(1);
        assert_eq!(table.len(), 6);
        let two = build_name_table(2);
        assert!(two.values().any(|v| v == "CNOT(0,1)"));
        assert!(two.values().any(|v| v == "H(0) H(1)"));
    }
}
