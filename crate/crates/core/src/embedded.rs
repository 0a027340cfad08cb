//! Embedded codes: auxiliary qubits standing for pairs of original qubits, so
//! that automorphisms of the larger code translate into CNOT and CZ gates.

use std::collections::HashSet;

use thiserror::Error;

use crate::circdecomp::cnot_network;
use crate::circuit::{CliffordCircuit, Gate};
use crate::cliffordmap::{pauli_correct_and_action, swaps_for_qubit_permutation, verify_preserves_stabilizers, CliffordMapError, LogicalReport};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PhasedPauli;
use crate::pipeline::{discover_gates, DiscoveryError, DiscoveryOptions};
use crate::stabcode::{CodeError, StabilizerCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    HadamardOnAuxiliary { qubit: usize },
    /// X or Y on an auxiliary qubit leaves the `|0>` state.
    AuxiliaryBitFlip { qubit: usize },
    /// An auxiliary qubit would not return to `|0>` on the codespace.
    UnsatisfiedIdentityCondition { auxiliary: usize },
    /// The permuted register no longer determines the original qubits.
    SingularPermutation,
    /// A single-qubit or entangling gate after the SWAP layer.
    UnsupportedGateOrder,
    /// The interpreted circuit disagrees with the conjugated operator.
    ConjugationMismatch,
}

impl std::fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::HadamardOnAuxiliary { qubit } => write!(f, "Hadamard-type gate on auxiliary qubit {qubit}"),
            Self::AuxiliaryBitFlip { qubit } => write!(f, "bit flip on auxiliary qubit {qubit}"),
            Self::UnsatisfiedIdentityCondition { auxiliary } => {
                write!(f, "identity condition fails for auxiliary {auxiliary}")
            }
            Self::SingularPermutation => f.write_str("permutation loses an original qubit"),
            Self::UnsupportedGateOrder => f.write_str("gate after the SWAP layer"),
            Self::ConjugationMismatch => f.write_str("interpretation disagrees with conjugation"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("pair ({0}, {1}) is out of range for {2} qubits")]
    PairOutOfRange(usize, usize, usize),
    #[error("pair ({0}, {1}) is repeated or degenerate")]
    BadPair(usize, usize),
    #[error("code has {got} qubits, embedding expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("pairs file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid embedded automorphism: {0}")]
    Invalid(InvalidReason),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Discovery(#[from] DiscoveryError),
    #[error(transparent)]
    Mapping(#[from] CliffordMapError),
}

/// Rows of `M`: each auxiliary qubit `n + j` represents `pairs[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSpec {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl EmbeddingSpec {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self, EmbeddingError> {
        let mut seen = HashSet::new();
        for &(a, b) in &pairs {
            if a >= n || b >= n {
                return Err(EmbeddingError::PairOutOfRange(a, b, n));
            }
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(EmbeddingError::BadPair(a, b));
            }
        }
        Ok(Self { n, pairs })
    }

    /// All `n choose 2` pairs in lexicographic order.
    pub fn all_pairs(n: usize) -> Self {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self { n, pairs }
    }

    /// Lines `i j`, `#` comments.
    pub fn parse_text(text: &str, n: usize) -> Result<Self, EmbeddingError> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            match nums.as_deref() {
                Ok([a, b]) => pairs.push((*a, *b)),
                _ => return Err(EmbeddingError::Parse { line: idx + 1, msg: format!("expected two indices, got {line:?}") }),
            }
        }
        Self::new(n, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn matrix(&self) -> BitMatrix {
        let rows = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let mut v = BitVector::zeros(self.n);
                v.set(a, true);
                v.set(b, true);
                v
            })
            .collect();
        BitMatrix::from_rows(self.n, rows)
    }

    /// `E_V`: CNOTs from both members of each pair onto its auxiliary qubit.
    pub fn embedding_circuit(&self) -> CliffordCircuit {
        let gates = self
            .pairs
            .iter()
            .enumerate()
            .flat_map(|(j, &(a, b))| [Gate::Cnot(a, self.n + j), Gate::Cnot(b, self.n + j)])
            .collect();
        CliffordCircuit::from_gates(self.n + self.m(), gates).expect("indices in range")
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddedCode {
    pub base: StabilizerCode,
    pub spec: EmbeddingSpec,
    pub code: StabilizerCode,
}

impl EmbeddedCode {
    pub fn g_v(&self) -> BitMatrix {
        self.code.check_matrix()
    }
}

/// `G_V = [[G_X, G_X Mᵀ, G_Z, 0], [0, 0, M, I]]` on `n + m` qubits.
pub fn embed(code: &StabilizerCode, spec: &EmbeddingSpec) -> Result<EmbeddedCode, EmbeddingError> {
    if code.n() != spec.n {
        return Err(EmbeddingError::LengthMismatch { expected: spec.n, got: code.n() });
    }
    let (n, m) = (spec.n, spec.m());
    let mt = spec.matrix().transpose();
    let mut checks: Vec<PhasedPauli> = code
        .checks()
        .iter()
        .map(|c| {
            let x = c.x().concat(&mt.left_mul_vec(c.x()));
            let z = c.z().concat(&BitVector::zeros(m));
            PhasedPauli::new(c.phase(), x, z)
        })
        .collect();
    for (j, row) in spec.matrix().rows().iter().enumerate() {
        let z = row.concat(&BitVector::unit(m, j));
        checks.push(PhasedPauli::new(0, BitVector::zeros(n + m), z));
    }
    let embedded = StabilizerCode::new(n + m, checks)?;
    Ok(EmbeddedCode { base: code.clone(), spec: spec.clone(), code: embedded })
}

/// Translates an automorphism circuit of the embedded code (single-qubit layer
/// followed by SWAPs) into a circuit on the original qubits.
pub fn interpret(e: &EmbeddedCode, circ: &CliffordCircuit) -> Result<CliffordCircuit, EmbeddingError> {
    let spec = &e.spec;
    let (n, m) = (spec.n, spec.m());
    if circ.n() != n + m {
        return Err(EmbeddingError::LengthMismatch { expected: n + m, got: circ.n() });
    }
    let invalid = |r| Err(EmbeddingError::Invalid(r));
    let mut local = Vec::new();
    // Linear form over the original bits currently held by each position.
    let mut forms: Vec<BitVector> = (0..n).map(|q| BitVector::unit(n, q)).collect();
    forms.extend(spec.matrix().into_rows());
    let mut swapped = false;
    for g in circ.gates() {
        if let Gate::Swap(a, b) = *g {
            forms.swap(a, b);
            swapped = true;
            continue;
        }
        if swapped || g.qubits().len() != 1 {
            return invalid(InvalidReason::UnsupportedGateOrder);
        }
        let q = g.qubits()[0];
        if q < n {
            local.push(*g);
            continue;
        }
        let (a, b) = spec.pairs[q - n];
        match g {
            Gate::S(_) => local.extend([Gate::S(a), Gate::S(b), Gate::Cz(a, b)]),
            Gate::Sdg(_) => local.extend([Gate::Sdg(a), Gate::Sdg(b), Gate::Cz(a, b)]),
            Gate::Z(_) => local.extend([Gate::Z(a), Gate::Z(b)]),
            Gate::X(_) | Gate::Y(_) => return invalid(InvalidReason::AuxiliaryBitFlip { qubit: q }),
            _ => return invalid(InvalidReason::HadamardOnAuxiliary { qubit: q }),
        }
    }

    // On the codespace every basis state x satisfies r·x = 0 for r in `plus_z`.
    let plus_z = plus_z_stabilizers(&e.base);
    for (j, &(a, b)) in spec.pairs.iter().enumerate() {
        let residual = forms[n + j].xor(&forms[a]).xor(&forms[b]);
        if !in_span(&plus_z, &residual) {
            return invalid(InvalidReason::UnsatisfiedIdentityCondition { auxiliary: n + j });
        }
    }
    // Linear map x -> y on the original register, y_p = forms[p]·x, with each
    // form free up to `plus_z` so that the map is invertible.
    let Some(chosen) = choose_representatives(&forms[..n], &plus_z) else {
        return invalid(InvalidReason::SingularPermutation);
    };
    let q_mat = BitMatrix::from_rows(n, (0..n).map(|q| BitVector::from_bools((0..n).map(|p| chosen[p].get(q)))).collect());
    let Some(images) = perfect_matching(&q_mat) else {
        return invalid(InvalidReason::SingularPermutation);
    };
    // Q = C·P with P the matched permutation, so C has a full diagonal.
    let mut c = BitMatrix::zeros(n, n);
    for q in 0..n {
        for (j, &p) in images.iter().enumerate() {
            c.set(q, j, q_mat.get(q, p));
        }
    }
    let mut gates = local;
    gates.extend(cnot_network(&c));
    gates.extend(swaps_for_qubit_permutation(&images));
    let out = CliffordCircuit::from_gates(n, gates).expect("indices in range");

    if !agrees_with_conjugation(e, circ, &out) {
        return invalid(InvalidReason::ConjugationMismatch);
    }
    Ok(out)
}

/// `images[j] = p` with `q_mat[j][p] = 1` for all `j`, preferring unit columns.
fn perfect_matching(q_mat: &BitMatrix) -> Option<Vec<usize>> {
    let n = q_mat.num_rows();
    let col_weight: Vec<usize> = (0..n).map(|p| (0..n).filter(|&q| q_mat.get(q, p)).count()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(q: usize, order: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &p in &order[q] {
            if seen[p] {
                continue;
            }
            seen[p] = true;
            if owner[p].is_none_or(|r| augment(r, order, owner, seen)) {
                owner[p] = Some(q);
                return true;
            }
        }
        false
    }
    let order: Vec<Vec<usize>> = (0..n)
        .map(|q| {
            let mut ps: Vec<usize> = (0..n).filter(|&p| q_mat.get(q, p)).collect();
            ps.sort_by_key(|&p| (col_weight[p], p != q, p));
            ps
        })
        .collect();
    for q in 0..n {
        if !augment(q, &order, &mut owner, &mut vec![false; n]) {
            return None;
        }
    }
    let mut images = vec![0; n];
    for (p, o) in owner.iter().enumerate() {
        images[o.expect("perfect")] = p;
    }
    Some(images)
}

/// Basis of `{ r : Z(r) is a stabilizer with sign +1 }`.
fn plus_z_stabilizers(code: &StabilizerCode) -> Vec<BitVector> {
    let n = code.n();
    let gens = code.independent_generators();
    if gens.is_empty() {
        return Vec::new();
    }
    let gx = BitMatrix::from_rows(n, gens.iter().map(|g| g.x().clone()).collect());
    let mut signed: Vec<(BitVector, bool)> = gx
        .transpose()
        .kernel()
        .into_iter()
        .map(|c| {
            let mut acc = PhasedPauli::identity(n);
            for j in c.ones_iter() {
                acc = acc.multiply(&gens[j]);
            }
            debug_assert!(acc.x().is_zero());
            (acc.z().clone(), acc.phase() == 2)
        })
        .collect();
    // Fold the sign functional into one negative element and drop it.
    if let Some(neg) = signed.iter().position(|(_, s)| *s) {
        let (r0, _) = signed.remove(neg);
        for (r, s) in &mut signed {
            if *s {
                r.xor_assign(&r0);
                *s = false;
            }
        }
    }
    signed.into_iter().map(|(r, _)| r).collect()
}

fn in_span(basis: &[BitVector], v: &BitVector) -> bool {
    v.is_zero() || (!basis.is_empty() && BitMatrix::from_rows(v.len(), basis.to_vec()).solve_in_span(v).is_ok())
}

/// Picks `forms[p] + r_p` (`r_p` in the span of `plus_z`) so that the chosen
/// forms are independent, preferring low weight.
fn choose_representatives(forms: &[BitVector], plus_z: &[BitVector]) -> Option<Vec<BitVector>> {
    const MAX_SHIFTS: usize = 1 << 12;
    let shifts: Vec<BitVector> = (0..(1usize << plus_z.len()).min(MAX_SHIFTS))
        .map(|mask| {
            let mut r = BitVector::zeros(forms[0].len());
            for (i, b) in plus_z.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    r.xor_assign(b);
                }
            }
            r
        })
        .collect();
    let mut chosen: Vec<BitVector> = Vec::with_capacity(forms.len());
    for f in forms {
        let mut candidates: Vec<BitVector> = shifts.iter().map(|r| f.xor(r)).collect();
        candidates.sort_by_key(|c| (c != f, c.weight()));
        let pick = candidates.into_iter().find(|c| !c.is_zero() && !in_span(&chosen, c))?;
        chosen.push(pick);
    }
    Some(chosen)
}

/// Compares `out` with `E_V · circ · E_V` on stabilizers and logicals of the
/// original code, modulo stabilizers, ignoring signs.
fn agrees_with_conjugation(e: &EmbeddedCode, circ: &CliffordCircuit, out: &CliffordCircuit) -> bool {
    let (n, m) = (e.spec.n, e.spec.m());
    let ev = e.spec.embedding_circuit();
    let conj = ev.then(circ).then(&ev);
    let t = e.base.tableau();
    let stab = BitMatrix::from_rows(2 * n, t.stabilizers().iter().map(PhasedPauli::symplectic).collect());
    let rows = t.stabilizers().iter().chain(t.logical_x()).chain(t.logical_z());
    rows.into_iter().all(|g| {
        let lifted = PhasedPauli::new(0, g.x().concat(&BitVector::zeros(m)), g.z().concat(&BitVector::zeros(m)));
        let img = conj.conjugate(&lifted);
        if !img.x().slice(n..n + m).is_zero() {
            return false;
        }
        let projected = img.x().slice(0..n).concat(&img.z().slice(0..n));
        let direct = out.conjugate(g).symplectic();
        let diff = projected.xor(&direct);
        diff.is_zero() || stab.solve_in_span(&diff).is_ok()
    })
}

#[derive(Debug, Clone)]
pub struct EmbeddedGate {
    /// Circuit on the original qubits, before the Pauli correction.
    pub circuit: CliffordCircuit,
    pub report: LogicalReport,
    pub two_qubit_gates: usize,
}

impl EmbeddedGate {
    pub fn corrected_circuit(&self) -> CliffordCircuit {
        self.report.corrected(&self.circuit)
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddedDiscovery {
    pub embedded: EmbeddedCode,
    pub gates: Vec<EmbeddedGate>,
    /// Embedded generators that do not translate, with the reason.
    pub rejected: Vec<(usize, InvalidReason)>,
    pub complete: bool,
}

/// Discovery on the original code and on the embedded code, with embedded
/// generators translated back and re-verified on the original code.
pub fn discover_embedded_gates(
    code: &StabilizerCode,
    spec: &EmbeddingSpec,
    opts: &DiscoveryOptions,
) -> Result<EmbeddedDiscovery, EmbeddingError> {
    let e = embed(code, spec)?;
    let base = discover_gates(code, opts)?;
    let mut complete = base.automorphisms.complete;
    let mut gates = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |circuit: CliffordCircuit, gates: &mut Vec<EmbeddedGate>| -> Result<(), EmbeddingError> {
        if !seen.insert(circuit.gates().to_vec()) {
            return Ok(());
        }
        let report = pauli_correct_and_action(code.tableau(), &circuit)?;
        if !verify_preserves_stabilizers(code.tableau(), &report.corrected(&circuit)) {
            return Err(EmbeddingError::Invalid(InvalidReason::ConjugationMismatch));
        }
        let two_qubit_gates = circuit.entangling_count();
        gates.push(EmbeddedGate { circuit, report, two_qubit_gates });
        Ok(())
    };
    for g in base.gates {
        push(g.circuit, &mut gates)?;
    }
    let mut rejected = Vec::new();
    if spec.m() > 0 {
        let disc = discover_gates(&e.code, opts)?;
        complete &= disc.automorphisms.complete;
        for (i, g) in disc.gates.iter().enumerate() {
            match interpret(&e, &g.circuit) {
                Ok(c) => push(c, &mut gates)?,
                Err(EmbeddingError::Invalid(r)) => rejected.push((i, r)),
                Err(err) => return Err(err),
            }
        }
    }
    Ok(EmbeddedDiscovery { embedded: e, gates, rejected, complete })
}
