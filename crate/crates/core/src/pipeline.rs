//! End-to-end discovery: representation, automorphisms, circuits, certification.

use thiserror::Error;

use crate::autengine::{matrix_automorphisms, AutomorphismResult, SearchBudget};
use crate::binrep::{BinRepError, BlockRep, RepKind, RowSource};
use crate::circuit::CliffordCircuit;
use crate::cliffordmap::{
    pauli_correct_and_action, perm_to_circuit, perm_to_symplectic, verify_preserves_stabilizers, CliffordMapError,
    LogicalReport,
};
use crate::gf2::BitMatrix;
use crate::perm::Permutation;
use crate::stabcode::StabilizerCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscoveryError {
    #[error(transparent)]
    Representation(#[from] BinRepError),
    #[error(transparent)]
    Mapping(#[from] CliffordMapError),
    #[error("circuit for generator {0} does not reproduce its symplectic matrix")]
    CircuitMismatch(usize),
    #[error("corrected circuit for generator {0} fails the stabilizer sign check")]
    VerificationFailed(usize),
}

#[derive(Debug, Clone)]
pub struct DiscoveredGate {
    pub permutation: Permutation,
    pub symplectic: BitMatrix,
    /// Physical circuit without the Pauli correction.
    pub circuit: CliffordCircuit,
    pub report: LogicalReport,
}

impl DiscoveredGate {
    /// Correction followed by the circuit.
    pub fn corrected_circuit(&self) -> CliffordCircuit {
        self.report.corrected(&self.circuit)
    }
}

#[derive(Debug, Clone)]
pub struct Discovery {
    pub rep: BlockRep,
    pub automorphisms: AutomorphismResult,
    pub gates: Vec<DiscoveredGate>,
}

#[derive(Debug, Clone, Copy)]
pub struct DiscoveryOptions {
    pub kind: RepKind,
    pub rows: RowSource,
    pub codeword_cap: usize,
    pub budget: SearchBudget,
}

impl Default for DiscoveryOptions {
    fn default() -> Self {
        Self {
            kind: RepKind::ThreeBlock,
            rows: RowSource::AsGiven,
            codeword_cap: crate::binrep::DEFAULT_CODEWORD_CAP,
            budget: SearchBudget::default(),
        }
    }
}

/// Turns one structured automorphism into a certified logical gate.
pub fn certify_permutation(
    code: &StabilizerCode,
    rep: &BlockRep,
    p: &Permutation,
    index: usize,
) -> Result<DiscoveredGate, DiscoveryError> {
    let symplectic = perm_to_symplectic(rep, p)?;
    let circuit = perm_to_circuit(rep, p)?;
    if circuit.symplectic() != symplectic {
        return Err(DiscoveryError::CircuitMismatch(index));
    }
    let report = pauli_correct_and_action(code.tableau(), &circuit)?;
    if !verify_preserves_stabilizers(code.tableau(), &report.corrected(&circuit)) {
        return Err(DiscoveryError::VerificationFailed(index));
    }
    Ok(DiscoveredGate { permutation: p.clone(), symplectic, circuit, report })
}

/// Finds generators of the structured automorphism group of the chosen
/// representation and certifies each one as a logical gate.
pub fn discover_gates(code: &StabilizerCode, opts: &DiscoveryOptions) -> Result<Discovery, DiscoveryError> {
    let rep = BlockRep::build(code, opts.kind);
    let (m, colors) = rep.row_augmented_matrix(code, opts.rows, opts.codeword_cap)?;
    let automorphisms = matrix_automorphisms(&m, &colors, opts.budget);
    let gates = automorphisms
        .generators
        .iter()
        .enumerate()
        .map(|(i, p)| certify_permutation(code, &rep, p, i))
        .collect::<Result<_, _>>()?;
    Ok(Discovery { rep, automorphisms, gates })
}
