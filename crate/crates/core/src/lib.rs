//! Discovery of logical Clifford gates of stabilizer codes through automorphisms
//! of binary representations of their check matrices.

pub mod autengine;
pub mod binrep;
pub mod circdecomp;
pub mod circuit;
pub mod cliffordmap;
pub mod embedded;
pub mod gf2;
pub mod logsearch;
pub mod pauli;
pub mod perm;
pub mod pipeline;
pub mod stabcode;

pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use pauli::{PauliError, PhasedPauli};
pub use stabcode::{CodeError, StabilizerCode, StandardForm, Tableau};
pub use perm::{Letter, PermError, PermGroup, Permutation, Word};
pub use autengine::{matrix_automorphisms, AutomorphismResult, SearchBudget};
pub use binrep::{BinRepError, BlockRep, RepKind, RowSource};
pub use circuit::{CircuitError, CliffordCircuit, Gate};
pub use cliffordmap::{pauli_correct_and_action, perm_to_circuit, perm_to_symplectic, verify_preserves_stabilizers, CliffordMapError, LogicalReport};
pub use pipeline::{discover_gates, DiscoveredGate, Discovery, DiscoveryError, DiscoveryOptions};
pub use circdecomp::{decompose, DecompositionError, LayeredDecomposition};
pub use embedded::{discover_embedded_gates, embed, interpret, EmbeddedCode, EmbeddedDiscovery, EmbeddedGate, EmbeddingError, EmbeddingSpec, InvalidReason};
pub use logsearch::{action_group_order, circuit_cost, parse_target, LogSearchError, LogicalActionGroup, Synthesis};
