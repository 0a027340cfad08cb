//! Binary linear-code representations of a stabilizer code.
//!
//! Each representation is `G_E = [G_X | G_Z] E` (two blocks) or
//! `[G_X | G_Z | 0] E` (three blocks) for a fixed invertible `E`, together with
//! the constraint matrix `B` whose automorphisms are the admissible column
//! permutations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PhasedPauli;
use crate::stabcode::StabilizerCode;

/// Default cap on the number of stabilizer elements enumerated for
/// [`RowSource::AllCodewords`].
pub const DEFAULT_CODEWORD_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinRepError {
    #[error("stabilizer group has 2^{rank} elements, above the cap of {cap}")]
    TooManyCodewords { rank: usize, cap: usize },
    #[error("unknown representation {0:?} (expected hswap, sswap, sqrtxswap or threeblock)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepKind {
    HSwap,
    SSwap,
    SqrtXSwap,
    ThreeBlock,
}

impl RepKind {
    pub const ALL: [RepKind; 4] = [RepKind::HSwap, RepKind::SSwap, RepKind::SqrtXSwap, RepKind::ThreeBlock];

    pub fn blocks(self) -> usize {
        match self {
            RepKind::ThreeBlock => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepKind::HSwap => "hswap",
            RepKind::SSwap => "sswap",
            RepKind::SqrtXSwap => "sqrtxswap",
            RepKind::ThreeBlock => "threeblock",
        }
    }

    /// The block matrix `E` for `n` qubits.
    pub fn transform(self, n: usize) -> BitMatrix {
        let i = BitMatrix::identity(n);
        let z = BitMatrix::zeros(n, n);
        let row = |blocks: &[&BitMatrix]| {
            blocks[1..].iter().fold(blocks[0].clone(), |acc, b| acc.hstack(b))
        };
        match self {
            RepKind::HSwap => BitMatrix::identity(2 * n),
            RepKind::SSwap => row(&[&z, &i]).vstack(&row(&[&i, &i])),
            RepKind::SqrtXSwap => row(&[&i, &i]).vstack(&row(&[&z, &i])),
            RepKind::ThreeBlock => row(&[&i, &z, &i]).vstack(&row(&[&z, &i, &i])).vstack(&row(&[&i, &i, &i])),
        }
    }

    /// Constraint generator `[I I]` or `[I I I]`.
    pub fn constraint(self, n: usize) -> BitMatrix {
        let i = BitMatrix::identity(n);
        (1..self.blocks()).fold(i.clone(), |acc, _| acc.hstack(&i))
    }

    /// Representation of a single Pauli `(x | z)`.
    pub fn represent(self, x: &BitVector, z: &BitVector) -> BitVector {
        match self {
            RepKind::HSwap => x.concat(z),
            RepKind::SSwap => z.concat(&x.xor(z)),
            RepKind::SqrtXSwap => x.concat(&x.xor(z)),
            RepKind::ThreeBlock => x.concat(z).concat(&x.xor(z)),
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepKind {
    type Err = BinRepError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hswap" => Ok(RepKind::HSwap),
            "sswap" => Ok(RepKind::SSwap),
            "sqrtxswap" => Ok(RepKind::SqrtXSwap),
            "threeblock" | "3block" => Ok(RepKind::ThreeBlock),
            _ => Err(BinRepError::UnknownKind(s.to_string())),
        }
    }
}

/// Which stabilizer elements make up the rows of the matrix whose automorphisms are searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSource {
    AsGiven,
    AllCodewords,
    StandardFormRows,
}

#[derive(Debug, Clone)]
pub struct BlockRep {
    pub kind: RepKind,
    pub n: usize,
    /// Representation of the checks as given.
    pub g_e: BitMatrix,
    pub e: BitMatrix,
    pub b: BitMatrix,
}

impl BlockRep {
    pub fn build(code: &StabilizerCode, kind: RepKind) -> Self {
        let n = code.n();
        let rows = code.checks().iter().map(|c| kind.represent(c.x(), c.z())).collect();
        Self {
            kind,
            n,
            g_e: BitMatrix::from_rows(kind.blocks() * n, rows),
            e: kind.transform(n),
            b: kind.constraint(n),
        }
    }

    pub fn width(&self) -> usize {
        self.kind.blocks() * self.n
    }

    fn rows_for(&self, paulis: &[PhasedPauli]) -> Vec<BitVector> {
        paulis.iter().map(|p| self.kind.represent(p.x(), p.z())).collect()
    }

    /// Stacks the chosen stabilizer rows (color 0) on top of the rows of `B` (color 1).
    pub fn row_augmented_matrix(
        &self,
        code: &StabilizerCode,
        source: RowSource,
        cap: usize,
    ) -> Result<(BitMatrix, Vec<u32>), BinRepError> {
        let mut rows = match source {
            RowSource::AsGiven => self.g_e.rows().to_vec(),
            RowSource::StandardFormRows => self.rows_for(code.independent_generators()),
            RowSource::AllCodewords => {
                let rank = code.rank();
                if rank >= usize::BITS as usize || (1usize << rank) > cap {
                    return Err(BinRepError::TooManyCodewords { rank, cap });
                }
                self.rows_for(&code.all_elements())
            }
        };
        let mut colors = vec![0u32; rows.len()];
        rows.extend(self.b.rows().iter().cloned());
        colors.extend(std::iter::repeat_n(1u32, self.b.num_rows()));
        Ok((BitMatrix::from_rows(self.width(), rows), colors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transforms_are_invertible() {
        for kind in RepKind::ALL {
            let e = kind.transform(3);
            assert!(e.invert().is_ok(), "{kind}");
        }
        let e3 = RepKind::ThreeBlock.transform(2);
        let inv = BitMatrix::parse01(&["001010", "000101", "100010", "010001", "101010", "010101"]).unwrap();
        assert_eq!(e3.invert().unwrap(), inv);
    }

    #[test]
    fn representation_matches_matrix_product() {
        let code = StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap();
        let g = code.check_matrix();
        for kind in RepKind::ALL {
            let rep = BlockRep::build(&code, kind);
            let padded = if kind.blocks() == 3 { g.hstack(&BitMatrix::zeros(4, 5)) } else { g.clone() };
            assert_eq!(rep.g_e, padded.mul(&rep.e), "{kind}");
        }
    }

    #[test]
    fn single_y_in_sswap() {
        let code = StabilizerCode::from_strings(&["Y"]).unwrap();
        let rep = BlockRep::build(&code, RepKind::SSwap);
        assert_eq!(rep.g_e, BitMatrix::parse01(&["10"]).unwrap());
    }

    #[test]
    fn augmented_row_counts() {
        let code = StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap();
        let rep = BlockRep::build(&code, RepKind::ThreeBlock);
        let (m, colors) = rep.row_augmented_matrix(&code, RowSource::AllCodewords, DEFAULT_CODEWORD_CAP).unwrap();
        assert_eq!((m.num_rows(), m.num_cols()), (21, 15));
        assert_eq!(colors.iter().filter(|&&c| c == 1).count(), 5);
        let err = rep.row_augmented_matrix(&code, RowSource::AllCodewords, 8).unwrap_err();
        assert_eq!(err, BinRepError::TooManyCodewords { rank: 4, cap: 8 });
        let empty = StabilizerCode::new(2, vec![]).unwrap();
        let rep = BlockRep::build(&empty, RepKind::ThreeBlock);
        let (m, _) = rep.row_augmented_matrix(&empty, RowSource::AsGiven, DEFAULT_CODEWORD_CAP).unwrap();
        assert_eq!(m, RepKind::ThreeBlock.constraint(2));
    }
}
