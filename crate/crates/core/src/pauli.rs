//! Pauli operators with exact phases.
//!
//! `PhasedPauli { phase: p, x, z }` stands for `i^p X(x) Z(z)`, with every X
//! factor written to the left of every Z factor.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::BitVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("Pauli length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("bad character {ch:?} in Pauli string {input:?}")]
    BadCharacter { input: String, ch: char },
    #[error("empty Pauli string")]
    Empty,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    phase: u8,
    x: BitVector,
    z: BitVector,
}

impl PhasedPauli {
    pub fn new(phase: u8, x: BitVector, z: BitVector) -> Self {
        assert_eq!(x.len(), z.len(), "x/z length mismatch");
        Self { phase: phase % 4, x, z }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(0, BitVector::zeros(n), BitVector::zeros(n))
    }

    /// Splits a `(x | z)` vector of length `2n` into an unsigned Pauli.
    pub fn from_symplectic(phase: u8, v: &BitVector) -> Self {
        assert!(v.len().is_multiple_of(2));
        let n = v.len() / 2;
        Self::new(phase, v.slice(0..n), v.slice(n..2 * n))
    }

    pub fn single(n: usize, qubit: usize, kind: char) -> Self {
        let mut p = Self::identity(n);
        match kind {
            'X' => p.x.set(qubit, true),
            'Z' => p.z.set(qubit, true),
            'Y' => {
                p.x.set(qubit, true);
                p.z.set(qubit, true);
                p.phase = 1;
            }
            _ => {}
        }
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn x_mut(&mut self) -> &mut BitVector {
        &mut self.x
    }

    pub fn z_mut(&mut self) -> &mut BitVector {
        &mut self.z
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase % 4;
    }

    pub fn add_phase(&mut self, delta: u8) {
        self.phase = (self.phase + delta) % 4;
    }

    /// The `(x | z)` vector.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.x.weight() + self.z.weight() - self.x.overlap(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of Y positions, i.e. `x·z` over the integers.
    pub fn y_count(&self) -> usize {
        self.x.overlap(&self.z)
    }

    /// Hermitian operators are those with `p - x·z ≡ 0 (mod 2)`.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + 4 * self.n() - self.y_count()) % 2 == 0
    }

    /// For a Hermitian operator, the overall sign written in terms of `X`, `Y`, `Z`
    /// letters: `false` for `+`, `true` for `-`.
    pub fn hermitian_sign(&self) -> Option<bool> {
        if !self.is_hermitian() {
            return None;
        }
        let q = (self.phase as usize + 4 * self.n() - self.y_count() % 4) % 4;
        Some(q == 2)
    }

    pub fn try_multiply(&self, other: &Self) -> Result<Self, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::LengthMismatch(self.n(), other.n()));
        }
        Ok(self.multiply(other))
    }

    /// Operator product `self · other`. Panics on length mismatch.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "Pauli length mismatch");
        // Z(z_P) X(x_Q) = (-1)^{z_P·x_Q} X(x_Q) Z(z_P)
        let swap = if self.z.dot(&other.x) { 2 } else { 0 };
        Self {
            phase: (self.phase + other.phase + swap) % 4,
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn try_commutes(&self, other: &Self) -> Result<bool, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::LengthMismatch(self.n(), other.n()));
        }
        Ok(self.commutes(other))
    }

    pub fn commutes(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n(), "Pauli length mismatch");
        self.z.dot(&other.x) == self.x.dot(&other.z)
    }

    pub fn inverse(&self) -> Self {
        let xz = if self.x.dot(&self.z) { 2 } else { 0 };
        Self { phase: (8 - self.phase - xz) % 4, x: self.x.clone(), z: self.z.clone() }
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            phase: (self.phase + other.phase) % 4,
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
        }
    }

    /// Letter string without sign, e.g. `XZZXI`.
    pub fn letters(&self) -> String {
        (0..self.n())
            .map(|i| match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self, PauliError> {
        let t = s.trim();
        let (prefix, body) = if let Some(rest) = t.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = t.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest)
        } else {
            (0, t)
        };
        if body.is_empty() {
            return Err(PauliError::Empty);
        }
        let n = body.chars().count();
        let mut p = Self::identity(n);
        p.phase = prefix;
        for (i, ch) in body.chars().enumerate() {
            match ch {
                'I' => {}
                'X' => p.x.set(i, true),
                'Z' => p.z.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true);
                    p.phase = (p.phase + 1) % 4;
                }
                _ => return Err(PauliError::BadCharacter { input: s.to_string(), ch }),
            }
        }
        Ok(p)
    }
}

impl FromStr for PhasedPauli {
    type Err = PauliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Written with `X`, `Y`, `Z` letters and a sign prefix, so that parsing the
/// output reproduces the same operator.
impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = (self.phase as usize + 4 * self.n() - self.y_count() % 4) % 4;
        let prefix = ["+", "+i", "-", "-i"][q];
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PhasedPauli {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_normal_ordered() {
        let xz = p("X").multiply(&p("Z"));
        assert_eq!((xz.phase(), xz.x().get(0), xz.z().get(0)), (0, true, true));
        let zx = p("Z").multiply(&p("X"));
        assert_eq!((zx.phase(), zx.x().get(0), zx.z().get(0)), (2, true, true));
    }

    #[test]
    fn parse_examples() {
        let a = p("XZZXI");
        assert_eq!(a.phase(), 0);
        assert_eq!(a.x().to_string01(), "10010");
        assert_eq!(a.z().to_string01(), "01100");
        let y = p("Y");
        assert_eq!((y.phase(), y.x().get(0), y.z().get(0)), (1, true, true));
        let m = p("-IZ");
        assert_eq!((m.phase(), m.x().to_string01(), m.z().to_string01()), (2, "00".into(), "01".into()));
        assert!(matches!(PhasedPauli::parse("XQ"), Err(PauliError::BadCharacter { ch: 'Q', .. })));
    }

    #[test]
    fn five_qubit_generators_commute() {
        let gens: Vec<_> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].iter().map(|s| p(s)).collect();
        for a in &gens {
            for b in &gens {
                assert!(a.commutes(b));
            }
        }
        let prod = gens[0].multiply(&gens[1]);
        assert!(prod.commutes(&gens[0]) && prod.commutes(&gens[1]));
    }

    #[test]
    fn x_and_z_anticommute() {
        assert!(!p("X").commutes(&p("Z")));
        assert!(p("Y").commutes(&p("Y")));
    }

    #[test]
    fn y_is_hermitian_with_plus_sign() {
        assert_eq!(p("Y").hermitian_sign(), Some(false));
        assert_eq!(p("-Y").hermitian_sign(), Some(true));
        assert_eq!(p("iX").hermitian_sign(), None);
        assert_eq!(p("YY").to_string(), "+YY");
    }

    #[test]
    fn length_mismatch_is_reported() {
        assert_eq!(p("X").try_multiply(&p("XX")), Err(PauliError::LengthMismatch(1, 2)));
    }
}
