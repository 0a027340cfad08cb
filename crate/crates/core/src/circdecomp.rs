//! Layered decomposition of binary symplectic matrices.
//!
//! Every symplectic `U` factors as `U_A U_B U_C U_H` with
//!
//! ```text
//! U_A = [I 0; A I]   U_B = [I B; 0 I]   U_C = [C 0; 0 C^-T]   U_H = Hadamards on h
//! ```
//!
//! for symmetric `A`, `B` and invertible `C`. As a circuit this is a layer of
//! √X and C(X,X) gates, then S and CZ, then CNOTs, then H.

use thiserror::Error;

use crate::circuit::{CliffordCircuit, Gate};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("matrix is not symplectic")]
    NotSymplectic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDecomposition {
    pub h: BitVector,
    pub c: BitMatrix,
    pub b: BitMatrix,
    pub a: BitMatrix,
}

fn hadamard_layer(h: &BitVector) -> BitMatrix {
    let n = h.len();
    let mut u = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        if h.get(i) {
            u.set(i, n + i, true);
            u.set(n + i, i, true);
        } else {
            u.set(i, i, true);
            u.set(n + i, n + i, true);
        }
    }
    u
}

fn block(tl: &BitMatrix, tr: &BitMatrix, bl: &BitMatrix, br: &BitMatrix) -> BitMatrix {
    tl.hstack(tr).vstack(&bl.hstack(br))
}

impl LayeredDecomposition {
    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn u_a(&self) -> BitMatrix {
        let n = self.n();
        block(&BitMatrix::identity(n), &BitMatrix::zeros(n, n), &self.a, &BitMatrix::identity(n))
    }

    pub fn u_b(&self) -> BitMatrix {
        let n = self.n();
        block(&BitMatrix::identity(n), &self.b, &BitMatrix::zeros(n, n), &BitMatrix::identity(n))
    }

    pub fn u_c(&self) -> BitMatrix {
        let n = self.n();
        let c_inv_t = self.c.invert().expect("C is invertible").transpose();
        block(&self.c, &BitMatrix::zeros(n, n), &BitMatrix::zeros(n, n), &c_inv_t)
    }

    pub fn u_h(&self) -> BitMatrix {
        hadamard_layer(&self.h)
    }

    /// `U_A U_B U_C U_H`.
    pub fn product(&self) -> BitMatrix {
        self.u_a().mul(&self.u_b()).mul(&self.u_c()).mul(&self.u_h())
    }

    /// Gates in time order: √X/C(X,X), S/CZ, CNOT network, H.
    pub fn to_circuit(&self) -> CliffordCircuit {
        let n = self.n();
        let mut gates = Vec::new();
        for i in 0..n {
            if self.a.get(i, i) {
                gates.push(Gate::SqrtX(i));
            }
            for j in i + 1..n {
                if self.a.get(i, j) {
                    gates.push(Gate::Cxx(i, j));
                }
            }
        }
        for i in 0..n {
            if self.b.get(i, i) {
                gates.push(Gate::S(i));
            }
            for j in i + 1..n {
                if self.b.get(i, j) {
                    gates.push(Gate::Cz(i, j));
                }
            }
        }
        gates.extend(cnot_network(&self.c));
        gates.extend(self.h.ones_iter().map(Gate::H));
        CliffordCircuit::from_gates(n, gates).expect("indices in range")
    }
}

/// CNOTs whose product has linear part `C` (`X_c` picks up `X_t` for `CNOT(c, t)`).
pub fn cnot_network(c: &BitMatrix) -> Vec<Gate> {
    // Reduce C to I by row operations `row c += row t`; C is the product of the
    // corresponding elementary matrices in the order applied.
    let n = c.num_rows();
    let mut m = c.clone();
    let mut ops = Vec::new();
    let add = |m: &mut BitMatrix, dst: usize, src: usize, ops: &mut Vec<Gate>| {
        let r = m.row(src).clone();
        m.row_mut(dst).xor_assign(&r);
        ops.push(Gate::Cnot(dst, src));
    };
    for j in 0..n {
        if !m.get(j, j) {
            let i = (j + 1..n).find(|&i| m.get(i, j)).expect("C is invertible");
            add(&mut m, j, i, &mut ops);
        }
        for i in 0..n {
            if i != j && m.get(i, j) {
                add(&mut m, i, j, &mut ops);
            }
        }
    }
    debug_assert_eq!(m, BitMatrix::identity(n));
    ops
}

pub fn decompose(u: &BitMatrix) -> Result<LayeredDecomposition, DecompositionError> {
    if !u.is_symplectic().unwrap_or(false) {
        return Err(DecompositionError::NotSymplectic);
    }
    let n = u.num_rows() / 2;
    let top = u.submatrix(0..n, 0..2 * n);
    let c0_rank = u.submatrix(0..n, 0..n).rank();
    let rr = top.rref();
    // Rows whose left half vanished carry the B2 block.
    let b2_rows: Vec<BitVector> = rr.reduced.rows()[c0_rank..].iter().map(|r| r.slice(n..2 * n)).collect();
    let b2 = BitMatrix::from_rows(n, b2_rows);
    let mut h = BitVector::zeros(n);
    for p in b2.rref().pivots {
        h.set(p, true);
    }
    let uh = u.mul(&hadamard_layer(&h));
    let c = uh.submatrix(0..n, 0..n);
    let c_inv = c.invert().map_err(|_| DecompositionError::NotSymplectic)?;
    let b = uh.submatrix(0..n, n..2 * n).mul(&c.transpose());
    let a = uh.submatrix(n..2 * n, 0..n).mul(&c_inv);
    assert!(a.is_symmetric() && b.is_symmetric(), "symplectic input yields symmetric A and B");
    let d = LayeredDecomposition { h, c, b, a };
    debug_assert_eq!(&d.product(), u);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_empty() {
        let d = decompose(&BitMatrix::identity(6)).unwrap();
        assert!(d.h.is_zero() && d.a.is_zero() && d.b.is_zero());
        assert_eq!(d.c, BitMatrix::identity(3));
        assert!(d.to_circuit().is_empty());
    }

    #[test]
    fn single_hadamard() {
        let d = decompose(&BitMatrix::parse01(&["01", "10"]).unwrap()).unwrap();
        assert_eq!(d.h.to_string01(), "1");
        assert!(d.a.is_zero() && d.b.is_zero());
    }

    #[test]
    fn single_phase_gate() {
        let d = decompose(&BitMatrix::parse01(&["11", "01"]).unwrap()).unwrap();
        assert_eq!(d.h.to_string01(), "0");
        assert_eq!(d.b, BitMatrix::parse01(&["1"]).unwrap());
        assert!(d.a.is_zero());
        assert_eq!(d.c, BitMatrix::identity(1));
    }

    #[test]
    fn phase_layer_gates() {
        let b = BitMatrix::parse01(&["11", "10"]).unwrap();
        let d = LayeredDecomposition { h: BitVector::zeros(2), c: BitMatrix::identity(2), b, a: BitMatrix::zeros(2, 2) };
        assert_eq!(d.to_circuit().gates(), &[Gate::S(0), Gate::Cz(0, 1)]);
    }

    #[test]
    fn rejects_non_symplectic() {
        assert_eq!(decompose(&BitMatrix::parse01(&["11", "11"]).unwrap()), Err(DecompositionError::NotSymplectic));
    }

    #[test]
    fn cnot_network_reproduces_matrix() {
        let c = BitMatrix::parse01(&["011", "110", "111"]).unwrap();
        let gates = cnot_network(&c);
        let circ = CliffordCircuit::from_gates(3, gates).unwrap();
        let u = circ.symplectic();
        assert_eq!(u.submatrix(0..3, 0..3), c);
    }
}
