//! Fixtures shared by the benchmarks.

use autgates::{BitMatrix, BitVector, CliffordCircuit, Gate, StabilizerCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn five_qubit_code() -> StabilizerCode {
    StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap()
}

pub fn four_qubit_code() -> StabilizerCode {
    StabilizerCode::from_strings(&["XXXX", "ZZZZ"]).unwrap()
}

/// Toric code on an L×L torus, 2L² qubits.
pub fn toric_code(l: usize) -> StabilizerCode {
    let n = 2 * l * l;
    let h = |r: usize, c: usize| (r % l) * l + (c % l);
    let v = |r: usize, c: usize| l * l + (r % l) * l + (c % l);
    let mut checks = Vec::new();
    for r in 0..l {
        for c in 0..l {
            let mut x = vec!['I'; n];
            for q in [h(r, c), h(r, c + l - 1), v(r, c), v(r + l - 1, c)] {
                x[q] = 'X';
            }
            let mut z = vec!['I'; n];
            for q in [h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)] {
                z[q] = 'Z';
            }
            checks.push(x.into_iter().collect::<String>());
            checks.push(z.into_iter().collect::<String>());
        }
    }
    StabilizerCode::from_strings(&checks).unwrap()
}

pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..rows).map(|_| BitVector::from_bools((0..cols).map(|_| rng.gen_bool(0.5)))).collect();
    BitMatrix::from_rows(cols, rows)
}

/// Random Clifford circuit on `n` qubits.
pub fn random_circuit(seed: u64, n: usize, len: usize) -> CliffordCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = CliffordCircuit::new(n);
    for _ in 0..len {
        let g = match rng.gen_range(0..3) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::S(rng.gen_range(0..n)),
            _ => {
                let a = rng.gen_range(0..n);
                Gate::Cnot(a, (a + rng.gen_range(1..n)) % n)
            }
        };
        c.push(g).unwrap();
    }
    c
}
