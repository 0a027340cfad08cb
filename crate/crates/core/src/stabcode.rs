//! Stabilizer codes, their standard form, logical operators and tableau.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliError, PhasedPauli};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("checks {0} and {1} anticommute")]
    NonCommuting(usize, usize),
    #[error("check {0} is not Hermitian (phase must give a +1 or -1 sign)")]
    NonHermitian(usize),
    #[error("check {index} has length {got}, expected {expected}")]
    LengthMismatch { index: usize, expected: usize, got: usize },
    #[error("the signed checks generate -I")]
    InconsistentSigns,
    #[error("line {line}: {source}")]
    Pauli { line: usize, source: PauliError },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("code file contains no checks and no qubit count")]
    Empty,
}

/// A stabilizer code given by a (possibly over-complete) list of signed checks.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    n: usize,
    checks: Vec<PhasedPauli>,
    standard: StandardForm,
    tableau: Tableau,
}

impl StabilizerCode {
    pub fn new(n: usize, checks: Vec<PhasedPauli>) -> Result<Self, CodeError> {
        for (i, c) in checks.iter().enumerate() {
            if c.n() != n {
                return Err(CodeError::LengthMismatch { index: i, expected: n, got: c.n() });
            }
            if !c.is_hermitian() {
                return Err(CodeError::NonHermitian(i));
            }
        }
        for i in 0..checks.len() {
            for j in i + 1..checks.len() {
                if !checks[i].commutes(&checks[j]) {
                    return Err(CodeError::NonCommuting(i, j));
                }
            }
        }
        let standard = StandardForm::compute(n, &checks)?;
        let tableau = Tableau::from_standard_form(&standard);
        Ok(Self { n, checks, standard, tableau })
    }

    /// Parses Pauli strings such as `["XZZXI", "-IXZZX"]`.
    pub fn from_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self, CodeError> {
        let checks: Vec<PhasedPauli> = strings
            .iter()
            .enumerate()
            .map(|(i, s)| {
                PhasedPauli::parse(s.as_ref()).map_err(|e| CodeError::Pauli { line: i + 1, source: e })
            })
            .collect::<Result<_, _>>()?;
        let n = checks.first().map(PhasedPauli::n).ok_or(CodeError::Empty)?;
        Self::new(n, checks)
    }

    /// Parses the text code format: one Pauli string per line, `#` comments,
    /// and an optional leading `n=<int>` line.
    pub fn parse_text(text: &str) -> Result<Self, CodeError> {
        let mut declared: Option<usize> = None;
        let mut checks = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
                if declared.is_some() || !checks.is_empty() {
                    return Err(CodeError::Syntax {
                        line: lineno + 1,
                        msg: "qubit count must come before the checks".into(),
                    });
                }
                let n = rest.trim().parse::<usize>().map_err(|_| CodeError::Syntax {
                    line: lineno + 1,
                    msg: format!("bad qubit count {:?}", rest.trim()),
                })?;
                declared = Some(n);
                continue;
            }
            let p = PhasedPauli::parse(line)
                .map_err(|e| CodeError::Pauli { line: lineno + 1, source: e })?;
            checks.push(p);
        }
        let n = match (declared, checks.first()) {
            (Some(n), _) => n,
            (None, Some(c)) => c.n(),
            (None, None) => return Err(CodeError::Empty),
        };
        Self::new(n, checks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.standard.k
    }

    pub fn checks(&self) -> &[PhasedPauli] {
        &self.checks
    }

    pub fn rank(&self) -> usize {
        self.standard.r + self.standard.s
    }

    /// `[G_X | G_Z]` of the checks as given.
    pub fn check_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(2 * self.n, self.checks.iter().map(PhasedPauli::symplectic).collect())
    }

    pub fn x_part(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.checks.iter().map(|c| c.x().clone()).collect())
    }

    pub fn z_part(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, self.checks.iter().map(|c| c.z().clone()).collect())
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.standard
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    /// Independent signed generators (standard-form rows) in original qubit order.
    pub fn independent_generators(&self) -> &[PhasedPauli] {
        self.tableau.stabilizers()
    }

    /// All `2^rank` elements of the stabilizer group with their signs, in Gray-code-free
    /// binary order of the generator subsets.
    pub fn all_elements(&self) -> Vec<PhasedPauli> {
        let gens = self.independent_generators();
        let mut out = Vec::with_capacity(1usize << gens.len());
        for mask in 0u64..(1u64 << gens.len()) {
            let mut acc = PhasedPauli::identity(self.n);
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.multiply(g);
                }
            }
            out.push(acc);
        }
        out
    }
}

/// Standard form of a check matrix, after permuting qubits so that X pivots
/// come first and Z pivots second:
///
/// ```text
/// [ I  A1 A2 | B 0 C1 ]   r rows
/// [ 0  0  0  | D I C2 ]   s rows
/// ```
#[derive(Debug, Clone)]
pub struct StandardForm {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub k: usize,
    /// `qubit_perm[j]` is the original qubit placed at position `j`.
    pub qubit_perm: Vec<usize>,
    /// Standard-form rows in the permuted frame, with signs.
    pub rows_permuted: Vec<PhasedPauli>,
    /// The same rows expressed on the original qubits.
    pub rows: Vec<PhasedPauli>,
    pub a1: BitMatrix,
    pub a2: BitMatrix,
    pub b: BitMatrix,
    pub c1: BitMatrix,
    pub c2: BitMatrix,
    pub d: BitMatrix,
}

fn eliminate(rows: &mut [PhasedPauli], start: usize, columns: &[usize], use_x: bool) -> Vec<usize> {
    // Returns the pivot columns; rows[start..start+len] become the pivot rows.
    let mut pivots = Vec::new();
    let mut next = start;
    for &c in columns {
        let bit = |p: &PhasedPauli| if use_x { p.x().get(c) } else { p.z().get(c) };
        let Some(pos) = (next..rows.len()).find(|&i| bit(&rows[i])) else {
            continue;
        };
        rows.swap(next, pos);
        let pivot = rows[next].clone();
        for i in 0..rows.len() {
            if i != next && bit(&rows[i]) {
                rows[i] = rows[i].multiply(&pivot);
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

impl StandardForm {
    pub fn compute(n: usize, checks: &[PhasedPauli]) -> Result<Self, CodeError> {
        let mut rows: Vec<PhasedPauli> = checks.to_vec();
        let all: Vec<usize> = (0..n).collect();
        let x_piv = eliminate(&mut rows, 0, &all, true);
        let r = x_piv.len();
        let rest_cols: Vec<usize> = all.iter().copied().filter(|c| !x_piv.contains(c)).collect();
        // Z elimination only picks pivots among rows with no X part, but clears
        // the pivot bit from every row.
        let mut z_piv = Vec::new();
        {
            let mut next = r;
            for &c in &rest_cols {
                let Some(pos) = (next..rows.len()).find(|&i| rows[i].z().get(c)) else {
                    continue;
                };
                rows.swap(next, pos);
                let pivot = rows[next].clone();
                for i in 0..rows.len() {
                    if i != next && rows[i].z().get(c) {
                        rows[i] = rows[i].multiply(&pivot);
                    }
                }
                z_piv.push(c);
                next += 1;
                if next == rows.len() {
                    break;
                }
            }
        }
        let s = z_piv.len();
        for extra in &rows[r + s..] {
            debug_assert!(extra.is_identity());
            if extra.phase() != 0 {
                return Err(CodeError::InconsistentSigns);
            }
        }
        rows.truncate(r + s);

        let free: Vec<usize> = rest_cols.iter().copied().filter(|c| !z_piv.contains(c)).collect();
        let k = free.len();
        let mut qubit_perm = x_piv.clone();
        qubit_perm.extend(&z_piv);
        qubit_perm.extend(&free);
        // position_of[original] = position in the permuted frame
        let mut position_of = vec![0; n];
        for (j, &q) in qubit_perm.iter().enumerate() {
            position_of[q] = j;
        }
        let rows_permuted: Vec<PhasedPauli> = rows
            .iter()
            .map(|p| PhasedPauli::new(p.phase(), p.x().permuted(&position_of), p.z().permuted(&position_of)))
            .collect();

        let xm = BitMatrix::from_rows(n, rows_permuted.iter().map(|p| p.x().clone()).collect());
        let zm = BitMatrix::from_rows(n, rows_permuted.iter().map(|p| p.z().clone()).collect());
        let (top, bot) = (0..r, r..r + s);
        let (c0, c1r, c2r) = (0..r, r..r + s, r + s..n);
        Ok(Self {
            n,
            r,
            s,
            k,
            a1: xm.submatrix(top.clone(), c1r.clone()),
            a2: xm.submatrix(top.clone(), c2r.clone()),
            b: zm.submatrix(top.clone(), c0.clone()),
            c1: zm.submatrix(top, c2r.clone()),
            d: zm.submatrix(bot.clone(), c0),
            c2: zm.submatrix(bot, c2r),
            qubit_perm,
            rows_permuted,
            rows,
        })
    }

    /// `G_std` in the permuted frame, as `[X | Z]`.
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(2 * self.n, self.rows_permuted.iter().map(PhasedPauli::symplectic).collect())
    }

    fn assemble(&self, x_blocks: [&BitMatrix; 3], z_blocks: [&BitMatrix; 3]) -> Vec<BitVector> {
        let x = x_blocks[0].hstack(x_blocks[1]).hstack(x_blocks[2]);
        let z = z_blocks[0].hstack(z_blocks[1]).hstack(z_blocks[2]);
        x.hstack(&z).into_rows()
    }

    /// Logical X and Z operators `(L_X, L_Z)` in the permuted frame.
    pub fn logical_paulis_permuted(&self) -> (BitMatrix, BitMatrix) {
        let (r, s, k) = (self.r, self.s, self.k);
        let z = BitMatrix::zeros;
        let id = BitMatrix::identity;
        let lx = self.assemble(
            [&z(k, r), &self.c2.transpose(), &id(k)],
            [&self.c1.transpose(), &z(k, s), &z(k, k)],
        );
        let lz = self.assemble([&z(k, r), &z(k, s), &z(k, k)], [&self.a2.transpose(), &z(k, s), &id(k)]);
        (BitMatrix::from_rows(2 * self.n, lx), BitMatrix::from_rows(2 * self.n, lz))
    }

    /// Destabilizers `R` in the permuted frame.
    pub fn destabilizers_permuted(&self) -> BitMatrix {
        let (r, s, k) = (self.r, self.s, self.k);
        let z = BitMatrix::zeros;
        let id = BitMatrix::identity;
        let mut rows = self.assemble([&z(r, r), &z(r, s), &z(r, k)], [&id(r), &z(r, s), &z(r, k)]);
        rows.extend(self.assemble([&z(s, r), &id(s), &z(s, k)], [&z(s, r), &z(s, s), &z(s, k)]));
        BitMatrix::from_rows(2 * self.n, rows)
    }

    /// Maps a `(x | z)` vector from the permuted frame to original qubits.
    pub fn to_original(&self, v: &BitVector) -> BitVector {
        let n = self.n;
        let x = v.slice(0..n).permuted(&self.qubit_perm);
        let z = v.slice(n..2 * n).permuted(&self.qubit_perm);
        x.concat(&z)
    }

    pub fn logical_paulis(&self) -> (BitMatrix, BitMatrix) {
        let (lx, lz) = self.logical_paulis_permuted();
        (self.map_rows(&lx), self.map_rows(&lz))
    }

    pub fn destabilizers(&self) -> BitMatrix {
        self.map_rows(&self.destabilizers_permuted())
    }

    fn map_rows(&self, m: &BitMatrix) -> BitMatrix {
        BitMatrix::from_rows(m.num_cols(), m.rows().iter().map(|v| self.to_original(v)).collect())
    }
}

/// Stabilizers, X logicals, destabilizers and Z logicals stacked as a
/// symplectic matrix, each row carrying an exact phase.
#[derive(Debug, Clone)]
pub struct Tableau {
    n: usize,
    k: usize,
    rows: Vec<PhasedPauli>,
}

impl Tableau {
    pub fn from_standard_form(sf: &StandardForm) -> Self {
        let n = sf.n;
        let m = sf.r + sf.s;
        let (lx, lz) = sf.logical_paulis();
        let dest = sf.destabilizers();
        let mut rows: Vec<PhasedPauli> = sf.rows.clone();
        let unsigned = |v: &BitVector| PhasedPauli::from_symplectic(0, v);
        rows.extend(lx.rows().iter().map(unsigned));
        rows.extend(dest.rows().iter().map(unsigned));
        rows.extend(lz.rows().iter().map(unsigned));
        debug_assert_eq!(rows.len(), 2 * n);
        debug_assert_eq!(m + sf.k, n);
        Self { n, k: sf.k, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of independent stabilizers, `n - k`.
    pub fn m(&self) -> usize {
        self.n - self.k
    }

    pub fn rows(&self) -> &[PhasedPauli] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PhasedPauli {
        &self.rows[i]
    }

    pub fn stabilizers(&self) -> &[PhasedPauli] {
        &self.rows[..self.m()]
    }

    pub fn logical_x(&self) -> &[PhasedPauli] {
        &self.rows[self.m()..self.n]
    }

    pub fn destabilizer_rows(&self) -> &[PhasedPauli] {
        &self.rows[self.n..self.n + self.m()]
    }

    pub fn logical_z(&self) -> &[PhasedPauli] {
        &self.rows[self.n + self.m()..]
    }

    pub fn phases(&self) -> Vec<u8> {
        self.rows.iter().map(PhasedPauli::phase).collect()
    }

    /// The binary matrix τ.
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(2 * self.n, self.rows.iter().map(PhasedPauli::symplectic).collect())
    }

    /// τ⁻¹ = Ω τᵀ Ω.
    pub fn inverse_matrix(&self) -> BitMatrix {
        let omega = BitMatrix::symplectic_form(self.n);
        omega.mul(&self.matrix().transpose()).mul(&omega)
    }

    /// Coordinates `b = v Ω τᵀ Ω`, so that `b τ = v`, laid out as `(g | a_X | r | a_Z)`.
    pub fn coordinates(&self, v: &BitVector) -> BitVector {
        // b_i = <v, row_{i±n}>, the symplectic product with the paired row.
        let n = self.n;
        BitVector::from_bools((0..2 * n).map(|i| {
            let partner = &self.rows[(i + n) % (2 * n)];
            crate::gf2::symplectic_product(v, &partner.symplectic())
        }))
    }

    /// Product of the rows selected by `b`, taken in row order.
    pub fn product(&self, b: &BitVector) -> PhasedPauli {
        let mut acc = PhasedPauli::identity(self.n);
        for i in b.ones_iter() {
            acc = acc.multiply(&self.rows[i]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> StabilizerCode {
        StabilizerCode::from_strings(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap()
    }

    #[test]
    fn five_qubit_standard_form_entries() {
        let c = five();
        let sf = c.standard_form();
        assert_eq!((sf.r, sf.s, sf.k), (4, 0, 1));
        assert_eq!(sf.qubit_perm, vec![0, 1, 2, 3, 4]);
        let want = BitMatrix::parse01(&["10001 11011", "01001 00110", "00101 11000", "00011 10111"]).unwrap();
        assert_eq!(sf.matrix(), want);
        let (lx, lz) = sf.logical_paulis();
        assert_eq!(lx, BitMatrix::parse01(&["00001 10010"]).unwrap());
        assert_eq!(lz, BitMatrix::parse01(&["00000 11111"]).unwrap());
    }

    #[test]
    fn single_z_code() {
        let c = StabilizerCode::from_strings(&["Z"]).unwrap();
        let sf = c.standard_form();
        assert_eq!((sf.r, sf.s, sf.k), (0, 1, 0));
        assert_eq!(sf.matrix(), BitMatrix::parse01(&["0 1"]).unwrap());
        assert_eq!(c.tableau().matrix(), BitMatrix::parse01(&["01", "10"]).unwrap());
    }

    #[test]
    fn four_two_two_counts() {
        let c = StabilizerCode::from_strings(&["XXXX", "ZZZZ"]).unwrap();
        let sf = c.standard_form();
        assert_eq!((sf.r, sf.s, sf.k), (1, 1, 2));
        assert!(c.tableau().matrix().is_symplectic().unwrap());
    }

    #[test]
    fn tableau_inverse() {
        for c in [five(), StabilizerCode::from_strings(&["XXXX", "ZZZZ"]).unwrap()] {
            let t = c.tableau();
            let n = c.n();
            assert_eq!(t.matrix().mul(&t.inverse_matrix()), BitMatrix::identity(2 * n));
            let v = BitVector::parse01("1011001101").unwrap();
            if n == 5 {
                let b = t.coordinates(&v);
                assert_eq!(t.matrix().left_mul_vec(&b), v);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(StabilizerCode::from_strings(&["X", "Z"]), Err(CodeError::NonCommuting(0, 1))));
        assert!(matches!(StabilizerCode::from_strings(&["iX"]), Err(CodeError::NonHermitian(0))));
        assert!(matches!(
            StabilizerCode::from_strings(&["ZZ", "-ZZ"]),
            Err(CodeError::InconsistentSigns)
        ));
        assert!(matches!(StabilizerCode::parse_text("# nothing\n"), Err(CodeError::Empty)));
    }

    #[test]
    fn parse_text_with_header() {
        let c = StabilizerCode::parse_text("# code\nn=4\nXXXX\nZZZZ # second\n").unwrap();
        assert_eq!((c.n(), c.k()), (4, 2));
        let empty = StabilizerCode::parse_text("n=2\n").unwrap();
        assert_eq!((empty.n(), empty.k()), (2, 2));
    }
}
