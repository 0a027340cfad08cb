//! Dense GF(2) vectors and matrices.
//!
//! Every row is bit-packed into `u64` words, bit `i` living in word `i / 64`
//! at position `i % 64`. Unused high bits of the last word are always zero,
//! so word-wise equality and hashing agree with logical equality.
//!
//! Row echelon forms always choose the leftmost available pivot column, which
//! makes the reduced forms (and everything derived from them) canonical.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix is singular")]
    Singular,
    #[error("symplectic check needs an even square matrix, got {rows}x{cols}")]
    DimensionOdd { rows: usize, cols: usize },
    #[error("vector is not in the row span")]
    NotInSpan,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid binary literal: {0:?}")]
    BadLiteral(String),
}

const WORD: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; word_count(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    pub fn parse01(s: &str) -> Result<Self, Gf2Error> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == '|' => {}
                _ => return Err(Gf2Error::BadLiteral(s.to_string())),
            }
        }
        Ok(Self::from_bools(bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch in and");
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Inner product modulo 2.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Number of positions where both vectors are one (not reduced mod 2).
    pub fn overlap(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let tz = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones_iter().next()
    }

    pub fn slice(&self, range: Range<usize>) -> Self {
        assert!(range.end <= self.len);
        let mut out = Self::zeros(range.len());
        for (j, i) in range.enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones_iter() {
            out.set(i, true);
        }
        for i in other.ones_iter() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Moves bit `i` to position `images[i]`.
    pub fn permuted(&self, images: &[usize]) -> Self {
        assert_eq!(images.len(), self.len);
        let mut out = Self::zeros(self.len);
        for i in self.ones_iter() {
            out.set(images[i], true);
        }
        out
    }

    pub fn to_string01(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Value of the vector as an integer (bit 0 least significant). Only for short vectors.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_string01())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string01())
    }
}

/// A dense matrix over GF(2), stored as a list of packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Output of [`BitMatrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
    /// Invertible matrix with `rowops * M == reduced`.
    pub rowops: BitMatrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        Self { cols, rows }
    }

    /// Parses rows of `0`/`1` strings. All rows must have the same length.
    pub fn parse01(rows: &[&str]) -> Result<Self, Gf2Error> {
        let parsed: Vec<BitVector> =
            rows.iter().map(|r| BitVector::parse01(r)).collect::<Result<_, _>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        for r in &parsed {
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch { expected: cols, got: r.len() });
            }
        }
        Ok(Self { cols, rows: parsed })
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut BitVector {
        &mut self.rows[r]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.num_rows() == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.num_rows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones_iter() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.num_rows(), "vector/matrix mismatch");
        let mut out = BitVector::zeros(self.cols);
        for i in v.ones_iter() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    /// Matrix times column vector: `self * v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols);
        BitVector::from_bools(self.rows.iter().map(|r| r.dot(v)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.num_rows(), "matrix product dimension mismatch");
        Self {
            cols: other.cols,
            rows: self.rows.iter().map(|r| other.left_mul_vec(r)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.num_rows(), self.cols), (other.num_rows(), other.cols));
        Self {
            cols: self.cols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.xor(b)).collect(),
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.num_rows(), other.num_rows(), "hstack row mismatch");
        Self {
            cols: self.cols + other.cols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.concat(b)).collect(),
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self { cols: self.cols, rows }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let top = self.hstack(&Self::zeros(self.num_rows(), other.cols));
        let bottom = Self::zeros(other.num_rows(), self.cols).hstack(other);
        top.vstack(&bottom)
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        Self {
            cols: cols.len(),
            rows: self.rows[rows].iter().map(|r| r.slice(cols.clone())).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self { cols: self.cols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    /// Moves column `j` to column `images[j]`.
    pub fn permute_columns(&self, images: &[usize]) -> Self {
        Self { cols: self.cols, rows: self.rows.iter().map(|r| r.permuted(images)).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Reduced row echelon form with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let m = self.num_rows();
        let mut reduced = self.clone();
        let mut rowops = Self::identity(m);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| reduced.rows[i].get(c)) else {
                continue;
            };
            reduced.rows.swap(r, p);
            rowops.rows.swap(r, p);
            let pivot_row = reduced.rows[r].clone();
            let pivot_ops = rowops.rows[r].clone();
            for i in 0..m {
                if i != r && reduced.rows[i].get(c) {
                    reduced.rows[i].xor_assign(&pivot_row);
                    rowops.rows[i].xor_assign(&pivot_ops);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced, pivots, rowops }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only.
        let mut rows = self.rows.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for row in rows.iter_mut().skip(r + 1) {
                if row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        r
    }

    pub fn invert(&self) -> Result<Self, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::DimensionMismatch { expected: self.num_rows(), got: self.cols });
        }
        let rref = self.rref();
        if rref.rank() < self.cols {
            return Err(Gf2Error::Singular);
        }
        Ok(rref.rowops)
    }

    /// The binary symplectic form `[[0, I], [I, 0]]` of size `2n`.
    pub fn symplectic_form(n: usize) -> Self {
        let mut m = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, true);
            m.set(n + i, i, true);
        }
        m
    }

    /// `U Ω Uᵀ == Ω`.
    pub fn is_symplectic(&self) -> Result<bool, Gf2Error> {
        if !self.is_square() || self.cols % 2 == 1 {
            return Err(Gf2Error::DimensionOdd { rows: self.num_rows(), cols: self.cols });
        }
        let n = self.cols / 2;
        // Row i against row j: x_i·z_j + z_i·x_j must equal Ω_ij.
        for i in 0..2 * n {
            for j in i..2 * n {
                let want = j == i + n && i < n;
                if symplectic_product(&self.rows[i], &self.rows[j]) != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Finds `g` with `g * self == v`.
    pub fn solve_in_span(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let rref = self.rref();
        // Reduce v against the pivot rows, collecting which reduced rows were used.
        let mut rest = v.clone();
        let mut coeffs = BitVector::zeros(self.num_rows());
        for (i, &p) in rref.pivots.iter().enumerate() {
            if rest.get(p) {
                rest.xor_assign(&rref.reduced.rows[i]);
                coeffs.xor_assign(&rref.rowops.rows[i]);
            }
        }
        if rest.is_zero() {
            Ok(coeffs)
        } else {
            Err(Gf2Error::NotInSpan)
        }
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per non-pivot column.
    pub fn kernel(&self) -> Vec<BitVector> {
        let rref = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut s = vec![None; self.cols];
            for (i, &p) in rref.pivots.iter().enumerate() {
                s[p] = Some(i);
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = BitVector::unit(self.cols, free);
            for (i, &p) in rref.pivots.iter().enumerate() {
                if rref.reduced.rows[i].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Independent rows spanning the same space (the non-zero rows of the RREF).
    pub fn row_basis(&self) -> Self {
        let rref = self.rref();
        let k = rref.rank();
        Self { cols: self.cols, rows: rref.reduced.rows.into_iter().take(k).collect() }
    }

    /// True when both matrices have the same row span.
    pub fn same_row_span(&self, other: &Self) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.rows.iter().map(BitVector::to_string01).collect()
    }
}

/// `x_a·z_b + z_a·x_b` for vectors laid out as `(x | z)`.
pub fn symplectic_product(a: &BitVector, b: &BitVector) -> bool {
    let n = a.len() / 2;
    debug_assert_eq!(a.len(), b.len());
    let mut acc = false;
    for i in a.ones_iter() {
        let j = if i < n { i + n } else { i - n };
        acc ^= b.get(j);
    }
    acc
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.num_rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {}", r.to_string01())?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(&r.to_string01())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse01(rows).unwrap()
    }

    fn five_qubit_checks() -> BitMatrix {
        m(&["10010 01100", "01001 00110", "10100 00011", "01010 10001"])
    }

    #[test]
    fn rref_identity() {
        let r = BitMatrix::identity(3).rref();
        assert_eq!(r.reduced, BitMatrix::identity(3));
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rowops, BitMatrix::identity(3));
    }

    #[test]
    fn rref_two_by_two() {
        let r = m(&["11", "10"]).rref();
        assert_eq!(r.reduced, BitMatrix::identity(2));
        assert_eq!(r.rowops.mul(&m(&["11", "10"])), r.reduced);
    }

    #[test]
    fn five_qubit_rank() {
        let g = five_qubit_checks();
        assert_eq!(g.rref().rank(), 4);
        assert_eq!(g.rank(), 4);
    }

    #[test]
    fn invert_small() {
        assert_eq!(BitMatrix::identity(4).invert().unwrap(), BitMatrix::identity(4));
        let a = m(&["11", "01"]);
        assert_eq!(a.invert().unwrap(), a);
        assert_eq!(m(&["11", "11"]).invert(), Err(Gf2Error::Singular));
    }

    #[test]
    fn symplectic_form_squares_to_identity() {
        assert_eq!(BitMatrix::symplectic_form(1), m(&["01", "10"]));
        assert_eq!(BitMatrix::symplectic_form(2), m(&["0010", "0001", "1000", "0100"]));
        let w = BitMatrix::symplectic_form(5);
        assert_eq!(w.mul(&w), BitMatrix::identity(10));
    }

    #[test]
    fn symplectic_checks() {
        assert!(BitMatrix::identity(6).is_symplectic().unwrap());
        assert!(m(&["11", "01"]).is_symplectic().unwrap());
        assert!(!m(&["11", "11"]).is_symplectic().unwrap());
        assert!(matches!(
            BitMatrix::identity(3).is_symplectic(),
            Err(Gf2Error::DimensionOdd { .. })
        ));
    }

    #[test]
    fn solve_simple() {
        let g = five_qubit_checks();
        assert_eq!(g.solve_in_span(g.row(0)).unwrap(), BitVector::unit(4, 0));
        let sum = g.row(0).xor(g.row(1));
        assert_eq!(g.solve_in_span(&sum).unwrap().to_string01(), "1100");
    }

    #[test]
    fn solve_all_ones_matches_enumeration() {
        let g = five_qubit_checks();
        let ones = BitVector::ones(10);
        let brute = (0u64..16).find(|&mask| {
            let coeffs = BitVector::from_u64(4, mask);
            g.left_mul_vec(&coeffs) == ones
        });
        match brute {
            Some(mask) => assert_eq!(g.solve_in_span(&ones).unwrap().to_u64(), mask),
            None => assert_eq!(g.solve_in_span(&ones), Err(Gf2Error::NotInSpan)),
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let g = five_qubit_checks();
        let ker = g.kernel();
        assert_eq!(ker.len(), 10 - 4);
        for v in ker {
            assert!(g.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn ones_iter_crosses_words() {
        let mut v = BitVector::zeros(130);
        for i in [0, 63, 64, 127, 129] {
            v.set(i, true);
        }
        assert_eq!(v.ones_iter().collect::<Vec<_>>(), vec![0, 63, 64, 127, 129]);
        assert_eq!(v.weight(), 5);
    }
}
