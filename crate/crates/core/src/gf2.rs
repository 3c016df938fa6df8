//! Dense GF(2) vectors and matrices.
//!
//! Bits are packed little-endian into `u64` words: bit `i` lives in word
//! `i / 64` at position `i % 64`. Unused high bits of the last word are
//! always zero, so word-level equality and popcount are exact.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector from 0/1 values; any non-zero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut v = Self::zeros(0);
        for b in bits {
            v.push(b);
        }
        v
    }

    /// The low `len` bits of `word`, bit `i` of the word becoming entry `i`.
    pub fn from_u64(word: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == WORD { word } else { word & ((1u64 << len) - 1) };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn push(&mut self, value: bool) {
        if self.len % WORD == 0 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        BitVector::from_bools((start..start + len).map(|i| self.get(i)))
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bools(self.iter().chain(other.iter()))
    }

    /// Lexicographic order on the bit sequence (entry 0 most significant).
    pub fn lex_cmp(&self, other: &BitVector) -> std::cmp::Ordering {
        lex_cmp_words(&self.words, &other.words).then(self.len.cmp(&other.len))
    }
}

/// Lexicographic comparison of little-endian packed bit strings of equal
/// length: the first differing bit decides, a 0 sorting first.
pub(crate) fn lex_cmp_words(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let low = diff.trailing_zeros();
            return if (x >> low) & 1 == 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            };
        }
    }
    a.len().cmp(&b.len())
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitVector {
    /// Space-separated 0/1 digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from its rows. All rows must share one length; `cols`
    /// is needed to describe a matrix with zero rows.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses rows written as 0/1 strings, e.g. `["1110", "0011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| BitVector::from_bools(r.bytes().map(|b| b == b'1')))
            .collect();
        Self::from_rows(cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| mat_vec_mul(row, other))
            .collect::<Result<Vec<_>>>()?;
        BitMatrix::from_rows(other.cols, data)
    }

    /// Keeps the rows and columns whose indices are not listed, in order.
    pub fn submatrix(&self, excluded_rows: &[usize], excluded_cols: &[usize]) -> Result<BitMatrix> {
        let row_mask = exclusion_mask(self.rows, excluded_rows)?;
        let col_mask = exclusion_mask(self.cols, excluded_cols)?;
        let kept_cols: Vec<usize> = (0..self.cols).filter(|&c| !col_mask[c]).collect();
        let data = (0..self.rows)
            .filter(|&r| !row_mask[r])
            .map(|r| BitVector::from_bools(kept_cols.iter().map(|&c| self.get(r, c))))
            .collect();
        BitMatrix::from_rows(kept_cols.len(), data)
    }

    pub fn rank(&self) -> usize {
        EchelonBasis::from_vectors(self.data.iter().cloned()).rank()
    }

    /// Whether `v` equals `self * q` for some column vector `q`.
    pub fn in_column_space(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: v.len(),
            });
        }
        Ok(self.column_space().contains(v))
    }

    /// Echelon basis of the span of the columns.
    pub fn column_space(&self) -> EchelonBasis {
        EchelonBasis::from_vectors(self.transpose().data)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

fn exclusion_mask(len: usize, excluded: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; len];
    for &i in excluded {
        if i >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        mask[i] = true;
    }
    Ok(mask)
}

/// Row-vector times matrix: `result[j] = XOR_i v[i] * m[i][j]`.
pub fn mat_vec_mul(v: &BitVector, m: &BitMatrix) -> Result<BitVector> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            actual: v.len(),
        });
    }
    let mut out = BitVector::zeros(m.cols());
    for i in v.support() {
        out.xor_assign(m.row(i));
    }
    Ok(out)
}

/// A reduced basis of a subspace of F^len, kept in echelon form by Gaussian
/// elimination. Each stored vector has a distinct pivot (its lowest set bit)
/// that is cleared in every other stored vector.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    basis: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = BitVector>>(vectors: I) -> Self {
        let mut it = vectors.into_iter().peekable();
        let len = it.peek().map_or(0, |v| v.len());
        let mut b = Self::new(len);
        for v in it {
            b.insert(v);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, mut v: BitVector) -> BitVector {
        for (pivot, row) in &self.basis {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        let Some(pivot) = r.support().first().copied() else {
            return false;
        };
        for (_, row) in &mut self.basis {
            if row.get(pivot) {
                row.xor_assign(&r);
            }
        }
        self.basis.push((pivot, r));
        true
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        if self.len == 0 {
            return v.is_zero();
        }
        self.reduce(v.clone()).is_zero()
    }
}
