//! Linear algebra over F2 on bit-packed rows, plus the binary-arithmetic
//! combinatorics (Lucas binomials, alpha numbers, two-adic valuations and the
//! two-power gap decomposition) that the rest of the crate is built on.

use std::fmt;
use std::ops::BitXorAssign;
use std::str::FromStr;

use crate::error::{AlgebraError, ParseError, Result};

const WORD: usize = 64;

/// Binomial coefficient `C(n, k)` reduced mod 2.
///
/// For `n >= 0` this is Lucas' theorem: `C(n, k)` is odd iff the binary digits
/// of `k` are a subset of those of `n`. Negative `n` uses the extension
/// `C(n, k) = (-1)^k C(k - n - 1, k)`, so in particular `C(-1, 0) = 1`; the Wu
/// formula relies on that boundary value for its top-square term.
pub fn binom_mod2(n: i64, k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if n < 0 {
        return binom_mod2(k - n - 1, k);
    }
    n & k == k
}

/// Number of ones in the binary expansion of `m`.
pub fn alpha(m: u64) -> u32 {
    m.count_ones()
}

/// Two-adic valuation of `m`. Satisfies `alpha(m - 1) = alpha(m) + nu(m) - 1`.
pub fn nu(m: u64) -> Result<u32> {
    if m == 0 {
        return Err(AlgebraError::InvalidArgument(
            "nu is undefined at 0".to_string(),
        ));
    }
    Ok(m.trailing_zeros())
}

/// The unique representation `m = 2^r - sum_j 2^{b_j}` with
/// `0 <= b_1 < ... < b_s < r - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapDecomposition {
    pub r: u32,
    pub b: Vec<u32>,
}

impl GapDecomposition {
    pub fn value(&self) -> u64 {
        (1u64 << self.r) - self.b.iter().map(|&e| 1u64 << e).sum::<u64>()
    }

    pub fn s(&self) -> u32 {
        self.b.len() as u32
    }

    /// Filtration index `p = r - s` of the basis element in this degree.
    pub fn p(&self) -> u32 {
        self.r - self.s()
    }

    /// Exponents `a_j = b_j - j + 1` (with `j` counted from one).
    pub fn exponents(&self) -> Vec<u32> {
        self.b
            .iter()
            .enumerate()
            .map(|(idx, &bj)| bj - idx as u32)
            .collect()
    }

    /// The operation word `I = (2^{a_1}, ..., 2^{a_s})`.
    pub fn d_word(&self) -> Vec<u32> {
        self.exponents().into_iter().map(|a| 1u32 << a).collect()
    }

    pub fn is_valid(&self) -> bool {
        let increasing = self.b.windows(2).all(|w| w[0] < w[1]);
        let bounded = self.b.last().map_or(true, |&top| top + 1 < self.r);
        increasing && bounded && self.r < 63
    }
}

pub fn gap_decompose(m: u64) -> Result<GapDecomposition> {
    if m == 0 {
        return Err(AlgebraError::InvalidArgument(
            "gap decomposition needs a positive integer".to_string(),
        ));
    }
    // smallest r with 2^r >= m; then 2^r - m < 2^{r-1}
    let r = if m == 1 { 0 } else { 64 - (m - 1).leading_zeros() };
    let gap = (1u64 << r) - m;
    let b = (0..r).filter(|&e| gap >> e & 1 == 1).collect();
    let dec = GapDecomposition { r, b };
    if !dec.is_valid() || dec.value() != m {
        return Err(AlgebraError::InvalidArgument(format!(
            "gap decomposition of {m} failed to reconstruct"
        )));
    }
    Ok(dec)
}

/// A packed vector over F2 of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit at or after `from`.
    pub fn first_one_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / WORD;
        let mut word = self.words[wi] & (!0u64 << (from % WORD));
        loop {
            if word != 0 {
                return Some(wi * WORD + word.trailing_zeros() as usize);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            word = self.words[wi];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = self.first_one();
        std::iter::from_fn(move || {
            let cur = next?;
            next = self.first_one_from(cur + 1);
            Some(cur)
        })
    }

    pub fn xor_with(&mut self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(AlgebraError::LengthMismatch {
                expected: self.len,
                actual: other.len,
            });
        }
        *self ^= other;
        Ok(())
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        debug_assert_eq!(self.len, rhs.len);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = ParseError;

    /// Parses a string of `0` and `1` characters, column 0 first.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bits = s
            .char_indices()
            .map(|(pos, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ParseError::new(pos, format!("unexpected character {c:?}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(BitVector::from_bools(&bits))
    }
}

/// A matrix over F2 stored as packed rows of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(AlgebraError::LengthMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(BitMatrix { rows, cols })
    }

    pub fn push(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(AlgebraError::LengthMismatch {
                expected: self.cols,
                actual: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).0
    }
}

impl FromStr for BitMatrix {
    type Err = ParseError;

    /// Whitespace- or comma-separated rows, e.g. `"1100 0110 1010"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for token in s.split(|c: char| c.is_whitespace() || c == ',') {
            if !token.is_empty() {
                let start = s[offset..].find(token).map_or(offset, |p| p + offset);
                let row = token.parse::<BitVector>().map_err(|e| {
                    ParseError::new(start + e.position, e.message)
                })?;
                rows.push((start, row));
                offset = start + token.len();
            }
        }
        let cols = rows.first().map_or(0, |(_, r)| r.len());
        if let Some((pos, _)) = rows.iter().find(|(_, r)| r.len() != cols) {
            return Err(ParseError::new(*pos, "rows have different lengths"));
        }
        Ok(BitMatrix {
            rows: rows.into_iter().map(|(_, r)| r).collect(),
            cols,
        })
    }
}

/// An incrementally built row-echelon basis of a subspace of `F2^len`.
///
/// Each stored row has a distinct pivot, its lowest set column.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<BitVector>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            pivot_row: vec![None; len],
        }
    }

    /// Dimension of the ambient space, not the number of rows.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Reduces `v` against the basis; the residue has no bits in pivot columns.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        debug_assert_eq!(v.len(), self.len);
        let mut from = 0;
        while let Some(c) = v.first_one_from(from) {
            if let Some(r) = self.pivot_row[c] {
                v ^= &self.rows[r];
            }
            from = c + 1;
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the spanning set. Returns whether the rank grew.
    pub fn insert(&mut self, v: BitVector) -> bool {
        if self.is_full() {
            return false;
        }
        let residue = self.reduce(v);
        match residue.first_one() {
            None => false,
            Some(pivot) => {
                self.pivot_row[pivot] = Some(self.rows.len());
                self.rows.push(residue);
                true
            }
        }
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.len).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Columns that carry no pivot; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.len).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Whether every vector of `other` lies in this span.
    pub fn contains_all(&self, other: &EchelonBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// The same span with every row fully reduced, so each row has one pivot
    /// and otherwise only free columns.
    pub fn reduced(&self) -> EchelonBasis {
        let mut out = EchelonBasis::new(self.len);
        for row in self.to_reduced_matrix().rows {
            out.insert(row);
        }
        out
    }

    /// The reduced row echelon form of the span, rows ordered by pivot.
    pub fn to_reduced_matrix(&self) -> BitMatrix {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].first_one());
        let mut rows: Vec<BitVector> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r.first_one().unwrap_or(0)).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if row.get(pivots[i]) {
                    *row ^= pivot_row;
                }
            }
        }
        BitMatrix {
            rows,
            cols: self.len,
        }
    }
}

/// Row-reduces `m`, returning its rank and reduced row echelon form.
pub fn row_reduce(m: &BitMatrix) -> (usize, BitMatrix) {
    let mut basis = EchelonBasis::new(m.cols);
    for row in &m.rows {
        basis.insert(row.clone());
    }
    (basis.rank(), basis.to_reduced_matrix())
}

/// Whether `v` is an F2-combination of the rows of `m`.
pub fn in_span(v: &BitVector, m: &BitMatrix) -> Result<bool> {
    if v.len() != m.cols {
        return Err(AlgebraError::LengthMismatch {
            expected: m.cols,
            actual: v.len(),
        });
    }
    let mut basis = EchelonBasis::new(m.cols);
    for row in &m.rows {
        basis.insert(row.clone());
    }
    Ok(basis.contains(v))
}

/// A subspace of a graded vector space, one echelon basis per degree
/// `0..=bound`. Coordinates in degree `d` refer to some indexed basis of that
/// degree chosen by the caller.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    layers: Vec<EchelonBasis>,
}

impl GradedSubspace {
    /// The zero subspace of a space with the given per-degree dimensions.
    pub fn zero(dims: impl IntoIterator<Item = usize>) -> Self {
        GradedSubspace {
            layers: dims.into_iter().map(EchelonBasis::new).collect(),
        }
    }

    pub fn bound(&self) -> u32 {
        self.layers.len() as u32 - 1
    }

    pub fn layer(&self, degree: u32) -> &EchelonBasis {
        &self.layers[degree as usize]
    }

    pub fn layer_mut(&mut self, degree: u32) -> &mut EchelonBasis {
        &mut self.layers[degree as usize]
    }

    pub fn rank(&self, degree: u32) -> usize {
        self.layers[degree as usize].rank()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.layers.iter().map(EchelonBasis::rank).collect()
    }

    pub fn contains(&self, degree: u32, v: &BitVector) -> bool {
        self.layers[degree as usize].contains(v)
    }

    /// Degreewise containment of `other` in `self`; the first failing degree
    /// otherwise.
    pub fn first_degree_not_containing(&self, other: &GradedSubspace) -> Option<u32> {
        self.layers
            .iter()
            .zip(&other.layers)
            .position(|(a, b)| !a.contains_all(b))
            .map(|d| d as u32)
    }

    /// Whether both subspaces are equal in every degree.
    pub fn same_span(&self, other: &GradedSubspace) -> bool {
        self.layers.len() == other.layers.len()
            && self.first_degree_not_containing(other).is_none()
            && other.first_degree_not_containing(self).is_none()
    }
}
