//! Exact linear algebra: bit matrices over F₂, integer matrices over ℤₖ
//! and rational matrices.
//!
//! Nothing in this module touches floating point.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over F₂, packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Parses a string of `0`/`1` characters, leftmost character is entry 0.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse {
                        field: format!("bit {i}"),
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
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
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
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

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    fn leading_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
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

/// A dense matrix over F₂ stored row-major; bit `c` of row `r` is entry (r, c).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Builds a matrix from `0`/`1` row strings of equal length.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| BitVector::parse(r))
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        BitMatrix::from_rows(cols, parsed)
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    actual: col.len(),
                });
            }
            for r in 0..rows {
                if col.get(r) {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows());
        for r in 0..self.rows() {
            v.set(r, self.get(r, c));
        }
        v
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for r in 0..self.rows() {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Submatrix formed by the listed columns, in the given order.
    pub fn select_columns(&self, columns: impl IntoIterator<Item = usize>) -> BitMatrix {
        let cols: Vec<usize> = columns.into_iter().collect();
        let mut m = BitMatrix::zeros(self.rows(), cols.len());
        for r in 0..self.rows() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    m.set(r, j, true);
                }
            }
        }
        m
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

/// Reduced echelon basis of a set of F₂ vectors, keyed by leading bit.
#[derive(Debug, Clone, Default)]
pub struct Gf2Basis {
    rows: Vec<BitVector>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, v: &mut BitVector) {
        for b in &self.rows {
            let lead = b.leading_bit().expect("basis rows are nonzero");
            if v.get(lead) {
                v.xor_assign(b);
            }
        }
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        self.reduce(&mut v);
        let Some(lead) = v.leading_bit() else {
            return false;
        };
        for b in &mut self.rows {
            if b.get(lead) {
                b.xor_assign(&v);
            }
        }
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Row rank over F₂.
pub fn gf2_rank(m: &BitMatrix) -> usize {
    let mut basis = Gf2Basis::new();
    m.rows.iter().filter(|r| basis.insert((*r).clone())).count()
}

/// Whether `v` lies in the F₂ row space of `m`.
pub fn gf2_in_rowspace(m: &BitMatrix, v: &BitVector) -> Result<bool> {
    if v.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            actual: v.len(),
        });
    }
    let mut basis = Gf2Basis::new();
    for r in &m.rows {
        basis.insert(r.clone());
    }
    Ok(basis.contains(v))
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    cols: usize,
    entries: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            cols,
            entries: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(RationalMatrix {
            cols,
            entries: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r][c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r]
    }
}

/// Exact rank by Gaussian elimination over ℚ.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    let mut a = m.entries.clone();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].recip();
        let pivot_row: Vec<BigRational> = a[rank].iter().map(|x| x * &inv).collect();
        for row in a.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        a[rank] = pivot_row;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Matrix over the ring ℤₖ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZkMatrix {
    modulus: u64,
    cols: usize,
    entries: Vec<Vec<u64>>,
}

impl ZkMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidMatroid(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        Ok(ZkMatrix {
            modulus,
            cols,
            entries: vec![vec![0; cols]; rows],
        })
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod k.
    pub fn from_signed_rows(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = ZkMatrix::zeros(modulus, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r][c] = value.rem_euclid(self.modulus as i64) as u64;
    }

    pub fn select_columns(&self, columns: impl IntoIterator<Item = usize>) -> ZkMatrix {
        let cols: Vec<usize> = columns.into_iter().collect();
        let entries = self
            .entries
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        ZkMatrix {
            modulus: self.modulus,
            cols: cols.len(),
            entries,
        }
    }

    /// `xᵀ M mod k` for a row vector `x` of length `rows`.
    pub fn left_mul(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rows());
        let k = self.modulus as u128;
        (0..self.cols)
            .map(|c| {
                let s = x.iter().zip(&self.entries).fold(0u128, |acc, (&xi, row)| {
                    (acc + xi as u128 * row[c] as u128) % k
                });
                s as u64
            })
            .collect()
    }
}

/// Bézout coefficients for a pivot `p` against `q`; plain subtraction when `p | q`
/// so the pivot column is left untouched.
fn pivot_combination(p: i128, q: i128) -> (i128, i128, i128) {
    if q % p == 0 {
        (p, 1, 0)
    } else {
        let eg = p.extended_gcd(&q);
        (eg.gcd, eg.x, eg.y)
    }
}

/// Diagonalizes `m` with unimodular row and column operations, keeping
/// entries reduced mod k. Returns the diagonal.
fn zk_diagonal(m: &ZkMatrix) -> Vec<u64> {
    let k = m.modulus as i128;
    let rows = m.rows();
    let cols = m.cols;
    let mut a: Vec<Vec<i128>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let reduce = |x: i128| x.rem_euclid(k);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .find(|&(r, c)| a[r][c] != 0)
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let (p, q) = (a[t][t], a[i][t]);
                let (g, x, y) = pivot_combination(p, q);
                let (pg, qg) = (p / g, q / g);
                let (upper, lower) = a.split_at_mut(i);
                for (top, row) in upper[t][t..].iter_mut().zip(&mut lower[0][t..]) {
                    let (u, v) = (*top, *row);
                    *top = reduce(x * u + y * v);
                    *row = reduce(qg * u - pg * v);
                }
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let (p, q) = (a[t][t], a[t][j]);
                let (g, x, y) = pivot_combination(p, q);
                let (pg, qg) = (p / g, q / g);
                for row in a.iter_mut().take(rows).skip(t) {
                    let (u, v) = (row[t], row[j]);
                    row[t] = reduce(x * u + y * v);
                    row[j] = reduce(qg * u - pg * v);
                }
                if (t + 1..rows).any(|i| a[i][t] != 0) {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(a[t][t] as u64);
    }
    diag
}

/// Number of distinct vectors `xᵀ M mod k` as `x` ranges over ℤₖ^rows.
pub fn zk_image_size(m: &ZkMatrix) -> u128 {
    let k = m.modulus;
    zk_diagonal(m)
        .into_iter()
        .map(|d| (k / d.gcd(&k)) as u128)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gf2_rank_examples() {
        assert_eq!(
            gf2_rank(&BitMatrix::parse_rows(&["100", "010", "001"]).unwrap()),
            3
        );
        assert_eq!(gf2_rank(&BitMatrix::zeros(2, 4)), 0);
        assert_eq!(
            gf2_rank(&BitMatrix::parse_rows(&["110", "011", "101"]).unwrap()),
            2
        );
    }

    #[test]
    fn gf2_rank_wide_rows() {
        let mut m = BitMatrix::zeros(3, 130);
        m.set(0, 0, true);
        m.set(1, 129, true);
        m.set(2, 0, true);
        m.set(2, 129, true);
        assert_eq!(gf2_rank(&m), 2);
        assert_eq!(gf2_rank(&m.transpose()), 2);
    }

    #[test]
    fn rowspace_examples() {
        let full = BitMatrix::parse_rows(&["10", "01"]).unwrap();
        assert!(gf2_in_rowspace(&full, &BitVector::parse("11").unwrap()).unwrap());
        let one = BitMatrix::parse_rows(&["10"]).unwrap();
        assert!(!gf2_in_rowspace(&one, &BitVector::parse("01").unwrap()).unwrap());
        let two = BitMatrix::parse_rows(&["110", "011"]).unwrap();
        assert!(gf2_in_rowspace(&two, &BitVector::parse("101").unwrap()).unwrap());
        assert_eq!(
            gf2_in_rowspace(&two, &BitVector::parse("10").unwrap()),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn rational_rank_examples() {
        let mut id = RationalMatrix::zeros(4, 4);
        for i in 0..4 {
            id.entries[i][i] = q(1, 1);
        }
        assert_eq!(rational_rank(&id), 4);
        let outer =
            RationalMatrix::from_rows(2, vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]])
                .unwrap();
        assert_eq!(rational_rank(&outer), 1);
        let m = RationalMatrix::from_rows(
            2,
            vec![
                vec![q(1, 1), q(1, 2)],
                vec![q(1, 3), q(1, 6)],
                vec![q(0, 1), q(1, 1)],
            ],
        )
        .unwrap();
        assert_eq!(rational_rank(&m), 2);
    }

    #[test]
    fn zk_image_examples() {
        let id = ZkMatrix::from_signed_rows(3, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(zk_image_size(&id), 9);
        let two = ZkMatrix::from_signed_rows(4, &[vec![2]]).unwrap();
        assert_eq!(zk_image_size(&two), 2);
        // vertices × edges, edges 12, 23, 13 oriented low → high
        let tri = ZkMatrix::from_signed_rows(3, &[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]])
            .unwrap();
        assert_eq!(zk_image_size(&tri), 9);
    }

    #[test]
    fn zk_entries_reduced() {
        let m = ZkMatrix::from_signed_rows(4, &[vec![-1, 5, 4]]).unwrap();
        assert_eq!((m.get(0, 0), m.get(0, 1), m.get(0, 2)), (3, 1, 0));
        assert!(ZkMatrix::zeros(1, 1, 1).is_err());
    }

    #[test]
    fn zk_empty_matrix() {
        let m = ZkMatrix::zeros(5, 0, 3).unwrap();
        assert_eq!(zk_image_size(&m), 1);
        let m = ZkMatrix::zeros(5, 3, 0).unwrap();
        assert_eq!(zk_image_size(&m), 1);
    }
}
