//! Dense linear algebra over GF(2).
//!
//! Rows are packed into a single `u64` word, so matrices are limited to 64
//! columns. Column vectors handed out by [`BitMatrix::column`] use the same
//! packing with bit `i` holding row `i`; this also bounds the row count at 64.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Widest matrix (in either dimension) the kernel supports.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    TooLarge(usize),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unexpected character {ch:?} in row {row}")]
    BadChar { row: usize, ch: char },
    #[error("column index {0} out of range")]
    ColumnOutOfRange(usize),
    #[error("basis needs {expected} columns, got {found}")]
    BasisSize { expected: usize, found: usize },
    #[error("basis columns are linearly dependent")]
    DependentBasis,
}

/// A dense 0/1 matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Result<Self, Gf2Error> {
        check_dim(n_rows)?;
        check_dim(n_cols)?;
        Ok(Self {
            n_rows,
            n_cols,
            rows: vec![0; n_rows],
        })
    }

    pub fn identity(n: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        Ok(m)
    }

    /// Builds a matrix from packed rows (bit `j` of a row is column `j`).
    /// Bits at or above `n_cols` are cleared.
    pub fn from_row_words(n_cols: usize, rows: Vec<u64>) -> Result<Self, Gf2Error> {
        check_dim(n_cols)?;
        check_dim(rows.len())?;
        let mask = low_mask(n_cols);
        Ok(Self {
            n_rows: rows.len(),
            n_cols,
            rows: rows.into_iter().map(|r| r & mask).collect(),
        })
    }

    /// Builds a matrix from packed columns (bit `i` of a column is row `i`).
    pub fn from_column_words(n_rows: usize, cols: &[u64]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(n_rows, cols.len())?;
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..n_rows {
                if c >> i & 1 == 1 {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.n_rows && col < self.n_cols, "index out of range");
        self.rows[row] >> col & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.n_rows && col < self.n_cols, "index out of range");
        if value {
            self.rows[row] |= 1 << col;
        } else {
            self.rows[row] &= !(1 << col);
        }
    }

    /// Packed row `i` (bit `j` = column `j`).
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.rows
    }

    /// Packed column `j` (bit `i` = row `i`).
    pub fn column(&self, j: usize) -> u64 {
        assert!(j < self.n_cols, "column out of range");
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((r >> j & 1) << i))
    }

    pub fn columns(&self) -> Vec<u64> {
        (0..self.n_cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_row_words(self.n_rows, self.columns())
            .expect("transpose keeps dimensions within bounds")
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self, Gf2Error> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.n_cols) {
            return Err(Gf2Error::ColumnOutOfRange(bad));
        }
        let picked: Vec<u64> = cols.iter().map(|&c| self.column(c)).collect();
        Self::from_column_words(self.n_rows, &picked)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, Gf2Error> {
        assert_eq!(self.n_rows, other.n_rows, "row counts differ");
        check_dim(self.n_cols + other.n_cols)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a | (b << self.n_cols))
            .collect();
        Ok(Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols + other.n_cols,
            rows,
        })
    }

    /// Appends one row at the bottom.
    pub fn push_row(&self, row: u64) -> Result<Self, Gf2Error> {
        check_dim(self.n_rows + 1)?;
        let mut rows = self.rows.clone();
        rows.push(row & low_mask(self.n_cols));
        Ok(Self {
            n_rows: self.n_rows + 1,
            n_cols: self.n_cols,
            rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        rank_of_words(&self.rows)
    }

    /// Reduced row-echelon form; zero rows are kept at the bottom so the
    /// shape is unchanged.
    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    /// Reduced row-echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.n_cols {
            let bit = 1u64 << col;
            let Some(p) = (next..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && *r & bit != 0 {
                    *r ^= pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        (
            Self {
                n_rows: self.n_rows,
                n_cols: self.n_cols,
                rows,
            },
            pivots,
        )
    }

    /// Row-reduces so that `basis_cols` become the identity (in the given
    /// order) and returns the remaining block `D`, whose columns are the
    /// non-basis columns in their original order.
    pub fn standard_form(&self, basis_cols: &[usize]) -> Result<Self, Gf2Error> {
        let (reduced, rest) = self.reduce_on_basis(basis_cols)?;
        reduced.select_columns(&rest)
    }

    /// Row operations turning `basis_cols` into the identity, returning the
    /// reduced `rank × n_cols` matrix and the non-basis column indices.
    pub(crate) fn reduce_on_basis(
        &self,
        basis_cols: &[usize],
    ) -> Result<(Self, Vec<usize>), Gf2Error> {
        if let Some(&bad) = basis_cols.iter().find(|&&c| c >= self.n_cols) {
            return Err(Gf2Error::ColumnOutOfRange(bad));
        }
        let r = self.rank();
        if basis_cols.len() != r {
            return Err(Gf2Error::BasisSize {
                expected: r,
                found: basis_cols.len(),
            });
        }
        let mut rows = self.rows.clone();
        for (i, &col) in basis_cols.iter().enumerate() {
            let bit = 1u64 << col;
            let p = (i..rows.len())
                .find(|&k| rows[k] & bit != 0)
                .ok_or(Gf2Error::DependentBasis)?;
            rows.swap(i, p);
            let pivot_row = rows[i];
            for (k, row) in rows.iter_mut().enumerate() {
                if k != i && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
        }
        rows.truncate(r);
        let rest = (0..self.n_cols)
            .filter(|c| !basis_cols.contains(c))
            .collect();
        Ok((
            Self {
                n_rows: r,
                n_cols: self.n_cols,
                rows,
            },
            rest,
        ))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_vector(self.rows[i], self.n_cols))?;
        }
        f.write_str("]")
    }
}

/// Plain-text format: one row per line, `0`/`1` characters, no separators.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n_rows {
            writeln!(f, "{}", format_vector(self.rows[i], self.n_cols))?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Gf2Error;

    /// Parses the plain-text format. Blank lines are skipped. An input with
    /// no rows yields a 0×0 matrix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n_cols = lines.first().map_or(0, |l| l.chars().count());
        let mut rows = Vec::with_capacity(lines.len());
        for (i, line) in lines.iter().enumerate() {
            let found = line.chars().count();
            if found != n_cols {
                return Err(Gf2Error::RaggedRow {
                    row: i,
                    expected: n_cols,
                    found,
                });
            }
            rows.push(parse_vector(line).map_err(|ch| Gf2Error::BadChar { row: i, ch })?);
        }
        Self::from_row_words(n_cols, rows)
    }
}

/// Parses a `0`/`1` string into a packed word, first character in bit 0.
/// Returns the offending character on failure.
pub fn parse_vector(s: &str) -> Result<u64, char> {
    let mut v = 0u64;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => v |= 1 << i,
            other => return Err(other),
        }
    }
    Ok(v)
}

/// Inverse of [`parse_vector`].
pub fn format_vector(v: u64, len: usize) -> String {
    (0..len)
        .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Rank of the span of a set of packed vectors.
pub fn rank_of_words(words: &[u64]) -> usize {
    let mut basis = XorBasis::default();
    words.iter().filter(|&&w| basis.insert(w)).count()
}

/// Incremental span over GF(2), keyed by leading bit.
#[derive(Debug, Clone)]
pub struct XorBasis {
    by_lead: [u64; 64],
    present: u64,
}

impl Default for XorBasis {
    fn default() -> Self {
        Self {
            by_lead: [0; 64],
            present: 0,
        }
    }
}

impl XorBasis {
    /// Reduces `v` against the basis: the result has a zero at every pivot
    /// position. This is a linear map whose kernel is the span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        let mut pivots = self.present;
        while pivots != 0 {
            let lead = 63 - pivots.leading_zeros() as usize;
            if v >> lead & 1 == 1 {
                v ^= self.by_lead[lead];
            }
            pivots &= !(1 << lead);
        }
        v
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let lead = 63 - v.leading_zeros() as usize;
        self.by_lead[lead] = v;
        self.present |= 1 << lead;
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn dim(&self) -> usize {
        self.present.count_ones() as usize
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_dim(n: usize) -> Result<(), Gf2Error> {
    if n > MAX_DIM {
        Err(Gf2Error::TooLarge(n))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> BitMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn xor_basis_reduce_is_linear() {
        let mut b = XorBasis::default();
        b.insert(0b0001);
        b.insert(0b0110);
        // 0b0011 leads with a non-pivot bit but still has pivot bit 0 set.
        assert_eq!(b.reduce(0b0011), 0b0010);
        for x in 0..16u64 {
            for y in 0..16u64 {
                assert_eq!(b.reduce(x ^ y), b.reduce(x) ^ b.reduce(y));
            }
            assert_eq!(b.reduce(x) == 0, b.contains(x));
        }
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(BitMatrix::zeros(3, 3).unwrap().rank(), 0);
    }

    #[test]
    fn rref_of_small_upper_triangular() {
        assert_eq!(m("11\n01").rref(), m("10\n01"));
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = BitMatrix::identity(6).unwrap();
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_ignores_row_order() {
        let a = m("1101\n0111\n1010");
        let b = m("1010\n1101\n0111");
        assert_eq!(a.rref(), b.rref());
    }

    #[test]
    fn two_by_two_rank_by_exhaustion() {
        for bits in 0u64..16 {
            let rows = vec![bits & 3, bits >> 2];
            let mat = BitMatrix::from_row_words(2, rows.clone()).unwrap();
            let det = ((bits & 1) * (bits >> 3 & 1)) ^ ((bits >> 1 & 1) * (bits >> 2 & 1));
            let expected = if det == 1 {
                2
            } else if bits == 0 {
                0
            } else {
                1
            };
            assert_eq!(mat.rank(), expected, "rows {rows:?}");
        }
    }

    #[test]
    fn standard_form_rejects_dependent_basis() {
        let a = m("110\n011");
        assert_eq!(a.standard_form(&[0, 1]).unwrap(), m("1\n1"));
        let dup = m("1100\n0011");
        assert_eq!(dup.standard_form(&[0, 1]), Err(Gf2Error::DependentBasis));
        assert!(matches!(
            dup.standard_form(&[0]),
            Err(Gf2Error::BasisSize { .. })
        ));
    }

    #[test]
    fn standard_form_with_pivot_basis_is_nonpivot_part() {
        let a = m("1011\n1110\n0101");
        let (r, pivots) = a.rref_with_pivots();
        let d = a.standard_form(&pivots).unwrap();
        let rest: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
        let expected = BitMatrix::from_row_words(4, r.row_words()[..pivots.len()].to_vec())
            .unwrap()
            .select_columns(&rest)
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn parse_rejects_ragged_and_bad_chars() {
        assert!(matches!(
            "101\n10".parse::<BitMatrix>(),
            Err(Gf2Error::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            "1a1".parse::<BitMatrix>(),
            Err(Gf2Error::BadChar { ch: 'a', .. })
        ));
        assert_eq!("".parse::<BitMatrix>().unwrap().n_rows(), 0);
    }

    #[test]
    fn display_round_trips() {
        let a = m("10110\n01011\n00000");
        assert_eq!(a.to_string().parse::<BitMatrix>().unwrap(), a);
    }

    #[test]
    fn xor_basis_tracks_span() {
        let mut b = XorBasis::default();
        assert!(b.insert(0b011));
        assert!(b.insert(0b110));
        assert!(!b.insert(0b101));
        assert!(b.contains(0b101));
        assert!(!b.contains(0b001));
        assert_eq!(b.dim(), 2);
    }
}
