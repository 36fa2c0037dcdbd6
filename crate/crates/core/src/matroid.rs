//! Labelled binary matroids.
//!
//! A [`BinaryMatroid`] is a full-row-rank GF(2) matrix with one labelled
//! column per element. Labels are opaque and survive every minor operation,
//! so a statement such as "contract 12, delete 1" keeps referring to the same
//! elements after the operations are applied.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{self, BitMatrix, Gf2Error, XorBasis};

/// Largest ground set handled; element subsets are packed into a `u64`.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("operation needs a nonempty element set")]
    EmptySet,
    #[error("representation is not in standard form [I|D]")]
    NotStandardForm,
    #[error("vector has {found} entries, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("malformed matroid file: {0}")]
    Format(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Element identifier. Numeric labels order numerically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Self(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u64> {
        self.0.parse().ok()
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Self(n.to_string())
    }
}

/// Labels `1..=n`.
pub fn numbered_labels(n: usize) -> Vec<Label> {
    (1..=n).map(Label::from).collect()
}

/// A set of element labels.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(BTreeSet<Label>);

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ints<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().map(Label::from).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.0.contains(l)
    }

    pub fn insert(&mut self, l: Label) -> bool {
        self.0.insert(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.0.iter()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self(self.0.union(&other.0).cloned().collect())
    }
}

impl FromIterator<Label> for ElementSet {
    fn from_iter<T: IntoIterator<Item = Label>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Label;
    type IntoIter = std::collections::btree_set::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A binary matroid given by a labelled GF(2) representation.
///
/// The stored matrix always has full row rank, so `rank()` is its row count.
/// Extensions and coextensions are expressed in the coordinates of this
/// matrix; constructors that receive a rank-deficient matrix replace it by
/// the nonzero rows of its reduced echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatroid {
    labels: Vec<Label>,
    rep: BitMatrix,
    cols: Vec<u64>,
}

impl BinaryMatroid {
    /// Matroid of `[I_r | D]`; the first `r` labels name the identity columns.
    pub fn from_standard_form(d: &BitMatrix, labels: Vec<Label>) -> Result<Self, MatroidError> {
        let r = d.n_rows();
        let n = r + d.n_cols();
        if labels.len() != n {
            return Err(MatroidError::LabelCount {
                expected: n,
                found: labels.len(),
            });
        }
        let rep = BitMatrix::identity(r)?.hconcat(d)?;
        Self::from_matrix(rep, labels)
    }

    /// Matroid of an arbitrary matrix, one label per column.
    pub fn from_matrix(rep: BitMatrix, labels: Vec<Label>) -> Result<Self, MatroidError> {
        if labels.len() != rep.n_cols() {
            return Err(MatroidError::LabelCount {
                expected: rep.n_cols(),
                found: labels.len(),
            });
        }
        check_distinct(&labels)?;
        let rep = full_row_rank(rep);
        let cols = rep.columns();
        Ok(Self { labels, rep, cols })
    }

    /// Matroid whose elements are the given column vectors of length `rows`.
    pub fn from_columns(
        rows: usize,
        cols: &[u64],
        labels: Vec<Label>,
    ) -> Result<Self, MatroidError> {
        Self::from_matrix(BitMatrix::from_column_words(rows, cols)?, labels)
    }

    /// Cycle matroid of a graph given as vertex pairs; edge `i` gets label
    /// `i + 1`. The incidence matrix drops its last vertex row.
    pub fn from_graph(edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        Self::from_graph_labeled(edges, numbered_labels(edges.len()))
    }

    pub fn from_graph_labeled(
        edges: &[(usize, usize)],
        labels: Vec<Label>,
    ) -> Result<Self, MatroidError> {
        if edges.is_empty() {
            return Err(MatroidError::EmptyGraph);
        }
        let n_vertices = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
        let rows = n_vertices.saturating_sub(1);
        let cols: Vec<u64> = edges
            .iter()
            .map(|&(u, v)| {
                let mut c = 0u64;
                for w in [u, v] {
                    if w < rows {
                        c ^= 1 << w;
                    }
                }
                c
            })
            .collect();
        Self::from_columns(rows, &cols, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rep.n_rows()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn ground_set(&self) -> ElementSet {
        self.labels.iter().cloned().collect()
    }

    pub fn rep(&self) -> &BitMatrix {
        &self.rep
    }

    /// Packed column vectors, in element order (bit `i` = row `i`).
    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn full_mask(&self) -> u64 {
        gf2::low_mask(self.len())
    }

    pub fn index_of(&self, l: &Label) -> Result<usize, MatroidError> {
        self.labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| MatroidError::UnknownLabel(l.clone()))
    }

    pub fn column_of(&self, l: &Label) -> Result<u64, MatroidError> {
        Ok(self.cols[self.index_of(l)?])
    }

    /// Element-index bitmask of a label set.
    pub fn mask_of(&self, s: &ElementSet) -> Result<u64, MatroidError> {
        s.iter()
            .try_fold(0u64, |acc, l| Ok(acc | 1 << self.index_of(l)?))
    }

    pub fn set_of_mask(&self, mask: u64) -> ElementSet {
        mask_indices(mask).map(|i| self.labels[i].clone()).collect()
    }

    pub fn rank_of(&self, s: &ElementSet) -> Result<usize, MatroidError> {
        Ok(self.rank_mask(self.mask_of(s)?))
    }

    pub fn rank_mask(&self, mask: u64) -> usize {
        let mut basis = XorBasis::default();
        mask_indices(mask)
            .filter(|&i| basis.insert(self.cols[i]))
            .count()
    }

    pub fn is_independent_mask(&self, mask: u64) -> bool {
        self.rank_mask(mask) == mask.count_ones() as usize
    }

    /// Lexicographically first basis (by element order), as a mask.
    pub fn greedy_basis(&self) -> u64 {
        let mut basis = XorBasis::default();
        let mut mask = 0;
        for (i, &c) in self.cols.iter().enumerate() {
            if basis.insert(c) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Dual matroid with every element keeping its label and position.
    pub fn dual(&self) -> Self {
        let basis: Vec<usize> = mask_indices(self.greedy_basis()).collect();
        let (reduced, rest) = self
            .rep
            .reduce_on_basis(&basis)
            .expect("greedy basis is a basis");
        let n = self.len();
        let r = basis.len();
        // Row i of the reduced matrix belongs to basis element basis[i]; the
        // dual puts D^T under the basis and the identity under the rest.
        let mut cols = vec![0u64; n];
        for (i, &b) in basis.iter().enumerate() {
            let row = reduced.row(i);
            cols[b] = rest
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &c)| acc | ((row >> c & 1) << j));
        }
        for (j, &c) in rest.iter().enumerate() {
            cols[c] = 1 << j;
        }
        let rep = BitMatrix::from_column_words(n - r, &cols).expect("dimensions bounded");
        Self {
            labels: self.labels.clone(),
            cols: rep.columns(),
            rep,
        }
    }

    pub fn delete(&self, s: &ElementSet) -> Result<Self, MatroidError> {
        Ok(self.delete_mask(self.mask_of(s)?))
    }

    pub fn contract(&self, s: &ElementSet) -> Result<Self, MatroidError> {
        Ok(self.contract_mask(self.mask_of(s)?))
    }

    /// Restriction to the complement of `mask`.
    pub fn delete_mask(&self, mask: u64) -> Self {
        self.restrict_mask(self.full_mask() & !mask)
    }

    /// Contraction, computed as the dual of a deletion from the dual.
    pub fn contract_mask(&self, mask: u64) -> Self {
        if mask == 0 {
            return self.clone();
        }
        self.dual().delete_mask(mask).dual()
    }

    /// Restriction to the elements in `mask`, keeping element order.
    pub fn restrict_mask(&self, mask: u64) -> Self {
        if mask == self.full_mask() {
            return self.clone();
        }
        let keep: Vec<usize> = mask_indices(mask).collect();
        let cols: Vec<u64> = keep.iter().map(|&i| self.cols[i]).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let rep = full_row_rank(
            BitMatrix::from_column_words(self.rank(), &cols).expect("dimensions bounded"),
        );
        Self {
            labels,
            cols: rep.columns(),
            rep,
        }
    }

    /// `self / contract \ delete`.
    pub fn minor(&self, contract: &ElementSet, delete: &ElementSet) -> Result<Self, MatroidError> {
        self.mask_of(delete)?;
        self.contract(contract)?.delete(delete)
    }

    pub fn is_circuit(&self, s: &ElementSet) -> Result<bool, MatroidError> {
        if s.is_empty() {
            return Err(MatroidError::EmptySet);
        }
        Ok(self.is_circuit_mask(self.mask_of(s)?))
    }

    pub fn is_cocircuit(&self, s: &ElementSet) -> Result<bool, MatroidError> {
        if s.is_empty() {
            return Err(MatroidError::EmptySet);
        }
        Ok(self.dual().is_circuit_mask(self.mask_of(s)?))
    }

    /// A nonempty set is a circuit iff it is dependent and dropping any one
    /// element leaves it independent.
    pub fn is_circuit_mask(&self, mask: u64) -> bool {
        let size = mask.count_ones() as usize;
        if size == 0 || self.rank_mask(mask) != size - 1 {
            return false;
        }
        mask_indices(mask).all(|i| self.rank_mask(mask & !(1 << i)) == size - 1)
    }

    /// A nonempty set is a cocircuit iff its complement is a hyperplane.
    pub fn is_cocircuit_mask(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let rest = self.full_mask() & !mask;
        let r = self.rank();
        self.rank_mask(rest) == r - 1
            && mask_indices(mask).all(|i| self.rank_mask(rest | 1 << i) == r)
    }

    pub fn loops(&self) -> u64 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Parallel classes of non-loop elements, each as a mask, in order of
    /// first appearance.
    pub fn parallel_classes(&self) -> Vec<u64> {
        let mut classes: Vec<(u64, u64)> = Vec::new();
        for (i, &c) in self.cols.iter().enumerate() {
            if c == 0 {
                continue;
            }
            match classes.iter_mut().find(|(v, _)| *v == c) {
                Some((_, m)) => *m |= 1 << i,
                None => classes.push((c, 1 << i)),
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.loops() == 0 && self.parallel_classes().len() == self.len()
    }

    pub fn is_cosimple(&self) -> bool {
        self.dual().is_simple()
    }

    /// Removes loops and keeps the first member of each parallel class.
    pub fn simplify(&self) -> Self {
        let keep = self
            .parallel_classes()
            .into_iter()
            .fold(0u64, |acc, m| acc | 1 << m.trailing_zeros());
        self.restrict_mask(keep)
    }

    /// Adds an element with the given column (in the coordinates of `rep`).
    pub fn extend(&self, column: u64, label: Label) -> Result<Self, MatroidError> {
        if column >> self.rank() != 0 {
            return Err(MatroidError::VectorLength {
                expected: self.rank(),
                found: 64 - column.leading_zeros() as usize,
            });
        }
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut cols = self.cols.clone();
        cols.push(column);
        Self::from_columns(self.rank(), &cols, labels)
    }

    /// Coextension by a new row: the new element gets the new unit column,
    /// and `row` (an element-index mask) gives the new row over the existing
    /// elements. The new element is appended at the end.
    pub fn coextend(&self, row: u64, label: Label) -> Result<Self, MatroidError> {
        let r = self.rank();
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut cols: Vec<u64> = self
            .cols
            .iter()
            .enumerate()
            .map(|(i, &c)| c | ((row >> i & 1) << r))
            .collect();
        cols.push(1 << r);
        Self::from_columns(r + 1, &cols, labels)
    }

    /// Coextension of a standard-form matroid `[I_r | D]` by appending a row
    /// under `D`. `d_row` has one bit per column of `D` (bit 0 = first
    /// column). The new element is placed right after the identity block, so
    /// the result is again in standard form `[I_{r+1} | D']`.
    pub fn coextend_standard(&self, d_row: u64, label: Label) -> Result<Self, MatroidError> {
        let d = self.d_block().ok_or(MatroidError::NotStandardForm)?;
        let r = self.rank();
        if d_row >> d.n_cols() != 0 {
            return Err(MatroidError::VectorLength {
                expected: d.n_cols(),
                found: 64 - d_row.leading_zeros() as usize,
            });
        }
        let d2 = d.push_row(d_row)?;
        let mut labels = self.labels.clone();
        labels.insert(r, label);
        Self::from_standard_form(&d2, labels)
    }

    /// True when the first `rank` columns form the identity.
    pub fn is_standard_form(&self) -> bool {
        let r = self.rank();
        r <= self.len() && (0..r).all(|i| self.cols[i] == 1 << i)
    }

    /// The `D` of `[I_r | D]` when the matroid is in standard form.
    pub fn d_block(&self) -> Option<BitMatrix> {
        if !self.is_standard_form() {
            return None;
        }
        let rest: Vec<usize> = (self.rank()..self.len()).collect();
        Some(self.rep.select_columns(&rest).expect("indices in range"))
    }

    /// Same matroid re-represented as `[I_r | D]`, with the greedy basis moved
    /// to the front of the element order.
    pub fn standardized(&self) -> Self {
        if self.is_standard_form() {
            return self.clone();
        }
        let basis: Vec<usize> = mask_indices(self.greedy_basis()).collect();
        let d = self
            .rep
            .standard_form(&basis)
            .expect("greedy basis is a basis");
        let order: Vec<usize> = basis
            .iter()
            .copied()
            .chain((0..self.len()).filter(|i| !basis.contains(i)))
            .collect();
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_standard_form(&d, labels).expect("labels already validated")
    }

    /// Renames elements. Labels absent from `map` keep their name.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Self, MatroidError> {
        let labels: Vec<Label> = self
            .labels
            .iter()
            .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
            .collect();
        check_distinct(&labels)?;
        Ok(Self {
            labels,
            rep: self.rep.clone(),
            cols: self.cols.clone(),
        })
    }

    /// Renames elements `1..=n` by position.
    pub fn relabel_positional(&self) -> Self {
        Self {
            labels: numbered_labels(self.len()),
            rep: self.rep.clone(),
            cols: self.cols.clone(),
        }
    }

    /// Permutes the element order (`order[k]` is the old index placed at `k`).
    pub fn reorder(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len(), "order must be a permutation");
        let cols: Vec<u64> = order.iter().map(|&i| self.cols[i]).collect();
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let rep = BitMatrix::from_column_words(self.rank(), &cols).expect("dimensions bounded");
        Self { labels, rep, cols }
    }

    /// Text format: `r n`, the `D` block of a standard form, then the labels.
    pub fn to_text(&self) -> String {
        let s = self.standardized();
        let mut out = format!("{} {}\n", s.rank(), s.len());
        if s.len() > s.rank() {
            out.push_str(&s.d_block().expect("standardized").to_string());
        }
        let labels: Vec<&str> = s.labels.iter().map(Label::as_str).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
        out
    }
}

impl FromStr for BinaryMatroid {
    type Err = MatroidError;

    /// Parses the text format. Lines starting with `#` are comments.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| MatroidError::Format("missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| MatroidError::Format(format!("bad header {header:?}: {e}")))?;
        let [r, n] = nums[..] else {
            return Err(MatroidError::Format(format!("bad header {header:?}")));
        };
        if r > n {
            return Err(MatroidError::Format(format!("rank {r} exceeds size {n}")));
        }
        let d = if n > r {
            let rows: Vec<&str> = lines.by_ref().take(r).collect();
            if rows.len() != r {
                return Err(MatroidError::Format(format!(
                    "expected {r} matrix rows, found {}",
                    rows.len()
                )));
            }
            let d: BitMatrix = rows.join("\n").parse()?;
            if d.n_cols() != n - r {
                return Err(MatroidError::Format(format!(
                    "matrix rows have {} entries, expected {}",
                    d.n_cols(),
                    n - r
                )));
            }
            d
        } else {
            BitMatrix::zeros(r, 0)?
        };
        let labels: Vec<Label> = lines
            .next()
            .map(|l| l.split_whitespace().map(Label::from).collect())
            .unwrap_or_default();
        if let Some(extra) = lines.next() {
            return Err(MatroidError::Format(format!("trailing line {extra:?}")));
        }
        Self::from_standard_form(&d, labels)
    }
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryMatroid")
            .field("rank", &self.rank())
            .field("labels", &self.labels)
            .field("rep", &self.rep)
            .finish()
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn mask_indices(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn check_distinct(labels: &[Label]) -> Result<(), MatroidError> {
    if labels.len() > MAX_ELEMENTS {
        return Err(Gf2Error::TooLarge(labels.len()).into());
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(MatroidError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn full_row_rank(rep: BitMatrix) -> BitMatrix {
    let r = rep.rank();
    if r == rep.n_rows() {
        return rep;
    }
    let reduced = rep.rref();
    BitMatrix::from_row_words(rep.n_cols(), reduced.row_words()[..r].to_vec())
        .expect("dimensions bounded")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_form(d: &str) -> BinaryMatroid {
        let d: BitMatrix = d.parse().unwrap();
        let n = d.n_rows() + d.n_cols();
        BinaryMatroid::from_standard_form(&d, numbered_labels(n)).unwrap()
    }

    #[test]
    fn free_matroid_from_empty_d() {
        let m =
            BinaryMatroid::from_standard_form(&BitMatrix::zeros(3, 0).unwrap(), numbered_labels(3))
                .unwrap();
        assert_eq!(m.rank(), 3);
        assert!(m.is_independent_mask(m.full_mask()));
        let d = m.dual();
        assert_eq!(d.rank(), 0);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn label_count_and_duplicates_rejected() {
        let d: BitMatrix = "11".parse().unwrap();
        assert!(matches!(
            BinaryMatroid::from_standard_form(&d, numbered_labels(2)),
            Err(MatroidError::LabelCount { .. })
        ));
        assert!(matches!(
            BinaryMatroid::from_standard_form(&d, vec!["a".into(), "b".into(), "a".into()]),
            Err(MatroidError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn triangle_is_u23() {
        let m = BinaryMatroid::from_graph(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.is_circuit(&ElementSet::from_ints([1, 2, 3])).unwrap());
        for pair in [[1, 2], [1, 3], [2, 3]] {
            assert_eq!(m.rank_of(&ElementSet::from_ints(pair)).unwrap(), 2);
        }
    }

    #[test]
    fn empty_graph_rejected() {
        assert_eq!(
            BinaryMatroid::from_graph(&[]),
            Err(MatroidError::EmptyGraph)
        );
    }

    #[test]
    fn unknown_label_rejected() {
        let m = std_form("11\n01");
        assert!(matches!(
            m.rank_of(&ElementSet::from_ints([9])),
            Err(MatroidError::UnknownLabel(_))
        ));
        assert!(m.delete(&ElementSet::from_ints([9])).is_err());
    }

    #[test]
    fn single_independent_element_is_not_a_circuit() {
        let m = std_form("11\n01");
        assert!(!m.is_circuit(&ElementSet::from_ints([1])).unwrap());
        assert_eq!(
            m.is_circuit(&ElementSet::new()),
            Err(MatroidError::EmptySet)
        );
    }

    #[test]
    fn simplify_keeps_one_per_parallel_class() {
        let m =
            BinaryMatroid::from_columns(2, &[0b01, 0b01, 0b10, 0, 0b11, 0b10], numbered_labels(6))
                .unwrap();
        assert!(!m.is_simple());
        let s = m.simplify();
        assert!(s.is_simple());
        assert_eq!(s.labels(), &["1".into(), "3".into(), "5".into()]);
    }

    #[test]
    fn contraction_drops_rank_by_rank_of_set() {
        let m = std_form("0111\n1011\n1101");
        let s = ElementSet::from_ints([1, 4]);
        let c = m.contract(&s).unwrap();
        assert_eq!(c.rank(), m.rank() - m.rank_of(&s).unwrap());
        assert_eq!(c.len(), m.len() - 2);
    }

    #[test]
    fn coextend_standard_inserts_after_identity() {
        let m = std_form("0111\n1011\n1101");
        let c = m.coextend_standard(0b0011, "new".into()).unwrap();
        assert!(c.is_standard_form());
        assert_eq!(c.labels()[3], Label::from("new"));
        assert_eq!(c.rank(), 4);
        assert_eq!(
            c.contract(&["new".into()].into_iter().collect())
                .unwrap()
                .rank(),
            3
        );
    }

    #[test]
    fn text_format_round_trips() {
        let m = std_form("0111\n1011\n1101");
        let text = m.to_text();
        assert!(text.starts_with("3 7\n"));
        let back: BinaryMatroid = text.parse().unwrap();
        assert_eq!(back, m);
        let with_comment = format!("# provenance\n{text}");
        assert_eq!(with_comment.parse::<BinaryMatroid>().unwrap(), m);
    }

    #[test]
    fn text_format_errors() {
        assert!("".parse::<BinaryMatroid>().is_err());
        assert!("2 4\n11\n".parse::<BinaryMatroid>().is_err());
        assert!("2 4\n11\n01\n1 2 3\n".parse::<BinaryMatroid>().is_err());
        assert!("3 2\n".parse::<BinaryMatroid>().is_err());
    }

    #[test]
    fn numeric_labels_sort_numerically() {
        let s = ElementSet::from_ints([10, 2, 1]);
        assert_eq!(s.to_string(), "{1, 2, 10}");
    }
}
