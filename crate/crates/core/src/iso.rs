//! Canonical forms and isomorphism witnesses for binary matroids.
//!
//! A binary matroid is determined by its columns up to an invertible change
//! of coordinates. Fixing an ordered basis fixes the coordinates, so the
//! canonical form is the smallest sorted column list over all ordered bases
//! (taken on whichever of the matroid and its dual has the smaller rank).
//!
//! Witness search uses the same fact from the other side: an injective linear
//! map is pinned down by where it sends a basis, so [`find_embedding`] only
//! branches on basis images and checks every other element by counting.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::XorBasis;
use crate::matroid::{mask_indices, BinaryMatroid, Label};

/// Largest ground set accepted by [`canonical_form`].
pub const MAX_CANONICAL_SIZE: usize = 20;

/// Largest rank (after passing to the dual when that is smaller) whose
/// row orderings are enumerated.
const MAX_PERMUTED_ROWS: usize = 8;

/// Largest ground set for which [`verify_map`] compares every subset.
pub const EXHAUSTIVE_VERIFY_SIZE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("canonical form limited to {MAX_CANONICAL_SIZE} elements, got {0}")]
    TooLarge(usize),
    #[error("map is not a bijection between the ground sets: {0}")]
    NotBijection(String),
}

/// Basis- and labelling-invariant fingerprint.
///
/// Layout: `[rank, size, dual_flag, columns...]`, each column two bytes
/// big-endian. Equal fingerprints mean isomorphic matroids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn rank(&self) -> usize {
        self.0[0] as usize
    }

    pub fn size(&self) -> usize {
        self.0[1] as usize
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.len() % 2 != 0 {
            return Err(serde::de::Error::custom("odd-length hex string"));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
            .collect::<Result<Vec<u8>, _>>()
            .map(CanonicalForm)
            .map_err(serde::de::Error::custom)
    }
}

/// Computes the canonical form.
///
/// Works directly on multisets of columns, so loops and parallel elements
/// need no special handling.
pub fn canonical_form(m: &BinaryMatroid) -> Result<CanonicalForm, IsoError> {
    let n = m.len();
    if n > MAX_CANONICAL_SIZE {
        return Err(IsoError::TooLarge(n));
    }
    let r = m.rank();
    if r.min(n - r) > MAX_PERMUTED_ROWS {
        return Err(IsoError::TooLarge(n));
    }
    let (dual_flag, source) = if 2 * r > n {
        (1u8, m.dual())
    } else {
        (0u8, m.clone())
    };
    let best = min_sorted_columns(&source);
    let mut bytes = Vec::with_capacity(3 + 2 * best.len());
    bytes.extend([r as u8, n as u8, dual_flag]);
    for c in best {
        bytes.extend(c.to_be_bytes());
    }
    Ok(CanonicalForm(bytes))
}

/// Minimum over ordered bases of the sorted list of non-basis coordinate
/// vectors.
fn min_sorted_columns(m: &BinaryMatroid) -> Vec<u16> {
    let n = m.len();
    let r = m.rank();
    let bases: Vec<u64> = k_subsets(n, r)
        .filter(|&b| m.is_independent_mask(b))
        .collect();
    let perms = permutations(r);
    let best_for = |basis: u64| -> Vec<u16> {
        let coords = coordinates(m, basis);
        let mut best: Option<Vec<u16>> = None;
        let mut buf = vec![0u16; coords.len()];
        for perm in perms.iter() {
            for (slot, &c) in buf.iter_mut().zip(&coords) {
                *slot = permute_bits(c, perm);
            }
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap_or_default()
    };
    if bases.len() * perms.len() > 20_000 {
        bases
            .par_iter()
            .map(|&b| best_for(b))
            .min()
            .unwrap_or_default()
    } else {
        bases.iter().map(|&b| best_for(b)).min().unwrap_or_default()
    }
}

/// Coordinates of each non-basis element relative to the basis (bit `i` =
/// coefficient of the `i`-th basis element in index order).
fn coordinates(m: &BinaryMatroid, basis: u64) -> Vec<u16> {
    let cols = m.columns();
    let basis_idx: Vec<usize> = mask_indices(basis).collect();
    // Gauss-Jordan on the r×r basis block, tracking the inverse.
    let r = basis_idx.len();
    let mut rows: Vec<(u64, u64)> = (0..r)
        .map(|i| {
            let row = basis_idx
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &b)| acc | ((cols[b] >> i & 1) << j));
            (row, 1u64 << i)
        })
        .collect();
    for col in 0..r {
        let p = (col..r)
            .find(|&k| rows[k].0 >> col & 1 == 1)
            .expect("basis is independent");
        rows.swap(col, p);
        let pivot = rows[col];
        for (k, row) in rows.iter_mut().enumerate() {
            if k != col && row.0 >> col & 1 == 1 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
    }
    // rows[i].1 is row i of the inverse: coefficient i = parity(inv_i & v).
    (0..m.len())
        .filter(|i| basis >> i & 1 == 0)
        .map(|e| {
            let v = cols[e];
            (0..r).fold(0u16, |acc, i| {
                acc | (((rows[i].1 & v).count_ones() as u16 & 1) << i)
            })
        })
        .collect()
}

fn permute_bits(v: u16, perm: &[u8]) -> u16 {
    perm.iter()
        .enumerate()
        .fold(0u16, |acc, (i, &p)| acc | ((v >> i & 1) << p))
}

fn permutations(r: usize) -> &'static [Vec<u8>] {
    static CACHE: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_PERMUTED_ROWS).map(all_permutations).collect());
    &cache[r]
}

fn all_permutations(r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..r as u8).collect();
    heap_permute(r, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

/// All `k`-element subsets of `0..n` as masks, in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == 0 {
            done = true;
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

/// A label bijection witnessing an isomorphism `M → N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub map: BTreeMap<Label, Label>,
}

impl Isomorphism {
    pub fn identity(m: &BinaryMatroid) -> Self {
        Self {
            map: m.labels().iter().map(|l| (l.clone(), l.clone())).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self
                .map
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Option<Self> {
        self.map
            .iter()
            .map(|(a, b)| other.map.get(b).map(|c| (a.clone(), c.clone())))
            .collect::<Option<_>>()
            .map(|map| Self { map })
    }
}

/// Returns a witness bijection when `m ≅ n`.
pub fn is_isomorphic(m: &BinaryMatroid, n: &BinaryMatroid) -> Option<Isomorphism> {
    if m.len() != n.len() || m.rank() != n.rank() {
        return None;
    }
    let pos = find_embedding(m, n.columns(), n.full_mask())?;
    Some(Isomorphism {
        map: pos
            .iter()
            .enumerate()
            .map(|(i, &j)| (m.labels()[i].clone(), n.labels()[j].clone()))
            .collect(),
    })
}

/// Checks that `map` is an isomorphism from `m` to `n`.
///
/// Up to [`EXHAUSTIVE_VERIFY_SIZE`] elements every subset's rank is compared.
/// Beyond that, the map is checked on a certificate that is complete for
/// binary matroids: the image of a basis must be a basis, and every element
/// must have the same coordinates relative to the basis as its image has
/// relative to the image basis.
pub fn verify_map(
    m: &BinaryMatroid,
    n: &BinaryMatroid,
    map: &BTreeMap<Label, Label>,
) -> Result<bool, IsoError> {
    let perm = as_permutation(m, n, map)?;
    if m.rank() != n.rank() {
        return Ok(false);
    }
    if m.len() <= EXHAUSTIVE_VERIFY_SIZE {
        let image = |mask: u64| mask_indices(mask).fold(0u64, |acc, i| acc | 1 << perm[i]);
        return Ok((0..=m.full_mask()).all(|s| m.rank_mask(s) == n.rank_mask(image(s))));
    }
    Ok(certificate_holds(m, n, &perm))
}

/// The spanning-certificate check on its own, for any size.
pub fn verify_map_by_certificate(
    m: &BinaryMatroid,
    n: &BinaryMatroid,
    map: &BTreeMap<Label, Label>,
) -> Result<bool, IsoError> {
    let perm = as_permutation(m, n, map)?;
    Ok(m.rank() == n.rank() && certificate_holds(m, n, &perm))
}

fn certificate_holds(m: &BinaryMatroid, n: &BinaryMatroid, perm: &[usize]) -> bool {
    let basis = m.greedy_basis();
    let image = mask_indices(basis).fold(0u64, |acc, i| acc | 1 << perm[i]);
    if !n.is_independent_mask(image) || image.count_ones() as usize != n.rank() {
        return false;
    }
    // Coordinates of the image relative to the image basis, with basis
    // elements taken in the order of their preimages.
    let order: Vec<usize> = mask_indices(basis).map(|i| perm[i]).collect();
    let m_coords = coordinates_all(m, &mask_indices(basis).collect::<Vec<_>>());
    let n_coords = coordinates_all(n, &order);
    (0..m.len()).all(|e| m_coords[e] == n_coords[perm[e]])
}

/// Coordinates of every element relative to an ordered basis.
fn coordinates_all(m: &BinaryMatroid, basis: &[usize]) -> Vec<u64> {
    let cols = m.columns();
    let r = basis.len();
    let mut rows: Vec<(u64, u64)> = (0..r)
        .map(|i| {
            let row = basis
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &b)| acc | ((cols[b] >> i & 1) << j));
            (row, 1u64 << i)
        })
        .collect();
    for col in 0..r {
        let p = (col..r)
            .find(|&k| rows[k].0 >> col & 1 == 1)
            .expect("basis is independent");
        rows.swap(col, p);
        let pivot = rows[col];
        for (k, row) in rows.iter_mut().enumerate() {
            if k != col && row.0 >> col & 1 == 1 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
    }
    cols.iter()
        .map(|&v| {
            (0..r).fold(0u64, |acc, i| {
                acc | (((rows[i].1 & v).count_ones() as u64) & 1) << i
            })
        })
        .collect()
}

fn as_permutation(
    m: &BinaryMatroid,
    n: &BinaryMatroid,
    map: &BTreeMap<Label, Label>,
) -> Result<Vec<usize>, IsoError> {
    if m.len() != n.len() || map.len() != m.len() {
        return Err(IsoError::NotBijection(format!(
            "sizes {} → {} with {} pairs",
            m.len(),
            n.len(),
            map.len()
        )));
    }
    let mut used = vec![false; n.len()];
    m.labels()
        .iter()
        .map(|l| {
            let target = map
                .get(l)
                .ok_or_else(|| IsoError::NotBijection(format!("{l} unmapped")))?;
            let j = n
                .index_of(target)
                .map_err(|_| IsoError::NotBijection(format!("{target} not in target")))?;
            if std::mem::replace(&mut used[j], true) {
                return Err(IsoError::NotBijection(format!("{target} hit twice")));
            }
            Ok(j)
        })
        .collect()
}

/// Finds an injective map from the elements of `pattern` to host elements in
/// `avail` such that some injective linear map sends each pattern column to
/// the host column of its image. Returns `pos[i]` = host index of pattern
/// element `i`.
///
/// With `pattern` of full rank this decides whether `pattern` is isomorphic
/// to the restriction of the host to the image set.
pub fn find_embedding(pattern: &BinaryMatroid, host: &[u64], avail: u64) -> Option<Vec<usize>> {
    let n = pattern.len();
    if n > avail.count_ones() as usize {
        return None;
    }
    let basis: Vec<usize> = mask_indices(pattern.greedy_basis()).collect();
    let r = basis.len();
    let coords = coordinates_all(pattern, &basis);
    // Non-basis elements, bucketed by the last basis position they need.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    let mut loops = Vec::new();
    for (e, &c) in coords.iter().enumerate() {
        if basis.contains(&e) {
            continue;
        }
        if c == 0 {
            loops.push(e);
        } else {
            due[63 - c.leading_zeros() as usize].push(e);
        }
    }
    let mut host_count: HashMap<u64, usize> = HashMap::new();
    for i in mask_indices(avail) {
        *host_count.entry(host[i]).or_default() += 1;
    }
    if loops.len() > host_count.get(&0).copied().unwrap_or(0) {
        return None;
    }
    let mut search = Search {
        host,
        avail,
        basis: &basis,
        coords: &coords,
        due: &due,
        host_count,
        images: Vec::with_capacity(r),
        image_vecs: Vec::with_capacity(r),
        demand: HashMap::new(),
    };
    *search.demand.entry(0).or_default() += loops.len();
    if !search.run() {
        return None;
    }
    // Assign concrete host elements: basis images first, then the rest by
    // vector in element order.
    let mut pos = vec![usize::MAX; n];
    let mut used = 0u64;
    for (k, &b) in basis.iter().enumerate() {
        pos[b] = search.images[k];
        used |= 1 << search.images[k];
    }
    for e in 0..n {
        if pos[e] != usize::MAX {
            continue;
        }
        let v = combine(&search.image_vecs, coords[e]);
        let j = mask_indices(avail & !used).find(|&j| host[j] == v)?;
        pos[e] = j;
        used |= 1 << j;
    }
    Some(pos)
}

fn combine(image_vecs: &[u64], coeffs: u64) -> u64 {
    mask_indices(coeffs).fold(0, |acc, i| acc ^ image_vecs[i])
}

struct Search<'a> {
    host: &'a [u64],
    avail: u64,
    basis: &'a [usize],
    coords: &'a [u64],
    due: &'a [Vec<usize>],
    host_count: HashMap<u64, usize>,
    images: Vec<usize>,
    image_vecs: Vec<u64>,
    demand: HashMap<u64, usize>,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        let k = self.images.len();
        if k == self.basis.len() {
            return true;
        }
        let mut span = XorBasis::default();
        for &v in &self.image_vecs {
            span.insert(v);
        }
        let used = self.images.iter().fold(0u64, |acc, &i| acc | 1 << i);
        let mut tried: Vec<u64> = Vec::new();
        for h in mask_indices(self.avail & !used) {
            let v = self.host[h];
            // Host elements with equal vectors are interchangeable here.
            if tried.contains(&v) || span.contains(v) {
                continue;
            }
            tried.push(v);
            self.images.push(h);
            self.image_vecs.push(v);
            let mut added: Vec<u64> = vec![v];
            for &e in &self.due[k] {
                added.push(combine(&self.image_vecs, self.coords[e]));
            }
            for &w in &added {
                *self.demand.entry(w).or_default() += 1;
            }
            let feasible = added
                .iter()
                .all(|w| self.demand[w] <= self.host_count.get(w).copied().unwrap_or(0));
            if feasible && self.run() {
                return true;
            }
            for &w in &added {
                *self.demand.get_mut(&w).expect("just inserted") -= 1;
            }
            self.images.pop();
            self.image_vecs.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::matroid::numbered_labels;

    fn std_form(d: &str) -> BinaryMatroid {
        let d: BitMatrix = d.parse().unwrap();
        let n = d.n_rows() + d.n_cols();
        BinaryMatroid::from_standard_form(&d, numbered_labels(n)).unwrap()
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(5, 2).count(), 10);
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(k_subsets(2, 3).count(), 0);
        assert!(k_subsets(6, 3).all(|m| m.count_ones() == 3 && m < 64));
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        let mut p = permutations(5).to_vec();
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 120);
    }

    #[test]
    fn canonical_form_ignores_representation() {
        let m = std_form("0111\n1011\n1101");
        let reordered = m.reorder(&[6, 2, 4, 0, 1, 5, 3]).relabel_positional();
        let rowmixed = BinaryMatroid::from_matrix(
            BitMatrix::from_row_words(
                7,
                vec![
                    m.rep().row(0) ^ m.rep().row(1),
                    m.rep().row(1),
                    m.rep().row(2) ^ m.rep().row(0),
                ],
            )
            .unwrap(),
            numbered_labels(7),
        )
        .unwrap();
        let c = canonical_form(&m).unwrap();
        assert_eq!(canonical_form(&reordered).unwrap(), c);
        assert_eq!(canonical_form(&rowmixed).unwrap(), c);
    }

    #[test]
    fn canonical_form_separates_u24_from_parallel_pair() {
        let u24 = std_form("111");
        let other = std_form("110");
        assert_ne!(
            canonical_form(&u24).unwrap(),
            canonical_form(&other).unwrap()
        );
        assert!(is_isomorphic(&u24, &other).is_none());
    }

    #[test]
    fn witness_verifies() {
        let m = std_form("0111\n1011\n1101");
        let n = m.reorder(&[3, 1, 6, 0, 2, 5, 4]).relabel_positional();
        let iso = is_isomorphic(&m, &n).expect("isomorphic");
        assert!(verify_map(&m, &n, &iso.map).unwrap());
        assert!(verify_map_by_certificate(&m, &n, &iso.map).unwrap());
        assert!(verify_map(&n, &m, &iso.inverse().map).unwrap());
    }

    #[test]
    fn verify_map_rejects_non_bijections() {
        let m = std_form("11\n01");
        let mut map = Isomorphism::identity(&m).map;
        map.insert("1".into(), "2".into());
        assert!(matches!(
            verify_map(&m, &m, &map),
            Err(IsoError::NotBijection(_))
        ));
    }

    #[test]
    fn embedding_handles_loops_and_parallels() {
        let pattern = BinaryMatroid::from_columns(1, &[1, 1, 0], numbered_labels(3)).unwrap();
        let host = [0b01u64, 0, 0b10, 0b01, 0b11];
        let pos = find_embedding(&pattern, &host, 0b11111).unwrap();
        assert_eq!(host[pos[0]], host[pos[1]]);
        assert_ne!(pos[0], pos[1]);
        assert_eq!(host[pos[2]], 0);
        assert!(find_embedding(&pattern, &host, 0b11101).is_none());
    }
}
