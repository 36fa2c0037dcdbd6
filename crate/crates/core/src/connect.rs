//! Connectivity function, k-separations and the inducer test.
//!
//! Everything here is a subset scan. Ground sets in this problem stay below
//! twenty elements, and a scan can be audited by reading it.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::MinorWitness;
use crate::iso::verify_map;
use crate::matroid::{mask_indices, BinaryMatroid, ElementSet, MatroidError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("minor witness does not reproduce the minor: {0}")]
    BadWitness(String),
    #[error("({0}) is not an exact 3-separation of the minor")]
    NotExactThreeSeparation(String),
}

/// A k-separation `(side_a, E - side_a)` together with its flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub side_a: ElementSet,
    pub order: usize,
    pub exact: bool,
    pub minimal: bool,
}

/// `λ(X) = r(X) + r(E - X) - r(M)`.
pub fn lambda(m: &BinaryMatroid, x: &ElementSet) -> Result<usize, MatroidError> {
    Ok(lambda_mask(m, m.mask_of(x)?))
}

pub fn lambda_mask(m: &BinaryMatroid, x: u64) -> usize {
    let rest = m.full_mask() & !x;
    m.rank_mask(x) + m.rank_mask(rest) - m.rank()
}

/// Whether `(x, E - x)` is a k-separation.
pub fn is_k_separation(m: &BinaryMatroid, x: &ElementSet, k: usize) -> Result<bool, MatroidError> {
    Ok(separation(m, x, k)?.is_some())
}

/// The k-separation `(x, E - x)` with its exactness and minimality flags, or
/// `None` when the partition is not a k-separation.
pub fn separation(
    m: &BinaryMatroid,
    x: &ElementSet,
    k: usize,
) -> Result<Option<Separation>, MatroidError> {
    let mask = m.mask_of(x)?;
    let a = mask.count_ones() as usize;
    let b = m.len() - a;
    if k == 0 || a < k || b < k {
        return Ok(None);
    }
    let l = lambda_mask(m, mask);
    if l > k - 1 {
        return Ok(None);
    }
    let exact = l == k - 1;
    Ok(Some(Separation {
        side_a: x.clone(),
        order: k,
        exact,
        minimal: exact && (a == k || b == k),
    }))
}

/// First `X` (containing element 0, so each partition is seen once) whose
/// sides have at least `min_side` elements and `λ(X) <= max_lambda`.
fn find_partition(m: &BinaryMatroid, min_side: usize, max_lambda: usize) -> Option<u64> {
    let n = m.len();
    if n < 2 * min_side.max(1) {
        return None;
    }
    let full = m.full_mask();
    let check = |rest: u64| {
        let x = 1 | rest << 1;
        let a = x.count_ones() as usize;
        (a >= min_side && n - a >= min_side && x != full && lambda_mask(m, x) <= max_lambda)
            .then_some(x)
    };
    let half = 1u64 << (n - 1);
    if n >= 14 {
        (0..half).into_par_iter().find_map_first(check)
    } else {
        (0..half).find_map(check)
    }
}

/// All k-separations, each partition reported once (side containing the
/// first element).
pub fn k_separations(m: &BinaryMatroid, k: usize) -> Vec<Separation> {
    let n = m.len();
    if k == 0 || n < 2 * k {
        return Vec::new();
    }
    let full = m.full_mask();
    (0..1u64 << (n - 1))
        .map(|rest| 1 | rest << 1)
        .filter(|&x| x != full)
        .filter_map(|x| {
            let a = x.count_ones() as usize;
            let l = lambda_mask(m, x);
            (a >= k && n - a >= k && l < k).then(|| Separation {
                side_a: m.set_of_mask(x),
                order: k,
                exact: l == k - 1,
                minimal: l == k - 1 && (a == k || n - a == k),
            })
        })
        .collect()
}

/// No 1- or 2-separation. Matroids with at most three elements count as
/// 3-connected exactly when they are simple and cosimple.
pub fn is_3_connected(m: &BinaryMatroid) -> bool {
    if m.len() <= 3 {
        return m.is_simple() && m.is_cosimple();
    }
    find_partition(m, 1, 0).is_none() && find_partition(m, 2, 1).is_none()
}

/// 3-connected and `λ(A) >= 3` whenever both sides have at least four
/// elements.
pub fn is_internally_4_connected(m: &BinaryMatroid) -> bool {
    is_3_connected(m) && find_partition(m, 4, 2).is_none()
}

/// A non-minimal exact 3-separation, if one exists.
pub fn non_minimal_exact_3_separation(m: &BinaryMatroid) -> Option<Separation> {
    let x = find_partition(m, 4, 2)?;
    let s = separation(m, &m.set_of_mask(x), 3).ok()??;
    s.exact.then_some(s)
}

/// Whether `m` has a 3-separation `(X, Y)` with the witness images of `a`
/// inside `X` and of `b` inside `Y`.
///
/// `witness` must present `minor` as a minor of `m`; `(a, b)` must be an
/// exact 3-separation of `minor`. Every 3-separation of `m` counts, exact or
/// not.
pub fn induces_separation(
    m: &BinaryMatroid,
    minor: &BinaryMatroid,
    a: &ElementSet,
    b: &ElementSet,
    witness: &MinorWitness,
) -> Result<bool, ConnectError> {
    let am = minor.mask_of(a)?;
    let bm = minor.mask_of(b)?;
    if am & bm != 0 || am | bm != minor.full_mask() {
        return Err(ConnectError::NotExactThreeSeparation(format!("{a} | {b}")));
    }
    match separation(minor, a, 3)? {
        Some(s) if s.exact => {}
        _ => return Err(ConnectError::NotExactThreeSeparation(format!("{a} | {b}"))),
    }
    let reduced = m
        .minor(&witness.contract_set, &witness.delete_set)
        .map_err(|e| ConnectError::BadWitness(e.to_string()))?;
    match verify_map(&reduced, minor, &witness.iso.map) {
        Ok(true) => {}
        Ok(false) => return Err(ConnectError::BadWitness("map is not an isomorphism".into())),
        Err(e) => return Err(ConnectError::BadWitness(e.to_string())),
    }
    let back = witness.iso.inverse();
    let pull = |s: &ElementSet| -> Result<u64, ConnectError> {
        let image: ElementSet = s.iter().map(|l| back.map[l].clone()).collect();
        Ok(m.mask_of(&image)?)
    };
    let xa = pull(a)?;
    let yb = pull(b)?;
    let free: Vec<usize> = mask_indices(m.full_mask() & !xa & !yb).collect();
    let n = m.len();
    Ok((0..1u64 << free.len()).any(|bits| {
        let x = mask_indices(bits).fold(xa, |acc, i| acc | 1 << free[i]);
        let size = x.count_ones() as usize;
        size >= 3 && n - size >= 3 && lambda_mask(m, x) <= 2
    }))
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
    fn lambda_of_empty_and_full() {
        let m = std_form("0111\n1011\n1101");
        assert_eq!(lambda(&m, &ElementSet::new()).unwrap(), 0);
        assert_eq!(lambda(&m, &m.ground_set()).unwrap(), 0);
    }

    #[test]
    fn small_side_is_never_a_separation() {
        let m = std_form("0111\n1011\n1101");
        assert!(!is_k_separation(&m, &ElementSet::from_ints([1, 2]), 3).unwrap());
    }

    #[test]
    fn parallel_pair_breaks_3_connectivity() {
        // F7 with one element doubled.
        let f7 = std_form("0111\n1011\n1101");
        assert!(is_3_connected(&f7));
        let doubled = f7.extend(f7.columns()[3], "8".into()).unwrap();
        assert!(!is_3_connected(&doubled));
        let seps = k_separations(&doubled, 2);
        assert!(seps
            .iter()
            .any(|s| s.side_a.len() == 2 || s.side_a.len() == 6));
    }

    #[test]
    fn tiny_matroid_convention() {
        // U(2,3) is simple but its dual has a parallel class.
        let u23 = std_form("1\n1");
        assert!(u23.is_simple());
        assert!(!is_3_connected(&u23));
        let free =
            BinaryMatroid::from_standard_form(&BitMatrix::zeros(2, 0).unwrap(), numbered_labels(2))
                .unwrap();
        assert!(!is_3_connected(&free));
    }
}
