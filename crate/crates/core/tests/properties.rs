//! Randomised properties of the matroid kernel.

use binmat::connect::{is_3_connected, lambda_mask};
use binmat::iso::{canonical_form, is_isomorphic, verify_map, Isomorphism};
use binmat::matroid::numbered_labels;
use binmat::{BinaryMatroid, BitMatrix};
use proptest::prelude::*;

/// Standard-form matroids with rank 1..=5 and up to 11 elements.
fn matroid() -> impl Strategy<Value = BinaryMatroid> {
    (1usize..=5, 0usize..=6).prop_flat_map(|(r, k)| {
        proptest::collection::vec(0u64..(1 << k), r).prop_map(move |rows| {
            let d = BitMatrix::from_row_words(k, rows).unwrap();
            BinaryMatroid::from_standard_form(&d, numbered_labels(r + k)).unwrap()
        })
    })
}

fn with_perm() -> impl Strategy<Value = (BinaryMatroid, Vec<usize>)> {
    matroid().prop_flat_map(|m| {
        let order: Vec<usize> = (0..m.len()).collect();
        (Just(m), Just(order).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(m in matroid()) {
        let dd = m.dual().dual();
        prop_assert_eq!(dd.labels(), m.labels());
        prop_assert!(verify_map(&m, &dd, &Isomorphism::identity(&m).map).unwrap());
        prop_assert_eq!(m.dual().rank(), m.len() - m.rank());
    }

    #[test]
    fn lambda_is_symmetric(m in matroid(), x in any::<u64>()) {
        let x = x & m.full_mask();
        let d = m.dual();
        prop_assert_eq!(lambda_mask(&m, x), lambda_mask(&m, m.full_mask() & !x));
        prop_assert_eq!(lambda_mask(&m, x), lambda_mask(&d, x));
    }

    #[test]
    fn rank_and_lambda_are_submodular(m in matroid(), x in any::<u64>(), y in any::<u64>()) {
        let (x, y) = (x & m.full_mask(), y & m.full_mask());
        prop_assert!(m.rank_mask(x) + m.rank_mask(y) >= m.rank_mask(x | y) + m.rank_mask(x & y));
        prop_assert!(
            lambda_mask(&m, x) + lambda_mask(&m, y) >= lambda_mask(&m, x | y) + lambda_mask(&m, x & y)
        );
    }

    #[test]
    fn canonical_form_ignores_order((m, order) in with_perm()) {
        let p = m.reorder(&order);
        prop_assert_eq!(canonical_form(&m).unwrap(), canonical_form(&p).unwrap());
        let iso = is_isomorphic(&m, &p).expect("reordered copy is isomorphic");
        prop_assert!(verify_map(&m, &p, &iso.map).unwrap());
        prop_assert_eq!(is_3_connected(&m), is_3_connected(&p));
    }

    #[test]
    fn text_format_round_trips(m in matroid()) {
        let back: BinaryMatroid = m.to_text().parse().unwrap();
        let s = m.standardized();
        prop_assert_eq!(back.labels(), s.labels());
        prop_assert!(verify_map(&m, &back, &Isomorphism::identity(&m).map).unwrap());
    }

    #[test]
    fn canonical_forms_separate_what_isomorphism_separates(a in matroid(), b in matroid()) {
        let same_form = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        prop_assert_eq!(same_form, is_isomorphic(&a, &b).is_some());
    }
}
