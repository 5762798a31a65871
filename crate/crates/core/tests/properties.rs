use proptest::prelude::*;

use isodrum_core::algebra::{auxiliary, checkerboard, find_intertwiner, structural};
use isodrum_core::geometry::{apply_word, are_equivalent, dv_from_json, dv_to_json, Tile};
use isodrum_core::group::{group_from_dv, Permutation, PermutationGroup};
use isodrum_core::Label;

fn label() -> impl Strategy<Value = Label> {
    (0usize..3).prop_map(Label::from_index)
}

fn scalene() -> Tile {
    Tile::new([1.0, 1.1, 1.3], Label::ALL).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflection_words_satisfy_the_structural_identities(word in prop::collection::vec(label(), 0..9)) {
        for tile in [Tile::equilateral(), scalene()] {
            // overlapping words are rejected, the rest must be consistent
            let Ok(dv) = apply_word(&tile, &word) else { continue };
            let n = dv.n_copies();
            let x = auxiliary(&dv);
            let q = structural(&dv);
            prop_assert_eq!(&x, &(&q * q.transpose()));
            let w = checkerboard(&dv).unwrap();
            for i in 0..n {
                let s: i64 = (0..n).map(|j| x[(i, j)] * w[j]).sum();
                prop_assert_eq!(s, 0);
            }
            // every copy has three sides
            let sides: usize = dv.internal_sides().len() * 2 + dv.boundary_sides().len();
            prop_assert_eq!(sides, 3 * n);
        }
    }

    #[test]
    fn json_round_trip_is_congruent(word in prop::collection::vec(label(), 0..7)) {
        let Ok(dv) = apply_word(&scalene(), &word) else { return Ok(()) };
        let back = dv_from_json(&dv_to_json(&dv)).unwrap();
        prop_assert!(are_equivalent(&dv, &back));
        prop_assert_eq!(back.internal_sides(), dv.internal_sides());
    }

    #[test]
    fn a_volume_intertwines_with_itself(word in prop::collection::vec(label(), 1..6)) {
        let Ok(dv) = apply_word(&Tile::equilateral(), &word) else { return Ok(()) };
        let m = find_intertwiner(&dv, &dv).unwrap();
        let n = dv.n_copies();
        let defect = (&m * m.transpose() - nalgebra::DMatrix::identity(n, n)).norm();
        prop_assert!(defect < 1e-10);
    }

    #[test]
    fn generators_are_involutions(word in prop::collection::vec(label(), 0..8)) {
        let Ok(dv) = apply_word(&Tile::equilateral(), &word) else { return Ok(()) };
        let g = group_from_dv(&dv);
        for p in g.generators() {
            prop_assert!(p.then(p).is_identity());
        }
        // a path of copies generates a transitive group
        prop_assert!(g.is_transitive());
        prop_assert_eq!(g.order() % dv.n_copies() as u128, 0);
    }

    #[test]
    fn permutation_cycle_notation_round_trips(images in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        let q = Permutation::parse_cycles(7, &p.to_string()).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert!(p.then(&p.inverse()).is_identity());
    }
}

#[test]
fn symmetric_and_alternating_orders() {
    let s5 = PermutationGroup::from_cycle_strings(5, &["(1,2)", "(1,2,3,4,5)"]).unwrap();
    assert_eq!(s5.order(), 120);
    let a5 = PermutationGroup::from_cycle_strings(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap();
    assert_eq!(a5.order(), 60);
    assert_eq!(a5.conjugacy_classes().unwrap().len(), 5);
}
