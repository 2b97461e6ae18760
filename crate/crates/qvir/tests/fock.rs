use qvir::fock::{q1_corner_product, q1_met_corner, q1_normalization, q1_transition_closed, q1_transition_modes, verify_singular_normalization};
use qvir::partitions::partitions_of;

#[test]
fn normalization_for_small_rectangles() {
    for (r, s) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let n = verify_singular_normalization(r, s).unwrap();
        assert_eq!(n.scalar, n.expected);
    }
}

#[test]
fn q1_corner_for_rs_up_to_four() {
    for (r, s) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (2, 2), (4, 1)] {
        assert_eq!(q1_met_corner(r, s).unwrap(), q1_corner_product(r, s), "({},{})", r, s);
        q1_normalization(r, s).unwrap();
    }
}

#[test]
fn q1_two_paths_through_size_four() {
    for n in 1..=4 {
        for lam in partitions_of(n) {
            for r in 1..=2 {
                assert_eq!(q1_transition_closed(&lam, r), q1_transition_modes(&lam, r).unwrap(), "{} r={}", lam, r);
            }
        }
    }
}
