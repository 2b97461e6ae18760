use qvir::classical::{degeneration_suite, intertwining_check, kac_prime_check, r_prime, r_prime_formula, singular_jack, b_prime, labels, zero_set_symmetry};
use qvir_exact::{RatFunc, Var};

#[test]
fn kac_prime_through_level_three() {
    for n in 1..=3 {
        kac_prime_check(n).unwrap();
    }
}

#[test]
fn residues_and_jack_images_rs_three() {
    let sb = RatFunc::var(Var::Sb);
    for (r, s) in labels(3) {
        assert_eq!(r_prime(r, s).unwrap(), r_prime_formula(r, s));
        assert_eq!(singular_jack(r, s).unwrap(), b_prime(r, s, &(&sb * &sb)));
    }
}

#[test]
fn zero_set_duality() {
    assert!((1..=5).all(zero_set_symmetry));
}

#[test]
fn degeneration_small() {
    let checks = degeneration_suite(2, 2);
    assert!(checks.iter().all(|c| c.passed()), "{:?}", checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
}

#[test]
fn free_field_intertwines_to_level_four() {
    assert!(intertwining_check(4).passed());
}
