use qvir::agt::{nekrasov_f, pole_containment, q_inversion, recursion_f, residue_law, verify_triangle, Bridge, Mode, BRIDGE};

#[test]
fn symbolic_triangle_through_three() {
    let checks = verify_triangle(0..=3, Mode::Symbolic, BRIDGE, 1, 0);
    assert_eq!(checks.len(), 4);
    assert!(checks.iter().all(|c| c.passed()), "{:?}", checks);
}

#[test]
fn modular_triangle_at_four_and_five() {
    let checks = verify_triangle(4..=5, Mode::Modular, BRIDGE, 2, 11);
    assert!(checks.iter().all(|c| c.passed()), "{:?}", checks);
}

#[test]
fn bridge_a_is_rejected() {
    let checks = verify_triangle(1..=1, Mode::Symbolic, Bridge::A, 1, 0);
    assert!(!checks[0].passed());
}

#[test]
fn residue_law_to_two() {
    for n in 1..=2 {
        assert!(residue_law(n).iter().all(|c| c.passed()));
    }
}

#[test]
fn inversion_and_poles() {
    assert!(q_inversion(3).passed());
    assert!(pole_containment(4, 3).passed());
}

#[test]
fn recursion_matches_nekrasov_at_two() {
    assert_eq!(recursion_f(2), nekrasov_f(2));
}
