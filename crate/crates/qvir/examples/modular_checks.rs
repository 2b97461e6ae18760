//! Randomized identity checks over F_p, p = 2^61 - 1: pole containment of the
//! recursion and the Q <-> 1/Q symmetry of the Nekrasov coefficients.

use qvir::agt::{pole_containment, q_inversion};

fn main() {
    for n in 1..=5 {
        let c = pole_containment(n, 42);
        println!("{}: {:?} {:?}", c.name, c.status, c.values);
    }
    let c = q_inversion(3);
    println!("{}: {:?}", c.name, c.status);
}
