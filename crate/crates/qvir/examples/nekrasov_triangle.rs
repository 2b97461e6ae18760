//! The instanton coefficients F_n three ways: Nekrasov sum, pole recursion and
//! the Gram corner under the bridge h = Q^{1/2} + Q^{-1/2}.

use qvir::agt::{gram_f, nekrasov_f, recursion_f, verify_triangle, Mode, BRIDGE};

fn main() {
    println!("F_1 = {}", nekrasov_f(1));
    for n in 1..=2 {
        let f = nekrasov_f(n);
        println!("n = {}: recursion {} gram {}", n, recursion_f(n) == f, gram_f(n, BRIDGE).unwrap() == f);
    }
    for c in verify_triangle(3..=5, Mode::Modular, BRIDGE, 3, 1) {
        println!("{} [{}] {:?}", c.name, c.tag, c.status);
    }
}
