//! The undeformed side: Virasoro Gram determinants, R′ and B′, and the
//! ħ-degeneration of the deformed algebra.

use qvir::classical::{degeneration_suite, kac_prime_check, r_prime, singular_jack};

fn main() {
    for n in 1..=3 {
        println!("Kac' level {}: {}", n, kac_prime_check(n).map(|_| "ok").unwrap_or("mismatch"));
    }
    for (r, s) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
        println!("R'_({},{}) = {}", r, s, r_prime(r, s).unwrap());
        println!("B'_({},{}) = {}", r, s, singular_jack(r, s).unwrap());
    }
    for c in degeneration_suite(2, 2) {
        println!("{} [{}] {:?}", c.name, c.tag, c.status);
    }
}
