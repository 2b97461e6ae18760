//! Macdonald and Jack functions in the power-sum basis, and the limit q -> 1
//! taking one to the other.

use qvir::partitions::{partitions_of, Partition};
use qvir::symfunc::{jack, macdonald, macdonald_to_jack_limit, Form};

fn main() {
    for lam in partitions_of(3) {
        println!("P_{} = ", lam);
        for (mu, c) in macdonald(&lam, Form::P).unwrap().terms() {
            println!("  p_{}: {}", mu, c);
        }
    }
    let lam = Partition::new(vec![2, 1]);
    println!("J_{} (Jack) = ", lam);
    for (mu, c) in jack(&lam, Form::J).unwrap().terms() {
        println!("  p_{}: {}", mu, c);
    }
    println!("q -> 1 limit of J_{} (Macdonald):", lam);
    for (mu, c) in macdonald_to_jack_limit(&lam, 3).unwrap().terms() {
        println!("  p_{}: {}", mu, c);
    }
}
