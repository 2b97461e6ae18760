//! Partition counts and the classification of degenerate weights.

use qvir::partitions::{classify_weights, count_p, count_q_n, Sign};

fn main() {
    for n in 0..=10 {
        print!("{} ", count_p(n));
    }
    println!();
    println!("dim of the (2,1) quotient at level 4 with N = 3: {:?}", count_q_n(3, 2, 1, 4));
    let c = classify_weights(2, 3, Sign::Plus).unwrap();
    println!("{:#?}", c);
}
