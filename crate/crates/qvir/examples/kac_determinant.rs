//! Kac determinant constants C_n at low levels, proved by interpolation in h.

use qvir::verma::kac_check;

fn main() {
    for n in 1..=3 {
        match kac_check(n) {
            Ok(c) => println!("C_{} = {}", n, c),
            Err(e) => println!("level {}: {}", n, e),
        }
    }
}
