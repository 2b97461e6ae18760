//! Singular vectors at h = h_{r,s} and their images in the Fock space, which
//! are multiples of Macdonald functions of rectangular shape.

use qvir::fock::verify_singular_normalization;
use qvir::verma::singular_vector;

fn main() {
    for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let sv = singular_vector(r, s).expect("rs within bound");
        println!("v_({},{}):", r, s);
        for (lam, c) in sv.vector.terms() {
            println!("  T_-{}: {}", lam, c);
        }
        let n = verify_singular_normalization(r, s).expect("normalization holds");
        println!("  image / J = {}", n.scalar);
    }
}
