//! Residue factors of the Gram corner at the poles Q = q^r t^{-s}, against
//! the product formula.

use qvir::verma::r_extract;

fn main() {
    for (r, s) in [(1, 1), (1, 2), (2, 1)] {
        let res = r_extract(r, s).expect("pole present");
        println!("R_({},{}) = {}", r, s, res.dn_dq);
        println!("  matches product formula: {}", res.dn_dq == res.expected);
    }
}
