//! Level-2 Gram matrix of the deformed Verma module, computed twice: through
//! the free-field realization and through the defining relation.

use qvir::verma::{gram, gram_abstract, WeightSpec};

fn main() {
    let n = 2;
    let fock = gram(n, &WeightSpec::Generic).expect("level within bound");
    let abs = gram_abstract(n, &WeightSpec::Generic);
    for (i, row) in fock.entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            println!("<T_-{}, T_-{}> = {}", fock.parts[i], fock.parts[j], x);
        }
    }
    println!("symmetric: {}", fock.is_symmetric());
    println!("both constructions agree: {}", fock.entries == abs.entries);
}
