use qvir_exact::gcd::poly_gcd;
use qvir_exact::{LaurentPoly, Var};

fn x(v: Var) -> LaurentPoly {
    LaurentPoly::var(v)
}
fn k(n: i64) -> LaurentPoly {
    LaurentPoly::from_i64(n)
}

#[test]
fn common_factor_is_recovered() {
    // f = u^2 v - 3 a + 1, g = u + v^2, h = a v - 2
    let f = x(Var::U).pow(2).mul(&x(Var::V)).sub(&x(Var::A).mul(&k(3))).add(&k(1));
    let g = x(Var::U).add(&x(Var::V).pow(2));
    let h = x(Var::A).mul(&x(Var::V)).sub(&k(2));
    let d = poly_gcd(&f.mul(&g), &f.mul(&h));
    assert_eq!(d.primitive(), f.primitive());
}

#[test]
fn coprime_inputs_give_unit() {
    let f = x(Var::U).add(&k(1));
    let g = x(Var::U).sub(&k(1));
    assert!(poly_gcd(&f, &g).is_constant());
}

#[test]
fn monomial_part_is_extracted() {
    let f = x(Var::U).pow(3).mul(&x(Var::V));
    let g = x(Var::U).pow(2).mul(&x(Var::V).pow(4));
    let d = poly_gcd(&f, &g);
    assert_eq!(d.primitive(), x(Var::U).pow(2).mul(&x(Var::V)));
}

#[test]
fn high_degree_univariate() {
    let f = x(Var::U).pow(7).sub(&k(1));
    let g = x(Var::U).pow(5).sub(&k(1));
    assert_eq!(poly_gcd(&f, &g).primitive(), x(Var::U).sub(&k(1)));
}
