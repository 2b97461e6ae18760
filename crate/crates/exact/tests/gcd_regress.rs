use qvir_exact::{gcd::poly_gcd, RatFunc, Var};
fn p(terms: &[(i64, i32, i32)]) -> qvir_exact::LaurentPoly {
    let u = RatFunc::var(Var::U);
    let v = RatFunc::var(Var::V);
    let mut acc = RatFunc::zero();
    for &(c, a, b) in terms {
        acc = &acc + &(&RatFunc::from_i64(c) * &(&u.pow(a as i64).unwrap() * &v.pow(b as i64).unwrap()));
    }
    acc.numer().clone()
}
#[test]
fn bivariate_divisor() {
    let a = p(&[(-1,6,2),(1,6,0),(1,5,2),(-1,5,0),(1,4,2),(-1,4,0),(1,3,5),(-1,3,3),(-1,3,2),(1,3,0),(-1,2,5),(1,2,3),(-1,1,5),(1,1,3),(1,0,5),(-1,0,3)]);
    let b = p(&[(1,5,2),(-1,5,0),(1,4,3),(-1,4,2),(-1,4,1),(1,4,0),(1,3,4),(-1,3,3),(-2,3,2),(1,3,1),(1,3,0),(-1,2,4),(-1,2,3),(2,2,2),(1,2,1),(-1,2,0),(-1,1,4),(1,1,3),(1,1,2),(-1,1,1),(1,0,4),(-1,0,2)]);
    let g = poly_gcd(&a, &b);
    assert_eq!(g, b.primitive());
}
