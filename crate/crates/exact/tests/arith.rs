use num_bigint::BigInt;
use num_rational::BigRational;
use qvir_exact::{evaluate, LaurentPoly, RatFunc, Value, Var};

fn u() -> RatFunc {
    RatFunc::var(Var::U)
}
fn v() -> RatFunc {
    RatFunc::var(Var::V)
}
fn one() -> RatFunc {
    RatFunc::one()
}
fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn additive_inverse() {
    let a = u().pow(2).unwrap();
    assert!(a.add(&a.neg()).is_zero());
}

#[test]
fn multiplicative_inverse() {
    let d = one() - v().pow(2).unwrap();
    let f = (one() / d.clone()) * d;
    assert!(f.is_one());
}

#[test]
fn partial_fractions_combine() {
    let f = one() / (one() - u()) + one() / (one() + u());
    let expected = RatFunc::from_i64(2) / (one() - u().pow(2).unwrap());
    assert_eq!(f, expected);
    // independent check: at u = 2 the two sides are 2/(-3) and -1 + 1/3
    let val = evaluate(&f, &[(Var::U, q(2, 1))], None).unwrap();
    assert_eq!(val, Value::Rational(q(-1, 1) + q(1, 3)));
}

#[test]
fn canonical_denominator_sign_and_content() {
    // (2u)/(-4 + 4u) reduces to u/(2u - 2) with primitive positive denominator
    let f = RatFunc::new(
        LaurentPoly::var(Var::U).scale(&q(2, 1)),
        LaurentPoly::from_i64(-4).add(&LaurentPoly::var(Var::U).scale(&q(4, 1))),
    )
    .unwrap();
    assert_eq!(f.denom().to_string(), "u - 1");
    assert_eq!(f.numer().to_string(), "1/2*u");
}

#[test]
fn laurent_inputs_are_cleared() {
    let f = RatFunc::var(Var::U).pow(-3).unwrap() * RatFunc::var(Var::U).pow(2).unwrap();
    assert_eq!(f, RatFunc::var(Var::U).inv().unwrap());
    assert_eq!(f.denom().to_string(), "u");
}

#[test]
fn evaluate_examples() {
    let f = u().pow(2).unwrap() + v().pow(2).unwrap();
    let val = evaluate(&f, &[(Var::U, q(1, 1)), (Var::V, q(1, 1))], None).unwrap();
    assert_eq!(val, Value::Rational(q(2, 1)));

    let pole = one() / (one() - u());
    let err = evaluate(&pole, &[(Var::U, q(1, 1))], None).unwrap_err();
    assert!(err.to_string().contains("u=1"));

    let g = (one() - u().pow(4).unwrap()) / (one() - u().pow(2).unwrap());
    let val = evaluate(&g, &[(Var::U, q(3, 1))], Some(101)).unwrap();
    assert_eq!(val, Value::Residue { value: 10, modulus: 101 });
}

#[test]
fn multivariate_cancellation() {
    // (u^2 - v^2)/(u - v) = u + v
    let f = (u().pow(2).unwrap() - v().pow(2).unwrap()) / (u() - v());
    assert_eq!(f, u() + v());
    // common factor hidden behind a product with a third variable
    let a = RatFunc::var(Var::A);
    let x = (u() * a.clone() - v()) * (one() + u() * v());
    let y = (u() * a.clone() - v()) * (a.clone() + v());
    let r = x / y;
    assert_eq!(r, (one() + u() * v()) / (a + v()));
}
