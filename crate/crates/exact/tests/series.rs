use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use qvir_exact::{series_substitute, series_substitute_exp, RatFunc, SeriesError, TruncSeries, Var};

fn var(v: Var) -> RatFunc {
    RatFunc::var(v)
}
fn c(n: i64, d: i64) -> RatFunc {
    RatFunc::frac(n, d)
}
fn q() -> RatFunc {
    var(Var::U).pow(2).unwrap()
}
fn t() -> RatFunc {
    var(Var::V).pow(2).unwrap()
}
fn one() -> RatFunc {
    RatFunc::one()
}

fn exp_rates() -> HashMap<Var, RatFunc> {
    // q = exp(hb e1), t = exp(hb e2) with q = u^2, t = v^2
    let mut m = HashMap::new();
    m.insert(Var::U, var(Var::E1) * c(1, 2));
    m.insert(Var::V, var(Var::E2) * c(1, 2));
    m
}

#[test]
fn exp_of_zero_is_one() {
    let z = TruncSeries::zero(Var::Hb, 5);
    assert_eq!(z.exp().unwrap(), TruncSeries::one(Var::Hb, 5));
}

#[test]
fn exp_taylor_order_two() {
    let cc = var(Var::C);
    let s = TruncSeries::from_coeffs(Var::Hb, 2, 1, vec![cc.clone()]);
    let e = s.exp().unwrap();
    assert_eq!(e.coeff(0), one());
    assert_eq!(e.coeff(1), cc);
    assert_eq!(e.coeff(2), &(&cc * &cc) * &c(1, 2));
}

#[test]
fn exp_rejects_constant_term() {
    let s = TruncSeries::constant(one(), Var::Hb, 3);
    assert_eq!(s.exp(), Err(SeriesError::ExpOfNonSmall));
}

#[test]
fn exp_of_structure_series_first_coefficient() {
    // sum_n (1/n)(1-q^n)(1-t^-n)/(1+(q/t)^n) z^n, z^1 coefficient of its exp
    let mut coeffs = Vec::new();
    for n in 1..=3i64 {
        let qn = q().pow(n).unwrap();
        let tn = t().pow(-n).unwrap();
        let r = (&q() / &t()).pow(n).unwrap();
        coeffs.push((one() - qn) * (one() - tn) / (one() + r) * c(1, n));
    }
    let s = TruncSeries::from_coeffs(Var::Z, 3, 1, coeffs);
    let e = s.exp().unwrap();
    let expected = (one() - q()) * (one() - t().inv().unwrap()) / (one() + &q() / &t());
    assert_eq!(e.coeff(1), expected);
}

#[test]
fn substitute_q_exponential() {
    let mut subs = HashMap::new();
    let s = TruncSeries::from_coeffs(Var::Hb, 2, 1, vec![var(Var::E1)]).exp().unwrap();
    subs.insert(Var::U, TruncSeries::from_coeffs(Var::Hb, 2, 1, vec![&var(Var::E1) * &c(1, 2)]).exp().unwrap());
    let r = series_substitute(&q(), &subs, 2).unwrap();
    assert_eq!(r, s);
    let e1 = var(Var::E1);
    assert_eq!(r.coeff(2), &(&e1 * &e1) * &c(1, 2));
}

#[test]
fn structure_quotient_begins_at_order_two() {
    // (1-q)(1-t^-1)/(1+q/t) = -e1 e2/2 hb^2 + O(hb^3)
    let f = (one() - q()) * (one() - t().inv().unwrap()) / (one() + &q() / &t());
    let s = series_substitute_exp(&f, &exp_rates(), Var::Hb, 4).unwrap();
    assert!(s.coeff(0).is_zero());
    assert!(s.coeff(1).is_zero());
    assert_eq!(s.coeff(2), &(&var(Var::E1) * &var(Var::E2)) * &c(-1, 2));
}

#[test]
fn central_quotient_vanishes_at_order_zero() {
    let f = (one() - q()) * (one() - t().inv().unwrap()) / (one() - &q() / &t())
        * (&q() / &t() - &t() / &q());
    let s = series_substitute_exp(&f, &exp_rates(), Var::Hb, 2).unwrap();
    assert!(s.coeff(0).is_zero());
    assert_eq!(s.coeff(2), &(&var(Var::E1) * &var(Var::E2)) * &c(2, 1));
}

#[test]
fn exp_path_agrees_with_general_composition() {
    let f = (one() - q().pow(2).unwrap()) / (one() + &q() * &t());
    let mut subs = HashMap::new();
    for (v, e) in [(Var::U, Var::E1), (Var::V, Var::E2)] {
        let lin = TruncSeries::from_coeffs(Var::Hb, 4, 1, vec![&var(e) * &c(1, 2)]);
        subs.insert(v, lin.exp().unwrap());
    }
    let a = series_substitute(&f, &subs, 4).unwrap();
    let b = series_substitute_exp(&f, &exp_rates(), Var::Hb, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn literal_series_variable_shifts_coefficients() {
    let f = var(Var::Hb).pow(2).unwrap() * q();
    let s = series_substitute_exp(&f, &exp_rates(), Var::Hb, 3).unwrap();
    assert!(s.coeff(0).is_zero());
    assert_eq!(s.coeff(2), one());
    assert_eq!(s.coeff(3), var(Var::E1));
}

#[test]
fn inverse_series() {
    let s = TruncSeries::from_coeffs(Var::Hb, 4, 0, vec![one(), var(Var::C)]);
    let p = s.mul(&s.inv().unwrap()).unwrap();
    assert_eq!(p, TruncSeries::one(Var::Hb, 4));
    let _ = BigRational::from_integer(BigInt::from(1));
}
