use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{EvalError, Field, Point};
use crate::gcd::poly_gcd;
use crate::poly::LaurentPoly;
use crate::var::{Monomial, Var};

/// Reduced rational function.
///
/// Canonical form: numerator and denominator are coprime polynomials (no
/// negative exponents, no common monomial factor), the denominator has
/// coprime integer coefficients and a positive leading coefficient. Equal
/// values therefore have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

fn split_laurent(p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let lo = p.min_monomial();
    let mut shift = Monomial::ONE;
    for i in 0..lo.0.len() {
        shift.0[i] = lo.0[i].min(0);
    }
    if shift.is_one() {
        (p.clone(), LaurentPoly::one())
    } else {
        (p.mul_monomial(&shift.inv()), LaurentPoly::monomial(shift.inv(), BigRational::one()))
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        RatFunc {
            num: LaurentPoly::from_i64(n),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        RatFunc {
            num: LaurentPoly::constant(r),
            den: LaurentPoly::one(),
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(v: Var) -> Self {
        RatFunc {
            num: LaurentPoly::var(v),
            den: LaurentPoly::one(),
        }
    }

    /// `c * m` for a Laurent monomial `m`.
    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        Self::from_laurent(&LaurentPoly::monomial(m, c))
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (n, d) = split_laurent(p);
        RatFunc { num: n, den: d }
    }

    /// Builds `num / den` from arbitrary Laurent polynomials and reduces.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (n1, d1) = split_laurent(&num);
        let (n2, d2) = split_laurent(&den);
        Ok(Self::reduce(n1.mul(&d2), d1.mul(&n2)))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    /// Full reduction of a pair of polynomials (den nonzero).
    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            return Self::normalize(num, den);
        }
        if num.is_constant() {
            return Self::normalize(num, den);
        }
        let g = poly_gcd(&num, &den);
        if g.is_constant() {
            Self::normalize(num, den)
        } else {
            Self::normalize(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        }
    }

    /// Fixes the scalar normalization of an already coprime pair.
    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        let mut c = den.content();
        if den.leading().unwrap().1.is_negative() {
            c = -c;
        }
        if c.is_one() {
            RatFunc { num, den }
        } else {
            let ci = c.recip();
            RatFunc {
                num: num.scale(&ci),
                den: den.scale(&ci),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    /// The value as a Laurent polynomial when the denominator is a monomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_monomial() {
            let (m, c) = &self.den.terms()[0];
            Some(self.num.mul_monomial(&m.inv()).scale(&c.recip()))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: self.num.mul(&o.den).add(&o.num),
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return RatFunc {
                num: o.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let g = poly_gcd(&self.den, &o.den);
        if g.is_constant() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return Self::normalize(num, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&d1);
        let g2 = poly_gcd(&num, &g);
        if g2.is_constant() {
            Self::normalize(num, den)
        } else {
            Self::normalize(num.div_exact(&g2).unwrap(), den.div_exact(&g2).unwrap())
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_constant() {
            let c = self.num.constant_term() / self.den.constant_term();
            return RatFunc {
                num: o.num.scale(&c),
                den: o.den.clone(),
            };
        }
        if o.is_constant() {
            return o.mul(self);
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let (a, d) = if g1.is_constant() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_constant() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        Self::normalize(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // Powers of coprime polynomials stay coprime.
        Ok(Self::normalize(base.num.pow(k), base.den.pow(k)))
    }

    pub fn derivative(&self, v: Var) -> Self {
        let n = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::reduce(n, self.den.mul(&self.den))
    }

    pub fn eval<F: Field>(&self, point: &Point<F>) -> Result<F, EvalError> {
        let n = self.num.eval(point)?;
        let d = self.den.eval(point)?;
        let di = d.finv().ok_or_else(|| EvalError::Pole(point.to_string()))?;
        Ok(n.fmul(&di))
    }

    /// Composition `v -> image`.
    pub fn substitute(&self, v: Var, image: &RatFunc) -> Result<Self, ArithError> {
        let i = v.index();
        if !self.num.vars_used()[i] && !self.den.vars_used()[i] {
            return Ok(self.clone());
        }
        let n = compose(&self.num, v, image);
        let d = compose(&self.den, v, image);
        n.div(&d)
    }

    /// Exponent change `v^e -> m^e` for a Laurent monomial `m`.
    pub fn substitute_monomial(&self, v: Var, m: &Monomial) -> Self {
        let n = self.num.substitute_monomial(v, m);
        let d = self.den.substitute_monomial(v, m);
        RatFunc::new(n, d).expect("monomial substitution keeps the denominator nonzero")
    }

    pub fn vars_used(&self) -> [bool; crate::var::NVARS] {
        let a = self.num.vars_used();
        let b = self.den.vars_used();
        let mut out = a;
        for i in 0..out.len() {
            out[i] |= b[i];
        }
        out
    }
}

fn compose(p: &LaurentPoly, v: Var, image: &RatFunc) -> RatFunc {
    let i = v.index();
    let mut groups: std::collections::BTreeMap<i32, Vec<(Monomial, BigRational)>> =
        std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let mut k = *m;
        let e = k.0[i];
        k.0[i] = 0;
        groups.entry(e).or_default().push((k, c.clone()));
    }
    let mut out = RatFunc::zero();
    for (e, ts) in groups {
        let rest = RatFunc::from_laurent(&LaurentPoly::from_terms(ts));
        let f = image.pow(e as i64).expect("substituted image vanishes under a negative power");
        out = out.add(&rest.mul(&f));
    }
    out
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn fdiv(&self, o: &Self) -> Option<Self> {
        self.div(o).ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        RatFunc::from_rational(r.clone())
    }
    fn fpow(&self, e: i64) -> Option<Self> {
        self.pow(e).ok()
    }
    fn size_hint(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl std::ops::$tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                $f(self, o)
            }
        }
        impl std::ops::$tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                $f(&self, &o)
            }
        }
        impl std::ops::$tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                $f(&self, o)
            }
        }
    };
}

binop!(Add, add, RatFunc::add);
binop!(Sub, sub, RatFunc::sub);
binop!(Mul, mul, RatFunc::mul);
binop!(Div, div, |a: &RatFunc, b: &RatFunc| RatFunc::div(a, b).expect("division by zero"));

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_i64(n)
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> Self {
        RatFunc::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let u = RatFunc::var(Var::U);
        let one = RatFunc::one();
        let f = (&(&u * &u) - &one) / (&u - &one);
        assert_eq!(f, &u + &one);
        assert!(f.denom().is_one());
    }

    #[test]
    fn substitution_and_monomial_substitution_agree() {
        let w = RatFunc::var(Var::W);
        let f = &(&w + &RatFunc::from_i64(2)) / &(&w * &w - &RatFunc::var(Var::U));
        let m = Monomial::from_pairs(&[(Var::U, 1), (Var::V, -1)]);
        let img = RatFunc::monomial(m, BigRational::from_integer(1.into()));
        assert_eq!(f.substitute(Var::W, &img).unwrap(), f.substitute_monomial(Var::W, &m));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(RatFunc::zero().inv().is_err());
        assert!(RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }
}
