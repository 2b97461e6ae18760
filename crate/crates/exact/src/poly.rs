use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::var::{Monomial, Var, NVARS};

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted by decreasing monomial (lex, `U` most significant);
/// zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigRational)>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut v: Vec<(Monomial, BigRational)> = it.into_iter().collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigRational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::ONE)
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        merge(&self.terms, &o.terms, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        merge(&self.terms, &o.terms, true)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return o.mul(self);
        }
        let (ca, ia) = self.int_form();
        let (cb, ib) = o.int_form();
        let (small, big) = if ia.len() <= ib.len() { (&ia, &ib) } else { (&ib, &ia) };
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in small {
            for (m2, c2) in big {
                let m = m1.mul(m2);
                let p = c1 * c2;
                match acc.get_mut(&m) {
                    Some(x) => *x += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        Self::from_int_terms(acc.into_iter().rev(), &(ca * cb))
    }

    /// `(c, t)` with `self = c * t` and `t` integral.
    fn int_form(&self) -> (BigRational, Vec<(Monomial, BigInt)>) {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        if den.is_one() {
            return (BigRational::one(), self.terms.iter().map(|(m, c)| (*m, c.numer().clone())).collect());
        }
        let t = self.terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        (BigRational::new(BigInt::one(), den), t)
    }

    /// Terms in decreasing order, scaled by `c`; zero coefficients dropped.
    fn from_int_terms<I: Iterator<Item = (Monomial, BigInt)>>(it: I, c: &BigRational) -> Self {
        let one = c.is_one();
        LaurentPoly {
            terms: it
                .filter(|(_, x)| !x.is_zero())
                .map(|(m, x)| (m, if one { BigRational::from_integer(x) } else { BigRational::from_integer(x) * c }))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Componentwise minimum of the exponent vectors (the unit monomial for zero).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (k, _)| acc.min_exp(*k)),
        }
    }

    pub fn max_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (k, _)| acc.max_exp(*k)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.0.iter().all(|&e| e >= 0))
    }

    /// Which variables occur with a nonzero exponent.
    pub fn vars_used(&self) -> [bool; NVARS] {
        let mut used = [false; NVARS];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let inv = c.recip();
            let mi = m.inv();
            return Some(LaurentPoly {
                terms: self.terms.iter().map(|(k, x)| (k.mul(&mi), x * &inv)).collect(),
            });
        }
        let lo = self.min_monomial().div(&d.min_monomial());
        let hi = self.max_monomial().div(&d.max_monomial());
        if !hi.ge_all(&lo) {
            return None;
        }
        // Over Z with a primitive divisor the quotient is integral (Gauss).
        let (ca, ia) = self.int_form();
        let cd = d.content();
        let id: Vec<(Monomial, BigInt)> = d.terms.iter().map(|(m, c)| (*m, (c / &cd).to_integer())).collect();
        let (lm, lc) = id[0].clone();
        let mut rem: BTreeMap<Monomial, BigInt> = ia.into_iter().collect();
        let mut quo: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = m.div(&lm);
            if !qm.ge_all(&lo) || !hi.ge_all(&qm) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &id {
                let k = dm.mul(&qm);
                let delta = dc * &qc;
                let remove = match rem.get_mut(&k) {
                    Some(x) => {
                        *x -= &delta;
                        x.is_zero()
                    }
                    None => {
                        rem.insert(k, -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&k);
                }
            }
            quo.push((qm, qc));
        }
        Some(Self::from_int_terms(quo.into_iter(), &(ca / cd)))
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        LaurentPoly::from_terms(self.terms.iter().filter(|(m, _)| m.0[i] != 0).map(|(m, c)| {
            let mut k = *m;
            k.0[i] -= 1;
            (k, c * rat(m.0[i] as i64))
        }))
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Integer-coefficient primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Substitutes `v -> image` where the image is a Laurent polynomial; negative
    /// powers of `v` require a monomial image.
    pub fn substitute(&self, v: Var, image: &LaurentPoly) -> Option<Self> {
        let i = v.index();
        let needs_inverse = self.terms.iter().any(|(m, _)| m.0[i] < 0);
        let inv = if needs_inverse {
            if !image.is_monomial() {
                return None;
            }
            let (m, c) = &image.terms[0];
            Some(LaurentPoly::monomial(m.inv(), c.recip()))
        } else {
            None
        };
        let mut groups: BTreeMap<i32, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut k = *m;
            let e = k.0[i];
            k.0[i] = 0;
            groups.entry(e).or_default().push((k, c.clone()));
        }
        let mut out = LaurentPoly::zero();
        for (e, ts) in groups {
            let rest = LaurentPoly::from_terms(ts);
            let factor = if e >= 0 {
                image.pow(e as u32)
            } else {
                inv.as_ref().unwrap().pow((-e) as u32)
            };
            out = out.add(&rest.mul(&factor));
        }
        Some(out)
    }

    /// Linear change of exponents: every monomial exponent of `v` is moved onto
    /// the monomial `image` (that is `v^e -> image^e`), keeping coefficients.
    pub fn substitute_monomial(&self, v: Var, image: &Monomial) -> Self {
        let i = v.index();
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut k = *m;
            let e = k.0[i];
            k.0[i] = 0;
            (k.mul(&image.pow(e)), c.clone())
        }))
    }
}

fn merge(a: &[(Monomial, BigRational)], b: &[(Monomial, BigRational)], negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    LaurentPoly { terms: out }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(Var::U)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(Var::V)
    }

    #[test]
    fn exact_division_with_short_quotient() {
        let d = x().add(&y()).add(&LaurentPoly::from_i64(1));
        let a = d.mul(&x());
        assert_eq!(a.div_exact(&d), Some(x()));
        assert_eq!(a.add(&LaurentPoly::one()).div_exact(&d), None);
    }

    #[test]
    fn negative_exponents_and_derivative() {
        let m = LaurentPoly::monomial(Monomial::var(Var::U, -2), BigRational::from_integer(3.into()));
        assert_eq!(m.min_monomial().exp(Var::U), -2);
        assert!(!m.is_polynomial());
        let d = m.derivative(Var::U);
        assert_eq!(d.coeff(&Monomial::var(Var::U, -3)), BigRational::from_integer((-6).into()));
    }

    #[test]
    fn content_and_primitive() {
        let p = x().scale(&BigRational::new(2.into(), 3.into())).add(&y().scale(&BigRational::new(4.into(), 3.into())));
        assert_eq!(p.content(), BigRational::new(2.into(), 3.into()));
        assert_eq!(p.primitive(), x().add(&y().scale(&BigRational::from_integer(2.into()))));
    }
}
