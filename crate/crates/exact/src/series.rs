use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::LaurentPoly;
use crate::ratfunc::{ArithError, RatFunc};
use crate::var::{Monomial, Var, NVARS};

/// Truncated Laurent series `sum_{k=low}^{order} c_k x^k` in one variable.
///
/// `order` is the absolute precision: terms of degree above it are unknown and
/// dropped. Operations track the precision they can actually guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    var: Var,
    order: i32,
    low: i32,
    coeffs: Vec<RatFunc>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("exp needs a series without constant or negative-order terms")]
    ExpOfNonSmall,
    #[error("series is zero to its working precision; cannot invert")]
    NotInvertible,
    #[error("series variables differ")]
    VariableMismatch,
    #[error("substituted variable {0} has no series")]
    MissingSubstitution(Var),
    #[error("precision {got} below the requested order {want}")]
    InsufficientPrecision { got: i32, want: i32 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncSeries {
    pub fn zero(var: Var, order: i32) -> Self {
        TruncSeries { var, order, low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: RatFunc, var: Var, order: i32) -> Self {
        Self::from_coeffs(var, order, 0, vec![c])
    }

    pub fn one(var: Var, order: i32) -> Self {
        Self::constant(RatFunc::one(), var, order)
    }

    /// The series variable itself, `x`.
    pub fn variable(var: Var, order: i32) -> Self {
        Self::from_coeffs(var, order, 1, vec![RatFunc::one()])
    }

    /// `sum_i coeffs[i] x^(low+i)`, truncated at `order`.
    pub fn from_coeffs(var: Var, order: i32, low: i32, coeffs: Vec<RatFunc>) -> Self {
        let mut s = TruncSeries { var, order, low, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.low + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest exponent with a (possibly) nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> RatFunc {
        if k < self.low {
            return RatFunc::zero();
        }
        self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficients of `x^0 .. x^order` (negative-order terms are not included).
    pub fn coefficients(&self) -> Vec<RatFunc> {
        (0..=self.order).map(|k| self.coeff(k)).collect()
    }

    pub fn truncate(&self, order: i32) -> Self {
        let mut s = self.clone();
        s.order = s.order.min(order);
        s.normalize();
        s
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.var != o.var {
            Err(SeriesError::VariableMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let order = self.order.min(o.order);
        let low = if self.is_zero() {
            o.low
        } else if o.is_zero() {
            self.low
        } else {
            self.low.min(o.low)
        };
        let coeffs = (low..=order).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        Ok(Self::from_coeffs(self.var, order, low, coeffs))
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            var: self.var,
            order: self.order,
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::from_coeffs(self.var, self.order, self.low, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            let order = match (self.is_zero(), o.is_zero()) {
                (true, true) => self.order.min(o.order),
                (true, false) => self.order + o.low,
                _ => o.order + self.low,
            };
            return Ok(Self::zero(self.var, order));
        }
        let order = (self.order + o.low).min(o.order + self.low);
        let low = self.low + o.low;
        let n = (order - low + 1).max(0) as usize;
        let mut coeffs = vec![RatFunc::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::from_coeffs(self.var, order, low, coeffs))
    }

    /// Multiplicative inverse; valuation `v` lowers the precision to `order - 2v`.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let v = self.low;
        let order = self.order - 2 * v;
        let n = (self.order - v + 1) as usize;
        let c0 = self.coeffs[0].inv()?;
        let mut out: Vec<RatFunc> = Vec::with_capacity(n);
        out.push(c0.clone());
        for k in 1..n {
            let mut acc = RatFunc::zero();
            for j in 1..=k {
                if let Some(c) = self.coeffs.get(j) {
                    if !c.is_zero() {
                        acc = acc.add(&c.mul(&out[k - j]));
                    }
                }
            }
            out.push(acc.neg().mul(&c0));
        }
        Ok(Self::from_coeffs(self.var, order, -v, out))
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::one(self.var, base.order.max(0) + base.low.abs() * e.abs() as i32 + 64);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(r)
    }

    /// Truncated exponential; needs a series starting at degree >= 1.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.is_zero() && self.low < 1 {
            return Err(SeriesError::ExpOfNonSmall);
        }
        let n = self.order.max(0) as usize;
        let s: Vec<RatFunc> = (0..=n as i32).map(|k| self.coeff(k)).collect();
        let mut e = vec![RatFunc::one()];
        for m in 1..=n {
            let mut acc = RatFunc::zero();
            for k in 1..=m {
                if !s[k].is_zero() {
                    acc = acc.add(&s[k].mul(&e[m - k]).scale(&rat(k as i64)));
                }
            }
            e.push(acc.scale(&rat(m as i64).recip()));
        }
        Ok(Self::from_coeffs(self.var, self.order, 0, e))
    }
}

/// Substitutes a series for every variable of `f` (composition), returning the
/// result truncated at `order`.
pub fn series_substitute(
    f: &RatFunc,
    subs: &HashMap<Var, TruncSeries>,
    order: i32,
) -> Result<TruncSeries, SeriesError> {
    let var = subs.values().next().map(|s| s.var()).unwrap_or(Var::Hb);
    let num = poly_series(f.numer(), subs, var)?;
    let den = poly_series(f.denom(), subs, var)?;
    let q = num.div(&den)?;
    if q.order < order {
        return Err(SeriesError::InsufficientPrecision { got: q.order, want: order });
    }
    Ok(q.truncate(order))
}

fn poly_series(p: &LaurentPoly, subs: &HashMap<Var, TruncSeries>, var: Var) -> Result<TruncSeries, SeriesError> {
    let used = p.vars_used();
    let mut cache: HashMap<(usize, i32), TruncSeries> = HashMap::new();
    let mut acc: Option<TruncSeries> = None;
    for (m, c) in p.terms() {
        let mut rest = Monomial::ONE;
        let mut t: Option<TruncSeries> = None;
        for i in 0..NVARS {
            let e = m.0[i];
            if e == 0 || !used[i] {
                continue;
            }
            let v = Var::from_index(i);
            let s = match subs.get(&v) {
                Some(s) => s,
                None => {
                    rest.0[i] = e;
                    continue;
                }
            };
            let pw = match cache.get(&(i, e)) {
                Some(x) => x.clone(),
                None => {
                    let x = s.pow(e as i64)?;
                    cache.insert((i, e), x.clone());
                    x
                }
            };
            t = Some(match t {
                None => pw,
                Some(t) => t.mul(&pw)?,
            });
        }
        let coeff = RatFunc::monomial(rest, c.clone());
        let term = match t {
            None => {
                let order = subs.values().map(|s| s.order()).min().unwrap_or(0);
                TruncSeries::constant(coeff, var, order)
            }
            Some(t) => t.scale(&coeff),
        };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| TruncSeries::zero(var, subs.values().map(|s| s.order()).min().unwrap_or(0))))
}

/// Fast path for exponential substitutions `v -> exp(c_v x)`: every monomial
/// becomes `exp(x * sum e_v c_v)`. Variables without an entry stay symbolic.
pub fn series_substitute_exp(
    f: &RatFunc,
    rates: &HashMap<Var, RatFunc>,
    var: Var,
    order: i32,
) -> Result<TruncSeries, SeriesError> {
    let mut work = order;
    loop {
        let den = exp_poly_series(f.denom(), rates, var, work);
        match den.valuation() {
            None => {
                if work > order + 64 {
                    return Err(SeriesError::NotInvertible);
                }
                work += 8;
            }
            Some(v) if order + 2 * v > work => work = order + 2 * v,
            Some(_) => {
                let num = exp_poly_series(f.numer(), rates, var, work);
                let q = num.div(&den)?;
                if q.order < order {
                    return Err(SeriesError::InsufficientPrecision { got: q.order, want: order });
                }
                return Ok(q.truncate(order));
            }
        }
    }
}

fn exp_poly_series(p: &LaurentPoly, rates: &HashMap<Var, RatFunc>, var: Var, order: i32) -> TruncSeries {
    let n = order.max(0) as usize;
    let mut coeffs = vec![RatFunc::zero(); n + 1];
    let mut fact = vec![rat(1)];
    for k in 1..=n {
        let next = &fact[k - 1] * rat(k as i64);
        fact.push(next);
    }
    for (m, c) in p.terms() {
        let mut rest = Monomial::ONE;
        let mut rate = RatFunc::zero();
        let mut shift = 0i64;
        for (v, e) in m.vars() {
            if v == var {
                shift = e as i64;
                continue;
            }
            match rates.get(&v) {
                Some(r) => rate = rate.add(&r.scale(&rat(e as i64))),
                None => rest.0[v.index()] = e,
            }
        }
        // a literal power of the series variable shifts the coefficients
        let mut pw = RatFunc::monomial(rest, c.clone());
        for k in 0..=n {
            if k > 0 {
                if rate.is_zero() {
                    break;
                }
                pw = pw.mul(&rate);
            }
            let target = k as i64 + shift;
            if target >= 0 && target <= n as i64 {
                coeffs[target as usize] = coeffs[target as usize].add(&pw.scale(&fact[k].recip()));
            }
        }
    }
    TruncSeries::from_coeffs(var, order, 0, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_variable() {
        let e = TruncSeries::variable(Var::Hb, 4).exp().unwrap();
        let expected = [1, 1, 2, 6, 24];
        for (k, d) in expected.iter().enumerate() {
            assert_eq!(e.coeff(k as i32), RatFunc::frac(1, *d));
        }
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let x = TruncSeries::variable(Var::Hb, 5);
        let s = TruncSeries::one(Var::Hb, 5).sub(&x).unwrap().inv().unwrap();
        assert!((0..=5).all(|k| s.coeff(k).is_one()));
    }

    #[test]
    fn exp_substitution_of_q_minus_one() {
        let mut rates = HashMap::new();
        rates.insert(Var::U, RatFunc::one());
        let f = RatFunc::var(Var::U) - RatFunc::one();
        let s = series_substitute_exp(&f, &rates, Var::Hb, 3).unwrap();
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.coeff(2), RatFunc::frac(1, 2));
    }
}
