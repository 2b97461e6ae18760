use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::modp::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::poly::LaurentPoly;
use crate::var::{Var, NVARS};

/// The coefficient fields the algorithms are generic over: exact rational
/// functions for symbolic runs, prime-field residues for modular runs.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn finv(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rough size used to prefer small pivots in elimination.
    fn size_hint(&self) -> usize {
        1
    }

    fn fdiv(&self, o: &Self) -> Option<Self> {
        o.finv().map(|i| self.fmul(&i))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn fpow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.finv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut r = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                r = r.fmul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.fmul(&b);
            }
        }
        Some(r)
    }
}

/// Rational numbers as a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(n: i64, d: i64) -> Q {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(Zero::zero())
    }
    fn one() -> Self {
        Q(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0)
    }
    fn fadd(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn fsub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }
    fn fmul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn fneg(&self) -> Self {
        Q(-&self.0)
    }
    fn finv(&self) -> Option<Self> {
        if Zero::is_zero(&self.0) {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        Q(r.clone())
    }
}

/// The Mersenne prime 2^61 - 1.
pub const P61: u64 = (1u64 << 61) - 1;

/// Residue modulo [`P61`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Fp(pub u64);

impl Fp {
    pub fn new(x: u64) -> Fp {
        Fp(x % P61)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn from_bigint(n: &BigInt) -> Fp {
        let r = n.mod_floor(&BigInt::from(P61));
        Fp(r.to_u64_digits().1.first().copied().unwrap_or(0))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn fadd(&self, o: &Self) -> Self {
        Fp(add_mod(self.0, o.0, P61))
    }
    fn fsub(&self, o: &Self) -> Self {
        Fp(sub_mod(self.0, o.0, P61))
    }
    fn fmul(&self, o: &Self) -> Self {
        Fp(mul_mod(self.0, o.0, P61))
    }
    fn fneg(&self) -> Self {
        Fp(sub_mod(0, self.0, P61))
    }
    fn finv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Fp(inv_mod(self.0, P61)))
        }
    }
    /// Panics if the denominator is divisible by the modulus.
    fn from_rational(r: &BigRational) -> Self {
        let n = Fp::from_bigint(r.numer());
        let d = Fp::from_bigint(r.denom());
        n.fmul(&d.finv().expect("denominator divisible by the field characteristic"))
    }
}

/// Assignment of field values to (some of) the alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<F> {
    vals: Vec<Option<F>>,
}

impl<F: Field> Default for Point<F> {
    fn default() -> Self {
        Point { vals: vec![None; NVARS] }
    }
}

impl<F: Field> Point<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, x: F) -> Self {
        self.vals[v.index()] = Some(x);
        self
    }

    pub fn set(&mut self, v: Var, x: F) {
        self.vals[v.index()] = Some(x);
    }

    pub fn get(&self, v: Var) -> Option<&F> {
        self.vals[v.index()].as_ref()
    }

    pub fn assignments(&self) -> Vec<(Var, F)> {
        self.vals
            .iter()
            .enumerate()
            .filter_map(|(i, x)| x.clone().map(|x| (Var::from_index(i), x)))
            .collect()
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (v, x)) in self.assignments().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", v, x)?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("variable {0} has no value in the evaluation point")]
    Unassigned(Var),
    #[error("evaluation hits a pole at {0}")]
    Pole(String),
}

impl LaurentPoly {
    /// Evaluates every variable that occurs; all must be assigned.
    pub fn eval<F: Field>(&self, point: &Point<F>) -> Result<F, EvalError> {
        let used = self.vars_used();
        let mut lo = [0i32; NVARS];
        let mut hi = [0i32; NVARS];
        for (m, _) in self.terms() {
            for i in 0..NVARS {
                lo[i] = lo[i].min(m.0[i]);
                hi[i] = hi[i].max(m.0[i]);
            }
        }
        let mut pos: Vec<Vec<F>> = vec![Vec::new(); NVARS];
        let mut neg: Vec<Vec<F>> = vec![Vec::new(); NVARS];
        for i in 0..NVARS {
            if !used[i] {
                continue;
            }
            let v = Var::from_index(i);
            let x = point.get(v).ok_or(EvalError::Unassigned(v))?.clone();
            let mut p = vec![F::one()];
            for _ in 0..hi[i] {
                let next = p.last().unwrap().fmul(&x);
                p.push(next);
            }
            pos[i] = p;
            if lo[i] < 0 {
                let xi = x.finv().ok_or_else(|| EvalError::Pole(point.to_string()))?;
                let mut q = vec![F::one()];
                for _ in 0..(-lo[i]) {
                    let next = q.last().unwrap().fmul(&xi);
                    q.push(next);
                }
                neg[i] = q;
            }
        }
        let mut acc = F::zero();
        for (m, c) in self.terms() {
            let mut t = F::from_rational(c);
            for i in 0..NVARS {
                let e = m.0[i];
                if e > 0 {
                    t = t.fmul(&pos[i][e as usize]);
                } else if e < 0 {
                    t = t.fmul(&neg[i][(-e) as usize]);
                }
            }
            acc = acc.fadd(&t);
        }
        Ok(acc)
    }
}

/// Residue of a rational number modulo an arbitrary prime `p`.
pub fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0);
    let d = r.denom().mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0);
    if d == 0 {
        None
    } else {
        Some(mul_mod(n, inv_mod(d, p), p))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_field_laws() {
        let a = Fp::new(123456789);
        let b = Fp::new(P61 - 5);
        assert_eq!(a.fmul(&a.finv().unwrap()), Fp::one());
        assert_eq!(b.fadd(&Fp::new(5)), Fp::zero());
        assert!(Fp::zero().finv().is_none());
        assert_eq!(Fp::from_i64(-1).fadd(&Fp::one()), Fp::zero());
    }

    #[test]
    fn rational_reduction_mod_p() {
        let r = BigRational::new(1.into(), 3.into());
        let x = rational_mod(&r, P61).unwrap();
        assert_eq!(crate::modp::mul_mod(x, 3, P61), 1);
    }
}
