//! Symmetric functions stored in the power-sum basis: pairings, the m/e/p
//! transitions, Macdonald and Jack polynomials by triangular
//! orthogonalization, and the Macdonald-to-Jack limit.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qvir_exact::linalg;
use qvir_exact::{series_substitute_exp, Field, RatFunc, SeriesError, Var, Q};

use crate::params::{div, pw, Params};
use crate::partitions::{arm_leg, partitions_of, surjection_count, Partition};

/// Default bound on the degree of symmetric functions handled here.
pub const DEFAULT_DEGREE_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymError {
    #[error("degree {0} exceeds the bound {1}")]
    DegreeTooLarge(usize, usize),
    #[error("limit has a pole part: coefficient of {0} has valuation {1}")]
    PolePart(Partition, i32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Σ c_λ p_λ.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc<F> {
    terms: BTreeMap<Partition, F>,
}

impl<F: Field> Default for SymFunc<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SymFunc<F> {
    pub fn zero() -> Self {
        SymFunc { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::p(Partition::empty())
    }

    pub fn p(lam: Partition) -> Self {
        Self::monomial(lam, F::one())
    }

    pub fn monomial(lam: Partition, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lam, c);
        }
        SymFunc { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, F)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (l, c) in it {
            s.add_term(l, &c);
        }
        s
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, F> {
        self.terms
    }

    pub fn coeff(&self, lam: &Partition) -> F {
        self.terms.get(lam).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree present (0 for the zero function).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    /// The degree-0 coefficient.
    pub fn constant_term(&self) -> F {
        self.coeff(&Partition::empty())
    }

    pub fn add_term(&mut self, lam: Partition, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&lam) {
            Some(x) => {
                let y = x.fadd(c);
                if y.is_zero() {
                    self.terms.remove(&lam);
                } else {
                    *x = y;
                }
            }
            None => {
                self.terms.insert(lam, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (l, x) in &o.terms {
            self.add_term(l.clone(), &x.fmul(c));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &F::one());
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &F::one().fneg());
        r
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut r = Self::zero();
        r.add_scaled(self, c);
        r
    }

    /// Product in the ring of symmetric functions: p_λ p_μ = p_{λ∪μ}.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &o.terms {
                r.add_term(l1.union(l2), &c1.fmul(c2));
            }
        }
        r
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> SymFunc<G> {
        SymFunc::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }
}

impl SymFunc<RatFunc> {
    pub fn substitute(&self, v: Var, image: &RatFunc) -> Self {
        self.map_coeffs(|c| c.substitute(v, image).expect("substitution hits a pole"))
    }
}

/// Which diagonal inner product on the p-basis.
#[derive(Clone, Debug)]
pub enum InnerProduct<F> {
    /// ⟨p_λ, p_μ⟩ = δ z_λ ∏ (1 - q^{λ_i})/(1 - t^{λ_i}).
    Qt(Params<F>),
    /// ⟨p_λ, p_μ⟩ = δ z_λ β^{ℓ(λ)}.
    Beta(F),
}

impl<F: Field> InnerProduct<F> {
    pub fn weight(&self, lam: &Partition) -> F {
        let z = F::from_rational(&BigRational::from_integer(BigInt::from(lam.z())));
        match self {
            InnerProduct::Qt(p) => {
                let mut r = z;
                for &k in lam.parts() {
                    let k = k as i64;
                    let num = F::one().fsub(&p.qt(k, 0));
                    let den = F::one().fsub(&p.qt(0, k));
                    r = r.fmul(&div(&num, &den));
                }
                r
            }
            InnerProduct::Beta(b) => z.fmul(&pw(b, lam.len() as i64)),
        }
    }
}

pub fn pairing<F: Field>(ip: &InnerProduct<F>, f: &SymFunc<F>, g: &SymFunc<F>) -> F {
    let mut acc = F::zero();
    for (l, c) in &f.terms {
        if let Some(d) = g.terms.get(l) {
            acc = acc.fadd(&c.fmul(d).fmul(&ip.weight(l)));
        }
    }
    acc
}

/// Basis of the symmetric functions of a fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    P,
    M,
    E,
}

/// Rational transition data for one degree.
pub struct Transitions {
    pub parts: Vec<Partition>,
    /// p_λ = Σ_μ L[λ][μ] m_μ.
    pub l: Vec<Vec<u64>>,
    /// m_λ = Σ_μ m_in_p[λ][μ] p_μ.
    pub m_in_p: Vec<Vec<BigRational>>,
    /// e_λ = Σ_μ e_in_p[λ][μ] p_μ, i.e. M(e,p) = L' Z^{-1} ε.
    pub e_in_p: Vec<Vec<BigRational>>,
    /// p_λ = Σ_μ p_in_e[λ][μ] e_μ.
    pub p_in_e: Vec<Vec<BigRational>>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mq: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| Q(x.clone())).collect()).collect();
    linalg::inverse(&mq)
        .expect("transition matrix is invertible")
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.0).collect())
        .collect()
}

/// Cached transition matrices for degree `n`.
pub fn transitions(n: usize) -> Arc<Transitions> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Transitions>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let parts = partitions_of(n);
    let l: Vec<Vec<u64>> =
        parts.iter().map(|a| parts.iter().map(|b| surjection_count(a, b).unwrap()).collect()).collect();
    let lq: Vec<Vec<BigRational>> = l.iter().map(|r| r.iter().map(|&x| int(x as i64)).collect()).collect();
    let m_in_p = invert(&lq);
    let e_in_p: Vec<Vec<BigRational>> = (0..parts.len())
        .map(|i| {
            (0..parts.len())
                .map(|j| {
                    let mu = &parts[j];
                    let eps = if (mu.size() - mu.len()).is_multiple_of(2) { 1 } else { -1 };
                    int(l[j][i] as i64 * eps) / int(mu.z() as i64)
                })
                .collect()
        })
        .collect();
    let p_in_e = invert(&e_in_p);
    let t = Arc::new(Transitions { parts, l, m_in_p, e_in_p, p_in_e });
    cache.lock().unwrap().insert(n, t.clone());
    t
}

fn lift<F: Field>(x: &BigRational) -> F {
    F::from_rational(x)
}

/// m_λ in the p-basis.
pub fn m_in_p<F: Field>(lam: &Partition) -> SymFunc<F> {
    let tr = transitions(lam.size());
    let i = tr.parts.iter().position(|x| x == lam).unwrap();
    SymFunc::from_terms(tr.parts.iter().zip(&tr.m_in_p[i]).map(|(mu, c)| (mu.clone(), lift(c))))
}

/// e_λ in the p-basis.
pub fn e_in_p<F: Field>(lam: &Partition) -> SymFunc<F> {
    let tr = transitions(lam.size());
    let i = tr.parts.iter().position(|x| x == lam).unwrap();
    SymFunc::from_terms(tr.parts.iter().zip(&tr.e_in_p[i]).map(|(mu, c)| (mu.clone(), lift(c))))
}

/// Converts coefficients relative to `from` into coefficients relative to `to`.
/// The input map sends a partition λ to the coefficient of the λ-th basis element.
pub fn basis_convert<F: Field>(
    f: &SymFunc<F>,
    from: Basis,
    to: Basis,
    bound: usize,
) -> Result<SymFunc<F>, SymError> {
    let d = f.degree();
    if d > bound {
        return Err(SymError::DegreeTooLarge(d, bound));
    }
    // to the p-basis first
    let mut p = SymFunc::zero();
    for (lam, c) in f.terms() {
        let img = match from {
            Basis::P => SymFunc::p(lam.clone()),
            Basis::M => m_in_p(lam),
            Basis::E => e_in_p(lam),
        };
        p.add_scaled(&img, c);
    }
    if to == Basis::P {
        return Ok(p);
    }
    let mut out = SymFunc::zero();
    for (lam, c) in p.terms() {
        let tr = transitions(lam.size());
        let i = tr.parts.iter().position(|x| x == lam).unwrap();
        for (j, mu) in tr.parts.iter().enumerate() {
            let x = match to {
                Basis::M => int(tr.l[i][j] as i64),
                Basis::E => tr.p_in_e[i][j].clone(),
                Basis::P => unreachable!(),
            };
            if !x.is_zero() {
                out.add_term(mu.clone(), &c.fmul(&lift(&x)));
            }
        }
    }
    Ok(out)
}

/// Monic orthogonal basis of degree `n` for `ip`: P_λ = m_λ + lower terms,
/// orthogonalized along (1^n), ..., (n), a linear extension of dominance.
pub fn orthogonal_basis<F: Field>(n: usize, ip: &InnerProduct<F>) -> Vec<(Partition, SymFunc<F>)> {
    let mut done: Vec<(Partition, SymFunc<F>, F)> = Vec::new();
    for lam in partitions_of(n).into_iter().rev() {
        let m = m_in_p::<F>(&lam);
        let mut f = m.clone();
        for (_, pm, norm) in &done {
            let c = div(&pairing(ip, &m, pm), norm);
            f.add_scaled(pm, &c.fneg());
        }
        let norm = pairing(ip, &f, &f);
        done.push((lam, f, norm));
    }
    done.into_iter().rev().map(|(l, f, _)| (l, f)).collect()
}

/// ∏_□ (1 - q^{a} t^{ℓ+1}).
pub fn macdonald_c<F: Field>(lam: &Partition, params: &Params<F>) -> F {
    let mut c = F::one();
    for (i, j) in lam.boxes() {
        let (a, l) = arm_leg(lam, i, j).unwrap();
        c = c.fmul(&F::one().fsub(&params.qt(a as i64, l as i64 + 1)));
    }
    c
}

/// ∏_□ (β a + ℓ + 1).
pub fn jack_c<F: Field>(lam: &Partition, beta: &F) -> F {
    let mut c = F::one();
    for (i, j) in lam.boxes() {
        let (a, l) = arm_leg(lam, i, j).unwrap();
        c = c.fmul(&beta.fmul(&F::from_i64(a as i64)).fadd(&F::from_i64(l as i64 + 1)));
    }
    c
}

/// Monic (P) or integral (J) normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    P,
    J,
}

/// Macdonald polynomial of degree n at arbitrary parameters.
pub fn macdonald_with<F: Field>(lam: &Partition, form: Form, params: &Params<F>) -> SymFunc<F> {
    let ip = InnerProduct::Qt(params.clone());
    let (_, p) = orthogonal_basis(lam.size(), &ip).into_iter().find(|(l, _)| l == lam).unwrap();
    match form {
        Form::P => p,
        Form::J => p.scale(&macdonald_c(lam, params)),
    }
}

type SymCache = Mutex<HashMap<(usize, bool), Arc<Vec<(Partition, SymFunc<RatFunc>)>>>>;

fn symbolic_basis(n: usize, jack: bool) -> Arc<Vec<(Partition, SymFunc<RatFunc>)>> {
    static CACHE: OnceLock<SymCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(n, jack)) {
        return b.clone();
    }
    let ip = if jack { InnerProduct::Beta(RatFunc::var(Var::B)) } else { InnerProduct::Qt(Params::symbolic()) };
    let b = Arc::new(orthogonal_basis(n, &ip));
    cache.lock().unwrap().insert((n, jack), b.clone());
    b
}

/// Symbolic Macdonald polynomial in (q, t) = (u², v²).
pub fn macdonald(lam: &Partition, form: Form) -> Result<SymFunc<RatFunc>, SymError> {
    if lam.size() > DEFAULT_DEGREE_BOUND {
        return Err(SymError::DegreeTooLarge(lam.size(), DEFAULT_DEGREE_BOUND));
    }
    let basis = symbolic_basis(lam.size(), false);
    let p = basis.iter().find(|(l, _)| l == lam).unwrap().1.clone();
    Ok(match form {
        Form::P => p,
        Form::J => p.scale(&macdonald_c(lam, &Params::symbolic())),
    })
}

/// Symbolic Jack polynomial in β (the variable `b`).
pub fn jack(lam: &Partition, form: Form) -> Result<SymFunc<RatFunc>, SymError> {
    if lam.size() > DEFAULT_DEGREE_BOUND {
        return Err(SymError::DegreeTooLarge(lam.size(), DEFAULT_DEGREE_BOUND));
    }
    let basis = symbolic_basis(lam.size(), true);
    let p = basis.iter().find(|(l, _)| l == lam).unwrap().1.clone();
    Ok(match form {
        Form::P => p,
        Form::J => p.scale(&jack_c(lam, &RatFunc::var(Var::B))),
    })
}

/// Replaces β by 1/β in a symbolic function.
pub fn invert_beta(f: &SymFunc<RatFunc>) -> SymFunc<RatFunc> {
    let inv = RatFunc::var(Var::B).inv().unwrap();
    f.substitute(Var::B, &inv)
}

/// ħ⁰ coefficient of (1-t)^{-|λ|} J_λ(q,t) under q = e^ħ, t = e^{βħ}.
///
/// With t = q^β this limit is the Jack function with inverse parameter, so
/// the result equals `jack(λ, J)` with β replaced by 1/β.
pub fn macdonald_to_jack_limit(lam: &Partition, order: i32) -> Result<SymFunc<RatFunc>, SymError> {
    let j = macdonald(lam, Form::J)?;
    let n = lam.size() as i64;
    let one = RatFunc::one();
    let scale = (&one - &RatFunc::var(Var::V).pow(2).unwrap()).pow(-n).unwrap();
    let mut rates = HashMap::new();
    rates.insert(Var::U, RatFunc::frac(1, 2));
    rates.insert(Var::V, &RatFunc::var(Var::B) * &RatFunc::frac(1, 2));
    let mut out = SymFunc::zero();
    for (mu, c) in j.terms() {
        let s = series_substitute_exp(&(c * &scale), &rates, Var::Hb, order.max(1))?;
        if let Some(v) = s.valuation() {
            if v < 0 {
                return Err(SymError::PolePart(mu.clone(), v));
            }
        }
        out.add_term(mu.clone(), &s.coeff(0));
    }
    Ok(out)
}

/// J_λ(1, t) = e_{λ'} ∏_□ (1 - t^{ℓ+1}) in the p-basis.
pub fn j_at_q1(lam: &Partition) -> SymFunc<RatFunc> {
    let conj = lam.conjugate();
    let mut e = SymFunc::one();
    for &k in conj.parts() {
        e = e.mul(&e_in_p(&Partition::new(vec![k])));
    }
    let t = RatFunc::var(Var::V).pow(2).unwrap();
    let mut c = RatFunc::one();
    for (i, j) in lam.boxes() {
        let (_, l) = arm_leg(lam, i, j).unwrap();
        c = c * (RatFunc::one() - t.pow(l as i64 + 1).unwrap());
    }
    e.scale(&c)
}

/// True if the m-expansion of `f` is supported on partitions dominated by λ.
pub fn is_triangular<F: Field>(f: &SymFunc<F>, lam: &Partition) -> bool {
    let m = basis_convert(f, Basis::P, Basis::M, usize::MAX).unwrap();
    m.terms().keys().all(|mu| crate::partitions::dominance_leq(mu, lam).unwrap())
        && m.coeff(lam).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn e2_by_newton() {
        let e: SymFunc<RatFunc> = e_in_p(&p(&[2]));
        assert_eq!(e.coeff(&p(&[1, 1])), RatFunc::frac(1, 2));
        assert_eq!(e.coeff(&p(&[2])), RatFunc::frac(-1, 2));
    }

    #[test]
    fn jack_two_row() {
        // J_(2) = (1+β) m_2 + 2 m_11 = p_1² + β p_2
        let j = jack(&p(&[2]), Form::J).unwrap();
        assert_eq!(j.coeff(&p(&[1, 1])), RatFunc::one());
        assert_eq!(j.coeff(&p(&[2])), RatFunc::var(Var::B));
    }

    #[test]
    fn macdonald_two_row() {
        // P_(2) = m_2 + (1+q)(1-t)/(1-qt) m_11
        let q = RatFunc::var(Var::U).pow(2).unwrap();
        let t = RatFunc::var(Var::V).pow(2).unwrap();
        let one = RatFunc::one();
        let c = &(&(&one + &q) * &(&one - &t)) / &(&one - &(&q * &t));
        let expected = SymFunc::p(p(&[2])).add(&m_in_p::<RatFunc>(&p(&[1, 1])).scale(&c));
        assert_eq!(macdonald(&p(&[2]), Form::P).unwrap(), expected);
    }

    #[test]
    fn degree_bound_is_enforced() {
        assert!(macdonald(&p(&[DEFAULT_DEGREE_BOUND + 1]), Form::P).is_err());
    }

    #[test]
    fn jack_limit_of_single_box() {
        let lim = macdonald_to_jack_limit(&p(&[1]), 1).unwrap();
        assert_eq!(lim, SymFunc::p(p(&[1])));
    }
}
