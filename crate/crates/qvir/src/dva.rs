//! Structure constants of the deformed Virasoro algebra:
//!
//! Σ_{l≥0} f_l (T_{m-l} T_{n+l} - T_{n-l} T_{m+l}) = central(m) δ_{m+n,0},
//! Σ f_l z^l = exp(Σ_{n≥1} (1/n)(1-q^n)(1-t^{-n})/(1+(q/t)^n) z^n).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use qvir_exact::{series_substitute_exp, Field, RatFunc, SeriesError, TruncSeries, Var};

use crate::params::{div, Params};

/// (1-q^n)(1-t^{-n})/(1+(q/t)^n).
pub fn structure_term<F: Field>(p: &Params<F>, n: i64) -> F {
    let a = F::one().fsub(&p.qt(n, 0));
    let b = F::one().fsub(&p.qt(0, -n));
    let c = F::one().fadd(&p.qt(n, -n));
    div(&a.fmul(&b), &c)
}

/// f_0, ..., f_lmax by the exponential recurrence l f_l = Σ_k k c_k f_{l-k}.
pub fn f_coeffs<F: Field>(p: &Params<F>, lmax: usize) -> Vec<F> {
    let c: Vec<F> = (0..=lmax).map(|n| if n == 0 { F::zero() } else { structure_term(p, n as i64) }).collect();
    let mut f = vec![F::one()];
    for l in 1..=lmax {
        let mut acc = F::zero();
        for k in 1..=l {
            // k c_k with c_k = structure_term(k)/k
            acc = acc.fadd(&c[k].fmul(&f[l - k]));
        }
        f.push(div(&acc, &F::from_i64(l as i64)));
    }
    f
}

/// Symbolic f_l in (u, v), cached.
pub fn f_coeff(l: usize) -> RatFunc {
    static CACHE: OnceLock<Mutex<Vec<RatFunc>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut g = cache.lock().unwrap();
    if g.len() <= l {
        *g = f_coeffs(&Params::symbolic(), l.max(2 * g.len()));
    }
    g[l].clone()
}

/// -((1-q)(1-t^{-1})/(1-q/t)) ((q/t)^m - (q/t)^{-m}).
pub fn central_term<F: Field>(p: &Params<F>, m: i64) -> F {
    if m == 0 {
        return F::zero();
    }
    let pre = div(&F::one().fsub(&p.q()).fmul(&F::one().fsub(&p.qt(0, -1))), &F::one().fsub(&p.qt(1, -1)));
    pre.fmul(&p.qt(m, -m).fsub(&p.qt(-m, m))).fneg()
}

/// f_l and the central term at fixed parameters, optionally with f_1
/// perturbed (used as a deliberately broken fixture).
#[derive(Clone, Debug)]
pub struct Structure<F> {
    pub params: Params<F>,
    f: Vec<F>,
    central: HashMap<i64, F>,
}

impl<F: Field> Structure<F> {
    pub fn new(params: Params<F>, lmax: usize) -> Self {
        let f = f_coeffs(&params, lmax);
        let central = (-(lmax as i64)..=lmax as i64).map(|m| (m, central_term(&params, m))).collect();
        Structure { params, f, central }
    }

    /// Adds `delta` to f_1.
    pub fn perturb_f1(mut self, delta: &F) -> Self {
        if self.f.len() > 1 {
            self.f[1] = self.f[1].fadd(delta);
        }
        self
    }

    pub fn lmax(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f(&self, l: usize) -> &F {
        self.f.get(l).unwrap_or_else(|| panic!("f_{} beyond the prepared range {}", l, self.lmax()))
    }

    pub fn central(&self, m: i64) -> F {
        match self.central.get(&m) {
            Some(c) => c.clone(),
            None => central_term(&self.params, m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DvaError {
    #[error("{what}: expected {expected}, got {got}")]
    Mismatch { what: String, expected: String, got: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Rates for q = e^{ħ ε₁}, t = e^{ħ ε₂} with q = u², t = v².
pub fn hbar_rates() -> HashMap<Var, RatFunc> {
    let mut m = HashMap::new();
    m.insert(Var::U, &RatFunc::var(Var::E1) * &RatFunc::frac(1, 2));
    m.insert(Var::V, &RatFunc::var(Var::E2) * &RatFunc::frac(1, 2));
    m
}

fn e1() -> RatFunc {
    RatFunc::var(Var::E1)
}
fn e2() -> RatFunc {
    RatFunc::var(Var::E2)
}

/// Closed forms of the ħ², ħ⁴ coefficients of f_l.
pub fn f_closed_forms(l: i64) -> [RatFunc; 3] {
    let e12 = &e1() * &e2();
    let f0 = if l == 0 { RatFunc::one() } else { RatFunc::zero() };
    let f1 = &e12 * &RatFunc::frac(-l, 2);
    let quad = &(&(&e1() * &e1()) - &(&e12 * &RatFunc::from_i64(3))) + &(&e2() * &e2());
    let f2 = &(&(&e12 * &quad) * &RatFunc::frac(l * l * l, 24)) + &(&(&e12 * &e12) * &RatFunc::frac(l * l * l - l, 48));
    [f0, f1, f2]
}

/// ħ-expansion of f_l under q = e^{ħ ε₁}, t = e^{ħ ε₂}, checked against the
/// closed forms for the coefficients of ħ⁰, ħ², ħ⁴ (and vanishing odd ones).
pub fn f_hbar_expansion(l: usize, order: i32) -> Result<TruncSeries, DvaError> {
    let s = series_substitute_exp(&f_coeff(l), &hbar_rates(), Var::Hb, order)?;
    let closed = f_closed_forms(l as i64);
    for k in 0..=order.min(4) {
        let expected = if k % 2 == 1 { RatFunc::zero() } else { closed[(k / 2) as usize].clone() };
        let got = s.coeff(k);
        if got != expected {
            return Err(DvaError::Mismatch {
                what: format!("f_{} coefficient of hb^{}", l, k),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }
    Ok(s)
}

/// Closed forms of the ħ⁰, ħ², ħ⁴ coefficients of
/// ((1-q)(1-t^{-1})/(1-q/t)) ((q/t)^m - (q/t)^{-m}) = -central(m).
pub fn central_closed_forms(m: i64) -> [RatFunc; 3] {
    let e12 = &e1() * &e2();
    let sq = &(&e1() * &e1()) + &(&e2() * &e2());
    let r1 = &e12 * &RatFunc::from_i64(2 * m);
    let inner = &(&sq * &RatFunc::from_i64(2 * m * m)) + &(&e12 * &RatFunc::from_i64(1 - 4 * m * m));
    let r2 = &(&e12 * &inner) * &RatFunc::frac(m, 6);
    [RatFunc::zero(), r1, r2]
}

/// ħ-expansion of -central(m) checked against the closed forms.
pub fn central_hbar_expansion(m: i64, order: i32) -> Result<TruncSeries, DvaError> {
    let c = central_term(&Params::symbolic(), m).fneg();
    let s = series_substitute_exp(&c, &hbar_rates(), Var::Hb, order)?;
    let closed = central_closed_forms(m);
    for k in 0..=order.min(4) {
        let expected = if k % 2 == 1 { RatFunc::zero() } else { closed[(k / 2) as usize].clone() };
        if s.coeff(k) != expected {
            return Err(DvaError::Mismatch {
                what: format!("central({}) coefficient of hb^{}", m, k),
                expected: expected.to_string(),
                got: s.coeff(k).to_string(),
            });
        }
    }
    Ok(s)
}

/// Σ_l f_l z^l times exp(-Σ c_n z^n) as a series in z (should be 1).
pub fn generating_function_check(lmax: usize) -> Result<TruncSeries, SeriesError> {
    let p = Params::symbolic();
    let order = lmax as i32;
    let fs = f_coeffs(&p, lmax);
    let f = TruncSeries::from_coeffs(Var::Z, order, 0, fs);
    let cs: Vec<RatFunc> =
        (1..=lmax).map(|n| structure_term(&p, n as i64).fmul(&RatFunc::frac(1, n as i64))).collect();
    let g = TruncSeries::from_coeffs(Var::Z, order, 1, cs).neg().exp()?;
    f.mul(&g)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_from_the_exponential() {
        // exp(s1 z + s2 z²/2) has z² coefficient (s1² + s2)/2
        let p = Params::symbolic();
        let (s1, s2) = (structure_term(&p, 1), structure_term(&p, 2));
        assert_eq!(f_coeff(0), RatFunc::one());
        assert_eq!(f_coeff(1), s1);
        assert_eq!(f_coeff(2), s1.fmul(&s1).fadd(&s2).fmul(&RatFunc::frac(1, 2)));
    }

    #[test]
    fn central_term_is_odd() {
        let p = Params::symbolic();
        assert!(central_term(&p, 0).is_zero());
        assert_eq!(central_term(&p, 2), central_term(&p, -2).fneg());
    }

    #[test]
    fn perturbation_only_moves_f1() {
        let p = Params::symbolic();
        let st = Structure::new(p, 3).perturb_f1(&RatFunc::one());
        assert_eq!(st.f(1), &f_coeff(1).fadd(&RatFunc::one()));
        assert_eq!(st.f(2), &f_coeff(2));
    }

    #[test]
    fn generating_function_is_one() {
        let s = generating_function_check(4).unwrap();
        assert!(s.coeff(0).is_one());
        assert!((1..=4).all(|k| s.coeff(k).is_zero()));
    }
}
