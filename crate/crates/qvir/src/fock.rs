//! Free-field realization on symmetric functions.
//!
//! T_k acts as (u/v) a (u/v)^k Σ_{j-m=k} C⁺_m A⁺_j + (v/u) a⁻¹ (v/u)^k Σ_{j-m=k} C⁻_m A⁻_j
//! where C^±_m is the z^m coefficient of exp(±Σ g_n p_n z^n/n) with
//! g_n = (1-t^{-n})/(1+(q/t)^n), and A^±_j is the z^{-j} coefficient of
//! exp(∓Σ (1-q^n) ∂/∂p_n z^{-n}). The highest weight is h = (u/v)a + (v/u)a⁻¹.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use qvir_exact::{linalg, Field, RatFunc, Var};
use rayon::prelude::*;

use crate::params::{div, inv, pw, Params};
use crate::partitions::{partitions_of, surjection_count, Partition};
use crate::symfunc::{e_in_p, j_at_q1, macdonald, Form, SymError, SymFunc};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FockError {
    #[error("mode action would reach degree {0}, above the cap {1}")]
    DegreeOverflow(usize, usize),
    #[error("image is not proportional to the Macdonald function: {0}")]
    NotProportional(String),
    #[error("{what}: expected {expected}, got {got}")]
    Mismatch { what: String, expected: String, got: String },
    #[error("singular matrix")]
    Singular,
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("{0}")]
    Verma(String),
}

fn frac<F: Field>(n: i64, d: i64) -> F {
    F::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// ∂_{p_μ} p_λ = c p_ν.
fn derivative(lam: &Partition, mu: &Partition) -> Option<(Partition, i64)> {
    let mut cur = lam.clone();
    let mut c = 1i64;
    for (n, k) in mu.multiplicities() {
        let m = lam.parts().iter().filter(|&&p| p == n).count();
        if m < k {
            return None;
        }
        for i in 0..k {
            c *= (m - i) as i64;
            cur = cur.remove_part(n).unwrap();
        }
    }
    Some((cur, c))
}

/// The mode action at a fixed zero-mode value `a`, prepared up to a degree cap.
pub struct Fock<F> {
    params: Params<F>,
    a: F,
    cap: usize,
    creation: [Vec<SymFunc<F>>; 2],
    annihilation: [Vec<Vec<(Partition, F)>>; 2],
    base: [F; 2],
    ratio: [F; 2],
}

impl<F: Field> Fock<F> {
    pub fn new(params: Params<F>, a: F, cap: usize) -> Self {
        let mut creation = [Vec::new(), Vec::new()];
        let mut annihilation = [Vec::new(), Vec::new()];
        let g: Vec<F> = (0..=cap)
            .map(|n| {
                if n == 0 {
                    return F::zero();
                }
                let n = n as i64;
                div(&F::one().fsub(&params.qt(0, -n)), &F::one().fadd(&params.qt(n, -n)))
            })
            .collect();
        for (s, sign) in [(0usize, 1i64), (1, -1)] {
            for m in 0..=cap {
                let mut c = SymFunc::zero();
                for lam in partitions_of(m) {
                    let mut x = frac::<F>(1, lam.z() as i64);
                    for &part in lam.parts() {
                        x = x.fmul(&g[part]).fmul(&F::from_i64(sign));
                    }
                    c.add_term(lam, &x);
                }
                creation[s].push(c);
                let mut a_j = Vec::new();
                for mu in partitions_of(m) {
                    let mut x = F::one();
                    for (n, k) in mu.multiplicities() {
                        let base = F::one().fsub(&params.qt(n as i64, 0)).fmul(&F::from_i64(-sign));
                        let mut fact = 1i64;
                        for i in 1..=k {
                            fact *= i as i64;
                        }
                        x = x.fmul(&pw(&base, k as i64)).fmul(&frac(1, fact));
                    }
                    if !x.is_zero() {
                        a_j.push((mu, x));
                    }
                }
                annihilation[s].push(a_j);
            }
        }
        let uv = params.uv(1, -1);
        let vu = params.uv(-1, 1);
        let base = [uv.fmul(&a), vu.fmul(&inv(&a))];
        Fock { params, a, cap, creation, annihilation, base, ratio: [uv, vu] }
    }

    pub fn params(&self) -> &Params<F> {
        &self.params
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The highest weight T_0 . 1 / 1.
    pub fn h(&self) -> F {
        self.params.h_of_a(&self.a)
    }

    fn annihilate(&self, state: &SymFunc<F>, j: usize, s: usize) -> SymFunc<F> {
        let mut out = SymFunc::zero();
        for (mu, c) in &self.annihilation[s][j] {
            for (lam, x) in state.terms() {
                if let Some((nu, k)) = derivative(lam, mu) {
                    out.add_term(nu, &c.fmul(x).fmul(&F::from_i64(k)));
                }
            }
        }
        out
    }

    /// T_k applied to `state`.
    pub fn mode(&self, k: i64, state: &SymFunc<F>) -> Result<SymFunc<F>, FockError> {
        let d = state.degree();
        if (d as i64) - k > self.cap as i64 {
            return Err(FockError::DegreeOverflow((d as i64 - k) as usize, self.cap));
        }
        let mut out = SymFunc::zero();
        for s in 0..2 {
            let pref = self.base[s].fmul(&pw(&self.ratio[s], k));
            for j in 0..=d {
                let m = j as i64 - k;
                if m < 0 {
                    continue;
                }
                let st = if j == 0 { state.clone() } else { self.annihilate(state, j, s) };
                if st.is_zero() {
                    continue;
                }
                let prod = st.mul(&self.creation[s][m as usize]);
                out.add_scaled(&prod, &pref);
            }
        }
        Ok(out)
    }

    /// T_{-λ}.1 = T_{-λ_1} T_{-λ_2} ... 1.
    pub fn lower(&self, lam: &Partition) -> Result<SymFunc<F>, FockError> {
        let mut st = SymFunc::one();
        for &part in lam.parts().iter().rev() {
            st = self.mode(-(part as i64), &st)?;
        }
        Ok(st)
    }

    /// ι(Σ c_λ T_{-λ}.1).
    pub fn iota(&self, v: &BTreeMap<Partition, F>) -> Result<SymFunc<F>, FockError> {
        let mut out = SymFunc::zero();
        for (lam, c) in v {
            out.add_scaled(&self.lower(lam)?, c);
        }
        Ok(out)
    }

    /// Shapovalov pairing entry: constant term of T_{λ_ℓ}...T_{λ_1} applied to `img`.
    pub fn pair_with(&self, lam: &Partition, img: &SymFunc<F>) -> Result<F, FockError> {
        let mut st = img.clone();
        for &part in lam.parts() {
            st = self.mode(part as i64, &st)?;
            if st.is_zero() {
                break;
            }
        }
        Ok(st.constant_term())
    }

    /// Gram matrix K_n in the canonical partition order.
    pub fn gram(&self, n: usize) -> Result<Vec<Vec<F>>, FockError> {
        let ps = partitions_of(n);
        let imgs: Vec<SymFunc<F>> = ps.par_iter().map(|mu| self.lower(mu)).collect::<Result<_, _>>()?;
        let cells: Vec<(usize, usize)> = (0..ps.len()).flat_map(|i| (0..ps.len()).map(move |j| (i, j))).collect();
        let vals: Vec<F> =
            cells.par_iter().map(|&(i, j)| self.pair_with(&ps[i], &imgs[j])).collect::<Result<_, _>>()?;
        Ok(vals.chunks(ps.len()).map(|r| r.to_vec()).collect())
    }
}

/// Symbolic realization in (u, v, a).
pub fn symbolic(cap: usize) -> Fock<RatFunc> {
    Fock::new(Params::symbolic(), RatFunc::var(Var::A), cap)
}

/// Symbolic realization with a specialized to the value where h = h_{r,s}.
pub fn symbolic_at_hrs(r: i64, s: i64, cap: usize) -> Fock<RatFunc> {
    let p = Params::symbolic();
    let a = p.a_rs(r, s);
    Fock::new(p, a, cap)
}

/// ∏_{i≤r, j≤s} (q^j - t^i)/(q^j t^i).
pub fn normalization_product<F: Field>(p: &Params<F>, r: i64, s: i64) -> F {
    let mut b = F::one();
    for i in 1..=r {
        for j in 1..=s {
            b = b.fmul(&div(&p.qt(j, 0).fsub(&p.qt(0, i)), &p.qt(j, i)));
        }
    }
    b
}

/// Divides `img` by `j` coefficient-wise and returns the common ratio.
pub fn proportionality<F: Field>(img: &SymFunc<F>, j: &SymFunc<F>) -> Result<F, FockError> {
    let keys: std::collections::BTreeSet<&Partition> = img.terms().keys().chain(j.terms().keys()).collect();
    let mut ratio: Option<F> = None;
    for k in keys {
        let (a, b) = (img.coeff(k), j.coeff(k));
        if b.is_zero() {
            return Err(FockError::NotProportional(format!("image has p{} but the target does not", k)));
        }
        let r = div(&a, &b);
        match &ratio {
            None => ratio = Some(r),
            Some(x) if *x == r => {}
            Some(x) => return Err(FockError::NotProportional(format!("ratio {} at p{} differs from {}", r, k, x))),
        }
    }
    ratio.ok_or_else(|| FockError::NotProportional("both sides vanish".into()))
}

/// Result of the normalization check for one (r, s).
#[derive(Clone, Debug)]
pub struct Normalization {
    pub r: i64,
    pub s: i64,
    pub scalar: RatFunc,
    pub expected: RatFunc,
    pub image: SymFunc<RatFunc>,
}

/// ι(v_{r,s}) divided by J_{(s^r)}(q,t), asserted equal to
/// ∏_{i≤r, j≤s} (q^j - t^i)/(q^j t^i).
pub fn verify_singular_normalization(r: i64, s: i64) -> Result<Normalization, FockError> {
    let sv = crate::verma::singular_vector(r, s).map_err(|e| FockError::Verma(e.to_string()))?;
    let n = (r * s) as usize;
    let fock = symbolic_at_hrs(r, s, n);
    let image = fock.iota(sv.vector.terms())?;
    let j = macdonald(&Partition::rectangle(s as usize, r as usize), Form::J)?;
    let scalar = proportionality(&image, &j)?;
    let expected = normalization_product(&Params::symbolic(), r, s);
    if scalar != expected {
        return Err(FockError::Mismatch {
            what: format!("normalization of v_({},{})", r, s),
            expected: expected.to_string(),
            got: scalar.to_string(),
        });
    }
    Ok(Normalization { r, s, scalar, expected, image })
}

fn t() -> RatFunc {
    RatFunc::var(Var::V).pow(2).unwrap()
}

/// z⁺_μ(t) = ∏ m_i! (i (1+t^{-i})/(1-t^{-i}))^{m_i}.
fn z_plus(mu: &Partition) -> RatFunc {
    let mut z = RatFunc::one();
    for (i, m) in mu.multiplicities() {
        let i = i as i64;
        let ti = t().pow(-i).unwrap();
        let f = &(&RatFunc::one() + &ti) / &(&RatFunc::one() - &ti) * RatFunc::from_i64(i);
        for k in 1..=m {
            z = &z * &f * RatFunc::from_i64(k as i64);
        }
    }
    z
}

/// Row λ of M(T,p) at q = 1 on M(h_{r,s}) from the closed multinomial formula:
/// t^{(|λ|+ℓ r)/2} Σ_{μ^i ⊢ λ_i} ∏_i (1 + t^{-r} ∏_j (-t^{-μ^i_j}))/z⁺_{μ^i}(t) p_{∪μ^i}.
pub fn q1_transition_closed(lam: &Partition, r: i64) -> SymFunc<RatFunc> {
    let v = RatFunc::var(Var::V);
    let pre = v.pow(lam.size() as i64 + lam.len() as i64 * r).unwrap();
    let mut acc = SymFunc::monomial(Partition::empty(), pre);
    for &part in lam.parts() {
        let mut factor = SymFunc::zero();
        for mu in partitions_of(part) {
            let mut prod = RatFunc::one();
            for &x in mu.parts() {
                prod = &prod * &(-t().pow(-(x as i64)).unwrap());
            }
            let c = &(&RatFunc::one() + &(&t().pow(-r).unwrap() * &prod)) / &z_plus(&mu);
            factor.add_term(mu, &c);
        }
        acc = acc.mul(&factor);
    }
    acc
}

/// Row λ of M(T,p) at q = 1 by iterating the mode action with u = 1 and
/// a = k = t^{(r+1)/2}.
pub fn q1_transition_modes(lam: &Partition, r: i64) -> Result<SymFunc<RatFunc>, FockError> {
    let p = Params::new(RatFunc::one(), RatFunc::var(Var::V));
    let k = RatFunc::var(Var::V).pow(r + 1).unwrap();
    Fock::new(p, k, lam.size()).lower(lam)
}

/// Both paths for one row, asserting agreement.
pub fn q1_transition(lam: &Partition, r: i64) -> Result<SymFunc<RatFunc>, FockError> {
    let a = q1_transition_closed(lam, r);
    let b = q1_transition_modes(lam, r)?;
    if a != b {
        return Err(FockError::Mismatch {
            what: format!("M(T,p) row {} at r={}", lam, r),
            expected: format!("{:?}", a.terms()),
            got: format!("{:?}", b.terms()),
        });
    }
    Ok(a)
}

/// ∏_{i≤r} (t^i/(1-t^i)²)^s.
pub fn q1_corner_product(r: i64, s: i64) -> RatFunc {
    let mut x = RatFunc::one();
    for i in 1..=r {
        let ti = t().pow(i).unwrap();
        let f = &ti / &(&RatFunc::one() - &ti).pow(2).unwrap();
        x = &x * &f.pow(s).unwrap();
    }
    x
}

/// M(e,T)_{row,(1^n)} = (M(e,p) M(T,p)^{-1})_{row,(1^n)} at q = 1 on M(h_{r,·}).
pub fn q1_met_entry(row: &Partition, r: i64) -> Result<RatFunc, FockError> {
    let ps = partitions_of(row.size());
    let mtp: Vec<SymFunc<RatFunc>> = ps.iter().map(|l| q1_transition_closed(l, r)).collect();
    // x M(T,p) = M(e,p)_row  <=>  M(T,p)^T x^T = row^T
    let mt: Vec<Vec<RatFunc>> = (0..ps.len()).map(|j| (0..ps.len()).map(|i| mtp[i].coeff(&ps[j])).collect()).collect();
    let e = e_in_p::<RatFunc>(row);
    let b: Vec<RatFunc> = ps.iter().map(|mu| e.coeff(mu)).collect();
    let x = linalg::solve(&mt, &b).map_err(|_| FockError::Singular)?;
    Ok(x[ps.len() - 1].clone())
}

/// The corner entry of M(e,T) at q = 1 for the rectangle (s^r), asserted equal
/// to ∏_{i≤r} (t^i/(1-t^i)²)^s. The row is e_{λ'} with λ' = (r^s), the one that
/// pairs with J_λ(1,t) ∝ e_{λ'}.
pub fn q1_met_corner(r: i64, s: i64) -> Result<RatFunc, FockError> {
    let corner = q1_met_entry(&Partition::rectangle(r as usize, s as usize), r)?;
    let expected = q1_corner_product(r, s);
    if corner != expected {
        return Err(FockError::Mismatch {
            what: format!("M(e,T) corner at ({},{})", r, s),
            expected: expected.to_string(),
            got: corner.to_string(),
        });
    }
    Ok(corner)
}

/// The q = 1 normalization: writing J_{(s^r)}(1,t) = c e_{λ'} in the T-basis of
/// M(h_{r,s}), the coefficient of T_{-1}^{rs} is c M(e,T)_{λ',(1^{rs})}; its
/// inverse is asserted equal to ∏_{i≤r} ((1-t^i)/t^i)^s.
pub fn q1_normalization(r: i64, s: i64) -> Result<RatFunc, FockError> {
    let lam = Partition::rectangle(s as usize, r as usize);
    let jq1 = j_at_q1(&lam);
    let e = e_in_p::<RatFunc>(&lam.conjugate());
    let c = proportionality(&jq1, &e)?;
    let corner = q1_met_entry(&lam.conjugate(), r)?;
    let scalar = (&c * &corner).inv().map_err(|_| FockError::Singular)?;
    let mut expected = RatFunc::one();
    for i in 1..=r {
        let ti = t().pow(i).unwrap();
        expected = &expected * &(&(&RatFunc::one() - &ti) / &ti).pow(s).unwrap();
    }
    if scalar != expected {
        return Err(FockError::Mismatch {
            what: format!("q=1 normalization at ({},{})", r, s),
            expected: expected.to_string(),
            got: scalar.to_string(),
        });
    }
    Ok(scalar)
}

/// L'_{λ,μ} used by M(e,p); exposed for tests.
pub fn l_transpose(lam: &Partition, mu: &Partition) -> u64 {
    surjection_count(mu, lam).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma::{gram_abstract, WeightSpec};

    #[test]
    fn highest_weight_matches_params() {
        let f = symbolic(2);
        assert_eq!(f.h(), f.params().h_of_a(f.a()));
    }

    #[test]
    fn level_two_gram_matches_abstract() {
        let fock = symbolic(2).gram(2).unwrap();
        assert_eq!(fock, gram_abstract(2, &WeightSpec::Generic).entries);
    }

    #[test]
    fn lowest_normalization_by_hand() {
        // ι(T_{-1}1) at h_{1,1} is (q - t)/(qt) times J_(1)
        let q = RatFunc::var(Var::U).pow(2).unwrap();
        let t = t();
        let n = verify_singular_normalization(1, 1).unwrap();
        assert_eq!(n.scalar, &(&q - &t) / &(&q * &t));
    }

    #[test]
    fn q1_transition_paths_agree() {
        let lam = Partition::new(vec![2, 1]);
        assert_eq!(q1_transition_closed(&lam, 2), q1_transition_modes(&lam, 2).unwrap());
    }
}
