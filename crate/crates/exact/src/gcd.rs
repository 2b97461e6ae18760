//! Polynomial gcd over the rationals: trivial cases, trial division, variable
//! elimination by contents, exponent compression and multi-modular Brown gcd.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::modp::{self, MPoly};
use crate::poly::LaurentPoly;
use crate::var::{Monomial, Var, NVARS};

/// Gcd of two polynomials (nonnegative exponents) over Q, normalized to an
/// integer primitive polynomial with positive leading coefficient.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let mono = LaurentPoly::monomial(ma.min_exp(mb), BigRational::one());
    let a1 = a.mul_monomial(&ma.inv());
    let b1 = b.mul_monomial(&mb.inv());
    gcd_no_monomial(&a1, &b1).mul(&mono)
}

fn gcd_no_monomial(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    let pa = a.primitive();
    let pb = b.primitive();
    if pa == pb || pa == pb.neg() {
        return pa;
    }
    if pa.len() >= pb.len() {
        if pa.div_exact(&pb).is_some() {
            return pb;
        }
    } else if pb.div_exact(&pa).is_some() {
        return pa;
    }
    let used_a = pa.vars_used();
    let used_b = pb.vars_used();
    for i in 0..NVARS {
        if used_a[i] && !used_b[i] {
            return gcd_no_monomial(&content_in(&pa, Var::from_index(i)), &pb);
        }
        if used_b[i] && !used_a[i] {
            return gcd_no_monomial(&pa, &content_in(&pb, Var::from_index(i)));
        }
    }
    modular_gcd(&pa, &pb)
}

/// Gcd of the coefficients of `a` regarded as a polynomial in `v`.
fn content_in(a: &LaurentPoly, v: Var) -> LaurentPoly {
    let i = v.index();
    let mut groups: std::collections::BTreeMap<i32, Vec<(Monomial, BigRational)>> =
        std::collections::BTreeMap::new();
    for (m, c) in a.terms() {
        let mut k = *m;
        let e = k.0[i];
        k.0[i] = 0;
        groups.entry(e).or_default().push((k, c.clone()));
    }
    let mut polys: Vec<LaurentPoly> = groups.into_values().map(LaurentPoly::from_terms).collect();
    polys.sort_by_key(|p| p.len());
    let mut g = LaurentPoly::zero();
    for p in polys {
        g = poly_gcd(&g, &p);
        if g.is_constant() {
            return LaurentPoly::one();
        }
    }
    g
}

type IPoly = Vec<(Vec<u32>, BigInt)>;

fn modular_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    // Dense relabelling of the variables in use, after dividing every exponent
    // by the common gcd per variable. Highest-degree variable first.
    let used_a = a.vars_used();
    let used_b = b.vars_used();
    let mut vars: Vec<(usize, i32, i32)> = Vec::new();
    for i in 0..NVARS {
        if used_a[i] || used_b[i] {
            let mut g = 0i32;
            let mut deg = 0i32;
            for (m, _) in a.terms().iter().chain(b.terms().iter()) {
                g = g.gcd(&m.0[i]);
                deg = deg.max(m.0[i]);
            }
            vars.push((i, g.max(1), deg / g.max(1)));
        }
    }
    vars.sort_by(|x, y| y.2.cmp(&x.2).then(x.0.cmp(&y.0)));
    let to_dense = |p: &LaurentPoly| -> IPoly {
        let mut out: IPoly = p
            .terms()
            .iter()
            .map(|(m, c)| {
                debug_assert!(c.is_integer());
                (vars.iter().map(|&(i, g, _)| (m.0[i] / g) as u32).collect(), c.numer().clone())
            })
            .collect();
        out.sort_by(|x, y| y.0.cmp(&x.0));
        out
    };
    let da = to_dense(a);
    let db = to_dense(b);
    let g = zgcd(&da, &db, vars.len());
    LaurentPoly::from_terms(g.into_iter().map(|(e, c)| {
        let mut m = Monomial::ONE;
        for (k, &(i, gi, _)) in vars.iter().enumerate() {
            m.0[i] = e[k] as i32 * gi;
        }
        (m, BigRational::from_integer(c))
    }))
    .primitive()
}

fn reduce(a: &IPoly, p: u64) -> MPoly {
    let pb = BigInt::from(p);
    a.iter()
        .filter_map(|(e, c)| {
            let r = c.mod_floor(&pb);
            let r = r.to_u64_digits().1.first().copied().unwrap_or(0);
            if r == 0 {
                None
            } else {
                Some((e.clone(), r))
            }
        })
        .collect()
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64_digits().1.first().copied().unwrap_or(0)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let half = m >> 1;
    if c > &half {
        c - m
    } else {
        c.clone()
    }
}

fn to_laurent(a: &IPoly) -> LaurentPoly {
    LaurentPoly::from_terms(a.iter().map(|(e, c)| {
        let mut m = Monomial::ONE;
        for (k, &x) in e.iter().enumerate() {
            m.0[k] = x as i32;
        }
        (m, BigRational::from_integer(c.clone()))
    }))
}

/// Gcd over Z of primitive nonconstant polynomials in `k` dense variables.
fn zgcd(a: &IPoly, b: &IPoly, k: usize) -> IPoly {
    let lca = &a[0].1;
    let lcb = &b[0].1;
    let gamma = lca.gcd(lcb);
    let la = to_laurent(a);
    let lb = to_laurent(b);
    let mut acc: Option<(std::collections::BTreeMap<Vec<u32>, BigInt>, BigInt, Vec<u32>)> = None;
    let mut previous: Option<IPoly> = None;
    for &p in modp::PRIMES.iter() {
        if residue(lca, p) == 0 || residue(lcb, p) == 0 {
            continue;
        }
        let ap = reduce(a, p);
        let bp = reduce(b, p);
        let gp = modp::m_gcd(&ap, &bp, k, p);
        if gp.len() == 1 && gp[0].0.iter().all(|&e| e == 0) {
            return vec![(vec![0; k], BigInt::one())];
        }
        let gm = residue(&gamma, p);
        let gp: Vec<(Vec<u32>, u64)> = gp.into_iter().map(|(e, c)| (e, modp::mul_mod(c, gm, p))).collect();
        let lm = gp[0].0.clone();
        let restart = match &acc {
            None => true,
            Some((_, _, cur)) => match lm.cmp(cur) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => false,
            },
        };
        if restart {
            let coeffs = gp.iter().map(|(e, c)| (e.clone(), BigInt::from(*c))).collect();
            acc = Some((coeffs, BigInt::from(p), lm));
            previous = None;
            continue;
        }
        let (coeffs, modulus, _) = acc.as_mut().unwrap();
        let image: std::collections::BTreeMap<Vec<u32>, u64> = gp.into_iter().collect();
        let mut keys: Vec<Vec<u32>> = coeffs.keys().cloned().collect();
        keys.extend(image.keys().filter(|k| !coeffs.contains_key(*k)).cloned());
        let minv = BigInt::from(modp::inv_mod(residue(modulus, p), p));
        let pb = BigInt::from(p);
        for key in keys {
            let old = coeffs.get(&key).cloned().unwrap_or_else(BigInt::zero);
            let target = BigInt::from(*image.get(&key).unwrap_or(&0));
            let t = ((target - &old) * &minv).mod_floor(&pb);
            let new = old + &*modulus * t;
            if new.is_zero() {
                coeffs.remove(&key);
            } else {
                coeffs.insert(key, new);
            }
        }
        *modulus *= &pb;
        let mut cand: IPoly = coeffs
            .iter()
            .map(|(e, c)| (e.clone(), symmetric(c, modulus)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        cand.sort_by(|x, y| y.0.cmp(&x.0));
        if previous.as_ref() == Some(&cand) {
            let lc = to_laurent(&cand).primitive();
            if la.div_exact(&lc).is_some() && lb.div_exact(&lc).is_some() {
                let mut out: IPoly = lc
                    .terms()
                    .iter()
                    .map(|(m, c)| (m.0[..k].iter().map(|&x| x as u32).collect(), c.numer().clone()))
                    .collect();
                out.sort_by(|x, y| y.0.cmp(&x.0));
                if out[0].1.sign() == Sign::Minus {
                    for t in out.iter_mut() {
                        t.1 = -t.1.clone();
                    }
                }
                return out;
            }
        }
        previous = Some(cand);
    }
    panic!("modular gcd: prime list exhausted");
}

