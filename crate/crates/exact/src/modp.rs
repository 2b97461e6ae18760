//! Arithmetic modulo word-sized primes and the dense/sparse polynomial
//! helpers used by the modular gcd.

use std::collections::BTreeMap;

/// Primes just below 2^62, used for multi-modular reconstruction.
pub const PRIMES: [u64; 64] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
    4611686018427387091,
    4611686018427387073,
    4611686018427386981,
    4611686018427386923,
    4611686018427386911,
    4611686018427386903,
    4611686018427386897,
    4611686018427386887,
    4611686018427386707,
    4611686018427386663,
    4611686018427386611,
    4611686018427386551,
    4611686018427386471,
    4611686018427386389,
    4611686018427386351,
    4611686018427386329,
    4611686018427386323,
    4611686018427386309,
    4611686018427386287,
    4611686018427386231,
    4611686018427386207,
    4611686018427386203,
    4611686018427386201,
    4611686018427386081,
    4611686018427386023,
    4611686018427385993,
    4611686018427385981,
    4611686018427385861,
    4611686018427385831,
    4611686018427385801,
    4611686018427385763,
    4611686018427385717,
    4611686018427385687,
    4611686018427385657,
    4611686018427385619,
    4611686018427385553,
    4611686018427385537,
    4611686018427385529,
    4611686018427385507,
    4611686018427385483
];

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat; `p` prime).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Dense univariate polynomial mod p, coefficients low degree first, trimmed.
pub type UPoly = Vec<u64>;

pub fn u_trim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn u_deg(a: &UPoly) -> i64 {
    a.len() as i64 - 1
}

pub fn u_eval(a: &UPoly, x: u64, p: u64) -> u64 {
    let mut r = 0;
    for &c in a.iter().rev() {
        r = add_mod(mul_mod(r, x, p), c, p);
    }
    r
}

pub fn u_scale(a: &UPoly, c: u64, p: u64) -> UPoly {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| mul_mod(x, c, p)).collect()
}

pub fn u_add(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly = (0..n)
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    u_trim(&mut r);
    r
}

pub fn u_mul(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = add_mod(r[i + j], mul_mod(x, y, p), p);
        }
    }
    u_trim(&mut r);
    r
}

/// Quotient and remainder; `b` nonzero.
pub fn u_divrem(a: &UPoly, b: &UPoly, p: u64) -> (UPoly, UPoly) {
    let mut r = a.clone();
    u_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        q[k] = c;
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = sub_mod(r[k + j], mul_mod(c, y, p), p);
        }
        r.pop();
        u_trim(&mut r);
    }
    u_trim(&mut q);
    (q, r)
}

pub fn u_monic(a: &UPoly, p: u64) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => u_scale(a, inv_mod(l, p), p),
    }
}

pub fn u_gcd(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    u_trim(&mut x);
    u_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = u_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    u_monic(&x, p)
}

/// Sparse multivariate polynomial mod p over a dense block of `k` variables;
/// terms sorted by decreasing exponent vector, no zero coefficients.
pub type MPoly = Vec<(Vec<u32>, u64)>;

fn is_const(a: &MPoly) -> bool {
    a.len() == 1 && a[0].0.iter().all(|&e| e == 0)
}

fn m_monic(a: &MPoly, p: u64) -> MPoly {
    let inv = inv_mod(a[0].1, p);
    a.iter().map(|(e, c)| (e.clone(), mul_mod(*c, inv, p))).collect()
}

/// Groups terms by all but the last exponent (prefixes stay in decreasing order).
fn split_last(a: &MPoly) -> Vec<(Vec<u32>, UPoly)> {
    let mut out: Vec<(Vec<u32>, UPoly)> = Vec::new();
    for (e, c) in a {
        let k = e.len() - 1;
        let prefix = &e[..k];
        let d = e[k] as usize;
        match out.last_mut() {
            Some((pre, poly)) if pre.as_slice() == prefix => {
                if poly.len() <= d {
                    poly.resize(d + 1, 0);
                }
                poly[d] = *c;
            }
            _ => {
                let mut poly = vec![0u64; d + 1];
                poly[d] = *c;
                out.push((prefix.to_vec(), poly));
            }
        }
    }
    out
}

fn join_last(parts: &[(Vec<u32>, UPoly)]) -> MPoly {
    let mut out = Vec::new();
    for (pre, poly) in parts {
        for d in (0..poly.len()).rev() {
            if poly[d] != 0 {
                let mut e = pre.clone();
                e.push(d as u32);
                out.push((e, poly[d]));
            }
        }
    }
    out
}

fn eval_split(parts: &[(Vec<u32>, UPoly)], x: u64, p: u64) -> MPoly {
    parts
        .iter()
        .filter_map(|(pre, poly)| {
            let v = u_eval(poly, x, p);
            if v == 0 {
                None
            } else {
                Some((pre.clone(), v))
            }
        })
        .collect()
}

/// True when `d` divides `a` exactly.
pub fn m_divides(d: &MPoly, a: &MPoly, p: u64) -> bool {
    if a.is_empty() {
        return true;
    }
    let (lm, lc) = &d[0];
    let lc_inv = inv_mod(*lc, p);
    let mut rem: BTreeMap<Vec<u32>, u64> = a.iter().cloned().collect();
    while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), *c)) {
        if m.iter().zip(lm.iter()).any(|(x, y)| x < y) {
            return false;
        }
        let qm: Vec<u32> = m.iter().zip(lm.iter()).map(|(x, y)| x - y).collect();
        let qc = mul_mod(c, lc_inv, p);
        for (dm, dc) in d {
            let k: Vec<u32> = dm.iter().zip(qm.iter()).map(|(x, y)| x + y).collect();
            let delta = mul_mod(*dc, qc, p);
            let entry = rem.entry(k.clone()).or_insert(0);
            *entry = sub_mod(*entry, delta, p);
            if *entry == 0 {
                rem.remove(&k);
            }
        }
    }
    true
}

/// Monic gcd of two nonzero polynomials in `k` variables mod p (Brown's
/// dense modular algorithm, recursing on the last variable).
pub fn m_gcd(a: &MPoly, b: &MPoly, k: usize, p: u64) -> MPoly {
    if k == 1 {
        let to_u = |x: &MPoly| {
            let mut u = vec![0u64; x[0].0[0] as usize + 1];
            for (e, c) in x {
                u[e[0] as usize] = *c;
            }
            u
        };
        let g = u_gcd(&to_u(a), &to_u(b), p);
        return (0..g.len()).rev().filter(|&d| g[d] != 0).map(|d| (vec![d as u32], g[d])).collect();
    }
    let sa = split_last(a);
    let sb = split_last(b);
    let content = |s: &[(Vec<u32>, UPoly)]| {
        let mut g: UPoly = Vec::new();
        for (_, poly) in s {
            g = u_gcd(&g, poly, p);
            if g.len() == 1 {
                break;
            }
        }
        g
    };
    let ca = content(&sa);
    let cb = content(&sb);
    let strip = |s: &[(Vec<u32>, UPoly)], c: &UPoly| -> Vec<(Vec<u32>, UPoly)> {
        s.iter().map(|(pre, poly)| (pre.clone(), u_divrem(poly, c, p).0)).collect()
    };
    let a1 = strip(&sa, &ca);
    let b1 = strip(&sb, &cb);
    let c = u_gcd(&ca, &cb, p);
    let lca = a1[0].1.clone();
    let lcb = b1[0].1.clone();
    let g = u_gcd(&lca, &lcb, p);
    let da = a1.iter().map(|(_, q)| u_deg(q)).max().unwrap();
    let db = b1.iter().map(|(_, q)| u_deg(q)).max().unwrap();
    let bound = da.min(db) + u_deg(&g);
    let a1m = join_last(&a1);
    let b1m = join_last(&b1);
    let with_content = |h: &MPoly| -> MPoly {
        let parts = split_last(h);
        let scaled: Vec<(Vec<u32>, UPoly)> =
            parts.iter().map(|(pre, poly)| (pre.clone(), u_mul(poly, &c, p))).collect();
        m_monic(&join_last(&scaled), p)
    };

    struct Interp {
        parts: BTreeMap<Vec<u32>, UPoly>,
        modulus: UPoly,
        lm: Vec<u32>,
        npts: i64,
    }
    let mut state: Option<Interp> = None;
    let mut alpha: u64 = 0;
    loop {
        alpha += 1;
        let ga = u_eval(&g, alpha, p);
        if ga == 0 || u_eval(&lca, alpha, p) == 0 || u_eval(&lcb, alpha, p) == 0 {
            continue;
        }
        let aa = eval_split(&a1, alpha, p);
        let ba = eval_split(&b1, alpha, p);
        let gi = m_gcd(&aa, &ba, k - 1, p);
        if is_const(&gi) {
            let parts = vec![(vec![0u32; k - 1], c.clone())];
            return m_monic(&join_last(&parts), p);
        }
        let gi: MPoly = gi.iter().map(|(e, x)| (e.clone(), mul_mod(*x, ga, p))).collect();
        let lm = gi[0].0.clone();
        let mut changed = true;
        let restart = match &state {
            None => true,
            Some(st) => match lm.cmp(&st.lm) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => false,
            },
        };
        if restart {
            state = Some(Interp {
                parts: gi.iter().map(|(e, x)| (e.clone(), vec![*x])).collect(),
                modulus: vec![p - alpha % p, 1],
                lm,
                npts: 1,
            });
        } else {
            let st = state.as_mut().unwrap();
            let scale = inv_mod(u_eval(&st.modulus, alpha, p), p);
            let image: BTreeMap<Vec<u32>, u64> = gi.into_iter().collect();
            let mut keys: Vec<Vec<u32>> = st.parts.keys().cloned().collect();
            for key in image.keys() {
                if !st.parts.contains_key(key) {
                    keys.push(key.clone());
                }
            }
            changed = false;
            for key in keys {
                let cur = st.parts.entry(key.clone()).or_default();
                let target = *image.get(&key).unwrap_or(&0);
                let diff = sub_mod(target, u_eval(cur, alpha, p), p);
                if diff != 0 {
                    changed = true;
                    let corr = u_scale(&st.modulus, mul_mod(diff, scale, p), p);
                    *cur = u_add(cur, &corr, p);
                }
                if cur.is_empty() {
                    st.parts.remove(&key);
                }
            }
            st.modulus = u_mul(&st.modulus, &vec![p - alpha % p, 1], p);
            st.npts += 1;
        }
        let st = state.as_ref().unwrap();
        if st.npts > bound || (!changed && st.npts > 1) {
            let mut parts: Vec<(Vec<u32>, UPoly)> =
                st.parts.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            parts.reverse();
            let cont = content(&parts);
            let parts = strip(&parts, &cont);
            let cand = join_last(&parts);
            if m_divides(&cand, &a1m, p) && m_divides(&cand, &b1m, p) {
                return with_content(&cand);
            }
            if st.npts > bound {
                state = None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = (1 << 61) - 1;

    #[test]
    fn inverse_and_power() {
        for a in [1u64, 2, 12345, P - 1] {
            assert_eq!(mul_mod(a, inv_mod(a, P), P), 1);
        }
        assert_eq!(pow_mod(3, P - 1, P), 1);
    }

    #[test]
    fn univariate_division() {
        // (x - 2)(x + 5) = x^2 + 3x - 10
        let a = vec![sub_mod(0, 10, P), 3, 1];
        let b = vec![sub_mod(0, 2, P), 1];
        let (q, r) = u_divrem(&a, &b, P);
        assert_eq!(q, vec![5, 1]);
        assert!(r.is_empty());
        assert_eq!(u_monic(&u_gcd(&a, &u_mul(&b, &b, P), P), P), b);
        assert_eq!(u_eval(&a, 2, P), 0);
    }
}
