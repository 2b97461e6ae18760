//! Partitions, box statistics, counting functions and the weight-label sets
//! K^±_{P,Q} used in the classification of highest weights.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("box ({0},{1}) is not in the diagram")]
    NotABox(usize, usize),
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("P={0} and Q={1} are not coprime")]
    NotCoprime(u32, u32),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// `(k^m)`: m parts equal to k.
    pub fn rectangle(k: usize, m: usize) -> Self {
        if k == 0 {
            return Self::empty();
        }
        Partition(vec![k; m])
    }

    pub fn ones(n: usize) -> Self {
        Self::rectangle(1, n)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// λ_i with 1-based index, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// The partition without its largest part.
    pub fn rest(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// Prepends a part that is at least as large as every existing part.
    pub fn prepend(&self, k: usize) -> Partition {
        debug_assert!(self.first().is_none_or(|f| k >= f));
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        Partition(v)
    }

    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }

    /// Removes one copy of `k`.
    pub fn remove_part(&self, k: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.first().unwrap_or(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Multiplicities m_i(λ) as (part, count) pairs.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_default() += 1;
        }
        m.into_iter().collect()
    }

    /// z_λ = ∏ i^{m_i} m_i!.
    pub fn z(&self) -> u128 {
        let mut r: u128 = 1;
        for (i, m) in self.multiplicities() {
            for k in 1..=m {
                r *= (i * k) as u128;
            }
        }
        r
    }

    /// Boxes (i, j), 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// n(λ) = Σ (i-1) λ_i.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, (n) first and (1^n) last (reverse lexicographic).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen(n, n, &mut cur, &mut out);
    out
}

fn gen(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for k in (1..=max.min(n)).rev() {
        cur.push(k);
        gen(n - k, k, cur, out);
        cur.pop();
    }
}

/// Arm and leg of the box (i, j): (λ_i - j, λ'_j - i).
pub fn arm_leg(lam: &Partition, i: usize, j: usize) -> Result<(usize, usize), PartitionError> {
    if i == 0 || j == 0 || i > lam.len() || j > lam.part(i) {
        return Err(PartitionError::NotABox(i, j));
    }
    let legs = lam.0.iter().filter(|&&p| p >= j).count();
    Ok((lam.part(i) - j, legs - i))
}

/// Dominance order μ ≤ λ.
pub fn dominance_leq(mu: &Partition, lam: &Partition) -> Result<bool, PartitionError> {
    if mu.size() != lam.size() {
        return Err(PartitionError::SizeMismatch(mu.size(), lam.size()));
    }
    let (mut a, mut b) = (0, 0);
    for i in 1..=mu.len().max(lam.len()) {
        a += mu.part(i);
        b += lam.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn series_mul(a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// 1 + x^k + ... + x^{k m}, truncated at degree n.
fn geometric(k: usize, m: usize, n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    let mut e = 0;
    for _ in 0..=m {
        if e > n {
            break;
        }
        s[e] += 1;
        e += k;
    }
    s
}

/// The number of partitions of n.
pub fn count_p(n: usize) -> u64 {
    let mut s = vec![0u64; n + 1];
    s[0] = 1;
    for k in 1..=n {
        for i in k..=n {
            s[i] += s[i - k];
        }
    }
    s[n]
}

/// Coefficient of x^n in ∏_{k≥1} (1 - x^{kN})/(1 - x^k), i.e. partitions of n
/// with every multiplicity below N.
pub fn count_p_n(big_n: usize, n: usize) -> Result<u64, PartitionError> {
    if big_n < 1 {
        return Err(PartitionError::InvalidArgs("N must be positive".into()));
    }
    let mut s = vec![0u64; n + 1];
    s[0] = 1;
    for k in 1..=n {
        s = series_mul(&s, &geometric(k, big_n - 1, n), n);
    }
    Ok(s[n])
}

/// Coefficient of x^n in (1 + x^r + ... + x^{r(N-1-s)}) ∏_{k≠r} (1 + x^k + ... + x^{k(N-1)}).
pub fn count_q_n(big_n: usize, r: usize, s: usize, n: usize) -> Result<u64, PartitionError> {
    if r < 1 || s < 1 || s + 1 > big_n {
        return Err(PartitionError::InvalidArgs(format!("need r >= 1 and 1 <= s <= N-1, got N={} r={} s={}", big_n, r, s)));
    }
    let mut acc = geometric(r, big_n - 1 - s, n);
    for k in 1..=n {
        if k != r {
            acc = series_mul(&acc, &geometric(k, big_n - 1, n), n);
        }
    }
    Ok(acc[n])
}

/// Number of maps f from the parts of λ to the parts of μ with
/// μ_i = Σ_{f(j)=i} λ_j.
pub fn surjection_count(lam: &Partition, mu: &Partition) -> Result<u64, PartitionError> {
    if lam.size() != mu.size() {
        return Err(PartitionError::SizeMismatch(lam.size(), mu.size()));
    }
    let mut room: Vec<usize> = mu.0.clone();
    Ok(assign(&lam.0, 0, &mut room))
}

fn assign(parts: &[usize], j: usize, room: &mut [usize]) -> u64 {
    if j == parts.len() {
        return if room.iter().all(|&r| r == 0) { 1 } else { 0 };
    }
    let mut total = 0;
    for i in 0..room.len() {
        if room[i] >= parts[j] {
            room[i] -= parts[j];
            total += assign(parts, j + 1, room);
            room[i] += parts[j];
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A member of K^±_{P,Q} with its case label and the coincidence pattern of
/// the weights h_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLabel {
    pub r: i64,
    pub s: i64,
    pub case: String,
    pub degeneracy: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "P")]
    pub p: u32,
    #[serde(rename = "Q")]
    pub q: u32,
    pub sign: Sign,
    pub labels: Vec<WeightLabel>,
}

/// Enumerates K^+_{P,Q} = {0 ≤ r < P, 0 ≤ s ≤ Q, rQ + sP ≤ PQ} or
/// K^-_{P,Q} = {0 ≤ r < P, -Q ≤ s ≤ 0, rQ - sP ≤ PQ} and labels every pair
/// with its case 1±..4±.
pub fn classify_weights(p: u32, q: u32, sign: Sign) -> Result<Classification, PartitionError> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(PartitionError::NotCoprime(p, q));
    }
    let (pp, qq) = (p as i64, q as i64);
    let mut labels = Vec::new();
    for r in 0..pp {
        let srange: Vec<i64> = match sign {
            Sign::Plus => (0..=qq).collect(),
            Sign::Minus => (-qq..=0).collect(),
        };
        for s in srange {
            let ok = match sign {
                Sign::Plus => r * qq + s * pp <= pp * qq,
                Sign::Minus => r * qq - s * pp <= pp * qq,
            };
            if !ok {
                continue;
            }
            let sa = s.abs();
            let (case, degeneracy) = if r > 0 && sa > 0 && sa < qq {
                (1, "none")
            } else if r == 0 && sa > 0 && sa < qq {
                (2, "h_{-i-1} = h_i (i >= 0)")
            } else if r > 0 && sa == 0 {
                (3, "h_{2i} = h_{2i-1}")
            } else if r == 0 && sa == 0 {
                (4, "h_{2i} = h_{2i-1} = h_{-2i} = h_{-2i-1} (i >= 0)")
            } else {
                (
                    4,
                    match sign {
                        Sign::Plus => "h_{2i} = h_{2i-1} = h_{-2i-1} = -h_{-2i-2} (i >= 0)",
                        Sign::Minus => "h_{2i+1} = h_{2i} = h_{-2i-1} = -h_{-2i-2} (i >= 0)",
                    },
                )
            };
            labels.push(WeightLabel { r, s, case: format!("{}{}", case, sign.symbol()), degeneracy });
        }
    }
    Ok(Classification { p, q, sign, labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_of_four() {
        let ps: Vec<String> = partitions_of(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn conjugate_and_z() {
        let l = Partition::new(vec![3, 1]);
        assert_eq!(l.conjugate(), Partition::new(vec![2, 1, 1]));
        assert_eq!(Partition::new(vec![2, 2, 1]).z(), 8);
        assert_eq!(Partition::empty().z(), 1);
    }

    #[test]
    fn arm_leg_rejects_outside() {
        let l = Partition::new(vec![3, 1]);
        assert!(arm_leg(&l, 2, 2).is_err());
        assert!(arm_leg(&l, 3, 1).is_err());
    }

    #[test]
    fn p_n_with_large_n_is_p() {
        for n in 0..12 {
            assert_eq!(count_p_n(n + 1, n).unwrap(), count_p(n));
        }
    }
}
