use std::fmt;

/// Number of symbols in the working alphabet.
pub const NVARS: usize = 14;

/// Symbols of the working alphabet.
///
/// `U`, `V`, `W`, `A` stand for `q^{1/2}`, `t^{1/2}`, `Q^{1/2}` and `q^alpha`;
/// `Sb` is `beta^{1/2}`; `Z` is a generating-function variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    W,
    A,
    H,
    Hp,
    C,
    X,
    Z,
    E1,
    E2,
    B,
    Sb,
    Hb,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::U,
        Var::V,
        Var::W,
        Var::A,
        Var::H,
        Var::Hp,
        Var::C,
        Var::X,
        Var::Z,
        Var::E1,
        Var::E2,
        Var::B,
        Var::Sb,
        Var::Hb,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::W => "w",
            Var::A => "a",
            Var::H => "h",
            Var::Hp => "hp",
            Var::C => "c",
            Var::X => "x",
            Var::Z => "z",
            Var::E1 => "e1",
            Var::E2 => "e2",
            Var::B => "b",
            Var::Sb => "sb",
            Var::Hb => "hb",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector; lexicographic order with `U` most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Monomial {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Monomial {
        let mut m = [0; NVARS];
        for &(v, e) in pairs {
            m[v.index()] += e;
        }
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        Monomial(m)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a *= k;
        }
        Monomial(m)
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    pub fn min_exp(&self, o: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn max_exp(&self, o: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }

    /// True when every exponent of `self` is at least the one in `o`.
    pub fn ge_all(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Var::from_index(i), e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in Var::ALL {
            assert_eq!(Var::from_name(v.name()), Some(v));
        }
    }

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::from_pairs(&[(Var::U, 2), (Var::V, -1)]);
        let b = Monomial::var(Var::V, 3);
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.pow(2).exp(Var::U), 4);
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(a.total_degree(), 1);
    }
}
