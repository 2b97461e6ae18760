//! The deformation parameters q = u², t = v² as elements of a field, plus
//! the weight parametrizations shared by the modules.

use qvir_exact::{Field, RatFunc, Var};

/// Raises `x` to an integer power; panics on 0^(-n).
pub fn pw<F: Field>(x: &F, e: i64) -> F {
    x.fpow(e).expect("zero raised to a negative power")
}

pub fn inv<F: Field>(x: &F) -> F {
    x.finv().expect("division by zero")
}

pub fn div<F: Field>(a: &F, b: &F) -> F {
    a.fmul(&inv(b))
}

/// (u, v) with q = u², t = v².
#[derive(Clone, Debug, PartialEq)]
pub struct Params<F> {
    pub u: F,
    pub v: F,
}

impl Params<RatFunc> {
    pub fn symbolic() -> Self {
        Params { u: RatFunc::var(Var::U), v: RatFunc::var(Var::V) }
    }
}

impl<F: Field> Params<F> {
    pub fn new(u: F, v: F) -> Self {
        Params { u, v }
    }

    /// u^i v^j.
    pub fn uv(&self, i: i64, j: i64) -> F {
        pw(&self.u, i).fmul(&pw(&self.v, j))
    }

    /// q^i t^j.
    pub fn qt(&self, i: i64, j: i64) -> F {
        self.uv(2 * i, 2 * j)
    }

    pub fn q(&self) -> F {
        self.qt(1, 0)
    }

    pub fn t(&self) -> F {
        self.qt(0, 1)
    }

    /// h = (u/v) a + (v/u) a⁻¹.
    pub fn h_of_a(&self, a: &F) -> F {
        self.uv(1, -1).fmul(a).fadd(&self.uv(-1, 1).fmul(&inv(a)))
    }

    /// h_{r,s} = t^{r/2} q^{-s/2} + t^{-r/2} q^{s/2}.
    pub fn h_rs(&self, r: i64, s: i64) -> F {
        self.uv(-s, r).fadd(&self.uv(s, -r))
    }

    /// The value a = t^{(r+1)/2} q^{-(s+1)/2} where h(a) = h_{r,s}.
    pub fn a_rs(&self, r: i64, s: i64) -> F {
        self.uv(-(s + 1), r + 1)
    }

    /// a in terms of w = Q^{1/2} for the bridge h = Q^{1/2} + Q^{-1/2}.
    pub fn a_of_w(&self, w: &F) -> F {
        self.uv(-1, 1).fmul(w)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use qvir_exact::Fp;

    #[test]
    fn a_rs_gives_h_rs() {
        let p = Params::symbolic();
        for (r, s) in [(1, 1), (2, 1), (1, 3)] {
            assert_eq!(p.h_of_a(&p.a_rs(r, s)), p.h_rs(r, s));
        }
    }

    #[test]
    fn qt_is_square_of_uv() {
        let p = Params::new(Fp::new(3), Fp::new(5));
        assert_eq!(p.qt(1, 1), Fp::new(225));
        assert_eq!(p.q().fmul(&p.qt(-1, 0)), Fp::one());
    }
}
