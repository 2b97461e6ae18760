//! Randomized identity testing (Schwartz-Zippel) in the prime field F_p,
//! p = 2^61 - 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{EvalError, Field, Fp, Point, P61};
use crate::ratfunc::RatFunc;
use crate::var::{Var, NVARS};

/// How two exact values are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityMode {
    /// Canonical-form comparison.
    Symbolic,
    /// Agreement at `points` random points in F_p.
    Modular { points: usize, seed: u64 },
}

/// Source of random evaluation points.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn element(&mut self) -> Fp {
        Fp(self.rng.gen_range(2..P61))
    }

    /// A point assigning every variable of the alphabet.
    pub fn point(&mut self) -> Point<Fp> {
        let mut p = Point::new();
        for i in 0..NVARS {
            p.set(Var::from_index(i), self.element());
        }
        p
    }
}

/// Outcome of a modular comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum ModularVerdict {
    Equal,
    /// The witness point and both values.
    Different(Point<Fp>, Fp, Fp),
}

/// Compares `f` and `g` at `k` random points, retrying points where either
/// side has a pole (at most `k + 32` draws in total).
pub fn modular_equal(f: &RatFunc, g: &RatFunc, k: usize, seed: u64) -> Result<ModularVerdict, EvalError> {
    let mut sampler = PointSampler::new(seed);
    let mut done = 0;
    let mut tries = 0;
    let mut last_err = None;
    while done < k {
        if tries >= k + 32 {
            return Err(last_err.unwrap_or(EvalError::Pole("no usable point".into())));
        }
        tries += 1;
        let p = sampler.point();
        let (a, b) = match (f.eval(&p), g.eval(&p)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                last_err = Some(e);
                continue;
            }
        };
        if a != b {
            return Ok(ModularVerdict::Different(p, a, b));
        }
        done += 1;
    }
    Ok(ModularVerdict::Equal)
}

/// Equality under the chosen mode.
pub fn equal(f: &RatFunc, g: &RatFunc, mode: EqualityMode) -> bool {
    match mode {
        EqualityMode::Symbolic => f == g,
        EqualityMode::Modular { points, seed } => {
            matches!(modular_equal(f, g, points, seed), Ok(ModularVerdict::Equal))
        }
    }
}

impl Fp {
    pub fn is_unit(self) -> bool {
        !Field::is_zero(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic() {
        let mut a = PointSampler::new(7);
        let mut b = PointSampler::new(7);
        for _ in 0..5 {
            assert_eq!(a.element(), b.element());
        }
    }

    #[test]
    fn distinct_functions_are_told_apart() {
        let u = RatFunc::var(crate::Var::U);
        let v = &u + &RatFunc::one();
        assert!(matches!(modular_equal(&u, &v, 2, 1).unwrap(), ModularVerdict::Different(..)));
    }
}
