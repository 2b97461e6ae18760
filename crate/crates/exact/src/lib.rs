//! Exact arithmetic kernel: multivariate Laurent polynomials and reduced
//! rational functions over the rationals, truncated power series, Bareiss
//! elimination and evaluation at rational or modular points.

pub mod field;
pub mod gcd;
pub mod identity;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod var;

use num_rational::BigRational;

pub use field::{EvalError, Field, Fp, Point, P61, Q};
pub use identity::{EqualityMode, ModularVerdict, PointSampler};
pub use poly::LaurentPoly;
pub use ratfunc::{ArithError, RatFunc};
pub use series::{series_substitute, series_substitute_exp, SeriesError, TruncSeries};
pub use var::{Monomial, Var, NVARS};

/// Result of [`evaluate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// Evaluates `f` at a rational point, optionally reducing modulo a prime.
pub fn evaluate(f: &RatFunc, point: &[(Var, BigRational)], modulus: Option<u64>) -> Result<Value, EvalError> {
    let describe = || {
        point.iter().map(|(v, x)| format!("{}={}", v, x)).collect::<Vec<_>>().join(", ")
    };
    match modulus {
        None => {
            let mut p = Point::new();
            for (v, x) in point {
                p.set(*v, Q(x.clone()));
            }
            f.eval(&p).map(|q| Value::Rational(q.0)).map_err(|e| match e {
                EvalError::Pole(_) => EvalError::Pole(describe()),
                other => other,
            })
        }
        Some(m) => {
            let mut vals = Vec::new();
            for (v, x) in point {
                let r = field::rational_mod(x, m).ok_or_else(|| EvalError::Pole(describe()))?;
                vals.push((*v, r));
            }
            let n = eval_poly_mod(f.numer(), &vals, m)?;
            let d = eval_poly_mod(f.denom(), &vals, m)?;
            if d == 0 {
                return Err(EvalError::Pole(describe()));
            }
            Ok(Value::Residue { value: modp::mul_mod(n, modp::inv_mod(d, m), m), modulus: m })
        }
    }
}

fn eval_poly_mod(p: &LaurentPoly, vals: &[(Var, u64)], m: u64) -> Result<u64, EvalError> {
    let mut acc = 0u64;
    for (mono, c) in p.terms() {
        let mut t = field::rational_mod(c, m).ok_or_else(|| EvalError::Pole("coefficient".into()))?;
        for (v, e) in mono.vars() {
            let x = vals.iter().find(|(w, _)| *w == v).map(|(_, x)| *x).ok_or(EvalError::Unassigned(v))?;
            let base = if e < 0 {
                if x == 0 {
                    return Err(EvalError::Pole(v.to_string()));
                }
                modp::inv_mod(x, m)
            } else {
                x
            };
            t = modp::mul_mod(t, modp::pow_mod(base, e.unsigned_abs() as u64, m), m);
        }
        acc = modp::add_mod(acc, t, m);
    }
    Ok(acc)
}
