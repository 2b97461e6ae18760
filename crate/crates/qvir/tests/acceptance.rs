//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::Instant;

use num_rational::BigRational;
use qvir::agt::{pole_containment, q_inversion, residue_law, verify_triangle, Mode, BRIDGE};
use qvir::cache::{to_bytes, GramCache};
use qvir::classical::{self, labels};
use qvir::fock;
use qvir::partitions::{dominance_leq, partitions_of};
use qvir::report::Check;
use qvir::symfunc::{basis_convert, jack, macdonald, macdonald_to_jack_limit, pairing, Basis, Form, InnerProduct};
use qvir::verma::{self, WeightSpec};
use qvir::Params;
use qvir_exact::{RatFunc, Var, P61};

type Outcome = Result<String, String>;

fn checks(cs: Vec<Check>) -> Outcome {
    let n = cs.len();
    match cs.iter().find(|c| !c.passed()) {
        Some(c) => Err(format!("{}: {:?}", c.name, c.values)),
        None => Ok(format!("{} checks", n)),
    }
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn c1_symbolic_triangle() -> Outcome {
    checks(verify_triangle(0..=3, Mode::Symbolic, BRIDGE, 1, 0))
}

fn c2_modular_triangle() -> Outcome {
    ensure(P61 > 1 << 60, "prime too small")?;
    checks(verify_triangle(4..=6, Mode::Modular, BRIDGE, 3, 2024))
}

fn c3_kac() -> Outcome {
    let one = BigRational::from_integer(1.into());
    for n in 1..=4 {
        let c = verma::kac_check(n).map_err(|e| e.to_string())?;
        ensure(c == one, format!("C_{} = {}", n, c))?;
    }
    Ok("C_1..C_4 = 1".into())
}

fn c4_normalization() -> Outcome {
    for (r, s) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
        let n = fock::verify_singular_normalization(r, s).map_err(|e| e.to_string())?;
        ensure(n.scalar == n.expected, format!("({},{})", r, s))?;
    }
    Ok("6 labels".into())
}

fn c5_residues() -> Outcome {
    for (r, s) in labels(4) {
        let res = verma::r_extract(r, s).map_err(|e| e.to_string())?;
        ensure(res.dn_dq == res.expected, format!("R_({},{})", r, s))?;
    }
    for n in 1..=4 {
        checks(residue_law(n))?;
    }
    Ok("8 residues, residue law n <= 4".into())
}

fn c6_classical() -> Outcome {
    for n in 1..=4 {
        classical::kac_prime_check(n).map_err(|e| e.to_string())?;
    }
    for (r, s) in labels(4) {
        classical::r_prime(r, s).map_err(|e| e.to_string())?;
        classical::singular_jack(r, s).map_err(|e| e.to_string())?;
    }
    Ok("Kac' n <= 4, R' and B' rs <= 4".into())
}

fn e(v: Var) -> RatFunc {
    RatFunc::var(v)
}

fn frac(n: i64, d: i64) -> RatFunc {
    RatFunc::frac(n, d)
}

// ħ⁰, ħ², ħ⁴ coefficients of f_l under q = e^{ħε₁}, t = e^{ħε₂}
fn f_oracle(l: i64) -> [RatFunc; 3] {
    let (a, b) = (e(Var::E1), e(Var::E2));
    let ab = &a * &b;
    let c0 = if l == 0 { RatFunc::one() } else { RatFunc::zero() };
    let c2 = &ab * &frac(-l, 2);
    let quad = &(&(&a * &a) + &(&b * &b)) - &(&ab * &frac(3, 1));
    let c4 = &(&(&ab * &quad) * &frac(l * l * l, 24)) + &(&(&ab * &ab) * &frac(l * l * l - l, 48));
    [c0, c2, c4]
}

// the same for the central term with the opposite sign
fn central_oracle(m: i64) -> [RatFunc; 3] {
    let (a, b) = (e(Var::E1), e(Var::E2));
    let ab = &a * &b;
    let sq = &(&a * &a) + &(&b * &b);
    let inner = &(&sq * &frac(2 * m * m, 1)) + &(&ab * &frac(1 - 4 * m * m, 1));
    [RatFunc::zero(), &ab * &frac(2 * m, 1), &(&ab * &inner) * &frac(m, 6)]
}

fn c7_degeneration() -> Outcome {
    for l in 0..=6i64 {
        let [a, b, c] = f_oracle(l);
        let s = qvir::dva::f_hbar_expansion(l as usize, 4).map_err(|e| e.to_string())?;
        ensure([s.coeff(0), s.coeff(2), s.coeff(4)] == [a, b, c], format!("f_{}", l))?;
    }
    for m in 1..=6 {
        let [a, b, c] = central_oracle(m);
        let s = qvir::dva::central_hbar_expansion(m, 4).map_err(|e| e.to_string())?;
        ensure([s.coeff(0), s.coeff(2), s.coeff(4)] == [a, b, c], format!("central({})", m))?;
    }
    for n in 1..=4 {
        for l in partitions_of(n) {
            let lim = macdonald_to_jack_limit(&l, n as i32).map_err(|e| e.to_string())?;
            let inv = RatFunc::var(Var::B).inv().unwrap();
            let j = jack(&l, Form::J).map_err(|e| e.to_string())?.substitute(Var::B, &inv);
            ensure(lim == j, format!("Jack limit of J_{}", l))?;
        }
    }
    checks(classical::degeneration_suite(3, 4))
}

fn c8_q1() -> Outcome {
    for (r, s) in labels(6) {
        let c = fock::q1_met_corner(r, s).map_err(|e| e.to_string())?;
        ensure(c == fock::q1_corner_product(r, s), format!("corner ({},{})", r, s))?;
        fock::q1_normalization(r, s).map_err(|e| e.to_string())?;
    }
    for n in 1..=5 {
        for l in partitions_of(n) {
            for r in 1..=3 {
                fock::q1_transition(&l, r).map_err(|e| e.to_string())?;
            }
        }
    }
    Ok("corner rs <= 6, two paths |λ| <= 5".into())
}

fn c9_properties() -> Outcome {
    let ip = InnerProduct::Qt(Params::symbolic());
    for n in 1..=5 {
        let ps = partitions_of(n);
        let ms: Vec<_> = ps.iter().map(|l| macdonald(l, Form::P).unwrap()).collect();
        for (i, l) in ps.iter().enumerate() {
            let m = basis_convert(&ms[i], Basis::P, Basis::M, usize::MAX).map_err(|e| e.to_string())?;
            ensure(m.coeff(l).is_one() && m.terms().keys().all(|mu| dominance_leq(mu, l).unwrap()), format!("P_{} triangular", l))?;
            for j in 0..i {
                ensure(pairing(&ip, &ms[i], &ms[j]).is_zero(), format!("<P_{}, P_{}>", l, ps[j]))?;
            }
        }
    }
    for n in 1..=4 {
        let f = verma::gram(n, &WeightSpec::Generic).map_err(|e| e.to_string())?;
        ensure(f.entries == verma::gram_abstract(n, &WeightSpec::Generic).entries, format!("Fock gram level {}", n))?;
    }
    for n in 1..=5 {
        ensure(verma::gram_abstract_h(n).is_symmetric(), format!("symmetry level {}", n))?;
    }
    for n in 1..=4 {
        checks(vec![q_inversion(n)])?;
    }
    for n in 1..=6 {
        checks(vec![pole_containment(n, 7)])?;
    }
    Ok("orthogonality 5, Fock 4, symmetry 5, inversion 4, poles 6".into())
}

fn qvir(args: &[&str], cache: &std::path::Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qvir")).args(args).env("QVIR_CACHE_DIR", cache).output().unwrap()
}

fn c10_infrastructure() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = GramCache::new(dir.path());
    let g = verma::gram_uncached(3, &WeightSpec::Generic).map_err(|e| e.to_string())?;
    let path = cache.store(&g, &WeightSpec::Generic).map_err(|e| e.to_string())?;
    let back = cache.load(3, &WeightSpec::Generic).map_err(|e| e.to_string())?.ok_or("cache miss")?;
    ensure(back == g, "loaded matrix differs")?;
    ensure(std::fs::read(&path).unwrap() == to_bytes(&back, &WeightSpec::Generic), "bytes differ")?;

    let args = ["verify-agt", "--n", "6", "--mode", "modular", "--seed", "17"];
    let (a, b) = (qvir(&args, dir.path()), qvir(&args, dir.path()));
    ensure(a.status.code() == Some(0) && a.stdout == b.stdout, "report not deterministic")?;

    let codes = [
        qvir(&["kac", "--n", "3"], dir.path()).status.code(),
        qvir(&["kac", "--n", "3", "--perturb-f1", "1/7"], dir.path()).status.code(),
        qvir(&["kac", "--n", "-1"], dir.path()).status.code(),
    ];
    ensure(codes == [Some(0), Some(1), Some(2)], format!("exit codes {:?}", codes))?;
    Ok("cache bytes, determinism, exit codes 0/1/2".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("triangle symbolic n<=3", c1_symbolic_triangle),
        ("triangle modular n=4..6", c2_modular_triangle),
        ("Kac determinant n<=4", c3_kac),
        ("singular-vector normalization", c4_normalization),
        ("residue factors and residue law", c5_residues),
        ("classical Kac', R', B'", c6_classical),
        ("degeneration", c7_degeneration),
        ("q=1 corner and two paths", c8_q1),
        ("properties", c9_properties),
        ("infrastructure", c10_infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:>2} {} ({}) [{:.1}s]", i + 1, name, detail, secs),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {} [{:.1}s]", i + 1, name, why, secs);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
