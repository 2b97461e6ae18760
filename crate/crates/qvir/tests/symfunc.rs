use qvir::partitions::{dominance_leq, partitions_of, Partition};
use qvir::symfunc::{basis_convert, jack, macdonald, macdonald_to_jack_limit, Basis, Form, SymFunc};
use qvir_exact::{Field, RatFunc, Var};

fn q() -> RatFunc {
    RatFunc::var(Var::U).pow(2).unwrap()
}

fn t() -> RatFunc {
    RatFunc::var(Var::V).pow(2).unwrap()
}

fn z(lam: &Partition) -> RatFunc {
    let mut acc = RatFunc::one();
    for (i, m) in lam.multiplicities() {
        for k in 1..=m {
            acc = acc.fmul(&RatFunc::from_i64((i * k) as i64));
        }
    }
    acc
}

// ⟨p_λ, p_μ⟩ = δ z_λ ∏ (1 - q^{λ_i})/(1 - t^{λ_i}), written out independently
fn qt_pair(f: &SymFunc<RatFunc>, g: &SymFunc<RatFunc>) -> RatFunc {
    let one = RatFunc::one();
    let mut acc = RatFunc::zero();
    for (l, c) in f.terms() {
        let d = g.coeff(l);
        if d.is_zero() {
            continue;
        }
        let mut w = z(l);
        for &k in l.parts() {
            let k = k as i64;
            w = w.fmul(&one.fsub(&q().fpow(k).unwrap())).fmul(&one.fsub(&t().fpow(k).unwrap()).finv().unwrap());
        }
        acc = acc.fadd(&c.fmul(&d).fmul(&w));
    }
    acc
}

#[test]
fn macdonald_orthogonal_and_triangular_to_degree_four() {
    for n in 1..=4 {
        let ps = partitions_of(n);
        let ms: Vec<_> = ps.iter().map(|l| macdonald(l, Form::P).unwrap()).collect();
        for (i, l) in ps.iter().enumerate() {
            let m = basis_convert(&ms[i], Basis::P, Basis::M, usize::MAX).unwrap();
            assert!(m.coeff(l).is_one(), "leading coefficient of P_{}", l);
            assert!(m.terms().keys().all(|mu| dominance_leq(mu, l).unwrap()), "P_{} not triangular", l);
            for j in 0..i {
                assert!(qt_pair(&ms[i], &ms[j]).is_zero(), "<P_{}, P_{}> != 0", l, ps[j]);
            }
        }
    }
}

#[test]
fn jack_single_row_j_normalization() {
    // J_(n) has p_1^n coefficient 1 (the m_{1^n} coefficient is n!)
    for n in 1..=4 {
        let j = jack(&Partition::new(vec![n]), Form::J).unwrap();
        assert!(j.coeff(&Partition::ones(n)).is_one());
    }
}

#[test]
fn jack_at_beta_one_is_schur_times_hook() {
    // J_(2,1) at β = 1 is 3 s_(2,1) = p_1³ - p_3
    let j = jack(&Partition::new(vec![2, 1]), Form::J).unwrap().substitute(Var::B, &RatFunc::one());
    let expected = SymFunc::p(Partition::ones(3)).sub(&SymFunc::p(Partition::new(vec![3])));
    assert_eq!(j, expected);
}

#[test]
fn macdonald_limit_is_jack_with_inverse_parameter() {
    for l in partitions_of(3) {
        let lim = macdonald_to_jack_limit(&l, 3).unwrap();
        let j = jack(&l, Form::J).unwrap().substitute(Var::B, &RatFunc::var(Var::B).inv().unwrap());
        assert_eq!(lim, j, "limit of J_{}", l);
    }
}
