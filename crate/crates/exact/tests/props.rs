use proptest::prelude::*;
use qvir_exact::identity::modular_equal;
use qvir_exact::{ModularVerdict, RatFunc, TruncSeries, Var};

fn small_poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec((-3i64..=3, 0i32..=2, 0i32..=2, -1i32..=1), 1..4).prop_map(|terms| {
        let mut acc = RatFunc::zero();
        for (c, eu, ev, ea) in terms {
            let m = RatFunc::var(Var::U).pow(eu as i64).unwrap()
                * RatFunc::var(Var::V).pow(ev as i64).unwrap()
                * RatFunc::var(Var::A).pow(ea as i64).unwrap();
            acc = acc + m * RatFunc::from_i64(c);
        }
        acc
    })
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), small_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn distributive(f in small_ratfunc(), g in small_ratfunc(), k in small_ratfunc()) {
        let lhs = (&f + &g) * k.clone();
        let rhs = &f * &k + &g * &k;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn self_difference_is_empty(f in small_ratfunc()) {
        let d = &f - &f;
        prop_assert!(d.is_zero());
        prop_assert!(d.numer().terms().is_empty());
    }

    #[test]
    fn equal_values_never_reported_different(f in small_ratfunc(), seed in any::<u64>()) {
        let g = (&f * &RatFunc::from_i64(3)) / RatFunc::from_i64(3);
        prop_assert_eq!(&f, &g);
        if let Ok(v) = modular_equal(&f, &g, 3, seed) {
            prop_assert_eq!(v, ModularVerdict::Equal);
        }
    }

    #[test]
    fn exp_times_exp_neg(cs in prop::collection::vec(-4i64..=4, 1..4)) {
        let coeffs: Vec<RatFunc> = cs.iter().map(|&c| RatFunc::from_i64(c) * RatFunc::var(Var::C)).collect();
        let s = TruncSeries::from_coeffs(Var::Hb, 5, 1, coeffs);
        let p = s.exp().unwrap().mul(&s.neg().exp().unwrap()).unwrap();
        prop_assert_eq!(p, TruncSeries::one(Var::Hb, 5));
    }
}
