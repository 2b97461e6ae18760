use num_rational::BigRational;
use qvir::partitions::count_p;
use qvir::verma::{gram, gram_abstract, gram_abstract_h, kac_check, r_extract, singular_vector, WeightSpec};

#[test]
fn kac_constants_through_level_three() {
    let one = BigRational::from_integer(1.into());
    for n in 1..=3 {
        assert_eq!(kac_check(n).unwrap(), one, "C_{}", n);
    }
}

#[test]
fn fock_and_abstract_grams_agree() {
    for n in 1..=3 {
        let f = gram(n, &WeightSpec::Generic).unwrap();
        let a = gram_abstract(n, &WeightSpec::Generic);
        assert_eq!(f.entries, a.entries, "level {}", n);
        assert_eq!(f.entries.len() as u64, count_p(n));
    }
}

#[test]
fn gram_symmetry_through_level_four() {
    for n in 1..=4 {
        assert!(gram_abstract_h(n).is_symmetric(), "level {}", n);
    }
}

#[test]
fn singular_vectors_are_killed() {
    // the Gram matrix at h_{r,s} annihilates χ at level rs
    for (r, s) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)] {
        let sv = singular_vector(r, s).unwrap();
        let g = gram((r * s) as usize, &WeightSpec::AtHrs(r, s)).unwrap();
        assert!(g.norm(&sv.chi()).is_zero(), "v_({},{})", r, s);
    }
}

#[test]
fn residues_for_small_labels() {
    for (r, s) in [(1, 1), (1, 2), (2, 1)] {
        let res = r_extract(r, s).unwrap();
        assert_eq!(res.dn_dq, res.expected);
    }
}
