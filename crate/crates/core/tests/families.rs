mod common;

use common::*;
use levmeas::additive::AdditiveFamily;
use levmeas::expvec::ExpVec;
use levmeas::family::{DistinguishedFamily, Trichotomy};
use levmeas::field::{FieldElement, FieldParams};
use levmeas::index::{check_compatible, index};
use levmeas::matrix::{gl_base_measure, scalar_base_measure, sl_base_measure, sl_constant, Matrix};
use levmeas::measure_value::{rational_pow, MeasureValue};
use levmeas::sampling::{Sampler, Shape};
use num_bigint::BigUint;
use proptest::prelude::*;

fn ev(v: &[i64]) -> ExpVec {
    ExpVec::new(v.iter().copied())
}

/// Sampled points of `a` and `b` are consistent with what `compare` claims.
fn compare_agrees_with_sampling<F: Sampler>(fam: &F, seed: u64, rounds: usize, shape: &Shape) {
    let mut rng = rng(seed);
    for _ in 0..rounds {
        let a = fam.random_set(&mut rng, shape);
        let b = if rand::Rng::gen_bool(&mut rng, 0.5) {
            fam.random_subset(&mut rng, &a, false, shape)
        } else {
            fam.random_set(&mut rng, shape)
        };
        let t = fam.compare(&a, &b);
        assert_eq!(fam.compare(&b, &a), t.flip());
        let in_b = (0..20).filter(|_| fam.contains(&b, &fam.random_point_in(&mut rng, &a, shape))).count();
        let in_a = (0..20).filter(|_| fam.contains(&a, &fam.random_point_in(&mut rng, &b, shape))).count();
        match t {
            Trichotomy::Equal => assert!(in_a == 20 && in_b == 20),
            Trichotomy::Disjoint => assert!(in_a == 0 && in_b == 0),
            Trichotomy::FirstInsideSecond => assert_eq!(in_b, 20),
            Trichotomy::SecondInsideFirst => assert_eq!(in_a, 20),
        }
    }
}

#[test]
fn additive_compare_matches_points() {
    compare_agrees_with_sampling(&additive(3, 2), 11, 400, &Shape::default());
    compare_agrees_with_sampling(&additive(2, 3), 12, 400, &Shape::default());
}

#[test]
fn matrix_compare_matches_points() {
    compare_agrees_with_sampling(&gl(2, 2), 13, 200, &small_shape());
    compare_agrees_with_sampling(&sl(3, 2), 14, 200, &small_shape());
}

#[test]
fn additive_subgroups_are_compatible() {
    let fam = additive(2, 2);
    let report = check_compatible(&fam, &[(2, 0, vec![ev(&[0]), ev(&[3]), ev(&[-2])])]);
    assert!(report.holds(), "{:?}", report.violations);
    assert!(report.entries.iter().all(|e| e.exponent == Some(2)));
}

#[test]
fn gl_congruence_subgroups_are_compatible() {
    let fam = gl(2, 2);
    let report = check_compatible(&fam, &[(2, 1, vec![ev(&[1]), ev(&[4])])]);
    assert!(report.holds(), "{:?}", report.violations);
    assert!(report.entries.iter().all(|e| e.exponent == Some(4)));
}

#[test]
fn sl_measure_is_gl_over_scalars() {
    for (m, q) in [(2, 2), (2, 3), (3, 2)] {
        for i in 1..4 {
            let idx = ev(&[i, 0]);
            let expected = MeasureValue::constant(sl_constant(m, q) * rational_pow(q, -((m * m - 1) as i64) * i), 1);
            assert_eq!(sl_base_measure(m, q, &idx), expected);
            let quotient = gl_base_measure(m, q, &idx).checked_div(&scalar_base_measure(q, &idx)).unwrap();
            assert_eq!(quotient, expected);
        }
    }
}

#[test]
fn splitting_counts() {
    let fam = additive(3, 2);
    let o = fam.ring_of_integers();
    assert_eq!(fam.split(&o, 2).unwrap().len(), 9);
    assert_eq!(fam.split_once(&o).len(), 3);

    let g = gl(2, 2);
    let k1 = g.subgroup(&ev(&[1, 0])).unwrap();
    assert_eq!(g.split_once(&k1).len(), 16);
    let s = sl(3, 2);
    let k1 = s.subgroup(&ev(&[1, 0])).unwrap();
    let children = s.split_once(&k1);
    assert_eq!(children.len(), 27);
    for (i, a) in children.iter().enumerate() {
        assert_eq!(s.compare(a, &k1), Trichotomy::FirstInsideSecond);
        for b in &children[i + 1..] {
            assert_eq!(s.compare(a, b), Trichotomy::Disjoint);
        }
    }
}

#[test]
fn index_of_nested_congruence_subgroups() {
    let g = gl(2, 2);
    let inner = g.subgroup(&ev(&[3, 1])).unwrap();
    let outer = g.subgroup(&ev(&[1, 1])).unwrap();
    assert_eq!(index(&g, &inner, &outer).unwrap().value(), Some(BigUint::from(256u32)));
    let o = additive(2, 2).ring_of_integers();
    let deep = additive(2, 2).subgroup(&ev(&[0, 1])).unwrap();
    assert!(!index(&additive(2, 2), &deep, &o).unwrap().is_finite());
}

#[test]
fn sl_rejects_determinant_other_than_one() {
    let params = FieldParams::new(3, 2).unwrap();
    let fam = sl(3, 2);
    let two = FieldElement::constant(params, 2);
    let d = Matrix::from_rows(vec![vec![two.clone(), FieldElement::zero(params)], vec![FieldElement::zero(params), FieldElement::one(params)]]).unwrap();
    assert!(fam.check_element(&d).is_err());
    assert!(gl(3, 2).check_element(&d).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additive_translation_preserves_measure(seed in any::<u64>()) {
        let fam = AdditiveFamily::new(FieldParams::new(2, 2).unwrap());
        let mut rng = rng(seed);
        let shape = Shape::default();
        let d = fam.random_set(&mut rng, &shape);
        let x = fam.random_element(&mut rng, &shape);
        let moved = fam.translate(&x, &d);
        prop_assert_eq!(fam.base_measure(&moved), fam.base_measure(&d));
        prop_assert_eq!(fam.index_vector(&moved), fam.index_vector(&d));
    }

    #[test]
    fn parent_contains_child(seed in any::<u64>()) {
        let fam = gl(2, 2);
        let mut rng = rng(seed);
        let d = fam.random_set(&mut rng, &small_shape());
        if let Some(p) = fam.parent(&d) {
            prop_assert_eq!(fam.compare(&d, &p), Trichotomy::FirstInsideSecond);
            prop_assert!(fam.split_once(&p).iter().any(|c| fam.compare(c, &d) == Trichotomy::Equal));
        }
    }
}
