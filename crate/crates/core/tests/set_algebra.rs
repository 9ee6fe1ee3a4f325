mod common;

use common::*;
use levmeas::exec::Execution;
use levmeas::family::DistinguishedFamily;
use levmeas::forest::{DddForest, Presentation};
use levmeas::oracle::oracle_stratified_measure;
use levmeas::refine::refine_common;
use levmeas::sampling::{Sampler, Shape};
use rand::Rng;

fn canonical_matches_presentation<F: Sampler>(fam: &F, seed: u64, rounds: usize, shape: &Shape) {
    let mut rng = rng(seed);
    for _ in 0..rounds {
        let k = rng.gen_range(1..=3);
        let pres = fam.random_presentation(&mut rng, k, None, shape);
        let forest = presentation_forest(fam, &pres);
        assert_canonical(fam, &forest);
        let cells: Vec<_> = pres.cells().collect();
        for x in probe_points(fam, &mut rng, &cells, 3, shape) {
            assert_eq!(forest.contains(fam, &x), pres.contains(fam, &x), "membership differs for {pres:?}");
        }
        // re-presenting the canonical forest is a fixed point
        let again = presentation_forest(fam, &Presentation::from_forest(&forest));
        assert_eq!(again.structural_cmp(fam, &forest), std::cmp::Ordering::Equal);
        assert_eq!(oracle_stratified_measure(fam, &forest, Execution::default()).unwrap(), forest.measure(fam));
    }
}

#[test]
fn additive_canonical_forms_agree_with_presentations() {
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        canonical_matches_presentation(&additive(p, n), p as u64 * 10 + n as u64, 150, &small_shape());
    }
}

#[test]
fn matrix_canonical_forms_agree_with_presentations() {
    canonical_matches_presentation(&gl(2, 2), 7, 40, &small_shape());
    canonical_matches_presentation(&sl(2, 2), 8, 40, &small_shape());
}

fn boolean_ops_are_pointwise<F: Sampler>(fam: &F, seed: u64, rounds: usize, shape: &Shape) {
    let mut rng = rng(seed);
    for _ in 0..rounds {
        let pa = fam.random_presentation(&mut rng, 2, None, shape);
        let pb = fam.random_presentation(&mut rng, 2, None, shape);
        let a = presentation_forest(fam, &pa);
        let b = presentation_forest(fam, &pb);
        let u = a.union(fam, &b);
        let i = a.intersect(fam, &b);
        let d = a.difference(fam, &b);
        for f in [&u, &i, &d] {
            assert_canonical(fam, f);
        }
        let cells: Vec<_> = pa.cells().chain(pb.cells()).collect();
        for x in probe_points(fam, &mut rng, &cells, 2, shape) {
            let (ia, ib) = (pa.contains(fam, &x), pb.contains(fam, &x));
            assert_eq!(u.contains(fam, &x), ia || ib);
            assert_eq!(i.contains(fam, &x), ia && ib);
            assert_eq!(d.contains(fam, &x), ia && !ib);
        }
        // inclusion-exclusion
        assert_eq!(u.measure(fam) + i.measure(fam), a.measure(fam) + b.measure(fam));
        assert!(u.set_eq(fam, &b.union(fam, &a)));
    }
}

#[test]
fn boolean_operations_are_pointwise() {
    boolean_ops_are_pointwise(&additive(3, 2), 1, 150, &small_shape());
    boolean_ops_are_pointwise(&additive(2, 3), 2, 100, &small_shape());
    boolean_ops_are_pointwise(&gl(2, 2), 3, 25, &small_shape());
}

#[test]
fn refinement_of_a_forest_and_its_presentation() {
    let fam = additive(3, 2);
    let shape = small_shape();
    let mut rng = rng(99);
    for _ in 0..100 {
        let pres = fam.random_presentation(&mut rng, 2, None, &shape);
        let forest = presentation_forest(&fam, &pres);
        let other = Presentation::from_forest(&forest);
        let r = refine_common(&fam, &pres, &other).unwrap();
        for c in pres.cells().chain(other.cells()) {
            assert!(r.has_cell(&fam, c));
        }
        assert_eq!(r.measure(&fam), forest.measure(&fam));
        assert_eq!(r.to_forest(&fam), forest);
    }
}

#[test]
fn refinement_rejects_different_sets() {
    let fam = additive(2, 2);
    let o = fam.ring_of_integers();
    let t1o = fam.split_once(&o).remove(0);
    let a = Presentation::shells(vec![o.clone()], vec![]);
    let b = Presentation::shells(vec![o], vec![t1o]);
    assert_eq!(refine_common(&fam, &a, &b), Err(levmeas::SetError::InputsNotEqual));
}

#[test]
fn refinement_spec_examples() {
    let fam = additive(3, 2);
    let o = fam.ring_of_integers();
    let cosets = fam.split_once(&o);
    let a = Presentation::shells(vec![o.clone()], vec![]);
    let b = Presentation::shells(cosets.clone(), vec![]);
    let r = refine_common(&fam, &a, &b).unwrap();
    assert!(r.has_cell(&fam, &o));
    assert!(cosets.iter().all(|c| r.has_cell(&fam, c)));

    let same = refine_common(&fam, &a, &a).unwrap();
    assert_eq!(same.cells().len(), 1);

    let a = Presentation::shells(vec![o.clone()], vec![cosets[0].clone()]);
    let b = Presentation::shells(cosets[1..].to_vec(), vec![]);
    let r = refine_common(&fam, &a, &b).unwrap();
    assert!(cosets[1..].iter().all(|c| r.has_cell(&fam, c)));
    assert_eq!(r.measure(&fam), DddForest::from_presentation(&fam, &b).unwrap().measure(&fam));
}
