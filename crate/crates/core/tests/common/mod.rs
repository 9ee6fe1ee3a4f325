#![allow(dead_code)]

use levmeas::additive::AdditiveFamily;
use levmeas::family::{DistinguishedFamily, Trichotomy};
use levmeas::field::FieldParams;
use levmeas::forest::{DddForest, Node, Presentation};
use levmeas::matrix::MatrixFamily;
use levmeas::sampling::{Sampler, Shape};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn additive(p: u32, n: usize) -> AdditiveFamily {
    AdditiveFamily::new(FieldParams::new(p, n).unwrap())
}

pub fn gl(p: u32, m: usize) -> MatrixFamily {
    MatrixFamily::gl(FieldParams::new(p, 2).unwrap(), m).unwrap()
}

pub fn sl(p: u32, m: usize) -> MatrixFamily {
    MatrixFamily::sl(FieldParams::new(p, 2).unwrap(), m).unwrap()
}

pub fn small_shape() -> Shape {
    Shape { depth: 0..=2, level: 0..=1, spread: 1, terms: 2 }
}

/// Points worth probing for a set built from `cells`: representatives, and
/// random points inside each cell and inside its parents and children.
pub fn probe_points<F: Sampler, R: Rng>(fam: &F, rng: &mut R, cells: &[&F::Set], per_cell: usize, shape: &Shape) -> Vec<F::Point> {
    let mut out = Vec::new();
    for c in cells {
        out.push(fam.representative(c));
        for _ in 0..per_cell {
            let host = match rng.gen_range(0..3) {
                0 => fam.parent(c).unwrap_or_else(|| (*c).clone()),
                1 => fam.split_once(c).choose(rng).unwrap().clone(),
                _ => (*c).clone(),
            };
            out.push(fam.random_point_in(rng, &host, shape));
        }
    }
    out
}

/// Checks the structural invariants of a canonical forest.
pub fn assert_canonical<F: DistinguishedFamily>(fam: &F, forest: &DddForest<F::Set>) {
    fn check<F: DistinguishedFamily>(fam: &F, nodes: &[Node<F::Set>], parent: Option<&Node<F::Set>>) {
        let full = fam.q().pow(fam.step_exponent()) as usize;
        for (i, n) in nodes.iter().enumerate() {
            match parent {
                None => assert!(n.included, "excluded root"),
                Some(p) => {
                    assert_ne!(n.included, p.included, "flags do not alternate");
                    assert_eq!(fam.compare(&n.cell, &p.cell), Trichotomy::FirstInsideSecond, "child not strictly inside");
                }
            }
            for m in &nodes[i + 1..] {
                assert_eq!(fam.compare(&n.cell, &m.cell), Trichotomy::Disjoint, "siblings overlap");
                assert_ne!(fam.canonical_cmp(&n.cell, &m.cell), std::cmp::Ordering::Greater, "siblings unsorted");
            }
            if let Some(up) = fam.parent(&n.cell) {
                let group = nodes
                    .iter()
                    .filter(|m| {
                        fam.index_vector(&m.cell) == fam.index_vector(&n.cell)
                            && fam.compare(&m.cell, &up) == Trichotomy::FirstInsideSecond
                    })
                    .count();
                assert!(group < full, "unmerged complete sibling group");
            }
            check(fam, &n.children, Some(n));
        }
    }
    check(fam, forest.roots(), None);
}

pub fn presentation_forest<F: DistinguishedFamily>(fam: &F, pres: &Presentation<F::Set>) -> DddForest<F::Set> {
    DddForest::from_presentation(fam, pres).unwrap()
}
