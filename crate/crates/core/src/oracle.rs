//! Brute-force measure oracles that never go through canonicalization.
//!
//! A single-level ddd-set is cut into the cells of one t1-depth; each cell is
//! tested against the raw presentation at its representative and the
//! surviving cells are counted.

use std::collections::BTreeMap;

use crate::error::SetError;
use crate::exec::{self, Execution};
use crate::expvec::ExpVec;
use crate::family::{split_to_depth, DistinguishedFamily, Trichotomy};
use crate::forest::{Component, DddForest, Node, Presentation};
use crate::measure_value::MeasureValue;

/// Measure of a presentation whose cells all have level `gamma`.
pub fn oracle_single_level_measure<F: DistinguishedFamily>(
    fam: &F,
    pres: &Presentation<F::Set>,
    gamma: &ExpVec,
    exec: Execution,
) -> Result<MeasureValue, SetError> {
    let mut hi = None;
    for c in pres.cells() {
        let level = fam.level(c);
        if &level != gamma {
            return Err(SetError::Precondition(format!("cell of level {level} in a level {gamma} oracle")));
        }
        hi = hi.max(Some(fam.depth(c)));
    }
    let Some(hi) = hi else {
        return Ok(MeasureValue::zero(fam.elevation()));
    };

    // maximal big shells are pairwise disjoint, so their cells never repeat
    let bigs: Vec<&F::Set> = pres.components.iter().flat_map(|c| c.big.iter()).collect();
    let mut maximal: Vec<&F::Set> = Vec::new();
    for (i, b) in bigs.iter().enumerate() {
        let dominated = bigs.iter().enumerate().any(|(j, o)| match fam.compare(b, o) {
            Trichotomy::FirstInsideSecond => true,
            Trichotomy::Equal => j < i,
            _ => false,
        });
        if !dominated {
            maximal.push(b);
        }
    }
    let mut cells = Vec::new();
    for b in maximal {
        cells.extend(split_to_depth(fam, b, hi)?);
    }
    let hits = exec::map(exec, &cells, |c| pres.contains(fam, &fam.representative(c)));
    let count = hits.into_iter().filter(|&h| h).count() as i64;
    let Some(sample) = cells.first() else {
        return Ok(MeasureValue::zero(fam.elevation()));
    };
    Ok(fam.base_measure(sample).scale(&num_rational::BigRational::from_integer(count.into())))
}

/// The level strata of a canonical forest: for each level `γ`, the sets
/// cut out by the maximal runs of level-`γ` nodes with an included root
/// (`positive`) and with an excluded root, flags flipped (`negative`).
#[derive(Clone, Debug)]
pub struct Stratum<S> {
    pub level: ExpVec,
    pub positive: Presentation<S>,
    pub negative: Presentation<S>,
}

pub fn level_strata<F: DistinguishedFamily>(fam: &F, forest: &DddForest<F::Set>) -> Vec<Stratum<F::Set>> {
    fn components<F: DistinguishedFamily>(
        fam: &F,
        node: &Node<F::Set>,
        level: &ExpVec,
        want: bool,
        out: &mut Vec<Component<F::Set>>,
    ) {
        if node.included == want {
            out.push(Component {
                big: vec![node.cell.clone()],
                small: node
                    .children
                    .iter()
                    .filter(|c| &fam.level(&c.cell) == level)
                    .map(|c| c.cell.clone())
                    .collect(),
            });
        }
        for c in &node.children {
            if &fam.level(&c.cell) == level {
                components(fam, c, level, want, out);
            }
        }
    }

    fn walk<F: DistinguishedFamily>(
        fam: &F,
        nodes: &[Node<F::Set>],
        parent_level: Option<&ExpVec>,
        acc: &mut BTreeMap<ExpVec, (Vec<Component<F::Set>>, Vec<Component<F::Set>>)>,
    ) {
        for n in nodes {
            let level = fam.level(&n.cell);
            if parent_level != Some(&level) {
                let entry = acc.entry(level.clone()).or_default();
                let (target, want) = if n.included { (&mut entry.0, true) } else { (&mut entry.1, false) };
                components(fam, n, &level, want, target);
            }
            walk(fam, &n.children, Some(&level), acc);
        }
    }

    let mut acc = BTreeMap::new();
    walk(fam, forest.roots(), None, &mut acc);
    acc.into_iter()
        .map(|(level, (pos, neg))| Stratum {
            level,
            positive: Presentation::new(pos),
            negative: Presentation::new(neg),
        })
        .collect()
}

/// `Σ_γ oracle(positive_γ) - oracle(negative_γ)`.
pub fn oracle_stratified_measure<F: DistinguishedFamily>(
    fam: &F,
    forest: &DddForest<F::Set>,
    exec: Execution,
) -> Result<MeasureValue, SetError> {
    let mut total = MeasureValue::zero(fam.elevation());
    for s in level_strata(fam, forest) {
        total = total + oracle_single_level_measure(fam, &s.positive, &s.level, exec)?;
        total = total - oracle_single_level_measure(fam, &s.negative, &s.level, exec)?;
    }
    Ok(total)
}
