//! Common refinements of two presentations of the same ddd-set.

use crate::error::SetError;
use crate::family::{DistinguishedFamily, Trichotomy};
use crate::forest::{build_tree, evaluate, DddForest, Node, Presentation};
use crate::measure_value::MeasureValue;

/// A laminar forest containing every shell of both presentations. Each node
/// carries the membership of its own region (the cell minus its
/// children); regions tiled by their children carry a flag that does not
/// matter.
#[derive(Clone, Debug, PartialEq)]
pub struct Refinement<S> {
    nodes: Vec<Node<S>>,
}

impl<S: Clone> Refinement<S> {
    pub fn nodes(&self) -> &[Node<S>] {
        &self.nodes
    }

    pub fn cells(&self) -> Vec<&S> {
        fn go<'a, S>(nodes: &'a [Node<S>], out: &mut Vec<&'a S>) {
            for n in nodes {
                out.push(&n.cell);
                go(&n.children, out);
            }
        }
        let mut out = Vec::new();
        go(&self.nodes, &mut out);
        out
    }

    pub fn has_cell<F: DistinguishedFamily<Set = S>>(&self, fam: &F, d: &S) -> bool {
        self.cells().into_iter().any(|c| fam.compare(c, d) == Trichotomy::Equal)
    }

    /// `Σ flag(N) (μ(N) - Σ μ(children))`.
    pub fn measure<F: DistinguishedFamily<Set = S>>(&self, fam: &F) -> MeasureValue {
        fn go<F: DistinguishedFamily>(fam: &F, nodes: &[Node<F::Set>], acc: &mut MeasureValue) {
            for n in nodes {
                if n.included {
                    let mut region = fam.base_measure(&n.cell);
                    for c in &n.children {
                        region = region - fam.base_measure(&c.cell);
                    }
                    *acc = &*acc + &region;
                }
                go(fam, &n.children, acc);
            }
        }
        let mut acc = MeasureValue::zero(fam.elevation());
        go(fam, &self.nodes, &mut acc);
        acc
    }

    pub fn to_forest<F: DistinguishedFamily<Set = S>>(&self, fam: &F) -> DddForest<S> {
        DddForest::canonical(fam, self.nodes.clone())
    }
}

/// Node of the joint tree with the region memberships under `a` and `b`.
struct Joint<S> {
    cell: S,
    a: bool,
    b: bool,
    tiled: bool,
    children: Vec<Joint<S>>,
}

/// Builds the joint laminar tree of both presentations, splits every node
/// whose same-level children are deeper so that a region is empty exactly
/// when it is tiled, and checks that the presentations agree on every
/// nonempty region.
pub fn refine_common<F: DistinguishedFamily>(
    fam: &F,
    a: &Presentation<F::Set>,
    b: &Presentation<F::Set>,
) -> Result<Refinement<F::Set>, SetError> {
    let ka = a.components.len();
    let kb = b.components.len();
    let mut cells = Vec::new();
    for (i, comp) in a.components.iter().chain(b.components.iter()).enumerate() {
        cells.extend(comp.big.iter().map(|s| (s.clone(), 2 * i, true)));
        cells.extend(comp.small.iter().map(|s| (s.clone(), 2 * i + 1, true)));
    }
    let sources = 2 * (ka + kb);
    let member_a = move |st: &[bool]| st[..2 * ka].chunks(2).any(|c| c[0] && !c[1]);
    let member_b = move |st: &[bool]| st[2 * ka..].chunks(2).any(|c| c[0] && !c[1]);

    let fa = evaluate(build_tree(fam, cells.clone(), sources), &vec![false; sources], &member_a);
    let fb = evaluate(build_tree(fam, cells, sources), &vec![false; sources], &member_b);
    let joint = zip_nodes(fa, fb);
    let joint: Vec<Joint<F::Set>> = joint.into_iter().map(|j| split_joint(fam, j)).collect();
    check_agree(&joint)?;
    Ok(Refinement { nodes: joint.into_iter().map(into_node).collect() })
}

fn zip_nodes<S>(a: Vec<Node<S>>, b: Vec<Node<S>>) -> Vec<Joint<S>> {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| Joint {
            cell: x.cell,
            a: x.included,
            b: y.included,
            tiled: false,
            children: zip_nodes(x.children, y.children),
        })
        .collect()
}

fn split_joint<F: DistinguishedFamily>(fam: &F, mut node: Joint<F::Set>) -> Joint<F::Set> {
    let level = fam.level(&node.cell);
    let needs_split = node.children.iter().any(|c| fam.level(&c.cell) == level);
    let kids = std::mem::take(&mut node.children);
    if !needs_split {
        node.children = kids.into_iter().map(|c| split_joint(fam, c)).collect();
        return node;
    }
    let mut pending: Vec<Option<Joint<F::Set>>> = kids.into_iter().map(Some).collect();
    for sub in fam.split_once(&node.cell) {
        let mut inside = Vec::new();
        let mut equal = None;
        for slot in pending.iter_mut() {
            let Some(c) = slot else { continue };
            match fam.compare(&c.cell, &sub) {
                Trichotomy::Equal => equal = slot.take(),
                Trichotomy::FirstInsideSecond => inside.push(slot.take().unwrap()),
                _ => {}
            }
        }
        let child = match equal {
            Some(c) => c,
            None => Joint { cell: sub, a: node.a, b: node.b, tiled: false, children: inside },
        };
        node.children.push(split_joint(fam, child));
    }
    debug_assert!(pending.iter().all(Option::is_none), "child outside every sub-cell");
    node.tiled = true;
    node
}

fn check_agree<S>(nodes: &[Joint<S>]) -> Result<(), SetError> {
    for n in nodes {
        if !n.tiled && n.a != n.b {
            return Err(SetError::InputsNotEqual);
        }
        check_agree(&n.children)?;
    }
    Ok(())
}

fn into_node<S>(j: Joint<S>) -> Node<S> {
    Node { cell: j.cell, included: j.a, children: j.children.into_iter().map(into_node).collect() }
}
