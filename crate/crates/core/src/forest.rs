//! The ring of ddd-sets as canonical laminar forests.
//!
//! Any finite boolean combination of distinguished sets of an ordered-type
//! family is determined by the laminar forest of the sets involved together
//! with, for each node, whether the points of the node that lie in none of
//! its children belong to the set. The canonical forest keeps only nodes
//! whose flag differs from their parent's (roots are included), merges
//! complete families of same-level siblings into their parent, and sorts
//! siblings by the family's canonical order.

use std::cmp::Ordering;

use crate::error::SetError;
use crate::expvec::ExpVec;
use crate::family::{DistinguishedFamily, Trichotomy};
use crate::measure_value::MeasureValue;

#[derive(Clone, Debug, PartialEq)]
pub struct Node<S> {
    pub cell: S,
    pub included: bool,
    pub children: Vec<Node<S>>,
}

impl<S> Node<S> {
    fn visit<'a>(&'a self, out: &mut Vec<&'a Node<S>>) {
        out.push(self);
        for c in &self.children {
            c.visit(out);
        }
    }
}

/// A ddd-set in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct DddForest<S> {
    roots: Vec<Node<S>>,
}

/// One dd-component `∪ big ∖ ∪ small`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<S> {
    pub big: Vec<S>,
    pub small: Vec<S>,
}

/// A ddd-set written as a union of dd-components. Presentations are not
/// unique; [`DddForest::from_presentation`] canonicalizes them.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<S> {
    pub components: Vec<Component<S>>,
}

impl<S: Clone> Presentation<S> {
    pub fn new(components: Vec<Component<S>>) -> Self {
        Presentation { components }
    }

    pub fn shells(big: Vec<S>, small: Vec<S>) -> Self {
        Presentation { components: vec![Component { big, small }] }
    }

    /// One component per included node: the node minus its children.
    pub fn from_forest(forest: &DddForest<S>) -> Self {
        let components = forest
            .nodes()
            .into_iter()
            .filter(|n| n.included)
            .map(|n| Component {
                big: vec![n.cell.clone()],
                small: n.children.iter().map(|c| c.cell.clone()).collect(),
            })
            .collect();
        Presentation { components }
    }

    /// Membership straight from the presentation, without canonicalizing.
    pub fn contains<F>(&self, fam: &F, x: &F::Point) -> bool
    where
        F: DistinguishedFamily<Set = S>,
    {
        self.components.iter().any(|c| {
            c.big.iter().any(|b| fam.contains(b, x)) && !c.small.iter().any(|s| fam.contains(s, x))
        })
    }

    pub fn cells(&self) -> impl Iterator<Item = &S> {
        self.components.iter().flat_map(|c| c.big.iter().chain(c.small.iter()))
    }
}

/// Result of [`DddForest::level_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelOf {
    Level(ExpVec),
    EmptySet,
}

/// Result of [`DddForest::uniform_level`].
#[derive(Clone, Debug, PartialEq)]
pub enum UniformLevel<P> {
    Uniform(ExpVec),
    /// `witness` is a point of the set without a distinguished
    /// neighbourhood of the set's level inside the set.
    NotUniform { level: ExpVec, witness: Option<P> },
    EmptySet,
}

/// Classification of a subset by its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Level(ExpVec),
    /// Contains no distinguished set.
    TypeS,
    /// Contains distinguished sets of arbitrarily low level.
    TypeL,
    /// Neither of the above, yet levelless. Not produced for canonical
    /// ddd-sets of the shipped families.
    TypeE,
}

// ---------------------------------------------------------------------------
// Laminar tree construction and flag evaluation

pub(crate) struct Tree<S> {
    pub(crate) cell: S,
    pub(crate) marks: Vec<Option<bool>>,
    pub(crate) children: Vec<Tree<S>>,
}

pub(crate) fn insert<F: DistinguishedFamily>(fam: &F, nodes: &mut Vec<Tree<F::Set>>, mut item: Tree<F::Set>) {
    let mut i = 0;
    while i < nodes.len() {
        match fam.compare(&item.cell, &nodes[i].cell) {
            Trichotomy::Equal => {
                let target = &mut nodes[i];
                for (m, n) in target.marks.iter_mut().zip(item.marks) {
                    if n.is_some() {
                        *m = n;
                    }
                }
                for c in item.children {
                    insert(fam, &mut target.children, c);
                }
                return;
            }
            Trichotomy::FirstInsideSecond => {
                insert(fam, &mut nodes[i].children, item);
                return;
            }
            Trichotomy::SecondInsideFirst => {
                let inner = nodes.swap_remove(i);
                insert(fam, &mut item.children, inner);
            }
            Trichotomy::Disjoint => i += 1,
        }
    }
    nodes.push(item);
}

/// Laminar tree of `(cell, source, flag)` triples; equal cells share a node.
pub(crate) fn build_tree<F: DistinguishedFamily>(
    fam: &F,
    cells: Vec<(F::Set, usize, bool)>,
    sources: usize,
) -> Vec<Tree<F::Set>> {
    let mut roots = Vec::new();
    for (cell, src, flag) in cells {
        let mut marks = vec![None; sources];
        marks[src] = Some(flag);
        insert(fam, &mut roots, Tree { cell, marks, children: Vec::new() });
    }
    roots
}

/// Per-source membership of each node's own region: the mark of the deepest
/// marked ancestor-or-self, or `false`.
pub(crate) fn evaluate<S>(
    nodes: Vec<Tree<S>>,
    inherited: &[bool],
    f: &dyn Fn(&[bool]) -> bool,
) -> Vec<Node<S>> {
    nodes
        .into_iter()
        .map(|t| {
            let state: Vec<bool> =
                t.marks.iter().zip(inherited).map(|(m, &i)| m.unwrap_or(i)).collect();
            Node { included: f(&state), children: evaluate(t.children, &state, f), cell: t.cell }
        })
        .collect()
}

fn forest_cells<S: Clone>(nodes: &[Node<S>], src: usize, out: &mut Vec<(S, usize, bool)>) {
    for n in nodes {
        out.push((n.cell.clone(), src, n.included));
        forest_cells(&n.children, src, out);
    }
}

// ---------------------------------------------------------------------------
// Normalization

fn normalize<F: DistinguishedFamily>(fam: &F, nodes: Vec<Node<F::Set>>, context: bool) -> Vec<Node<F::Set>> {
    let mut out = Vec::with_capacity(nodes.len());
    for mut node in nodes {
        let kids = std::mem::take(&mut node.children);
        node.children = normalize(fam, kids, node.included);
        if node.children.len() == 1
            && fam.compare(&node.children[0].cell, &node.cell) == Trichotomy::Equal
        {
            // children tile the node: its own region is empty
            let child = node.children.pop().unwrap();
            node.included = child.included;
            node.children = child.children;
        }
        if node.included == context {
            out.extend(node.children);
        } else {
            out.push(node);
        }
    }
    merge_siblings(fam, &mut out);
    out.sort_by(|a, b| fam.canonical_cmp(&a.cell, &b.cell));
    out
}

/// Replaces every complete set of same-level siblings (all `q^step`
/// children of one parent) by the parent, to a fixed point. Siblings share
/// a flag and are pairwise disjoint.
fn merge_siblings<F: DistinguishedFamily>(fam: &F, nodes: &mut Vec<Node<F::Set>>) {
    let full = fam.q().pow(fam.step_exponent()) as usize;
    loop {
        let mut taken = vec![false; nodes.len()];
        let mut groups = Vec::new();
        for i in 0..nodes.len() {
            if taken[i] {
                continue;
            }
            let Some(parent) = fam.parent(&nodes[i].cell) else {
                continue;
            };
            let idx = fam.index_vector(&nodes[i].cell);
            let mut group = vec![i];
            for j in i + 1..nodes.len() {
                if !taken[j]
                    && fam.index_vector(&nodes[j].cell) == idx
                    && fam.compare(&nodes[j].cell, &parent) == Trichotomy::FirstInsideSecond
                {
                    taken[j] = true;
                    group.push(j);
                }
            }
            if group.len() == full {
                groups.push((parent, group));
            }
        }
        if groups.is_empty() {
            return;
        }
        let mut slots: Vec<Option<Node<F::Set>>> = nodes.drain(..).map(Some).collect();
        for (parent, group) in groups {
            let included = slots[group[0]].as_ref().unwrap().included;
            let mut children = Vec::new();
            for j in group {
                children.extend(slots[j].take().unwrap().children);
            }
            children.sort_by(|a, b| fam.canonical_cmp(&a.cell, &b.cell));
            nodes.push(Node { cell: parent, included, children });
        }
        nodes.extend(slots.into_iter().flatten());
    }
}

// ---------------------------------------------------------------------------

impl<S: Clone> DddForest<S> {
    pub fn empty() -> Self {
        DddForest { roots: Vec::new() }
    }

    pub fn roots(&self) -> &[Node<S>] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// All nodes in depth-first order.
    pub fn nodes(&self) -> Vec<&Node<S>> {
        let mut out = Vec::new();
        for r in &self.roots {
            r.visit(&mut out);
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes().len()
    }

    pub fn single<F: DistinguishedFamily<Set = S>>(fam: &F, d: S) -> Self {
        Self::canonical(fam, vec![Node { cell: d, included: true, children: Vec::new() }])
    }

    /// Canonical form of an arbitrary flagged laminar forest whose children
    /// are strictly inside their parents and whose siblings are disjoint.
    pub fn canonical<F: DistinguishedFamily<Set = S>>(fam: &F, nodes: Vec<Node<S>>) -> Self {
        DddForest { roots: normalize(fam, nodes, false) }
    }

    /// Canonical forest of `∪ big ∖ ∪ small`. Every small shell must lie in
    /// some big shell.
    pub fn from_shells<F: DistinguishedFamily<Set = S>>(
        fam: &F,
        big: &[S],
        small: &[S],
    ) -> Result<Self, SetError> {
        let pres = Presentation::shells(big.to_vec(), small.to_vec());
        Self::from_presentation(fam, &pres).map_err(|e| match e {
            SetError::NotContained => SetError::ShellNotContained,
            other => other,
        })
    }

    pub fn from_presentation<F: DistinguishedFamily<Set = S>>(
        fam: &F,
        pres: &Presentation<S>,
    ) -> Result<Self, SetError> {
        for comp in &pres.components {
            for s in &comp.small {
                let inside = comp.big.iter().any(|b| {
                    matches!(fam.compare(s, b), Trichotomy::Equal | Trichotomy::FirstInsideSecond)
                });
                if !inside {
                    return Err(SetError::ShellNotContained);
                }
            }
        }
        Ok(Self::from_presentation_unchecked(fam, pres))
    }

    pub(crate) fn from_presentation_unchecked<F: DistinguishedFamily<Set = S>>(
        fam: &F,
        pres: &Presentation<S>,
    ) -> Self {
        let k = pres.components.len();
        let mut cells = Vec::new();
        for (i, comp) in pres.components.iter().enumerate() {
            cells.extend(comp.big.iter().map(|b| (b.clone(), 2 * i, true)));
            cells.extend(comp.small.iter().map(|s| (s.clone(), 2 * i + 1, true)));
        }
        let tree = build_tree(fam, cells, 2 * k);
        let f = |st: &[bool]| st.chunks(2).any(|c| c[0] && !c[1]);
        let flagged = evaluate(tree, &vec![false; 2 * k], &f);
        Self::canonical(fam, flagged)
    }

    /// Pointwise boolean combination of several forests.
    pub fn combine<F: DistinguishedFamily<Set = S>>(
        fam: &F,
        forests: &[&DddForest<S>],
        f: &dyn Fn(&[bool]) -> bool,
    ) -> Self {
        let mut cells = Vec::new();
        for (k, forest) in forests.iter().enumerate() {
            forest_cells(&forest.roots, k, &mut cells);
        }
        let tree = build_tree(fam, cells, forests.len());
        let flagged = evaluate(tree, &vec![false; forests.len()], f);
        Self::canonical(fam, flagged)
    }

    pub fn union<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> Self {
        Self::combine(fam, &[self, other], &|s| s[0] || s[1])
    }

    pub fn intersect<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> Self {
        Self::combine(fam, &[self, other], &|s| s[0] && s[1])
    }

    pub fn difference<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> Self {
        Self::combine(fam, &[self, other], &|s| s[0] && !s[1])
    }

    /// Point-set equality: both differences are empty.
    pub fn set_eq<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> bool {
        self.difference(fam, other).is_empty() && other.difference(fam, self).is_empty()
    }

    pub fn is_subset<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> bool {
        self.difference(fam, other).is_empty()
    }

    pub fn contains<F: DistinguishedFamily<Set = S>>(&self, fam: &F, x: &F::Point) -> bool {
        self.deepest_node(fam, x).map(|(n, _)| n.included).unwrap_or(false)
    }

    /// Deepest node containing `x` and its parent.
    fn deepest_node<'a, F: DistinguishedFamily<Set = S>>(
        &'a self,
        fam: &F,
        x: &F::Point,
    ) -> Option<(&'a Node<S>, Option<&'a Node<S>>)> {
        let mut level = &self.roots;
        let mut found: Option<(&Node<S>, Option<&Node<S>>)> = None;
        'outer: loop {
            for n in level {
                if fam.contains(&n.cell, x) {
                    found = Some((n, found.map(|(p, _)| p)));
                    level = &n.children;
                    continue 'outer;
                }
            }
            return found;
        }
    }

    /// `Σ ± base_measure(cell)`, `+` on included nodes.
    pub fn measure<F: DistinguishedFamily<Set = S>>(&self, fam: &F) -> MeasureValue {
        let mut total = MeasureValue::zero(fam.elevation());
        for n in self.nodes() {
            let m = fam.base_measure(&n.cell);
            total = if n.included { total + m } else { total - m };
        }
        total
    }

    /// Minimum level over the included cells.
    pub fn level_of<F: DistinguishedFamily<Set = S>>(&self, fam: &F) -> LevelOf {
        self.nodes()
            .into_iter()
            .filter(|n| n.included)
            .map(|n| fam.level(&n.cell))
            .min()
            .map(LevelOf::Level)
            .unwrap_or(LevelOf::EmptySet)
    }

    pub fn classify<F: DistinguishedFamily<Set = S>>(&self, fam: &F) -> Classification {
        match self.level_of(fam) {
            LevelOf::Level(l) => Classification::Level(l),
            LevelOf::EmptySet => Classification::TypeS,
        }
    }

    /// Uniform level of a canonical forest.
    ///
    /// With `γ = level_of(A)`, a point in the region of an included node `N`
    /// has a level-`γ` neighbourhood inside `A` iff `level(N) = γ` and `x` is
    /// outside the level-`γ` ball of every excluded child of `N` of level
    /// above `γ`. Such balls always meet the region of `N`, so `A` is uniform
    /// exactly when every node of the forest has level `γ`.
    pub fn uniform_level<F: DistinguishedFamily<Set = S>>(&self, fam: &F) -> UniformLevel<F::Point> {
        let gamma = match self.level_of(fam) {
            LevelOf::EmptySet => return UniformLevel::EmptySet,
            LevelOf::Level(g) => g,
        };
        match self.obstruction_witness(fam, &gamma) {
            None => UniformLevel::Uniform(gamma),
            Some(w) => UniformLevel::NotUniform { level: gamma, witness: w },
        }
    }

    /// `None` if no node has level other than `gamma`; otherwise a witness
    /// point (when one could be constructed).
    fn obstruction_witness<F: DistinguishedFamily<Set = S>>(
        &self,
        fam: &F,
        gamma: &ExpVec,
    ) -> Option<Option<F::Point>> {
        fn walk<F: DistinguishedFamily>(
            fam: &F,
            nodes: &[Node<F::Set>],
            gamma: &ExpVec,
        ) -> Option<Option<F::Point>> {
            for n in nodes {
                if n.included {
                    if &fam.level(&n.cell) != gamma {
                        let blockers: Vec<_> = n.children.iter().map(|c| c.cell.clone()).collect();
                        return Some(region_point(fam, &n.cell, &blockers));
                    }
                    for c in &n.children {
                        if &fam.level(&c.cell) != gamma {
                            return Some(level_ball_point(fam, n, &c.cell));
                        }
                    }
                }
                if let Some(w) = walk(fam, &n.children, gamma) {
                    return Some(w);
                }
            }
            None
        }
        walk(fam, &self.roots, gamma)
    }

    /// Whether `x ∈ A` has a distinguished neighbourhood of level `gamma`
    /// inside `A`, decided from valuations of `x` against the excluded
    /// shells.
    pub fn has_level_neighbourhood<F: DistinguishedFamily<Set = S>>(
        &self,
        fam: &F,
        x: &F::Point,
        gamma: &ExpVec,
    ) -> bool {
        let Some((node, _)) = self.deepest_node(fam, x) else {
            return false;
        };
        if !node.included || &fam.level(&node.cell) != gamma {
            return false;
        }
        !node
            .children
            .iter()
            .any(|c| &fam.level(&c.cell) > gamma && fam.in_level_ball(x, &c.cell, gamma))
    }

    pub fn translate<F: DistinguishedFamily<Set = S>>(&self, fam: &F, g: &F::Point) -> Self {
        fn go<F: DistinguishedFamily>(fam: &F, g: &F::Point, nodes: &[Node<F::Set>]) -> Vec<Node<F::Set>> {
            nodes
                .iter()
                .map(|n| Node {
                    cell: fam.translate(g, &n.cell),
                    included: n.included,
                    children: go(fam, g, &n.children),
                })
                .collect()
        }
        Self::canonical(fam, go(fam, g, &self.roots))
    }

    /// `A g`; fails if right multiplication by `g` does not carry
    /// distinguished sets to distinguished sets.
    pub fn translate_right<F: DistinguishedFamily<Set = S>>(
        &self,
        fam: &F,
        g: &F::Point,
    ) -> Result<Self, SetError> {
        fn go<F: DistinguishedFamily>(
            fam: &F,
            g: &F::Point,
            nodes: &[Node<F::Set>],
        ) -> Result<Vec<Node<F::Set>>, SetError> {
            nodes
                .iter()
                .map(|n| {
                    Ok(Node {
                        cell: fam.translate_right(&n.cell, g)?,
                        included: n.included,
                        children: go(fam, g, &n.children)?,
                    })
                })
                .collect()
        }
        Ok(Self::canonical(fam, go(fam, g, &self.roots)?))
    }

    /// Structural comparison of two canonical forests.
    pub fn structural_cmp<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> Ordering {
        fn go<F: DistinguishedFamily>(fam: &F, a: &[Node<F::Set>], b: &[Node<F::Set>]) -> Ordering {
            for (x, y) in a.iter().zip(b) {
                let o = fam
                    .canonical_cmp(&x.cell, &y.cell)
                    .then(x.included.cmp(&y.included))
                    .then_with(|| go(fam, &x.children, &y.children));
                if o != Ordering::Equal {
                    return o;
                }
            }
            a.len().cmp(&b.len())
        }
        go(fam, &self.roots, &other.roots)
    }

    /// Whether both forests have the same shape with equal cells, whatever
    /// representatives those cells carry.
    pub fn same_structure<F: DistinguishedFamily<Set = S>>(&self, fam: &F, other: &Self) -> bool {
        fn go<F: DistinguishedFamily>(fam: &F, a: &[Node<F::Set>], b: &[Node<F::Set>]) -> bool {
            a.len() == b.len()
                && a.iter().all(|x| {
                    b.iter().any(|y| {
                        fam.compare(&x.cell, &y.cell) == Trichotomy::Equal
                            && x.included == y.included
                            && go(fam, &x.children, &y.children)
                    })
                })
        }
        go(fam, &self.roots, &other.roots)
    }
}

/// A point of `cell` outside every blocker. Blockers are pairwise disjoint
/// distinguished subsets of `cell` that do not tile it.
pub fn region_point<F: DistinguishedFamily>(fam: &F, cell: &F::Set, blockers: &[F::Set]) -> Option<F::Point> {
    let level = fam.level(cell);
    let same_level = blockers.iter().any(|b| fam.level(b) == level);
    if !same_level {
        // each higher-level blocker holds at most one separated point
        return fam
            .separated_points(cell, blockers.len() + 1)
            .into_iter()
            .find(|x| !blockers.iter().any(|b| fam.contains(b, x)));
    }
    for sub in fam.split_once(cell) {
        let mut inside = Vec::new();
        let mut covered = false;
        for b in blockers {
            match fam.compare(&sub, b) {
                Trichotomy::Equal | Trichotomy::FirstInsideSecond => {
                    covered = true;
                    break;
                }
                Trichotomy::SecondInsideFirst => inside.push(b.clone()),
                Trichotomy::Disjoint => {}
            }
        }
        if covered {
            continue;
        }
        if let Some(x) = region_point(fam, &sub, &inside) {
            return Some(x);
        }
    }
    None
}

/// A point in the region of the included node `parent` lying in the
/// level-`level(parent)` ball around its excluded child `child`.
fn level_ball_point<F: DistinguishedFamily>(fam: &F, parent: &Node<F::Set>, child: &F::Set) -> Option<F::Point> {
    let blockers: Vec<_> = parent.children.iter().map(|c| c.cell.clone()).collect();
    let mut below = child.clone();
    // Walk up the same-level ancestors of `child`; each ancestor lies in
    // every lower-level set containing `child`. A bounded number of steps
    // suffices since each blocker covers at most one sibling chain.
    for _ in 0..(blockers.len() + 2) {
        let up = fam.parent(&below)?;
        for sib in fam.split_once(&up) {
            if fam.compare(&sib, &below) == Trichotomy::Equal {
                continue;
            }
            let mut inside = Vec::new();
            let mut covered = false;
            for b in &blockers {
                match fam.compare(&sib, b) {
                    Trichotomy::Equal | Trichotomy::FirstInsideSecond => {
                        covered = true;
                        break;
                    }
                    Trichotomy::SecondInsideFirst => inside.push(b.clone()),
                    Trichotomy::Disjoint => {}
                }
            }
            if !covered {
                if let Some(x) = region_point(fam, &sib, &inside) {
                    return Some(x);
                }
            }
        }
        below = up;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::{AdditiveDistSet, AdditiveFamily};
    use crate::field::{FieldElement, FieldParams};
    use crate::measure_value::rational;

    fn fam(p: u32) -> AdditiveFamily {
        AdditiveFamily::new(FieldParams::new(p, 2).unwrap())
    }

    fn el(f: &AdditiveFamily, terms: &[(i64, [i64; 2])]) -> FieldElement {
        FieldElement::from_terms(f.params(), terms.iter().map(|(c, e)| (*c, ExpVec::from(*e)))).unwrap()
    }

    fn d(f: &AdditiveFamily, shift: &[(i64, [i64; 2])], idx: [i64; 2]) -> AdditiveDistSet {
        f.set(el(f, shift), idx).unwrap()
    }

    fn single(f: &AdditiveFamily, set: AdditiveDistSet) -> DddForest<AdditiveDistSet> {
        DddForest::single(f, set)
    }

    #[test]
    fn shells() {
        let f = fam(3);
        let o = d(&f, &[], [0, 0]);
        let a = DddForest::from_shells(&f, std::slice::from_ref(&o), &[]).unwrap();
        assert_eq!(a.roots().len(), 1);
        assert!(DddForest::from_shells(&f, std::slice::from_ref(&o), std::slice::from_ref(&o)).unwrap().is_empty());
        let cosets: Vec<_> = (0..3).map(|c| d(&f, &[(c, [0, 0])], [1, 0])).collect();
        let merged = DddForest::from_shells(&f, &cosets, &[]).unwrap();
        assert_eq!(merged, a);
        let outside = d(&f, &[(1, [0, -1])], [0, 0]);
        assert_eq!(
            DddForest::from_shells(&f, &[o], &[outside]),
            Err(SetError::ShellNotContained)
        );
    }

    #[test]
    fn boolean_operations() {
        let f = fam(2);
        let o = single(&f, d(&f, &[], [0, 0]));
        let t1o = single(&f, d(&f, &[], [1, 0]));
        let t2o = single(&f, d(&f, &[], [0, 1]));
        let shifted = single(&f, d(&f, &[(1, [0, 0])], [1, 0]));
        assert_eq!(o.difference(&f, &t1o).union(&f, &t1o), o);
        assert_eq!(o.intersect(&f, &shifted), shifted);
        let diff = o.difference(&f, &t2o);
        assert_eq!(diff.roots().len(), 1);
        assert_eq!(diff.roots()[0].children.len(), 1);
        assert!(!diff.roots()[0].children[0].included);
    }

    #[test]
    fn measures() {
        let f = fam(2);
        assert_eq!(single(&f, d(&f, &[], [0, 0])).measure(&f), MeasureValue::one(1));
        let a = single(&f, d(&f, &[(1, [-4, 0])], [2, 3]));
        assert_eq!(a.measure(&f), MeasureValue::monomial(rational(1, 4), ExpVec::from([3])));
        let f3 = fam(3);
        let b = DddForest::from_shells(&f3, &[d(&f3, &[], [0, 0])], &[d(&f3, &[(1, [0, 0])], [1, 0])]).unwrap();
        assert_eq!(b.measure(&f3), MeasureValue::constant(rational(2, 3), 1));
        assert!(DddForest::<AdditiveDistSet>::empty().measure(&f3).is_zero());
    }

    #[test]
    fn levels_of_the_nonuniform_example() {
        let f = fam(3);
        let t2o = d(&f, &[], [0, 1]);
        let shifted = d(&f, &[(1, [0, -1])], [0, 1]);
        let o = d(&f, &[], [0, 0]);
        let a = DddForest::from_shells(&f, &[t2o.clone(), shifted], &[]).unwrap();
        assert_eq!(a.uniform_level(&f), UniformLevel::Uniform(ExpVec::from([1])));
        let b = DddForest::from_shells(&f, std::slice::from_ref(&o), &[t2o]).unwrap();
        assert_eq!(b.level_of(&f), LevelOf::Level(ExpVec::from([0])));
        let ab = a.union(&f, &b);
        assert_eq!(ab.level_of(&f), LevelOf::Level(ExpVec::from([0])));
        let witness = el(&f, &[(1, [0, -1])]);
        assert_eq!(
            ab.uniform_level(&f),
            UniformLevel::NotUniform { level: ExpVec::from([0]), witness: Some(witness.clone()) }
        );
        assert!(ab.contains(&f, &witness));
        assert!(!ab.has_level_neighbourhood(&f, &witness, &ExpVec::from([0])));
        assert_eq!(single(&f, o).uniform_level(&f), UniformLevel::Uniform(ExpVec::from([0])));
        assert_eq!(DddForest::<AdditiveDistSet>::empty().level_of(&f), LevelOf::EmptySet);
    }

    #[test]
    fn removing_a_higher_level_set_breaks_uniformity() {
        let f = fam(3);
        let b = DddForest::from_shells(&f, &[d(&f, &[], [0, 0])], &[d(&f, &[], [0, 1])]).unwrap();
        let UniformLevel::NotUniform { level, witness: Some(x) } = b.uniform_level(&f) else {
            panic!("expected a witness");
        };
        assert_eq!(level, ExpVec::from([0]));
        assert!(b.contains(&f, &x));
        assert!(!b.has_level_neighbourhood(&f, &x, &level));
        // points far from t2O keep their level-0 neighbourhood
        assert!(b.has_level_neighbourhood(&f, &el(&f, &[(1, [0, 0])]), &level));
    }

    #[test]
    fn translation() {
        let f = fam(5);
        let t2o = single(&f, d(&f, &[], [0, 1]));
        let g = el(&f, &[(1, [0, -1])]);
        let moved = t2o.translate(&f, &g);
        assert_eq!(moved, single(&f, d(&f, &[(1, [0, -1])], [0, 1])));
        assert_eq!(moved.measure(&f), t2o.measure(&f));
        assert_eq!(t2o.translate(&f, &f.identity()), t2o);
    }
}
