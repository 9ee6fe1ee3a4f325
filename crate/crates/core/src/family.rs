//! The interface a family of distinguished sets provides to the set algebra.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::error::SetError;
use crate::expvec::ExpVec;
use crate::measure_value::MeasureValue;

/// How two distinguished sets of an ordered-type family meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    Equal,
    Disjoint,
    FirstInsideSecond,
    SecondInsideFirst,
}

impl Trichotomy {
    pub fn flip(self) -> Self {
        match self {
            Trichotomy::FirstInsideSecond => Trichotomy::SecondInsideFirst,
            Trichotomy::SecondInsideFirst => Trichotomy::FirstInsideSecond,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Trichotomy::Equal => "equal",
            Trichotomy::Disjoint => "disjoint",
            Trichotomy::FirstInsideSecond => "first inside second",
            Trichotomy::SecondInsideFirst => "second inside first",
        }
    }
}

/// A family of distinguished sets `g G_{U,γ}` of ordered type, indexed by
/// vectors `(i_1, γ)` where `i_1` indexes the base neighbourhood `U` and `γ`
/// is the level.
///
/// Within one level the sets form a rooted tree: every set has `q^step`
/// children one index step deeper that tile it, and (where the level
/// structure allows) a parent one step shallower.
pub trait DistinguishedFamily: Send + Sync {
    type Set: Clone + Debug + Send + Sync;
    type Point: Clone + Debug + Send + Sync;

    fn elevation(&self) -> usize;

    /// Cardinality of the residue field.
    fn q(&self) -> u64;

    /// `log_q` of the number of children of a set.
    fn step_exponent(&self) -> u32;

    fn compare(&self, a: &Self::Set, b: &Self::Set) -> Trichotomy;

    /// The full index vector `(i_1, γ)`.
    fn index_vector(&self, d: &Self::Set) -> ExpVec;

    fn level(&self, d: &Self::Set) -> ExpVec {
        self.index_vector(d).tail()
    }

    fn depth(&self, d: &Self::Set) -> i64 {
        self.index_vector(d).head()
    }

    fn base_measure(&self, d: &Self::Set) -> MeasureValue;

    /// The member of the level structure with index `idx` (the subgroup
    /// through the identity).
    fn subgroup(&self, idx: &ExpVec) -> Result<Self::Set, SetError>;

    /// The same-level set one step shallower containing `d`, if the level
    /// structure has one.
    fn parent(&self, d: &Self::Set) -> Option<Self::Set>;

    /// The `q^step` disjoint same-level sets one step deeper tiling `d`.
    fn split_once(&self, d: &Self::Set) -> Vec<Self::Set>;

    /// `g d`.
    fn translate(&self, g: &Self::Point, d: &Self::Set) -> Self::Set;

    /// `d g`, when that is again a distinguished set.
    fn translate_right(&self, d: &Self::Set, g: &Self::Point) -> Result<Self::Set, SetError>;

    fn identity(&self) -> Self::Point;

    /// Deterministic total order used to sort siblings.
    fn canonical_cmp(&self, a: &Self::Set, b: &Self::Set) -> Ordering;

    fn contains(&self, d: &Self::Set, x: &Self::Point) -> bool;

    fn representative(&self, d: &Self::Set) -> Self::Point;

    /// `true` iff `x` lies in every distinguished set of level `gamma` that
    /// contains `d`.
    fn in_level_ball(&self, x: &Self::Point, d: &Self::Set, gamma: &ExpVec) -> bool;

    /// `count` points of `d` such that no distinguished set of level
    /// strictly above `level(d)` contains two of them.
    fn separated_points(&self, d: &Self::Set, count: usize) -> Vec<Self::Point>;
}

/// The same-level sets at t1-depth `depth` tiling `d`.
pub fn split_to_depth<F: DistinguishedFamily>(fam: &F, d: &F::Set, depth: i64) -> Result<Vec<F::Set>, SetError> {
    let start = fam.depth(d);
    if depth < start {
        return Err(SetError::Precondition(format!(
            "cannot split a set of depth {start} to the shallower depth {depth}"
        )));
    }
    let mut cells = vec![d.clone()];
    for _ in start..depth {
        cells = cells.iter().flat_map(|c| fam.split_once(c)).collect();
    }
    Ok(cells)
}
