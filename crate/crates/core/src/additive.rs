//! Cosets `α + t^i O_F` of the additive group of `F_p((t1))...((tn))`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::SetError;
use crate::expvec::ExpVec;
use crate::family::{split_to_depth, DistinguishedFamily, Trichotomy};
use crate::field::{FieldElement, FieldParams, Valuation};
use crate::measure_value::{rational_pow, MeasureValue};

/// `shift + t^idx O_F = {x : v(x - shift) >= idx}`, with every monomial of
/// `shift` below `idx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveDistSet {
    shift: FieldElement,
    idx: ExpVec,
}

impl AdditiveDistSet {
    pub fn new(shift: FieldElement, idx: ExpVec) -> Result<Self, SetError> {
        if idx.arity() != shift.params().dim() {
            return Err(crate::error::AlgebraError::ArityMismatch {
                left: shift.params().dim(),
                right: idx.arity(),
            }
            .into());
        }
        Ok(AdditiveDistSet { shift: shift.truncate_below(&idx), idx })
    }

    /// `t^idx O_F`.
    pub fn ideal(params: FieldParams, idx: ExpVec) -> Result<Self, SetError> {
        Self::new(FieldElement::zero(params), idx)
    }

    pub fn shift(&self) -> &FieldElement {
        &self.shift
    }

    pub fn idx(&self) -> &ExpVec {
        &self.idx
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        (x - &self.shift).valuation().at_least(&self.idx)
    }
}

impl fmt::Display for AdditiveDistSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.idx.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "D({}; {})", self.shift, idx.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditiveFamily {
    params: FieldParams,
}

impl AdditiveFamily {
    pub fn new(params: FieldParams) -> Self {
        AdditiveFamily { params }
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    /// `O_F`.
    pub fn ring_of_integers(&self) -> AdditiveDistSet {
        AdditiveDistSet::ideal(self.params, ExpVec::zero(self.params.dim())).unwrap()
    }

    pub fn set(&self, shift: FieldElement, idx: impl Into<ExpVec>) -> Result<AdditiveDistSet, SetError> {
        AdditiveDistSet::new(shift, idx.into())
    }

    /// The `q^(target - i_1)` cosets at t1-index `target` tiling `d`.
    pub fn split(&self, d: &AdditiveDistSet, target_idx1: i64) -> Result<Vec<AdditiveDistSet>, SetError> {
        if target_idx1 < d.idx.head() {
            return Err(SetError::LevelMismatch(format!(
                "target t1-index {target_idx1} is below {}",
                d.idx.head()
            )));
        }
        split_to_depth(self, d, target_idx1)
    }
}

impl DistinguishedFamily for AdditiveFamily {
    type Set = AdditiveDistSet;
    type Point = FieldElement;

    fn elevation(&self) -> usize {
        self.params.elevation()
    }

    fn q(&self) -> u64 {
        self.params.p() as u64
    }

    fn step_exponent(&self) -> u32 {
        1
    }

    fn compare(&self, a: &AdditiveDistSet, b: &AdditiveDistSet) -> Trichotomy {
        match a.idx.cmp(&b.idx) {
            Ordering::Equal if a.shift == b.shift => Trichotomy::Equal,
            Ordering::Equal => Trichotomy::Disjoint,
            Ordering::Greater if b.contains(&a.shift) => Trichotomy::FirstInsideSecond,
            Ordering::Less if a.contains(&b.shift) => Trichotomy::SecondInsideFirst,
            _ => Trichotomy::Disjoint,
        }
    }

    fn index_vector(&self, d: &AdditiveDistSet) -> ExpVec {
        d.idx.clone()
    }

    fn base_measure(&self, d: &AdditiveDistSet) -> MeasureValue {
        MeasureValue::monomial(rational_pow(self.q(), -d.idx.head()), d.idx.tail())
    }

    fn subgroup(&self, idx: &ExpVec) -> Result<AdditiveDistSet, SetError> {
        AdditiveDistSet::ideal(self.params, idx.clone())
    }

    fn parent(&self, d: &AdditiveDistSet) -> Option<AdditiveDistSet> {
        let idx = ExpVec::with_head(d.idx.head() - 1, &d.idx.tail());
        AdditiveDistSet::new(d.shift.clone(), idx).ok()
    }

    fn split_once(&self, d: &AdditiveDistSet) -> Vec<AdditiveDistSet> {
        let idx = ExpVec::with_head(d.idx.head() + 1, &d.idx.tail());
        (0..self.params.p() as i64)
            .map(|c| {
                let shift = &d.shift + &FieldElement::monomial(self.params, c, d.idx.clone());
                AdditiveDistSet { shift, idx: idx.clone() }
            })
            .collect()
    }

    fn translate(&self, g: &FieldElement, d: &AdditiveDistSet) -> AdditiveDistSet {
        AdditiveDistSet::new(g + &d.shift, d.idx.clone()).unwrap()
    }

    fn translate_right(&self, d: &AdditiveDistSet, g: &FieldElement) -> Result<AdditiveDistSet, SetError> {
        Ok(self.translate(g, d))
    }

    fn identity(&self) -> FieldElement {
        FieldElement::zero(self.params)
    }

    fn canonical_cmp(&self, a: &AdditiveDistSet, b: &AdditiveDistSet) -> Ordering {
        a.idx.cmp(&b.idx).then_with(|| a.shift.terms().cmp(b.shift.terms()))
    }

    fn contains(&self, d: &AdditiveDistSet, x: &FieldElement) -> bool {
        d.contains(x)
    }

    fn representative(&self, d: &AdditiveDistSet) -> FieldElement {
        d.shift.clone()
    }

    fn in_level_ball(&self, x: &FieldElement, d: &AdditiveDistSet, gamma: &ExpVec) -> bool {
        if &d.idx.tail() == gamma {
            return d.contains(x);
        }
        match (x - &d.shift).valuation() {
            Valuation::Infinity => true,
            Valuation::Finite(v) => &v.tail() > gamma,
        }
    }

    fn separated_points(&self, d: &AdditiveDistSet, count: usize) -> Vec<FieldElement> {
        let mut out = vec![d.shift.clone()];
        for k in 0..count.saturating_sub(1) {
            let e = ExpVec::with_head(d.idx.head() + k as i64, &d.idx.tail());
            out.push(&d.shift + &FieldElement::monomial(self.params, 1, e));
        }
        out
    }
}
