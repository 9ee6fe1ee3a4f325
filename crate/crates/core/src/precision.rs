//! Field elements known modulo an ideal `{v >= prec}`.
//!
//! Propagation rules, for `x` known mod `P` and `y` known mod `Q`:
//!
//! * `x + y` is known mod `min(P, Q)`;
//! * `x * y` is known mod `min(P + v(y), Q + v(x))`, where the valuation of
//!   a zero value is taken to be its own precision.
//!
//! Values are always truncated below their precision.

use crate::error::AlgebraError;
use crate::expvec::ExpVec;
use crate::field::{FieldElement, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionElement {
    value: FieldElement,
    prec: ExpVec,
}

impl PrecisionElement {
    /// Truncates `value` below `prec`.
    pub fn new(value: FieldElement, prec: ExpVec) -> Self {
        let value = value.truncate_below(&prec);
        PrecisionElement { value, prec }
    }

    pub fn value(&self) -> &FieldElement {
        &self.value
    }

    pub fn prec(&self) -> &ExpVec {
        &self.prec
    }

    pub fn into_value(self) -> FieldElement {
        self.value
    }

    /// Valuation bound used by the multiplication rule.
    fn effective_valuation(&self) -> ExpVec {
        match self.value.valuation() {
            Valuation::Finite(v) => v,
            Valuation::Infinity => self.prec.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let prec = self.prec.clone().min_of(other.prec.clone());
        Ok(Self::new(self.value.checked_add(&other.value)?, prec))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        let prec = self.prec.clone().min_of(other.prec.clone());
        Ok(Self::new(self.value.checked_sub(&other.value)?, prec))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let a = self.prec.checked_add(&other.effective_valuation())?;
        let b = other.prec.checked_add(&self.effective_valuation())?;
        Ok(Self::new(self.value.checked_mul(&other.value)?, a.min_of(b)))
    }

    /// `true` iff the value is congruent to `target` modulo the precision.
    pub fn congruent_to(&self, target: &FieldElement) -> bool {
        let diff = &self.value - target;
        diff.valuation().at_least(&self.prec)
    }
}

/// Inverse of `x` modulo `{v >= prec}`: returns `y` with
/// `x * y ≡ 1 (mod {v >= prec})`, recorded with precision `prec - v(x)`.
///
/// `x = c t^w (1 - u)` with `v(u) > 0`, and `y = c^{-1} t^{-w} Σ u^k`. The
/// truncated series is finite only if some multiple of `v(u)` reaches
/// `prec`; otherwise [`AlgebraError::NonTerminating`] is returned.
pub fn invert(x: &FieldElement, prec: &ExpVec) -> Result<PrecisionElement, AlgebraError> {
    let params = x.params();
    let w = x.valuation().finite().map_err(|_| AlgebraError::DivisionByZero)?.clone();
    if prec.arity() != w.arity() {
        return Err(AlgebraError::ArityMismatch { left: w.arity(), right: prec.arity() });
    }
    let lead = FieldElement::monomial(params, x.leading_coefficient().unwrap() as i64, w.clone());
    let lead_inv = lead.monomial_inverse()?;
    let unit = x * &lead_inv;
    let u = &FieldElement::one(params) - &unit;

    let steps = match u.valuation() {
        Valuation::Infinity => 0,
        Valuation::Finite(vu) => series_length(&vu, prec).ok_or_else(|| {
            AlgebraError::NonTerminating { valuation: vu.to_vec(), prec: prec.to_vec() }
        })?,
    };

    let one = FieldElement::one(params);
    let mut s = one.truncate_below(prec);
    for _ in 0..steps {
        let next = (&one + &(&u * &s)).truncate_below(prec);
        if next == s {
            break;
        }
        s = next;
    }
    let y_prec = prec - &w;
    Ok(PrecisionElement::new(&s * &lead_inv, y_prec))
}

/// Smallest `K` with `K * vu > prec`, or `None` if no multiple of the
/// positive vector `vu` exceeds `prec`.
fn series_length(vu: &ExpVec, prec: &ExpVec) -> Option<u64> {
    let r = vu.leading_position()?;
    let above = &prec.coords()[r + 1..];
    if let Some(&c) = above.iter().rev().find(|&&c| c != 0) {
        return if c < 0 { Some(0) } else { None };
    }
    let step = vu.coords()[r];
    debug_assert!(step > 0);
    let target = prec.coords()[r];
    Some((target.div_euclid(step) + 1).max(0) as u64)
}
