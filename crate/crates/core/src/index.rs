//! Indices of nested distinguished sets and the compatibility check.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::SetError;
use crate::expvec::ExpVec;
use crate::family::{DistinguishedFamily, Trichotomy};
use crate::measure_value::MeasureValue;

/// `|outer : inner|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    /// `q^exponent`.
    Finite { q: u64, exponent: u64 },
    Infinite,
}

impl Index {
    pub fn value(&self) -> Option<BigUint> {
        match self {
            Index::Finite { q, exponent } => Some(BigUint::from(*q).pow(*exponent as u32)),
            Index::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite { .. })
    }

    /// Product of two finite indices over the same `q`.
    pub fn times(&self, other: &Index) -> Index {
        match (self, other) {
            (Index::Finite { q, exponent: a }, Index::Finite { exponent: b, .. }) => {
                Index::Finite { q: *q, exponent: a + b }
            }
            _ => Index::Infinite,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite { exponent: 0, .. } => write!(f, "1"),
            Index::Finite { exponent, .. } => write!(f, "q^{} = {}", exponent, self.value().unwrap()),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn index<F: DistinguishedFamily>(fam: &F, inner: &F::Set, outer: &F::Set) -> Result<Index, SetError> {
    match fam.compare(inner, outer) {
        Trichotomy::Equal => return Ok(Index::Finite { q: fam.q(), exponent: 0 }),
        Trichotomy::FirstInsideSecond => {}
        _ => return Err(SetError::NotContained),
    }
    if fam.level(inner) != fam.level(outer) {
        return Ok(Index::Infinite);
    }
    let steps = (fam.depth(inner) - fam.depth(outer)) as u64;
    Ok(Index::Finite { q: fam.q(), exponent: steps * fam.step_exponent() as u64 })
}

/// Number of depth-`depth(inner)` cells of `outer`, counted by splitting.
pub fn index_by_splitting<F: DistinguishedFamily>(fam: &F, inner: &F::Set, outer: &F::Set) -> Result<BigUint, SetError> {
    if fam.level(inner) != fam.level(outer) {
        return Err(SetError::LevelMismatch("splitting needs equal levels".into()));
    }
    let mut frontier = vec![outer.clone()];
    let mut count = BigUint::one();
    for _ in fam.depth(outer)..fam.depth(inner) {
        let parts = fam.split_once(&frontier[0]);
        count *= parts.len();
        frontier = parts;
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityEntry {
    pub inner_depth: i64,
    pub outer_depth: i64,
    pub level: ExpVec,
    pub exponent: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub entries: Vec<CompatibilityEntry>,
    pub violations: Vec<String>,
}

impl CompatibilityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For each `(u, v, levels)` checks that `|G_{v,γ} : G_{u,γ}|` is one
/// power of `q` for every `γ` and that it equals the ratio of base
/// measures.
pub fn check_compatible<F: DistinguishedFamily>(fam: &F, samples: &[(i64, i64, Vec<ExpVec>)]) -> CompatibilityReport {
    let mut report = CompatibilityReport::default();
    for (u, v, levels) in samples {
        let mut seen: Option<u64> = None;
        for gamma in levels {
            let (inner, outer) = match (
                fam.subgroup(&ExpVec::with_head(*u, gamma)),
                fam.subgroup(&ExpVec::with_head(*v, gamma)),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    report.violations.push(format!("({u}, {v}) at {gamma}: {e}"));
                    continue;
                }
            };
            let exponent = index_exponent_by_splitting(fam, &inner, &outer);
            report.entries.push(CompatibilityEntry {
                inner_depth: *u,
                outer_depth: *v,
                level: gamma.clone(),
                exponent,
            });
            let Some(k) = exponent else {
                report.violations.push(format!("({u}, {v}) at {gamma}: not nested"));
                continue;
            };
            if *seen.get_or_insert(k) != k {
                report.violations.push(format!("({u}, {v}) at {gamma}: exponent {k} differs from {}", seen.unwrap()));
            }
            let ratio = fam.base_measure(&outer).checked_div(&fam.base_measure(&inner));
            let expected = MeasureValue::constant(
                crate::measure_value::rational_pow(fam.q(), k as i64),
                fam.elevation(),
            );
            if ratio.as_ref() != Ok(&expected) {
                report.violations.push(format!("({u}, {v}) at {gamma}: base ratio is not q^{k}"));
            }
        }
    }
    report
}

fn index_exponent_by_splitting<F: DistinguishedFamily>(fam: &F, inner: &F::Set, outer: &F::Set) -> Option<u64> {
    if !matches!(fam.compare(inner, outer), Trichotomy::Equal | Trichotomy::FirstInsideSecond) {
        return None;
    }
    let count = index_by_splitting(fam, inner, outer).ok()?;
    let q = BigUint::from(fam.q());
    let mut k = 0u64;
    let mut acc = BigUint::one();
    while acc < count {
        acc *= &q;
        k += 1;
    }
    (acc == count).then_some(k)
}
