//! Integer exponent vectors ordered lexicographically from the right.
//!
//! `(a_1, ..., a_k) < (b_1, ..., b_k)` iff at the rightmost coordinate where
//! they differ, `a_j < b_j`. The same type carries valuations in `Z^n`,
//! levels in `Z^(n-1)` and monomial exponents of measure values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use crate::error::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(SmallVec<[i64; 4]>);

impl ExpVec {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        ExpVec(coords.into_iter().collect())
    }

    pub fn zero(arity: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, arity))
    }

    /// Unit vector with `1` at `pos`.
    pub fn unit(arity: usize, pos: usize) -> Self {
        let mut v = Self::zero(arity);
        v.0[pos] = 1;
        v
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.0.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// First coordinate (the `t_1` index).
    pub fn head(&self) -> i64 {
        self.0[0]
    }

    /// All coordinates but the first: the level part of an index vector.
    pub fn tail(&self) -> ExpVec {
        ExpVec(self.0[1..].iter().copied().collect())
    }

    /// `(head, tail...)`.
    pub fn with_head(head: i64, tail: &ExpVec) -> ExpVec {
        let mut v = SmallVec::with_capacity(tail.arity() + 1);
        v.push(head);
        v.extend_from_slice(&tail.0);
        ExpVec(v)
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coordinate by `k`.
    pub fn div_exact(&self, k: i64) -> Result<ExpVec, AlgebraError> {
        if k == 0 || self.0.iter().any(|c| c % k != 0) {
            return Err(AlgebraError::IndivisibleExponent { exponent: self.to_vec(), factor: k });
        }
        Ok(ExpVec(self.0.iter().map(|c| c / k).collect()))
    }

    pub fn try_cmp(&self, other: &ExpVec) -> Result<Ordering, AlgebraError> {
        if self.arity() != other.arity() {
            return Err(AlgebraError::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        Ok(cmp_from_right(&self.0, &other.0))
    }

    pub fn checked_add(&self, other: &ExpVec) -> Result<ExpVec, AlgebraError> {
        self.check_arity(other)?;
        Ok(ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &ExpVec) -> Result<ExpVec, AlgebraError> {
        self.check_arity(other)?;
        Ok(ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn min_of(self, other: ExpVec) -> ExpVec {
        std::cmp::min(self, other)
    }

    /// Index of the rightmost nonzero coordinate.
    pub fn leading_position(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    fn check_arity(&self, other: &ExpVec) -> Result<(), AlgebraError> {
        if self.arity() != other.arity() {
            return Err(AlgebraError::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        Ok(())
    }
}

fn cmp_from_right(a: &[i64], b: &[i64]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Panics on arity mismatch; use [`ExpVec::try_cmp`] when arities are not
/// known to agree.
impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.arity(), other.arity(), "comparing exponent vectors of different arity");
        cmp_from_right(&self.0, &other.0)
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        self.checked_add(rhs).expect("exponent arity mismatch")
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        self.checked_sub(rhs).expect("exponent arity mismatch")
    }
}

impl Add for ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: ExpVec) -> ExpVec {
        &self + &rhs
    }
}

impl Sub for ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: ExpVec) -> ExpVec {
        &self - &rhs
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        ExpVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec::new(v)
    }
}

impl<const N: usize> From<[i64; N]> for ExpVec {
    fn from(v: [i64; N]) -> Self {
        ExpVec::new(v)
    }
}
