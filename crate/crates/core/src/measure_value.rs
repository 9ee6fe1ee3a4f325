//! Laurent polynomials in infinitesimal indeterminates with exact rational
//! coefficients: the value ring of the measure.
//!
//! The indeterminates `Y_2, ..., Y_n` are positive infinitesimals, so a
//! nonzero value has the sign of its coefficient at the smallest exponent
//! (smallest in the lexicographic-from-the-right order).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::expvec::ExpVec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MeasureValue {
    elevation: usize,
    terms: BTreeMap<ExpVec, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `q^k` as an exact rational, `k` of either sign.
pub fn rational_pow(q: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    num_traits::pow::Pow::pow(&base, k as i32)
}

impl MeasureValue {
    pub fn zero(elevation: usize) -> Self {
        MeasureValue { elevation, terms: BTreeMap::new() }
    }

    pub fn one(elevation: usize) -> Self {
        Self::constant(BigRational::one(), elevation)
    }

    pub fn constant(c: BigRational, elevation: usize) -> Self {
        Self::monomial(c, ExpVec::zero(elevation))
    }

    /// `c * Y^exp`; the elevation is the arity of `exp`.
    pub fn monomial(c: BigRational, exp: ExpVec) -> Self {
        let mut terms = BTreeMap::new();
        let elevation = exp.arity();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MeasureValue { elevation, terms }
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        elevation: usize,
        terms: impl IntoIterator<Item = (ExpVec, BigRational)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(elevation);
        for (e, c) in terms {
            if e.arity() != elevation {
                return Err(AlgebraError::ElevationMismatch { left: elevation, right: e.arity() });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: ExpVec, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn elevation(&self) -> usize {
        self.elevation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExpVec) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The dominant (smallest-exponent) term.
    pub fn leading_term(&self) -> Option<(&ExpVec, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn signum(&self) -> Ordering {
        match self.leading_term() {
            None => Ordering::Equal,
            Some((_, c)) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn as_monomial(&self) -> Option<(&ExpVec, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.elevation != other.elevation {
            return Err(AlgebraError::ElevationMismatch {
                left: self.elevation,
                right: other.elevation,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.elevation);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    /// Division by a single nonzero term `c * Y^e`.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (de, dc) = divisor.as_monomial().ok_or(AlgebraError::NonMonomialDivisor)?;
        let terms = self.terms.iter().map(|(e, c)| (e - de, c / dc)).collect();
        Ok(MeasureValue { elevation: self.elevation, terms })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero(self.elevation);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, AlgebraError> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Substitutes `Y_k -> X_k^factor`.
    pub fn scale_exponents(&self, factor: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.scale(factor), c.clone())).collect();
        MeasureValue { elevation: self.elevation, terms }
    }

    /// Inverse of [`scale_exponents`](Self::scale_exponents).
    pub fn unscale_exponents(&self, factor: i64) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.div_exact(factor)?, c.clone());
        }
        Ok(MeasureValue { elevation: self.elevation, terms })
    }

    /// Renders with indeterminates named `base` (elevation 1) or
    /// `base2, base3, ...` (higher elevation).
    pub fn display_with<'a>(&'a self, base: &'a str) -> impl fmt::Display + 'a {
        Rendered { value: self, base }
    }
}

struct Rendered<'a> {
    value: &'a MeasureValue,
    base: &'a str,
}

fn monomial_string(e: &ExpVec, base: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.coords().iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name =
            if e.arity() == 1 { base.to_string() } else { format!("{base}{}", i + 2) };
        if k == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{k}"));
        }
    }
    parts.join("*")
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.value.terms.iter().enumerate() {
            let mono = monomial_string(e, self.base);
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude} * {mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("Y"))
    }
}

impl fmt::Debug for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MeasureValue({self})")
    }
}

/// Panics on elevation mismatch; see [`MeasureValue::try_cmp`].
impl Ord for MeasureValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("comparing measure values of different elevation")
    }
}

impl PartialOrd for MeasureValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &MeasureValue {
            type Output = MeasureValue;
            fn $m(self, rhs: &MeasureValue) -> MeasureValue {
                self.$checked(rhs).expect("measure value elevation mismatch")
            }
        }
        impl $tr for MeasureValue {
            type Output = MeasureValue;
            fn $m(self, rhs: MeasureValue) -> MeasureValue {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MeasureValue {
    type Output = MeasureValue;
    fn neg(self) -> MeasureValue {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MeasureValue { elevation: self.elevation, terms }
    }
}

impl Neg for MeasureValue {
    type Output = MeasureValue;
    fn neg(self) -> MeasureValue {
        -&self
    }
}

impl std::iter::Sum for MeasureValue {
    fn sum<I: Iterator<Item = MeasureValue>>(mut iter: I) -> MeasureValue {
        let first = iter.next().expect("sum of an empty iterator has no elevation");
        iter.fold(first, |acc, v| acc + v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: i64) -> MeasureValue {
        MeasureValue::monomial(BigRational::one(), ExpVec::from([k]))
    }

    fn c(n: i64) -> MeasureValue {
        MeasureValue::constant(rational(n, 1), 1)
    }

    #[test]
    fn ring_operations_cancel_and_multiply() {
        assert_eq!((c(1) - x(1)) + x(1), c(1));
        assert_eq!(x(1) * x(1), x(2));
        assert_eq!((c(1) - x(1)) * (c(1) + x(1)), c(1) - x(2));
    }

    #[test]
    fn infinitesimal_order() {
        let three_x = x(1).scale(&rational(3, 1));
        assert_eq!(x(2).cmp(&three_x), Ordering::Less);
        assert_eq!((c(1) - x(1)).cmp(&c(1)), Ordering::Less);
        assert_eq!(x(-1).cmp(&c(5)), Ordering::Greater);
    }

    #[test]
    fn elevation_mismatch_is_an_error() {
        let a = MeasureValue::one(1);
        let b = MeasureValue::one(2);
        assert_eq!(
            a.checked_add(&b).unwrap_err(),
            AlgebraError::ElevationMismatch { left: 1, right: 2 }
        );
        assert!(a.try_cmp(&b).is_err());
    }

    #[test]
    fn renders_terms_in_ascending_order() {
        let v = MeasureValue::monomial(rational(1, 4), ExpVec::from([3]));
        assert_eq!(v.to_string(), "1/4 * Y^3");
        assert_eq!((c(1) - x(1).scale(&rational(1, 3))).to_string(), "1 - 1/3 * Y");
        assert_eq!(MeasureValue::zero(1).to_string(), "0");
        assert_eq!((x(-2) - c(2)).to_string(), "Y^-2 - 2");
        let two = MeasureValue::monomial(rational(-1, 1), ExpVec::from([1, 2]));
        assert_eq!(two.display_with("X").to_string(), "-X2*X3^2");
    }

    #[test]
    fn monomial_division_and_rescaling() {
        let v = MeasureValue::monomial(rational(8, 3), ExpVec::from([4]));
        let d = MeasureValue::monomial(rational(2, 1), ExpVec::from([1]));
        assert_eq!(
            v.checked_div(&d).unwrap(),
            MeasureValue::monomial(rational(4, 3), ExpVec::from([3]))
        );
        assert_eq!(v.unscale_exponents(4).unwrap().scale_exponents(4), v);
        assert!(v.checked_div(&(c(1) + x(1))).is_err());
    }
}
