//! Elements of `F = F_p((t_1))...((t_n))` with finite support.
//!
//! An element is a finite `F_p`-linear combination of monomials
//! `t^a = t_1^{a_1} ... t_n^{a_n}`. Its valuation is the smallest exponent
//! of its support in the lexicographic-from-the-right order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::expvec::ExpVec;

/// The prime `p` and the dimension `n` of the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    n: usize,
}

impl FieldParams {
    pub fn new(p: u32, n: usize) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldParams { p, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Elevation of the level structure over the one-dimensional residue
    /// field.
    pub fn elevation(&self) -> usize {
        self.n - 1
    }

    pub fn reduce(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    pub fn inv_mod(&self, c: u32) -> Option<u32> {
        if c.is_multiple_of(self.p) {
            return None;
        }
        Some(pow_mod(c as u64, (self.p - 2) as u64, self.p as u64) as u32)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Valuation of a field element; zero has the sentinel `Infinity`, which
/// compares above every finite value and supports no arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(ExpVec),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Result<&ExpVec, AlgebraError> {
        match self {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinity => Err(AlgebraError::InfiniteValuation),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// `self >= bound`, with `Infinity` above everything.
    pub fn at_least(&self, bound: &ExpVec) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinity => true,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    params: FieldParams,
    coeffs: BTreeMap<ExpVec, u32>,
}

impl PartialOrd for FieldParams {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldParams {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.n).cmp(&(other.p, other.n))
    }
}

impl FieldElement {
    pub fn zero(params: FieldParams) -> Self {
        FieldElement { params, coeffs: BTreeMap::new() }
    }

    pub fn one(params: FieldParams) -> Self {
        Self::constant(params, 1)
    }

    pub fn constant(params: FieldParams, c: i64) -> Self {
        Self::monomial(params, c, ExpVec::zero(params.n))
    }

    /// `c * t^exp`.
    pub fn monomial(params: FieldParams, c: i64, exp: ExpVec) -> Self {
        assert_eq!(exp.arity(), params.n, "monomial exponent arity");
        let mut out = Self::zero(params);
        out.add_term(exp, params.reduce(c));
        out
    }

    /// The local parameter `t_i` (1-based).
    pub fn parameter(params: FieldParams, i: usize) -> Self {
        Self::monomial(params, 1, ExpVec::unit(params.n, i - 1))
    }

    /// Sums `(coefficient, exponent)` pairs with integer coefficients taken
    /// mod `p`.
    pub fn from_terms(
        params: FieldParams,
        terms: impl IntoIterator<Item = (i64, ExpVec)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(params);
        for (c, e) in terms {
            if e.arity() != params.n {
                return Err(AlgebraError::ArityMismatch { left: params.n, right: e.arity() });
            }
            out.add_term(e, params.reduce(c));
        }
        Ok(out)
    }

    fn add_term(&mut self, e: ExpVec, c: u32) {
        use std::collections::btree_map::Entry;
        let p = self.params.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.coeffs.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Sums `(exponent, coefficient)` pairs in one sort-and-merge pass.
    fn collect_terms(params: FieldParams, mut terms: Vec<(ExpVec, u64)>) -> Self {
        let p = params.p as u64;
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(ExpVec, u64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc = (*acc + c) % p,
                _ => merged.push((e, c % p)),
            }
        }
        let coeffs = merged.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as u32)).collect();
        FieldElement { params, coeffs }
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self.coeffs.get(&ExpVec::zero(self.params.n)).copied() == Some(1)
    }

    /// Support in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, u32)> {
        self.coeffs.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, e: &ExpVec) -> u32 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(e) => Valuation::Finite(e.clone()),
            None => Valuation::Infinity,
        }
    }

    /// Coefficient at the valuation.
    pub fn leading_coefficient(&self) -> Option<u32> {
        self.coeffs.values().next().copied()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.params.p != other.params.p {
            return Err(AlgebraError::ModulusMismatch {
                left: self.params.p,
                right: other.params.p,
            });
        }
        if self.params.n != other.params.n {
            return Err(AlgebraError::ArityMismatch {
                left: self.params.n,
                right: other.params.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if other.coeffs.len() <= 2 {
            let mut out = self.clone();
            for (e, &c) in &other.coeffs {
                out.add_term(e.clone(), c);
            }
            return Ok(out);
        }
        let terms = self.coeffs.iter().chain(&other.coeffs).map(|(e, &c)| (e.clone(), c as u64)).collect();
        Ok(Self::collect_terms(self.params, terms))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (ea, &ca) in &self.coeffs {
            for (eb, &cb) in &other.coeffs {
                terms.push((ea + eb, ca as u64 * cb as u64));
            }
        }
        Ok(Self::collect_terms(self.params, terms))
    }

    /// `Σ a_k b_k - minus`, keeping only the monomials below `bound`.
    pub fn sum_of_products_below<'a>(
        params: FieldParams,
        pairs: impl IntoIterator<Item = (&'a FieldElement, &'a FieldElement)>,
        minus: Option<&FieldElement>,
        bound: &ExpVec,
    ) -> Self {
        let p = params.p as u64;
        let mut terms = Vec::new();
        for (a, b) in pairs {
            for (ea, &ca) in &a.coeffs {
                for (eb, &cb) in &b.coeffs {
                    let e = ea + eb;
                    if e >= *bound {
                        break;
                    }
                    terms.push((e, ca as u64 * cb as u64));
                }
            }
        }
        if let Some(m) = minus {
            terms.extend(m.coeffs.range(..bound.clone()).map(|(e, &c)| (e.clone(), p - c as u64)));
        }
        Self::collect_terms(params, terms)
    }

    pub fn scalar_mul(&self, c: i64) -> Self {
        let c = self.params.reduce(c) as u64;
        let p = self.params.p as u64;
        let mut out = Self::zero(self.params);
        for (e, &a) in &self.coeffs {
            out.add_term(e.clone(), ((a as u64 * c) % p) as u32);
        }
        out
    }

    /// Multiplication by `t^shift`.
    pub fn shift(&self, shift: &ExpVec) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, &c)| (e + shift, c)).collect();
        FieldElement { params: self.params, coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.params);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps the monomials with exponent strictly below `bound`.
    pub fn truncate_below(&self, bound: &ExpVec) -> Self {
        let coeffs = self.coeffs.range(..bound.clone()).map(|(e, &c)| (e.clone(), c)).collect();
        FieldElement { params: self.params, coeffs }
    }

    /// Keeps the monomials with exponent at least `bound`.
    pub fn part_at_least(&self, bound: &ExpVec) -> Self {
        let coeffs = self.coeffs.range(bound.clone()..).map(|(e, &c)| (e.clone(), c)).collect();
        FieldElement { params: self.params, coeffs }
    }

    /// Inverse of a single monomial.
    pub fn monomial_inverse(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.len() != 1 {
            return Err(AlgebraError::DivisionByZero);
        }
        let (e, &c) = self.coeffs.iter().next().unwrap();
        let inv = self.params.inv_mod(c).ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self::monomial(self.params, inv as i64, -e))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field parameter mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field parameter mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field parameter mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.params.p;
        let coeffs = self.coeffs.iter().map(|(e, &c)| (e.clone(), p - c)).collect();
        FieldElement { params: self.params, coeffs }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Writes `t1^a*t2^b` for an exponent vector; empty for the zero vector.
pub(crate) fn monomial_name(e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.coords().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{k}", i + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, &c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = monomial_name(e);
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
