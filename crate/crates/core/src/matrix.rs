//! Cosets `g K_γ` of the congruence subgroups `K_γ = I + t^γ M_m(O_F)`,
//! `γ > 0`, in `GL_m(F)` and (intersected with it) in `SL_m(F)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{AlgebraError, SetError};
use crate::exec::{self, Execution};
use crate::expvec::ExpVec;
use crate::family::{DistinguishedFamily, Trichotomy};
use crate::field::{FieldElement, FieldParams, Valuation};
use crate::measure_value::{rational_pow, MeasureValue};
use crate::precision::{invert, PrecisionElement};

/// Square matrix over `F`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    m: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, AlgebraError> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(AlgebraError::ShapeMismatch);
        }
        let params = rows[0][0].params();
        if rows.iter().flatten().any(|e| e.params() != params) {
            return Err(AlgebraError::ShapeMismatch);
        }
        Ok(Matrix { m, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(params: FieldParams, m: usize) -> Self {
        Self::from_fn(m, |r, c| if r == c { FieldElement::one(params) } else { FieldElement::zero(params) })
    }

    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> FieldElement) -> Self {
        let entries = (0..m * m).map(|i| f(i / m, i % m)).collect();
        Matrix { m, entries }
    }

    /// `I + a E_rs`.
    pub fn elementary(m: usize, r: usize, s: usize, a: &FieldElement) -> Self {
        let mut out = Self::identity(a.params(), m);
        out.entries[r * m + s] = &out.entries[r * m + s] + a;
        out
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn params(&self) -> FieldParams {
        self.entries[0].params()
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.m + c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.entries.chunks(self.m)
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.m != other.m || self.params() != other.params() {
            return Err(AlgebraError::ShapeMismatch);
        }
        let m = self.m;
        let params = self.params();
        Ok(Self::from_fn(m, |r, c| {
            (0..m).fold(FieldElement::zero(params), |acc, k| &acc + &(self.get(r, k) * other.get(k, c)))
        }))
    }

    pub fn scaled(&self, a: &FieldElement) -> Matrix {
        Matrix { m: self.m, entries: self.entries.iter().map(|e| e * a).collect() }
    }

    pub fn det(&self) -> FieldElement {
        let idx: Vec<usize> = (0..self.m).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> FieldElement {
        let params = self.params();
        match rows.len() {
            0 => FieldElement::one(params),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = FieldElement::zero(params);
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.get(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = e * &self.minor_det(&rows[1..], &rest);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// `adj(g)` with `g adj(g) = det(g) I`.
    pub fn adjugate(&self) -> Matrix {
        let m = self.m;
        if m == 1 {
            return Self::identity(self.params(), 1);
        }
        Self::from_fn(m, |r, c| {
            let rows: Vec<usize> = (0..m).filter(|&x| x != c).collect();
            let cols: Vec<usize> = (0..m).filter(|&x| x != r).collect();
            let d = self.minor_det(&rows, &cols);
            if (r + c) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    /// Smallest valuation of an entry.
    pub fn min_valuation(&self) -> Valuation {
        self.entries.iter().map(|e| e.valuation()).min().unwrap()
    }

    /// `true` iff every entry lies in `t^bound O_F`.
    pub fn entries_at_least(&self, bound: &ExpVec) -> bool {
        self.entries.iter().all(|e| e.valuation().at_least(bound))
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.m, rhs.m, "matrix shape mismatch");
        Matrix { m: self.m, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `h` with `g h ≡ I` modulo `t^prec M_m(O_F)`, each entry recorded with
/// the precision to which it agrees with the true inverse.
///
/// `h = adj(g) y` with `y ≈ det(g)^{-1}` known to a working precision `W`
/// large enough that truncating any entry of `h` costs at most `t^prec`
/// after multiplying by `g`.
pub fn mat_inverse_to_precision(g: &Matrix, prec: &ExpVec) -> Result<Vec<Vec<PrecisionElement>>, AlgebraError> {
    let det = g.det();
    let vdet = det.valuation().finite().map_err(|_| AlgebraError::SingularMatrix)?.clone();
    let adj = g.adjugate();
    let vmin_g = g.min_valuation().finite()?.clone();
    let mut work = prec.clone();
    for a in adj.entries() {
        if let Valuation::Finite(va) = a.valuation() {
            let need = &(&(prec + &vdet) - &vmin_g) - &va;
            work = work.max(need);
        }
    }
    let y = invert(&det, &work)?;
    let m = g.size();
    let mut out = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = Vec::with_capacity(m);
        for c in 0..m {
            let a = adj.get(r, c);
            let entry_prec = match a.valuation() {
                Valuation::Finite(va) => &va + y.prec(),
                Valuation::Infinity => y.prec().clone(),
            };
            row.push(PrecisionElement::new(a * y.value(), entry_prec));
        }
        out.push(row);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Group orders and measure constants

/// `|GL_m(F_q)| = q^{m(m-1)/2} Π_{k=1}^m (q^k - 1)`.
pub fn gl_order(m: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = q.pow((m * (m - 1) / 2) as u32);
    for k in 1..=m as u32 {
        acc *= q.pow(k) - BigUint::one();
    }
    acc
}

/// `|SL_m(F_q)| = |GL_m(F_q)| / (q - 1)`.
pub fn sl_order(m: usize, q: u64) -> BigUint {
    gl_order(m, q) / BigUint::from(q - 1)
}

/// `c_m(q) = q^{m(m+1)/2} / Π_{k=1}^m (q^k - 1)`, so that
/// `c_m(q) q^{-m^2} = 1 / |GL_m(F_q)|`.
pub fn gl_constant(m: usize, q: u64) -> BigRational {
    let mut den = BigInt::one();
    for k in 1..=m as u32 {
        den *= BigInt::from(q).pow(k) - BigInt::one();
    }
    rational_pow(q, (m * (m + 1) / 2) as i64) / BigRational::from_integer(den)
}

/// `c_m(q) q^{-m^2 i_1} Y^γ` for `K_{(i_1, γ)}`.
pub fn gl_base_measure(m: usize, q: u64, idx: &ExpVec) -> MeasureValue {
    let c = gl_constant(m, q) * rational_pow(q, -((m * m) as i64) * idx.head());
    MeasureValue::monomial(c, idx.tail())
}

/// The multiplicative family: `GL_1`, with `μ(K_{(i, γ)}) = q^{1-i}/(q-1) Y^γ`.
pub fn scalar_base_measure(q: u64, idx: &ExpVec) -> MeasureValue {
    gl_base_measure(1, q, idx)
}

/// `μ_SL = μ_GL / μ_scalar` taken in the grading where `K_{(i, γ)}` of a
/// group of dimension `d` has exponent `d γ`, then read back in `Y^γ`.
pub fn sl_base_measure(m: usize, q: u64, idx: &ExpVec) -> MeasureValue {
    let d = (m * m) as i64;
    let gl = gl_base_measure(m, q, idx).scale_exponents(d);
    let scalar = scalar_base_measure(q, idx);
    let quotient = gl.checked_div(&scalar).expect("scalar measure is a monomial");
    quotient.unscale_exponents(d - 1).expect("exponents are multiples of m^2 - 1")
}

/// `λ = q^{m^2-1} / |SL_m(F_q)|`.
pub fn sl_constant(m: usize, q: u64) -> BigRational {
    rational_pow(q, (m * m - 1) as i64) / BigRational::from_integer(sl_order(m, q).into())
}

// ---------------------------------------------------------------------------
// The families

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    GL,
    SL,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::GL => "gl",
            GroupKind::SL => "sl",
        })
    }
}

/// `rep K_idx`, with `det(rep)` and `adj(rep)` cached for congruence tests.
#[derive(Clone, PartialEq, Eq)]
pub struct MatCoset {
    rep: Matrix,
    idx: ExpVec,
    det: FieldElement,
    adj: Matrix,
}

impl MatCoset {
    fn build(rep: Matrix, idx: ExpVec) -> Self {
        let det = rep.det();
        let adj = rep.adjugate();
        MatCoset { rep, idx, det, adj }
    }

    pub fn rep(&self) -> &Matrix {
        &self.rep
    }

    pub fn idx(&self) -> &ExpVec {
        &self.idx
    }

    /// `rep^{-1} x - I` has entries in `t^bound O_F`, decided exactly as
    /// `adj(rep) x - det(rep) I ∈ t^{v(det) + bound} M_m(O_F)`.
    fn quotient_at_least(&self, x: &Matrix, bound: &ExpVec) -> bool {
        let vdet = self.det.valuation().finite().expect("invertible representative").clone();
        let target = &vdet + bound;
        let m = self.rep.size();
        let params = self.det.params();
        (0..m).all(|r| {
            (0..m).all(|c| {
                let pairs = (0..m).map(|k| (self.adj.get(r, k), x.get(k, c)));
                let minus = (r == c).then_some(&self.det);
                FieldElement::sum_of_products_below(params, pairs, minus, &target).is_zero()
            })
        })
    }

    /// Every entry of `rep^{-1} x - I` is zero or has valuation with tail
    /// above `gamma`.
    fn quotient_tail_above(&self, x: &Matrix, gamma: &ExpVec) -> bool {
        let vdet = self.det.valuation().finite().expect("invertible representative").clone();
        let n = &self.adj * x;
        let m = self.rep.size();
        (0..m).all(|r| {
            (0..m).all(|c| {
                let e = if r == c { n.get(r, c) - &self.det } else { n.get(r, c).clone() };
                match e.valuation() {
                    Valuation::Infinity => true,
                    Valuation::Finite(v) => (&v - &vdet).tail() > *gamma,
                }
            })
        })
    }
}

impl fmt::Display for MatCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.idx.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "K({}; {})", self.rep, idx.join(", "))
    }
}

impl fmt::Debug for MatCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixFamily {
    params: FieldParams,
    m: usize,
    kind: GroupKind,
}

impl MatrixFamily {
    pub fn new(params: FieldParams, m: usize, kind: GroupKind) -> Result<Self, SetError> {
        if m == 0 || (kind == GroupKind::SL && m < 2) {
            return Err(SetError::Precondition(format!("no {kind} family of size {m}")));
        }
        Ok(MatrixFamily { params, m, kind })
    }

    pub fn gl(params: FieldParams, m: usize) -> Result<Self, SetError> {
        Self::new(params, m, GroupKind::GL)
    }

    pub fn sl(params: FieldParams, m: usize) -> Result<Self, SetError> {
        Self::new(params, m, GroupKind::SL)
    }

    /// The multiplicative group `F^× = GL_1(F)`.
    pub fn scalar(params: FieldParams) -> Self {
        MatrixFamily { params, m: 1, kind: GroupKind::GL }
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Dimension of the group: `m^2` or `m^2 - 1`.
    pub fn group_dimension(&self) -> u32 {
        let d = (self.m * self.m) as u32;
        match self.kind {
            GroupKind::GL => d,
            GroupKind::SL => d - 1,
        }
    }

    pub fn coset(&self, rep: Matrix, idx: impl Into<ExpVec>) -> Result<MatCoset, SetError> {
        let idx = idx.into();
        if idx.arity() != self.params.dim() {
            return Err(AlgebraError::ArityMismatch { left: self.params.dim(), right: idx.arity() }.into());
        }
        if idx <= ExpVec::zero(idx.arity()) {
            return Err(SetError::NonPositiveIndex(idx.to_vec()));
        }
        if rep.size() != self.m || rep.params() != self.params {
            return Err(AlgebraError::ShapeMismatch.into());
        }
        self.check_element(&rep)?;
        Ok(MatCoset::build(rep, idx))
    }

    /// Checks that `g` lies in the group.
    pub fn check_element(&self, g: &Matrix) -> Result<(), SetError> {
        let det = g.det();
        if det.is_zero() {
            return Err(AlgebraError::SingularMatrix.into());
        }
        if self.kind == GroupKind::SL && !det.is_one() {
            return Err(SetError::DeterminantNotOne);
        }
        Ok(())
    }

    fn direction(&self, idx: &ExpVec, k: i64) -> FieldElement {
        FieldElement::monomial(self.params, 1, ExpVec::with_head(idx.head() + k, &idx.tail()))
    }

    /// Representatives of `K_idx / K_{idx + e_1}`, all with determinant 1
    /// for the special linear family.
    fn child_factors(&self, idx: &ExpVec) -> Vec<Matrix> {
        let m = self.m;
        let p = self.params.p() as u64;
        let x = FieldElement::monomial(self.params, 1, idx.clone());
        let free = self.group_dimension();
        let total = p.pow(free);
        (0..total)
            .map(|code| {
                let mut digits = (0..free).scan(code, |c, _| {
                    let d = (*c % p) as i64;
                    *c /= p;
                    Some(d)
                });
                match self.kind {
                    GroupKind::GL => {
                        let a: Vec<i64> = digits.collect();
                        let mut out = Matrix::identity(self.params, m);
                        for r in 0..m {
                            for c in 0..m {
                                let e = x.scalar_mul(a[r * m + c]);
                                out.entries[r * m + c] = &out.entries[r * m + c] + &e;
                            }
                        }
                        out
                    }
                    GroupKind::SL => {
                        let mut out = Matrix::identity(self.params, m);
                        for r in 0..m {
                            for s in 0..m {
                                if r != s {
                                    let a = digits.next().unwrap();
                                    out = &out * &Matrix::elementary(m, r, s, &x.scalar_mul(a));
                                }
                            }
                        }
                        for r in 0..m - 1 {
                            let y = x.scalar_mul(digits.next().unwrap());
                            out = &out * &diagonal_direction(m, r, &y);
                        }
                        out
                    }
                }
            })
            .collect()
    }
}

/// Determinant-one matrix `≡ I + y (E_rr - E_{r+1,r+1})` modulo `y^2`.
pub(crate) fn diagonal_direction(m: usize, r: usize, y: &FieldElement) -> Matrix {
    let params = y.params();
    let s = r + 1;
    let one = FieldElement::one(params);
    let mut block = Matrix::identity(params, m);
    block.entries[r * m + r] = &one + y;
    block.entries[r * m + s] = y.clone();
    block.entries[s * m + r] = -y;
    block.entries[s * m + s] = &one - y;
    let fix = &Matrix::elementary(m, r, s, &-y) * &Matrix::elementary(m, s, r, y);
    &block * &fix
}

impl DistinguishedFamily for MatrixFamily {
    type Set = MatCoset;
    type Point = Matrix;

    fn elevation(&self) -> usize {
        self.params.elevation()
    }

    fn q(&self) -> u64 {
        self.params.p() as u64
    }

    fn step_exponent(&self) -> u32 {
        self.group_dimension()
    }

    fn compare(&self, a: &MatCoset, b: &MatCoset) -> Trichotomy {
        match a.idx.cmp(&b.idx) {
            Ordering::Equal if b.quotient_at_least(&a.rep, &b.idx) => Trichotomy::Equal,
            Ordering::Greater if b.quotient_at_least(&a.rep, &b.idx) => Trichotomy::FirstInsideSecond,
            Ordering::Less if a.quotient_at_least(&b.rep, &a.idx) => Trichotomy::SecondInsideFirst,
            _ => Trichotomy::Disjoint,
        }
    }

    fn index_vector(&self, d: &MatCoset) -> ExpVec {
        d.idx.clone()
    }

    fn base_measure(&self, d: &MatCoset) -> MeasureValue {
        match self.kind {
            GroupKind::GL => gl_base_measure(self.m, self.q(), &d.idx),
            GroupKind::SL => sl_base_measure(self.m, self.q(), &d.idx),
        }
    }

    fn subgroup(&self, idx: &ExpVec) -> Result<MatCoset, SetError> {
        self.coset(Matrix::identity(self.params, self.m), idx.clone())
    }

    fn parent(&self, d: &MatCoset) -> Option<MatCoset> {
        let idx = ExpVec::with_head(d.idx.head() - 1, &d.idx.tail());
        if idx <= ExpVec::zero(idx.arity()) {
            return None;
        }
        Some(MatCoset { rep: d.rep.clone(), idx, det: d.det.clone(), adj: d.adj.clone() })
    }

    fn split_once(&self, d: &MatCoset) -> Vec<MatCoset> {
        let idx = ExpVec::with_head(d.idx.head() + 1, &d.idx.tail());
        self.child_factors(&d.idx)
            .into_iter()
            .map(|f| MatCoset::build(&d.rep * &f, idx.clone()))
            .collect()
    }

    fn translate(&self, g: &Matrix, d: &MatCoset) -> MatCoset {
        MatCoset::build(g * &d.rep, d.idx.clone())
    }

    /// Defined when `g` normalizes every `K_γ`, i.e. `g ∈ GL_m(O_F) F^×`.
    fn translate_right(&self, d: &MatCoset, g: &Matrix) -> Result<MatCoset, SetError> {
        self.check_element(g)?;
        let w = g.min_valuation().finite()?.clone();
        let vdet = g.det().valuation().finite()?.clone();
        if vdet != w.scale(self.m as i64) {
            return Err(SetError::NotNormalizing);
        }
        Ok(MatCoset::build(&d.rep * g, d.idx.clone()))
    }

    fn identity(&self) -> Matrix {
        Matrix::identity(self.params, self.m)
    }

    fn canonical_cmp(&self, a: &MatCoset, b: &MatCoset) -> Ordering {
        a.idx.cmp(&b.idx).then_with(|| {
            a.rep
                .entries
                .iter()
                .zip(&b.rep.entries)
                .map(|(x, y)| x.terms().cmp(y.terms()))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    fn contains(&self, d: &MatCoset, x: &Matrix) -> bool {
        d.quotient_at_least(x, &d.idx) && (self.kind == GroupKind::GL || x.det().is_one())
    }

    fn representative(&self, d: &MatCoset) -> Matrix {
        d.rep.clone()
    }

    fn in_level_ball(&self, x: &Matrix, d: &MatCoset, gamma: &ExpVec) -> bool {
        if &d.idx.tail() == gamma {
            return self.contains(d, x);
        }
        d.quotient_tail_above(x, gamma)
    }

    fn separated_points(&self, d: &MatCoset, count: usize) -> Vec<Matrix> {
        let (r, s) = if self.m == 1 { (0, 0) } else { (0, 1) };
        let mut out = vec![d.rep.clone()];
        for k in 0..count.saturating_sub(1) {
            let e = Matrix::elementary(self.m, r, s, &self.direction(&d.idx, k as i64));
            out.push(&d.rep * &e);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Enumeration oracles

pub const ENUMERATION_GUARD: u128 = 1 << 20;

fn guarded(p: u64, digits: u32) -> Result<u64, SetError> {
    let candidates = (p as u128).checked_pow(digits).unwrap_or(u128::MAX);
    if candidates > ENUMERATION_GUARD {
        return Err(SetError::GuardExceeded { candidates, guard: ENUMERATION_GUARD });
    }
    Ok(candidates as u64)
}

fn digits_of(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Determinant over `F_p` by elimination.
fn det_mod_p(mut a: Vec<u64>, m: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for col in 0..m {
        let Some(pivot) = (col..m).find(|&r| a[r * m + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for c in 0..m {
                a.swap(pivot * m + c, col * m + c);
            }
            det = (p - det) % p;
        }
        let pv = a[col * m + col];
        det = det * pv % p;
        let inv = pow_mod(pv, p - 2, p);
        for r in col + 1..m {
            let factor = a[r * m + col] * inv % p;
            if factor == 0 {
                continue;
            }
            for c in col..m {
                a[r * m + c] = (a[r * m + c] + p * p - factor * a[col * m + c] % p) % p;
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `|GL_m(F_p)|` by testing every matrix.
pub fn gl_order_by_enumeration(m: usize, p: u64, exec: Execution) -> Result<u64, SetError> {
    let total = guarded(p, (m * m) as u32)?;
    Ok(exec::count_where(exec, 0..total, |code| det_mod_p(digits_of(code, p, m * m), m, p) != 0))
}

/// `|SL_m(F_p)|` by testing every matrix.
pub fn sl_order_by_enumeration(m: usize, p: u64, exec: Execution) -> Result<u64, SetError> {
    let total = guarded(p, (m * m) as u32)?;
    Ok(exec::count_where(exec, 0..total, |code| det_mod_p(digits_of(code, p, m * m), m, p) == 1))
}

/// Polynomials over `F_p` truncated mod `t^len`, lowest coefficient first.
fn trunc_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len();
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn trunc_det(a: &[Vec<u64>], m: usize, rows: &[usize], cols: &[usize], p: u64) -> Vec<u64> {
    let len = a[0].len();
    if rows.is_empty() {
        let mut one = vec![0; len];
        one[0] = 1 % p;
        return one;
    }
    let mut acc = vec![0u64; len];
    for (k, &c) in cols.iter().enumerate() {
        let e = &a[rows[0] * m + c];
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = trunc_mul(e, &trunc_det(a, m, &rows[1..], &rest, p), p);
        for (s, t) in acc.iter_mut().zip(term) {
            *s = if k % 2 == 0 { (*s + t) % p } else { (*s + p - t) % p };
        }
    }
    acc
}

/// `|K_{(i,γ)} : K_{(j,γ)}|` by counting matrices over `F_p[t_1]/(t_1^j)`
/// congruent to `I` mod `t_1^i` (with determinant 1 for the special linear
/// group). The count does not depend on `γ`.
pub fn index_enumeration_oracle(kind: GroupKind, m: usize, p: u64, i: u32, j: u32, exec: Execution) -> Result<u64, SetError> {
    if i == 0 || i > j {
        return Err(SetError::Precondition(format!("need 0 < i <= j, got i = {i}, j = {j}")));
    }
    let layers = (j - i) as usize;
    let len = j as usize;
    let total = guarded(p, (m * m * layers) as u32)?;
    let all: Vec<usize> = (0..m).collect();
    let pred = |code: u64| {
        let d = digits_of(code, p, m * m * layers);
        let mut a = vec![vec![0u64; len]; m * m];
        for r in 0..m {
            a[r * m + r][0] = 1;
        }
        for layer in 0..layers {
            for e in 0..m * m {
                a[e][i as usize + layer] = d[layer * m * m + e];
            }
        }
        let det = trunc_det(&a, m, &all, &all, p);
        match kind {
            GroupKind::GL => det[0] != 0,
            GroupKind::SL => det[0] == 1 && det[1..].iter().all(|&x| x == 0),
        }
    };
    Ok(exec::count_where(exec, 0..total, pred))
}

/// Outcome of comparing the three congruence indices of
/// `SL_m → GL_m → F^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeReport {
    pub gl: u64,
    pub scalar: u64,
    pub sl: u64,
}

impl SnakeReport {
    pub fn holds(&self) -> bool {
        self.gl == self.scalar * self.sl
    }
}

pub fn snake_index_check(i: u32, j: u32, m: usize, p: u64, exec: Execution) -> Result<SnakeReport, SetError> {
    Ok(SnakeReport {
        gl: index_enumeration_oracle(GroupKind::GL, m, p, i, j, exec)?,
        scalar: index_enumeration_oracle(GroupKind::GL, 1, p, i, j, exec)?,
        sl: index_enumeration_oracle(GroupKind::SL, m, p, i, j, exec)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_value::rational;

    fn params(p: u32) -> FieldParams {
        FieldParams::new(p, 2).unwrap()
    }

    fn fe(p: u32, terms: &[(i64, [i64; 2])]) -> FieldElement {
        FieldElement::from_terms(params(p), terms.iter().map(|(c, e)| (*c, ExpVec::from(*e)))).unwrap()
    }

    fn mat(p: u32, rows: [[&[(i64, [i64; 2])]; 2]; 2]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|t| fe(p, t)).collect()).collect()).unwrap()
    }

    const ONE: &[(i64, [i64; 2])] = &[(1, [0, 0])];
    const ZERO: &[(i64, [i64; 2])] = &[];
    const T1: &[(i64, [i64; 2])] = &[(1, [1, 0])];

    #[test]
    fn det_and_adjugate() {
        let g = mat(5, [[ONE, T1], [&[(2, [0, 1])], &[(3, [0, 0])]]]);
        let adj = g.adjugate();
        let prod = &g * &adj;
        assert_eq!(prod, Matrix::identity(params(5), 2).scaled(&g.det()));
        assert_eq!(g.det(), fe(5, &[(3, [0, 0]), (-2, [1, 1])]));
    }

    #[test]
    fn inverse_examples() {
        let id = Matrix::identity(params(3), 2);
        let h = mat_inverse_to_precision(&id, &ExpVec::from([4, 2])).unwrap();
        assert!(h[0][0].value().is_one() && h[1][1].value().is_one());
        assert!(h[0][1].value().is_zero() && h[1][0].value().is_zero());

        let g = mat(3, [[T1, ZERO], [ZERO, ONE]]);
        let h = mat_inverse_to_precision(&g, &ExpVec::from([2, 0])).unwrap();
        assert_eq!(h[0][0].value(), &fe(3, &[(1, [-1, 0])]));
        assert!(h[1][1].value().is_one());

        let g = mat(3, [[ONE, T1], [ZERO, ONE]]);
        let prec = ExpVec::from([3, 0]);
        let h = mat_inverse_to_precision(&g, &prec).unwrap();
        assert_eq!(h[0][1].value(), &fe(3, &[(-1, [1, 0])]));
        let hm = Matrix::from_rows(h.iter().map(|r| r.iter().map(|e| e.value().clone()).collect()).collect()).unwrap();
        let err = &(&g * &hm) - &Matrix::identity(params(3), 2);
        assert!(err.entries_at_least(&prec));
    }

    #[test]
    fn inverse_with_non_unit_determinant() {
        let g = mat(2, [[&[(1, [1, 0]), (1, [2, 0])], T1], [ONE, &[(1, [0, 1])]]]);
        let prec = ExpVec::from([2, 1]);
        let h = mat_inverse_to_precision(&g, &prec).unwrap_or_else(|e| panic!("{e}"));
        let hm = Matrix::from_rows(h.iter().map(|r| r.iter().map(|e| e.value().clone()).collect()).collect()).unwrap();
        let err = &(&g * &hm) - &Matrix::identity(params(2), 2);
        assert!(err.entries_at_least(&prec));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let g = mat(2, [[ONE, ONE], [ONE, ONE]]);
        assert_eq!(mat_inverse_to_precision(&g, &ExpVec::from([1, 0])), Err(AlgebraError::SingularMatrix));
    }

    #[test]
    fn compare_examples() {
        let fam = MatrixFamily::gl(params(3), 2).unwrap();
        let a = fam.coset(mat(3, [[&[(1, [0, 0]), (1, [1, 0])], ZERO], [ZERO, ONE]]), [2, 0]).unwrap();
        let k1 = fam.subgroup(&ExpVec::from([1, 0])).unwrap();
        assert_eq!(fam.compare(&a, &k1), Trichotomy::FirstInsideSecond);
        let b = fam.coset(mat(3, [[ONE, ONE], [ZERO, ONE]]), [1, 0]).unwrap();
        assert_eq!(fam.compare(&b, &k1), Trichotomy::Disjoint);
        assert_eq!(fam.compare(&b, &b), Trichotomy::Equal);
    }

    #[test]
    fn non_positive_index_is_rejected() {
        let fam = MatrixFamily::gl(params(2), 2).unwrap();
        assert!(matches!(fam.subgroup(&ExpVec::from([0, 0])), Err(SetError::NonPositiveIndex(_))));
        assert!(matches!(fam.subgroup(&ExpVec::from([5, -1])), Err(SetError::NonPositiveIndex(_))));
        assert!(fam.subgroup(&ExpVec::from([-3, 1])).is_ok());
    }

    #[test]
    fn constants() {
        let k = ExpVec::from([1, 0]);
        assert_eq!(gl_base_measure(2, 2, &k), MeasureValue::constant(rational(1, 6), 1));
        assert_eq!(sl_base_measure(2, 2, &k), MeasureValue::constant(rational(1, 6), 1));
        assert_eq!(sl_constant(2, 2), rational(8, 6));
        assert_eq!(scalar_base_measure(3, &k), MeasureValue::constant(rational(1, 2), 1));
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(sl_order(3, 2), BigUint::from(168u32));
        let deep = ExpVec::from([2, 3]);
        assert_eq!(
            sl_base_measure(2, 3, &deep),
            MeasureValue::monomial(sl_constant(2, 3) * rational_pow(3, -6), ExpVec::from([3]))
        );
    }

    #[test]
    fn enumerations() {
        let e = Execution::default();
        assert_eq!(gl_order_by_enumeration(2, 2, e).unwrap(), 6);
        assert_eq!(sl_order_by_enumeration(2, 3, e).unwrap(), 24);
        assert_eq!(index_enumeration_oracle(GroupKind::GL, 2, 2, 1, 2, e).unwrap(), 16);
        assert_eq!(index_enumeration_oracle(GroupKind::SL, 2, 2, 1, 2, e).unwrap(), 8);
        assert_eq!(index_enumeration_oracle(GroupKind::SL, 2, 2, 3, 3, e).unwrap(), 1);
        assert!(matches!(
            index_enumeration_oracle(GroupKind::GL, 3, 3, 1, 3, e),
            Err(SetError::GuardExceeded { .. })
        ));
        let r = snake_index_check(1, 2, 2, 3, e).unwrap();
        assert_eq!((r.gl, r.scalar, r.sl), (81, 3, 27));
        assert!(r.holds());
    }

    #[test]
    fn sl_children_have_determinant_one_and_tile() {
        let fam = MatrixFamily::sl(params(3), 2).unwrap();
        let k = fam.subgroup(&ExpVec::from([1, 1])).unwrap();
        let kids = fam.split_once(&k);
        assert_eq!(kids.len(), 27);
        for (i, a) in kids.iter().enumerate() {
            assert!(a.rep().det().is_one());
            assert_eq!(fam.compare(a, &k), Trichotomy::FirstInsideSecond);
            for b in &kids[i + 1..] {
                assert_eq!(fam.compare(a, b), Trichotomy::Disjoint);
            }
        }
    }

    #[test]
    fn right_translation_needs_a_normalizing_element() {
        let fam = MatrixFamily::gl(params(3), 2).unwrap();
        let k = fam.subgroup(&ExpVec::from([1, 0])).unwrap();
        let u = mat(3, [[ONE, ONE], [ZERO, &[(2, [0, 0])]]]);
        assert!(fam.translate_right(&k, &u).is_ok());
        let g = mat(3, [[T1, ZERO], [ZERO, ONE]]);
        assert_eq!(fam.translate_right(&k, &g), Err(SetError::NotNormalizing));
    }
}
