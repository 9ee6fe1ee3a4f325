//! Random distinguished sets, points and group elements for property tests
//! and benchmarks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::additive::{AdditiveDistSet, AdditiveFamily};
use crate::expvec::ExpVec;
use crate::family::DistinguishedFamily;
use crate::field::{FieldElement, FieldParams};
use crate::forest::{Component, Presentation};
use crate::matrix::{diagonal_direction, GroupKind, MatCoset, Matrix, MatrixFamily};

/// Ranges for random index vectors and shifts.
#[derive(Clone, Debug)]
pub struct Shape {
    pub depth: RangeInclusive<i64>,
    /// Range of every level coordinate.
    pub level: RangeInclusive<i64>,
    /// Exponent coordinates of random field elements lie in `-spread..=spread`.
    pub spread: i64,
    pub terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { depth: 0..=3, level: 0..=2, spread: 2, terms: 2 }
    }
}

pub trait Sampler: DistinguishedFamily {
    fn dim(&self) -> usize;

    /// The distinguished set with index `idx` through `x`.
    fn set_at(&self, x: &Self::Point, idx: &ExpVec) -> Self::Set;

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> Self::Point;

    /// Whether `idx` indexes a member of the level structure.
    fn admissible(&self, _idx: &ExpVec) -> bool {
        true
    }

    fn random_point_in<R: Rng + ?Sized>(&self, rng: &mut R, d: &Self::Set, shape: &Shape) -> Self::Point;

    /// An index vector admissible for the family.
    fn random_index<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> ExpVec {
        let tail: Vec<i64> = (1..self.dim()).map(|_| rng.gen_range(shape.level.clone())).collect();
        ExpVec::with_head(rng.gen_range(shape.depth.clone()), &ExpVec::new(tail))
    }

    fn random_set<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> Self::Set {
        let g = self.random_element(rng, shape);
        let idx = self.random_index(rng, shape);
        self.set_at(&g, &idx)
    }

    /// A random distinguished subset of `d`, of the same level when
    /// `same_level` holds and of a strictly higher level otherwise.
    fn random_subset<R: Rng + ?Sized>(&self, rng: &mut R, d: &Self::Set, same_level: bool, shape: &Shape) -> Self::Set {
        let x = self.random_point_in(rng, d, shape);
        let idx = self.index_vector(d);
        let new_idx = if same_level || idx.arity() == 1 {
            ExpVec::with_head(idx.head() + rng.gen_range(0..=2), &idx.tail())
        } else {
            let mut tail = idx.tail().to_vec();
            let k = rng.gen_range(0..tail.len());
            tail[k] += 1;
            for t in tail.iter_mut().take(k) {
                *t = rng.gen_range(shape.level.clone());
            }
            ExpVec::with_head(rng.gen_range(shape.depth.clone()), &ExpVec::new(tail))
        };
        self.set_at(&x, &new_idx)
    }

    /// A chain of `len` strictly nested sets of one level, outermost first.
    fn random_chain<R: Rng + ?Sized>(&self, rng: &mut R, len: usize, shape: &Shape) -> Vec<Self::Set> {
        let mut out = vec![self.random_set(rng, shape)];
        while out.len() < len {
            let last = out.last().unwrap();
            let x = self.random_point_in(rng, last, shape);
            let idx = self.index_vector(last);
            let deeper = ExpVec::with_head(idx.head() + rng.gen_range(1..=2), &idx.tail());
            out.push(self.set_at(&x, &deeper));
        }
        out
    }

    /// A tiling of `d` by same-level sets, obtained by splitting random
    /// pieces up to `rounds` times.
    fn random_tiling<R: Rng + ?Sized>(&self, rng: &mut R, d: &Self::Set, rounds: usize) -> Vec<Self::Set> {
        let mut tiles = vec![d.clone()];
        for _ in 0..rounds {
            let k = rng.gen_range(0..tiles.len());
            let piece = tiles.swap_remove(k);
            tiles.extend(self.split_once(&piece));
        }
        tiles
    }

    /// A presentation with `components` dd-components, each with up to two
    /// big shells and up to two small shells. With `level = Some(γ)` every
    /// shell has level `γ`.
    fn random_presentation<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        components: usize,
        level: Option<&ExpVec>,
        shape: &Shape,
    ) -> Presentation<Self::Set> {
        let mut comps = Vec::new();
        for _ in 0..components {
            let nbig = rng.gen_range(1..=2);
            let big: Vec<Self::Set> = (0..nbig)
                .map(|_| match level {
                    Some(gamma) => {
                        let g = self.random_element(rng, shape);
                        let mut idx = ExpVec::with_head(rng.gen_range(shape.depth.clone()), gamma);
                        if !self.admissible(&idx) {
                            idx = ExpVec::with_head(1, gamma);
                        }
                        self.set_at(&g, &idx)
                    }
                    None => self.random_set(rng, shape),
                })
                .collect();
            let nsmall = rng.gen_range(0..=2);
            let small = (0..nsmall)
                .map(|_| {
                    let host = big.choose(rng).unwrap();
                    let same = level.is_some() || rng.gen_bool(0.5);
                    self.random_subset(rng, host, same, shape)
                })
                .collect();
            comps.push(Component { big, small });
        }
        Presentation::new(comps)
    }
}

/// A random element of `F` with exponents in the shape's box.
pub fn random_field_element<R: Rng + ?Sized>(rng: &mut R, params: FieldParams, shape: &Shape) -> FieldElement {
    let n = params.dim();
    let terms: Vec<(i64, ExpVec)> = (0..shape.terms)
        .map(|_| {
            let e = ExpVec::new((0..n).map(|_| rng.gen_range(-shape.spread..=shape.spread)));
            (rng.gen_range(0..params.p() as i64), e)
        })
        .collect();
    FieldElement::from_terms(params, terms).unwrap()
}

/// A random element of `O_F`.
pub fn random_integer<R: Rng + ?Sized>(rng: &mut R, params: FieldParams, shape: &Shape) -> FieldElement {
    let x = random_field_element(rng, params, shape);
    x.part_at_least(&ExpVec::zero(params.dim()))
}

impl Sampler for AdditiveFamily {
    fn dim(&self) -> usize {
        self.params().dim()
    }

    fn set_at(&self, x: &FieldElement, idx: &ExpVec) -> AdditiveDistSet {
        AdditiveDistSet::new(x.clone(), idx.clone()).unwrap()
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> FieldElement {
        random_field_element(rng, self.params(), shape)
    }

    fn random_point_in<R: Rng + ?Sized>(&self, rng: &mut R, d: &AdditiveDistSet, shape: &Shape) -> FieldElement {
        let u = random_integer(rng, self.params(), shape);
        d.shift() + &u.shift(d.idx())
    }
}

impl MatrixFamily {
    /// A random element of `K_idx` (of its determinant-one part for the
    /// special linear family).
    pub fn random_congruent<R: Rng + ?Sized>(&self, rng: &mut R, idx: &ExpVec, shape: &Shape) -> Matrix {
        let params = self.params();
        let m = self.size();
        let small = |rng: &mut R| random_integer(rng, params, shape).shift(idx);
        match self.kind() {
            GroupKind::GL => {
                let a: Vec<FieldElement> = (0..m * m).map(|_| small(rng)).collect();
                let one = FieldElement::one(params);
                Matrix::from_fn(m, |r, c| if r == c { &one + &a[r * m + c] } else { a[r * m + c].clone() })
            }
            GroupKind::SL => {
                let r = rng.gen_range(0..m);
                let s = (r + rng.gen_range(1..m)) % m;
                let out = Matrix::elementary(m, r, s, &small(rng));
                let r = rng.gen_range(0..m - 1);
                &out * &diagonal_direction(m, r, &small(rng))
            }
        }
    }

    /// A random element of `GL_m(O_F) F^×` (of `SL_m(O_F)` for the special
    /// linear family): these are the elements for which right translation
    /// is defined.
    pub fn random_normalizer<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> Matrix {
        let params = self.params();
        let m = self.size();
        let mut out = Matrix::identity(params, m);
        if m > 1 {
            for _ in 0..3 {
                let r = rng.gen_range(0..m);
                let s = (r + rng.gen_range(1..m)) % m;
                let a = random_integer(rng, params, shape);
                out = &out * &Matrix::elementary(m, r, s, &a);
            }
        }
        if self.kind() == GroupKind::GL {
            let p = params.p() as i64;
            let c = rng.gen_range(1..p);
            let unit = FieldElement::constant(params, c);
            out = &out * &Matrix::elementary(m, 0, 0, &(&unit - &FieldElement::one(params)));
            let e = ExpVec::new((0..params.dim()).map(|_| rng.gen_range(-shape.spread..=shape.spread)));
            out = out.scaled(&FieldElement::monomial(params, 1, e));
        }
        out
    }
}

impl Sampler for MatrixFamily {
    fn dim(&self) -> usize {
        self.params().dim()
    }

    fn admissible(&self, idx: &ExpVec) -> bool {
        idx > &ExpVec::zero(idx.arity())
    }

    fn set_at(&self, x: &Matrix, idx: &ExpVec) -> MatCoset {
        self.coset(x.clone(), idx.clone()).unwrap()
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> Matrix {
        let params = self.params();
        let m = self.size();
        let mut out = Matrix::identity(params, m);
        if m > 1 {
            for _ in 0..3 {
                let r = rng.gen_range(0..m);
                let s = (r + rng.gen_range(1..m)) % m;
                let a = random_field_element(rng, params, shape);
                out = &out * &Matrix::elementary(m, r, s, &a);
            }
        }
        if self.kind() == GroupKind::GL {
            let e = ExpVec::new((0..params.dim()).map(|_| rng.gen_range(-shape.spread..=shape.spread)));
            let c = rng.gen_range(1..params.p() as i64);
            let diag = FieldElement::monomial(params, c, e);
            let k = rng.gen_range(0..m);
            out = &out * &Matrix::elementary(m, k, k, &(&diag - &FieldElement::one(params)));
        }
        out
    }

    fn random_point_in<R: Rng + ?Sized>(&self, rng: &mut R, d: &MatCoset, shape: &Shape) -> Matrix {
        d.rep() * &self.random_congruent(rng, d.idx(), shape)
    }

    /// Matrix indices must stay positive, so depths are clamped to 1 at
    /// level zero.
    fn random_index<R: Rng + ?Sized>(&self, rng: &mut R, shape: &Shape) -> ExpVec {
        let lo = (*shape.level.start()).max(0);
        let hi = (*shape.level.end()).max(lo);
        let tail: Vec<i64> = (1..self.dim()).map(|_| rng.gen_range(lo..=hi)).collect();
        let tail = ExpVec::new(tail);
        let mut head = rng.gen_range(shape.depth.clone());
        if tail.is_zero() {
            head = head.max(1);
        }
        ExpVec::with_head(head, &tail)
    }
}
