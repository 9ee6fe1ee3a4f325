//! Evaluation of expressions into canonical forests.

use levmeas::additive::{AdditiveDistSet, AdditiveFamily};
use levmeas::family::DistinguishedFamily;
use levmeas::forest::{DddForest, Node};
use levmeas::matrix::{MatCoset, MatrixFamily};

use crate::ast::{Element, Expr};
use crate::CliError;

/// A family the expression language can talk about.
pub trait ExprFamily: DistinguishedFamily {
    fn atom(&self, e: &Expr) -> Result<Self::Set, CliError>;

    fn element(&self, g: &Element) -> Result<Self::Point, CliError>;

    /// The atom naming `d`.
    fn to_atom(&self, d: &Self::Set) -> Expr;

    fn show_point(&self, x: &Self::Point) -> String;
}

impl ExprFamily for AdditiveFamily {
    fn atom(&self, e: &Expr) -> Result<AdditiveDistSet, CliError> {
        match e {
            Expr::Dist { shift, idx } => Ok(self.set(shift.clone(), idx.clone())?),
            _ => Err(CliError::FamilyMismatch("matrix atoms need a matrix family".into())),
        }
    }

    fn element(&self, g: &Element) -> Result<levmeas::FieldElement, CliError> {
        match g {
            Element::Scalar(x) => Ok(x.clone()),
            Element::Matrix(_) => Err(CliError::FamilyMismatch("the additive family translates by field elements".into())),
        }
    }

    fn to_atom(&self, d: &AdditiveDistSet) -> Expr {
        Expr::Dist { shift: d.shift().clone(), idx: d.idx().clone() }
    }

    fn show_point(&self, x: &levmeas::FieldElement) -> String {
        x.to_string()
    }
}

impl ExprFamily for MatrixFamily {
    fn atom(&self, e: &Expr) -> Result<MatCoset, CliError> {
        match e {
            Expr::Coset { rep, idx } => Ok(self.coset(rep.clone(), idx.clone())?),
            _ => Err(CliError::FamilyMismatch("additive atoms need the additive family".into())),
        }
    }

    fn element(&self, g: &Element) -> Result<levmeas::Matrix, CliError> {
        match g {
            Element::Matrix(m) => {
                self.check_element(m)?;
                Ok(m.clone())
            }
            Element::Scalar(_) => Err(CliError::FamilyMismatch("matrix families translate by matrices".into())),
        }
    }

    fn to_atom(&self, d: &MatCoset) -> Expr {
        Expr::Coset { rep: d.rep().clone(), idx: d.idx().clone() }
    }

    fn show_point(&self, x: &levmeas::Matrix) -> String {
        x.to_string()
    }
}

pub fn evaluate<F: ExprFamily>(fam: &F, e: &Expr) -> Result<DddForest<F::Set>, CliError> {
    Ok(match e {
        Expr::Empty => DddForest::empty(),
        Expr::Dist { .. } | Expr::Coset { .. } => DddForest::single(fam, fam.atom(e)?),
        Expr::Union(a, b) => evaluate(fam, a)?.union(fam, &evaluate(fam, b)?),
        Expr::Intersection(a, b) => evaluate(fam, a)?.intersect(fam, &evaluate(fam, b)?),
        Expr::Difference(a, b) => evaluate(fam, a)?.difference(fam, &evaluate(fam, b)?),
        Expr::Left { g, body } => evaluate(fam, body)?.translate(fam, &fam.element(g)?),
        Expr::Right { body, g } => evaluate(fam, body)?.translate_right(fam, &fam.element(g)?)?,
    })
}

/// The single distinguished set a forest consists of, if any.
pub fn as_distinguished<S: Clone>(forest: &DddForest<S>) -> Option<S> {
    match forest.roots() {
        [root] if root.included && root.children.is_empty() => Some(root.cell.clone()),
        _ => None,
    }
}

/// An expression for the set a canonical forest describes: the union of
/// its included regions, each written as a cell minus its children.
pub fn forest_expr<F: ExprFamily>(fam: &F, forest: &DddForest<F::Set>) -> Expr {
    let mut regions = Vec::new();
    collect(fam, forest.roots(), &mut regions);
    regions.into_iter().reduce(Expr::union).unwrap_or(Expr::Empty)
}

fn collect<F: ExprFamily>(fam: &F, nodes: &[Node<F::Set>], out: &mut Vec<Expr>) {
    for node in nodes {
        if node.included {
            let cell = fam.to_atom(&node.cell);
            let holes = node.children.iter().map(|c| fam.to_atom(&c.cell)).reduce(Expr::union);
            out.push(match holes {
                Some(h) => Expr::difference(cell, h),
                None => cell,
            });
        }
        collect(fam, &node.children, out);
    }
}
