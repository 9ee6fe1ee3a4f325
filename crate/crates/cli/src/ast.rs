//! Expression trees and their canonical printing.

use std::fmt;

use levmeas::expvec::ExpVec;
use levmeas::field::FieldElement;
use levmeas::matrix::Matrix;

/// A group element written in braces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Scalar(FieldElement),
    Matrix(Matrix),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Scalar(x) => write!(f, "{{{x}}}"),
            Element::Matrix(g) => write!(f, "{{{g}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Empty,
    /// `D(shift; i1, ..., in)`
    Dist { shift: FieldElement, idx: ExpVec },
    /// `K(rep; i1, ..., in)`
    Coset { rep: Matrix, idx: ExpVec },
    Union(Box<Expr>, Box<Expr>),
    Intersection(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    /// `{g} + E` or `{g} * E`
    Left { g: Element, body: Box<Expr> },
    /// `E * {g}`
    Right { body: Box<Expr>, g: Element },
}

impl Expr {
    pub fn union(a: Expr, b: Expr) -> Expr {
        Expr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: Expr, b: Expr) -> Expr {
        Expr::Intersection(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Expr, b: Expr) -> Expr {
        Expr::Difference(Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(..) => 1,
            Expr::Difference(..) => 2,
            Expr::Intersection(..) => 3,
            Expr::Left { .. } => 4,
            Expr::Right { .. } => 5,
            _ => 6,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Expr::Empty => write!(f, "empty")?,
            Expr::Dist { shift, idx } => write!(f, "D({shift}; {})", list(idx))?,
            Expr::Coset { rep, idx } => write!(f, "K({rep}; {})", list(idx))?,
            Expr::Union(a, b) => binary(f, a, " | ", b, prec)?,
            Expr::Difference(a, b) => binary(f, a, " \\ ", b, prec)?,
            Expr::Intersection(a, b) => binary(f, a, " & ", b, prec)?,
            Expr::Left { g, body } => {
                let op = match g {
                    Element::Scalar(_) => "+",
                    Element::Matrix(_) => "*",
                };
                write!(f, "{g} {op} ")?;
                body.write(f, 4)?;
            }
            Expr::Right { body, g } => {
                body.write(f, 5)?;
                write!(f, " * {g}")?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, prec: u8) -> fmt::Result {
    a.write(f, prec)?;
    f.write_str(op)?;
    b.write(f, prec + 1)
}

fn list(idx: &ExpVec) -> String {
    idx.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}
