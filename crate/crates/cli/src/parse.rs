//! Recursive-descent parser for ddd-set expressions. The grammar is
//! documented in `docs/grammar.ebnf`.

use std::fmt;

use levmeas::error::SetError;
use levmeas::expvec::ExpVec;
use levmeas::field::{FieldElement, FieldParams};
use levmeas::matrix::{Matrix, MatrixFamily};

use crate::ast::{Element, Expr};
use crate::config::FamilySpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            let value = s.parse().map_err(|_| ParseError {
                line: l,
                column: col,
                message: format!("integer `{s}` is too large"),
            })?;
            Tok::Int(value)
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Ident(s)
        } else if "()[]{};,+-*^|&\\".contains(c) {
            chars.next();
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line: l, column: col, message: format!("unexpected character `{c}`") });
        };
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    params: FieldParams,
    family: &'a FamilySpec,
}

pub fn parse(input: &str, params: FieldParams, family: &FamilySpec) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(input)?, pos: 0, params, family };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.error(format!("expected an operator, found {}", p.peek())));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, column: t.column, message }
    }

    fn error_at(&self, pos: usize, message: String) -> ParseError {
        let t = &self.tokens[pos];
        ParseError { line: t.line, column: t.column, message }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.difference()?;
        while self.eat('|') {
            e = Expr::union(e, self.difference()?);
        }
        Ok(e)
    }

    fn difference(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.intersection()?;
        while self.eat('\\') {
            e = Expr::difference(e, self.intersection()?);
        }
        Ok(e)
    }

    fn intersection(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        while self.eat('&') {
            e = Expr::intersection(e, self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == &Tok::Sym('{') {
            let at = self.pos;
            let g = self.element()?;
            let op = match self.next() {
                Tok::Sym(c @ ('+' | '*')) => c,
                t => return Err(self.error_at(self.pos.saturating_sub(1), format!("expected `+` or `*`, found {t}"))),
            };
            let expected = if matches!(g, Element::Scalar(_)) { '+' } else { '*' };
            if op != expected {
                return Err(self.error_at(at, format!("translation by this element is written with `{expected}`")));
            }
            let body = self.unary()?;
            return Ok(Expr::Left { g, body: Box::new(body) });
        }
        let mut e = self.primary()?;
        while self.peek() == &Tok::Sym('*') {
            if !self.family.is_matrix() {
                return Err(self.error("the additive family translates on the left only, as `{x} + E`".into()));
            }
            self.pos += 1;
            if self.peek() != &Tok::Sym('{') {
                return Err(self.error(format!("expected `{{` after `*`, found {}", self.peek())));
            }
            let g = self.element()?;
            e = Expr::Right { body: Box::new(e), g };
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.pos;
        match self.next() {
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(s) if s == "empty" => Ok(Expr::Empty),
            Tok::Ident(s) if s == "D" => {
                if self.family.is_matrix() {
                    return Err(self.error_at(at, "`D(...)` atoms belong to the additive family".into()));
                }
                self.expect('(')?;
                let shift = self.poly()?;
                self.expect(';')?;
                let idx = self.index_list()?;
                self.expect(')')?;
                Ok(Expr::Dist { shift, idx })
            }
            Tok::Ident(s) if s == "K" => {
                let Some(fam) = self.family.matrix_family(self.params) else {
                    return Err(self.error_at(at, "`K(...)` atoms belong to the matrix families".into()));
                };
                self.expect('(')?;
                let rep_at = self.pos;
                let rep = self.matrix()?;
                self.expect(';')?;
                let idx_at = self.pos;
                let idx = self.index_list()?;
                self.expect(')')?;
                if idx <= ExpVec::zero(idx.arity()) {
                    return Err(self.error_at(idx_at, format!("congruence index {idx} must be positive")));
                }
                self.check_group_element(&fam, &rep, rep_at)?;
                Ok(Expr::Coset { rep, idx })
            }
            t => Err(self.error_at(at, format!("expected a set, found {t}"))),
        }
    }

    fn check_group_element(&self, fam: &MatrixFamily, g: &Matrix, at: usize) -> Result<(), ParseError> {
        if g.size() != fam.size() {
            return Err(self.error_at(at, format!("expected a {0}x{0} matrix", fam.size())));
        }
        fam.check_element(g).map_err(|e| {
            let message = match e {
                SetError::DeterminantNotOne => "determinant is not 1".to_string(),
                SetError::Algebra(levmeas::AlgebraError::SingularMatrix) => "determinant is 0".to_string(),
                other => other.to_string(),
            };
            self.error_at(at, message)
        })
    }

    /// `{ poly }` or `{ matrix }`, matching the family.
    fn element(&mut self) -> Result<Element, ParseError> {
        self.expect('{')?;
        let at = self.pos;
        let g = match self.family.matrix_family(self.params) {
            Some(fam) => {
                let g = self.matrix()?;
                self.check_group_element(&fam, &g, at)?;
                Element::Matrix(g)
            }
            None => Element::Scalar(self.poly()?),
        };
        self.expect('}')?;
        Ok(g)
    }

    fn index_list(&mut self) -> Result<ExpVec, ParseError> {
        let at = self.pos;
        let mut v = vec![self.int()?];
        while self.eat(',') {
            v.push(self.int()?);
        }
        let n = self.params.dim();
        if v.len() != n {
            return Err(self.error_at(at, format!("index vector has {} entries, expected {n}", v.len())));
        }
        Ok(ExpVec::from(v))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        match self.next() {
            Tok::Int(i) => Ok(if neg { -i } else { i }),
            t => Err(self.error_at(self.pos.saturating_sub(1), format!("expected an integer, found {t}"))),
        }
    }

    fn matrix(&mut self) -> Result<Matrix, ParseError> {
        let at = self.pos;
        self.expect('[')?;
        let mut rows = vec![self.row()?];
        while self.eat(',') {
            rows.push(self.row()?);
        }
        self.expect(']')?;
        Matrix::from_rows(rows).map_err(|_| self.error_at(at, "matrix must be square".into()))
    }

    fn row(&mut self) -> Result<Vec<FieldElement>, ParseError> {
        self.expect('[')?;
        let mut row = vec![self.poly()?];
        while self.eat(',') {
            row.push(self.poly()?);
        }
        self.expect(']')?;
        Ok(row)
    }

    fn poly(&mut self) -> Result<FieldElement, ParseError> {
        let mut acc = FieldElement::zero(self.params);
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let term = self.term()?;
            acc = &acc + &term.scalar_mul(sign);
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    /// `c`, `c*mono`, or `mono`.
    fn term(&mut self) -> Result<FieldElement, ParseError> {
        let n = self.params.dim();
        let mut coeff = 1i64;
        let mut exp = vec![0i64; n];
        let mut need_var = true;
        if let Tok::Int(c) = *self.peek() {
            self.pos += 1;
            coeff = c.rem_euclid(self.params.p() as i64);
            if !self.eat('*') {
                return Ok(FieldElement::constant(self.params, coeff));
            }
        }
        while need_var {
            let at = self.pos;
            let name = match self.next() {
                Tok::Ident(s) => s,
                t => return Err(self.error_at(at, format!("expected a coefficient or a parameter t1..t{n}, found {t}"))),
            };
            let k = name
                .strip_prefix('t')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| (1..=n).contains(&k))
                .ok_or_else(|| self.error_at(at, format!("unknown parameter `{name}`; expected t1..t{n}")))?;
            let power = if self.eat('^') { self.int()? } else { 1 };
            exp[k - 1] += power;
            need_var = self.eat('*');
        }
        Ok(FieldElement::monomial(self.params, coeff, ExpVec::from(exp)))
    }
}
