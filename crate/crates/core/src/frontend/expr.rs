//! Expression syntax tree, parser and evaluation into operators.

use num_bigint::BigInt;

use super::lexer::{Tok, Token};
use super::{Context, ParseError};
use crate::diffop::DiffOp;
use crate::field::{KElem, Rat, XRat};
use crate::oresys::OreSpec;
use crate::telescoper::OrePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn err(self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }
}

#[derive(Clone, Debug)]
pub enum Expr {
    Num(BigInt),
    Ident(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, i64, Pos),
}

pub struct TokenStream {
    toks: Vec<Token>,
    idx: usize,
}

impl TokenStream {
    pub fn new(toks: Vec<Token>) -> Self {
        TokenStream { toks, idx: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.idx].tok
    }

    pub fn pos(&self) -> Pos {
        let t = &self.toks[self.idx];
        Pos { line: t.line, col: t.col }
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].tok.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        let found = self.peek();
        let mut msg = format!("expected {wanted}, found {}", found.describe());
        if matches!(found, Tok::Ident(_) | Tok::Int(_) | Tok::LParen) && wanted != "an identifier" {
            msg.push_str(" (`*` is required between factors)");
        }
        self.pos().err(msg)
    }

    pub fn at_end(&self) -> bool {
        matches!(self.peek(), Tok::Newline | Tok::Eof)
    }
}

pub fn parse_sum(ts: &mut TokenStream) -> Result<Expr, ParseError> {
    let mut lhs = parse_product(ts)?;
    loop {
        if ts.eat(&Tok::Plus) {
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_product(ts)?));
        } else if ts.eat(&Tok::Minus) {
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_product(ts)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_product(ts: &mut TokenStream) -> Result<Expr, ParseError> {
    let mut lhs = parse_unary(ts)?;
    loop {
        if ts.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(parse_unary(ts)?));
        } else if *ts.peek() == Tok::Slash {
            let pos = ts.pos();
            ts.bump();
            lhs = Expr::Div(Box::new(lhs), Box::new(parse_unary(ts)?), pos);
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_unary(ts: &mut TokenStream) -> Result<Expr, ParseError> {
    if ts.eat(&Tok::Minus) {
        return Ok(Expr::Neg(Box::new(parse_unary(ts)?)));
    }
    parse_power(ts)
}

fn parse_power(ts: &mut TokenStream) -> Result<Expr, ParseError> {
    let base = parse_atom(ts)?;
    if *ts.peek() != Tok::Caret {
        return Ok(base);
    }
    let pos = ts.pos();
    ts.bump();
    let paren = ts.eat(&Tok::LParen);
    let neg = ts.eat(&Tok::Minus);
    let e = match ts.peek().clone() {
        Tok::Int(n) => {
            ts.bump();
            i64::try_from(n).map_err(|_| pos.err("exponent too large"))?
        }
        _ => return Err(ts.unexpected("an integer exponent")),
    };
    if paren {
        ts.expect(&Tok::RParen)?;
    }
    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, pos))
}

fn parse_atom(ts: &mut TokenStream) -> Result<Expr, ParseError> {
    let pos = ts.pos();
    match ts.peek().clone() {
        Tok::Int(n) => {
            ts.bump();
            Ok(Expr::Num(n))
        }
        Tok::Ident(s) => {
            ts.bump();
            Ok(Expr::Ident(s, pos))
        }
        Tok::LParen => {
            ts.bump();
            let e = parse_sum(ts)?;
            ts.expect(&Tok::RParen)?;
            Ok(e)
        }
        _ => Err(ts.unexpected("an expression")),
    }
}

/// Algebra an expression is evaluated in.
pub trait Algebra {
    type V: Clone;
    fn num(&self, n: &BigInt) -> Self::V;
    fn ident(&self, name: &str, pos: Pos) -> Result<Self::V, ParseError>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    /// The inverse of a scalar value, if it is one and nonzero.
    fn scalar_inverse(&self, a: &Self::V, pos: Pos) -> Result<Self::V, ParseError>;
    fn scale_left(&self, a: &Self::V, s: &Self::V) -> Self::V;
    fn one(&self) -> Self::V;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::V, ParseError> {
    Ok(match e {
        Expr::Num(n) => alg.num(n),
        Expr::Ident(s, pos) => alg.ident(s, *pos)?,
        Expr::Neg(a) => alg.neg(&eval(alg, a)?),
        Expr::Add(a, b) => alg.add(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Sub(a, b) => alg.add(&eval(alg, a)?, &alg.neg(&eval(alg, b)?)),
        Expr::Mul(a, b) => alg.mul(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Div(a, b, pos) => {
            let inv = alg.scalar_inverse(&eval(alg, b)?, *pos)?;
            alg.scale_left(&eval(alg, a)?, &inv)
        }
        Expr::Pow(a, k, pos) => {
            let base = eval(alg, a)?;
            let base = if *k < 0 { alg.scalar_inverse(&base, *pos)? } else { base };
            let mut acc = alg.one();
            for _ in 0..k.unsigned_abs() {
                acc = alg.mul(&acc, &base);
            }
            acc
        }
    })
}

/// Left K(x)-linear combinations of powers of D<var>.
pub struct OpAlgebra<'a> {
    pub ctx: &'a Context,
}

impl Algebra for OpAlgebra<'_> {
    type V = DiffOp;

    fn num(&self, n: &BigInt) -> DiffOp {
        let e = self.ctx.nvars();
        DiffOp::mult(XRat::from_kelem(KElem::from_rat(e, Rat::from_integer(n.clone()))))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<DiffOp, ParseError> {
        let e = self.ctx.nvars();
        if name == self.ctx.var {
            return Ok(DiffOp::mult(XRat::x(e)));
        }
        if name == self.ctx.dvar() {
            return Ok(DiffOp::dx(e));
        }
        if let Some(i) = self.ctx.param_index(name) {
            return Ok(DiffOp::mult(XRat::from_kelem(KElem::var(e, i))));
        }
        if self.ctx.ore_index(name).is_some() {
            return Err(pos.err(format!("Ore operator `{name}` cannot appear in this expression")));
        }
        Err(pos.err(format!("undeclared identifier `{name}`")))
    }

    fn add(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a.add(b)
    }

    fn neg(&self, a: &DiffOp) -> DiffOp {
        a.neg()
    }

    fn mul(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a.mul(b)
    }

    fn scalar_inverse(&self, a: &DiffOp, pos: Pos) -> Result<DiffOp, ParseError> {
        if a.order() > 0 {
            return Err(pos.err(format!("division by an expression involving {}", self.ctx.dvar())));
        }
        let c = a.coeff(0);
        if c.is_zero() {
            return Err(pos.err("division by zero"));
        }
        Ok(DiffOp::mult(c.inv()))
    }

    fn scale_left(&self, a: &DiffOp, s: &DiffOp) -> DiffOp {
        a.scale_left(&s.coeff(0))
    }

    fn one(&self) -> DiffOp {
        DiffOp::one(self.ctx.nvars())
    }
}

/// Elements of K⟨∂₁,…,∂_e⟩.
pub struct OreAlgebra<'a> {
    pub ctx: &'a Context,
    pub specs: &'a [OreSpec],
}

impl Algebra for OreAlgebra<'_> {
    type V = OrePoly;

    fn num(&self, n: &BigInt) -> OrePoly {
        OrePoly::constant(KElem::from_rat(self.ctx.nvars(), Rat::from_integer(n.clone())), self.specs.len())
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<OrePoly, ParseError> {
        let (n, e) = (self.ctx.nvars(), self.specs.len());
        if let Some(i) = self.ctx.ore_index(name) {
            return Ok(OrePoly::generator(n, e, i));
        }
        if let Some(i) = self.ctx.param_index(name) {
            return Ok(OrePoly::constant(KElem::var(n, i), e));
        }
        if name == self.ctx.var || name == self.ctx.dvar() {
            return Err(pos.err(format!("`{name}` cannot appear in a telescoper")));
        }
        Err(pos.err(format!("undeclared identifier `{name}`")))
    }

    fn add(&self, a: &OrePoly, b: &OrePoly) -> OrePoly {
        a.add(b)
    }

    fn neg(&self, a: &OrePoly) -> OrePoly {
        a.neg()
    }

    fn mul(&self, a: &OrePoly, b: &OrePoly) -> OrePoly {
        a.mul(b, self.specs)
    }

    fn scalar_inverse(&self, a: &OrePoly, pos: Pos) -> Result<OrePoly, ParseError> {
        match a.as_constant() {
            None => Err(pos.err("division by an expression involving an Ore operator")),
            Some(c) if c.is_zero() => Err(pos.err("division by zero")),
            Some(c) => Ok(OrePoly::constant(c.inv(), self.specs.len())),
        }
    }

    fn scale_left(&self, a: &OrePoly, s: &OrePoly) -> OrePoly {
        a.scale_left(&s.as_constant().unwrap())
    }

    fn one(&self) -> OrePoly {
        OrePoly::constant(KElem::one(self.ctx.nvars()), self.specs.len())
    }
}
