//! Problem files, canonical printing and the command line.

pub mod cli;
mod expr;
mod lexer;
mod printer;

use std::collections::HashMap;
use std::fmt;

use crate::diffop::DiffOp;
use crate::error::Error;
use crate::field::XRat;
use crate::oresys::{cyclic_vector, from_scalar, CyclicData, MatrixSystem, OreKind, OreSpec, ScalarSystem};
use crate::telescoper::{TermOrder, Telescoper};

use expr::{eval, parse_sum, Expr, OpAlgebra, OreAlgebra, Pos, TokenStream};
use lexer::{lex, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Names in scope. Parameters are sorted, so t₁ is the alphabetically first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub params: Vec<String>,
    pub var: String,
    pub ores: Vec<String>,
}

impl Context {
    pub fn new(params: &[&str], var: &str, ores: &[&str]) -> Self {
        let mut params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        params.sort();
        Context { params, var: var.into(), ores: ores.iter().map(|s| s.to_string()).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.params.len()
    }

    /// Name of the derivation in the main variable.
    pub fn dvar(&self) -> String {
        format!("D{}", self.var)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn ore_index(&self, name: &str) -> Option<usize> {
        self.ores.iter().position(|p| p == name)
    }

    fn parse_expr(text: &str) -> Result<Expr, ParseError> {
        let mut ts = TokenStream::new(lex(text)?);
        while ts.eat(&Tok::Newline) {}
        let e = parse_sum(&mut ts)?;
        while ts.eat(&Tok::Newline) {}
        if *ts.peek() != Tok::Eof {
            return Err(ts.unexpected("end of input"));
        }
        Ok(e)
    }

    pub fn parse_op(&self, text: &str) -> Result<DiffOp, ParseError> {
        eval(&OpAlgebra { ctx: self }, &Self::parse_expr(text)?)
    }

    pub fn parse_xrat(&self, text: &str) -> Result<XRat, ParseError> {
        let op = self.parse_op(text)?;
        if op.order() > 0 {
            return Err(ParseError::new(1, 1, format!("expected a rational function, found an operator in {}", self.dvar())));
        }
        Ok(op.coeff(0))
    }

    pub fn parse_telescoper(&self, text: &str, specs: &[OreSpec], order: TermOrder) -> Result<Telescoper, ParseError> {
        let p = eval(&OreAlgebra { ctx: self, specs }, &Self::parse_expr(text)?)?;
        Ok(Telescoper::from_ore(&p, order))
    }
}

#[derive(Clone, Debug)]
pub struct ReduceRequest {
    pub r: XRat,
    pub m: DiffOp,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub ctx: Context,
    pub specs: Vec<OreSpec>,
    pub l: Option<DiffOp>,
    /// Indexed like `specs`.
    pub rels: Vec<Option<DiffOp>>,
    pub matrix_dx: Option<Vec<Vec<XRat>>>,
    pub matrix_ops: Vec<Option<Vec<Vec<XRat>>>>,
    pub vector_f: Option<Vec<XRat>>,
    pub reduces: Vec<ReduceRequest>,
}

impl Problem {
    pub fn has_system(&self) -> bool {
        self.l.is_some() || self.matrix_dx.is_some()
    }

    /// The operator the reductions of the system are taken modulo.
    pub fn system_operator(&self) -> Option<DiffOp> {
        self.l.as_ref().map(|l| l.adjoint())
    }

    pub fn scalar_system(&self) -> Result<ScalarSystem, Error> {
        let l = self.l.clone().ok_or_else(|| Error::InvalidSystem("no `L =` statement".into()))?;
        let mut rels = Vec::new();
        for (i, r) in self.rels.iter().enumerate() {
            rels.push(r.clone().ok_or_else(|| Error::InvalidSystem(format!("missing `rel {}:`", self.specs[i].name)))?);
        }
        Ok(ScalarSystem { l, rels, specs: self.specs.clone() })
    }

    pub fn matrix_system(&self) -> Result<MatrixSystem, Error> {
        let dx = self.matrix_dx.clone().ok_or_else(|| Error::InvalidSystem("no `matrix` for the main derivation".into()))?;
        let dim = dx.len();
        let mut ops = Vec::new();
        for (i, m) in self.matrix_ops.iter().enumerate() {
            let m = m.clone().ok_or_else(|| Error::InvalidSystem(format!("missing `matrix {}`", self.specs[i].name)))?;
            ops.push(m);
        }
        for m in std::iter::once(&dx).chain(ops.iter()) {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(Error::InvalidSystem(format!("matrices must all be {dim}x{dim}")));
            }
        }
        let n = self.ctx.nvars();
        let f = match &self.vector_f {
            Some(v) if v.len() == dim => v.clone(),
            Some(_) => return Err(Error::InvalidSystem(format!("vector must have length {dim}"))),
            None => (0..dim).map(|k| if k == 0 { XRat::one(n) } else { XRat::zero(n) }).collect(),
        };
        Ok(MatrixSystem { dim, dx, ops, f, specs: self.specs.clone() })
    }

    /// Cyclic data and warnings, from the matrix form when one is given.
    pub fn cyclic_data(&self, seed: u64) -> Result<(CyclicData, Vec<String>), Error> {
        if self.matrix_dx.is_some() {
            let sys = self.matrix_system()?;
            let mut warnings = Vec::new();
            if !sys.is_integrable() {
                warnings.push("the action matrices do not commute".to_string());
            }
            Ok((cyclic_vector(&sys, seed)?, warnings))
        } else {
            from_scalar(&self.scalar_system()?, seed)
        }
    }
}

enum Stmt {
    L(Expr),
    Rel(String, Pos, Expr),
    Reduce(Expr, Expr, usize),
    Matrix(String, Pos, Vec<Vec<Expr>>),
    Vector(Pos, Vec<Expr>),
}

/// Identifier uses, for the declared-before-use check.
fn idents(e: &Expr, out: &mut Vec<(String, Pos)>) {
    match e {
        Expr::Num(_) => {}
        Expr::Ident(s, p) => out.push((s.clone(), *p)),
        Expr::Neg(a) | Expr::Pow(a, _, _) => idents(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            idents(a, out);
            idents(b, out);
        }
    }
}

fn list<T>(
    ts: &mut TokenStream,
    mut item: impl FnMut(&mut TokenStream) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    ts.expect(&Tok::LBracket)?;
    let mut out = vec![item(ts)?];
    while ts.eat(&Tok::Comma) {
        out.push(item(ts)?);
    }
    ts.expect(&Tok::RBracket)?;
    Ok(out)
}

struct Decls {
    params: Vec<String>,
    var: Option<String>,
    ores: Vec<(String, OreKind, String)>,
    names: HashMap<String, Pos>,
}

impl Decls {
    fn declare(&mut self, name: &str, pos: Pos) -> Result<(), ParseError> {
        if let Some(prev) = self.names.get(name) {
            return Err(pos.err(format!("`{name}` is already declared (line {})", prev.line)));
        }
        self.names.insert(name.to_string(), pos);
        Ok(())
    }

    fn check(&self, e: &Expr, ores_allowed: bool) -> Result<(), ParseError> {
        let mut uses = Vec::new();
        idents(e, &mut uses);
        for (name, pos) in uses {
            if !self.names.contains_key(&name) {
                return Err(pos.err(format!("undeclared identifier `{name}`")));
            }
            if !ores_allowed && self.ores.iter().any(|o| o.0 == name) {
                return Err(pos.err(format!("Ore operator `{name}` cannot appear in this expression")));
            }
        }
        Ok(())
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut ts = TokenStream::new(lex(text)?);
    let mut d = Decls { params: Vec::new(), var: None, ores: Vec::new(), names: HashMap::new() };
    let mut stmts: Vec<(Pos, Stmt)> = Vec::new();
    loop {
        while ts.eat(&Tok::Newline) {}
        if *ts.peek() == Tok::Eof {
            break;
        }
        let start = ts.pos();
        let (kw, kpos) = ts.ident()?;
        match kw.as_str() {
            "params" => {
                loop {
                    let (p, pos) = ts.ident()?;
                    d.declare(&p, pos)?;
                    d.params.push(p);
                    if !ts.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            "var" => {
                let (v, pos) = ts.ident()?;
                if d.var.is_some() {
                    return Err(pos.err("only one main variable may be declared"));
                }
                d.declare(&v, pos)?;
                d.declare(&format!("D{v}"), pos)?;
                d.var = Some(v);
            }
            "ore" => {
                let (name, pos) = ts.ident()?;
                ts.expect(&Tok::Eq)?;
                let (how, hpos) = ts.ident()?;
                let (kind, param, ppos) = match how.as_str() {
                    "d" => {
                        ts.expect(&Tok::Slash)?;
                        let (dp, ppos) = ts.ident()?;
                        let Some(p) = dp.strip_prefix('d') else {
                            return Err(ppos.err(format!("expected d/d<param>, found d/{dp}")));
                        };
                        (OreKind::Derivation, p.to_string(), Pos { line: ppos.line, col: ppos.col + 1 })
                    }
                    "shift" => {
                        ts.expect(&Tok::LParen)?;
                        let (p, ppos) = ts.ident()?;
                        ts.expect(&Tok::RParen)?;
                        (OreKind::Shift, p, ppos)
                    }
                    _ => return Err(hpos.err(format!("expected `d/d<param>` or `shift(<param>)`, found `{how}`"))),
                };
                if !d.params.contains(&param) {
                    return Err(ppos.err(format!("`{param}` is not a declared parameter")));
                }
                if d.ores.iter().any(|o| o.2 == param) {
                    return Err(ppos.err(format!("parameter `{param}` already has an Ore operator")));
                }
                d.declare(&name, pos)?;
                d.ores.push((name, kind, param));
            }
            "L" => {
                ts.expect(&Tok::Eq)?;
                let e = parse_sum(&mut ts)?;
                d.check(&e, false)?;
                stmts.push((start, Stmt::L(e)));
            }
            "rel" => {
                let (name, pos) = ts.ident()?;
                if !d.ores.iter().any(|o| o.0 == name) {
                    return Err(pos.err(format!("`{name}` is not a declared Ore operator")));
                }
                ts.expect(&Tok::Colon)?;
                let e = parse_sum(&mut ts)?;
                d.check(&e, false)?;
                stmts.push((start, Stmt::Rel(name, pos, e)));
            }
            "reduce" => {
                let r = parse_sum(&mut ts)?;
                match ts.peek() {
                    Tok::Ident(s) if s == "by" => {
                        ts.bump();
                    }
                    _ => return Err(ts.unexpected("`by`")),
                }
                let m = parse_sum(&mut ts)?;
                d.check(&r, false)?;
                d.check(&m, false)?;
                stmts.push((start, Stmt::Reduce(r, m, start.line)));
            }
            "matrix" => {
                let (name, pos) = ts.ident()?;
                ts.expect(&Tok::Eq)?;
                let rows = list(&mut ts, |ts| list(ts, parse_sum))?;
                for e in rows.iter().flatten() {
                    d.check(e, false)?;
                }
                stmts.push((start, Stmt::Matrix(name, pos, rows)));
            }
            "vector" => {
                let (_, pos) = ts.ident()?;
                ts.expect(&Tok::Eq)?;
                let items = list(&mut ts, parse_sum)?;
                for e in &items {
                    d.check(e, false)?;
                }
                stmts.push((start, Stmt::Vector(pos, items)));
            }
            _ => return Err(kpos.err(format!("unknown statement `{kw}`"))),
        }
        if !ts.at_end() {
            return Err(ts.unexpected("end of line"));
        }
    }
    let Some(var) = d.var.clone() else {
        return Err(ts.pos().err("missing `var` declaration"));
    };
    let params: Vec<&str> = d.params.iter().map(|s| s.as_str()).collect();
    let ores: Vec<&str> = d.ores.iter().map(|o| o.0.as_str()).collect();
    let ctx = Context::new(&params, &var, &ores);
    let specs: Vec<OreSpec> = d
        .ores
        .iter()
        .map(|(name, kind, p)| OreSpec { name: name.clone(), kind: *kind, param: ctx.param_index(p).unwrap() })
        .collect();
    let e = specs.len();
    let mut prob = Problem {
        ctx: ctx.clone(),
        specs,
        l: None,
        rels: vec![None; e],
        matrix_dx: None,
        matrix_ops: vec![None; e],
        vector_f: None,
        reduces: Vec::new(),
    };
    let alg = OpAlgebra { ctx: &ctx };
    let scalar = |e: &Expr| -> Result<XRat, ParseError> {
        let op = eval(&alg, e)?;
        if op.order() > 0 {
            let mut uses = Vec::new();
            idents(e, &mut uses);
            let pos = uses.into_iter().find(|u| u.0 == ctx.dvar()).map(|u| u.1).unwrap_or(Pos { line: 1, col: 1 });
            return Err(pos.err(format!("expected a rational function, found {}", ctx.dvar())));
        }
        Ok(op.coeff(0))
    };
    for (pos, s) in stmts {
        match s {
            Stmt::L(e) => {
                if prob.l.is_some() {
                    return Err(pos.err("`L` is already defined"));
                }
                let l = eval(&alg, &e)?;
                if l.is_zero() || l.order() == 0 {
                    return Err(pos.err(format!("L must have positive order in {}", ctx.dvar())));
                }
                prob.l = Some(l);
            }
            Stmt::Rel(name, npos, e) => {
                let i = ctx.ore_index(&name).unwrap();
                if prob.rels[i].is_some() {
                    return Err(npos.err(format!("relation for `{name}` is already given")));
                }
                prob.rels[i] = Some(eval(&alg, &e)?);
            }
            Stmt::Reduce(r, m, line) => {
                let r = scalar(&r)?;
                let m = eval(&alg, &m)?;
                if m.is_zero() {
                    return Err(pos.err("cannot reduce modulo the zero operator"));
                }
                prob.reduces.push(ReduceRequest { r, m, line });
            }
            Stmt::Matrix(name, npos, rows) => {
                let vals: Vec<Vec<XRat>> =
                    rows.iter().map(|row| row.iter().map(&scalar).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
                if name == ctx.dvar() {
                    if prob.matrix_dx.is_some() {
                        return Err(npos.err(format!("matrix for `{name}` is already given")));
                    }
                    prob.matrix_dx = Some(vals);
                } else if let Some(i) = ctx.ore_index(&name) {
                    if prob.matrix_ops[i].is_some() {
                        return Err(npos.err(format!("matrix for `{name}` is already given")));
                    }
                    prob.matrix_ops[i] = Some(vals);
                } else {
                    return Err(npos.err(format!("`{name}` is neither {} nor a declared Ore operator", ctx.dvar())));
                }
            }
            Stmt::Vector(npos, items) => {
                if prob.vector_f.is_some() {
                    return Err(npos.err("only one vector may be given"));
                }
                prob.vector_f = Some(items.iter().map(&scalar).collect::<Result<_, _>>()?);
            }
        }
    }
    if prob.l.is_some() && prob.matrix_dx.is_some() {
        return Err(ParseError::new(1, 1, "give either `L =` or matrices, not both"));
    }
    Ok(prob)
}
