//! The `hermtel` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::{parse_problem, Context, Problem};
use crate::diffop::{local_data_finite, local_data_infinity, DiffOp, LocalFinite};
use crate::error::Error;
use crate::field::{ModPoly, RootsError, RootsOutcome, XPoly, XRat};
use crate::reduction::{CanonicalForm, Reducer, ReducerOptions};
use crate::telescoper::{build_reducer, telescope, Status, TelescopeOptions, Telescoper, TermOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hermtel", version, about = "Hermite reduction and creative telescoping")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Grevlex,
    Deglex,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Problem file (.ct)
    file: PathBuf,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Seed for random specializations and cyclic-vector trials
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical forms of the `reduce` statements
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Also print U with R = [R] + M(U)
        #[arg(long)]
        certificate: bool,
    },
    /// Shift and indicial polynomial at a place
    Localdata {
        #[command(flatten)]
        common: Common,
        /// A polynomial in the main variable, or `inf`
        #[arg(long)]
        place: String,
    },
    /// Basis of the exceptional space
    Exceptional {
        #[command(flatten)]
        common: Common,
    },
    /// Telescopers of the declared system
    Telescope {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        /// Stop at the first telescoper
        #[arg(long)]
        first_only: bool,
        /// Largest total degree visited
        #[arg(long, default_value_t = 20)]
        max_degree: u32,
        /// Reduce through the default shell
        #[arg(long)]
        shell: bool,
    },
}

#[derive(Serialize, Debug, Default)]
struct Report {
    status: String,
    results: Vec<String>,
    diagnostics: Vec<String>,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::ExceptionalCap { .. } | Error::NoCyclicVector(_) | Error::Roots(RootsError::NoGoodPoint) => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(error_code(&e), e.to_string())
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let common = match &cli.cmd {
        Cmd::Reduce { common, .. }
        | Cmd::Localdata { common, .. }
        | Cmd::Exceptional { common }
        | Cmd::Telescope { common, .. } => common,
    };
    let mut report = Report { status: "ok".into(), ..Default::default() };
    let code = match load(&common.file).and_then(|p| dispatch(&cli.cmd, &p, &mut report)) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            report.status = "error".into();
            report.diagnostics.push(msg);
            code
        }
    };
    if common.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for r in &report.results {
            let _ = writeln!(out, "{r}");
        }
        for d in &report.diagnostics {
            let _ = writeln!(err, "{d}");
        }
    }
    code
}

fn load(path: &PathBuf) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// The operator of the first `reduce` statement, else L*.
fn subject_operator(p: &Problem) -> Result<DiffOp, Failure> {
    if let Some(r) = p.reduces.first() {
        return Ok(r.m.clone());
    }
    p.system_operator().ok_or_else(|| Failure(EXIT_INPUT, "no operator: give a `reduce` statement or `L =`".into()))
}

fn dispatch(cmd: &Cmd, p: &Problem, rep: &mut Report) -> Result<i32, Failure> {
    let ctx = &p.ctx;
    match cmd {
        Cmd::Reduce { common, certificate } => {
            if p.reduces.is_empty() {
                return Err(Failure(EXIT_INPUT, "no `reduce` statement".into()));
            }
            let opts = ReducerOptions { seed: common.seed, ..Default::default() };
            let mut cache: Vec<(DiffOp, Reducer)> = Vec::new();
            for req in &p.reduces {
                let idx = match cache.iter().position(|(m, _)| *m == req.m) {
                    Some(i) => i,
                    None => {
                        cache.push((req.m.clone(), Reducer::with_options(&req.m, &opts)?));
                        cache.len() - 1
                    }
                };
                let res = cache[idx].1.canonical_form(&req.r)?;
                rep.results.push(ctx.print_xrat(&res.reduced));
                if *certificate {
                    rep.results.push(format!("certificate: {}", ctx.print_xrat(&res.certificate)));
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Localdata { common, place } => {
            let m = subject_operator(p)?;
            let m = clear_left(&m, ctx, rep);
            if place == "inf" {
                let data = local_data_infinity(&m)?;
                rep.results.push("place: inf".into());
                rep.results.push(format!("sigma: {}", data.sigma));
                push_indicial(ctx, &data.ind, common.seed, rep)?;
                return Ok(EXIT_OK);
            }
            let r = ctx.parse_xrat(place).map_err(|e| Failure(EXIT_INPUT, format!("--place: {e}")))?;
            let poly = match r.as_poly() {
                Some(q) if q.deg() > 0 => q.monic(),
                _ => return Err(Failure(EXIT_INPUT, "--place must be a nonconstant polynomial or `inf`".into())),
            };
            if !poly.is_squarefree() {
                return Err(Failure(EXIT_INPUT, "--place must be squarefree".into()));
            }
            match local_data_finite(&m, &poly)? {
                LocalFinite::Split(g) => Err(Failure(
                    EXIT_INPUT,
                    format!("the place splits; try the factor {}", ctx.print_xrat(&XRat::from_poly(g))),
                )),
                LocalFinite::Data(data) => {
                    rep.results.push(format!("place: {}", ctx.print_xrat(&XRat::from_poly(poly))));
                    rep.results.push(format!("sigma: {}", data.sigma));
                    push_indicial(ctx, &data.ind, common.seed, rep)?;
                    Ok(EXIT_OK)
                }
            }
        }
        Cmd::Exceptional { common } => {
            let m = subject_operator(p)?;
            let opts = ReducerOptions { seed: common.seed, ..Default::default() };
            let red = Reducer::with_options(&m, &opts)?;
            let exc = red.exceptional();
            rep.results.push(format!("dimension: {}", exc.dimension()));
            for b in exc.basis() {
                rep.results.push(ctx.print_xrat(&b));
            }
            Ok(EXIT_OK)
        }
        Cmd::Telescope { common, order, first_only, max_degree, shell } => {
            if !p.has_system() {
                return Err(Failure(EXIT_INPUT, "no system: give `L =` or matrices".into()));
            }
            let (cd, warnings) = p.cyclic_data(common.seed)?;
            rep.diagnostics.extend(warnings.into_iter().map(|w| format!("warning: {w}")));
            let ropts = ReducerOptions { seed: common.seed, ..Default::default() };
            let reducer = build_reducer(&cd, *shell, &ropts)?;
            let order = match order {
                OrderArg::Grevlex => TermOrder::Grevlex,
                OrderArg::Deglex => TermOrder::Deglex,
            };
            let topts =
                TelescopeOptions { order, first_only: *first_only, max_degree: Some(*max_degree), seed: common.seed };
            let basis = telescope(&cd, &p.specs, reducer.as_ref(), &topts)?;
            for t in &basis.g {
                rep.results.push(ctx.print_telescoper(t));
            }
            let one = crate::field::KElem::one(ctx.nvars());
            let q: Vec<String> = basis
                .q
                .iter()
                .map(|m| ctx.print_telescoper(&Telescoper { terms: vec![(m.clone(), one.clone())] }))
                .collect();
            rep.diagnostics.push(format!("standard monomials: {}", q.join(", ")));
            rep.diagnostics.push(format!("status: {}", basis.status.as_str()));
            rep.status = basis.status.as_str().into();
            Ok(if basis.status == Status::DegreeCapped { EXIT_INCOMPLETE } else { EXIT_OK })
        }
    }
}

/// Clears coefficient denominators by a left multiplication.
fn clear_left(m: &DiffOp, ctx: &Context, rep: &mut Report) -> DiffOp {
    if m.has_polynomial_coefficients() {
        return m.clone();
    }
    let n = m.nvars();
    let mut den = XPoly::one(n);
    for c in m.coeffs() {
        let g = den.gcd(c.den());
        den = &den * &c.den().div_exact(&g).unwrap();
    }
    let d = XRat::from_poly(den);
    rep.diagnostics.push(format!("note: operator multiplied on the left by {}", ctx.print_xrat(&d)));
    m.scale_left(&d)
}

fn push_indicial(ctx: &Context, ind: &ModPoly, seed: u64, rep: &mut Report) -> Result<(), Failure> {
    let mut body = String::new();
    for (k, c) in ind.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = ctx.print_xrat(&XRat::from_poly(c.clone()));
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, cs),
        };
        let compound = mag.contains(['+', '-', '/', ' ']);
        let u = match k {
            0 => String::new(),
            1 => "u".into(),
            _ => format!("u^{k}"),
        };
        let term = match (u.is_empty(), mag.as_str(), compound) {
            (true, _, _) => mag.clone(),
            (false, "1", _) => u,
            (false, _, true) => format!("({mag})*{u}"),
            (false, _, false) => format!("{mag}*{u}"),
        };
        body.push_str(match (body.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        body.push_str(&term);
    }
    if body.is_empty() {
        body.push('0');
    }
    rep.results.push(format!("indicial: {body}"));
    match ind.integer_roots(seed).map_err(Error::from)? {
        RootsOutcome::Roots(r) => {
            let s: Vec<String> = r.iter().map(|u| u.to_string()).collect();
            rep.results.push(format!("integer roots: [{}]", s.join(", ")));
        }
        RootsOutcome::Split(g) => {
            rep.diagnostics.push(format!(
                "the place splits; try the factor {}",
                ctx.print_xrat(&XRat::from_poly(g))
            ));
        }
    }
    Ok(())
}
