//! Generalized Hermite reduction: weak reduction, exceptional space, ρ and
//! the canonical form, with certificates.

mod exc;
mod oracle;
mod shell;
mod weak;

use std::collections::VecDeque;

use crate::diffop::{local_data_finite, local_data_infinity, singular_places, DiffOp, LocalFinite};
use crate::error::Error;
use crate::field::{KElem, RootsOutcome, XPoly, XRat};

pub use exc::ExcBasis;
pub use oracle::{brute_force_preimage, quotient_dimension_bound};
pub use shell::{default_shell, shell_transform, ShellReducer};
pub use weak::{Place, WeakContext, WeakDetail};

/// `input = reduced + M(certificate)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: XRat,
    pub certificate: XRat,
}

#[derive(Clone, Debug)]
pub struct ReducerOptions {
    /// Largest number of exceptional generators examined.
    pub exc_cap: usize,
    pub seed: u64,
}

impl Default for ReducerOptions {
    fn default() -> Self {
        ReducerOptions { exc_cap: 512, seed: 0x5eed }
    }
}

/// Anything that computes a canonical form modulo the image of an operator.
pub trait CanonicalForm {
    fn canonical_form(&self, r: &XRat) -> Result<ReductionResult, Error>;
}

/// Reduction context for one operator.
#[derive(Clone, Debug)]
pub struct Reducer {
    input: DiffOp,
    op: DiffOp,
    /// M_normalized = scale · M_input · q
    norm_q: XPoly,
    norm_scale: KElem,
    ctx: WeakContext,
    exc: ExcBasis,
}

impl Reducer {
    pub fn new(m: &DiffOp) -> Result<Self, Error> {
        Self::with_options(m, &ReducerOptions::default())
    }

    pub fn with_options(m: &DiffOp, opts: &ReducerOptions) -> Result<Self, Error> {
        if m.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let (m1, q) = m.poly_normalize();
        let (op, scale) = m1.content_normalize();
        let coeffs = op.poly_coeffs().ok_or(Error::NotPolynomial)?;
        let places = stable_places(&op, opts.seed)?;
        let inf = local_data_infinity(&op)?;
        let inf_roots = match inf.ind.integer_roots(opts.seed)? {
            RootsOutcome::Roots(r) => r,
            RootsOutcome::Split(_) => return Err(Error::Internal("split at infinity".into())),
        };
        let ctx = WeakContext { coeffs, places, inf, inf_roots };
        let exc = exceptional_space(&ctx, &op, opts.exc_cap)?;
        Ok(Reducer { input: m.clone(), op, norm_q: q, norm_scale: scale, ctx, exc })
    }

    /// The operator as given.
    pub fn input_operator(&self) -> &DiffOp {
        &self.input
    }

    /// Polynomial, content-normalized operator with the same image.
    pub fn operator(&self) -> &DiffOp {
        &self.op
    }

    pub fn places(&self) -> &[Place] {
        &self.ctx.places
    }

    pub fn context(&self) -> &WeakContext {
        &self.ctx
    }

    pub fn exceptional(&self) -> &ExcBasis {
        &self.exc
    }

    fn map_certificate(&self, u: &XRat) -> XRat {
        (u * &XRat::from_poly(self.norm_q.clone())).scale(&self.norm_scale)
    }

    /// H_rat with a certificate for the input operator.
    pub fn weak_reduce(&self, r: &XRat) -> Result<ReductionResult, Error> {
        let (reduced, cert, _) = self.ctx.reduce(r)?;
        Ok(ReductionResult { reduced, certificate: self.map_certificate(&cert) })
    }

    pub fn weak_detail(&self, r: &XRat) -> Result<WeakDetail, Error> {
        Ok(self.ctx.reduce(r)?.2)
    }

    pub fn rho(&self, r: &XRat) -> XRat {
        self.exc.rho(r)
    }
}

impl CanonicalForm for Reducer {
    fn canonical_form(&self, r: &XRat) -> Result<ReductionResult, Error> {
        let (h, cert, _) = self.ctx.reduce(r)?;
        let (reduced, extra) = self.exc.rho_with_certificate(&h);
        let cert = &cert + &extra;
        Ok(ReductionResult { reduced, certificate: self.map_certificate(&cert) })
    }
}

/// Singular places refined until each has a uniform shift and an indicial
/// polynomial whose integer values are zero or invertible.
fn stable_places(op: &DiffOp, seed: u64) -> Result<Vec<Place>, Error> {
    let mut queue: VecDeque<XPoly> = singular_places(op)?.into();
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        let split = match local_data_finite(op, &p)? {
            LocalFinite::Split(g) => Some(g),
            LocalFinite::Data(data) => match data.ind.integer_roots(seed)? {
                RootsOutcome::Split(g) => Some(g),
                RootsOutcome::Roots(roots) => {
                    out.push(Place { data, roots });
                    None
                }
            },
        };
        if let Some(g) = split {
            let h = p.div_exact(&g).unwrap().monic();
            queue.push_back(g.monic());
            queue.push_back(h);
        }
    }
    Ok(out)
}

/// Pole orders s > 0 at a place whose generators x^j·P^{−s} enter the family.
fn exceptional_orders(place: &Place) -> Vec<usize> {
    let mut s: Vec<usize> = place.roots.iter().filter(|&&u| u < 0).map(|&u| (-u) as usize).collect();
    if place.sigma() > 0 {
        s.extend(1..=place.sigma() as usize);
    }
    s.sort_unstable();
    s.dedup();
    s
}

fn exceptional_space(ctx: &WeakContext, op: &DiffOp, cap: usize) -> Result<ExcBasis, Error> {
    let n = op.nvars();
    let mut family: Vec<XRat> = Vec::new();
    for place in &ctx.places {
        let p = place.poly();
        let k = p.deg() as usize;
        for s in exceptional_orders(place) {
            for j in 0..k {
                family.push(XRat::new(XPoly::monomial(KElem::one(n), j), p.pow(s)));
            }
            if family.len() > cap {
                return Err(Error::ExceptionalCap { cap });
            }
        }
    }
    for &u in &ctx.inf_roots {
        if u <= 0 {
            family.push(XRat::from_poly(XPoly::monomial(KElem::one(n), (-u) as usize)));
        }
    }
    if family.len() > cap {
        return Err(Error::ExceptionalCap { cap });
    }
    let mut pairs = Vec::with_capacity(family.len());
    for g in family {
        let img = op.apply(&g);
        let (w, cert, _) = ctx.reduce(&img)?;
        pairs.push((w, &g - &cert));
    }
    Ok(ExcBasis::new(n, pairs))
}

/// H_rat(R) with respect to M.
pub fn weak_reduce(r: &XRat, m: &DiffOp) -> Result<ReductionResult, Error> {
    Reducer::new(m)?.weak_reduce(r)
}

pub fn exceptional_basis(m: &DiffOp) -> Result<ExcBasis, Error> {
    Ok(Reducer::new(m)?.exc)
}

pub fn rho(exc: &ExcBasis, r: &XRat) -> XRat {
    exc.rho(r)
}

pub fn canonical_form(r: &XRat, reducer: &dyn CanonicalForm) -> Result<ReductionResult, Error> {
    reducer.canonical_form(r)
}
