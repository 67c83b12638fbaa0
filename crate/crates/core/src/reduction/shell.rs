//! Reduction through a factorization M·A = B·L.

use crate::diffop::DiffOp;
use crate::error::Error;
use crate::field::{XPoly, XRat};

use super::{CanonicalForm, Reducer, ReducerOptions, ReductionResult};

/// R ↦ B·[R/B]_L, certificate A·c.
#[derive(Clone, Debug)]
pub struct ShellReducer {
    pub a: XRat,
    pub b: XRat,
    pub inner: Reducer,
}

impl ShellReducer {
    pub fn operator(&self) -> &DiffOp {
        self.inner.operator()
    }
}

pub fn shell_transform(m: &DiffOp, a: &XRat, b: &XRat, opts: &ReducerOptions) -> Result<ShellReducer, Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Shell("A and B must be nonzero".into()));
    }
    let ma = m.mul(&DiffOp::mult(a.clone()));
    let l = DiffOp::mult(b.inv()).mul(&ma);
    if DiffOp::mult(b.clone()).mul(&l) != ma {
        return Err(Error::Shell("M·A ≠ B·L".into()));
    }
    let inner = Reducer::with_options(&l, opts)?;
    Ok(ShellReducer { a: a.clone(), b: b.clone(), inner })
}

impl CanonicalForm for ShellReducer {
    fn canonical_form(&self, r: &XRat) -> Result<ReductionResult, Error> {
        let res = self.inner.canonical_form(&(r / &self.b))?;
        Ok(ReductionResult { reduced: &self.b * &res.reduced, certificate: &self.a * &res.certificate })
    }
}

/// A = B = Π P^{m_P}, m_P the smallest negative integer root of ind_P.
pub fn default_shell(m: &DiffOp, opts: &ReducerOptions) -> Result<(XRat, XRat), Error> {
    let red = Reducer::with_options(m, opts)?;
    let n = m.nvars();
    let mut den = XPoly::one(n);
    for place in red.places() {
        if let Some(&u) = place.roots.first() {
            if u < 0 {
                den = &den * &place.poly().pow((-u) as usize);
            }
        }
    }
    let a = XRat::new(XPoly::one(n), den);
    Ok((a.clone(), a))
}
