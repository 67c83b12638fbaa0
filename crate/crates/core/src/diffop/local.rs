//! Shifts and indicial polynomials at finite places and at infinity.

use crate::error::Error;
use crate::field::{squarefree_factorization, KElem, ModPoly, XPoly};

use super::DiffOp;

/// Data at a monic squarefree place P.
///
/// For s with ind(−s) invertible mod P, M(P^{−s}) has leading P-adic term
/// ind(−s)·P^{−s+σ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDataFinite {
    pub place: XPoly,
    pub sigma: i64,
    /// ind(u) as a polynomial in u with coefficients reduced mod P.
    pub ind: ModPoly,
}

/// M(x^s) = ind(−s)·x^{s−σ} + lower terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDataInfinity {
    pub sigma: i64,
    pub ind: ModPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalFinite {
    Data(LocalDataFinite),
    /// The place must be split along this proper divisor.
    Split(XPoly),
}

impl LocalDataFinite {
    pub fn ind_at(&self, u: i64) -> XPoly {
        self.ind.eval(u)
    }
}

impl LocalDataInfinity {
    pub fn ind_at(&self, u: i64) -> KElem {
        self.ind.eval(u).coeff(0)
    }
}

/// Polynomial in s with coefficients in K[x], lowest power first.
type SPoly = Vec<XPoly>;

fn s_add(a: &mut SPoly, b: &SPoly) {
    if a.len() < b.len() {
        let n = b[0].nvars();
        a.resize(b.len(), XPoly::zero(n));
    }
    for (i, c) in b.iter().enumerate() {
        a[i] = &a[i] + c;
    }
}

fn s_scale(a: &SPoly, p: &XPoly) -> SPoly {
    a.iter().map(|c| c * p).collect()
}

/// (s + k)·a
fn s_mul_linear(a: &SPoly, k: i64) -> SPoly {
    let n = a[0].nvars();
    let kk = KElem::from_int(n, k);
    let mut out = vec![XPoly::zero(n); a.len() + 1];
    for (j, c) in a.iter().enumerate() {
        out[j + 1] = &out[j + 1] + c;
        out[j] = &out[j] + &c.scale(&kk);
    }
    out
}

fn check_polynomial(m: &DiffOp) -> Result<Vec<XPoly>, Error> {
    if m.is_zero() {
        return Err(Error::ZeroOperator);
    }
    m.poly_coeffs().ok_or(Error::NotPolynomial)
}

/// Expands M(P^{−s}) with s symbolic and reads off the leading P-adic term.
pub fn local_data_finite(m: &DiffOp, p: &XPoly) -> Result<LocalFinite, Error> {
    let pc = check_polynomial(m)?;
    if p.is_constant() || !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let p = p.monic();
    let n = m.nvars();
    let r = m.order();
    let dp = p.derivative();
    let ppow: Vec<XPoly> = (0..=r).map(|k| p.pow(k)).collect();
    // terms[k] = u_{i,k}: ∂^i(P^{−s}) = Σ_k u_{i,k} P^{−s−k}
    let mut terms: Vec<SPoly> = vec![vec![XPoly::one(n)]];
    let mut w: SPoly = vec![XPoly::zero(n)];
    for (i, pi) in pc.iter().enumerate() {
        if i > 0 {
            let mut next: Vec<SPoly> = vec![vec![XPoly::zero(n)]; i + 1];
            for (k, u) in terms.iter().enumerate() {
                let du: SPoly = u.iter().map(|c| c.derivative()).collect();
                s_add(&mut next[k], &du);
                let t = s_scale(&s_mul_linear(u, k as i64), &dp);
                let t: SPoly = t.iter().map(|c| -c).collect();
                s_add(&mut next[k + 1], &t);
            }
            terms = next;
        }
        if pi.is_zero() {
            continue;
        }
        for (k, u) in terms.iter().enumerate() {
            let f = pi * &ppow[r - k];
            s_add(&mut w, &s_scale(u, &f));
        }
    }
    let mut v = 0i64;
    loop {
        let divided: Option<SPoly> = w.iter().map(|c| c.div_exact(&p)).collect();
        match divided {
            Some(d) if w.iter().any(|c| !c.is_zero()) => {
                w = d;
                v += 1;
            }
            _ => break,
        }
    }
    let coeffs: Vec<XPoly> = w
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let c = c.rem(&p);
            if j % 2 == 1 {
                -&c
            } else {
                c
            }
        })
        .collect();
    let mut g = p.clone();
    for c in &coeffs {
        g = g.gcd(c);
        if g.is_constant() {
            break;
        }
    }
    if !g.is_constant() {
        return Ok(LocalFinite::Split(g));
    }
    Ok(LocalFinite::Data(LocalDataFinite {
        place: p.clone(),
        sigma: v - r as i64,
        ind: ModPoly::new(p, coeffs),
    }))
}

/// Closed form at a place coprime to the leading coefficient:
/// σ = −r, ind(u) = p_r·P'^r·u(u−1)⋯(u−r+1).
pub fn local_data_ordinary(m: &DiffOp, p: &XPoly) -> Result<LocalDataFinite, Error> {
    let pc = check_polynomial(m)?;
    let p = p.monic();
    let n = m.nvars();
    let r = m.order();
    let unit = (&pc[r] * &p.derivative().pow(r)).rem(&p);
    let mut ff: Vec<KElem> = vec![KElem::one(n)];
    for j in 0..r {
        ff = mul_linear_k(&ff, &KElem::one(n), &KElem::from_int(n, -(j as i64)));
    }
    let coeffs = ff.iter().map(|c| unit.scale(c)).collect();
    Ok(LocalDataFinite { place: p.clone(), sigma: -(r as i64), ind: ModPoly::new(p, coeffs) })
}

/// (a·u + b)·f for f a polynomial in u over K.
fn mul_linear_k(f: &[KElem], a: &KElem, b: &KElem) -> Vec<KElem> {
    let n = a.nvars();
    let mut out = vec![KElem::zero(n); f.len() + 1];
    for (j, c) in f.iter().enumerate() {
        out[j + 1] = &out[j + 1] + &(c * a);
        out[j] = &out[j] + &(c * b);
    }
    out
}

pub fn local_data_infinity(m: &DiffOp) -> Result<LocalDataInfinity, Error> {
    let pc = check_polynomial(m)?;
    let n = m.nvars();
    let sigma = pc
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| i as i64 - c.deg())
        .min()
        .unwrap();
    let mut ind: Vec<KElem> = vec![KElem::zero(n)];
    for (i, c) in pc.iter().enumerate() {
        if c.is_zero() || i as i64 - c.deg() != sigma {
            continue;
        }
        // lc·(−u)(−u−1)⋯(−u−i+1)
        let mut ff = vec![c.lc()];
        for j in 0..i {
            ff = mul_linear_k(&ff, &KElem::from_int(n, -1), &KElem::from_int(n, -(j as i64)));
        }
        if ind.len() < ff.len() {
            ind.resize(ff.len(), KElem::zero(n));
        }
        for (j, a) in ff.iter().enumerate() {
            ind[j] = &ind[j] + a;
        }
    }
    Ok(LocalDataInfinity { sigma, ind: ModPoly::over_k(n, ind) })
}

/// Squarefree factors of the leading coefficient.
pub fn singular_places(m: &DiffOp) -> Result<Vec<XPoly>, Error> {
    let pc = check_polynomial(m)?;
    let lc = pc.last().unwrap();
    Ok(squarefree_factorization(lc).factors.into_iter().map(|(f, _)| f).collect())
}
