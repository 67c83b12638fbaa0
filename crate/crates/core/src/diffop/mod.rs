//! Linear differential operators Σ c_i ∂x^i over K(x).

mod local;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::field::{KElem, MPoly, Rat, XPoly, XRat};

pub use local::{
    local_data_finite, local_data_infinity, local_data_ordinary, singular_places, LocalDataFinite,
    LocalDataInfinity, LocalFinite,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    nvars: usize,
    coeffs: Vec<XRat>,
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut r = Rat::from_integer(1.into());
    for j in 0..k {
        r = r * Rat::from_integer(((n - j) as i64).into()) / Rat::from_integer(((j + 1) as i64).into());
    }
    r
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp { nvars, coeffs: Vec::new() }
    }

    pub fn from_coeffs(nvars: usize, mut coeffs: Vec<XRat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        DiffOp { nvars, coeffs }
    }

    pub fn from_poly_coeffs(nvars: usize, coeffs: Vec<XPoly>) -> Self {
        Self::from_coeffs(nvars, coeffs.into_iter().map(XRat::from_poly).collect())
    }

    /// Multiplication by a rational function (order 0).
    pub fn mult(c: XRat) -> Self {
        let n = c.nvars();
        Self::from_coeffs(n, vec![c])
    }

    pub fn one(nvars: usize) -> Self {
        Self::mult(XRat::one(nvars))
    }

    pub fn dx(nvars: usize) -> Self {
        Self::from_coeffs(nvars, vec![XRat::zero(nvars), XRat::one(nvars)])
    }

    pub fn dx_pow(nvars: usize, k: usize) -> Self {
        let mut c = vec![XRat::zero(nvars); k];
        c.push(XRat::one(nvars));
        Self::from_coeffs(nvars, c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[XRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> XRat {
        self.coeffs.get(i).cloned().unwrap_or_else(|| XRat::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> XRat {
        self.coeffs.last().cloned().unwrap_or_else(|| XRat::zero(self.nvars))
    }

    pub fn has_polynomial_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    pub fn poly_coeffs(&self) -> Option<Vec<XPoly>> {
        self.coeffs.iter().map(|c| c.as_poly().cloned()).collect()
    }

    /// Largest x-degree among the coefficients (polynomial operators).
    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.num().deg().max(0) as usize).max().unwrap_or(0)
    }

    pub fn apply(&self, r: &XRat) -> XRat {
        let mut acc = XRat::zero(self.nvars);
        let mut d = r.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                d = d.derivative();
            }
            if d.is_zero() {
                break;
            }
            if !c.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        DiffOp::from_coeffs(self.nvars, c)
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp { nvars: self.nvars, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.neg())
    }

    /// Left multiplication by a function: h·L.
    pub fn scale_left(&self, h: &XRat) -> DiffOp {
        DiffOp::from_coeffs(self.nvars, self.coeffs.iter().map(|c| h * c).collect())
    }

    pub fn scale_k(&self, c: &KElem) -> DiffOp {
        DiffOp::from_coeffs(self.nvars, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Composition A·B.
    pub fn mul(&self, b: &DiffOp) -> DiffOp {
        if self.is_zero() || b.is_zero() {
            return DiffOp::zero(self.nvars);
        }
        let mut out = vec![XRat::zero(self.nvars); self.coeffs.len() + b.coeffs.len() - 1];
        // derivs[j][k] = k-th derivative of b_j
        let maxk = self.coeffs.len();
        let derivs: Vec<Vec<XRat>> = b
            .coeffs
            .iter()
            .map(|bj| {
                let mut v = Vec::with_capacity(maxk);
                let mut d = bj.clone();
                for k in 0..maxk {
                    if k > 0 {
                        d = d.derivative();
                    }
                    v.push(d.clone());
                }
                v
            })
            .collect();
        for (i, ai) in self.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for k in 0..=i {
                let bin = KElem::from_rat(self.nvars, binomial(i, k));
                let aik = ai.scale(&bin);
                for (j, dj) in derivs.iter().enumerate() {
                    let t = &dj[k];
                    if t.is_zero() {
                        continue;
                    }
                    let idx = i - k + j;
                    out[idx] = &out[idx] + &(&aik * t);
                }
            }
        }
        DiffOp::from_coeffs(self.nvars, out)
    }

    /// L* = Σ (−∂x)^i c_i.
    pub fn adjoint(&self) -> DiffOp {
        let mut out = vec![XRat::zero(self.nvars); self.coeffs.len()];
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let mut d = ci.clone();
            for k in 0..=i {
                if k > 0 {
                    d = d.derivative();
                }
                if d.is_zero() {
                    break;
                }
                let mut b = binomial(i, k);
                if i % 2 == 1 {
                    b = -b;
                }
                out[i - k] = &out[i - k] + &d.scale(&KElem::from_rat(self.nvars, b));
            }
        }
        DiffOp::from_coeffs(self.nvars, out)
    }

    /// Right Euclidean division: self = q·l + rem with order(rem) < order(l).
    pub fn right_divrem(&self, l: &DiffOp) -> (DiffOp, DiffOp) {
        assert!(!l.is_zero(), "right division by the zero operator");
        let r = l.order();
        let lc_inv = l.leading_coeff().inv();
        let mut rem = self.clone();
        let mut q = DiffOp::zero(self.nvars);
        while !rem.is_zero() && rem.order() >= r {
            let m = rem.order();
            let c = &rem.leading_coeff() * &lc_inv;
            let mut tc = vec![XRat::zero(self.nvars); m - r];
            tc.push(c);
            let t = DiffOp::from_coeffs(self.nvars, tc);
            let sub = t.mul(l);
            let mut next = rem.sub(&sub);
            // exact cancellation of the leading term
            next.coeffs.truncate(m.min(next.coeffs.len()));
            next = DiffOp::from_coeffs(self.nvars, next.coeffs);
            rem = next;
            q = q.add(&t);
        }
        (q, rem)
    }

    pub fn right_remainder(&self, l: &DiffOp) -> DiffOp {
        self.right_divrem(l).1
    }

    /// M·Q with polynomial coefficients, Q the lcm of the denominators of M*.
    pub fn poly_normalize(&self) -> (DiffOp, XPoly) {
        let n = self.nvars;
        if self.has_polynomial_coefficients() {
            return (self.clone(), XPoly::one(n));
        }
        let adj = self.adjoint();
        let mut q = XPoly::one(n);
        for c in adj.coeffs() {
            let g = q.gcd(c.den());
            q = &q * &c.den().div_exact(&g).unwrap();
        }
        let m = self.mul(&DiffOp::mult(XRat::from_poly(q.clone())));
        debug_assert!(m.has_polynomial_coefficients());
        (m, q)
    }

    /// Clears K-denominators and the common parameter content; returns the
    /// normalized operator and the K-scalar it was multiplied by.
    pub fn content_normalize(&self) -> (DiffOp, KElem) {
        let n = self.nvars;
        let Some(pc) = self.poly_coeffs() else {
            return (self.clone(), KElem::one(n));
        };
        let elems: Vec<&KElem> = pc.iter().flat_map(|p| p.coeffs().iter()).filter(|c| !c.is_zero()).collect();
        if elems.is_empty() {
            return (self.clone(), KElem::one(n));
        }
        let mut den = MPoly::one(n);
        for e in &elems {
            let g = den.gcd(e.den());
            den = den.mul(&e.den().div_exact(&g).unwrap());
        }
        // coefficients as elements of Q[t] once `den` is cleared
        let dk = KElem::from_poly(den.clone());
        let polys: Vec<MPoly> = elems
            .iter()
            .map(|e| {
                let v = *e * &dk;
                v.num().scale(&v.den().constant_value().expect("denominator cleared").recip())
            })
            .collect();
        let mut g = MPoly::zero(n);
        for p in &polys {
            g = if g.is_zero() { p.clone() } else { g.gcd(p) };
        }
        let quots: Vec<MPoly> = polys.iter().map(|p| p.div_exact(&g).unwrap()).collect();
        let l = quots.iter().fold(BigInt::from(1), |acc, q| acc.lcm(&q.coeff_denominator_lcm()));
        let ic = quots.iter().fold(BigInt::zero(), |acc, q| acc.gcd(&q.scale(&Rat::from_integer(l.clone())).integer_content()));
        let mut scale = KElem::new(den.scale(&Rat::new(l, ic)), g);
        let lead = &self.leading_coeff().num().lc() * &scale;
        if lead.num().lc_is_negative() {
            scale = -scale;
        }
        (self.scale_k(&scale), scale)
    }

    /// Substitutes parameter values in every coefficient.
    pub fn eval_params(&self, point: &[Rat]) -> Result<DiffOp, crate::field::BadPoint> {
        let c = self.coeffs.iter().map(|c| c.eval_params(point)).collect::<Result<Vec<_>, _>>()?;
        Ok(DiffOp::from_coeffs(0, c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&XRat) -> XRat) -> DiffOp {
        DiffOp::from_coeffs(self.nvars, self.coeffs.iter().map(f).collect())
    }
}
