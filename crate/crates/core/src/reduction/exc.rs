//! The exceptional space H(im M) and the projection ρ.

use crate::field::{KElem, XPoly, XRat};

/// Echelonized exceptional space W = Q⁻¹·V, V ⊂ K[x].
///
/// Rows are in reduced echelon form: each is monic at its pivot (its degree)
/// and has zero coefficient at every other pivot.
#[derive(Clone, Debug)]
pub struct ExcBasis {
    nvars: usize,
    generators: Vec<XRat>,
    q: XPoly,
    /// (pivot, row of V, preimage Y with M(Y) = row/Q), pivots decreasing.
    rows: Vec<(usize, XPoly, XRat)>,
}

impl ExcBasis {
    /// Builds the echelon data from pairs (w, y) with M(y) = w.
    pub fn new(nvars: usize, pairs: Vec<(XRat, XRat)>) -> Self {
        let pairs: Vec<(XRat, XRat)> = pairs.into_iter().filter(|(w, _)| !w.is_zero()).collect();
        let mut q = XPoly::one(nvars);
        for (w, _) in &pairs {
            let g = q.gcd(w.den());
            q = &q * &w.den().div_exact(&g).unwrap();
        }
        let qr = XRat::from_poly(q.clone());
        let mut basis = ExcBasis { nvars, generators: Vec::new(), q, rows: Vec::new() };
        for (w, y) in pairs {
            let v = (&w * &qr).as_poly().cloned().expect("Q clears every denominator");
            basis.insert(v, y);
            basis.generators.push(w);
        }
        basis
    }

    fn insert(&mut self, mut v: XPoly, mut y: XRat) {
        for (piv, row, yr) in &self.rows {
            let c = v.coeff(*piv);
            if !c.is_zero() {
                v = &v - &row.scale(&c);
                y = &y - &yr.scale(&c);
            }
        }
        if v.is_zero() {
            return;
        }
        let d = v.deg() as usize;
        let inv = v.lc().inv();
        let v = v.scale(&inv);
        let y = y.scale(&inv);
        for (_, row, yr) in self.rows.iter_mut() {
            let c = row.coeff(d);
            if !c.is_zero() {
                *row = &*row - &v.scale(&c);
                *yr = &*yr - &y.scale(&c);
            }
        }
        let pos = self.rows.iter().position(|(p, _, _)| *p < d).unwrap_or(self.rows.len());
        self.rows.insert(pos, (d, v, y));
    }

    pub fn generators(&self) -> &[XRat] {
        &self.generators
    }

    pub fn q(&self) -> &XPoly {
        &self.q
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows of V in reduced echelon form, pivots decreasing.
    pub fn echelon(&self) -> Vec<(usize, XPoly)> {
        self.rows.iter().map(|(p, r, _)| (*p, r.clone())).collect()
    }

    /// Basis of W itself (rows divided by Q).
    pub fn basis(&self) -> Vec<XRat> {
        let q = XRat::from_poly(self.q.clone());
        self.rows.iter().map(|(_, r, _)| &XRat::from_poly(r.clone()) / &q).collect()
    }

    /// ρ(R) and the preimage correction: R − ρ(R) = M(correction).
    pub fn rho_with_certificate(&self, r: &XRat) -> (XRat, XRat) {
        let n = self.nvars;
        if self.rows.is_empty() || r.is_zero() {
            return (r.clone(), XRat::zero(n));
        }
        let qr = XRat::from_poly(self.q.clone());
        let (poly, _) = (r * &qr).split_polynomial();
        let mut sub = XPoly::zero(n);
        let mut cert = XRat::zero(n);
        for (piv, row, y) in &self.rows {
            let c: KElem = poly.coeff(*piv);
            if c.is_zero() {
                continue;
            }
            sub = &sub + &row.scale(&c);
            cert = &cert + &y.scale(&c);
        }
        (r - &(&XRat::from_poly(sub) / &qr), cert)
    }

    pub fn rho(&self, r: &XRat) -> XRat {
        self.rho_with_certificate(r).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xr(cs: &[i64]) -> XRat {
        XRat::from_poly(XPoly::from_ints(0, cs))
    }

    #[test]
    fn single_generator_elimination() {
        let e = ExcBasis::new(0, vec![(xr(&[1, 1]), XRat::zero(0))]);
        assert_eq!(e.rho(&xr(&[0, 1])), xr(&[-1]));
        assert!(e.rho(&xr(&[2, 2])).is_zero());
    }

    #[test]
    fn rho_is_idempotent() {
        let e = ExcBasis::new(0, vec![(xr(&[1, 0, 1]), XRat::zero(0)), (xr(&[0, 1, 0, 3]), XRat::zero(0))]);
        let r = &xr(&[5, 4, 3, 2, 1]) + &XRat::new(XPoly::from_ints(0, &[1]), XPoly::from_ints(0, &[0, 1]));
        let a = e.rho(&r);
        assert_eq!(e.rho(&a), a);
        assert_eq!(e.dimension(), 2);
    }
}
