//! Independent checks: preimages by undetermined coefficients, and the
//! dimension bound for reductions supported at one place.

use crate::diffop::{local_data_infinity, DiffOp};
use crate::field::linalg::solve;
use crate::field::{KElem, XPoly, XRat};

/// Some U with M(U) = R, searched with denominator (den(R)·c_r)^bound and a
/// generous numerator degree; None if the ansatz space has no solution.
pub fn brute_force_preimage(m: &DiffOp, r: &XRat, bound: usize) -> Option<XRat> {
    let n = m.nvars();
    if r.is_zero() {
        return Some(XRat::zero(n));
    }
    let (mp, q) = m.poly_normalize();
    let pc = mp.poly_coeffs()?;
    let lead = pc.last()?.monic();
    let d = (r.den() * &lead).pow(bound);
    let sigma = local_data_infinity(&mp).ok()?.sigma;
    let deg_n = d.deg() as usize + bound + r.num().deg() as usize + r.den().deg() as usize + sigma.unsigned_abs() as usize;
    let order = mp.order();
    let dr = d.pow(order + 1);
    let g = dr.gcd(r.den());
    let e = &dr * &r.den().div_exact(&g).unwrap();
    let er = XRat::from_poly(e);
    let dd = XRat::from_poly(d.clone());
    let mut cols: Vec<XPoly> = Vec::with_capacity(deg_n + 1);
    for j in 0..=deg_n {
        let b = &XRat::from_poly(XPoly::monomial(KElem::one(n), j)) / &dd;
        let img = &mp.apply(&b) * &er;
        cols.push(img.as_poly()?.clone());
    }
    let rhs = (r * &er).as_poly()?.clone();
    let rows = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0).max(rhs.coeffs().len());
    let mat: Vec<Vec<KElem>> = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let b: Vec<KElem> = (0..rows).map(|i| rhs.coeff(i)).collect();
    let sol = solve(&mat, &b, deg_n + 1, &KElem::zero(n))?;
    let num = XPoly::from_coeffs(n, sol);
    let u = &XRat::new(num, d) * &XRat::from_poly(q);
    debug_assert_eq!(&m.apply(&u), r);
    Some(u)
}

/// (deg P + 1)·r + d.
pub fn quotient_dimension_bound(m: &DiffOp, p: &XPoly) -> usize {
    (p.deg().max(0) as usize + 1) * m.order() + m.max_coeff_degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(cs: &[i64]) -> XPoly {
        XPoly::from_ints(0, cs)
    }

    #[test]
    fn antiderivative_of_inverse_square() {
        let r = XRat::new(xp(&[-1]), xp(&[0, 0, 1]));
        let u = brute_force_preimage(&DiffOp::dx(0), &r, 2).unwrap();
        assert_eq!(DiffOp::dx(0).apply(&u), r);
    }

    #[test]
    fn logarithm_is_not_rational() {
        let r = XRat::new(xp(&[1]), xp(&[0, 1]));
        for b in 0..4 {
            assert!(brute_force_preimage(&DiffOp::dx(0), &r, b).is_none());
        }
    }

    #[test]
    fn dimension_bounds() {
        assert_eq!(quotient_dimension_bound(&DiffOp::dx(0), &xp(&[0, 1])), 2);
        let m = DiffOp::from_poly_coeffs(0, vec![XPoly::zero(0), XPoly::monomial(KElem::one(0), 10)]);
        assert_eq!(quotient_dimension_bound(&m, &xp(&[0, 1])), 12);
    }
}
