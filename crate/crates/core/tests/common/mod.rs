#![allow(dead_code)]

pub mod qpoly;

use hermite_telescope::diffop::DiffOp;
use hermite_telescope::field::{KElem, MPoly, Rat, XPoly, XRat};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn xp(cs: &[i64]) -> XPoly {
    XPoly::from_ints(0, cs)
}

pub fn xr(cs: &[i64]) -> XRat {
    XRat::from_poly(xp(cs))
}

/// Small random element of Q[t_1..t_e] (constant when e = 0).
pub fn rand_mpoly(rng: &mut ChaCha8Rng, e: usize, height: i64) -> MPoly {
    let mut p = MPoly::from_int(e, rng.gen_range(-height..=height));
    for v in 0..e {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-height..=height);
            p = p.add(&MPoly::var(e, v).scale(&q(c)));
        }
    }
    p
}

pub fn rand_kelem(rng: &mut ChaCha8Rng, e: usize, height: i64) -> KElem {
    let num = rand_mpoly(rng, e, height);
    if e == 0 || rng.gen_bool(0.6) {
        return KElem::from_poly(num);
    }
    let mut den = rand_mpoly(rng, e, height);
    if den.is_zero() {
        den = MPoly::one(e);
    }
    KElem::new(num, den)
}

pub fn rand_xpoly(rng: &mut ChaCha8Rng, e: usize, deg: usize, height: i64) -> XPoly {
    let cs = (0..=deg).map(|_| rand_kelem(rng, e, height)).collect();
    XPoly::from_coeffs(e, cs)
}

pub fn rand_nonzero_xpoly(rng: &mut ChaCha8Rng, e: usize, deg: usize, height: i64) -> XPoly {
    loop {
        let p = rand_xpoly(rng, e, deg, height);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random monic polynomial of exact degree `deg` with rational coefficients.
pub fn rand_monic(rng: &mut ChaCha8Rng, e: usize, deg: usize, height: i64) -> XPoly {
    let mut cs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-height..=height)).collect();
    cs.push(1);
    XPoly::from_ints(e, &cs)
}

pub fn rand_monic_q(rng: &mut ChaCha8Rng, deg: usize, height: i64) -> XPoly {
    rand_monic(rng, 0, deg, height)
}

/// Random rational function whose denominator is a product of small powers.
pub fn rand_xrat(rng: &mut ChaCha8Rng, e: usize, num_deg: usize, den_deg: usize, height: i64) -> XRat {
    let num = rand_xpoly(rng, e, num_deg, height);
    let mut den = XPoly::one(e);
    let mut left = den_deg;
    while left > 0 {
        let d = rng.gen_range(1..=left.min(2));
        let f = rand_monic(rng, e, d, height);
        let m = rng.gen_range(1..=(left / d).min(3));
        den = &den * &f.pow(m);
        left -= d * m;
    }
    XRat::new(num, den)
}

/// Operator of order r with polynomial coefficients of degree ≤ d.
pub fn rand_op(rng: &mut ChaCha8Rng, e: usize, r: usize, d: usize, height: i64) -> DiffOp {
    let mut cs: Vec<XPoly> = Vec::new();
    for _ in 0..r {
        let k = rng.gen_range(0..=d);
        cs.push(rand_xpoly(rng, e, k, height));
    }
    let k = rng.gen_range(0..=d);
    cs.push(rand_nonzero_xpoly(rng, e, k, height));
    DiffOp::from_poly_coeffs(e, cs)
}

/// K-rank of a family of rational functions.
pub fn span_rank(fs: &[XRat]) -> usize {
    use hermite_telescope::field::linalg::rank;
    if fs.is_empty() {
        return 0;
    }
    let n = fs[0].nvars();
    let mut den = XPoly::one(n);
    for f in fs {
        let g = den.gcd(f.den());
        den = &den * &f.den().div_exact(&g).unwrap();
    }
    let d = XRat::from_poly(den);
    let nums: Vec<XPoly> = fs.iter().map(|f| (f * &d).as_poly().unwrap().clone()).collect();
    let rows = nums.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let m: Vec<Vec<KElem>> = (0..rows).map(|i| nums.iter().map(|p| p.coeff(i)).collect()).collect();
    rank(&m)
}

/// (x²−1)∂² + (x − 2p(x²−1))∂ + p²(x²−1) − px − n² over Q(n, p).
pub fn m_sample() -> DiffOp {
    let k = |c: i64| KElem::from_int(2, c);
    let n = KElem::var(2, 0);
    let p = KElem::var(2, 1);
    let xp2 = |cs: Vec<KElem>| XPoly::from_coeffs(2, cs);
    let x2m1 = xp2(vec![k(-1), k(0), k(1)]);
    let c1 = &xp2(vec![k(0), k(1)]) - &x2m1.scale(&(&p * &k(2)));
    let c0 = &(&x2m1.scale(&(&p * &p)) - &xp2(vec![k(0), p.clone()])) - &xp2(vec![&n * &n]);
    DiffOp::from_poly_coeffs(2, vec![c0, c1, x2m1])
}
