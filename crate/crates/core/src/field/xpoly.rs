//! Dense univariate polynomials in x over K.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{fp, BadPoint, KElem, MPoly, Rat};

/// Coefficients lowest degree first; the last stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XPoly {
    nvars: usize,
    coeffs: Vec<KElem>,
}

impl XPoly {
    pub fn zero(nvars: usize) -> Self {
        XPoly { nvars, coeffs: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(KElem::one(nvars))
    }

    pub fn x(nvars: usize) -> Self {
        Self::monomial(KElem::one(nvars), 1)
    }

    pub fn constant(c: KElem) -> Self {
        let nvars = c.nvars();
        Self::from_coeffs(nvars, vec![c])
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(KElem::from_int(nvars, c))
    }

    pub fn monomial(c: KElem, k: usize) -> Self {
        let nvars = c.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        let mut coeffs = vec![KElem::zero(nvars); k];
        coeffs.push(c);
        XPoly { nvars, coeffs }
    }

    pub fn from_coeffs(nvars: usize, mut coeffs: Vec<KElem>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        XPoly { nvars, coeffs }
    }

    /// Integer-coefficient convenience constructor, lowest degree first.
    pub fn from_ints(nvars: usize, cs: &[i64]) -> Self {
        Self::from_coeffs(nvars, cs.iter().map(|&c| KElem::from_int(nvars, c)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> KElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| KElem::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with −1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> KElem {
        self.coeffs.last().cloned().unwrap_or_else(|| KElem::zero(self.nvars))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn scale(&self, c: &KElem) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        XPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> XPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn mul_xk(&self, k: usize) -> XPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![KElem::zero(self.nvars); k];
        coeffs.extend(self.coeffs.iter().cloned());
        XPoly { nvars: self.nvars, coeffs }
    }

    pub fn pow(&self, e: usize) -> XPoly {
        let mut r = XPoly::one(self.nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn derivative(&self) -> XPoly {
        if self.coeffs.len() <= 1 {
            return XPoly::zero(self.nvars);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_rat(&Rat::from_integer((k as i64).into())))
            .collect();
        XPoly::from_coeffs(self.nvars, coeffs)
    }

    /// Euclidean division over K.
    pub fn divrem(&self, b: &XPoly) -> (XPoly, XPoly) {
        assert!(!b.is_zero(), "division by zero polynomial in K[x]");
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (XPoly::zero(self.nvars), self.clone());
        }
        let inv = b.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![KElem::zero(self.nvars); r.len() - db];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] * &inv;
            for (j, bj) in b.coeffs.iter().enumerate().take(db) {
                if !bj.is_zero() {
                    r[k - db + j] = &r[k - db + j] - &(&c * bj);
                }
            }
            r[k] = KElem::zero(self.nvars);
            q[k - db] = c;
        }
        r.truncate(db);
        (XPoly::from_coeffs(self.nvars, q), XPoly::from_coeffs(self.nvars, r))
    }

    pub fn rem(&self, b: &XPoly) -> XPoly {
        if self.coeffs.len() < b.coeffs.len() {
            return self.clone();
        }
        self.divrem(b).1
    }

    pub fn div_exact(&self, b: &XPoly) -> Option<XPoly> {
        let (q, r) = self.divrem(b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, b: &XPoly) -> XPoly {
        if !self.is_zero() && !b.is_zero() && !self.is_constant() && !b.is_constant() {
            if self.nvars == 0 {
                let g = primitive_prs_gcd(&self.to_rats().unwrap(), &b.to_rats().unwrap());
                return XPoly::from_rats(0, &g).monic();
            }
            // primitive gcd in Q[t, x]; Euclid over Q(t) swells
            let g = self.to_mpoly().gcd(&b.to_mpoly());
            return XPoly::from_mpoly(self.nvars, &g).monic();
        }
        let mut a = self.monic();
        let mut b = b.monic();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return XPoly::one(self.nvars);
            }
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Clears denominators and views x as one more variable (the last).
    fn to_mpoly(&self) -> MPoly {
        let n = self.nvars;
        let mut l = MPoly::one(n);
        for c in &self.coeffs {
            let g = l.gcd(c.den());
            l = l.mul(&c.den().div_exact(&g).unwrap());
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let scaled = c.num().mul(&l.div_exact(c.den()).unwrap());
            for (e, r) in scaled.terms() {
                let mut ne = e.clone();
                ne.push(k as u32);
                terms.push((ne, r.clone()));
            }
        }
        MPoly::from_terms(n + 1, terms)
    }

    fn from_mpoly(n: usize, p: &MPoly) -> XPoly {
        let cs = p
            .to_univariate(n)
            .into_iter()
            .map(|c| {
                let terms = c.terms().iter().map(|(e, r)| (e[..n].to_vec(), r.clone())).collect();
                KElem::from_poly(MPoly::from_terms(n, terms))
            })
            .collect();
        XPoly::from_coeffs(n, cs)
    }

    /// Extended gcd: `g = u·self + v·b` with `g` monic.
    pub fn xgcd(&self, b: &XPoly) -> (XPoly, XPoly, XPoly) {
        let n = self.nvars;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (XPoly::one(n), XPoly::zero(n));
        let (mut t0, mut t1) = (XPoly::zero(n), XPoly::one(n));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Value at x = c.
    pub fn eval_at(&self, c: &KElem) -> KElem {
        let mut acc = KElem::zero(self.nvars);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * c) + a;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&KElem) -> KElem) -> XPoly {
        let nv = self.coeffs.first().map(|c| f(c).nvars()).unwrap_or(self.nvars);
        XPoly::from_coeffs(nv, self.coeffs.iter().map(f).collect())
    }

    pub fn eval_params(&self, point: &[Rat]) -> Result<XPoly, BadPoint> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval(point).map(|v| KElem::from_rat(0, v)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(XPoly::from_coeffs(0, coeffs))
    }

    /// Rational coefficients, lowest degree first (parameter-free polynomials).
    pub fn to_rats(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(|c| c.to_rat()).collect()
    }

    pub fn from_rats(nvars: usize, cs: &[Rat]) -> XPoly {
        XPoly::from_coeffs(nvars, cs.iter().map(|c| KElem::from_rat(nvars, c.clone())).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// `self` expanded in powers of `p`: self = Σ c_j p^j with deg c_j < deg p.
    pub fn p_adic(&self, p: &XPoly) -> Vec<XPoly> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.divrem(p);
            out.push(r);
            cur = q;
        }
        out
    }
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn add(self, o: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let c = match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        XPoly::from_coeffs(self.nvars, coeffs)
    }
}

impl<'a> Sub<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn sub(self, o: &XPoly) -> XPoly {
        self + &(-o)
    }
}

impl<'a> Neg for &'a XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn mul(self, o: &XPoly) -> XPoly {
        if self.is_zero() || o.is_zero() {
            return XPoly::zero(self.nvars);
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![KElem::zero(self.nvars); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        XPoly::from_coeffs(self.nvars, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<XPoly> for XPoly {
            type Output = XPoly;
            fn $m(self, o: XPoly) -> XPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// gcd over Q: modular images combined by CRT, confirmed by trial division.
fn primitive_prs_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let a = primitive_int(a);
    let b = primitive_int(b);
    let g = modular_gcd(&a, &b);
    g.into_iter().map(Rat::from_integer).collect()
}

fn mod_poly(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    fp::trim(&mut v);
    v
}

/// Exact quotient test over Z: does `d` divide `a`?
fn divides_z(d: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let ld = d.last().unwrap();
    while r.len() > dd {
        let (q, rem) = r.last().unwrap().div_rem(ld);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - 1 - dd;
        for (k, c) in d.iter().enumerate() {
            r[k + shift] -= c * &q;
        }
        r.pop();
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    r.is_empty()
}

fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut prime = 1 << 31;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    loop {
        prime = fp::prev_prime(prime);
        let p = prime;
        let pb = BigInt::from(p);
        if (&gamma % &pb).is_zero() {
            continue;
        }
        let (am, bm) = (mod_poly(a, p), mod_poly(b, p));
        if am.len() != a.len() || bm.len() != b.len() {
            continue;
        }
        let g = fp::monic(&fp::gcd(am, bm, p), p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let gm = mod_poly(&[gamma.clone()], p).first().copied().unwrap_or(0);
        let img: Vec<u64> = g.iter().map(|c| c * gm % p).collect();
        if acc.is_empty() || img.len() < acc.len() {
            // first image, or all earlier primes were unlucky
            acc = img.into_iter().map(BigInt::from).collect();
            modulus = pb;
        } else if img.len() > acc.len() {
            continue;
        } else {
            // CRT: x ≡ acc (mod modulus), x ≡ img (mod p)
            let inv = BigInt::from(fp::inv((&modulus % &pb).to_u64().unwrap(), p));
            for (c, i) in acc.iter_mut().zip(img) {
                let t = ((BigInt::from(i) - &*c) * &inv).mod_floor(&pb);
                *c += &modulus * t;
            }
            modulus *= pb;
        }
        let half = &modulus >> 1;
        let cand: Vec<BigInt> =
            acc.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect();
        let cand = primitive_part(cand);
        if divides_z(&cand, a) && divides_z(&cand, b) {
            return cand;
        }
    }
}

/// Primitive integer form, lowest degree first, trailing zeros removed.
fn primitive_int(p: &[Rat]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    primitive_part(v)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            return v;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(cs: &[i64]) -> XPoly {
        XPoly::from_ints(0, cs)
    }

    #[test]
    fn gcd_divisor_case() {
        assert_eq!(xp(&[-1, 0, 1]).gcd(&xp(&[-1, 1])), xp(&[-1, 1]));
    }

    #[test]
    fn gcd_with_large_coefficients() {
        // the common factor needs several primes to reconstruct
        let big = xp(&[999_999_937, -123_456_789_011, 1]).pow(3);
        let a = &big * &xp(&[5, 0, 7]);
        let b = &big * &xp(&[-3, 2]);
        assert_eq!(a.gcd(&b), big.monic());
        let c = &xp(&[1, 1]).pow(7) * &xp(&[2, 0, 3]);
        assert!(c.gcd(&xp(&[-1, 1]).pow(4)).is_one());
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = xp(&[1, 0, 1]);
        let b = xp(&[0, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert!(g.is_one());
        assert_eq!(&(&u * &a) + &(&v * &b), XPoly::one(0));
    }

    #[test]
    fn xgcd_with_zero_operand() {
        let (g, u, v) = XPoly::zero(0).xgcd(&xp(&[2, 1]));
        assert_eq!(g, xp(&[2, 1]));
        assert_eq!(&(&u * &XPoly::zero(0)) + &(&v * &xp(&[2, 1])), g);
    }

    #[test]
    fn p_adic_expansion_recombines() {
        let p = xp(&[1, 0, 1]);
        let w = xp(&[3, -1, 4, 1, 5, 9, 2]);
        let parts = w.p_adic(&p);
        let mut acc = XPoly::zero(0);
        for (j, c) in parts.iter().enumerate() {
            assert!(c.deg() < 2);
            acc = &acc + &(c * &p.pow(j));
        }
        assert_eq!(acc, w);
    }
}
