//! Integer roots of polynomials in s with coefficients in K[x]/(P).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp;
use super::linalg::det;
use super::{KElem, Rat, XPoly};

/// q(s) = Σ coeffs[j]·s^j, coefficients reduced modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub modulus: XPoly,
    pub coeffs: Vec<XPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootsOutcome {
    Roots(Vec<i64>),
    /// Some value q(u) is a nonzero zero divisor; `g` is a proper divisor of the modulus.
    Split(XPoly),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootsError {
    #[error("integer roots requested for the zero polynomial")]
    ZeroPolynomial,
    #[error("no usable parameter specialization found")]
    NoGoodPoint,
}

const POINTS: usize = 3;
const MAX_TRIES: usize = 60;

impl ModPoly {
    pub fn new(modulus: XPoly, coeffs: Vec<XPoly>) -> Self {
        let mut coeffs: Vec<XPoly> = coeffs.into_iter().map(|c| c.rem(&modulus)).collect();
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    /// A polynomial in s over K, viewed modulo x.
    pub fn over_k(nvars: usize, coeffs: Vec<KElem>) -> Self {
        Self::new(XPoly::x(nvars), coeffs.into_iter().map(XPoly::constant).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, u: i64) -> XPoly {
        let n = self.modulus.nvars();
        let ku = KElem::from_int(n, u);
        let mut acc = XPoly::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(&ku) + c;
        }
        acc.rem(&self.modulus)
    }

    /// The integers u with q(u) ≡ 0, unless some q(u) is a proper zero divisor.
    ///
    /// Candidates come from the norm of q at random parameter points; every
    /// candidate is then checked exactly.
    pub fn integer_roots(&self, seed: u64) -> Result<RootsOutcome, RootsError> {
        if self.is_zero() {
            return Err(RootsError::ZeroPolynomial);
        }
        let mut g = self.modulus.clone();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_constant() {
                break;
            }
        }
        if !g.is_constant() {
            return Ok(RootsOutcome::Split(g));
        }
        if self.coeffs.len() == 1 {
            return Ok(RootsOutcome::Roots(Vec::new()));
        }
        let nvars = self.modulus.nvars();
        let wanted = if nvars == 0 { 1 } else { POINTS };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cands: Option<BTreeSet<i64>> = None;
        let mut good = 0;
        for _ in 0..MAX_TRIES {
            if good == wanted {
                break;
            }
            let point: Vec<Rat> =
                (0..nvars).map(|_| Rat::from_integer(rng.gen_range(-1000i64..=1000).into())).collect();
            let Some(norm) = self.specialized_norm(&point) else { continue };
            good += 1;
            let found: BTreeSet<i64> = integer_roots_q(&norm).into_iter().filter_map(|r| r.to_i64()).collect();
            cands = Some(match cands {
                None => found,
                Some(prev) => prev.intersection(&found).copied().collect(),
            });
        }
        if good < wanted {
            return Err(RootsError::NoGoodPoint);
        }
        let mut roots = Vec::new();
        for u in cands.unwrap_or_default() {
            let v = self.eval(u);
            if v.is_zero() {
                roots.push(u);
                continue;
            }
            let h = v.gcd(&self.modulus);
            if !h.is_constant() {
                return Ok(RootsOutcome::Split(h));
            }
        }
        Ok(RootsOutcome::Roots(roots))
    }

    /// Norm of q(u) over Q[x]/(P) at a parameter point, as a polynomial in u.
    fn specialized_norm(&self, point: &[Rat]) -> Option<Vec<Rat>> {
        let p = self.modulus.eval_params(point).ok()?;
        let cs: Vec<XPoly> = self.coeffs.iter().map(|c| c.eval_params(point)).collect::<Result<_, _>>().ok()?;
        let k = p.degree()?;
        let bound = k * (cs.len() - 1);
        let zero = Rat::zero();
        let mut values = Vec::with_capacity(bound + 1);
        for u in 0..=bound {
            let ku = KElem::from_int(0, u as i64);
            let mut v = XPoly::zero(0);
            for c in cs.iter().rev() {
                v = &v.scale(&ku) + c;
            }
            let v = v.rem(&p);
            let mut mat = vec![vec![zero.clone(); k]; k];
            let mut col = v;
            for j in 0..k {
                for (i, row) in mat.iter_mut().enumerate() {
                    row[j] = col.coeff(i).to_rat().unwrap();
                }
                col = col.mul_xk(1).rem(&p);
            }
            values.push(det(&mat, &zero));
        }
        let poly = interpolate(&values);
        if poly.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(poly)
        }
    }
}

/// Newton interpolation through (i, values[i]); coefficients lowest first.
fn interpolate(values: &[Rat]) -> Vec<Rat> {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rat::from_integer(BigInt::from(level));
        }
    }
    let mut poly = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        // poly = poly·(u − i) + dd[i]
        let mut next = vec![Rat::zero(); n];
        let shift = Rat::from_integer(BigInt::from(i));
        for j in 0..n {
            if poly[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &poly[j];
            }
            next[j] -= &poly[j] * &shift;
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Integer roots of a polynomial over Q (lowest degree first), sorted.
pub fn integer_roots_q(coeffs: &[Rat]) -> Vec<BigInt> {
    let mut cs = coeffs.to_vec();
    while cs.last().map(|c| c.is_zero()).unwrap_or(false) {
        cs.pop();
    }
    if cs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let lead = cs.iter().position(|c| !c.is_zero()).unwrap();
    if lead > 0 {
        roots.push(BigInt::zero());
        cs.drain(..lead);
    }
    if cs.len() > 1 {
        let f = XPoly::from_rats(0, &cs);
        let g = f.gcd(&f.derivative());
        let sf = f.div_exact(&g).unwrap().to_rats().unwrap();
        let ints = to_integer_coeffs(&sf);
        roots.extend(hensel_roots(&ints));
    }
    roots.sort();
    roots.dedup();
    roots
}

fn to_integer_coeffs(cs: &[Rat]) -> Vec<BigInt> {
    let l = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_int(f: &[BigInt], u: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * u + c)
}

/// Integer roots of a squarefree integer polynomial with nonzero constant term.
fn hensel_roots(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    if n == 1 {
        let (q, r) = (-&f[0]).div_rem(&f[1]);
        return if r.is_zero() { vec![q] } else { Vec::new() };
    }
    let an = f[n].abs();
    let maxc = f[..n].iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::one() + maxc.div_ceil(&an);
    let p = choose_prime(f);
    let pb = BigInt::from(p);
    let fp: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    let dfp = fp::derivative(&fp, p);
    let mut out = Vec::new();
    for r0 in 0..p {
        if fp::eval(&fp, r0, p) != 0 {
            continue;
        }
        let d = fp::eval(&dfp, r0, p);
        let inv = BigInt::from(fp::inv(d, p));
        let mut r = BigInt::from(r0);
        let mut pk = pb.clone();
        let limit = &bound * 2;
        while pk <= limit {
            let v = eval_int(f, &r);
            let q = v / &pk;
            let t = (-q * &inv).mod_floor(&pb);
            r += t * &pk;
            pk *= &pb;
        }
        let half = &pk / 2;
        if r > half {
            r -= &pk;
        }
        if eval_int(f, &r).is_zero() {
            out.push(r);
        }
    }
    out
}

fn choose_prime(f: &[BigInt]) -> u64 {
    let n = f.len() - 1;
    let mut p = 101u64;
    loop {
        if fp::is_prime(p) {
            let pb = BigInt::from(p);
            if !f[n].mod_floor(&pb).is_zero() {
                let fp: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
                let g = fp::gcd(fp.clone(), fp::derivative(&fp, p), p);
                if g.len() == 1 {
                    return p;
                }
            }
        }
        p += 2;
    }
}
