//! Sparse multivariate polynomials over Q in the parameters t₁,…,t_e.
//!
//! Terms are kept sorted by decreasing graded-lex order (total degree first,
//! then lexicographic with t₁ the largest variable). No zero coefficient is
//! ever stored.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fp, Rat};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: Vec<(Exponent, Rat)>,
}

pub fn cmp_grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (v, k) in e.iter().enumerate() {
                if *k > 0 {
                    write!(f, "*t{}^{}", v + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

fn sort_and_merge(nvars: usize, mut terms: Vec<(Exponent, Rat)>) -> MPoly {
    terms.sort_by(|a, b| cmp_grlex(&b.0, &a.0));
    let mut out: Vec<(Exponent, Rat)> = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    MPoly { nvars, terms: out }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rat::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly { nvars, terms: vec![(e, Rat::one())] }
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rat) -> Self {
        debug_assert_eq!(exp.len(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MPoly { nvars, terms: vec![(exp, c)] }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Exponent, Rat)>) -> Self {
        sort_and_merge(nvars, terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponent, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lc(&self) -> Rat {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn lm(&self) -> Option<&Exponent> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match cmp_grlex(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { nvars: self.nvars, terms: out }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(self.nvars);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        sort_and_merge(self.nvars, terms)
    }

    pub fn mul_term(&self, exp: &[u32], c: &Rat) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.iter().zip(exp).map(|(x, y)| x + y).collect(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = (&d.terms[0].0, &d.terms[0].1);
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.terms.first().cloned() {
            if m.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponent = m.iter().zip(dm).map(|(a, b)| a - b).collect();
            let k = &c / dc;
            r = r.sub(&d.mul_term(&e, &k));
            q.push((e, k));
        }
        Some(MPoly { nvars: self.nvars, terms: q })
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[v].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitution t_v ↦ t_v + 1.
    pub fn shift_var(&self, v: usize) -> MPoly {
        if !self.uses_var(v) {
            return self.clone();
        }
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            let k = e[v];
            let mut binom = BigInt::one();
            for j in 0..=k {
                let mut ne = e.clone();
                ne[v] = j;
                terms.push((ne, c * Rat::from_integer(binom.clone())));
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        sort_and_merge(self.nvars, terms)
    }

    pub fn derivative(&self, v: usize) -> MPoly {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut ne = e.clone();
                ne[v] -= 1;
                terms.push((ne, c * Rat::from_integer(BigInt::from(e[v]))));
            }
        }
        sort_and_merge(self.nvars, terms)
    }

    /// Coefficients with respect to `v`, lowest degree first; `v` is zeroed in
    /// the coefficient exponents.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exponent, Rat)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[v] as usize;
            ne[v] = 0;
            buckets[k].push((ne, c.clone()));
        }
        buckets.into_iter().map(|t| sort_and_merge(self.nvars, t)).collect()
    }

    pub fn from_univariate(nvars: usize, v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, r) in &c.terms {
                let mut ne = e.clone();
                ne[v] += k as u32;
                terms.push((ne, r.clone()));
            }
        }
        sort_and_merge(nvars, terms)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn coeff_denominator_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Gcd of the coefficient numerators (assumes integral coefficients).
    pub fn integer_content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
    }

    pub fn lc_is_negative(&self) -> bool {
        self.terms.first().map(|t| t.1.is_negative()).unwrap_or(false)
    }

    /// Monic associate (leading coefficient 1), zero stays zero.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Greatest common divisor, normalized monic.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return gcd_rec(self, other).monic();
        }
        let bounds = degree_bounds(self, other);
        if bounds.iter().all(|&d| d == 0) {
            return MPoly::one(self.nvars);
        }
        if let Some(h) = heuristic_gcd(self, other) {
            // h divides the gcd; matching degree bounds make it the gcd
            if (0..self.nvars).all(|v| h.degree_in(v) == bounds[v]) {
                return h.monic();
            }
        }
        gcd_rec(self, other).monic()
    }
}

const IMAGE_PRIME: u64 = 2_147_483_629;

fn rat_mod_p(c: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = c.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = c.numer().mod_floor(&pb).to_u64()?;
    Some(n * fp::inv(d, p) % p)
}

/// Image in F_p[t_v] with the other variables evaluated at `pt`.
fn image_in(a: &MPoly, v: usize, pt: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut out = vec![0u64; a.degree_in(v) as usize + 1];
    for (e, c) in &a.terms {
        let mut t = rat_mod_p(c, p)?;
        for (w, &k) in e.iter().enumerate() {
            if w != v {
                t = t * fp::pow(pt[w], k as u64, p) % p;
            }
        }
        let slot = &mut out[e[v] as usize];
        *slot = (*slot + t) % p;
    }
    Some(out)
}

/// Upper bounds for the degree of gcd(a, b) in each variable. For each
/// variable the others are specialized mod p; when the leading coefficients
/// survive, the image gcd is a multiple of the image of the true gcd.
fn degree_bounds(a: &MPoly, b: &MPoly) -> Vec<u32> {
    let p = IMAGE_PRIME;
    (0..a.nvars)
        .map(|v| {
            let (da, db) = (a.degree_in(v), b.degree_in(v));
            if da == 0 || db == 0 {
                return 0;
            }
            for attempt in 0..3u64 {
                let pt: Vec<u64> = (0..a.nvars as u64).map(|w| (w + 3 + 7 * attempt) * 1_000_003 % p).collect();
                let (Some(ia), Some(ib)) = (image_in(a, v, &pt, p), image_in(b, v, &pt, p)) else {
                    continue;
                };
                if ia[da as usize] == 0 || ib[db as usize] == 0 {
                    continue;
                }
                return (fp::gcd(ia, ib, p).len() - 1) as u32;
            }
            da.min(db)
        })
        .collect()
}

type ZTerms = Vec<(Exponent, BigInt)>;

fn to_integer_terms(a: &MPoly) -> ZTerms {
    let l = a.coeff_denominator_lcm();
    a.terms.iter().map(|(e, c)| (e.clone(), (c * &l).to_integer())).collect()
}

fn z_norm(a: &ZTerms) -> BigInt {
    a.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

fn z_eval(a: &ZTerms, v: usize, xi: &BigInt) -> ZTerms {
    let mut m: std::collections::BTreeMap<Exponent, BigInt> = std::collections::BTreeMap::new();
    for (e, c) in a {
        let mut e2 = e.clone();
        e2[v] = 0;
        *m.entry(e2).or_default() += c * xi.pow(e[v]);
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Symmetric ξ-adic expansion of every coefficient into powers of t_v.
fn z_interpolate(phi: &ZTerms, v: usize, xi: &BigInt) -> ZTerms {
    let half = xi >> 1;
    let mut out = Vec::new();
    for (e, c) in phi {
        let mut c = c.clone();
        let mut k = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mut e2 = e.clone();
                e2[v] = k;
                out.push((e2, d.clone()));
            }
            c = (c - d) / xi;
            k += 1;
        }
    }
    out
}

fn z_to_mpoly(nvars: usize, a: ZTerms) -> MPoly {
    sort_and_merge(nvars, a.into_iter().map(|(e, c)| (e, Rat::from_integer(c))).collect())
}

/// Heuristic gcd by evaluation at large integers, checked by trial division
/// at every level.
fn heuristic_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let n = a.nvars;
    let g = z_heu(n, &to_integer_terms(a), &to_integer_terms(b))?;
    Some(z_to_mpoly(n, g))
}

fn z_content(a: &ZTerms) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
}

fn z_heu(n: usize, a: &ZTerms, b: &ZTerms) -> Option<ZTerms> {
    let (ca, cb) = (z_content(a), z_content(b));
    let c = ca.gcd(&cb);
    let var = (0..n).rev().find(|&v| a.iter().chain(b).any(|(e, _)| e[v] > 0));
    let Some(v) = var else {
        return Some(vec![(vec![0; n], c)]);
    };
    let a: ZTerms = a.iter().map(|(e, x)| (e.clone(), x / &ca)).collect();
    let b: ZTerms = b.iter().map(|(e, x)| (e.clone(), x / &cb)).collect();
    let mut xi: BigInt = z_norm(&a).min(z_norm(&b)) * 2 + 29;
    for _ in 0..6 {
        let (ea, eb) = (z_eval(&a, v, &xi), z_eval(&b, v, &xi));
        if !ea.is_empty() && !eb.is_empty() {
            if let Some(phi) = z_heu(n, &ea, &eb) {
                let h = z_interpolate(&phi, v, &xi);
                let ic = z_content(&h);
                if !ic.is_zero() {
                    let h: ZTerms = h.into_iter().map(|(e, x)| (e, x / &ic)).collect();
                    if z_divides(n, &h, &a, &b) {
                        return Some(h.into_iter().map(|(e, x)| (e, x * &c)).collect());
                    }
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

fn z_divides(n: usize, h: &ZTerms, a: &ZTerms, b: &ZTerms) -> bool {
    let hm = z_to_mpoly(n, h.clone());
    z_to_mpoly(n, a.clone()).div_exact(&hm).is_some() && z_to_mpoly(n, b.clone()).div_exact(&hm).is_some()
}

fn vars_used(p: &MPoly) -> Vec<bool> {
    (0..p.nvars).map(|v| p.uses_var(v)).collect()
}

fn content_wrt(p: &MPoly, v: usize, start: MPoly) -> MPoly {
    let mut g = start;
    for c in p.to_univariate(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars;
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    if a.terms.len() == 1 && b.terms.len() == 1 {
        let e: Exponent = a.terms[0].0.iter().zip(&b.terms[0].0).map(|(x, y)| *x.min(y)).collect();
        return MPoly::monomial(n, e, Rat::one());
    }
    if a.total_degree() <= b.total_degree() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    let ua = vars_used(a);
    let ub = vars_used(b);
    for v in 0..n {
        if ua[v] && !ub[v] {
            return content_wrt(a, v, b.clone());
        }
        if ub[v] && !ua[v] {
            return content_wrt(b, v, a.clone());
        }
    }
    // same variable support; pick the variable of smallest degree
    let v = (0..n)
        .filter(|&v| ua[v])
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial uses some variable");
    let pa = a.to_univariate(v);
    let pb = b.to_univariate(v);
    let ca = univ_content(&pa);
    let cb = univ_content(&pb);
    let gc = gcd_rec(&ca, &cb);
    let pa: Vec<MPoly> = pa.iter().map(|c| c.div_exact(&ca).unwrap()).collect();
    let pb: Vec<MPoly> = pb.iter().map(|c| c.div_exact(&cb).unwrap()).collect();
    let g = subresultant_gcd(pa, pb);
    let cg = univ_content(&g);
    let g: Vec<MPoly> = g.iter().map(|c| c.div_exact(&cg).unwrap()).collect();
    MPoly::from_univariate(n, v, &g).mul(&gc)
}

fn univ_content(p: &[MPoly]) -> MPoly {
    let n = p[0].nvars;
    let mut g = MPoly::zero(n);
    for c in p {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return MPoly::one(n);
        }
    }
    if g.is_zero() {
        MPoly::one(n)
    } else {
        g
    }
}

fn trim(p: &mut Vec<MPoly>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn is_zero_univ(p: &[MPoly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder lc(b)^(deg a − deg b + 1) · a mod b.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    let mut e = (a.len() - 1) as i64 - db as i64 + 1;
    trim(&mut r);
    while !is_zero_univ(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(lb)).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bc.mul(&lr));
        }
        next.pop();
        r = next;
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    r
}

fn subresultant_gcd(mut a: Vec<MPoly>, mut b: Vec<MPoly>) -> Vec<MPoly> {
    let n = a[0].nvars;
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if is_zero_univ(&r) {
            return b;
        }
        if r.len() == 1 {
            return vec![MPoly::one(n)];
        }
        let denom = g.mul(&h.pow(delta));
        a = b;
        b = r.iter().map(|c| c.div_exact(&denom).expect("subresultant division")).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h update")
        };
    }
}
