//! Squarefree factorization, partial fractions and inversion modulo P.

use super::{KElem, XPoly, XRat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfFactorization {
    pub unit: KElem,
    /// Monic, squarefree, pairwise coprime; multiplicities increase.
    pub factors: Vec<(XPoly, usize)>,
}

impl SqfFactorization {
    pub fn expand(&self) -> XPoly {
        let mut acc = XPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Yun's algorithm over K.
pub fn squarefree_factorization(p: &XPoly) -> SqfFactorization {
    assert!(!p.is_zero(), "squarefree factorization of zero");
    let unit = p.lc();
    let a = p.monic();
    let mut factors = Vec::new();
    if a.is_constant() {
        return SqfFactorization { unit, factors };
    }
    let b = a.derivative();
    let c = a.gcd(&b);
    let mut w = a.div_exact(&c).unwrap();
    let mut y = b.div_exact(&c).unwrap();
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while !w.is_constant() {
        let g = w.gcd(&z);
        if !g.is_constant() {
            factors.push((g.clone(), i));
        }
        w = w.div_exact(&g).unwrap();
        y = z.div_exact(&g).unwrap();
        z = &y - &w.derivative();
        i += 1;
    }
    SqfFactorization { unit, factors }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertMod {
    Inverse(XPoly),
    /// A monic proper divisor of P exposed by a zero divisor.
    ZeroDivisor(XPoly),
    /// U ≡ 0 mod P.
    Zero,
}

pub fn invert_mod(u: &XPoly, p: &XPoly) -> InvertMod {
    let u = u.rem(p);
    if u.is_zero() {
        return InvertMod::Zero;
    }
    let (g, s, _) = u.xgcd(p);
    if g.is_one() {
        InvertMod::Inverse(s.rem(p))
    } else {
        InvertMod::ZeroDivisor(g)
    }
}

/// `R = poly + Σ_P Σ_s U_s P^{-s}` with deg U_s < deg P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFraction {
    pub poly: XPoly,
    /// For each place, `U_1, U_2, …` (index s−1).
    pub parts: Vec<(XPoly, Vec<XPoly>)>,
}

impl PartialFraction {
    pub fn recombine(&self) -> XRat {
        let mut acc = XRat::from_poly(self.poly.clone());
        for (p, us) in &self.parts {
            for (i, u) in us.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                acc = &acc + &XRat::new(u.clone(), p.pow(i + 1));
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("factorization does not match the denominator")]
pub struct InconsistentFactorization;

/// `places` lists pairwise coprime monic polynomials with multiplicities whose
/// product is den(R).
pub fn partial_fraction(
    r: &XRat,
    places: &[(XPoly, usize)],
) -> Result<PartialFraction, InconsistentFactorization> {
    let n = r.nvars();
    let mut prod = XPoly::one(n);
    for (p, m) in places {
        prod = &prod * &p.pow(*m);
    }
    if &prod != r.den() {
        return Err(InconsistentFactorization);
    }
    for (i, (p, _)) in places.iter().enumerate() {
        if places[i + 1..].iter().any(|(q, _)| !p.gcd(q).is_one()) {
            return Err(InconsistentFactorization);
        }
    }
    Ok(partial_fraction_raw(r.num(), places))
}

/// Expansion of `num / Π P^m` for pairwise coprime places; `num` need not be
/// coprime to the product.
pub fn partial_fraction_raw(num: &XPoly, places: &[(XPoly, usize)]) -> PartialFraction {
    let n = num.nvars();
    let mut den = XPoly::one(n);
    for (p, m) in places {
        den = &den * &p.pow(*m);
    }
    let (poly, rest) = num.divrem(&den);
    let mut parts = Vec::with_capacity(places.len());
    for (p, m) in places {
        if places.len() == 1 {
            parts.push((p.clone(), expand_local(&rest, p, *m)));
            continue;
        }
        let d = p.pow(*m);
        let e = den.div_exact(&d).unwrap();
        let inv = match invert_mod(&e, &d) {
            InvertMod::Inverse(v) => v,
            _ => panic!("places are not pairwise coprime"),
        };
        let a = (&rest * &inv).rem(&d);
        parts.push((p.clone(), expand_local(&a, p, *m)));
    }
    PartialFraction { poly, parts }
}

/// a / P^m with deg a < m·deg P as Σ_{s=1..m} U_s P^{-s}.
fn expand_local(a: &XPoly, p: &XPoly, m: usize) -> Vec<XPoly> {
    let digits = a.p_adic(p);
    let mut us = vec![XPoly::zero(a.nvars()); m];
    for (j, c) in digits.into_iter().enumerate() {
        if j < m {
            us[m - 1 - j] = c;
        }
    }
    while us.last().map(|u| u.is_zero()).unwrap_or(false) {
        us.pop();
    }
    us
}
