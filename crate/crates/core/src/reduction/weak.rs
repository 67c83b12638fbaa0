//! Rational weak Hermite reduction, place by place and at infinity.

use crate::diffop::{local_data_ordinary, LocalDataFinite, LocalDataInfinity};
use crate::error::Error;
use crate::field::{invert_mod, partial_fraction_raw, squarefree_factorization, InvertMod, KElem, XPoly, XRat};

/// A finite place with its local data and the integer roots of its indicial polynomial.
#[derive(Clone, Debug)]
pub struct Place {
    pub data: LocalDataFinite,
    pub roots: Vec<i64>,
}

impl Place {
    pub fn poly(&self) -> &XPoly {
        &self.data.place
    }

    pub fn sigma(&self) -> i64 {
        self.data.sigma
    }

    /// ind(u) ≡ 0 mod P.
    pub fn ind_vanishes(&self, u: i64) -> bool {
        self.roots.binary_search(&u).is_ok()
    }
}

/// Everything the weak reduction needs about a polynomial operator.
#[derive(Clone, Debug)]
pub struct WeakContext {
    pub coeffs: Vec<XPoly>,
    pub places: Vec<Place>,
    pub inf: LocalDataInfinity,
    pub inf_roots: Vec<i64>,
}

/// Terms left over by the weak reduction.
#[derive(Clone, Debug, Default)]
pub struct WeakDetail {
    /// (place, σ, [(pole order t, U)]) with U reduced mod the place.
    pub polar: Vec<(XPoly, i64, Vec<(usize, XPoly)>)>,
    /// (degree, coefficient) of the kept polynomial part.
    pub poly: Vec<(usize, KElem)>,
}

impl WeakContext {
    fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// M(v·P^{−k}) = W / P^{k+r}; returns W.
    fn image_numerator(&self, v: &XPoly, p: &XPoly, k: i64) -> XPoly {
        let dp = p.derivative();
        let r = self.order();
        let n = self.nvars();
        let mut ni = v.clone();
        let mut w = XPoly::zero(n);
        for (i, pi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let kk = KElem::from_int(n, k + i as i64 - 1);
                ni = &(&ni.derivative() * p) - &(&ni * &dp).scale(&kk);
            }
            if !pi.is_zero() {
                w = &w + &(&(pi * &ni) * &p.pow(r - i));
            }
        }
        w
    }

    pub fn apply_poly(&self, f: &XPoly) -> XPoly {
        let mut acc = XPoly::zero(self.nvars());
        let mut d = f.clone();
        for (i, pi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                d = d.derivative();
            }
            if d.is_zero() {
                break;
            }
            acc = &acc + &(pi * &d);
        }
        acc
    }

    /// Splits den(R) into registered places, with multiplicities, and Yun
    /// factors of the remainder (which are ordinary places).
    fn decompose(&self, den: &XPoly) -> Result<(Vec<(Place, usize)>, XPoly), Error> {
        let mut rest = den.clone();
        let mut out = Vec::new();
        for pl in &self.places {
            let mut m = 0;
            loop {
                let g = rest.gcd(pl.poly());
                if g.is_constant() {
                    break;
                }
                rest = rest.div_exact(&g).unwrap();
                m += 1;
            }
            if m > 0 {
                out.push((pl.clone(), m));
            }
        }
        let r = self.order();
        let lead = &self.coeffs[r];
        for (f, m) in squarefree_factorization(&rest).factors {
            let data = local_data_ordinary_from(lead, r, &f)?;
            out.push((Place { data, roots: (0..r as i64).collect() }, m));
        }
        Ok((out, rest))
    }

    /// H_rat(R) with certificate: R = reduced + M(cert).
    pub fn reduce(&self, r: &XRat) -> Result<(XRat, XRat, WeakDetail), Error> {
        let n = self.nvars();
        let mut detail = WeakDetail::default();
        if r.is_zero() {
            return Ok((XRat::zero(n), XRat::zero(n), detail));
        }
        let (places, _) = self.decompose(r.den())?;
        let spec: Vec<(XPoly, usize)> = places.iter().map(|(p, m)| (p.poly().clone(), *m)).collect();
        let mut full_den = XPoly::one(n);
        for (p, m) in &spec {
            full_den = &full_den * &p.pow(*m);
        }
        let scaled_num = r.num() * &full_den.div_exact(r.den()).unwrap();
        let pf = partial_fraction_raw(&scaled_num, &spec);
        let mut poly = pf.poly;
        let mut cert = XRat::zero(n);
        let mut reduced = XRat::zero(n);
        for ((place, _), (p, us)) in places.iter().zip(pf.parts) {
            let mut polar = us;
            let sigma = place.sigma();
            let mut kept = Vec::new();
            let mut cert_terms: Vec<(XPoly, usize)> = Vec::new();
            let r_ord = self.order() as i64;
            for t in (1..=polar.len()).rev() {
                let u = polar[t - 1].clone();
                if u.is_zero() {
                    continue;
                }
                let k = t as i64 + sigma;
                if k < 1 || place.ind_vanishes(-k) {
                    kept.push((t, u));
                    continue;
                }
                let ind = place.data.ind_at(-k);
                let inv = match invert_mod(&ind, &p) {
                    InvertMod::Inverse(v) => v,
                    _ => return Err(Error::Internal("indicial value is a zero divisor".into())),
                };
                let v = (&u * &inv).rem(&p);
                let w = self.image_numerator(&v, &p, k);
                let digits = w.p_adic(&p);
                let top = (k + r_ord) as usize;
                for (j, c) in digits.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if j < top {
                        let tt = top - j;
                        if tt > polar.len() {
                            polar.resize(tt, XPoly::zero(n));
                        }
                        polar[tt - 1] = &polar[tt - 1] - &c;
                    } else {
                        poly = &poly - &(&c * &p.pow(j - top));
                    }
                }
                debug_assert!(polar[t - 1].is_zero());
                cert_terms.push((v, k as usize));
            }
            // one normalization per place
            if let Some(kmax) = cert_terms.iter().map(|(_, k)| *k).max() {
                let mut num = XPoly::zero(n);
                for (v, k) in &cert_terms {
                    num = &num + &(v * &p.pow(kmax - k));
                }
                cert = &cert + &XRat::new(num, p.pow(kmax));
            }
            kept.reverse();
            for (t, u) in &kept {
                reduced = &reduced + &XRat::new(u.clone(), p.pow(*t));
            }
            detail.polar.push((p.clone(), sigma, kept));
        }
        let (kept_poly, pcert) = self.reduce_poly(poly);
        cert = &cert + &XRat::from_poly(pcert);
        for (s, c) in kept_poly.coeffs().iter().enumerate().rev() {
            if !c.is_zero() {
                detail.poly.push((s, c.clone()));
            }
        }
        reduced = &reduced + &XRat::from_poly(kept_poly);
        Ok((reduced, cert, detail))
    }

    /// H_∞ on a polynomial: returns (kept part, certificate).
    fn reduce_poly(&self, mut poly: XPoly) -> (XPoly, XPoly) {
        let n = self.nvars();
        let sigma = self.inf.sigma;
        let mut kept = vec![KElem::zero(n); poly.coeffs().len()];
        let mut cert = XPoly::zero(n);
        while !poly.is_zero() {
            let s = poly.deg();
            let c = poly.lc();
            let k = s + sigma;
            if k < 0 || self.inf_roots.binary_search(&(-k)).is_ok() {
                kept[s as usize] = c.clone();
                poly = &poly - &XPoly::monomial(c, s as usize);
                continue;
            }
            let ind = self.inf.ind_at(-k);
            let f = XPoly::monomial(&c / &ind, k as usize);
            let img = self.apply_poly(&f);
            debug_assert!(img.deg() <= s && img.lc() == c);
            let next = &poly - &img;
            debug_assert!(next.deg() < s);
            poly = next;
            cert = &cert + &f;
        }
        (XPoly::from_coeffs(n, kept), cert)
    }
}

fn local_data_ordinary_from(lead: &XPoly, r: usize, p: &XPoly) -> Result<LocalDataFinite, Error> {
    let n = lead.nvars();
    let mut c = vec![XPoly::zero(n); r];
    c.push(lead.clone());
    local_data_ordinary(&crate::diffop::DiffOp::from_poly_coeffs(n, c), p)
}
