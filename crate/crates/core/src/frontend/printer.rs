//! Canonical text for field elements, operators and telescopers.

use num_traits::{One, Signed};

use super::Context;
use crate::diffop::DiffOp;
use crate::field::{KElem, MPoly, XPoly, XRat};
use crate::telescoper::Telescoper;

fn power(name: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn join_factors(parts: &[String]) -> String {
    parts.iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join("*")
}

/// Joins signed terms; "0" when there are none.
fn sum(terms: &[(bool, String)], spaced: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg, spaced) {
            (0, true, _) => out.push('-'),
            (0, false, _) => {}
            (_, true, true) => out.push_str(" - "),
            (_, false, true) => out.push_str(" + "),
            (_, true, false) => out.push('-'),
            (_, false, false) => out.push('+'),
        }
        out.push_str(body);
    }
    out
}

fn paren(s: String, wrap: bool) -> String {
    if wrap {
        format!("({s})")
    } else {
        s
    }
}

impl Context {
    fn param_mono(&self, exp: &[u32]) -> String {
        let parts: Vec<String> =
            exp.iter().enumerate().map(|(i, &k)| power(&self.params[i], k as usize)).collect();
        join_factors(&parts)
    }

    fn mpoly_terms(&self, p: &MPoly) -> Vec<(bool, String)> {
        p.terms()
            .iter()
            .map(|(exp, c)| {
                let mono = self.param_mono(exp);
                let a = c.abs();
                let body = if mono.is_empty() {
                    a.to_string()
                } else if a.is_one() {
                    mono
                } else {
                    format!("{a}*{mono}")
                };
                (c.is_negative(), body)
            })
            .collect()
    }

    fn mpoly_str(&self, p: &MPoly) -> String {
        sum(&self.mpoly_terms(p), false)
    }

    /// Text after a `/`.
    fn den_str(&self, d: &MPoly) -> String {
        let atom = d.terms().len() == 1 && {
            let (exp, c) = &d.terms()[0];
            let vars = exp.iter().filter(|&&k| k > 0).count();
            (vars == 0 && c.is_positive()) || (vars == 1 && c.is_one())
        };
        paren(self.mpoly_str(d), !atom)
    }

    /// c·mono as a signed term.
    fn kelem_term(&self, c: &KElem, mono: &str) -> (bool, String) {
        let neg = c.num().lc_is_negative();
        let n = if neg { c.num().neg() } else { c.num().clone() };
        let multi = n.terms().len() > 1;
        let mut body = if mono.is_empty() {
            paren(self.mpoly_str(&n), multi)
        } else if n.is_one() {
            mono.to_string()
        } else {
            format!("{}*{mono}", paren(self.mpoly_str(&n), multi))
        };
        if !c.den().is_one() {
            body.push('/');
            body.push_str(&self.den_str(c.den()));
        }
        (neg, body)
    }

    pub fn print_kelem(&self, c: &KElem) -> String {
        if c.den().is_one() {
            return self.mpoly_str(c.num());
        }
        let multi = c.num().terms().len() > 1;
        format!("{}/{}", paren(self.mpoly_str(c.num()), multi), self.den_str(c.den()))
    }

    fn xpoly_terms(&self, p: &XPoly, suffix: &str) -> Vec<(bool, String)> {
        (0..p.coeffs().len())
            .rev()
            .filter(|&k| !p.coeff(k).is_zero())
            .map(|k| self.kelem_term(&p.coeff(k), &join_factors(&[power(&self.var, k), suffix.to_string()])))
            .collect()
    }

    fn xrat_str(&self, r: &XRat, spaced: bool) -> String {
        if r.den().is_one() {
            let p = r.num();
            if p.deg() <= 0 {
                return self.print_kelem(&p.coeff(0));
            }
            return sum(&self.xpoly_terms(p, ""), spaced);
        }
        let num = sum(&self.xpoly_terms(r.num(), ""), false);
        let wrap = r.num().coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || num.contains('/');
        let den = sum(&self.xpoly_terms(r.den(), ""), false);
        let dwrap = r.den().coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        format!("{}/{}", paren(num, wrap), paren(den, dwrap))
    }

    pub fn print_xrat(&self, r: &XRat) -> String {
        self.xrat_str(r, true)
    }

    pub fn print_op(&self, l: &DiffOp) -> String {
        if l.order() == 0 {
            return self.print_xrat(&l.coeff(0));
        }
        let d = self.dvar();
        let mut terms = Vec::new();
        for k in (0..=l.order()).rev() {
            let c = l.coeff(k);
            if c.is_zero() {
                continue;
            }
            let dk = power(&d, k);
            match c.as_poly() {
                Some(p) if p.coeffs().iter().filter(|a| !a.is_zero()).count() == 1 => {
                    terms.extend(self.xpoly_terms(p, &dk));
                }
                Some(p) => {
                    let neg = p.lc().num().lc_is_negative();
                    let q = if neg { -p } else { p.clone() };
                    let s = format!("({})", sum(&self.xpoly_terms(&q, ""), false));
                    terms.push((neg, join_factors(&[s, dk])));
                }
                None => {
                    let s = format!("({})", self.xrat_str(&c, false));
                    terms.push((false, join_factors(&[s, dk])));
                }
            }
        }
        sum(&terms, true)
    }

    pub fn print_telescoper(&self, t: &Telescoper) -> String {
        let terms: Vec<(bool, String)> = t
            .terms
            .iter()
            .map(|(m, c)| {
                let parts: Vec<String> = m.iter().enumerate().map(|(i, &k)| power(&self.ores[i], k as usize)).collect();
                self.kelem_term(c, &join_factors(&parts))
            })
            .collect();
        sum(&terms, true)
    }
}
