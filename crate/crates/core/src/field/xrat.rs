//! Rational functions in x over K.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{BadPoint, KElem, Rat, XPoly};

/// `num/den` with `den` monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XRat {
    num: XPoly,
    den: XPoly,
}

impl XRat {
    pub fn zero(nvars: usize) -> Self {
        XRat { num: XPoly::zero(nvars), den: XPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        XRat { num: XPoly::one(nvars), den: XPoly::one(nvars) }
    }

    pub fn x(nvars: usize) -> Self {
        Self::from_poly(XPoly::x(nvars))
    }

    pub fn from_poly(p: XPoly) -> Self {
        let n = p.nvars();
        XRat { num: p, den: XPoly::one(n) }
    }

    pub fn from_kelem(c: KElem) -> Self {
        Self::from_poly(XPoly::constant(c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(XPoly::from_int(nvars, c))
    }

    pub fn new(num: XPoly, den: XPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in K(x)");
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if den.is_constant() {
            let c = den.lc().inv();
            return XRat { num: num.scale(&c), den: XPoly::one(n) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let c = den.lc().inv();
        XRat { num: num.scale(&c), den: den.scale(&c) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&XPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_kelem(&self) -> Option<KElem> {
        if self.is_polynomial() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &KElem) -> XRat {
        if c.is_zero() {
            return XRat::zero(self.nvars());
        }
        XRat { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> XRat {
        assert!(!self.is_zero(), "inverse of zero in K(x)");
        let c = self.num.lc().inv();
        XRat { num: self.den.scale(&c), den: self.num.scale(&c) }
    }

    pub fn pow(&self, e: i64) -> XRat {
        if e < 0 {
            return self.inv().pow(-e);
        }
        XRat { num: self.num.pow(e as usize), den: self.den.pow(e as usize) }
    }

    pub fn derivative(&self) -> XRat {
        if self.den.is_one() {
            return XRat::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        XRat::new(n, &self.den * &self.den)
    }

    /// Coefficient-wise map on numerator and denominator (renormalized).
    pub fn map_coeffs(&self, f: impl Fn(&KElem) -> KElem) -> XRat {
        XRat::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    pub fn eval_params(&self, point: &[Rat]) -> Result<XRat, BadPoint> {
        let n = self.num.eval_params(point)?;
        let d = self.den.eval_params(point)?;
        if d.is_zero() {
            return Err(BadPoint);
        }
        Ok(XRat::new(n, d))
    }

    /// Polynomial part and proper fraction remainder.
    pub fn split_polynomial(&self) -> (XPoly, XRat) {
        let (q, r) = self.num.divrem(&self.den);
        (q, XRat { num: r, den: self.den.clone() })
    }
}

impl<'a> Add<&'a XRat> for &'a XRat {
    type Output = XRat;
    fn add(self, o: &XRat) -> XRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return XRat::from_poly(&self.num + &o.num);
            }
            return XRat::new(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let n = &(&self.num * &o.den) + &(&o.num * &self.den);
            return XRat { num: n, den: &self.den * &o.den }.normalized_coprime();
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let n = &(&self.num * &d1) + &(&o.num * &b1);
        XRat::new(n, &b1 * &o.den)
    }
}

impl XRat {
    /// The caller guarantees gcd(num, den) = 1 and den monic.
    fn normalized_coprime(self) -> XRat {
        if self.num.is_zero() {
            return XRat::zero(self.nvars());
        }
        self
    }
}

impl<'a> Sub<&'a XRat> for &'a XRat {
    type Output = XRat;
    fn sub(self, o: &XRat) -> XRat {
        self + &(-o)
    }
}

impl<'a> Neg for &'a XRat {
    type Output = XRat;
    fn neg(self) -> XRat {
        XRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for XRat {
    type Output = XRat;
    fn neg(self) -> XRat {
        -&self
    }
}

impl<'a> Mul<&'a XRat> for &'a XRat {
    type Output = XRat;
    fn mul(self, o: &XRat) -> XRat {
        if self.is_zero() || o.is_zero() {
            return XRat::zero(self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return XRat::from_poly(&self.num * &o.num);
        }
        let cross = |a: &XPoly, b: &XPoly| -> (XPoly, XPoly) {
            if a.is_constant() || b.is_constant() {
                return (a.clone(), b.clone());
            }
            let g = a.gcd(b);
            if g.is_one() {
                (a.clone(), b.clone())
            } else {
                (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
            }
        };
        let (a, d) = cross(&self.num, &o.den);
        let (c, b) = cross(&o.num, &self.den);
        let den = &b * &d;
        let lc = den.lc().inv();
        XRat { num: (&a * &c).scale(&lc), den: den.scale(&lc) }
    }
}

impl<'a> Div<&'a XRat> for &'a XRat {
    type Output = XRat;
    fn div(self, o: &XRat) -> XRat {
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<XRat> for XRat {
            type Output = XRat;
            fn $m(self, o: XRat) -> XRat {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(cs: &[i64]) -> XPoly {
        XPoly::from_ints(0, cs)
    }

    #[test]
    fn sum_of_simple_fractions() {
        let a = XRat::new(xp(&[1]), xp(&[0, 1]));
        let b = XRat::new(xp(&[-1]), xp(&[-1, 1]));
        // 1/x - 1/(x-1) = -1/(x(x-1))
        let s = &a + &b;
        assert_eq!(s, XRat::new(xp(&[-1]), xp(&[0, -1, 1])));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let r = XRat::new(xp(&[1]), xp(&[0, 1]));
        assert_eq!(r.derivative(), XRat::new(xp(&[-1]), xp(&[0, 0, 1])));
    }

    #[test]
    fn denominator_is_monic() {
        let r = XRat::new(xp(&[2]), xp(&[0, 4]));
        assert!(r.den().is_monic());
        assert_eq!(r.num(), &XPoly::from_rats(0, &[super::super::ratio(1, 2)]));
    }
}
