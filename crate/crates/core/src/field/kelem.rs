//! Elements of the parameter field K = Q(t₁,…,t_e).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{BadPoint, MPoly, Rat};

/// A reduced fraction `num/den` of polynomials with integer coefficients.
///
/// Normal form: gcd(num, den) = 1, the integer content of `num` and `den`
/// taken together is 1, and the graded-lex leading coefficient of `den` is
/// positive. Equal field elements therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KElem {
    num: MPoly,
    den: MPoly,
}

impl KElem {
    pub fn zero(nvars: usize) -> Self {
        KElem { num: MPoly::zero(nvars), den: MPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        KElem { num: MPoly::one(nvars), den: MPoly::one(nvars) }
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::from_rat(nvars, Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(nvars: usize, c: Rat) -> Self {
        let (n, d) = (c.numer().clone(), c.denom().clone());
        KElem {
            num: MPoly::constant(nvars, Rat::from_integer(n)),
            den: MPoly::constant(nvars, Rat::from_integer(d)),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        Self::from_coprime(p, MPoly::one(n))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, i))
    }

    /// Builds `num/den`, cancelling common factors.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in K");
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        if den.is_constant() || num.is_constant() {
            return Self::from_coprime(num, den);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self::from_coprime(num, den)
        } else {
            Self::from_coprime(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        }
    }

    /// Normalizes units only; the caller guarantees gcd(num, den) = 1.
    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        let l = num.coeff_denominator_lcm().lcm(&den.coeff_denominator_lcm());
        let lr = Rat::from_integer(l);
        let (mut num, mut den) = (num.scale(&lr), den.scale(&lr));
        let c = num.integer_content().gcd(&den.integer_content());
        if !c.is_one() {
            let cr = Rat::from_integer(c).recip();
            num = num.scale(&cr);
            den = den.scale(&cr);
        }
        if den.lc_is_negative() {
            num = num.neg();
            den = den.neg();
        }
        KElem { num, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.num.constant_value().unwrap() / self.den.constant_value().unwrap())
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> KElem {
        assert!(!self.is_zero(), "inverse of zero in K");
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> KElem {
        if e < 0 {
            return self.inv().pow(-e);
        }
        Self::from_coprime(self.num.pow(e as u32), self.den.pow(e as u32))
    }

    pub fn scale_rat(&self, c: &Rat) -> KElem {
        self * &KElem::from_rat(self.nvars(), c.clone())
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat, BadPoint> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(BadPoint);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitution t_v ↦ t_v + 1.
    pub fn shift_var(&self, v: usize) -> KElem {
        Self::from_coprime(self.num.shift_var(v), self.den.shift_var(v))
    }

    /// Partial derivative with respect to t_v.
    pub fn derivative(&self, v: usize) -> KElem {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone());
        }
        Self::new(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }
}

impl<'a> Add<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn add(self, o: &KElem) -> KElem {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return KElem::new(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_constant() && o.den.is_constant() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return KElem::from_coprime(num, self.den.mul(&o.den));
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return KElem::from_coprime(num, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return KElem::zero(self.nvars());
        }
        let h = num.gcd(&g);
        let den = b1.mul(&o.den);
        if h.is_one() {
            KElem::from_coprime(num, den)
        } else {
            KElem::new(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }
}

impl<'a> Sub<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn sub(self, o: &KElem) -> KElem {
        self + &(-o)
    }
}

impl<'a> Neg for &'a KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

impl<'a> Mul<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn mul(self, o: &KElem) -> KElem {
        if self.is_zero() || o.is_zero() {
            return KElem::zero(self.nvars());
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let cross = |a: &MPoly, b: &MPoly| -> (MPoly, MPoly) {
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
        KElem::from_coprime(a.mul(&c), b.mul(&d))
    }
}

impl<'a> Div<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn div(self, o: &KElem) -> KElem {
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<KElem> for KElem {
            type Output = KElem;
            fn $m(self, o: KElem) -> KElem {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for KElem {
    fn zero() -> Self {
        KElem::zero(0)
    }
    fn is_zero(&self) -> bool {
        KElem::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> KElem {
        KElem::var(2, 0)
    }
    fn p() -> KElem {
        KElem::var(2, 1)
    }

    #[test]
    fn sum_over_common_denominator() {
        let t = KElem::var(1, 0);
        let s = &t + &t.inv();
        let expected = KElem::new(
            MPoly::var(1, 0).pow(2).add(&MPoly::one(1)),
            MPoly::var(1, 0),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn inverse_product_is_one() {
        let a = &(&n() * &n()) + &(&p() * &p());
        let a = &a / &p();
        assert!((&a * &a.inv()).is_one());
    }

    #[test]
    fn cancellation_normalizes() {
        let one = MPoly::one(2);
        let nn = MPoly::var(2, 0);
        let e = KElem::new(nn.pow(2).sub(&one), nn.sub(&one));
        assert_eq!(e, KElem::from_poly(nn.add(&one)));
        // check by multiplying back
        let back = &e * &KElem::from_poly(nn.sub(&one));
        assert_eq!(back, KElem::from_poly(nn.pow(2).sub(&one)));
    }

    #[test]
    fn sign_and_content_are_canonical() {
        let nn = MPoly::var(2, 0);
        let a = KElem::new(nn.scale(&Rat::from_integer(4.into())), nn.scale(&Rat::from_integer((-6).into())).add(&MPoly::from_int(2, -2)));
        // 4n / (-6n - 2) = -2n / (3n + 1)
        assert_eq!(a.num(), &nn.scale(&Rat::from_integer((-2).into())));
        assert_eq!(a.den(), &nn.scale(&Rat::from_integer(3.into())).add(&MPoly::one(2)));
    }

    #[test]
    fn eval_reports_bad_point() {
        let nn = MPoly::var(1, 0);
        let e = KElem::new(MPoly::one(1), nn.sub(&MPoly::one(1)));
        assert!(e.eval(&[Rat::one()]).is_err());
        let f = &(&n() * &n()) + &(&p() * &p());
        let f = &f / &p();
        let v = f.eval(&[Rat::one(), Rat::from_integer(2.into())]).unwrap();
        assert_eq!(v, Rat::new(5.into(), 2.into()));
    }
}
