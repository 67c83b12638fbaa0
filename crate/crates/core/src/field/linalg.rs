//! Gaussian elimination over exact fields.

use num_traits::{One, Zero};

use super::{KElem, Rat, XRat};

pub trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Size measure used to prefer small pivots.
    fn weight(&self) -> usize {
        0
    }
}

impl Scalar for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Scalar for KElem {
    fn is_zero(&self) -> bool {
        KElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        KElem::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        KElem::one(self.nvars())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn weight(&self) -> usize {
        self.num().terms().len() + self.den().terms().len()
    }
}

impl Scalar for XRat {
    fn is_zero(&self) -> bool {
        XRat::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        XRat::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        XRat::one(self.nvars())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn weight(&self) -> usize {
        let w = |p: &super::XPoly| p.coeffs().iter().map(|c| c.weight()).sum::<usize>();
        w(self.num()) + w(self.den())
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(m: &mut Vec<Vec<T>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                match best {
                    Some(b) if m[b][c].weight() <= m[i][c].weight() => {}
                    _ => best = Some(i),
                }
            }
        }
        let Some(b) = best else { continue };
        m.swap(r, b);
        let inv_piv = m[r][c].clone();
        if !(inv_piv == inv_piv.one_like()) {
            for j in c..cols {
                m[r][j] = m[r][j].div(&inv_piv);
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if m[r][j].is_zero() {
                    continue;
                }
                let t = f.mul(&m[r][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of {v : m·v = 0}; `zero` fixes the scalar shape.
pub fn nullspace<T: Scalar>(m: &[Vec<T>], cols: usize, zero: &T) -> Vec<Vec<T>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let one = zero.one_like();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            let e = &a[row][free];
            if !e.is_zero() {
                v[pc] = zero.sub(e);
            }
        }
        basis.push(v);
    }
    basis
}

/// Some solution of m·v = b, or None.
pub fn solve<T: Scalar>(m: &[Vec<T>], b: &[T], cols: usize, zero: &T) -> Option<Vec<T>> {
    let mut a: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if a.is_empty() {
        return Some(vec![zero.clone(); cols]);
    }
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut v = vec![zero.clone(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = a[row][cols].clone();
    }
    Some(v)
}

pub fn det<T: Scalar>(m: &[Vec<T>], zero: &T) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = zero.one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return zero.clone();
        };
        if p != c {
            a.swap(p, c);
            d = zero.sub(&d);
        }
        let piv = a[c][c].clone();
        d = d.mul(&piv);
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].div(&piv);
            for j in c..n {
                let t = f.mul(&a[c][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn solve_and_nullspace() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let ns = nullspace(&m, 3, &rat(0));
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: Rat = (0..3).map(|j| &m[0][j] * &v[j]).sum();
            assert!(Zero::is_zero(&s));
        }
        let x = solve(&m, &[rat(6), rat(12)], 3, &rat(0)).unwrap();
        assert_eq!(&x[0] + &x[1] * rat(2) + &x[2] * rat(3), rat(6));
        assert!(solve(&m, &[rat(1), rat(1)], 3, &rat(0)).is_none());
    }

    #[test]
    fn determinant() {
        let m = vec![vec![rat(0), rat(2)], vec![rat(3), rat(4)]];
        assert_eq!(det(&m, &rat(0)), rat(-6));
    }
}
