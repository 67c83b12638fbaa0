//! Dense univariate polynomials over Q, written independently of the crate,
//! and the Horowitz–Ostrogradsky split R = (A/D⁻)' + B/D*.

use num_rational::BigRational as Q;
use num_traits::{One, Zero};

/// Coefficients, lowest degree first, no trailing zeros.
pub type P = Vec<Q>;

pub fn trim(mut a: P) -> P {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

pub fn deg(a: &P) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &P, b: &P) -> P {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero)).collect())
}

pub fn neg(a: &P) -> P {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &P, b: &P) -> P {
    add(a, &neg(b))
}

pub fn mul(a: &P, b: &P) -> P {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn deriv(a: &P) -> P {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer((i as i64).into())).collect())
}

pub fn divrem(a: &P, b: &P) -> (P, P) {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut qt = vec![Q::zero(); r.len() - db];
    let lb = b[db].clone();
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        qt[k] = c;
        r = trim(r);
    }
    (trim(qt), r)
}

pub fn monic(a: &P) -> P {
    let l = a.last().unwrap().clone();
    a.iter().map(|c| c / &l).collect()
}

pub fn gcd(a: &P, b: &P) -> P {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = divrem(&x, &y).1;
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        monic(&x)
    }
}

/// Gaussian elimination; the unique solution of a square nonsingular system.
pub fn solve(mut m: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("singular system");
        m.swap(p, c);
        b.swap(p, c);
        let inv = Q::one() / &m[c][c];
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
                let t = &f * &b[c];
                b[i] -= t;
            }
        }
    }
    (0..n).map(|i| &b[i] / &m[i][i]).collect()
}

/// For N/D with D monic: (B, D*) with N/D − B/D* a derivative of a rational
/// function, deg B < deg D*.
pub fn horowitz_ostrogradsky(num: &P, den: &P) -> (P, P) {
    let (_, n0) = divrem(num, den);
    let dm = gcd(den, &deriv(den));
    let ds = divrem(den, &dm).0;
    let (a_len, b_len) = (dm.len() - 1, ds.len() - 1);
    let total = a_len + b_len;
    // N0 = A'·D* − A·(D⁻'·D*/D⁻) + B·D⁻
    let t = divrem(&mul(&deriv(&dm), &ds), &dm).0;
    let mut cols: Vec<P> = Vec::with_capacity(total);
    for i in 0..a_len {
        let mut a = vec![Q::zero(); i + 1];
        a[i] = Q::one();
        cols.push(sub(&mul(&deriv(&a), &ds), &mul(&a, &t)));
    }
    for i in 0..b_len {
        let mut bb = vec![Q::zero(); i + 1];
        bb[i] = Q::one();
        cols.push(mul(&bb, &dm));
    }
    let m: Vec<Vec<Q>> =
        (0..total).map(|row| cols.iter().map(|c| c.get(row).cloned().unwrap_or_else(Q::zero)).collect()).collect();
    let rhs: Vec<Q> = (0..total).map(|row| n0.get(row).cloned().unwrap_or_else(Q::zero)).collect();
    let sol = if total == 0 { vec![] } else { solve(m, rhs) };
    (trim(sol[a_len..].to_vec()), ds)
}
