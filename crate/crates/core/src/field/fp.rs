//! Dense univariate arithmetic over F_p for word-sized primes (p < 2^32).

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Largest prime below `p`.
pub fn prev_prime(mut p: u64) -> u64 {
    p -= 1;
    while !is_prime(p) {
        p -= 1;
    }
    p
}

pub fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn eval(f: &[u64], u: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * u + c) % p)
}

pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    let mut d: Vec<u64> = f.iter().enumerate().skip(1).map(|(k, &c)| (c * (k as u64 % p)) % p).collect();
    trim(&mut d);
    d
}

pub fn pow(b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = b % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// Some gcd (not normalized); empty when both are zero.
pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let binv = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * binv % p;
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - c * bj % p) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

pub fn monic(f: &[u64], p: u64) -> Vec<u64> {
    match f.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv(l, p);
            f.iter().map(|c| c * li % p).collect()
        }
    }
}
