//! Reduction-based creative telescoping: an FGLM-style walk over monomials
//! in the parameter operators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::linalg::{rank, solve};
use crate::field::{KElem, MPoly, Rat, XPoly, XRat};
use crate::oresys::{initial_f, lambda, CyclicData, OreSpec};
use crate::reduction::{default_shell, shell_transform, CanonicalForm, Reducer, ReducerOptions};

/// Exponents over (∂₁,…,∂_e).
pub type DMonomial = Vec<u32>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    #[default]
    Grevlex,
    Deglex,
}

impl TermOrder {
    /// Variables are ordered ∂₁ < … < ∂_e.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| match self {
            // smaller exponent on the smallest variable is larger
            TermOrder::Grevlex => {
                for (x, y) in a.iter().zip(b) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            TermOrder::Deglex => {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Complete,
    FirstFound,
    DegreeCapped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::FirstFound => "first-found",
            Status::DegreeCapped => "degree-capped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TelescopeOptions {
    pub order: TermOrder,
    pub first_only: bool,
    /// Largest total degree visited; None means unbounded.
    pub max_degree: Option<u32>,
    pub seed: u64,
}

impl Default for TelescopeOptions {
    fn default() -> Self {
        TelescopeOptions { order: TermOrder::Grevlex, first_only: false, max_degree: Some(20), seed: 0x5eed }
    }
}

/// Σ a_μ·μ, terms in decreasing order, normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Telescoper {
    pub terms: Vec<(DMonomial, KElem)>,
}

impl Telescoper {
    /// Sorts, drops zeros and normalizes content and sign.
    pub fn new(mut terms: Vec<(DMonomial, KElem)>, order: TermOrder) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Telescoper { terms: normalize(terms) }
    }

    pub fn from_ore(p: &OrePoly, order: TermOrder) -> Self {
        Self::new(p.terms().map(|(m, c)| (m.clone(), c.clone())).collect(), order)
    }

    pub fn leading_monomial(&self) -> Option<&DMonomial> {
        self.terms.first().map(|t| &t.0)
    }
}

/// Element of K⟨∂₁,…,∂_e⟩ with coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePoly {
    nvars: usize,
    e: usize,
    terms: BTreeMap<DMonomial, KElem>,
}

impl OrePoly {
    pub fn zero(nvars: usize, e: usize) -> Self {
        OrePoly { nvars, e, terms: BTreeMap::new() }
    }

    pub fn constant(c: KElem, e: usize) -> Self {
        let mut p = Self::zero(c.nvars(), e);
        p.add_term(vec![0; e], c);
        p
    }

    pub fn generator(nvars: usize, e: usize, i: usize) -> Self {
        let mut m = vec![0; e];
        m[i] = 1;
        let mut p = Self::zero(nvars, e);
        p.add_term(m, KElem::one(nvars));
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DMonomial, &KElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the element lies in K.
    pub fn as_constant(&self) -> Option<KElem> {
        match self.terms.len() {
            0 => Some(KElem::zero(self.nvars)),
            1 => self.terms.get(&vec![0; self.e]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: DMonomial, c: KElem) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(m, s);
        }
    }

    pub fn add(&self, o: &OrePoly) -> OrePoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly { nvars: self.nvars, e: self.e, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale_left(&self, c: &KElem) -> OrePoly {
        let mut r = Self::zero(self.nvars, self.e);
        for (m, d) in &self.terms {
            r.add_term(m.clone(), c * d);
        }
        r
    }

    /// ∂_i·Σ c_ν ν = Σ σ_i(c_ν) ∂_i ν + δ_i(c_ν) ν.
    fn left_gen(&self, i: usize, specs: &[OreSpec]) -> OrePoly {
        let s = &specs[i];
        let mut r = Self::zero(self.nvars, self.e);
        for (m, c) in &self.terms {
            let mut up = m.clone();
            up[i] += 1;
            r.add_term(up, s.sigma_k(c));
            r.add_term(m.clone(), s.delta_k(c));
        }
        r
    }

    pub fn mul(&self, o: &OrePoly, specs: &[OreSpec]) -> OrePoly {
        let mut r = Self::zero(self.nvars, self.e);
        for (m, c) in &self.terms {
            let mut t = o.clone();
            for (i, &k) in m.iter().enumerate() {
                for _ in 0..k {
                    t = t.left_gen(i, specs);
                }
            }
            r = r.add(&t.scale_left(c));
        }
        r
    }
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    let g = a.gcd(b);
    a.mul(&b.div_exact(&g).unwrap())
}

fn normalize(terms: Vec<(DMonomial, KElem)>) -> Vec<(DMonomial, KElem)> {
    if terms.is_empty() {
        return terms;
    }
    let n = terms[0].1.nvars();
    let den = terms.iter().fold(MPoly::one(n), |acc, (_, c)| lcm(&acc, c.den()));
    let mut polys: Vec<MPoly> =
        terms.iter().map(|(_, c)| c.num().mul(&den.div_exact(c.den()).unwrap())).collect();
    let g = polys.iter().fold(MPoly::zero(n), |acc, p| acc.gcd(p));
    if !g.is_one() {
        polys = polys.iter().map(|p| p.div_exact(&g).unwrap()).collect();
    }
    let dl = polys.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.coeff_denominator_lcm()));
    polys = polys.iter().map(|p| p.scale(&Rat::from_integer(dl.clone()))).collect();
    let content = polys.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&p.integer_content()));
    let mut s = Rat::new(BigInt::one(), content);
    if polys[0].lc_is_negative() {
        s = -s;
    }
    terms.into_iter().zip(polys).map(|((m, _), p)| (m, KElem::from_poly(p.scale(&s)))).collect()
}

#[derive(Clone, Debug)]
pub struct TelescopingBasis {
    pub g: Vec<Telescoper>,
    /// Standard monomials in visiting order.
    pub q: Vec<DMonomial>,
    /// Leading monomials of `g`.
    pub r: Vec<DMonomial>,
    pub status: Status,
    /// F_μ for every visited monomial.
    pub fs: HashMap<DMonomial, XRat>,
    /// Number of canonical forms computed by the walk.
    pub computations: usize,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Removes and returns the smallest queued monomial.
pub fn monomial_succ(order: TermOrder, frontier: &mut Vec<DMonomial>) -> Option<DMonomial> {
    let (idx, _) = frontier.iter().enumerate().min_by(|a, b| order.cmp(a.1, b.1))?;
    Some(frontier.swap_remove(idx))
}

/// Coefficients a with Σ a_j·candidates_j = target.
pub fn linear_relation(candidates: &[XRat], target: &XRat, seed: u64) -> Option<Vec<KElem>> {
    let n = target.nvars();
    if target.is_zero() {
        return Some(vec![KElem::zero(n); candidates.len()]);
    }
    if candidates.is_empty() {
        return None;
    }
    if prefilter_independent(candidates, target, seed) {
        return None;
    }
    let mut den = XPoly::one(n);
    for c in candidates.iter().chain(std::iter::once(target)) {
        let g = den.gcd(c.den());
        den = &den * &c.den().div_exact(&g).unwrap();
    }
    let dr = XRat::from_poly(den);
    let nums: Vec<XPoly> = candidates.iter().map(|c| (c * &dr).as_poly().unwrap().clone()).collect();
    let rhs = (target * &dr).as_poly().unwrap().clone();
    let rows = nums.iter().map(|p| p.coeffs().len()).chain([rhs.coeffs().len()]).max().unwrap();
    let mat: Vec<Vec<KElem>> = (0..rows).map(|i| nums.iter().map(|p| p.coeff(i)).collect()).collect();
    let b: Vec<KElem> = (0..rows).map(|i| rhs.coeff(i)).collect();
    solve(&mat, &b, candidates.len(), &KElem::zero(n))
}

/// True only when a specialization proves there is no relation.
fn prefilter_independent(candidates: &[XRat], target: &XRat, seed: u64) -> bool {
    let n = target.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<Rat> = (0..n).map(|_| Rat::from_integer(rng.gen_range(-1000i64..=1000).into())).collect();
    let mut spec = Vec::with_capacity(candidates.len() + 1);
    for c in candidates.iter().chain(std::iter::once(target)) {
        match c.eval_params(&point) {
            Ok(v) => spec.push(v),
            Err(_) => return false,
        }
    }
    let mut den = XPoly::one(0);
    for c in &spec {
        let g = den.gcd(c.den());
        den = &den * &c.den().div_exact(&g).unwrap();
    }
    let dr = XRat::from_poly(den);
    let nums: Vec<Vec<Rat>> = spec.iter().map(|c| (c * &dr).as_poly().unwrap().to_rats().unwrap()).collect();
    let rows = nums.iter().map(|v| v.len()).max().unwrap_or(0);
    let at = |v: &Vec<Rat>, i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
    let k = candidates.len();
    let cand: Vec<Vec<Rat>> = (0..rows).map(|i| nums[..k].iter().map(|v| at(v, i)).collect()).collect();
    let aug: Vec<Vec<Rat>> = (0..rows).map(|i| nums.iter().map(|v| at(v, i)).collect()).collect();
    rank(&cand) == k && rank(&aug) == k + 1
}

struct Walk<'a> {
    cd: &'a CyclicData,
    specs: &'a [OreSpec],
    reducer: &'a dyn CanonicalForm,
    fs: HashMap<DMonomial, XRat>,
    computations: usize,
}

impl Walk<'_> {
    fn compute(&mut self, mu: &DMonomial, q: &[DMonomial]) -> Result<XRat, Error> {
        let f = if mu.iter().all(|&e| e == 0) {
            initial_f(self.cd, self.reducer)?.reduced
        } else {
            let (i, prev) = (0..mu.len())
                .filter(|&i| mu[i] > 0)
                .map(|i| {
                    let mut p = mu.clone();
                    p[i] -= 1;
                    (i, p)
                })
                .find(|(_, p)| q.contains(p))
                .ok_or_else(|| Error::Internal("monomial has no standard predecessor".into()))?;
            let l = lambda(i, &self.fs[&prev], self.cd, self.specs);
            self.reducer.canonical_form(&l)?.reduced
        };
        self.computations += 1;
        if self.fs.insert(mu.clone(), f.clone()).is_some() {
            return Err(Error::Internal("F computed twice for one monomial".into()));
        }
        Ok(f)
    }
}

pub fn telescope(
    cd: &CyclicData,
    specs: &[OreSpec],
    reducer: &dyn CanonicalForm,
    opts: &TelescopeOptions,
) -> Result<TelescopingBasis, Error> {
    let e = specs.len();
    let mut walk = Walk { cd, specs, reducer, fs: HashMap::new(), computations: 0 };
    let mut frontier: Vec<DMonomial> = vec![vec![0; e]];
    let mut queued: BTreeSet<DMonomial> = frontier.iter().cloned().collect();
    let mut q: Vec<DMonomial> = Vec::new();
    let mut q_forms: Vec<XRat> = Vec::new();
    let mut g = Vec::new();
    let mut r: Vec<DMonomial> = Vec::new();
    let mut status = Status::Complete;
    let mut seed = opts.seed;
    while let Some(mu) = monomial_succ(opts.order, &mut frontier) {
        if r.iter().any(|l| divides(l, &mu)) {
            continue;
        }
        if let Some(cap) = opts.max_degree {
            if mu.iter().sum::<u32>() > cap {
                status = Status::DegreeCapped;
                break;
            }
        }
        let f = walk.compute(&mu, &q)?;
        seed = seed.wrapping_add(1);
        match linear_relation(&q_forms, &f, seed) {
            Some(a) => {
                let mut terms = vec![(mu.clone(), KElem::one(cd.nvars()))];
                terms.extend(q.iter().cloned().zip(a.into_iter().map(|c| -c)));
                g.push(Telescoper::new(terms, opts.order));
                r.push(mu);
                if opts.first_only {
                    status = Status::FirstFound;
                    break;
                }
            }
            None => {
                for i in 0..e {
                    let mut next = mu.clone();
                    next[i] += 1;
                    if queued.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
                q.push(mu);
                q_forms.push(f);
            }
        }
    }
    Ok(TelescopingBasis { g, q, r, status, fs: walk.fs, computations: walk.computations })
}

/// Reducer for L*, optionally through the default shell.
pub fn build_reducer(cd: &CyclicData, shell: bool, opts: &ReducerOptions) -> Result<Box<dyn CanonicalForm>, Error> {
    let m = cd.reduction_operator();
    if shell {
        let (a, b) = default_shell(&m, opts)?;
        Ok(Box::new(shell_transform(&m, &a, &b, opts)?))
    } else {
        Ok(Box::new(Reducer::with_options(&m, opts)?))
    }
}

/// Exact check of every relation plus the structural invariants.
pub fn verify_basis(b: &TelescopingBasis, fs: &HashMap<DMonomial, XRat>) -> bool {
    for t in &b.g {
        let mut acc: Option<XRat> = None;
        for (m, c) in &t.terms {
            let Some(f) = fs.get(m) else { return false };
            let term = f.scale(c);
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        if acc.map(|a| !a.is_zero()).unwrap_or(false) {
            return false;
        }
    }
    let leads: Vec<&DMonomial> = b.g.iter().filter_map(|t| t.leading_monomial()).collect();
    if leads.len() != b.r.len() || !leads.iter().all(|l| b.r.contains(l)) {
        return false;
    }
    for (i, a) in b.r.iter().enumerate() {
        for (j, c) in b.r.iter().enumerate() {
            if i != j && divides(a, c) {
                return false;
            }
        }
    }
    for m in &b.q {
        if b.r.iter().any(|l| divides(l, m)) {
            return false;
        }
        for i in 0..m.len() {
            if m[i] > 0 {
                let mut d = m.clone();
                d[i] -= 1;
                if !b.q.contains(&d) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        let o = TermOrder::Grevlex;
        let mut f = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(monomial_succ(o, &mut f), Some(vec![1, 0]));
        let mut f = vec![vec![1, 1], vec![2, 0]];
        assert_eq!(monomial_succ(o, &mut f), Some(vec![2, 0]));
        let mut f = vec![vec![0, 3], vec![0, 0], vec![1, 0]];
        assert_eq!(monomial_succ(o, &mut f), Some(vec![0, 0]));
        assert_eq!(o.cmp(&[1, 2, 0], &[0, 2, 1]), Ordering::Less);
        assert_eq!(TermOrder::Deglex.cmp(&[1, 2, 0], &[0, 2, 1]), Ordering::Less);
        assert_eq!(TermOrder::Deglex.cmp(&[2, 0, 1], &[0, 3, 0]), Ordering::Greater);
    }

    #[test]
    fn relation_identity_and_none() {
        let c = vec![XRat::x(0), XRat::one(0)];
        let a = linear_relation(&c, &XRat::x(0), 1).unwrap();
        assert!(a[0].is_one() && a[1].is_zero());
        let sq = XRat::from_poly(XPoly::from_ints(0, &[0, 0, 1]));
        assert!(linear_relation(&c, &sq, 1).is_none());
        assert!(linear_relation(&[], &XRat::one(0), 1).is_none());
    }

    #[test]
    fn normalization_clears_denominators() {
        let n = KElem::var(2, 0);
        let p = KElem::var(2, 1);
        let t = Telescoper::new(
            vec![(vec![0, 1], KElem::one(2)), (vec![1, 0], KElem::one(2)), (vec![0, 0], -(&n / &p))],
            TermOrder::Grevlex,
        );
        assert_eq!(t.terms[0], (vec![0, 1], p.clone()));
        assert_eq!(t.terms[1], (vec![1, 0], p));
        assert_eq!(t.terms[2], (vec![0, 0], -n));
    }

    #[test]
    fn empty_basis_verifies() {
        let b = TelescopingBasis {
            g: vec![],
            q: vec![],
            r: vec![],
            status: Status::Complete,
            fs: HashMap::new(),
            computations: 0,
        };
        assert!(verify_basis(&b, &HashMap::new()));
    }
}
