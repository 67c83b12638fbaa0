//! D-finite inputs: parameter actions, scalar and matrix systems, cyclic
//! vectors and the maps λ_i.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffop::DiffOp;
use crate::error::Error;
use crate::field::linalg::{rank, solve};
use crate::field::{KElem, Rat, XPoly, XRat};
use crate::reduction::{CanonicalForm, ReductionResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OreKind {
    /// σ = id, δ = ∂/∂t
    Derivation,
    /// σ: t ↦ t+1, δ = 0
    Shift,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OreSpec {
    pub name: String,
    pub kind: OreKind,
    /// Index of the parameter acted on.
    pub param: usize,
}

impl OreSpec {
    pub fn sigma_k(&self, c: &KElem) -> KElem {
        match self.kind {
            OreKind::Derivation => c.clone(),
            OreKind::Shift => c.shift_var(self.param),
        }
    }

    pub fn delta_k(&self, c: &KElem) -> KElem {
        match self.kind {
            OreKind::Derivation => c.derivative(self.param),
            OreKind::Shift => KElem::zero(c.nvars()),
        }
    }

    pub fn sigma(&self, r: &XRat) -> XRat {
        match self.kind {
            OreKind::Derivation => r.clone(),
            OreKind::Shift => r.map_coeffs(|c| c.shift_var(self.param)),
        }
    }

    pub fn delta(&self, r: &XRat) -> XRat {
        match self.kind {
            OreKind::Shift => XRat::zero(r.nvars()),
            OreKind::Derivation => {
                let v = self.param;
                let dn = r.num().map_coeffs(|c| c.derivative(v));
                let dd = r.den().map_coeffs(|c| c.derivative(v));
                if dd.is_zero() {
                    return XRat::new(dn, r.den().clone());
                }
                let num = &(&dn * r.den()) - &(r.num() * &dd);
                XRat::new(num, r.den() * r.den())
            }
        }
    }

    pub fn sigma_op(&self, l: &DiffOp) -> DiffOp {
        l.map_coeffs(|c| self.sigma(c))
    }

    pub fn delta_op(&self, l: &DiffOp) -> DiffOp {
        l.map_coeffs(|c| self.delta(c))
    }
}

pub fn sigma_delta(i: usize, r: &XRat, specs: &[OreSpec]) -> (XRat, XRat) {
    (specs[i].sigma(r), specs[i].delta(r))
}

/// L(f) = 0 and ∂_i(f) = C_i(f).
#[derive(Clone, Debug)]
pub struct ScalarSystem {
    pub l: DiffOp,
    pub rels: Vec<DiffOp>,
    pub specs: Vec<OreSpec>,
}

/// Actions on a basis b_1..b_r of 𝔸/ℐ: ∂(b_j) = Σ_k A[k][j]·b_k.
#[derive(Clone, Debug)]
pub struct MatrixSystem {
    pub dim: usize,
    pub dx: Vec<Vec<XRat>>,
    pub ops: Vec<Vec<Vec<XRat>>>,
    pub f: Vec<XRat>,
    pub specs: Vec<OreSpec>,
}

fn mat_vec(a: &[Vec<XRat>], v: &[XRat]) -> Vec<XRat> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(XRat::zero(v[0].nvars()), |acc, (x, y)| &acc + &(x * y)))
        .collect()
}

impl MatrixSystem {
    pub fn nvars(&self) -> usize {
        self.f[0].nvars()
    }

    /// Coordinates of ∂x(v): v' + A·v.
    pub fn apply_dx(&self, v: &[XRat]) -> Vec<XRat> {
        let av = mat_vec(&self.dx, v);
        v.iter().zip(av).map(|(a, b)| &a.derivative() + &b).collect()
    }

    /// Coordinates of ∂_i(v): A_i·σ_i(v) + δ_i(v).
    pub fn apply_op(&self, i: usize, v: &[XRat]) -> Vec<XRat> {
        let s = &self.specs[i];
        let sv: Vec<XRat> = v.iter().map(|c| s.sigma(c)).collect();
        let av = mat_vec(&self.ops[i], &sv);
        v.iter().zip(av).map(|(c, b)| &b + &s.delta(c)).collect()
    }

    /// ∂x and each ∂_i commute on the basis vectors.
    pub fn is_integrable(&self) -> bool {
        let n = self.nvars();
        (0..self.ops.len()).all(|i| {
            (0..self.dim).all(|j| {
                let mut e = vec![XRat::zero(n); self.dim];
                e[j] = XRat::one(n);
                self.apply_dx(&self.apply_op(i, &e)) == self.apply_op(i, &self.apply_dx(&e))
            })
        })
    }

    /// Companion form of a scalar system with basis f, ∂x f, …, ∂x^{r−1} f.
    pub fn from_scalar(sys: &ScalarSystem) -> Result<Self, Error> {
        let l = &sys.l;
        let n = l.nvars();
        let r = l.order();
        if l.is_zero() || r == 0 {
            return Err(Error::InvalidSystem("annihilator must have positive order".into()));
        }
        let lc = l.leading_coeff();
        let mut dx = vec![vec![XRat::zero(n); r]; r];
        for j in 0..r {
            if j + 1 < r {
                dx[j + 1][j] = XRat::one(n);
            } else {
                for (k, row) in dx.iter_mut().enumerate() {
                    row[j] = -(&l.coeff(k) / &lc);
                }
            }
        }
        let column = |op: &DiffOp| -> Vec<XRat> {
            let rem = op.right_remainder(l);
            (0..r).map(|k| rem.coeff(k)).collect()
        };
        let mut ops = Vec::new();
        for (i, c) in sys.rels.iter().enumerate() {
            // ∂_i(∂x^j f) = σ_i(∂x^j)∂_i f = ∂x^j C_i f for both kinds
            let _ = &sys.specs[i];
            let mut a = vec![vec![XRat::zero(n); r]; r];
            for j in 0..r {
                let col = column(&DiffOp::dx_pow(n, j).mul(c));
                for k in 0..r {
                    a[k][j] = col[k].clone();
                }
            }
            ops.push(a);
        }
        let mut f = vec![XRat::zero(n); r];
        f[0] = XRat::one(n);
        Ok(MatrixSystem { dim: r, dx, ops, f, specs: sys.specs.clone() })
    }
}

/// γ with L(γ) = 0, ∂_i(γ) = B_i(γ), f = A_f(γ).
#[derive(Clone, Debug)]
pub struct CyclicData {
    pub gamma: Vec<XRat>,
    pub l: DiffOp,
    pub b: Vec<DiffOp>,
    pub a_f: DiffOp,
    b_adj: Vec<DiffOp>,
}

impl CyclicData {
    pub fn new(gamma: Vec<XRat>, l: DiffOp, b: Vec<DiffOp>, a_f: DiffOp) -> Self {
        let b_adj = b.iter().map(|x| x.adjoint()).collect();
        CyclicData { gamma, l, b, a_f, b_adj }
    }

    pub fn nvars(&self) -> usize {
        self.l.nvars()
    }

    /// The operator the reductions work modulo: L*.
    pub fn reduction_operator(&self) -> DiffOp {
        self.l.adjoint()
    }
}

pub const CYCLIC_TRIALS: usize = 50;

/// Clears denominators of an annihilator on the left and normalizes content.
fn polynomial_annihilator(l: &DiffOp) -> DiffOp {
    let n = l.nvars();
    let mut den = XPoly::one(n);
    for c in l.coeffs() {
        let g = den.gcd(c.den());
        den = &den * &c.den().div_exact(&g).unwrap();
    }
    let poly = l.scale_left(&XRat::from_poly(den));
    let pc: Vec<XPoly> = poly.coeffs().iter().map(|c| c.num().clone()).collect();
    // drop a common x-factor
    let mut g = XPoly::zero(n);
    for c in &pc {
        g = g.gcd(c);
    }
    let pc: Vec<XPoly> = if g.is_constant() { pc } else { pc.iter().map(|c| c.div_exact(&g).unwrap()).collect() };
    DiffOp::from_poly_coeffs(n, pc).content_normalize().0
}

pub fn cyclic_vector(sys: &MatrixSystem, seed: u64) -> Result<CyclicData, Error> {
    let r = sys.dim;
    let n = sys.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..CYCLIC_TRIALS {
        let gamma: Vec<XRat> = if trial < r {
            (0..r).map(|k| if k == trial { XRat::one(n) } else { XRat::zero(n) }).collect()
        } else {
            (0..r).map(|_| XRat::from_int(n, rng.gen_range(-2i64..=2))).collect()
        };
        if gamma.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut derivs = vec![gamma.clone()];
        for _ in 0..r {
            let next = sys.apply_dx(derivs.last().unwrap());
            derivs.push(next);
        }
        // columns γ_0 … γ_{r−1}
        let w: Vec<Vec<XRat>> = (0..r).map(|row| (0..r).map(|k| derivs[k][row].clone()).collect()).collect();
        if rank(&w) < r {
            continue;
        }
        let zero = XRat::zero(n);
        let solve_in_basis = |v: &[XRat]| solve(&w, v, r, &zero).expect("cyclic basis spans");
        let neg_last: Vec<XRat> = derivs[r].iter().map(|c| -c).collect();
        let a = solve_in_basis(&neg_last);
        let mut lc = a;
        lc.push(XRat::one(n));
        let l = polynomial_annihilator(&DiffOp::from_coeffs(n, lc));
        let b = (0..sys.ops.len())
            .map(|i| DiffOp::from_coeffs(n, solve_in_basis(&sys.apply_op(i, &gamma))))
            .collect();
        let a_f = DiffOp::from_coeffs(n, solve_in_basis(&sys.f));
        return Ok(CyclicData::new(gamma, l, b, a_f));
    }
    Err(Error::NoCyclicVector(CYCLIC_TRIALS))
}

/// γ = f, A_f = 1, B_i = C_i rem L; also returns compatibility warnings.
pub fn from_scalar(sys: &ScalarSystem, seed: u64) -> Result<(CyclicData, Vec<String>), Error> {
    let l = &sys.l;
    if l.is_zero() || l.order() == 0 {
        return Err(Error::InvalidSystem("annihilator must have positive order".into()));
    }
    if sys.rels.len() != sys.specs.len() {
        return Err(Error::InvalidSystem("one relation is needed per Ore operator".into()));
    }
    let n = l.nvars();
    let lp = polynomial_annihilator(l);
    let b: Vec<DiffOp> = sys.rels.iter().map(|c| c.right_remainder(&lp)).collect();
    let warnings = compatibility_warnings(&lp, &b, &sys.specs, seed);
    let mut gamma = vec![XRat::zero(n); lp.order()];
    gamma[0] = XRat::one(n);
    Ok((CyclicData::new(gamma, lp, b, DiffOp::one(n)), warnings))
}

/// Checks σ_i(L)·B_i + δ_i(L) ∈ 𝔸·L at two random parameter points.
fn compatibility_warnings(l: &DiffOp, b: &[DiffOp], specs: &[OreSpec], seed: u64) -> Vec<String> {
    let n = l.nvars();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ffee);
    for (i, s) in specs.iter().enumerate() {
        // products are formed after specialization; over Q(t) they swell
        let (sl, dl) = (s.sigma_op(l), s.delta_op(l));
        let mut checked = 0;
        let mut tries = 0;
        while checked < 2 && tries < 20 {
            tries += 1;
            let point: Vec<Rat> = (0..n).map(|_| Rat::from_integer(rng.gen_range(-97i64..=97).into())).collect();
            let (Ok(sp), Ok(bp), Ok(dp), Ok(ll)) =
                (sl.eval_params(&point), b[i].eval_params(&point), dl.eval_params(&point), l.eval_params(&point))
            else {
                continue;
            };
            if ll.order() != l.order() || sp.order() != l.order() {
                continue;
            }
            let ls = sp.mul(&bp).add(&dp);
            checked += 1;
            if !ls.right_remainder(&ll).is_zero() {
                out.push(format!(
                    "relation for {} looks incompatible with L (L may not be the minimal annihilator)",
                    s.name
                ));
                break;
            }
        }
    }
    out
}

/// λ_i(R) = B_i*(σ_i(R)) + δ_i(R).
pub fn lambda(i: usize, r: &XRat, cd: &CyclicData, specs: &[OreSpec]) -> XRat {
    let (s, d) = sigma_delta(i, r, specs);
    &cd.b_adj[i].apply(&s) + &d
}

/// [A_f*(1)].
pub fn initial_f(cd: &CyclicData, reducer: &dyn CanonicalForm) -> Result<ReductionResult, Error> {
    let n = cd.nvars();
    reducer.canonical_form(&cd.a_f.adjoint().apply(&XRat::one(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_derivation_actions() {
        // parameters (n, p)
        let n = KElem::var(2, 0);
        let p = KElem::var(2, 1);
        let shift = OreSpec { name: "Sn".into(), kind: OreKind::Shift, param: 0 };
        let der = OreSpec { name: "Dp".into(), kind: OreKind::Derivation, param: 1 };
        let r = XRat::from_kelem(&(&n * &n) / &p);
        let np1 = &n + &KElem::one(2);
        assert_eq!(shift.sigma(&r), XRat::from_kelem(&(&np1 * &np1) / &p));
        assert!(shift.delta(&r).is_zero());
        let xp = XRat::from_poly(XPoly::monomial(p.inv(), 1));
        assert_eq!(der.sigma(&xp), xp);
        assert_eq!(der.delta(&xp), XRat::from_poly(XPoly::monomial(-(&p * &p).inv(), 1)));
        let five = XRat::from_int(2, 5);
        assert_eq!(sigma_delta(0, &five, &[shift.clone()]), (five.clone(), XRat::zero(2)));
        assert_eq!(der.delta(&five), XRat::zero(2));
    }

    #[test]
    fn companion_round_trip() {
        let x = |cs: &[i64]| XRat::from_poly(XPoly::from_ints(0, cs));
        let l = DiffOp::from_coeffs(0, vec![x(&[1]), x(&[0, 1]), x(&[1, 0, 1])]);
        let sys = ScalarSystem { l: l.clone(), rels: vec![], specs: vec![] };
        let m = MatrixSystem::from_scalar(&sys).unwrap();
        let cd = cyclic_vector(&m, 1).unwrap();
        assert_eq!(cd.gamma[0], XRat::one(0));
        assert_eq!(cd.l, l.content_normalize().0);
        assert_eq!(cd.a_f, DiffOp::one(0));
    }
}
