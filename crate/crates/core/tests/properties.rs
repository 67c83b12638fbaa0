mod common;

use common::*;
use hermite_telescope::diffop::{local_data_finite, local_data_infinity, DiffOp, LocalFinite};
use hermite_telescope::field::{
    invert_mod, partial_fraction, squarefree_factorization, InvertMod, KElem, Rat, XPoly, XRat,
};
use hermite_telescope::frontend::{cli, parse_problem, Context};
use hermite_telescope::oresys::{
    cyclic_vector, from_scalar, lambda, initial_f, CyclicData, MatrixSystem, OreKind, OreSpec, ScalarSystem,
};
use hermite_telescope::reduction::{brute_force_preimage, CanonicalForm, Reducer};
use hermite_telescope::telescoper::{
    build_reducer, telescope, verify_basis, DMonomial, Status, TelescopeOptions, TermOrder,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        max_shrink_iters: 64,
        ..ProptestConfig::default()
    }
}

/// R is P-integral and P divides its numerator.
fn vanishes_at(r: &XRat, p: &XPoly) -> bool {
    r.is_zero() || (r.num().rem(p).is_zero() && r.den().gcd(p).is_one())
}

fn rat_degree(r: &XRat) -> i64 {
    r.num().deg() - r.den().deg()
}

fn random_squarefree(g: &mut ChaCha8Rng, e: usize, max_deg: usize) -> XPoly {
    loop {
        let d = g.gen_range(1..=max_deg);
        let p = rand_monic(g, e, d, 4);
        if p.is_squarefree() {
            return p;
        }
    }
}

// ---- field ----

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn kelem_field_axioms(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (a, b, c) = (rand_kelem(&mut g, 2, 6), rand_kelem(&mut g, 2, 6), rand_kelem(&mut g, 2, 6));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn xrat_field_and_leibniz(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = rand_xrat(&mut g, 1, 3, 3, 4);
        let h = rand_xrat(&mut g, 1, 2, 2, 4);
        prop_assert_eq!((&f * &h).derivative(), &(&f.derivative() * &h) + &(&f * &h.derivative()));
        prop_assert_eq!(&(&f + &h) - &h, f.clone());
        if !h.is_zero() {
            prop_assert_eq!(&(&f / &h) * &h, f);
        }
    }

    #[test]
    fn squarefree_factorization_expands(seed in any::<u64>()) {
        let mut g = rng(seed);
        let mut p = XPoly::constant(rand_kelem(&mut g, 1, 5));
        if p.is_zero() {
            p = XPoly::one(1);
        }
        for m in 1..=3 {
            if g.gen_bool(0.6) {
                let d = g.gen_range(1..=2);
                p = &p * &rand_monic(&mut g, 1, d, 4).pow(m);
            }
        }
        let s = squarefree_factorization(&p);
        prop_assert_eq!(s.expand(), p);
        for (i, (f, _)) in s.factors.iter().enumerate() {
            prop_assert!(f.is_monic() && f.is_squarefree());
            for (h, _) in &s.factors[i + 1..] {
                prop_assert!(f.gcd(h).is_one());
            }
        }
    }

    #[test]
    fn partial_fraction_recombines(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = rand_xrat(&mut g, 1, 6, 5, 4);
        let s = squarefree_factorization(r.den());
        let pf = partial_fraction(&r, &s.factors).unwrap();
        prop_assert_eq!(pf.recombine(), r);
        for (p, us) in &pf.parts {
            prop_assert!(us.iter().all(|u| u.deg() < p.deg()));
        }
    }

    #[test]
    fn inverse_modulo(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p = random_squarefree(&mut g, 1, 4);
        let u = rand_xpoly(&mut g, 1, 5, 5);
        match invert_mod(&u, &p) {
            InvertMod::Inverse(v) => prop_assert!((&(&u * &v) - &XPoly::one(1)).rem(&p).is_zero()),
            InvertMod::Zero => prop_assert!(u.rem(&p).is_zero()),
            InvertMod::ZeroDivisor(d) => {
                prop_assert!(p.rem(&d).is_zero() && d.deg() > 0 && d.deg() < p.deg());
            }
        }
    }

    #[test]
    fn specialization_is_a_homomorphism(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = rand_xrat(&mut g, 2, 2, 2, 4);
        let b = rand_xrat(&mut g, 2, 2, 1, 4);
        let pt: Vec<Rat> = (0..2).map(|_| q(g.gen_range(-30..=30))).collect();
        if let (Ok(ea), Ok(eb), Ok(eab), Ok(esum)) =
            (a.eval_params(&pt), b.eval_params(&pt), (&a * &b).eval_params(&pt), (&a + &b).eval_params(&pt))
        {
            prop_assert_eq!(eab, &ea * &eb);
            prop_assert_eq!(esum, &ea + &eb);
        }
    }
}

// ---- diffop ----

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn product_is_composition(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = rand_op(&mut g, 1, 2, 2, 4);
        let b = rand_op(&mut g, 1, 2, 2, 4);
        let f = rand_xrat(&mut g, 1, 2, 2, 4);
        prop_assert_eq!(a.mul(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn adjoint_involution_and_antihomomorphism(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = rand_op(&mut g, 1, 3, 3, 4);
        let b = rand_op(&mut g, 1, 2, 2, 4);
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
        prop_assert_eq!(a.add(&b).adjoint(), a.adjoint().add(&b.adjoint()));
    }

    #[test]
    fn right_division(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = rand_op(&mut g, 0, 4, 2, 4);
        let l = rand_op(&mut g, 0, 2, 2, 4);
        let (qt, r) = a.right_divrem(&l);
        prop_assert!(r.is_zero() || r.order() < l.order());
        prop_assert_eq!(qt.mul(&l).add(&r), a);
    }

    #[test]
    fn local_data_at_infinity(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = g.gen_range(1..=3);
        let m = rand_op(&mut g, 0, r, 3, 5);
        let data = local_data_infinity(&m).unwrap();
        for s in -3i64..=5 {
            let img = m.apply(&XRat::x(0).pow(s));
            let lead = XRat::from_kelem(data.ind_at(-s)).mul_xpow(s - data.sigma);
            let rest = &img - &lead;
            prop_assert!(rest.is_zero() || rat_degree(&rest) < s - data.sigma, "s = {}", s);
        }
    }

    #[test]
    fn local_data_at_finite_places(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = g.gen_range(1..=3);
        let m = rand_op(&mut g, 0, r, 3, 5);
        let lc = m.leading_coeff().as_poly().unwrap().clone();
        let p = if lc.deg() > 0 && g.gen_bool(0.7) {
            squarefree_factorization(&lc).factors.iter().fold(XPoly::one(0), |acc, (f, _)| &acc * f)
        } else {
            random_squarefree(&mut g, 0, 3)
        };
        let data = match local_data_finite(&m, &p).unwrap() {
            LocalFinite::Data(d) => d,
            LocalFinite::Split(d) => {
                prop_assert!(p.rem(&d).is_zero());
                return Ok(());
            }
        };
        for s in 1i64..=4 {
            let ps = XRat::from_poly(p.clone());
            let img = m.apply(&ps.pow(-s));
            let scaled = &img * &ps.pow(s - data.sigma);
            let rest = &scaled - &XRat::from_poly(data.ind_at(-s));
            prop_assert!(vanishes_at(&rest, &p), "s = {}", s);
        }
    }
}

trait MulXPow {
    fn mul_xpow(&self, k: i64) -> XRat;
}

impl MulXPow for XRat {
    fn mul_xpow(&self, k: i64) -> XRat {
        self * &XRat::x(self.nvars()).pow(k)
    }
}

// ---- reduction ----

fn reducer_case(g: &mut ChaCha8Rng) -> (DiffOp, Reducer) {
    loop {
        let r = g.gen_range(1..=2);
        let m = rand_op(g, 0, r, 3, 4);
        if let Ok(red) = Reducer::new(&m) {
            return (m, red);
        }
    }
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn certificate_identity(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (m, red) = reducer_case(&mut g);
        let r = rand_xrat(&mut g, 0, 4, 4, 5);
        let res = red.canonical_form(&r).unwrap();
        prop_assert_eq!(&res.reduced + &m.apply(&res.certificate), r.clone());
        let weak = red.weak_reduce(&r).unwrap();
        prop_assert_eq!(&weak.reduced + &m.apply(&weak.certificate), r);
    }

    #[test]
    fn image_reduces_to_zero(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (m, red) = reducer_case(&mut g);
        let u = rand_xrat(&mut g, 0, 3, 3, 5);
        prop_assert!(red.canonical_form(&m.apply(&u)).unwrap().reduced.is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (_, red) = reducer_case(&mut g);
        let r = rand_xrat(&mut g, 0, 4, 4, 5);
        let once = red.canonical_form(&r).unwrap().reduced;
        let twice = red.canonical_form(&once).unwrap();
        prop_assert_eq!(&twice.reduced, &once);
        prop_assert!(twice.certificate.is_zero());
    }

    #[test]
    fn canonical_form_is_linear(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (_, red) = reducer_case(&mut g);
        let r1 = rand_xrat(&mut g, 0, 3, 3, 5);
        let r2 = rand_xrat(&mut g, 0, 3, 3, 5);
        let a = KElem::from_int(0, g.gen_range(-5..=5));
        let b = KElem::from_int(0, g.gen_range(-5..=5));
        let cf = |r: &XRat| red.canonical_form(r).unwrap().reduced;
        prop_assert_eq!(cf(&(&r1.scale(&a) + &r2.scale(&b))), &cf(&r1).scale(&a) + &cf(&r2).scale(&b));
    }

    #[test]
    fn zero_form_means_integrable(seed in any::<u64>()) {
        let mut g = rng(seed);
        let dx = DiffOp::dx(0);
        let red = Reducer::new(&dx).unwrap();
        let r = if g.gen_bool(0.5) {
            dx.apply(&rand_xrat(&mut g, 0, 3, 3, 5))
        } else {
            rand_xrat(&mut g, 0, 3, 3, 5)
        };
        let zero = red.canonical_form(&r).unwrap().reduced.is_zero();
        prop_assert_eq!(zero, brute_force_preimage(&dx, &r, 1).is_some());
    }
}

// ---- oresys ----

fn spec(kind: OreKind) -> OreSpec {
    let name = if kind == OreKind::Shift { "St" } else { "Dt" };
    OreSpec { name: name.into(), kind, param: 0 }
}

fn rand_matrix(g: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<XRat>> {
    (0..dim).map(|_| (0..dim).map(|_| rand_xrat(g, 1, 1, 1, 3)).collect()).collect()
}

fn unit(n: usize, dim: usize, j: usize) -> Vec<XRat> {
    (0..dim).map(|k| if k == j { XRat::one(n) } else { XRat::zero(n) }).collect()
}

/// Σ_k c_k·∂x^k(γ) inside the system.
fn act(sys: &MatrixSystem, op: &DiffOp, gamma: &[XRat]) -> Vec<XRat> {
    let n = sys.nvars();
    let mut acc = vec![XRat::zero(n); sys.dim];
    let mut d = gamma.to_vec();
    for k in 0..=op.order() {
        let c = op.coeff(k);
        for (a, v) in acc.iter_mut().zip(&d) {
            *a = &*a + &(&c * v);
        }
        d = sys.apply_dx(&d);
    }
    acc
}

fn check_cyclic(sys: &MatrixSystem, cd: &CyclicData) -> Result<(), TestCaseError> {
    prop_assert!(act(sys, &cd.l, &cd.gamma).iter().all(|c| c.is_zero()), "L(γ) ≠ 0");
    for (i, b) in cd.b.iter().enumerate() {
        prop_assert_eq!(sys.apply_op(i, &cd.gamma), act(sys, b, &cd.gamma));
    }
    prop_assert_eq!(act(sys, &cd.a_f, &cd.gamma), sys.f.clone());
    // the Wronskian of γ has full rank
    let mut w = vec![cd.gamma.clone()];
    for _ in 1..sys.dim {
        let next = sys.apply_dx(w.last().unwrap());
        w.push(next);
    }
    prop_assert_eq!(span_rank_vectors(&w), sys.dim);
    Ok(())
}

fn span_rank_vectors(vs: &[Vec<XRat>]) -> usize {
    hermite_telescope::field::linalg::rank(vs)
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn companion_system_round_trip(seed in any::<u64>(), shift in any::<bool>()) {
        let mut g = rng(seed);
        let kind = if shift { OreKind::Shift } else { OreKind::Derivation };
        let r = g.gen_range(1..=3);
        let l = rand_op(&mut g, 1, r, 2, 4);
        let rc = g.gen_range(0..=3);
        let c = rand_op(&mut g, 1, rc, 2, 4);
        let sys = ScalarSystem { l: l.clone(), rels: vec![c.clone()], specs: vec![spec(kind)] };
        let (cd, _) = from_scalar(&sys, seed).unwrap();
        prop_assert_eq!(cd.l.order(), r);
        prop_assert!(l.right_remainder(&cd.l).is_zero() && cd.l.right_remainder(&l).is_zero());
        prop_assert_eq!(&cd.b[0], &c.right_remainder(&cd.l));
        let ms = MatrixSystem::from_scalar(&sys).unwrap();
        // column j of A_1 holds ∂x^j·C rem L
        for j in 0..r {
            let col = DiffOp::dx_pow(1, j).mul(&c).right_remainder(&l);
            for k in 0..r {
                prop_assert_eq!(&ms.ops[0][k][j], &col.coeff(k));
            }
        }
        let cv = cyclic_vector(&ms, seed).unwrap();
        prop_assert_eq!(&cv.l, &cd.l);
        prop_assert_eq!(&cv.b[0], &cd.b[0]);
        check_cyclic(&ms, &cv)?;
    }

    #[test]
    fn ore_rule_on_basis_vectors(seed in any::<u64>(), shift in any::<bool>()) {
        let mut g = rng(seed);
        let kind = if shift { OreKind::Shift } else { OreKind::Derivation };
        let s = spec(kind);
        let dim = g.gen_range(1..=3);
        let a = rand_matrix(&mut g, dim);
        let sys = MatrixSystem {
            dim,
            dx: rand_matrix(&mut g, dim),
            ops: vec![a.clone()],
            f: unit(1, dim, 0),
            specs: vec![s.clone()],
        };
        for j in 0..dim {
            let twice = sys.apply_op(0, &sys.apply_op(0, &unit(1, dim, j)));
            for (k, got) in twice.iter().enumerate() {
                let mut want = s.delta(&a[k][j]);
                for m in 0..dim {
                    want = &want + &(&a[k][m] * &s.sigma(&a[m][j]));
                }
                prop_assert_eq!(got, &want);
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(8))]

    #[test]
    fn cyclic_vector_of_a_gauge_transform(seed in any::<u64>()) {
        let mut g = rng(seed);
        let dim = g.gen_range(2..=3);
        let a = rand_matrix(&mut g, dim);
        let t = rand_matrix(&mut g, dim);
        let sys = MatrixSystem {
            dim,
            dx: a,
            ops: vec![t],
            f: (0..dim).map(|_| rand_xrat(&mut g, 1, 1, 0, 3)).collect(),
            specs: vec![spec(OreKind::Derivation)],
        };
        if sys.f.iter().all(|c| c.is_zero()) {
            return Ok(());
        }
        if let Ok(cd) = cyclic_vector(&sys, seed) {
            check_cyclic(&sys, &cd)?;
        }
    }
}

// ---- telescoper ----

fn rand_mono(g: &mut ChaCha8Rng, e: usize) -> DMonomial {
    (0..e).map(|_| g.gen_range(0..4)).collect()
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn term_orders_are_admissible(seed in any::<u64>(), deg in any::<bool>()) {
        let order = if deg { TermOrder::Deglex } else { TermOrder::Grevlex };
        let mut g = rng(seed);
        let e = g.gen_range(1..=3);
        let (a, b, c) = (rand_mono(&mut g, e), rand_mono(&mut g, e), rand_mono(&mut g, e));
        prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
        prop_assert_eq!(order.cmp(&a, &b).is_eq(), a == b);
        if order.cmp(&a, &b).is_le() && order.cmp(&b, &c).is_le() {
            prop_assert!(order.cmp(&a, &c).is_le());
        }
        let add = |x: &DMonomial| -> DMonomial { x.iter().zip(&c).map(|(u, v)| u + v).collect() };
        prop_assert_eq!(order.cmp(&add(&a), &add(&b)), order.cmp(&a, &b));
        prop_assert!(order.cmp(&vec![0; e], &a).is_le());
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        if da != db {
            prop_assert_eq!(order.cmp(&a, &b), da.cmp(&db));
        }
    }
}

/// F_μ recomputed along the path that always lowers the last nonzero exponent.
fn f_along_last(mu: &DMonomial, cd: &CyclicData, specs: &[OreSpec], red: &dyn CanonicalForm) -> XRat {
    match mu.iter().rposition(|&k| k > 0) {
        None => initial_f(cd, red).unwrap().reduced,
        Some(i) => {
            let mut prev = mu.clone();
            prev[i] -= 1;
            let f = f_along_last(&prev, cd, specs, red);
            red.canonical_form(&lambda(i, &f, cd, specs)).unwrap().reduced
        }
    }
}

fn check_sound(text: &str, seed: u64, order: TermOrder) -> usize {
    let prob = parse_problem(text).unwrap();
    let (cd, _) = prob.cyclic_data(seed).unwrap();
    let red = build_reducer(&cd, false, &Default::default()).unwrap();
    let opts = TelescopeOptions { order, seed, ..Default::default() };
    let b = telescope(&cd, &prob.specs, red.as_ref(), &opts).unwrap();
    assert_eq!(b.status, Status::Complete);
    assert!(verify_basis(&b, &b.fs));
    assert_eq!(b.computations, b.fs.len());
    for t in &b.g {
        let n = cd.nvars();
        let mut acc = XRat::zero(n);
        for (m, c) in &t.terms {
            acc = &acc + &f_along_last(m, &cd, &prob.specs, red.as_ref()).scale(c);
        }
        assert!(acc.is_zero(), "telescoper does not annihilate");
    }
    b.q.len()
}

#[test]
fn telescoping_is_sound_and_order_independent() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/problems");
    for file in ["chebyshev-bessel.ct", "hermite.ct", "pathological.ct"] {
        let text = std::fs::read_to_string(format!("{dir}/{file}")).unwrap();
        let dims: Vec<usize> = [(1, TermOrder::Grevlex), (2, TermOrder::Deglex), (99, TermOrder::Grevlex)]
            .iter()
            .map(|&(s, o)| check_sound(&text, s, o))
            .collect();
        assert!(dims.windows(2).all(|w| w[0] == w[1]), "{file}: {dims:?}");
    }
}

proptest! {
    #![proptest_config(cfg(12))]

    /// exp(φ) with φ polynomial in x: every telescoper T gives T(exp φ) = ∂x(Q exp φ).
    #[test]
    fn hyperexponential_telescopers(seed in any::<u64>()) {
        let mut g = rng(seed);
        let d = g.gen_range(2..=3);
        let phi: Vec<KElem> = (0..=d)
            .map(|_| {
                let a = g.gen_range(-3..=3);
                let b = g.gen_range(-2..=2);
                &KElem::from_int(1, a) + &KElem::var(1, 0).scale_rat(&q(b))
            })
            .collect();
        let phi = XPoly::from_coeffs(1, phi);
        if phi.deg() < 2 || phi.derivative().coeffs().iter().all(|c| c.is_rational()) {
            return Ok(());
        }
        let a = XRat::from_poly(phi.derivative());
        let b = XRat::from_poly(phi.map_coeffs(|c| c.derivative(0)));
        let specs = vec![spec(OreKind::Derivation)];
        let sys = ScalarSystem {
            l: DiffOp::from_coeffs(1, vec![-&a, XRat::one(1)]),
            rels: vec![DiffOp::mult(b.clone())],
            specs: specs.clone(),
        };
        let (cd, warnings) = from_scalar(&sys, seed).unwrap();
        prop_assert!(warnings.is_empty());
        let red = build_reducer(&cd, false, &Default::default()).unwrap();
        let opts = TelescopeOptions { max_degree: Some(6), seed, ..Default::default() };
        let basis = telescope(&cd, &specs, red.as_ref(), &opts).unwrap();
        prop_assert!(verify_basis(&basis, &basis.fs));
        let target = DiffOp::from_coeffs(1, vec![a.clone(), XRat::one(1)]);
        for t in &basis.g {
            // T(exp φ) = P·exp φ
            let mut pk = XRat::one(1);
            let mut p = XRat::zero(1);
            for k in 0..=t.terms.iter().map(|(m, _)| m[0]).max().unwrap() {
                if let Some((_, c)) = t.terms.iter().find(|(m, _)| m[0] == k) {
                    p = &p + &pk.scale(c);
                }
                pk = &XRat::from_poly(pk.num().map_coeffs(|c| c.derivative(0))) + &(&pk * &b);
            }
            prop_assert!(brute_force_preimage(&target, &p, 1).is_some());
        }
    }
}

// ---- frontend ----

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let ctx = Context::new(&["n", "p"], "x", &[]);
        let mut g = rng(seed);
        let r = rand_xrat(&mut g, 2, 2, 2, 4);
        prop_assert_eq!(ctx.parse_xrat(&ctx.print_xrat(&r)).unwrap(), r);
        let m = rand_op(&mut g, 2, 2, 1, 4);
        prop_assert_eq!(ctx.parse_op(&ctx.print_op(&m)).unwrap(), m);
    }
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["hermtel"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn json_and_text_agree() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/problems");
    let cases: Vec<Vec<String>> = vec![
        vec!["reduce".into(), format!("{dir}/sample-reduce.ct"), "--certificate".into()],
        vec!["telescope".into(), format!("{dir}/chebyshev-bessel.ct")],
        vec!["telescope".into(), format!("{dir}/pathological.ct"), "--max-degree".into(), "2".into()],
        vec!["exceptional".into(), format!("{dir}/sample-reduce.ct")],
        vec!["localdata".into(), format!("{dir}/sample-reduce.ct"), "--place".into(), "inf".into()],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let (code, text, diag) = run(&a);
        let mut aj = a.clone();
        aj.push("--json");
        let (code_j, json, _) = run(&aj);
        assert_eq!(code, code_j);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let results: Vec<&str> = v["results"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(results, lines, "{args:?}");
        let diags: Vec<&str> = v["diagnostics"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
        assert_eq!(diags, diag.lines().collect::<Vec<_>>(), "{args:?}");
        assert_eq!(run(&a), (code, text, diag), "not deterministic: {args:?}");
    }
}
