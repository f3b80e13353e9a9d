//! Acceptance suite: one test per criterion, exact (zero-tolerance)
//! arithmetic throughout. Each criterion prints a single pass line
//! (visible with --nocapture); a failed assertion is the failure signal.

use weilrep_core::coeff::{CoeffField, CoeffMode, CoeffScalar};
use weilrep_core::field::{rat, Field, Rat};
use weilrep_core::finitefield::{AdditiveCharacter, FqField};
use weilrep_core::heisenberg::{
    commutant_dim, induced_rep_multiplicity, Heisenberg, SchrodingerModel,
};
use weilrep_core::matrix::Matrix;
use weilrep_core::padic::{
    cocycle_evaluate, cocycle_formula_finite, cocycle_identity_check, hilbert_symbol,
    omega_suite_field, splitting_census, stabilized_omega, LocalField, SquareClass,
};
use weilrep_core::rng::SplitMix64;
use weilrep_core::symplectic::{levi, random_sp, random_sp_rat, unipotent, x_class};
use weilrep_core::theta::theta_table;
use weilrep_core::weil::{cocycle_extract, fourier_normalized, WeilContext};

fn context(p: u64, k: usize, m: usize, mode: CoeffMode) -> (FqField, AdditiveCharacter, Heisenberg) {
    let fq = FqField::new(p, k).unwrap();
    let coeff = CoeffField::make_field(p, p, mode).unwrap();
    let psi = AdditiveCharacter::new(&fq, &coeff);
    let h = Heisenberg::new(&fq, m);
    (fq, psi, h)
}

fn stone_von_neumann_cases(mode_of: impl Fn(u64) -> CoeffMode) {
    for (p, k, m) in [(3u64, 1usize, 1usize), (5, 1, 1), (3, 2, 1), (3, 1, 2)] {
        let (fq, psi, h) = context(p, k, m, mode_of(p));
        let model = SchrodingerModel::new(&h, &psi);
        let gens: Vec<Matrix<CoeffScalar>> =
            h.generators().iter().map(|g| model.action(g)).collect();
        assert_eq!(commutant_dim(&gens), 1, "Schur fails at q={} m={}", fq.q(), m);
        let mult = induced_rep_multiplicity(&h, &psi);
        assert_eq!(
            mult,
            (fq.q() as usize).pow(m as u32),
            "isotypic multiplicity fails at q={} m={}",
            fq.q(),
            m
        );
    }
}

#[test]
fn criterion_1_stone_von_neumann() {
    stone_von_neumann_cases(|_| CoeffMode::Char0);
    println!("acceptance 1 (Stone-von Neumann, char 0): PASS");
}

#[test]
fn criterion_2_stone_von_neumann_modular() {
    for ell in [2u64, 7] {
        stone_von_neumann_cases(|_| CoeffMode::CharL(ell));
    }
    println!("acceptance 2 (Stone-von Neumann, char l in {{2, 7}}): PASS");
}

#[test]
fn criterion_3_finite_field_splitting() {
    // sigma(g1) sigma(g2) = sigma(g1 g2) exactly, 200 random pairs in each
    // of Sp2(F_3), Sp2(F_5), Sp4(F_3), in both coefficient characteristics
    let configs: [(u64, usize, usize); 3] = [(3, 1, 1), (5, 1, 1), (3, 1, 2)];
    let modes = [CoeffMode::Char0, CoeffMode::CharL(2), CoeffMode::CharL(7)];
    for mode in modes {
        for (p, k, m) in configs {
            let (fq, psi, h) = context(p, k, m, mode);
            let ctx = WeilContext::new(&SchrodingerModel::new(&h, &psi));
            let one = psi.coeff.one();
            let q = fq.q();
            let mut rng = SplitMix64::new(2026);
            let fq2 = fq.clone();
            let mut rs = move |r: &mut SplitMix64| fq2.element_of_index(r.below(q) as usize);
            for _ in 0..200 {
                let g1 = random_sp(m, &fq.zero(), &mut rng, &mut rs, 8);
                let g2 = random_sp(m, &fq.zero(), &mut rng, &mut rs, 8);
                let lam =
                    cocycle_extract(&ctx.sigma(&g1), &ctx.sigma(&g2), &ctx.sigma(&g1.mul(&g2)))
                        .expect("section values must stay proportional");
                assert_eq!(lam, one, "nontrivial cocycle at q={q} m={m} mode={mode:?}");
            }
        }
    }
    println!("acceptance 3 (finite-field splitting, 200 pairs x 3 groups x 3 modes): PASS");
}

#[test]
fn criterion_4_fourier_normalization() {
    // F^4 = eps^2 id and F^2 f(x) = eps f(-x) for all diagonal rho over
    // F_3, F_5 with m <= 2, with eps matching the closed formula
    for p in [3u64, 5] {
        let (fq, psi, _) = context(p, 1, 1, CoeffMode::Char0);
        let coeff = psi.coeff.clone();
        let nonzero: Vec<i64> = (1..p as i64).collect();
        let chi_m1 = fq.quad_char(&fq.from_i64(-1));
        for m in 1..=2usize {
            let diags: Vec<Vec<i64>> = if m == 1 {
                nonzero.iter().map(|&d| vec![d]).collect()
            } else {
                nonzero
                    .iter()
                    .flat_map(|&d1| nonzero.iter().map(move |&d2| vec![d1, d2]))
                    .collect()
            };
            for diag in diags {
                let rho = Matrix::from_fn(m, m, |r, c| {
                    if r == c {
                        fq.from_i64(diag[r])
                    } else {
                        fq.zero()
                    }
                });
                let (f, eps) = fourier_normalized(&rho, &psi);
                // eps = (-1, det Q_{rho/2})_F chi(-1)^m; the finite symbol is
                // trivial so eps = chi(-1)^m, and eps^2 = (-1,-1)_F^m = 1
                let expect = coeff.from_i64(chi_m1).pow(m as u64);
                assert_eq!(eps, expect);
                assert_eq!(eps.mul(&eps), coeff.one());
                let n = f.rows();
                let q = fq.q() as usize;
                // point reflection x -> -x in the product enumeration
                let mut reflect = Matrix::zero(n, n, &coeff.zero());
                for idx in 0..n {
                    let mut coords = Vec::new();
                    let mut t = idx;
                    for _ in 0..m {
                        coords.push(fq.element_of_index(t % q));
                        t /= q;
                    }
                    let mut target = 0usize;
                    for i in (0..m).rev() {
                        target = target * q + fq.index_of(&coords[i].neg());
                    }
                    *reflect.at_mut(idx, target) = coeff.one();
                }
                let f2 = f.mul(&f);
                assert_eq!(f2, reflect.scale(&eps), "F^2 != eps reflection");
                assert_eq!(
                    f2.mul(&f2),
                    Matrix::identity(n, &coeff.zero()).scale(&eps.mul(&eps)),
                    "F^4 != eps^2 id"
                );
            }
        }
    }
    println!("acceptance 4 (Fourier normalization over F_3, F_5, m <= 2): PASS");
}

#[test]
fn criterion_5_hilbert_symbol_consistency() {
    // closed form = Omega ratio route (stabilized Gauss sums) on all
    // square-class pairs for p in {3, 5}; classical values reproduced
    for p in [3u64, 5] {
        let field = LocalField::qp(p);
        let coeff = omega_suite_field(p);
        let u = (2..p)
            .find(|x| {
                let c = SquareClass::from_rational(&field, &rat(*x as i64));
                hilbert_symbol(&c, &c) != 1 || {
                    // crude nonsquare detection: (u, pi) = -1 iff u nonsquare
                    let pi = SquareClass::from_rational(&field, &rat(p as i64));
                    hilbert_symbol(&c, &pi) == -1
                }
            })
            .unwrap() as i64;
        let reps = [1i64, u, p as i64, u * p as i64];
        let omega_of = |a: i64| stabilized_omega(p, &rat(a), &coeff).expect("must stabilize");
        let o1 = omega_of(1);
        for &a in &reps {
            for &b in &reps {
                let ca = SquareClass::from_rational(&field, &rat(a));
                let cb = SquareClass::from_rational(&field, &rat(b));
                let closed = hilbert_symbol(&ca, &cb);
                // (a,b) Omega_{a,1} Omega_{b,1} = Omega_{ab,1} as elements
                let lhs = coeff.from_i64(closed).mul(&omega_of(a)).mul(&omega_of(b));
                let rhs = omega_of(a * b).mul(&o1);
                assert_eq!(lhs, rhs, "Gauss-sum route disagrees at p={p} ({a},{b})");
            }
        }
    }
    let q2 = LocalField::qp(2);
    let m1 = SquareClass::from_rational(&q2, &rat(-1));
    assert_eq!(hilbert_symbol(&m1, &m1), -1, "(-1,-1)_2 must be -1");
    let q3 = LocalField::qp(3);
    let a = SquareClass::from_rational(&q3, &rat(-1));
    let b = SquareClass::from_rational(&q3, &rat(3));
    assert_eq!(hilbert_symbol(&a, &b), -1, "(-1, pi)_3 must be -1");
    println!("acceptance 5 (Hilbert symbol vs Omega-ratio, p in {{3, 5}} + classics): PASS");
}

#[test]
fn criterion_6_rao_cocycle() {
    // 2-cocycle identity: 100 triples at m = 1 over Q_2, Q_3, Q_5 and
    // 50 triples at m = 2 over Q_3; all values in {+-1}
    for p in [2u64, 3, 5] {
        let field = LocalField::qp(p);
        let report = cocycle_identity_check(&field, 1, 100, 777).unwrap();
        assert!(
            report.failures.is_empty(),
            "cocycle identity fails over Q_{p}: reproducers {:?}",
            report.failures
        );
    }
    let report = cocycle_identity_check(&LocalField::qp(3), 2, 50, 778).unwrap();
    assert!(report.failures.is_empty(), "m = 2 identity fails: {:?}", report.failures);

    // c(g, p) = (x(p), x(g))_F on 100 pairs, and the symmetric variant
    let field = LocalField::qp(3);
    let mut rng = SplitMix64::new(779);
    for _ in 0..100 {
        let g = random_sp_rat(1, &mut rng);
        // random parabolic p = n(b) m(a)
        let mut b = Matrix::zero(1, 1, &rat(0));
        *b.at_mut(0, 0) = rat(rng.signed(4));
        let mut a = Matrix::zero(1, 1, &rat(0));
        let units = [rat(1), rat(-1), rat(2), rat(3), rat(6)];
        *a.at_mut(0, 0) = units[rng.below(5) as usize].clone();
        let p_el = unipotent(&b).mul(&levi(&a));
        let expected = {
            let xp = SquareClass::from_rational(&field, &x_class(&p_el).unwrap());
            let xg = SquareClass::from_rational(&field, &x_class(&g).unwrap());
            hilbert_symbol(&xp, &xg)
        };
        let c1 = cocycle_evaluate(&field, &g, &p_el).unwrap();
        let c2 = cocycle_evaluate(&field, &p_el, &g).unwrap();
        assert!(c1.abs() == 1 && c2.abs() == 1);
        assert_eq!(c1, expected);
        assert_eq!(c2, expected);
    }
    println!("acceptance 6 (Rao cocycle identity + parabolic rule): PASS");
}

#[test]
fn criterion_7_splitting_census() {
    let c3 = splitting_census(&LocalField::qp(3));
    assert_eq!(c3.count, 4, "census over Q_3 must find 4 splittings");
    let idx = |lbl: &str| c3.labels.iter().position(|l| l == lbl).unwrap();
    assert!(
        c3.witnesses.iter().any(|w| {
            w[idx("(-1)^1 pi^0")] == -1
                && w[idx("(-1)^0 pi^1")] == 1
                && w[idx("(-1)^1 pi^1")] == 1
        }),
        "the explicit witness eps_-1 = -1, eps_pi = eps_-pi = 1 must appear"
    );
    let c5 = splitting_census(&LocalField::qp(5));
    assert_eq!(c5.count, 4, "census over Q_5 must find 4 splittings");
    println!("acceptance 7 (splitting census over Q_3 and Q_5): PASS");
}

#[test]
fn criterion_8_theta_desk_scale() {
    for q in [3u64, 5] {
        let (fq, psi, _) = context(q, 1, 1, CoeffMode::Char0);
        let table = theta_table(&fq, &fq.one(), &psi).unwrap();
        assert_eq!(table.omega_dim, q as usize);
        let mut dims: Vec<usize> = table.reports.iter().map(|r| r.quotient_dim).collect();
        dims.sort_unstable();
        let lo = (q as usize - 1) / 2;
        let hi = (q as usize + 1) / 2;
        assert_eq!(dims, vec![lo, hi], "theta dims must partition dim omega at q={q}");
        assert!(table.reports.iter().all(|r| r.nonzero));
        assert!(table.two_sided_consistent, "two-sided computation differs at q={q}");
    }
    println!("acceptance 8 (theta tables for (Sp2(F_3), O_1) and (Sp2(F_5), O_1)): PASS");
}

#[test]
fn criterion_9_cross_validation() {
    // the same cocycle through two routes: the closed formula with all
    // finite-field symbols (identically 1) and the operator-level scalar
    let (fq, psi, h) = context(3, 1, 1, CoeffMode::Char0);
    let ctx = WeilContext::new(&SchrodingerModel::new(&h, &psi));
    let one = psi.coeff.one();
    let mut rng = SplitMix64::new(2027);
    let fq2 = fq.clone();
    let mut rs = move |r: &mut SplitMix64| fq2.element_of_index(r.below(3) as usize);
    for _ in 0..50 {
        let g1 = random_sp(1, &fq.zero(), &mut rng, &mut rs, 8);
        let g2 = random_sp(1, &fq.zero(), &mut rng, &mut rs, 8);
        let formula = cocycle_formula_finite(&g1, &g2).unwrap();
        let operator =
            cocycle_extract(&ctx.sigma(&g1), &ctx.sigma(&g2), &ctx.sigma(&g1.mul(&g2))).unwrap();
        assert_eq!(formula, 1);
        assert_eq!(operator, one);
        assert_eq!(psi.coeff.from_i64(formula), operator);
    }
    println!("acceptance 9 (formula route vs operator route): PASS");
}

// The coefficient-field side conditions the criteria rely on, asserted once:
// exact rationals never silently lose precision and Rat is the scalar type
// of all p-adic matrices.
#[test]
fn rational_scalars_are_exact() {
    let a: Rat = rat(1) / rat(3);
    let b: Rat = rat(1) / rat(6);
    assert_eq!(a.sub(&b), rat(1) / rat(6));
}
