//! The Weil representation of Sp(2m, F_q): the normalized section sigma,
//! the averaging operator M[g], scalar cocycle extraction, the normalized
//! Fourier transform with its epsilon constant, and character tables.
//!
//! sigma(g) is the change-of-model operator I_{gX, X, mu_g, 0} composed with
//! the translation I_g, evaluated on the Schrödinger model. The measure
//! normalization mu_g = Omega_{1, det_X(p1 p2)} phi_1 mu_{w_j} makes sigma
//! multiplicative over a finite field (the metaplectic cocycle is trivial
//! there), which the acceptance suite checks exhaustively at random.
//!
//! Conjugation conventions are pinned by tests: sigma(g) rho(h) sigma(g)^-1
//! equals rho(g . h), while the averaging operator M[g], built from
//! (1 - g^{-1}) w, satisfies M[g] rho(h) M[g]^{-1} = rho(g^{-1} . h); hence
//! sigma(g) is proportional to M[g^{-1}] (both span the same line).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::CoeffScalar;
use crate::field::Field;
use crate::finitefield::{gauss_sum, AdditiveCharacter, FqElement, FqField};
use crate::heisenberg::{HeisenbergElement, SchrodingerModel};
use crate::matrix::Matrix;
use crate::symplectic::{
    bruhat_decompose, det_x, g_x, intersection_with_x, is_symplectic, levi, sp_inverse,
    unipotent, w_builder, BruhatData,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeilError {
    NotSymplectic,
    NonScalarDiscrepancy,
    GroupTooLarge,
}

/// Evaluation context: the Schrödinger model of the Heisenberg group of W.
#[derive(Clone, Debug)]
pub struct WeilContext {
    pub model: SchrodingerModel,
}

impl WeilContext {
    pub fn new(model: &SchrodingerModel) -> WeilContext {
        WeilContext { model: model.clone() }
    }

    fn fq(&self) -> &FqField {
        &self.model.h.fq
    }

    fn psi(&self) -> &AdditiveCharacter {
        &self.model.psi
    }

    /// Quadratic character value embedded in the coefficient field.
    fn chi(&self, d: &FqElement) -> CoeffScalar {
        match self.fq().quad_char(d) {
            1 => self.psi().coeff.one(),
            -1 => self.psi().coeff.from_i64(-1),
            _ => panic!("chi of zero"),
        }
    }

    /// The action of g on H: g . (w, t) = (g w, t).
    pub fn sp_act(&self, g: &Matrix<FqElement>, h: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement { w: g.mul_vec(&h.w), t: h.t.clone() }
    }

    /// sigma(g) via a fresh Bruhat decomposition of g.
    pub fn sigma(&self, g: &Matrix<FqElement>) -> Matrix<CoeffScalar> {
        let b = bruhat_decompose(g).expect("sigma needs a symplectic input");
        self.sigma_from_bruhat(g, &b)
    }

    /// The per-point mass of mu_g: Omega_{1, det_X(p1 p2)} Omega(psi . Q_j)^{-1}
    /// under the counting normalization.
    pub fn mu_g_constant(&self, b: &BruhatData<FqElement>) -> CoeffScalar {
        let fq = self.fq().clone();
        let psi = self.psi().clone();
        let half = fq.half();
        let d = det_x(&b.p1).mul(&det_x(&b.p2));
        let g_half = gauss_sum(&psi, &half);
        self.chi(&d)
            .mul(&g_half.pow(b.j as u64).inv().expect("Gauss sum invertible"))
    }

    /// The section with the raw counting measure (the Omega corrections of
    /// mu_g dropped); multiplicative only up to the coboundary of mu_g.
    pub fn sigma_raw(&self, g: &Matrix<FqElement>) -> Matrix<CoeffScalar> {
        let b = bruhat_decompose(g).expect("sigma needs a symplectic input");
        let c = self.mu_g_constant(&b);
        self.sigma_from_bruhat(g, &b).scale(&c.inv().unwrap())
    }

    /// sigma(g) evaluated with an externally chosen Bruhat decomposition
    /// (the result must not depend on it: mu_g is decomposition-free).
    pub fn sigma_from_bruhat(
        &self,
        g: &Matrix<FqElement>,
        b: &BruhatData<FqElement>,
    ) -> Matrix<CoeffScalar> {
        let m = self.model.h.m;
        let fq = self.fq().clone();
        let psi = self.psi().clone();
        let coeff = psi.coeff.clone();
        let n = self.model.dim();
        let g_inv = sp_inverse(g);
        let half = fq.half();

        // per-point mass of mu_g: over F_q the Omega_{1, det} factor is
        // chi(det) and the cell form x -> x^2/2 contributes a Gauss sum per
        // pivot (the pairing <gamma_S x, x> is a sum of squares)
        let c_g = self.mu_g_constant(b);

        // coset representatives of (gX n X) \ X inside X
        let inter = intersection_with_x(&g_x(g));
        let mut span_cols: Vec<Vec<FqElement>> = (0..inter.cols()).map(|c| inter.column(c)).collect();
        let mut comp_cols: Vec<Vec<FqElement>> = Vec::new();
        for i in 0..m {
            let mut e_i = vec![fq.zero(); m];
            e_i[i] = fq.one();
            let mut test = span_cols.clone();
            test.push(e_i.clone());
            if test.len() == 1 || Matrix::from_columns(test.clone()).rank() == span_cols.len() + 1 {
                span_cols.push(e_i.clone());
                comp_cols.push(e_i);
            }
        }
        assert_eq!(comp_cols.len(), b.j, "complement size must equal the cell");

        let q = fq.q() as usize;
        let mut out = Matrix::zero(n, n, &coeff.zero());
        for row in 0..n {
            let y = self.model.y_of_index(row);
            for rep_idx in 0..q.pow(b.j as u32) {
                // a in X spanned by the complement columns
                let mut a = vec![fq.zero(); m];
                let mut idx = rep_idx;
                for col in &comp_cols {
                    let coord = fq.element_of_index(idx % q);
                    idx /= q;
                    for (r, cr) in col.iter().enumerate() {
                        a[r] = a[r].add(&cr.mul(&coord));
                    }
                }
                // w' = g^{-1} (a + y); phase psi(<a,y>/2 - <w'_X, w'_Y>/2)
                let mut v = vec![fq.zero(); 2 * m];
                for i in 0..m {
                    v[i] = a[i].clone();
                    v[m + i] = y[i].clone();
                }
                let w = g_inv.mul_vec(&v);
                let (wx, wy) = w.split_at(m);
                let mut pair_ay = fq.zero();
                for i in 0..m {
                    pair_ay = pair_ay.add(&a[i].mul(&y[i]));
                }
                let mut pair_w = fq.zero();
                for i in 0..m {
                    pair_w = pair_w.add(&wx[i].mul(&wy[i]));
                }
                let arg = pair_ay.sub(&pair_w).mul(&half);
                let col = self.model.y_index(wy);
                let val = out.at(row, col).add(&c_g.mul(&psi.eval(&arg)));
                *out.at_mut(row, col) = val;
            }
        }
        out
    }

    /// The averaging operator M[g] = sum over W / Ker(1 - g^{-1}) of
    /// psi(<w, g^{-1} w>/2) rho((1 - g^{-1}) w, 0), counting measure.
    pub fn mg_operator(&self, g: &Matrix<FqElement>) -> Matrix<CoeffScalar> {
        assert!(is_symplectic(g));
        let m = self.model.h.m;
        let fq = self.fq().clone();
        let h = &self.model.h;
        let half = fq.half();
        let g_inv = sp_inverse(g);
        let one_minus = Matrix::identity(2 * m, &fq.zero()).sub(&g_inv);
        // complement of Ker(1 - g^{-1}) in W
        let kernel = one_minus.kernel_basis();
        let mut span: Vec<Vec<FqElement>> = kernel.clone();
        let mut comp: Vec<Vec<FqElement>> = Vec::new();
        for i in 0..2 * m {
            let mut e_i = vec![fq.zero(); 2 * m];
            e_i[i] = fq.one();
            let mut test = span.clone();
            test.push(e_i.clone());
            if test.len() == 1 || Matrix::from_columns(test.clone()).rank() == span.len() + 1 {
                span.push(e_i.clone());
                comp.push(e_i);
            }
        }
        let q = fq.q() as usize;
        let n = self.model.dim();
        let mut acc = Matrix::zero(n, n, &self.psi().coeff.zero());
        for rep_idx in 0..q.pow(comp.len() as u32) {
            let mut w = vec![fq.zero(); 2 * m];
            let mut idx = rep_idx;
            for col in &comp {
                let coord = fq.element_of_index(idx % q);
                idx /= q;
                for (r, cr) in col.iter().enumerate() {
                    w[r] = w[r].add(&cr.mul(&coord));
                }
            }
            let gw = g_inv.mul_vec(&w);
            let phase = self.psi().eval(&h.form(&w, &gw).mul(&half));
            let moved: Vec<FqElement> = one_minus.mul_vec(&w);
            let el = h.element(moved, fq.zero());
            acc = acc.add(&self.model.action(&el).scale(&phase));
        }
        acc
    }
}

/// Extracts the scalar lambda with s1 s2 = lambda * s12 (Schur); errors on a
/// genuine non-scalar discrepancy, which would indicate a broken intertwiner.
pub fn cocycle_extract(
    s1: &Matrix<CoeffScalar>,
    s2: &Matrix<CoeffScalar>,
    s12: &Matrix<CoeffScalar>,
) -> Result<CoeffScalar, WeilError> {
    let prod = s1.mul(s2);
    let n = s12.rows();
    // first structurally nonzero entry of s12
    let mut lambda = None;
    'outer: for r in 0..n {
        for c in 0..n {
            if !s12.at(r, c).is_zero() {
                lambda = Some(prod.at(r, c).mul(&s12.at(r, c).inv().unwrap()));
                break 'outer;
            }
        }
    }
    let lambda = lambda.ok_or(WeilError::NonScalarDiscrepancy)?;
    if prod == s12.scale(&lambda) {
        Ok(lambda)
    } else {
        Err(WeilError::NonScalarDiscrepancy)
    }
}

/// Normalized Fourier transform attached to an invertible symmetric rho over
/// F_q: operator F with measure mu_rho = Omega(psi . Q_{rho/2})^{-1} mu, and
/// the constant epsilon = (-1, det Q_{rho/2})_F Omega_{-1,1}^m satisfying
/// F^2 f (x) = epsilon f(-x) and F^4 = epsilon^2.
pub fn fourier_normalized(
    rho: &Matrix<FqElement>,
    psi: &AdditiveCharacter,
) -> (Matrix<CoeffScalar>, CoeffScalar) {
    let m = rho.rows();
    assert_eq!(*rho, rho.transpose(), "rho must be symmetric");
    assert!(rho.inverse().is_some(), "rho must be invertible");
    let fq = psi.fq.clone();
    let coeff = psi.coeff.clone();
    let half = fq.half();
    let q = fq.q() as usize;
    let n = q.pow(m as u32);
    let point = |mut idx: usize| -> Vec<FqElement> {
        let mut v = Vec::with_capacity(m);
        for _ in 0..m {
            v.push(fq.element_of_index(idx % q));
            idx /= q;
        }
        v
    };
    let quad = |x: &[FqElement]| -> FqElement {
        // x^T rho x / 2
        let rx = rho.mul_vec(x);
        let mut acc = fq.zero();
        for i in 0..m {
            acc = acc.add(&x[i].mul(&rx[i]));
        }
        acc.mul(&half)
    };
    let mut omega = coeff.zero();
    for idx in 0..n {
        omega = omega.add(&psi.eval(&quad(&point(idx))));
    }
    let weight = omega.inv().expect("Omega(psi . Q) is invertible");
    let mut f = Matrix::zero(n, n, &coeff.zero());
    for r in 0..n {
        let x = point(r);
        let rx = rho.mul_vec(&x);
        for c in 0..n {
            let u = point(c);
            let mut arg = fq.zero();
            for i in 0..m {
                arg = arg.add(&rx[i].mul(&u[i]));
            }
            *f.at_mut(r, c) = weight.mul(&psi.eval(&arg));
        }
    }
    // epsilon = (-1, det Q_{rho/2})_F * Omega_{-1,1}^m; over a finite field
    // the symbol is +1 and Omega_{-1,1} = chi(-1)
    let det_q = rho.det().mul(&half.pow(m as u64));
    let symbol = crate::finitefield::hilbert_symbol_finite(psi, &fq.from_i64(-1), &det_q);
    let chi_m1 = fq.quad_char(&fq.from_i64(-1));
    let eps = coeff
        .from_i64(symbol)
        .mul(&coeff.from_i64(chi_m1).pow(m as u64));
    (f, eps)
}

/// Group enumeration by closure from generators (BFS). Errors above the
/// element bound.
pub fn enumerate_sp_group(
    fq: &FqField,
    m: usize,
    bound: usize,
) -> Result<Vec<Matrix<FqElement>>, WeilError> {
    let zero = fq.zero();
    let mut gens: Vec<Matrix<FqElement>> = Vec::new();
    // Siegel unipotents for the symmetric matrix basis
    for i in 0..m {
        for j in i..m {
            for pw in 0..fq.k() {
                let mut b = Matrix::zero(m, m, &zero);
                let v = fq.gen().pow(pw as u64);
                *b.at_mut(i, j) = v.clone();
                *b.at_mut(j, i) = v;
                gens.push(unipotent(&b));
            }
        }
    }
    // Levi generators: transvections and a primitive scaling
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let mut a = Matrix::identity(m, &zero);
                *a.at_mut(i, j) = fq.one();
                gens.push(levi(&a));
            }
        }
    }
    let mut prim = fq.gen();
    if m >= 1 {
        // find a multiplicative generator of F_q^*
        let order = fq.q() - 1;
        let els = fq.elements();
        for x in els {
            if x.is_zero() {
                continue;
            }
            let mut ok = true;
            for d in 1..order {
                if order % d == 0 && d < order && x.pow(d) == fq.one() {
                    ok = false;
                    break;
                }
            }
            if ok {
                prim = x;
                break;
            }
        }
        let mut a = Matrix::identity(m, &zero);
        *a.at_mut(0, 0) = prim;
        gens.push(levi(&a));
    }
    gens.push(w_builder(m, &(0..m).collect::<Vec<_>>(), &zero));

    let key = |g: &Matrix<FqElement>| -> Vec<u64> {
        let mut k = Vec::with_capacity(4 * m * m);
        for r in 0..2 * m {
            for c in 0..2 * m {
                k.push(fq.index_of(g.at(r, c)) as u64);
            }
        }
        k
    };
    let id = Matrix::identity(2 * m, &zero);
    let mut seen = BTreeMap::new();
    seen.insert(key(&id), 0usize);
    let mut elems = vec![id];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let g = elems[i].clone();
        for gen in &gens {
            let ng = g.mul(gen);
            let k = key(&ng);
            if !seen.contains_key(&k) {
                if elems.len() >= bound {
                    return Err(WeilError::GroupTooLarge);
                }
                seen.insert(k, elems.len());
                frontier.push(elems.len());
                elems.push(ng);
            }
        }
    }
    Ok(elems)
}

/// Conjugacy classes of an explicitly enumerated matrix group: a partition
/// by orbit closure under conjugation, no character-theory shortcuts.
pub fn conjugacy_classes(group: &[Matrix<FqElement>], fq: &FqField) -> Vec<Vec<usize>> {
    let key = |g: &Matrix<FqElement>| -> Vec<u64> {
        let n = g.rows();
        let mut k = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                k.push(fq.index_of(g.at(r, c)) as u64);
            }
        }
        k
    };
    let index: BTreeMap<Vec<u64>, usize> =
        group.iter().enumerate().map(|(i, g)| (key(g), i)).collect();
    let mut assigned = vec![usize::MAX; group.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..group.len() {
        if assigned[start] != usize::MAX {
            continue;
        }
        let class_id = classes.len();
        let mut members = vec![start];
        assigned[start] = class_id;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            for h in group {
                let conj = h.mul(&group[i]).mul(&sp_inverse(h));
                let j = index[&key(&conj)];
                if assigned[j] == usize::MAX {
                    assigned[j] = class_id;
                    members.push(j);
                    frontier.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

pub struct WeilCharacter {
    /// one representative index per class
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub traces: Vec<CoeffScalar>,
    /// the exact norm <chi, chi> = |G|^{-1} sum chi(g) chi(g^{-1})
    pub norm: CoeffScalar,
}

/// Character of the Weil representation per conjugacy class of Sp(2m, F_q),
/// with the exact character norm.
pub fn weil_character(
    ctx: &WeilContext,
    group: &[Matrix<FqElement>],
) -> Result<WeilCharacter, WeilError> {
    let fq = ctx.fq().clone();
    let coeff = ctx.psi().coeff.clone();
    let classes = conjugacy_classes(group, &fq);
    let sigmas: Vec<Matrix<CoeffScalar>> = group.iter().map(|g| ctx.sigma(g)).collect();
    let traces_all: Vec<CoeffScalar> = sigmas.iter().map(|s| s.trace()).collect();
    let key = |g: &Matrix<FqElement>| -> Vec<u64> {
        let n = g.rows();
        (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| fq.index_of(g.at(r, c)) as u64)
            .collect()
    };
    let index: BTreeMap<Vec<u64>, usize> =
        group.iter().enumerate().map(|(i, g)| (key(g), i)).collect();
    let mut norm = coeff.zero();
    for (i, g) in group.iter().enumerate() {
        let gi = index[&key(&sp_inverse(g))];
        norm = norm.add(&traces_all[i].mul(&traces_all[gi]));
    }
    let order = coeff.from_i64(group.len() as i64);
    let norm = norm.mul(&order.inv().unwrap());
    let mut class_reps = Vec::new();
    let mut class_sizes = Vec::new();
    let mut traces = Vec::new();
    for class in &classes {
        let rep = class[0];
        // traces must be class functions; verify exactly
        for &i in class {
            debug_assert!(traces_all[i] == traces_all[rep]);
        }
        class_reps.push(rep);
        class_sizes.push(class.len());
        traces.push(traces_all[rep].clone());
    }
    Ok(WeilCharacter { class_reps, class_sizes, traces, norm })
}

/// Splits the Weil representation by the involution sigma(-id): returns the
/// (+1, -1) eigenspace bases as column matrices. Characteristic must not be
/// 2 so that the projectors (1 +- c)/2 exist.
pub fn parity_split(ctx: &WeilContext) -> (Matrix<CoeffScalar>, Matrix<CoeffScalar>) {
    let m = ctx.model.h.m;
    let fq = ctx.fq().clone();
    let minus_id = Matrix::identity(2 * m, &fq.zero()).map(|x| x.neg());
    let c = ctx.sigma(&minus_id);
    let n = ctx.model.dim();
    let coeff = ctx.psi().coeff.clone();
    let id = Matrix::identity(n, &coeff.zero());
    assert_eq!(c.mul(&c), id, "sigma(-1)^2 must be the identity");
    let two_inv = coeff.from_i64(2).inv().expect("characteristic 2 coefficients");
    let p_plus = id.add(&c).scale(&two_inv);
    let p_minus = id.sub(&c).scale(&two_inv);
    let col_basis = |p: &Matrix<CoeffScalar>| -> Matrix<CoeffScalar> {
        let mut cols: Vec<Vec<CoeffScalar>> = Vec::new();
        for i in 0..n {
            let cand = p.column(i);
            if cand.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut test = cols.clone();
            test.push(cand.clone());
            if Matrix::from_columns(test).rank() == cols.len() + 1 {
                cols.push(cand);
            }
        }
        Matrix::from_columns(cols)
    };
    (col_basis(&p_plus), col_basis(&p_minus))
}
