//! The Heisenberg group H = W x F over F_q, its Schrödinger model on
//! functions on Y, commutants, induced-representation multiplicities, and
//! change-of-model intertwiners between lagrangians.
//!
//! Group law: (w, t) (w', t') = (w + w', t + t' + <w, w'>/2); the center is
//! F embedded as t -> (0, t). All model operators here are monomial
//! (permutation-with-phase) with respect to the fixed point-indicator basis,
//! which the intertwining-space solver exploits.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::CoeffScalar;
use crate::field::Field;
use crate::finitefield::{AdditiveCharacter, FqElement, FqField, HaarConstant};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heisenberg {
    pub fq: FqField,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergElement {
    /// 2m coordinates in the basis (e_1..e_m, f_1..f_m)
    pub w: Vec<FqElement>,
    pub t: FqElement,
}

impl Heisenberg {
    pub fn new(fq: &FqField, m: usize) -> Heisenberg {
        Heisenberg { fq: fq.clone(), m }
    }

    pub fn order(&self) -> u64 {
        self.fq.q().pow(2 * self.m as u32 + 1)
    }

    /// Standard symplectic form on coordinate vectors.
    pub fn form(&self, a: &[FqElement], b: &[FqElement]) -> FqElement {
        let m = self.m;
        let mut acc = self.fq.zero();
        for i in 0..m {
            acc = acc.add(&a[i].mul(&b[m + i]));
            acc = acc.sub(&a[m + i].mul(&b[i]));
        }
        acc
    }

    pub fn identity(&self) -> HeisenbergElement {
        HeisenbergElement {
            w: vec![self.fq.zero(); 2 * self.m],
            t: self.fq.zero(),
        }
    }

    pub fn element(&self, w: Vec<FqElement>, t: FqElement) -> HeisenbergElement {
        assert_eq!(w.len(), 2 * self.m);
        HeisenbergElement { w, t }
    }

    pub fn h_mul(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        let w: Vec<FqElement> = a.w.iter().zip(&b.w).map(|(x, y)| x.add(y)).collect();
        let tw = self.form(&a.w, &b.w).mul(&self.fq.half());
        HeisenbergElement {
            w,
            t: a.t.add(&b.t).add(&tw),
        }
    }

    pub fn h_inv(&self, a: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement {
            w: a.w.iter().map(|x| x.neg()).collect(),
            t: a.t.neg(),
        }
    }

    /// All q^{2m+1} elements, enumeration order (w-index, t-index).
    pub fn elements(&self) -> Vec<HeisenbergElement> {
        let q = self.fq.q() as usize;
        let n = 2 * self.m;
        let mut out = Vec::with_capacity(q.pow(n as u32 + 1));
        for widx in 0..q.pow(n as u32) {
            let mut idx = widx;
            let mut w = Vec::with_capacity(n);
            for _ in 0..n {
                w.push(self.fq.element_of_index(idx % q));
                idx /= q;
            }
            for tix in 0..q {
                out.push(HeisenbergElement {
                    w: w.clone(),
                    t: self.fq.element_of_index(tix),
                });
            }
        }
        out
    }

    /// A generating set: the coordinate lines of W over F_p plus the center.
    pub fn generators(&self) -> Vec<HeisenbergElement> {
        let mut gens = Vec::new();
        for i in 0..2 * self.m {
            for pw in 0..self.fq.k() {
                let mut w = vec![self.fq.zero(); 2 * self.m];
                w[i] = self.fq.gen().pow(pw as u64);
                gens.push(HeisenbergElement { w, t: self.fq.zero() });
            }
        }
        gens.push(HeisenbergElement {
            w: vec![self.fq.zero(); 2 * self.m],
            t: self.fq.one(),
        });
        gens
    }
}

/// A permutation-with-phase operator: row r has its unique nonzero entry
/// coeff[r] in column col_of_row[r].
#[derive(Clone, Debug)]
pub struct MonomialOp {
    pub col_of_row: Vec<usize>,
    pub coeff: Vec<CoeffScalar>,
}

impl MonomialOp {
    pub fn to_matrix(&self) -> Matrix<CoeffScalar> {
        let n = self.col_of_row.len();
        let zero = self.coeff[0].zero_of();
        let mut m = Matrix::zero(n, n, &zero);
        for r in 0..n {
            *m.at_mut(r, self.col_of_row[r]) = self.coeff[r].clone();
        }
        m
    }
}

/// The Schrödinger model of the metaplectic representation: functions on
/// Y = F_q^m, indexed by the field enumeration in the f-basis.
#[derive(Clone, Debug)]
pub struct SchrodingerModel {
    pub h: Heisenberg,
    pub psi: AdditiveCharacter,
}

impl SchrodingerModel {
    pub fn new(h: &Heisenberg, psi: &AdditiveCharacter) -> SchrodingerModel {
        assert_eq!(h.fq, psi.fq);
        SchrodingerModel { h: h.clone(), psi: psi.clone() }
    }

    pub fn dim(&self) -> usize {
        (self.h.fq.q() as usize).pow(self.h.m as u32)
    }

    pub fn y_index(&self, y: &[FqElement]) -> usize {
        let q = self.h.fq.q() as usize;
        let mut idx = 0usize;
        for i in (0..self.h.m).rev() {
            idx = idx * q + self.h.fq.index_of(&y[i]);
        }
        idx
    }

    pub fn y_of_index(&self, mut idx: usize) -> Vec<FqElement> {
        let q = self.h.fq.q() as usize;
        let mut y = Vec::with_capacity(self.h.m);
        for _ in 0..self.h.m {
            y.push(self.h.fq.element_of_index(idx % q));
            idx /= q;
        }
        y
    }

    /// rho_psi(h) f : y -> psi(<y, w_X> + <w_Y, w_X>/2 + t) f(y + w_Y).
    pub fn action_monomial(&self, el: &HeisenbergElement) -> MonomialOp {
        let m = self.h.m;
        let fq = &self.h.fq;
        let w_x = &el.w[..m];
        let w_y = &el.w[m..];
        let half = fq.half();
        let n = self.dim();
        let mut col_of_row = vec![0usize; n];
        let mut coeff = Vec::with_capacity(n);
        // <w_Y, w_X>/2 with the 2m-dim form: <(0,w_Y), (w_X,0)> = -sum w_y w_x
        let mut cross = fq.zero();
        for i in 0..m {
            cross = cross.sub(&w_y[i].mul(&w_x[i]));
        }
        let cross = cross.mul(&half);
        for row in 0..n {
            let y = self.y_of_index(row);
            // <y, w_X> = -sum y_i (w_X)_i with y in the f-part
            let mut pair = fq.zero();
            for i in 0..m {
                pair = pair.sub(&y[i].mul(&w_x[i]));
            }
            let arg = pair.add(&cross).add(&el.t);
            let target: Vec<FqElement> = (0..m).map(|i| y[i].add(&w_y[i])).collect();
            col_of_row[row] = self.y_index(&target);
            coeff.push(self.psi.eval(&arg));
        }
        MonomialOp { col_of_row, coeff }
    }

    pub fn action(&self, el: &HeisenbergElement) -> Matrix<CoeffScalar> {
        self.action_monomial(el).to_matrix()
    }
}

/// Dimension over R of {A : A g = g A for every generator}, by exact kernel
/// of the linear commutant system.
pub fn commutant_dim(gens: &[Matrix<CoeffScalar>]) -> usize {
    assert!(!gens.is_empty());
    let n = gens[0].rows();
    let zero = gens[0].sample().zero_of();
    let mut rows: Vec<Vec<CoeffScalar>> = Vec::new();
    for g in gens {
        // (A g - g A)[i][j] = sum_k A[i][k] g[k][j] - g[i][k] A[k][j]
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![zero.clone(); n * n];
                for k in 0..n {
                    row[i * n + k] = row[i * n + k].add(g.at(k, j));
                    row[k * n + j] = row[k * n + j].sub(g.at(i, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows);
    n * n - system.rank()
}

/// Dimension of Hom(A, B) = {F : F A(g) = B(g) F over the generators} for
/// two monomial representations, via weighted orbit propagation on the
/// matrix cells. Exact: a cell conflict kills its whole orbit (value 0).
pub fn monomial_hom_dim(
    dim_a: usize,
    dim_b: usize,
    gens_a: &[MonomialOp],
    gens_b: &[MonomialOp],
) -> usize {
    assert_eq!(gens_a.len(), gens_b.len());
    let cells = dim_b * dim_a;
    let one = gens_a[0].coeff[0].one_of();
    let mut parent: Vec<usize> = (0..cells).collect();
    let mut weight: Vec<CoeffScalar> = vec![one.clone(); cells];
    let mut dead: Vec<bool> = vec![false; cells];

    fn find(parent: &mut [usize], weight: &mut [CoeffScalar], x: usize) -> (usize, CoeffScalar) {
        if parent[x] == x {
            return (x, weight[x].clone());
        }
        let (root, wp) = find(parent, weight, parent[x]);
        let w = weight[x].mul(&wp);
        parent[x] = root;
        weight[x] = w.clone();
        (root, w)
    }

    for (ga, gb) in gens_a.iter().zip(gens_b.iter()) {
        // invert the row-monomial data: sigma(col) = row reached
        // B(g)[i, sb(i)] = beta_i ; A(g)[j, sa(j)] = alpha_j
        // relation: F[i, j] * alpha_j = beta_i * F[sb(i), sa(j)]
        for i in 0..dim_b {
            for j in 0..dim_a {
                let c1 = i * dim_a + j;
                let c2 = gb.col_of_row[i] * dim_a + ga.col_of_row[j];
                // wait: the relation pairs (i, j) with (sb(i), sa(j)) where
                // the monomial op acts as f'(r) = coeff[r] f(col(r)); as a
                // matrix B[r, col(r)] = coeff[r]. Derivation below uses
                // F A = B F entrywise at (i, j):
                //   lhs: F[i, ?]: (F A)[i, j] = sum_k F[i,k] A[k,j]
                //        A[k, j] nonzero iff j = col_a(k)
                //   rhs: (B F)[i, j] = coeff_b[i] F[col_b(i), j]
                // so for every k with col_a(k) = j:
                //   F[i, k] coeff_a[k] = coeff_b[i] F[col_b(i), j] ... but A
                // is invertible so k = col_a^{-1}(j) is unique; reindex by k:
                //   F[i, k] coeff_a[k] = coeff_b[i] F[col_b(i), col_a(k)]
                let _ = c2;
                let k = j; // reindexed form: j plays the role of k
                let target = gb.col_of_row[i] * dim_a + ga.col_of_row[k];
                // val(c1) * alpha_k = beta_i * val(target)
                // => val(c1) = beta_i alpha_k^{-1} val(target)
                let ratio = gb.coeff[i].mul(&ga.coeff[k].inv().expect("monomial op singular"));
                let (r1, w1) = find(&mut parent, &mut weight, c1);
                let (r2, w2) = find(&mut parent, &mut weight, target);
                if r1 == r2 {
                    // consistency: w1 must equal ratio * w2
                    if w1 != ratio.mul(&w2) {
                        dead[r1] = true;
                    }
                } else {
                    // val(c1) = w1 val(r1), val(target) = w2 val(r2)
                    // equation: w1 val(r1) = ratio w2 val(r2)
                    // set r1's parent to r2 with weight ratio w2 / w1
                    let wnew = ratio.mul(&w2).mul(&w1.inv().unwrap());
                    let was_dead = dead[r1];
                    parent[r1] = r2;
                    weight[r1] = wnew;
                    if was_dead {
                        dead[r2] = true;
                    }
                }
            }
        }
    }
    let mut alive = 0usize;
    let mut roots: Vec<usize> = Vec::new();
    for x in 0..cells {
        let (r, _) = find(&mut parent, &mut weight, x);
        if !roots.contains(&r) {
            roots.push(r);
            if !dead[r] {
                alive += 1;
            }
        }
    }
    alive
}

/// Builds ind_F^H(psi) as a monomial representation on H/F = W and returns
/// its rho_psi-multiplicity, verifying isotypy by the dimension count.
pub fn induced_rep_multiplicity(h: &Heisenberg, psi: &AdditiveCharacter) -> usize {
    let q = h.fq.q() as usize;
    let n_w = 2 * h.m;
    let dim_ind = q.pow(n_w as u32);
    let w_index = |w: &[FqElement]| -> usize {
        let mut idx = 0usize;
        for i in (0..n_w).rev() {
            idx = idx * q + h.fq.index_of(&w[i]);
        }
        idx
    };
    let w_of_index = |mut idx: usize| -> Vec<FqElement> {
        let mut w = Vec::with_capacity(n_w);
        for _ in 0..n_w {
            w.push(h.fq.element_of_index(idx % q));
            idx /= q;
        }
        w
    };
    // right translation: (rho(h0) f)(w) = psi(t0 + <w, w0>/2) f(w + w0)
    let ind_action = |el: &HeisenbergElement| -> MonomialOp {
        let mut col_of_row = vec![0usize; dim_ind];
        let mut coeff = Vec::with_capacity(dim_ind);
        let half = h.fq.half();
        for row in 0..dim_ind {
            let w = w_of_index(row);
            let arg = el.t.add(&h.form(&w, &el.w).mul(&half));
            let target: Vec<FqElement> = w.iter().zip(&el.w).map(|(a, b)| a.add(b)).collect();
            col_of_row[row] = w_index(&target);
            coeff.push(psi.eval(&arg));
        }
        MonomialOp { col_of_row, coeff }
    };
    let model = SchrodingerModel::new(h, psi);
    let gens = h.generators();
    let gens_ind: Vec<MonomialOp> = gens.iter().map(|g| ind_action(g)).collect();
    let gens_mod: Vec<MonomialOp> = gens.iter().map(|g| model.action_monomial(g)).collect();
    let mult = monomial_hom_dim(dim_ind, model.dim(), &gens_ind, &gens_mod);
    // isotypy: multiplicity * dim(rho_psi) must exhaust the induced space
    assert_eq!(
        mult * model.dim(),
        dim_ind,
        "ind_F^H(psi) failed the isotypic dimension count"
    );
    mult
}

/// Model of the metaplectic representation attached to an arbitrary
/// lagrangian A (basis columns of `a_basis`), realized on functions on a
/// complement C. The character psi_A extends psi trivially on A (p odd).
#[derive(Clone, Debug)]
pub struct LagrangianModel {
    pub h: Heisenberg,
    pub psi: AdditiveCharacter,
    pub a_basis: Matrix<FqElement>,
    pub c_basis: Matrix<FqElement>,
}

impl LagrangianModel {
    pub fn new(h: &Heisenberg, psi: &AdditiveCharacter, a_basis: Matrix<FqElement>) -> Self {
        let m = h.m;
        assert_eq!(a_basis.rows(), 2 * m);
        assert_eq!(a_basis.cols(), m);
        // the span must be lagrangian
        for i in 0..m {
            for j in 0..m {
                let fi = a_basis.column(i);
                let fj = a_basis.column(j);
                assert!(h.form(&fi, &fj).is_zero(), "basis does not span a lagrangian");
            }
        }
        let c_basis = {
            let full = crate::matrix::complete_basis(&a_basis);
            let cols: Vec<usize> = (m..2 * m).collect();
            let rows: Vec<usize> = (0..2 * m).collect();
            full.submatrix(&rows, &cols)
        };
        LagrangianModel {
            h: h.clone(),
            psi: psi.clone(),
            a_basis,
            c_basis,
        }
    }

    pub fn dim(&self) -> usize {
        (self.h.fq.q() as usize).pow(self.h.m as u32)
    }

    fn c_point(&self, mut idx: usize) -> Vec<FqElement> {
        let q = self.h.fq.q() as usize;
        let m = self.h.m;
        let mut coords = Vec::with_capacity(m);
        for _ in 0..m {
            coords.push(self.h.fq.element_of_index(idx % q));
            idx /= q;
        }
        self.c_basis.mul_vec(&coords)
    }

    fn c_index(&self, coords: &[FqElement]) -> usize {
        let q = self.h.fq.q() as usize;
        let mut idx = 0usize;
        for i in (0..self.h.m).rev() {
            idx = idx * q + self.h.fq.index_of(&coords[i]);
        }
        idx
    }

    /// Splits w = a + c along A + C; returns (a, c-coords).
    fn split(&self, w: &[FqElement]) -> (Vec<FqElement>, Vec<FqElement>) {
        let joint = self.a_basis.hstack(&self.c_basis);
        let sol = joint.solve(w).expect("A + C = W must hold");
        let m = self.h.m;
        let a_part = self.a_basis.mul_vec(&sol[..m]);
        (a_part, sol[m..].to_vec())
    }

    /// (rho(h0) f)(c) = psi(t + <c, v>/2 - <a', c'>/2) f(c') with
    /// c + v = a' + c' split along A + C.
    pub fn action(&self, el: &HeisenbergElement) -> Matrix<CoeffScalar> {
        let n = self.dim();
        let zero = self.psi.coeff.zero();
        let half = self.h.fq.half();
        let mut out = Matrix::zero(n, n, &zero);
        for row in 0..n {
            let c = self.c_point(row);
            let moved: Vec<FqElement> = c.iter().zip(&el.w).map(|(x, y)| x.add(y)).collect();
            let (a_part, c_coords) = self.split(&moved);
            let c_prime = self.c_basis.mul_vec(&c_coords);
            let arg = el
                .t
                .add(&self.h.form(&c, &el.w).mul(&half))
                .sub(&self.h.form(&a_part, &c_prime).mul(&half));
            let col = self.c_index(&c_coords);
            *out.at_mut(row, col) = out.at(row, col).add(&self.psi.eval(&arg));
        }
        out
    }
}

/// Change-of-model intertwiner I_{A1, A2, mu}: S_{A1} -> S_{A2},
/// T f (c2) = sum over a in (A1 n A2) \ A2 of mu * f((a, 0)(c2, 0)).
pub fn intertwiner(
    m1: &LagrangianModel,
    m2: &LagrangianModel,
    mu: &HaarConstant,
) -> Matrix<CoeffScalar> {
    assert_eq!(m1.h, m2.h);
    let h = &m1.h;
    let fq = &h.fq;
    let half = fq.half();
    let zero = m1.psi.coeff.zero();
    let n = m1.dim();

    // coset representatives of (A1 n A2) \ A2: complement of A1 n A2 in A2
    let inter = crate::matrix::intersect_columns(&m1.a_basis, &m2.a_basis);
    let k = inter.len();
    let mut span_cols: Vec<Vec<FqElement>> = inter.clone();
    let mut comp_cols: Vec<Vec<FqElement>> = Vec::new();
    for i in 0..m2.a_basis.cols() {
        let cand = m2.a_basis.column(i);
        let mut test = span_cols.clone();
        test.push(cand.clone());
        if Matrix::from_columns(test).rank() == span_cols.len() + 1 {
            span_cols.push(cand.clone());
            comp_cols.push(cand);
        }
    }
    assert_eq!(k + comp_cols.len(), h.m);
    let reps: Vec<Vec<FqElement>> = {
        let q = fq.q() as usize;
        let d = comp_cols.len();
        let mut out = Vec::with_capacity(q.pow(d as u32));
        for mut idx in 0..q.pow(d as u32) {
            let mut v = vec![fq.zero(); 2 * h.m];
            for comp in comp_cols.iter().take(d) {
                let coord = fq.element_of_index(idx % q);
                idx /= q;
                for (r, compr) in comp.iter().enumerate() {
                    v[r] = v[r].add(&compr.mul(&coord));
                }
            }
            out.push(v);
        }
        out
    };

    let mut out = Matrix::zero(n, n, &zero);
    for row in 0..n {
        let c2 = m2.c_point(row);
        for a in &reps {
            // (a, 0)(c2, 0) = (a + c2, <a, c2>/2); express in A1 + C1
            let sum: Vec<FqElement> = a.iter().zip(&c2).map(|(x, y)| x.add(y)).collect();
            let (a1, c1_coords) = m1.split(&sum);
            let c1 = m1.c_basis.mul_vec(&c1_coords);
            let arg = h.form(a, &c2).mul(&half).sub(&h.form(&a1, &c1).mul(&half));
            let col = m1.c_index(&c1_coords);
            let v = out.at(row, col).add(&mu.c.mul(&m1.psi.eval(&arg)));
            *out.at_mut(row, col) = v;
        }
    }
    out
}

/// Tensor model over W = W1 + W2: (w1 + w2, t) acts by
/// psi(t) rho1((w1, 0)) (x) rho2((w2, 0)); the joint space is a model for
/// the Heisenberg group of the orthogonal sum.
pub struct TensorModel {
    pub m1: SchrodingerModel,
    pub m2: SchrodingerModel,
}

impl TensorModel {
    pub fn new(m1: &SchrodingerModel, m2: &SchrodingerModel) -> TensorModel {
        assert_eq!(m1.psi.coeff, m2.psi.coeff);
        assert_eq!(m1.psi.fq, m2.psi.fq);
        assert_eq!(m1.psi.beta, m2.psi.beta, "tensor factors must share psi");
        TensorModel { m1: m1.clone(), m2: m2.clone() }
    }

    pub fn dim(&self) -> usize {
        self.m1.dim() * self.m2.dim()
    }

    /// Action of ((w1, w2), t) on the tensor product.
    pub fn action(&self, w1: &[FqElement], w2: &[FqElement], t: &FqElement) -> Matrix<CoeffScalar> {
        let h1 = self.m1.h.element(w1.to_vec(), self.m1.h.fq.zero());
        let h2 = self.m2.h.element(w2.to_vec(), self.m2.h.fq.zero());
        let a1 = self.m1.action(&h1);
        let a2 = self.m2.action(&h2);
        a1.kronecker(&a2).scale(&self.m1.psi.eval(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{CoeffField, CoeffMode};
    use crate::rng::SplitMix64;

    fn setup(p: u64, k: usize, m: usize) -> (Heisenberg, AdditiveCharacter) {
        let fq = FqField::new(p, k).unwrap();
        let coeff = CoeffField::make_field(p, p, CoeffMode::Char0).unwrap();
        let psi = AdditiveCharacter::new(&fq, &coeff);
        (Heisenberg::new(&fq, m), psi)
    }

    #[test]
    fn group_law_examples() {
        let (h, _) = setup(3, 1, 1);
        let fq = &h.fq;
        // central elements multiply by adding t
        let a = h.element(vec![fq.zero(), fq.zero()], fq.from_i64(1));
        let b = h.element(vec![fq.zero(), fq.zero()], fq.from_i64(2));
        assert_eq!(h.h_mul(&a, &b), h.element(vec![fq.zero(), fq.zero()], fq.zero()));
        // (e1, 0)(f1, 0) = (e1 + f1, 2) since 1/2 = 2 mod 3
        let e1 = h.element(vec![fq.one(), fq.zero()], fq.zero());
        let f1 = h.element(vec![fq.zero(), fq.one()], fq.zero());
        let prod = h.h_mul(&e1, &f1);
        assert_eq!(prod, h.element(vec![fq.one(), fq.one()], fq.from_i64(2)));
        // commutator [(w,0), (w',0)] = (0, <w,w'>)
        let comm = h.h_mul(&h.h_mul(&e1, &f1), &h.h_mul(&h.h_inv(&e1), &h.h_inv(&f1)));
        assert_eq!(comm, h.element(vec![fq.zero(), fq.zero()], fq.one()));
        // inverse law
        assert_eq!(h.h_mul(&prod, &h.h_inv(&prod)), h.identity());
    }

    #[test]
    fn schrodinger_action_basics() {
        let (h, psi) = setup(3, 1, 1);
        let fq = h.fq.clone();
        let model = SchrodingerModel::new(&h, &psi);
        let id = model.action(&h.identity());
        assert_eq!(id, Matrix::identity(3, &psi.coeff.zero()));
        // center acts by psi(t)
        let c = h.element(vec![fq.zero(), fq.zero()], fq.one());
        let expect = Matrix::identity(3, &psi.coeff.zero()).scale(&psi.eval(&fq.one()));
        assert_eq!(model.action(&c), expect);
        // (f1, 0) acts as the 3-cycle translation on Y
        let f1 = h.element(vec![fq.zero(), fq.one()], fq.zero());
        let t = model.action(&f1);
        for row in 0..3 {
            for col in 0..3 {
                let expected = if (row + 1) % 3 == col {
                    psi.coeff.one()
                } else {
                    psi.coeff.zero()
                };
                assert_eq!(*t.at(row, col), expected);
            }
        }
    }

    #[test]
    fn schrodinger_is_a_homomorphism() {
        let (h, psi) = setup(3, 1, 1);
        let model = SchrodingerModel::new(&h, &psi);
        let els = h.elements();
        let mut rng = SplitMix64::new(2024);
        for _ in 0..500 {
            let a = &els[rng.below(els.len() as u64) as usize];
            let b = &els[rng.below(els.len() as u64) as usize];
            let lhs = model.action(a).mul(&model.action(b));
            let rhs = model.action(&h.h_mul(a, b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commutant_of_identity_and_center() {
        let (h, psi) = setup(3, 1, 1);
        let model = SchrodingerModel::new(&h, &psi);
        let id = Matrix::identity(3, &psi.coeff.zero());
        assert_eq!(commutant_dim(&[id]), 9);
        let fq = h.fq.clone();
        let center: Vec<Matrix<CoeffScalar>> = (0..3)
            .map(|t| {
                model.action(&h.element(
                    vec![fq.zero(), fq.zero()],
                    fq.element_of_index(t),
                ))
            })
            .collect();
        assert_eq!(commutant_dim(&center), 9);
    }

    #[test]
    fn schur_lemma_for_full_image() {
        let (h, psi) = setup(3, 1, 1);
        let model = SchrodingerModel::new(&h, &psi);
        let gens: Vec<Matrix<CoeffScalar>> =
            h.generators().iter().map(|g| model.action(g)).collect();
        assert_eq!(commutant_dim(&gens), 1);
    }

    #[test]
    fn monomial_hom_solver_matches_dense_commutant() {
        let (h, psi) = setup(3, 1, 1);
        let model = SchrodingerModel::new(&h, &psi);
        let gens = h.generators();
        let mono: Vec<MonomialOp> = gens.iter().map(|g| model.action_monomial(g)).collect();
        assert_eq!(monomial_hom_dim(3, 3, &mono, &mono), 1);
    }

    #[test]
    fn induced_multiplicity_is_q_to_m() {
        let (h3, psi3) = setup(3, 1, 1);
        assert_eq!(induced_rep_multiplicity(&h3, &psi3), 3);
        let (h5, psi5) = setup(5, 1, 1);
        assert_eq!(induced_rep_multiplicity(&h5, &psi5), 5);
    }

    fn standard_x(h: &Heisenberg) -> Matrix<FqElement> {
        let fq = &h.fq;
        Matrix::from_fn(2 * h.m, h.m, |r, c| {
            if r == c { fq.one() } else { fq.zero() }
        })
    }

    fn standard_y(h: &Heisenberg) -> Matrix<FqElement> {
        let fq = &h.fq;
        Matrix::from_fn(2 * h.m, h.m, |r, c| {
            if r == h.m + c { fq.one() } else { fq.zero() }
        })
    }

    #[test]
    fn intertwiner_same_lagrangian_is_scalar() {
        let (h, psi) = setup(3, 1, 1);
        let mx = LagrangianModel::new(&h, &psi, standard_x(&h));
        let mu = HaarConstant::counting(&psi.coeff);
        let t = intertwiner(&mx, &mx, &mu);
        assert_eq!(t, Matrix::identity(3, &psi.coeff.zero()).scale(&psi.coeff.one()));
    }

    #[test]
    fn intertwiner_x_to_y_is_fourier_kernel() {
        let (h, psi) = setup(3, 1, 1);
        let mx = LagrangianModel::new(&h, &psi, standard_x(&h));
        let my = LagrangianModel::new(&h, &psi, standard_y(&h));
        let mu = HaarConstant::counting(&psi.coeff);
        let t = intertwiner(&mx, &my, &mu);
        assert!(t.inverse().is_some());
        // equivariance on every group element: T rho1(h) = rho2(h) T
        for el in h.elements() {
            assert_eq!(t.mul(&mx.action(&el)), my.action(&el).mul(&t));
        }
        // entries are psi of a pairing: every entry is a root of unity
        for r in 0..3 {
            for c in 0..3 {
                let v = t.at(r, c);
                assert!(!v.is_zero());
                assert_eq!(v.pow(3), psi.coeff.one());
            }
        }
        // composite with the reverse intertwiner is a scalar (Schur)
        let back = intertwiner(&my, &mx, &mu);
        let comp = back.mul(&t);
        let lambda = comp.at(0, 0).clone();
        assert!(!lambda.is_zero());
        assert_eq!(comp, Matrix::identity(3, &psi.coeff.zero()).scale(&lambda));
    }

    #[test]
    fn contragredient_pairs_with_inverse_character() {
        // transpose-inverse of rho_psi intertwines with rho_{psi^{-1}}
        let (h, psi) = setup(3, 1, 1);
        let fq = h.fq.clone();
        let psi_inv = AdditiveCharacter::with_twist(&fq, &psi.coeff, fq.from_i64(-1));
        let model = SchrodingerModel::new(&h, &psi);
        let model_inv = SchrodingerModel::new(&h, &psi_inv);
        let gens = h.generators();
        let dual: Vec<Matrix<CoeffScalar>> = gens
            .iter()
            .map(|g| model.action(&h.h_inv(g)).transpose())
            .collect();
        let target: Vec<Matrix<CoeffScalar>> =
            gens.iter().map(|g| model_inv.action(g)).collect();
        // dim Hom(dual, target) = 1 by the dense solve
        let n = 3;
        let zero = psi.coeff.zero();
        let mut rows: Vec<Vec<CoeffScalar>> = Vec::new();
        for (a, b) in dual.iter().zip(target.iter()) {
            for i in 0..n {
                for j in 0..n {
                    let mut row = alloc::vec![zero.clone(); n * n];
                    for k in 0..n {
                        row[i * n + k] = row[i * n + k].add(a.at(k, j));
                        row[k * n + j] = row[k * n + j].sub(b.at(i, k));
                    }
                    rows.push(row);
                }
            }
        }
        let sys = Matrix::from_rows(rows);
        assert_eq!(n * n - sys.rank(), 1);
    }

    #[test]
    fn tensor_with_zero_factor_is_unchanged() {
        // W2 = 0: the tensor model is the first factor
        let (h, psi) = setup(3, 1, 1);
        let (h0, _) = setup(3, 1, 0);
        let model = SchrodingerModel::new(&h, &psi);
        let model0 = SchrodingerModel::new(&h0, &psi);
        assert_eq!(model0.dim(), 1);
        let tm = TensorModel::new(&model, &model0);
        assert_eq!(tm.dim(), 3);
        let fq = h.fq.clone();
        for el in h.elements() {
            let joint = tm.action(&el.w, &[], &el.t);
            assert_eq!(joint, model.action(&el));
        }
        let _ = fq;
    }

    #[test]
    fn tensor_model_has_simple_commutant() {
        let (h, psi) = setup(3, 1, 1);
        let model = SchrodingerModel::new(&h, &psi);
        let tm = TensorModel::new(&model, &model);
        assert_eq!(tm.dim(), 9);
        let fq = h.fq.clone();
        // restriction to the center is psi(t) id
        let c = tm.action(
            &[fq.zero(), fq.zero()],
            &[fq.zero(), fq.zero()],
            &fq.one(),
        );
        assert_eq!(
            c,
            Matrix::identity(9, &psi.coeff.zero()).scale(&psi.eval(&fq.one()))
        );
        // generators of H(W1 + W2) through the tensor action
        let mut gens: Vec<Matrix<CoeffScalar>> = Vec::new();
        for i in 0..2 {
            let mut w = alloc::vec![fq.zero(); 2];
            w[i] = fq.one();
            gens.push(tm.action(&w, &[fq.zero(), fq.zero()], &fq.zero()));
            gens.push(tm.action(&[fq.zero(), fq.zero()], &w, &fq.zero()));
        }
        gens.push(c);
        assert_eq!(commutant_dim(&gens), 1);
    }
}
