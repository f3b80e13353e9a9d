//! Dual pairs inside Sp(W1 (x) W2) over F_q, commuting lifted actions, and
//! the Theta-lift through the biggest isotypic quotient, at fully enumerable
//! scale.
//!
//! Type I pairs tensor a symplectic W1 with an orthogonal (W2, Q); the
//! product form <w1 (x) v, w1' (x) v'> = <w1, w1'> B(v, v') is symplectic
//! and the two isometry groups embed as mutual centralizers. The Weil
//! representation restricted along the embeddings is a genuine
//! representation of H1 x H2 because the finite-field section is
//! multiplicative, and for an irreducible pi1 the biggest pi1-isotypic
//! quotient factors as Theta(pi1) (x) pi1.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::CoeffScalar;
use crate::field::Field;
use crate::finitefield::{AdditiveCharacter, FqElement, FqField};
use crate::heisenberg::{commutant_dim, Heisenberg, SchrodingerModel};
use crate::matrix::Matrix;
use crate::symplectic::is_symplectic;
use crate::weil::{enumerate_sp_group, WeilContext, WeilError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaError {
    OversizedSpace,
    DegenerateForm,
    NotIrreducible,
    Weil(WeilError),
}

/// Descriptor of an irreducible dual pair with D = F.
#[derive(Clone, Debug)]
pub enum DualPairDescriptor {
    /// (Sp(2 m1), O(Q)) acting on W1 (x) W2, Q diagonal and nondegenerate.
    TypeI { m1: usize, q_diag: Vec<FqElement> },
    /// (GL_{n1}, GL_{n2}) inside a Siegel parabolic; n1 = n2 = 1 supported.
    TypeII { n1: usize, n2: usize },
}

/// An explicitly enumerated matrix group with index lookup.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub fq: FqField,
    pub elems: Vec<Matrix<FqElement>>,
    index: BTreeMap<Vec<u64>, usize>,
}

impl MatrixGroup {
    pub fn from_elements(fq: &FqField, elems: Vec<Matrix<FqElement>>) -> MatrixGroup {
        let key = |g: &Matrix<FqElement>| -> Vec<u64> {
            let n = g.rows();
            (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .map(|(r, c)| fq.index_of(g.at(r, c)) as u64)
                .collect()
        };
        let index = elems.iter().enumerate().map(|(i, g)| (key(g), i)).collect();
        MatrixGroup { fq: fq.clone(), elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, g: &Matrix<FqElement>) -> Option<usize> {
        let n = g.rows();
        let key: Vec<u64> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| self.fq.index_of(g.at(r, c)) as u64)
            .collect();
        self.index.get(&key).copied()
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.position(&self.elems[i].mul(&self.elems[j]))
            .expect("group not closed under multiplication")
    }

    pub fn inv_index(&self, i: usize) -> usize {
        let inv = self.elems[i].inverse().expect("group elements are invertible");
        self.position(&inv).expect("group not closed under inverse")
    }
}

/// Isometries of the diagonal form Q on F_q^n by exhaustive search (n <= 2).
pub fn orthogonal_group(fq: &FqField, q_diag: &[FqElement]) -> Result<MatrixGroup, ThetaError> {
    let n = q_diag.len();
    if n == 0 || n > 2 {
        return Err(ThetaError::OversizedSpace);
    }
    if q_diag.iter().any(|a| a.is_zero()) {
        return Err(ThetaError::DegenerateForm);
    }
    let d = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            q_diag[r].clone()
        } else {
            fq.zero()
        }
    });
    let q = fq.q() as usize;
    let mut elems = Vec::new();
    for code in 0..q.pow((n * n) as u32) {
        let mut idx = code;
        let m = Matrix::from_fn(n, n, |_, _| {
            let e = fq.element_of_index(idx % q);
            idx /= q;
            e
        });
        if m.transpose().mul(&d).mul(&m) == d {
            elems.push(m);
        }
    }
    Ok(MatrixGroup::from_elements(fq, elems))
}

/// A realized dual pair: both groups with their embeddings into Sp(W).
pub struct DualPair {
    pub h1: MatrixGroup,
    pub h2: MatrixGroup,
    /// images of h1.elems and h2.elems inside Sp(W), same indexing
    pub embed1: Vec<Matrix<FqElement>>,
    pub embed2: Vec<Matrix<FqElement>>,
    /// half-dimension of W
    pub m: usize,
}

/// Symplectic basis of a nondegenerate alternating Gram matrix: returns T
/// with T^T G T equal to the standard J.
fn symplectic_basis(gram: &Matrix<FqElement>) -> Matrix<FqElement> {
    let n2 = gram.rows();
    assert!(n2 % 2 == 0);
    let n = n2 / 2;
    let zero = gram.sample().zero_of();
    let form = |x: &[FqElement], y: &[FqElement]| -> FqElement {
        let gy = gram.mul_vec(y);
        let mut acc = zero.clone();
        for i in 0..n2 {
            acc = acc.add(&x[i].mul(&gy[i]));
        }
        acc
    };
    let mut pool: Vec<Vec<FqElement>> = (0..n2)
        .map(|i| {
            let mut v = vec![zero.clone(); n2];
            v[i] = zero.one_of();
            v
        })
        .collect();
    let mut us: Vec<Vec<FqElement>> = Vec::new();
    let mut vs: Vec<Vec<FqElement>> = Vec::new();
    for _ in 0..n {
        let u = pool[0].clone();
        let vi = pool[1..]
            .iter()
            .position(|w| !form(&u, w).is_zero())
            .expect("degenerate alternating form")
            + 1;
        let pairing = form(&u, &pool[vi]);
        let scale = pairing.inv().unwrap();
        let v: Vec<FqElement> = pool[vi].iter().map(|c| c.mul(&scale)).collect();
        // project the remaining pool onto the symplectic complement of (u, v)
        let mut next: Vec<Vec<FqElement>> = Vec::new();
        for w in pool.iter() {
            let cu = form(w, &u);
            let cv = form(w, &v);
            let adj: Vec<FqElement> = (0..n2)
                .map(|i| w[i].add(&cu.mul(&v[i])).sub(&cv.mul(&u[i])))
                .collect();
            if adj.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut test = next.clone();
            test.push(adj.clone());
            if Matrix::from_columns(test).rank() == next.len() + 1 {
                next.push(adj);
            }
        }
        us.push(u);
        vs.push(v);
        pool = next;
    }
    let mut cols = us;
    cols.extend(vs);
    Matrix::from_columns(cols)
}

/// Builds the dual pair: enumerates both groups and produces commuting
/// injective embeddings into Sp(W1 (x) W2) in standard symplectic
/// coordinates. dim W <= 4 supported.
pub fn build_dual_pair(fq: &FqField, desc: &DualPairDescriptor) -> Result<DualPair, ThetaError> {
    match desc {
        DualPairDescriptor::TypeI { m1, q_diag } => {
            let n = q_diag.len();
            let dim_w = 2 * m1 * n;
            if dim_w > 4 || dim_w == 0 {
                return Err(ThetaError::OversizedSpace);
            }
            let h1 = MatrixGroup::from_elements(
                fq,
                enumerate_sp_group(fq, *m1, 2_000_000).map_err(ThetaError::Weil)?,
            );
            let h2 = orthogonal_group(fq, q_diag)?;
            // Gram of <w1 (x) v, w1' (x) v'> = <w1, w1'> B(v, v'), with the
            // polar form B(v, v') = 2 sum a_i v_i v_i'
            let two = fq.from_i64(2);
            let j1 = crate::symplectic::gram(*m1, &fq.zero());
            let gram = Matrix::from_fn(dim_w, dim_w, |r, c| {
                let (rb, rv) = (r / n, r % n);
                let (cb, cv) = (c / n, c % n);
                if rv == cv {
                    j1.at(rb, cb).mul(&two).mul(&q_diag[rv])
                } else {
                    fq.zero()
                }
            });
            let t = symplectic_basis(&gram);
            let t_inv = t.inverse().unwrap();
            let embed = |mat_w1: &Matrix<FqElement>, mat_w2: &Matrix<FqElement>| {
                let kron = Matrix::from_fn(dim_w, dim_w, |r, c| {
                    let (rb, rv) = (r / n, r % n);
                    let (cb, cv) = (c / n, c % n);
                    mat_w1.at(rb, cb).mul(mat_w2.at(rv, cv))
                });
                t_inv.mul(&kron).mul(&t)
            };
            let id1 = Matrix::identity(2 * m1, &fq.zero());
            let id2 = Matrix::identity(n, &fq.zero());
            let embed1: Vec<Matrix<FqElement>> =
                h1.elems.iter().map(|g| embed(g, &id2)).collect();
            let embed2: Vec<Matrix<FqElement>> =
                h2.elems.iter().map(|g| embed(&id1, g)).collect();
            for g in embed1.iter().chain(embed2.iter()) {
                assert!(is_symplectic(g), "embedding left Sp(W)");
            }
            Ok(DualPair { h1, h2, embed1, embed2, m: dim_w / 2 })
        }
        DualPairDescriptor::TypeII { n1, n2 } => {
            if *n1 != 1 || *n2 != 1 {
                return Err(ThetaError::OversizedSpace);
            }
            // GL_1 x GL_1 on (V1 (x) V2) + its dual: t acts by diag(t, 1/t)
            let units: Vec<Matrix<FqElement>> = fq
                .elements()
                .into_iter()
                .filter(|x| !x.is_zero())
                .map(|x| Matrix::from_fn(1, 1, |_, _| x.clone()))
                .collect();
            let embed = |t: &Matrix<FqElement>| {
                let v = t.at(0, 0).clone();
                let mut g = Matrix::identity(2, &fq.zero());
                *g.at_mut(0, 0) = v.clone();
                *g.at_mut(1, 1) = v.inv().unwrap();
                g
            };
            let h1 = MatrixGroup::from_elements(fq, units.clone());
            let h2 = MatrixGroup::from_elements(fq, units);
            let embed1: Vec<Matrix<FqElement>> = h1.elems.iter().map(&embed).collect();
            let embed2: Vec<Matrix<FqElement>> = h2.elems.iter().map(&embed).collect();
            Ok(DualPair { h1, h2, embed1, embed2, m: 1 })
        }
    }
}

/// A representation of an enumerated group: one matrix per element.
#[derive(Clone, Debug)]
pub struct FiniteGroupRep {
    pub mats: Vec<Matrix<CoeffScalar>>,
}

impl FiniteGroupRep {
    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    /// Exhaustive homomorphism check against the group's multiplication.
    pub fn verify_homomorphism(&self, group: &MatrixGroup) -> bool {
        for i in 0..group.len() {
            for j in 0..group.len() {
                let k = group.mul_index(i, j);
                if self.mats[i].mul(&self.mats[j]) != self.mats[k] {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace_vector(&self) -> Vec<CoeffScalar> {
        self.mats.iter().map(|m| m.trace()).collect()
    }
}

/// The restriction of the Weil representation to a dual pair: commuting
/// actions of H1 and H2 on the model of W1 (x) W2.
pub struct OmegaRestriction {
    pub pair: DualPair,
    pub act1: FiniteGroupRep,
    pub act2: FiniteGroupRep,
}

/// Builds omega restricted to the pair through the multiplicative section.
pub fn omega_of_pair(
    pair: DualPair,
    psi: &AdditiveCharacter,
) -> Result<OmegaRestriction, ThetaError> {
    let h = Heisenberg::new(&psi.fq, pair.m);
    let model = SchrodingerModel::new(&h, psi);
    let ctx = WeilContext::new(&model);
    let act1 = FiniteGroupRep {
        mats: pair.embed1.iter().map(|g| ctx.sigma(g)).collect(),
    };
    let act2 = FiniteGroupRep {
        mats: pair.embed2.iter().map(|g| ctx.sigma(g)).collect(),
    };
    Ok(OmegaRestriction { pair, act1, act2 })
}

/// Hom_{G}(V, W) for two aligned representations: basis of the solution
/// space of F V(g) = W(g) F over all group elements.
fn hom_space(
    v: &FiniteGroupRep,
    w: &FiniteGroupRep,
) -> Vec<Matrix<CoeffScalar>> {
    let dv = v.dim();
    let dw = w.dim();
    let zero = v.mats[0].sample().zero_of();
    let mut rows: Vec<Vec<CoeffScalar>> = Vec::new();
    for (mv, mw) in v.mats.iter().zip(w.mats.iter()) {
        // (F mv - mw F)[i][j] = sum_k F[i][k] mv[k][j] - mw[i][k] F[k][j]
        for i in 0..dw {
            for j in 0..dv {
                let mut row = vec![zero.clone(); dw * dv];
                for k in 0..dv {
                    row[i * dv + k] = row[i * dv + k].add(mv.at(k, j));
                }
                for k in 0..dw {
                    row[k * dv + j] = row[k * dv + j].sub(mw.at(i, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows);
    system
        .kernel_basis()
        .into_iter()
        .map(|flat| Matrix::from_fn(dw, dv, |r, c| flat[r * dv + c].clone()))
        .collect()
}

/// V restricted to the column span of `basis` (which must be invariant).
fn restrict_rep(rep: &FiniteGroupRep, basis: &Matrix<CoeffScalar>) -> FiniteGroupRep {
    let k = basis.cols();
    let mats = rep
        .mats
        .iter()
        .map(|m| {
            let image = m.mul(basis);
            let mut coords = Vec::with_capacity(k);
            for c in 0..k {
                let col = image.column(c);
                let sol = basis.solve(&col).expect("subspace is not invariant");
                coords.push(sol);
            }
            Matrix::from_columns(coords)
        })
        .collect();
    FiniteGroupRep { mats }
}

pub struct IsotypicQuotient {
    /// the quotient V_{pi1} with both actions
    pub quotient1: FiniteGroupRep,
    pub quotient2: FiniteGroupRep,
    /// Theta(pi1): the H2-action on Hom_{H1}(pi1, V_{pi1})
    pub theta: FiniteGroupRep,
    pub quotient_dim: usize,
}

/// The biggest pi1-isotypic quotient V_{pi1} = V / V[pi1] with
/// V[pi1] the intersection of the kernels of all H1-maps V -> pi1,
/// factored as Theta(pi1) (x) pi1. Requires End(pi1) = R.
pub fn biggest_isotypic_quotient(
    v1: &FiniteGroupRep,
    v2: &FiniteGroupRep,
    pi1: &FiniteGroupRep,
) -> Result<IsotypicQuotient, ThetaError> {
    // Schur check: pi1 must be absolutely irreducible over R
    if commutant_dim(&pi1.mats) != 1 {
        return Err(ThetaError::NotIrreducible);
    }
    let n = v1.dim();
    let zero = v1.mats[0].sample().zero_of();
    let homs = hom_space(v1, pi1);
    // V[pi1] = intersection of kernels: kernel of the stacked matrix
    let kernel_cols: Vec<Vec<CoeffScalar>> = if homs.is_empty() {
        Matrix::identity(n, &zero)
            .kernel_basis()
            .into_iter()
            .chain((0..n).map(|i| {
                let mut e = vec![zero.clone(); n];
                e[i] = zero.one_of();
                e
            }))
            .collect()
    } else {
        let mut stacked = homs[0].clone();
        for h in &homs[1..] {
            stacked = stacked.vstack(h);
        }
        stacked.kernel_basis()
    };
    let k = kernel_cols.len();
    let quotient_dim = n - k;
    if quotient_dim == 0 {
        let empty = FiniteGroupRep {
            mats: v1.mats.iter().map(|_| Matrix::zero(1, 1, &zero)).collect(),
        };
        return Ok(IsotypicQuotient {
            quotient1: empty.clone(),
            quotient2: empty.clone(),
            theta: FiniteGroupRep {
                mats: v2.mats.iter().map(|_| Matrix::zero(1, 1, &zero)).collect(),
            },
            quotient_dim: 0,
        });
    }
    // full basis [kernel | complement]; quotient action = lower-right block
    let full = if k > 0 {
        crate::matrix::complete_basis(&Matrix::from_columns(kernel_cols))
    } else {
        Matrix::identity(n, &zero)
    };
    let full_inv = full.inverse().unwrap();
    let rows: Vec<usize> = (k..n).collect();
    let quotient_of = |rep: &FiniteGroupRep| -> FiniteGroupRep {
        FiniteGroupRep {
            mats: rep
                .mats
                .iter()
                .map(|m| full_inv.mul(m).mul(&full).submatrix(&rows, &rows))
                .collect(),
        }
    };
    let quotient1 = quotient_of(v1);
    let quotient2 = quotient_of(v2);

    // Theta(pi1) = Hom_{H1}(pi1, V_{pi1}) with H2 acting by postcomposition
    let phi_basis = hom_space(pi1, &quotient1);
    let t = phi_basis.len();
    // isotypy: the quotient must be exhausted by pi1-copies
    if t * pi1.dim() != quotient_dim {
        return Err(ThetaError::NotIrreducible);
    }
    // coordinates of h2 . phi = quotient2(h2) . phi in the phi basis: flatten
    let flat = |m: &Matrix<CoeffScalar>| -> Vec<CoeffScalar> {
        let mut v = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                v.push(m.at(r, c).clone());
            }
        }
        v
    };
    let basis_mat = if t > 0 {
        Matrix::from_columns(phi_basis.iter().map(&flat).collect())
    } else {
        Matrix::zero(quotient_dim * pi1.dim(), 0, &zero)
    };
    let theta_mats: Vec<Matrix<CoeffScalar>> = v2
        .mats
        .iter()
        .map(|_| Matrix::zero(t.max(1), t.max(1), &zero))
        .collect();
    let mut theta_mats = theta_mats;
    if t > 0 {
        for (ti, m2) in quotient2.mats.iter().enumerate() {
            let mut cols = Vec::with_capacity(t);
            for phi in &phi_basis {
                let moved = m2.mul(phi);
                let sol = basis_mat.solve(&flat(&moved)).expect("H2 action must preserve Theta");
                cols.push(sol);
            }
            theta_mats[ti] = Matrix::from_columns(cols);
        }
    }
    Ok(IsotypicQuotient {
        quotient1,
        quotient2,
        theta: FiniteGroupRep { mats: theta_mats },
        quotient_dim,
    })
}

pub struct ThetaReport {
    pub pi1_label: String,
    pub pi1_dim: usize,
    pub theta_dim: usize,
    pub quotient_dim: usize,
    pub nonzero: bool,
}

pub struct ThetaTable {
    pub reports: Vec<ThetaReport>,
    pub omega_dim: usize,
    /// the two-sided consistency flag: Theta computed from the H2 side maps
    /// back onto the H1-constituents
    pub two_sided_consistent: bool,
}

/// The theta table of a type-I rank-1 pair (Sp(2 m1), O_1(<a>)): one report
/// per irreducible constituent of omega restricted to H1, each quotient
/// verified isotypic, plus the reverse-side computation.
pub fn theta_table(
    fq: &FqField,
    a: &FqElement,
    psi: &AdditiveCharacter,
) -> Result<ThetaTable, ThetaError> {
    let desc = DualPairDescriptor::TypeI { m1: 1, q_diag: vec![a.clone()] };
    let pair = build_dual_pair(fq, &desc)?;
    let omega = omega_of_pair(pair, psi)?;
    let n = omega.act1.dim();
    let coeff_zero = omega.act1.mats[0].sample().zero_of();

    // split omega|_{H1} by the involution omega(-1): the (q +- 1)/2 pieces
    let minus_one = omega
        .pair
        .h1
        .position(&Matrix::identity(2, &fq.zero()).map(|x: &FqElement| x.neg()))
        .expect("-id must lie in Sp(2)");
    let c = omega.act1.mats[minus_one].clone();
    let id = Matrix::identity(n, &coeff_zero);
    assert_eq!(c.mul(&c), id, "omega(-1) must be an involution");
    let two_inv = coeff_zero.one_of().add(&coeff_zero.one_of()).inv().unwrap();
    let mut constituents: Vec<(String, Matrix<CoeffScalar>)> = Vec::new();
    for (label, sign) in [("even", 1i64), ("odd", -1i64)] {
        let proj = if sign == 1 { id.add(&c) } else { id.sub(&c) }.scale(&two_inv);
        let mut cols: Vec<Vec<CoeffScalar>> = Vec::new();
        for i in 0..n {
            let cand = proj.column(i);
            if cand.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut test = cols.clone();
            test.push(cand.clone());
            if Matrix::from_columns(test).rank() == cols.len() + 1 {
                cols.push(cand);
            }
        }
        if !cols.is_empty() {
            constituents.push((label.into(), Matrix::from_columns(cols)));
        }
    }

    let mut reports = Vec::new();
    let mut total = 0usize;
    let mut all_homs: Vec<Matrix<CoeffScalar>> = Vec::new();
    for (label, basis) in &constituents {
        let pi1 = restrict_rep(&omega.act1, basis);
        all_homs.extend(hom_space(&omega.act1, &pi1));
        let q = biggest_isotypic_quotient(&omega.act1, &omega.act2, &pi1)?;
        total += q.quotient_dim;
        reports.push(ThetaReport {
            pi1_label: label.clone(),
            pi1_dim: pi1.dim(),
            theta_dim: if q.quotient_dim == 0 { 0 } else { q.theta.dim() },
            quotient_dim: q.quotient_dim,
            nonzero: q.quotient_dim > 0,
        });
    }
    // dim omega must be partitioned by the quotients (trivial joint kernel)
    if total != n {
        return Err(ThetaError::NotIrreducible);
    }
    // the simultaneous projection onto the direct sum of the quotients is
    // surjective: the intersection of all V[pi1] is the kernel of the
    // stacked intertwiner matrices, and its exact rank must be full
    if !all_homs.is_empty() {
        let mut stacked = all_homs[0].clone();
        for h in &all_homs[1..] {
            stacked = stacked.vstack(h);
        }
        if !stacked.kernel_basis().is_empty() {
            return Err(ThetaError::NotIrreducible);
        }
    }

    // reverse side: O_1 irreducibles are the trivial and sign characters
    let h2_order = omega.pair.h2.len();
    let id2 = omega
        .pair
        .h2
        .position(&Matrix::identity(1, &fq.zero()))
        .expect("O_1 contains the identity");
    let mut two_sided = true;
    let one = coeff_zero.one_of();
    for character in [false, true] {
        let pi2 = FiniteGroupRep {
            mats: (0..h2_order)
                .map(|i| {
                    let val = if i == id2 || !character { one.clone() } else { one.neg() };
                    Matrix::from_fn(1, 1, |_, _| val.clone())
                })
                .collect(),
        };
        let qrev = biggest_isotypic_quotient(&omega.act2, &omega.act1, &pi2)?;
        if qrev.quotient_dim == 0 {
            two_sided = false;
            continue;
        }
        // Theta(pi2) must match one of the H1-constituents, by traces
        let theta_traces = qrev.theta.trace_vector();
        let matched = constituents.iter().any(|(_, basis)| {
            let pi1 = restrict_rep(&omega.act1, basis);
            pi1.trace_vector() == theta_traces
        });
        two_sided &= matched;
    }

    Ok(ThetaTable { reports, omega_dim: n, two_sided_consistent: two_sided })
}
