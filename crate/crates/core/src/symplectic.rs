//! Symplectic spaces over an exact scalar domain, Bruhat decomposition
//! relative to the Siegel parabolic P(X), the square-class invariant x(g),
//! and the Leray decomposition of a pair of group elements.
//!
//! Conventions. The standard space W has basis (e_1..e_m, f_1..f_m) with
//! <e_i, f_j> = delta_ij, so the Gram matrix is J = [[0, I], [-I, 0]].
//! Matrices act on column vectors, columns are images of basis vectors, and
//! P(X) is the stabilizer of X = span(e_i), i.e. the block upper-triangular
//! subgroup [[a, b], [0, a^{-T}]].
//!
//! For w_S and u_rho we follow the usual index bookkeeping: w_S inverts the
//! i-th hyperbolic plane for i in S, and u_rho = [[I, B], [0, I]] with B a
//! symmetric matrix supported on S x S; symmetry of B is exactly the
//! antisymmetry rho* = -rho of the map Y_S -> X_S. The Leray decomposition
//! writes g1 = p1 w_{S u S1} u_rho p^{-1} and g2 = p w_{S u S2} p2 with rho
//! invertible on S and (S1 u S2) disjoint from S.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::matrix::{complete_basis, Matrix};
use crate::rng::SplitMix64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SympSpace {
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SympError {
    NotSymplectic,
    OddDimension,
}

/// Gram matrix J of the standard symplectic form.
pub fn gram<K: Field>(m: usize, sample: &K) -> Matrix<K> {
    let one = sample.one_of();
    Matrix::from_fn(2 * m, 2 * m, |r, c| {
        if c == r + m {
            one.clone()
        } else if r == c + m {
            one.neg()
        } else {
            one.zero_of()
        }
    })
}

pub fn is_symplectic<K: Field>(g: &Matrix<K>) -> bool {
    if g.rows() != g.cols() || g.rows() % 2 != 0 {
        return false;
    }
    let m = g.rows() / 2;
    let j = gram(m, g.sample());
    g.transpose().mul(&j).mul(g) == j
}

/// Inverse of a symplectic matrix via g^{-1} = [[D^T, -B^T], [-C^T, A^T]].
pub fn sp_inverse<K: Field>(g: &Matrix<K>) -> Matrix<K> {
    let m = g.rows() / 2;
    let out = Matrix::from_fn(2 * m, 2 * m, |r, c| {
        let (br, ir) = (r / m, r % m);
        let (bc, ic) = (c / m, c % m);
        match (br, bc) {
            (0, 0) => g.at(m + ic, m + ir).clone(),
            (0, 1) => g.at(ic, m + ir).neg(),
            (1, 0) => g.at(m + ic, ir).neg(),
            _ => g.at(ic, ir).clone(),
        }
    });
    debug_assert!(out.mul(g) == Matrix::identity(2 * m, g.sample()));
    out
}

/// Block accessors: a = X->X, b = Y->X, c = X->Y.
pub fn block_a<K: Field>(g: &Matrix<K>) -> Matrix<K> {
    let m = g.rows() / 2;
    Matrix::from_fn(m, m, |r, c| g.at(r, c).clone())
}
pub fn block_b<K: Field>(g: &Matrix<K>) -> Matrix<K> {
    let m = g.rows() / 2;
    Matrix::from_fn(m, m, |r, c| g.at(r, m + c).clone())
}
pub fn block_c<K: Field>(g: &Matrix<K>) -> Matrix<K> {
    let m = g.rows() / 2;
    Matrix::from_fn(m, m, |r, c| g.at(m + r, c).clone())
}

pub fn in_siegel_parabolic<K: Field>(g: &Matrix<K>) -> bool {
    block_c(g).is_zero() && is_symplectic(g)
}

/// det_X of a parabolic element: the determinant of its a-block.
pub fn det_x<K: Field>(p: &Matrix<K>) -> K {
    debug_assert!(block_c(p).is_zero());
    block_a(p).det()
}

/// m(a) = [[a, 0], [0, a^{-T}]].
pub fn levi<K: Field>(a: &Matrix<K>) -> Matrix<K> {
    let m = a.rows();
    let a_inv_t = a.inverse().expect("levi part must be invertible").transpose();
    let zero = a.sample().zero_of();
    Matrix::from_fn(2 * m, 2 * m, |r, c| {
        if r < m && c < m {
            a.at(r, c).clone()
        } else if r >= m && c >= m {
            a_inv_t.at(r - m, c - m).clone()
        } else {
            zero.clone()
        }
    })
}

/// n(b) = [[I, b], [0, I]] for b symmetric.
pub fn unipotent<K: Field>(b: &Matrix<K>) -> Matrix<K> {
    let m = b.rows();
    debug_assert!(*b == b.transpose(), "u_rho block must be symmetric");
    let one = b.sample().one_of();
    Matrix::from_fn(2 * m, 2 * m, |r, c| {
        if r == c {
            one.clone()
        } else if r < m && c >= m {
            b.at(r, c - m).clone()
        } else {
            one.zero_of()
        }
    })
}

/// w_S: e_i -> f_i and f_i -> -e_i for i in S, identity elsewhere.
pub fn w_builder<K: Field>(m: usize, s: &[usize], sample: &K) -> Matrix<K> {
    let one = sample.one_of();
    let mut g = Matrix::zero(2 * m, 2 * m, sample);
    for i in 0..m {
        if s.contains(&i) {
            *g.at_mut(m + i, i) = one.clone();
            *g.at_mut(i, m + i) = one.neg();
        } else {
            *g.at_mut(i, i) = one.clone();
            *g.at_mut(m + i, m + i) = one.clone();
        }
    }
    g
}

#[derive(Clone, Debug)]
pub struct BruhatData<K> {
    pub p1: Matrix<K>,
    pub j: usize,
    pub p2: Matrix<K>,
}

/// Basis of the lagrangian gX (first m columns of g).
pub(crate) fn g_x<K: Field>(g: &Matrix<K>) -> Matrix<K> {
    let m = g.rows() / 2;
    let cols: Vec<usize> = (0..m).collect();
    let rows: Vec<usize> = (0..2 * m).collect();
    g.submatrix(&rows, &cols)
}

/// Basis of span(l) n X, returned in X-coordinates (m x k matrix).
pub(crate) fn intersection_with_x<K: Field>(l: &Matrix<K>) -> Matrix<K> {
    let m = l.rows() / 2;
    let y_rows: Vec<usize> = (m..2 * m).collect();
    let all_cols: Vec<usize> = (0..l.cols()).collect();
    let y_part = l.submatrix(&y_rows, &all_cols);
    let kernel = y_part.kernel_basis();
    let x_rows: Vec<usize> = (0..m).collect();
    let x_part = l.submatrix(&x_rows, &all_cols);
    if kernel.is_empty() {
        return Matrix::zero(m, 0, l.sample());
    }
    let vecs: Vec<Vec<K>> = kernel.iter().map(|v| x_part.mul_vec(v)).collect();
    Matrix::from_columns(vecs)
}

/// Finds q in P(X) with q * span(l) = X_{cT} + Y_T, |T| = m - dim(l n X).
fn normalize_lagrangian<K: Field>(l: &Matrix<K>, t: &[usize]) -> Matrix<K> {
    let m = l.rows() / 2;
    let zero = l.sample().zero_of();
    let one = zero.one_of();
    let inter = intersection_with_x(l);
    let k = inter.cols();
    assert_eq!(k + t.len(), m, "target size does not match the cell");
    let ct: Vec<usize> = (0..m).filter(|i| !t.contains(i)).collect();

    // a-part: map the intersection basis onto span(e_i : i in cT)
    let src = if k > 0 { complete_basis(&inter) } else { Matrix::identity(m, &zero) };
    let mut img_cols: Vec<Vec<K>> = Vec::new();
    for i in 0..m {
        let mut e = vec![zero.clone(); m];
        let target = if i < k { ct[i] } else { t[i - k] };
        e[target] = one.clone();
        img_cols.push(e);
    }
    let a = Matrix::from_columns(img_cols).mul(&src.inverse().unwrap());
    let ma = levi(&a);
    let l1 = ma.mul(l);

    // n-part: kill the chart of l1 over Y_T
    let chart = chart_over(&l1, t);
    let mut b = Matrix::zero(m, m, &zero);
    for (ri, &r) in t.iter().enumerate() {
        for (ci, &c) in t.iter().enumerate() {
            *b.at_mut(r, c) = chart.at(ri, ci).neg();
        }
    }
    let q = unipotent(&b).mul(&ma);
    debug_assert!(in_siegel_parabolic(&q));
    q
}

/// Chart of a lagrangian l with l n X = X_{cT}: the symmetric |T| x |T|
/// matrix xi with l = X_{cT} + span{f_i + xi(f_i) : i in T}, xi valued in
/// X_T (components along X_{cT} are absorbed into the intersection).
fn chart_over<K: Field>(l: &Matrix<K>, t: &[usize]) -> Matrix<K> {
    let m = l.rows() / 2;
    let zero = l.sample().zero_of();
    let y_rows: Vec<usize> = (m..2 * m).collect();
    let all_cols: Vec<usize> = (0..l.cols()).collect();
    let y_part = l.submatrix(&y_rows, &all_cols);
    let x_rows: Vec<usize> = (0..m).collect();
    let x_part = l.submatrix(&x_rows, &all_cols);
    let mut chart = Matrix::zero(t.len(), t.len(), &zero);
    for (ci, &i) in t.iter().enumerate() {
        let mut fi = vec![zero.clone(); m];
        fi[i] = zero.one_of();
        let v = y_part.solve(&fi).expect("lagrangian does not project onto Y_T");
        let x = x_part.mul_vec(&v);
        for (ri, &r) in t.iter().enumerate() {
            *chart.at_mut(ri, ci) = x[r].clone();
        }
    }
    chart
}

/// Bruhat decomposition g = p1 w_j p2 with j = rank of the c-block and
/// w_j = w_{ {0..j-1} }.
pub fn bruhat_decompose<K: Field>(g: &Matrix<K>) -> Result<BruhatData<K>, SympError> {
    if !is_symplectic(g) {
        return Err(SympError::NotSymplectic);
    }
    let m = g.rows() / 2;
    let j = block_c(g).rank();
    let t: Vec<usize> = (0..j).collect();
    let q = normalize_lagrangian(&g_x(g), &t);
    let p1 = sp_inverse(&q);
    let w = w_builder(m, &t, g.sample());
    let p2 = sp_inverse(&w).mul(&q).mul(g);
    debug_assert!(in_siegel_parabolic(&p1) && in_siegel_parabolic(&p2));
    debug_assert!(p1.mul(&w).mul(&p2) == *g);
    Ok(BruhatData { p1, j, p2 })
}

/// The square-class invariant x(g): det_X(p1 p2) for any Bruhat
/// decomposition g = p1 w_j p2, well defined modulo squares.
pub fn x_class<K: Field>(g: &Matrix<K>) -> Result<K, SympError> {
    let b = bruhat_decompose(g)?;
    Ok(det_x(&b.p1).mul(&det_x(&b.p2)))
}

#[derive(Clone, Debug)]
pub struct LerayData<K> {
    pub p1: Matrix<K>,
    pub p: Matrix<K>,
    pub p2: Matrix<K>,
    pub s: Vec<usize>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    /// rho as the m x m block of u_rho: symmetric, supported on S x S,
    /// invertible there (diagonal by construction).
    pub rho: Matrix<K>,
}

impl<K: Field> LerayData<K> {
    pub fn u_rho(&self) -> Matrix<K> {
        unipotent(&self.rho)
    }

    /// Diagonal entries of the Leray form Q(x) = x^T rho x on X_S.
    pub fn q_diag(&self) -> Vec<K> {
        self.s.iter().map(|&i| self.rho.at(i, i).clone()).collect()
    }
}

/// Congruence diagonalization of a symmetric matrix: returns (g, d) with
/// g * c * g^T = diag(d), nonzero entries of d first. Needs char != 2.
fn sym_diagonalize<K: Field>(c: &Matrix<K>) -> (Matrix<K>, Vec<K>) {
    let n = c.rows();
    assert!(n > 0);
    let zero = c.sample().zero_of();
    let mut a = c.clone();
    let mut g = Matrix::identity(n, &zero);
    let two = zero.one_of().add(&zero.one_of());
    assert!(!two.is_zero(), "characteristic 2 scalar domain");
    let mut done = 0;
    while done < n {
        let pivot = (done..n).find(|&i| !a.at(i, i).is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                // all remaining diagonal entries vanish; a row+col addition
                // creates the pivot a(i,i) = 2 a(i,j) != 0
                let mut found = None;
                'search: for i in done..n {
                    for j in i + 1..n {
                        if !a.at(i, j).is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                let mut t = Matrix::identity(n, &zero);
                *t.at_mut(i, j) = zero.one_of();
                a = t.mul(&a).mul(&t.transpose());
                g = t.mul(&g);
                i
            }
        };
        if pivot != done {
            let t = Matrix::from_fn(n, n, |r, c2| {
                let rr = if r == done {
                    pivot
                } else if r == pivot {
                    done
                } else {
                    r
                };
                if rr == c2 {
                    zero.one_of()
                } else {
                    zero.clone()
                }
            });
            a = t.mul(&a).mul(&t.transpose());
            g = t.mul(&g);
        }
        let dinv = a.at(done, done).inv().unwrap();
        let mut t = Matrix::identity(n, &zero);
        for r in done + 1..n {
            *t.at_mut(r, done) = a.at(r, done).mul(&dinv).neg();
        }
        a = t.mul(&a).mul(&t.transpose());
        g = t.mul(&g);
        done += 1;
    }
    let d: Vec<K> = (0..n).map(|i| a.at(i, i).clone()).collect();
    (g, d)
}

/// Leray decomposition of a pair: produces p1, p, p2 in P(X), disjoint index
/// data S, S1, S2 and an invertible symmetric rho supported on S with
/// g1 = p1 w_{S u S1} u_rho p^{-1} and g2 = p w_{S u S2} p2.
/// The output is verified by multiplication before returning.
pub fn leray_decompose<K: Field>(
    g1: &Matrix<K>,
    g2: &Matrix<K>,
) -> Result<LerayData<K>, SympError> {
    if !is_symplectic(g1) || !is_symplectic(g2) {
        return Err(SympError::NotSymplectic);
    }
    let m = g1.rows() / 2;
    let zero = g1.sample().zero_of();

    // 1. normalize M = g2 X to X_{cT2} + Y_{T2}
    let j2 = block_c(g2).rank();
    let t2: Vec<usize> = (0..j2).collect();
    let q0 = normalize_lagrangian(&g_x(g2), &t2);

    // 2. move L = q0 g1^{-1} X to coordinate position with the residual
    //    freedom r in P(X) n Stab(X_{cT2} + Y_{T2})
    let l0 = q0.mul(&g_x(&sp_inverse(g1)));
    let d = intersection_with_x(&l0);
    let dl = d.cols();
    let j1 = m - dl;

    // split D = L n X along X_{cT2}: alpha = dim(D n X_{cT2})
    let all_d: Vec<usize> = (0..dl).collect();
    let d_t2 = d.submatrix(&t2, &all_d);
    let ker = d_t2.kernel_basis();
    let alpha = ker.len();
    // basis of D adapted to the split: first alpha vectors inside X_{cT2}
    let mut d_cols: Vec<Vec<K>> = ker.iter().map(|v| d.mul_vec(v)).collect();
    for c in 0..dl {
        if d_cols.len() == dl {
            break;
        }
        let cand = d.column(c);
        let mut test = d_cols.clone();
        test.push(cand.clone());
        if Matrix::from_columns(test).rank() == d_cols.len() + 1 {
            d_cols.push(cand);
        }
    }
    assert_eq!(d_cols.len(), dl);

    // targets: the intersection part lands on the last alpha indices of cT2,
    // the rest on the last (dl - alpha) indices of T2
    let ct2: Vec<usize> = (0..m).filter(|i| !t2.contains(i)).collect();
    assert!(alpha <= ct2.len() && dl - alpha <= t2.len());
    let mut ct1: Vec<usize> = Vec::new();
    ct1.extend(ct2[ct2.len() - alpha..].iter().copied());
    ct1.extend(t2[t2.len() - (dl - alpha)..].iter().copied());
    let t1: Vec<usize> = (0..m).filter(|i| !ct1.contains(i)).collect();
    assert_eq!(t1.len(), j1);

    // a-part of r: D-basis to the chosen e's, respecting a(X_{cT2}) <= X_{cT2}
    let e = |i: usize| {
        let mut v = vec![zero.clone(); m];
        v[i] = zero.one_of();
        v
    };
    let mut src_cols: Vec<Vec<K>> = Vec::new();
    let mut img_cols: Vec<Vec<K>> = Vec::new();
    for (idx, col) in d_cols.iter().enumerate() {
        src_cols.push(col.clone());
        let target = if idx < alpha {
            ct2[ct2.len() - alpha + idx]
        } else {
            t2[t2.len() - (dl - alpha) + (idx - alpha)]
        };
        img_cols.push(e(target));
    }
    // complete within X_{cT2} first so the block structure is preserved
    let taken_ct2: Vec<usize> = ct2[ct2.len() - alpha..].to_vec();
    let mut free_ct2: Vec<usize> =
        ct2.iter().filter(|i| !taken_ct2.contains(i)).copied().collect();
    for &i in ct2.iter() {
        let cand = e(i);
        let mut test = src_cols.clone();
        test.push(cand.clone());
        if Matrix::from_columns(test).rank() == src_cols.len() + 1 {
            src_cols.push(cand);
            img_cols.push(e(free_ct2.remove(0)));
        }
    }
    let taken_t2: Vec<usize> = t2[t2.len() - (dl - alpha)..].to_vec();
    let mut free_t2: Vec<usize> = t2.iter().filter(|i| !taken_t2.contains(i)).copied().collect();
    for &i in t2.iter() {
        if src_cols.len() == m {
            break;
        }
        let cand = e(i);
        let mut test = src_cols.clone();
        test.push(cand.clone());
        if Matrix::from_columns(test).rank() == src_cols.len() + 1 {
            src_cols.push(cand);
            img_cols.push(e(free_t2.remove(0)));
        }
    }
    assert_eq!(src_cols.len(), m, "could not complete the Leray a-part");
    let r_a =
        Matrix::from_columns(img_cols).mul(&Matrix::from_columns(src_cols).inverse().unwrap());
    debug_assert!(ct2.iter().all(|&i| {
        let col = r_a.column(i);
        t2.iter().all(|&r| col[r].is_zero())
    }));

    let l1 = levi(&r_a).mul(&l0);
    let chart1 = chart_over(&l1, &t1);

    // n-part of r: clear the chart outside U x U, U = T1 n T2
    let u_set: Vec<usize> = t1.iter().copied().filter(|i| t2.contains(i)).collect();
    let mut b = Matrix::zero(m, m, &zero);
    for (ri, &r) in t1.iter().enumerate() {
        for (ci, &c) in t1.iter().enumerate() {
            if !(u_set.contains(&r) && u_set.contains(&c)) {
                *b.at_mut(r, c) = chart1.at(ri, ci).neg();
            }
        }
    }
    debug_assert!(b == b.transpose());
    let r_n = unipotent(&b);
    let l2 = r_n.mul(&l1);
    let chart2 = chart_over(&l2, &t1);

    // congruence-normalize the U x U block of the chart
    let (s, r_c, chart_final) = if !u_set.is_empty() {
        let upos: Vec<usize> =
            u_set.iter().map(|i| t1.iter().position(|j| j == i).unwrap()).collect();
        let chart_uu = chart2.submatrix(&upos, &upos);
        let (gmat, dvec) = sym_diagonalize(&chart_uu);
        let rank = dvec.iter().filter(|d| !d.is_zero()).count();
        debug_assert!(dvec[..rank].iter().all(|d| !d.is_zero()));
        let mut a_c = Matrix::identity(m, &zero);
        for (ri, &r) in u_set.iter().enumerate() {
            for (ci, &c) in u_set.iter().enumerate() {
                *a_c.at_mut(r, c) = gmat.at(ri, ci).clone();
            }
        }
        let s: Vec<usize> = u_set[..rank].to_vec();
        let mut chart_final = Matrix::zero(m, m, &zero);
        for (i, &si) in s.iter().enumerate() {
            *chart_final.at_mut(si, si) = dvec[i].clone();
        }
        (s, levi(&a_c), chart_final)
    } else {
        (Vec::new(), Matrix::identity(2 * m, &zero), Matrix::zero(m, m, &zero))
    };

    let p_inv = r_c.mul(&r_n).mul(&levi(&r_a)).mul(&q0);
    let p = sp_inverse(&p_inv);
    let rho = chart_final.map(|x| x.neg());
    let s1: Vec<usize> = t1.iter().copied().filter(|i| !s.contains(i)).collect();
    let s2: Vec<usize> = t2.iter().copied().filter(|i| !s.contains(i)).collect();

    let w_t1 = w_builder(m, &t1, &zero);
    let w_t2 = w_builder(m, &t2, &zero);
    let u_rho = unipotent(&rho);
    let p2 = sp_inverse(&w_t2).mul(&p_inv).mul(g2);
    let p1 = g1.mul(&p).mul(&sp_inverse(&u_rho)).mul(&sp_inverse(&w_t1));

    let data = LerayData { p1, p, p2, s, s1, s2, rho };

    // exact output verification: both factorizations reassemble
    let ok = in_siegel_parabolic(&data.p1)
        && in_siegel_parabolic(&data.p)
        && in_siegel_parabolic(&data.p2)
        && data.p1.mul(&w_t1).mul(&u_rho).mul(&sp_inverse(&data.p)) == *g1
        && data.p.mul(&w_t2).mul(&data.p2) == *g2
        && data.s.iter().all(|i| !data.s1.contains(i) && !data.s2.contains(i));
    if !ok {
        return Err(SympError::NotSymplectic);
    }
    Ok(data)
}

/// Seeded random symplectic matrix: a product of Siegel unipotents, Levi
/// elements and w_S factors, enough steps for mixing over finite domains.
pub fn random_sp<K: Field>(
    m: usize,
    sample: &K,
    rng: &mut SplitMix64,
    random_scalar: &mut dyn FnMut(&mut SplitMix64) -> K,
    steps: usize,
) -> Matrix<K> {
    let zero = sample.zero_of();
    let mut g = Matrix::identity(2 * m, &zero);
    for _ in 0..steps {
        let choice = rng.below(3);
        let factor = match choice {
            0 => {
                let mut b = Matrix::zero(m, m, &zero);
                for r in 0..m {
                    for c in r..m {
                        let v = random_scalar(rng);
                        *b.at_mut(r, c) = v.clone();
                        *b.at_mut(c, r) = v;
                    }
                }
                unipotent(&b)
            }
            1 => loop {
                let a = Matrix::from_fn(m, m, |_, _| random_scalar(rng));
                if a.inverse().is_some() {
                    break levi(&a);
                }
            },
            _ => {
                let s: Vec<usize> = (0..m).filter(|_| rng.below(2) == 1).collect();
                w_builder(m, &s, &zero)
            }
        };
        g = g.mul(&factor);
    }
    debug_assert!(is_symplectic(&g));
    g
}

/// Random element of Sp(2m, Q): a product of at most 6 elementary symplectic
/// generators with small integer entries.
pub fn random_sp_rat(m: usize, rng: &mut SplitMix64) -> Matrix<crate::field::Rat> {
    use crate::field::rat;
    let zero = rat(0);
    let mut g = Matrix::identity(2 * m, &zero);
    let factors = 1 + rng.below(6) as usize;
    for _ in 0..factors {
        let choice = rng.below(3);
        let f = match choice {
            0 => {
                let mut b = Matrix::zero(m, m, &zero);
                for r in 0..m {
                    for c in r..m {
                        let v = rat(rng.signed(4));
                        *b.at_mut(r, c) = v.clone();
                        *b.at_mut(c, r) = v;
                    }
                }
                unipotent(&b)
            }
            1 => {
                if m == 1 || rng.below(2) == 0 {
                    let mut a = Matrix::identity(m, &zero);
                    let d = [rat(1), rat(-1), rat(2), rat(3), rat(9)];
                    *a.at_mut(0, 0) = d[rng.below(d.len() as u64) as usize].clone();
                    levi(&a)
                } else {
                    let mut a = Matrix::identity(m, &zero);
                    let i = rng.below(m as u64) as usize;
                    let mut j = rng.below(m as u64) as usize;
                    if i == j {
                        j = (j + 1) % m;
                    }
                    *a.at_mut(i, j) = rat(rng.signed(3));
                    levi(&a)
                }
            }
            _ => {
                let s: Vec<usize> = (0..m).filter(|_| rng.below(2) == 1).collect();
                w_builder(m, &s, &zero)
            }
        };
        g = g.mul(&f);
    }
    debug_assert!(is_symplectic(&g));
    g
}
