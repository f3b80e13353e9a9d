//! Dense exact linear algebra over any [`Field`].
//!
//! Row reduction, kernels, solving and inversion are all fraction-exact;
//! rank decisions are made by exact zero tests, never by thresholds.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
    // zero of the scalar domain; keeps field context on empty shapes
    proto: K,
}

impl<K: Field> PartialEq for Matrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<K: Field> Matrix<K> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        assert!(rows * cols > 0, "from_fn needs a nonempty shape");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        let proto = data[0].zero_of();
        Matrix { rows, cols, data, proto }
    }

    pub fn from_rows(rows_elems: Vec<Vec<K>>) -> Self {
        let rows = rows_elems.len();
        assert!(rows > 0);
        let cols = rows_elems[0].len();
        assert!(rows_elems.iter().all(|r| r.len() == cols));
        let data: Vec<K> = rows_elems.into_iter().flatten().collect();
        let proto = data[0].zero_of();
        Matrix { rows, cols, data, proto }
    }

    pub fn zero(rows: usize, cols: usize, sample: &K) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![sample.zero_of(); rows * cols],
            proto: sample.zero_of(),
        }
    }

    pub fn identity(n: usize, sample: &K) -> Self {
        let mut m = Self::zero(n, n, sample);
        for i in 0..n {
            *m.at_mut(i, i) = sample.one_of();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        &mut self.data[r * self.cols + c]
    }

    /// A zero of the scalar domain, usable as field context.
    pub fn sample(&self) -> &K {
        &self.proto
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data, proto: self.proto.clone() }
    }

    pub fn map(&self, f: impl Fn(&K) -> K) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            proto: self.proto.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.sub(b);
        }
        out
    }

    pub fn scale(&self, s: &K) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let zero = self.proto.zero_of();
        let mut out = Matrix::zero(self.rows, other.cols, &zero);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c).add(&a.mul(other.at(k, c)));
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        let zero = self.proto.zero_of();
        (0..self.rows)
            .map(|r| {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            for c in 0..self.cols {
                data.push(self.at(r, c).clone());
            }
            for c in 0..other.cols {
                data.push(other.at(r, c).clone());
            }
        }
        Matrix { rows: self.rows, cols: self.cols + other.cols, data, proto: self.proto.clone() }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data, proto: self.proto.clone() }
    }

    pub fn column(&self, c: usize) -> Vec<K> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn from_columns(cols: Vec<Vec<K>>) -> Self {
        let n = cols.len();
        assert!(n > 0);
        let rows = cols[0].len();
        Matrix::from_fn(rows, n, |r, c| cols[c][r].clone())
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // lowest-index nonzero pivot
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = self.at(row, col).inv().unwrap();
            for c in 0..self.cols {
                *self.at_mut(row, c) = self.at(row, c).mul(&inv);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in 0..self.cols {
                        let v = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {v : self * v = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let zero = self.sample().zero_of();
        let one = zero.one_of();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(ri, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution x of self * x = b, if the system is consistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows);
        let zero = self.sample().zero_of();
        let bm = Matrix::from_fn(self.rows, 1, |r, _| b[r].clone());
        let mut aug = self.hstack(&bm);
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![zero.clone(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let id = Matrix::identity(n, self.sample());
        let mut aug = self.hstack(&id);
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug.at(r, n + c).clone()))
    }

    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols);
        let zero = self.sample().zero_of();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = zero.one_of();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return zero;
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = det.neg();
            }
            det = det.mul(m.at(col, col));
            let inv = m.at(col, col).inv().unwrap();
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).mul(&inv);
                for c in col..n {
                    let v = m.at(r, c).sub(&factor.mul(m.at(col, c)));
                    *m.at_mut(r, c) = v;
                }
            }
        }
        det
    }

    pub fn trace(&self) -> K {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.sample().zero_of();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Kronecker product, row-major index (i1 * n2 + i2).
    pub fn kronecker(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (r1, r2) = (r / other.rows, r % other.rows);
            let (c1, c2) = (c / other.cols, c % other.cols);
            self.at(r1, c1).mul(other.at(r2, c2))
        })
    }

    /// Is `v` in the column span?
    pub fn spans(&self, v: &[K]) -> bool {
        self.solve(v).is_some()
    }
}

/// Basis of the intersection of two column spans.
pub fn intersect_columns<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Vec<Vec<K>> {
    assert_eq!(a.rows(), b.rows());
    // solve a*x = b*y; kernel of [a | -b]
    let joint = a.hstack(&b.map(|x| x.neg()));
    let mut out = Vec::new();
    let mut seen = Matrix::zero(a.rows(), 1, a.sample());
    let mut cols: Vec<Vec<K>> = Vec::new();
    for k in joint.kernel_basis() {
        let x = &k[..a.cols()];
        let v = a.mul_vec(x);
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        cols.push(v.clone());
        let cand = Matrix::from_columns(cols.clone());
        if cand.rank() > seen.rank().min(cols.len() - 1) {
            seen = cand;
            out.push(v);
        } else {
            cols.pop();
        }
    }
    out
}

/// Completes the (independent) columns of `m` to a basis of K^rows by
/// greedily appending standard basis vectors.
pub fn complete_basis<K: Field>(m: &Matrix<K>) -> Matrix<K> {
    let n = m.rows();
    let mut cols: Vec<Vec<K>> = (0..m.cols()).map(|c| m.column(c)).collect();
    let zero = m.sample().zero_of();
    let one = zero.one_of();
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![zero.clone(); n];
        e[i] = one.clone();
        let mut cand = cols.clone();
        cand.push(e.clone());
        if Matrix::from_columns(cand).rank() == cols.len() + 1 {
            cols.push(e);
        }
    }
    assert_eq!(cols.len(), n, "input columns were not independent");
    Matrix::from_columns(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    #[test]
    fn inverse_and_det() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(a.det(), rat(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, &rat(0)));
        let singular = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), rat(0));
    }

    #[test]
    fn kernel_dimension() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(vec![vec![1, 1], vec![0, 1], vec![1, 2]]);
        let x = a.solve(&[rat(3), rat(1), rat(4)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(3), rat(1), rat(4)]);
        assert!(a.solve(&[rat(1), rat(0), rat(5)]).is_none());
    }

    #[test]
    fn complete_basis_fills_out() {
        let cols = Matrix::from_columns(vec![vec![rat(1), rat(1), rat(0)]]);
        let full = complete_basis(&cols);
        assert_eq!(full.rank(), 3);
    }
}
