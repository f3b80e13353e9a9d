//! Arithmetic of F_q (q = p^k odd), additive characters, quadratic
//! characters, Gauss sums, and the finite-field non-normalized Weil factor.
//!
//! The element enumeration is lexicographic in coordinate vectors (with the
//! constant coordinate varying fastest) and fixed once per field, so model
//! vectors indexed by F_q^m have a stable, deterministic basis order.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{is_prime, CoeffField, CoeffScalar};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FqError {
    EvenCharacteristic,
    NotPrime(u64),
}

#[derive(Debug)]
struct Inner {
    p: u64,
    k: usize,
    q: u64,
    // monic irreducible of degree k over F_p, little-endian, leading 1
    modulus: Vec<u64>,
}

/// The finite field F_q, q = p^k with p odd.
#[derive(Clone, Debug)]
pub struct FqField {
    inner: Arc<Inner>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.k == other.inner.k
    }
}
impl Eq for FqField {}

/// Element of F_q: k residues mod p, canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FqElement {
    p: u64,
    k: usize,
    coords: Vec<u64>,
    modulus: Arc<Vec<u64>>,
}

impl FqField {
    pub fn new(p: u64, k: usize) -> Result<FqField, FqError> {
        if !is_prime(p) {
            return Err(FqError::NotPrime(p));
        }
        if p == 2 {
            return Err(FqError::EvenCharacteristic);
        }
        assert!(k >= 1);
        let modulus = least_irreducible(p, k);
        Ok(FqField {
            inner: Arc::new(Inner { p, k, q: p.pow(k as u32), modulus }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    fn modulus_arc(&self) -> Arc<Vec<u64>> {
        Arc::new(self.inner.modulus.clone())
    }

    pub fn from_coords(&self, coords: &[u64]) -> FqElement {
        assert_eq!(coords.len(), self.inner.k);
        FqElement {
            p: self.inner.p,
            k: self.inner.k,
            coords: coords.iter().map(|c| c % self.inner.p).collect(),
            modulus: self.modulus_arc(),
        }
    }

    pub fn from_i64(&self, v: i64) -> FqElement {
        let mut c = vec![0u64; self.inner.k];
        c[0] = v.rem_euclid(self.inner.p as i64) as u64;
        self.from_coords(&c)
    }

    pub fn zero(&self) -> FqElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FqElement {
        self.from_i64(1)
    }

    /// The generator x of F_q = F_p[x]/(modulus); equals 0-coords shift.
    pub fn gen(&self) -> FqElement {
        if self.inner.k == 1 {
            return self.one();
        }
        let mut c = vec![0u64; self.inner.k];
        c[1] = 1;
        self.from_coords(&c)
    }

    /// Index of an element in the fixed enumeration.
    pub fn index_of(&self, x: &FqElement) -> usize {
        let mut idx = 0usize;
        for i in (0..self.inner.k).rev() {
            idx = idx * self.inner.p as usize + x.coords[i] as usize;
        }
        idx
    }

    pub fn element_of_index(&self, mut idx: usize) -> FqElement {
        let mut coords = vec![0u64; self.inner.k];
        for c in coords.iter_mut() {
            *c = (idx % self.inner.p as usize) as u64;
            idx /= self.inner.p as usize;
        }
        self.from_coords(&coords)
    }

    pub fn elements(&self) -> Vec<FqElement> {
        (0..self.inner.q as usize).map(|i| self.element_of_index(i)).collect()
    }

    /// Trace to the prime field, as a residue mod p.
    pub fn trace(&self, x: &FqElement) -> u64 {
        let mut acc = self.zero();
        let mut t = x.clone();
        for _ in 0..self.inner.k {
            acc = acc.add(&t);
            t = t.pow(self.inner.p);
        }
        debug_assert!(acc.coords[1..].iter().all(|&c| c == 0));
        acc.coords[0]
    }

    /// Quadratic character: 0 on 0, +1 on squares, -1 on nonsquares.
    pub fn quad_char(&self, x: &FqElement) -> i64 {
        if x.is_zero() {
            return 0;
        }
        let v = x.pow((self.inner.q - 1) / 2);
        if v == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn half(&self) -> FqElement {
        self.from_i64(2).inv().unwrap()
    }
}

impl FqElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn pow(&self, mut e: u64) -> FqElement {
        let mut acc = self.one_of();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for FqElement {
    fn zero_of(&self) -> Self {
        FqElement {
            p: self.p,
            k: self.k,
            coords: vec![0; self.k],
            modulus: self.modulus.clone(),
        }
    }
    fn one_of(&self) -> Self {
        let mut c = vec![0; self.k];
        c[0] = 1 % self.p;
        FqElement { p: self.p, k: self.k, coords: c, modulus: self.modulus.clone() }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!((self.p, self.k), (other.p, other.k));
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FqElement { p: self.p, k: self.k, coords, modulus: self.modulus.clone() }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!((self.p, self.k), (other.p, other.k));
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        // reduce modulo the monic defining polynomial
        for d in (self.k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, m) in self.modulus.iter().enumerate().take(self.k) {
                let idx = d - self.k + i;
                prod[idx] = (prod[idx] + c * (p - m % p)) % p;
            }
        }
        prod.truncate(self.k);
        FqElement { p, k: self.k, coords: prod, modulus: self.modulus.clone() }
    }
    fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|a| (self.p - a) % self.p).collect();
        FqElement { p: self.p, k: self.k, coords, modulus: self.modulus.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let q = self.p.pow(self.k as u32);
        Some(self.pow(q - 2))
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
    fn from_i64_of(&self, n: i64) -> Self {
        let mut c = vec![0; self.k];
        c[0] = n.rem_euclid(self.p as i64) as u64;
        FqElement { p: self.p, k: self.k, coords: c, modulus: self.modulus.clone() }
    }
}

/// Lexicographically least monic irreducible of degree k over F_p.
fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // x
    }
    let total = p.pow(k as u32);
    'cand: for t in 0..total {
        let mut poly = vec![0u64; k + 1];
        poly[k] = 1;
        let mut rem = t;
        for i in 0..k {
            let w = p.pow((k - 1 - i) as u32);
            poly[i] = (rem / w) % p;
            rem %= w;
        }
        if is_irreducible_mod_p(&poly, p) {
            return poly;
        }
        continue 'cand;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

fn is_irreducible_mod_p(poly: &[u64], p: u64) -> bool {
    let k = poly.len() - 1;
    // no roots kills degree <= 3 reducibility partially; use trial division
    // by all monic polynomials of degree <= k/2 (desk-scale k)
    for d in 1..=k / 2 {
        let total = p.pow(d as u32);
        for t in 0..total {
            let mut div = vec![0u64; d + 1];
            div[d] = 1;
            let mut rem = t;
            for i in 0..d {
                let w = p.pow((d - 1 - i) as u32);
                div[i] = (rem / w) % p;
                rem %= w;
            }
            if poly_divides_mod_p(&div, poly, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides_mod_p(div: &[u64], num: &[u64], p: u64) -> bool {
    let dd = div.len() - 1;
    let mut rem: Vec<u64> = num.to_vec();
    while rem.len() > dd {
        let lead = *rem.last().unwrap() % p;
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for i in 0..=dd {
                let idx = shift + i;
                rem[idx] = (rem[idx] + lead * (p - div[i] % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

/// A nontrivial additive character psi_beta(x) = zeta_p^{Tr(beta x)} valued
/// in the coefficient field R.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    pub fq: FqField,
    pub coeff: CoeffField,
    pub beta: FqElement,
}

impl AdditiveCharacter {
    /// Default twist beta = 1. The coefficient field must have conductor a
    /// multiple of p (checked at construction of the field).
    pub fn new(fq: &FqField, coeff: &CoeffField) -> AdditiveCharacter {
        assert_eq!(fq.p(), coeff.p(), "character and coefficient field disagree on p");
        AdditiveCharacter { fq: fq.clone(), coeff: coeff.clone(), beta: fq.one() }
    }

    pub fn with_twist(fq: &FqField, coeff: &CoeffField, beta: FqElement) -> AdditiveCharacter {
        assert!(!beta.is_zero(), "psi twist must be nonzero");
        AdditiveCharacter { fq: fq.clone(), coeff: coeff.clone(), beta }
    }

    pub fn eval(&self, x: &FqElement) -> CoeffScalar {
        let t = self.fq.trace(&self.beta.mul(x));
        let n = self.coeff.conductor();
        let p = self.fq.p();
        debug_assert_eq!(n % p, 0);
        self.coeff.zeta((n / p * t) as i64)
    }
}

/// Haar constant: the measure giving each point of the line mass c.
#[derive(Clone, Debug)]
pub struct HaarConstant {
    pub c: CoeffScalar,
}

impl HaarConstant {
    pub fn counting(coeff: &CoeffField) -> HaarConstant {
        HaarConstant { c: coeff.one() }
    }

    pub fn scaled(c: CoeffScalar) -> HaarConstant {
        assert!(!c.is_zero(), "degenerate Haar constant");
        HaarConstant { c }
    }
}

/// Gauss sum g_a = sum over x in F_q of psi(a x^2); returns q for a = 0.
pub fn gauss_sum(psi: &AdditiveCharacter, a: &FqElement) -> CoeffScalar {
    let mut acc = psi.coeff.zero();
    for x in psi.fq.elements() {
        acc = acc.add(&psi.eval(&a.mul(&x).mul(&x)));
    }
    acc
}

/// Non-normalized Weil factor of a diagonal quadratic form with the product
/// measure of per-point mass c: Omega = c^m * product of Gauss sums over the
/// nonzero entries, each zero entry contributing the point mass c.
pub fn omega_finite(psi: &AdditiveCharacter, diag: &[FqElement], mu: &HaarConstant) -> CoeffScalar {
    let mut acc = psi.coeff.one();
    for a in diag {
        acc = acc.mul(&mu.c);
        if !a.is_zero() {
            acc = acc.mul(&gauss_sum(psi, a));
        }
    }
    acc
}

/// The Hilbert symbol of F_q computed through the Omega-ratio formula
/// (a, b) = Omega_{ab,1} / (Omega_{a,1} Omega_{b,1}); identically +1 over a
/// finite field, but evaluated honestly.
pub fn hilbert_symbol_finite(psi: &AdditiveCharacter, a: &FqElement, b: &FqElement) -> i64 {
    assert!(!a.is_zero() && !b.is_zero());
    let g1 = gauss_sum(psi, &psi.fq.one());
    let ga = gauss_sum(psi, a);
    let gb = gauss_sum(psi, b);
    let gab = gauss_sum(psi, &a.mul(b));
    // (a,b) = (g_ab / g_1) / ((g_a / g_1)(g_b / g_1)) = g_ab g_1 / (g_a g_b)
    let num = gab.mul(&g1);
    let den = ga.mul(&gb);
    let ratio = num.mul(&den.inv().expect("Gauss sums are invertible"));
    let one = psi.coeff.one();
    if ratio == one {
        1
    } else if ratio == one.neg() {
        -1
    } else {
        panic!("Hilbert ratio is not a sign; broken Gauss sums");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffMode;

    fn setup(p: u64, k: usize) -> (FqField, CoeffField, AdditiveCharacter) {
        let fq = FqField::new(p, k).unwrap();
        let coeff = CoeffField::make_field(p, p, CoeffMode::Char0).unwrap();
        let psi = AdditiveCharacter::new(&fq, &coeff);
        (fq, coeff, psi)
    }

    #[test]
    fn rejects_even_characteristic() {
        assert_eq!(FqField::new(2, 1), Err(FqError::EvenCharacteristic));
    }

    #[test]
    fn f9_field_structure() {
        let f9 = FqField::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        // x^q = x for all elements
        for x in f9.elements() {
            assert_eq!(x.pow(9), x);
        }
        // trace to F_3 is surjective
        let mut hit = [false; 3];
        for x in f9.elements() {
            hit[f9.trace(&x) as usize] = true;
        }
        assert!(hit.iter().all(|&h| h));
        // inverse works
        for x in f9.elements() {
            if !x.is_zero() {
                assert_eq!(x.mul(&x.inv().unwrap()), f9.one());
            }
        }
    }

    #[test]
    fn psi_is_a_nontrivial_character() {
        let (fq, _, psi) = setup(3, 2);
        let one = psi.coeff.one();
        let mut all_one = true;
        for x in fq.elements() {
            for y in fq.elements() {
                assert_eq!(psi.eval(&x.add(&y)), psi.eval(&x).mul(&psi.eval(&y)));
            }
            if psi.eval(&x) != one {
                all_one = false;
            }
        }
        assert!(!all_one);
    }

    #[test]
    fn gauss_sum_f3_frozen_values() {
        let (fq, coeff, psi) = setup(3, 1);
        // a = 1: 1 + 2 zeta_3 (x^2 takes values 0,1,1)
        let g1 = gauss_sum(&psi, &fq.one());
        let expect = coeff.one().add(&coeff.zeta(1)).add(&coeff.zeta(1));
        assert_eq!(g1, expect);
        // a = 0: all terms 1
        assert_eq!(gauss_sum(&psi, &fq.zero()), coeff.from_i64(3));
        // a = 2 is a nonsquare: g_2 = chi(2) g_1 = -g_1 = -1 - 2 zeta_3
        let g2 = gauss_sum(&psi, &fq.from_i64(2));
        assert_eq!(g2, expect.neg());
    }

    #[test]
    fn gauss_sums_follow_the_quadratic_character() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let (fq, _, psi) = setup(p, k);
            let g1 = gauss_sum(&psi, &fq.one());
            for a in fq.elements() {
                if a.is_zero() {
                    continue;
                }
                let ga = gauss_sum(&psi, &a);
                let expect = if fq.quad_char(&a) == 1 { g1.clone() } else { g1.neg() };
                assert_eq!(ga, expect, "g_a = chi(a) g_1 fails for q={}", fq.q());
            }
        }
    }

    #[test]
    fn gauss_modulus_is_q() {
        // g_1 * conj(g_1) = q where conjugation sends zeta_p -> zeta_p^{-1}
        for (p, k) in [(3, 1), (5, 1), (3, 2)] {
            let (fq, coeff, psi) = setup(p, k);
            let g1 = gauss_sum(&psi, &fq.one());
            let prod = g1.mul(&g1.galois(-1));
            assert_eq!(prod, coeff.from_i64(fq.q() as i64));
        }
    }

    #[test]
    fn omega_finite_examples() {
        let (fq, coeff, psi) = setup(3, 1);
        let mu = HaarConstant::counting(&coeff);
        let one = fq.one();
        // <1> over F_3 equals the Gauss sum
        assert_eq!(omega_finite(&psi, &[one.clone()], &mu), gauss_sum(&psi, &one));
        // <1,1> over F_3: (1 + 2 zeta_3)^2 = -3 after Phi_3 reduction
        let om2 = omega_finite(&psi, &[one.clone(), one.clone()], &mu);
        assert_eq!(om2, coeff.from_i64(-3));
        // scaling the measure by lambda multiplies Omega by lambda^m
        let lam = coeff.from_i64(5);
        let mu5 = HaarConstant::scaled(lam.clone());
        assert_eq!(
            omega_finite(&psi, &[one.clone(), one.clone()], &mu5),
            om2.mul(&lam).mul(&lam)
        );
        // zero entries contribute the point mass
        assert_eq!(
            omega_finite(&psi, &[fq.zero()], &mu5),
            lam
        );
    }

    #[test]
    fn omega_agrees_with_double_sum_definition() {
        // independent oracle: with counting measure and f the indicator of a
        // point, the defining double sum collapses to sum_x psi(Q(x)). Omega
        // lives on X / rad(Q), where the pushforward of the counting measure
        // has mass q per point and zero entry, whence the q^z factor.
        for q in [3u64, 5] {
            let (fq, coeff, psi) = setup(q, 1);
            let mu = HaarConstant::counting(&psi.coeff);
            for a in fq.elements() {
                for b in fq.elements() {
                    let diag = [a.clone(), b.clone()];
                    let mut double = psi.coeff.zero();
                    for x0 in fq.elements() {
                        for x1 in fq.elements() {
                            let qv = a.mul(&x0).mul(&x0).add(&b.mul(&x1).mul(&x1));
                            double = double.add(&psi.eval(&qv));
                        }
                    }
                    let zeros = diag.iter().filter(|e| e.is_zero()).count() as u32;
                    let scale = coeff.from_i64((q.pow(zeros)) as i64);
                    assert_eq!(omega_finite(&psi, &diag, &mu).mul(&scale), double);
                }
            }
        }
    }

    #[test]
    fn finite_hilbert_symbol_is_trivial() {
        for q in [3u64, 5, 7] {
            let (fq, _, psi) = setup(q, 1);
            for a in fq.elements() {
                for b in fq.elements() {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    assert_eq!(hilbert_symbol_finite(&psi, &a, &b), 1);
                }
            }
        }
    }

    #[test]
    fn char_l_gauss_sums_are_invertible() {
        for ell in [2u64, 7] {
            let fq = FqField::new(3, 1).unwrap();
            let coeff = CoeffField::make_field(3, 3, CoeffMode::CharL(ell)).unwrap();
            let psi = AdditiveCharacter::new(&fq, &coeff);
            let g = gauss_sum(&psi, &fq.one());
            assert!(g.inv().is_some());
        }
    }
}
