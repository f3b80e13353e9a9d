//! Exact scalar domains.
//!
//! All linear algebra in this crate is generic over [`Field`]. An element
//! carries enough context to produce the zero and one of its own field, so
//! matrices never need a separate field descriptor.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rationals, the scalar domain used for symplectic
/// matrices evaluated at p-adic places.
pub type Rat = num_rational::BigRational;

/// An exact field element. `inv` returns `None` exactly on zero.
pub trait Field: Clone + PartialEq + Debug {
    fn zero_of(&self) -> Self;
    fn one_of(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_i64_of(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_of()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Field for Rat {
    fn zero_of(&self) -> Self {
        Rat::zero()
    }
    fn one_of(&self) -> Self {
        Rat::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64_of(&self, n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
}

/// Convenience constructor for rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// p-adic valuation of a nonzero rational: v_p(num) - v_p(den).
pub fn rat_val_p(x: &Rat, p: u64) -> i64 {
    assert!(!Zero::is_zero(x), "valuation of zero");
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().abs();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

/// The unit part u of x = p^v * u, reduced modulo p^k (k >= 1), as a
/// nonnegative residue. Requires the denominator of u to be prime to p.
pub fn rat_unit_mod(x: &Rat, p: u64, pk: u64) -> u64 {
    let v = rat_val_p(x, p);
    let pb = BigInt::from(p);
    let mut n = x.numer().clone();
    let mut d = x.denom().clone();
    let mut vv = v;
    while vv > 0 {
        n /= &pb;
        vv -= 1;
    }
    while vv < 0 {
        d /= &pb;
        vv += 1;
    }
    let m = BigInt::from(pk);
    let nm = ((n % &m) + &m) % &m;
    let dm = ((d % &m) + &m) % &m;
    let n_res = nm.to_u64_digits().1.first().copied().unwrap_or(0);
    let d_res = dm.to_u64_digits().1.first().copied().unwrap_or(0);
    let d_inv = mod_inverse(d_res, pk).expect("denominator not prime to p");
    (n_res * d_inv) % pk
}

/// Modular inverse for small moduli.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    let mut t = t % m as i128;
    if t < 0 {
        t += m as i128;
    }
    Some(t as u64)
}

/// Residue arithmetic in the prime field Z/l, used as the base of
/// characteristic-l coefficient fields.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Zmod {
    pub v: u64,
    pub m: u64,
}

impl Zmod {
    pub fn new(v: i64, m: u64) -> Self {
        let r = v.rem_euclid(m as i64) as u64;
        Zmod { v: r, m }
    }
}

impl Field for Zmod {
    fn zero_of(&self) -> Self {
        Zmod { v: 0, m: self.m }
    }
    fn one_of(&self) -> Self {
        Zmod { v: 1 % self.m, m: self.m }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        Zmod { v: (self.v + other.v) % self.m, m: self.m }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        Zmod { v: (self.v + self.m - other.v) % self.m, m: self.m }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        Zmod { v: (self.v as u128 * other.v as u128 % self.m as u128) as u64, m: self.m }
    }
    fn neg(&self) -> Self {
        Zmod { v: (self.m - self.v) % self.m, m: self.m }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            mod_inverse(self.v, self.m).map(|v| Zmod { v, m: self.m })
        }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn from_i64_of(&self, n: i64) -> Self {
        Zmod::new(n, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_valuations() {
        assert_eq!(rat_val_p(&(rat(18) / rat(5)), 3), 2);
        assert_eq!(rat_val_p(&(rat(5) / rat(27)), 3), -3);
        assert_eq!(rat_unit_mod(&rat(18), 3, 3), 2);
        assert_eq!(rat_unit_mod(&(rat(-1) / rat(2)), 5, 5), 2);
    }

    #[test]
    fn zmod_field_axioms() {
        let one = Zmod::new(1, 7);
        for a in 0..7 {
            let x = Zmod::new(a, 7);
            if a != 0 {
                assert_eq!(x.mul(&x.inv().unwrap()), one);
            } else {
                assert!(x.inv().is_none());
            }
        }
    }
}
