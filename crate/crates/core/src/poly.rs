//! Dense univariate polynomial helpers over an exact field.
//!
//! Coefficient vectors are little-endian (index = degree). These are the
//! primitives behind the cyclotomic quotient arithmetic of [`crate::coeff`]:
//! multiplication, euclidean division, extended gcd, and the computation of
//! cyclotomic polynomials by iterated exact division of x^N - 1.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

pub fn trim<K: Field>(mut p: Vec<K>) -> Vec<K> {
    while let Some(last) = p.last() {
        if last.is_zero() {
            p.pop();
        } else {
            break;
        }
    }
    p
}

pub fn degree<K: Field>(p: &[K]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add<K: Field>(a: &[K], b: &[K], zero: &K) -> Vec<K> {
    let n = a.len().max(b.len());
    let mut out = vec![zero.zero_of(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    trim(out)
}

pub fn sub<K: Field>(a: &[K], b: &[K], zero: &K) -> Vec<K> {
    let n = a.len().max(b.len());
    let mut out = vec![zero.zero_of(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].sub(c);
    }
    trim(out)
}

pub fn mul<K: Field>(a: &[K], b: &[K], zero: &K) -> Vec<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero.zero_of(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    trim(out)
}

/// Euclidean division; the divisor's leading coefficient must be invertible.
pub fn divrem<K: Field>(num: &[K], den: &[K], zero: &K) -> (Vec<K>, Vec<K>) {
    let den = trim(den.to_vec());
    let dd = degree(&den).expect("division by zero polynomial");
    let lead_inv = den[dd].inv().expect("leading coefficient not invertible");
    let mut rem = trim(num.to_vec());
    let mut quot = vec![zero.zero_of(); num.len().saturating_sub(dd)];
    while let Some(dr) = degree(&rem) {
        if dr < dd {
            break;
        }
        let coef = rem[dr].mul(&lead_inv);
        let shift = dr - dd;
        quot[shift] = quot[shift].add(&coef);
        for (i, c) in den.iter().enumerate() {
            rem[shift + i] = rem[shift + i].sub(&coef.mul(c));
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
pub fn ext_gcd<K: Field>(a: &[K], b: &[K], zero: &K) -> (Vec<K>, Vec<K>, Vec<K>) {
    let one = vec![zero.one_of()];
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = one.clone();
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = one;
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, zero);
        let ns = sub(&s0, &mul(&q, &s1, zero), zero);
        let nt = sub(&t0, &mul(&q, &t1, zero), zero);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if let Some(d) = degree(&r0) {
        let li = r0[d].inv().unwrap();
        let scale = |p: &[K]| p.iter().map(|c| c.mul(&li)).collect::<Vec<_>>();
        return (scale(&r0), scale(&s0), scale(&t0));
    }
    (r0, s0, t0)
}

/// x^N - 1 over the field of `one`.
pub fn x_pow_n_minus_one<K: Field>(n: u64, one: &K) -> Vec<K> {
    let mut p = vec![one.zero_of(); n as usize + 1];
    p[0] = one.neg();
    p[n as usize] = one.one_of();
    p
}

/// N-th cyclotomic polynomial over the field of `one`, by iterated exact
/// division of x^N - 1 by Phi_d for the proper divisors d of N. Prime powers
/// short-circuit to Phi_{p^k}(x) = Phi_p(x^{p^{k-1}}).
pub fn cyclotomic<K: Field>(n: u64, one: &K) -> Vec<K> {
    if let Some((p, k)) = prime_power(n) {
        let step = p.pow(k - 1) as usize;
        let mut out = vec![one.zero_of(); (p as usize - 1) * step + 1];
        for j in 0..p as usize {
            out[j * step] = one.one_of();
        }
        return out;
    }
    let mut num = x_pow_n_minus_one(n, one);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d, one);
            let (q, r) = divrem(&num, &phi_d, one);
            assert!(r.is_empty(), "cyclotomic division must be exact");
            num = q;
        }
    }
    num
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}
