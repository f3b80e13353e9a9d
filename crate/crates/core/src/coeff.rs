//! Coefficient fields R hosting character values, Gauss sums and cocycles.
//!
//! Two modes:
//!   * characteristic 0: Q[x] / Phi_N(x), the cyclotomic field of conductor N;
//!   * characteristic l (l != p): F_l[x] / f(x) where f is the
//!     lexicographically least irreducible factor of Phi_N over F_l.
//!
//! In both modes the canonical reduced representative makes equality exact.
//! Elements are immutable and hashable by value; the defining data travels
//! with every scalar through an `Arc` so scalars from different fields can
//! never be silently mixed.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, Rat, Zmod};
use crate::poly;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoeffMode {
    /// Cyclotomic number field of conductor N.
    Char0,
    /// Finite extension of F_l containing a primitive N-th root of unity.
    CharL(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    /// l = p is impossible: no nontrivial p-power character exists then.
    EllEqualsP,
    /// gcd(N, l) must be 1 so that primitive N-th roots survive mod l.
    EllDividesConductor,
    /// char-0 mode requires p | N so the field hosts psi values.
    ConductorNotMultipleOfP,
    NotPrime(u64),
    DivisionByZero,
    MixedFields,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    n: u64,
    mode: CoeffMode,
    degree: usize,
    // defining modulus: Phi_N over Q, or an irreducible factor over F_l
    mod_q: Vec<Rat>,
    mod_l: Vec<Zmod>,
}

/// Descriptor of the coefficient field R; cheap to clone.
#[derive(Clone, Debug)]
pub struct CoeffField {
    inner: Arc<Inner>,
}

impl PartialEq for CoeffField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.n == other.inner.n
                && self.inner.mode == other.inner.mode)
    }
}
impl Eq for CoeffField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mult_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
        assert!(k <= n, "a not invertible mod n");
    }
    k
}

impl CoeffField {
    /// Builds the field descriptor with a distinguished primitive N-th root
    /// of unity zeta_N (the class of x).
    pub fn make_field(p: u64, n: u64, mode: CoeffMode) -> Result<CoeffField, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        assert!(n >= 1);
        match mode {
            CoeffMode::Char0 => {
                if n % p != 0 {
                    return Err(CoeffError::ConductorNotMultipleOfP);
                }
                let one: Rat = Field::one_of(&crate::field::rat(0));
                let phi = poly::cyclotomic(n, &one);
                let degree = phi.len() - 1;
                Ok(CoeffField {
                    inner: Arc::new(Inner {
                        p,
                        n,
                        mode,
                        degree,
                        mod_q: phi,
                        mod_l: Vec::new(),
                    }),
                })
            }
            CoeffMode::CharL(ell) => {
                if !is_prime(ell) {
                    return Err(CoeffError::NotPrime(ell));
                }
                if ell == p {
                    return Err(CoeffError::EllEqualsP);
                }
                if n % ell == 0 {
                    return Err(CoeffError::EllDividesConductor);
                }
                if n % p != 0 {
                    return Err(CoeffError::ConductorNotMultipleOfP);
                }
                let modulus = least_factor_of_cyclotomic(n, ell);
                let degree = modulus.len() - 1;
                Ok(CoeffField {
                    inner: Arc::new(Inner {
                        p,
                        n,
                        mode,
                        degree,
                        mod_q: Vec::new(),
                        mod_l: modulus,
                    }),
                })
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn conductor(&self) -> u64 {
        self.inner.n
    }

    pub fn mode(&self) -> CoeffMode {
        self.inner.mode
    }

    /// Degree of the quotient over the prime field.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn zero(&self) -> CoeffScalar {
        match self.inner.mode {
            CoeffMode::Char0 => CoeffScalar {
                field: self.clone(),
                repr: Repr::Q(Vec::new()),
            },
            CoeffMode::CharL(_) => CoeffScalar {
                field: self.clone(),
                repr: Repr::L(Vec::new()),
            },
        }
    }

    pub fn one(&self) -> CoeffScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> CoeffScalar {
        match self.inner.mode {
            CoeffMode::Char0 => self.from_rat(crate::field::rat(v)),
            CoeffMode::CharL(ell) => {
                let z = Zmod::new(v, ell);
                CoeffScalar {
                    field: self.clone(),
                    repr: Repr::L(poly::trim(vec![z])),
                }
            }
        }
    }

    /// Embeds a rational; in char-l mode the denominator must be prime to l.
    pub fn from_rat(&self, v: Rat) -> CoeffScalar {
        match self.inner.mode {
            CoeffMode::Char0 => CoeffScalar {
                field: self.clone(),
                repr: Repr::Q(poly::trim(vec![v])),
            },
            CoeffMode::CharL(ell) => {
                let num = v.numer();
                let den = v.denom();
                let nm = num_mod(num, ell);
                let dm = num_mod(den, ell);
                let d_inv = crate::field::mod_inverse(dm, ell).expect("denominator divisible by l");
                let z = Zmod { v: nm * d_inv % ell, m: ell };
                CoeffScalar {
                    field: self.clone(),
                    repr: Repr::L(poly::trim(vec![z])),
                }
            }
        }
    }

    /// zeta_N^k, with zeta(0) = 1 and zeta(a) zeta(b) = zeta(a + b).
    pub fn zeta(&self, k: i64) -> CoeffScalar {
        let n = self.inner.n as i64;
        let k = k.rem_euclid(n) as usize;
        match self.inner.mode {
            CoeffMode::Char0 => {
                let one: Rat = Field::one_of(&crate::field::rat(0));
                let mut mono = vec![Field::zero_of(&one); k + 1];
                mono[k] = one.clone();
                let (_, r) = poly::divrem(&mono, &self.inner.mod_q, &Field::zero_of(&one));
                CoeffScalar {
                    field: self.clone(),
                    repr: Repr::Q(r),
                }
            }
            CoeffMode::CharL(ell) => {
                let one = Zmod { v: 1 % ell, m: ell };
                let mut mono = vec![one.zero_of(); k + 1];
                mono[k] = one;
                let (_, r) = poly::divrem(&mono, &self.inner.mod_l, &one.zero_of());
                CoeffScalar {
                    field: self.clone(),
                    repr: Repr::L(r),
                }
            }
        }
    }
}

fn num_mod(n: &num_bigint::BigInt, m: u64) -> u64 {
    use num_traits::Zero;
    let mb = num_bigint::BigInt::from(m);
    let r = ((n % &mb) + &mb) % &mb;
    if Zero::is_zero(&r) {
        0
    } else {
        r.to_u64_digits().1[0]
    }
}

/// Lexicographically least monic degree-d factor of Phi_N over F_l, where
/// d is the multiplicative order of l mod N. Coefficient tuples
/// (c_0, .., c_{d-1}) are compared lexicographically.
fn least_factor_of_cyclotomic(n: u64, ell: u64) -> Vec<Zmod> {
    let one = Zmod { v: 1 % ell, m: ell };
    let phi_q = poly::cyclotomic(n, &crate::field::rat(1));
    let phi_l: Vec<Zmod> = phi_q
        .iter()
        .map(|c| {
            let v = num_mod(c.numer(), ell);
            Zmod { v, m: ell }
        })
        .collect();
    let d = mult_order(ell % n, n) as usize;
    let total = ell.checked_pow(d as u32).expect("factor search space too large");
    for t in 0..total {
        // base-l digits of t, most significant digit = c_0, so increasing t
        // enumerates coefficient tuples (c_0, .., c_{d-1}) in lex order
        let mut coeffs = vec![one.zero_of(); d + 1];
        coeffs[d] = one;
        let mut rem = t;
        for i in 0..d {
            let w = ell.pow((d - 1 - i) as u32);
            coeffs[i] = Zmod { v: (rem / w) % ell, m: ell };
            rem %= w;
        }
        let (_, r) = poly::divrem(&phi_l, &coeffs, &one.zero_of());
        if r.is_empty() {
            return coeffs;
        }
    }
    unreachable!("Phi_N must factor over F_l when gcd(N, l) = 1");
}

#[derive(Clone, PartialEq, Debug)]
enum Repr {
    Q(Vec<Rat>),
    L(Vec<Zmod>),
}

/// Element of the coefficient field, in canonical reduced form.
#[derive(Clone, Debug)]
pub struct CoeffScalar {
    field: CoeffField,
    repr: Repr,
}

impl PartialEq for CoeffScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl CoeffScalar {
    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    fn check_same(&self, other: &Self) {
        assert!(self.field == other.field, "mixed-field operands");
    }

    pub fn pow(&self, e: u64) -> CoeffScalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Galois twist zeta_N -> zeta_N^k (char-0 mode, gcd(k, N) = 1).
    pub fn galois(&self, k: i64) -> CoeffScalar {
        let n = self.field.inner.n;
        let k = k.rem_euclid(n as i64) as u64;
        assert!(num_integer::gcd(k, n) == 1, "galois exponent not coprime to N");
        match &self.repr {
            Repr::Q(coords) => {
                let zero: Rat = Field::zero_of(&crate::field::rat(0));
                let mut out = vec![zero.clone(); (n as usize).max(1)];
                for (i, c) in coords.iter().enumerate() {
                    let j = (i as u64 * k % n) as usize;
                    out[j] = out[j].add(c);
                }
                let (_, r) = poly::divrem(&out, &self.field.inner.mod_q, &zero);
                CoeffScalar {
                    field: self.field.clone(),
                    repr: Repr::Q(r),
                }
            }
            Repr::L(_) => panic!("galois twist only supported in char-0 mode"),
        }
    }

    /// Embeds a char-0 scalar into a larger cyclotomic field whose conductor
    /// is a multiple of this one's, via zeta_N -> zeta_M^{M/N}.
    pub fn embed_into(&self, target: &CoeffField) -> CoeffScalar {
        let n = self.field.conductor();
        let m = target.conductor();
        assert_eq!(m % n, 0, "target conductor must be a multiple");
        match &self.repr {
            Repr::Q(coords) => {
                let step = (m / n) as i64;
                let mut acc = target.zero();
                for (i, c) in coords.iter().enumerate() {
                    if Field::is_zero(c) {
                        continue;
                    }
                    let term = target.zeta(i as i64 * step).mul(&target.from_rat(c.clone()));
                    acc = acc.add(&term);
                }
                acc
            }
            Repr::L(_) => panic!("embed_into only supported in char-0 mode"),
        }
    }

    /// The rational value if this scalar lies in the prime field (char 0).
    pub fn as_rat(&self) -> Option<Rat> {
        match &self.repr {
            Repr::Q(c) => match c.len() {
                0 => Some(crate::field::rat(0)),
                1 => Some(c[0].clone()),
                _ => None,
            },
            Repr::L(_) => None,
        }
    }

    /// Coordinates in the canonical basis (ascending powers of zeta_N),
    /// rendered exactly: fractions in char 0, residues in char l.
    pub fn coord_strings(&self) -> Vec<String> {
        let d = self.field.degree();
        match &self.repr {
            Repr::Q(c) => (0..d)
                .map(|i| c.get(i).map(|x| x.to_string()).unwrap_or_else(|| "0".into()))
                .collect(),
            Repr::L(c) => (0..d)
                .map(|i| c.get(i).map(|x| x.v.to_string()).unwrap_or_else(|| "0".into()))
                .collect(),
        }
    }
}

impl Field for CoeffScalar {
    fn zero_of(&self) -> Self {
        self.field.zero()
    }
    fn one_of(&self) -> Self {
        self.field.one()
    }
    fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(poly::add(a, b, &crate::field::rat(0))),
            (Repr::L(a), Repr::L(b)) => {
                let z = Zmod { v: 0, m: ell_of(&self.field) };
                Repr::L(poly::add(a, b, &z))
            }
            _ => panic!("mixed-field operands"),
        };
        CoeffScalar { field: self.field.clone(), repr }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => {
                let zero = crate::field::rat(0);
                let prod = poly::mul(a, b, &zero);
                let (_, r) = poly::divrem(&prod, &self.field.inner.mod_q, &zero);
                Repr::Q(r)
            }
            (Repr::L(a), Repr::L(b)) => {
                let z = Zmod { v: 0, m: ell_of(&self.field) };
                let prod = poly::mul(a, b, &z);
                let (_, r) = poly::divrem(&prod, &self.field.inner.mod_l, &z);
                Repr::L(r)
            }
            _ => panic!("mixed-field operands"),
        };
        CoeffScalar { field: self.field.clone(), repr }
    }
    fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(a.iter().map(|c| Field::neg(c)).collect()),
            Repr::L(a) => Repr::L(a.iter().map(|c| c.neg()).collect()),
        };
        CoeffScalar { field: self.field.clone(), repr }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let repr = match &self.repr {
            Repr::Q(a) => {
                let zero = crate::field::rat(0);
                let (g, s, _) = poly::ext_gcd(a, &self.field.inner.mod_q, &zero);
                assert_eq!(poly::degree(&g), Some(0), "modulus not irreducible over Q?");
                let ginv = g[0].inv().unwrap();
                let s = s.iter().map(|c| c.mul(&ginv)).collect::<Vec<_>>();
                let (_, r) = poly::divrem(&s, &self.field.inner.mod_q, &zero);
                Repr::Q(r)
            }
            Repr::L(a) => {
                let z = Zmod { v: 0, m: ell_of(&self.field) };
                let (g, s, _) = poly::ext_gcd(a, &self.field.inner.mod_l, &z);
                assert_eq!(poly::degree(&g), Some(0), "modulus not irreducible over F_l?");
                let ginv = g[0].inv().unwrap();
                let s = s.iter().map(|c| c.mul(&ginv)).collect::<Vec<_>>();
                let (_, r) = poly::divrem(&s, &self.field.inner.mod_l, &z);
                Repr::L(r)
            }
        };
        Some(CoeffScalar { field: self.field.clone(), repr })
    }
    fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(a) => a.is_empty(),
            Repr::L(a) => a.is_empty(),
        }
    }
    fn from_i64_of(&self, n: i64) -> Self {
        self.field.from_i64(n)
    }
}

fn ell_of(f: &CoeffField) -> u64 {
    match f.inner.mode {
        CoeffMode::CharL(ell) => ell,
        CoeffMode::Char0 => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn make_field_examples() {
        // smallest admissible char-0 field for p = 3
        let f = CoeffField::make_field(3, 3, CoeffMode::Char0).unwrap();
        assert_eq!(f.degree(), 2);
        // degree-2 extension of F_2 containing zeta_3 (order of 2 mod 3 is 2)
        let f2 = CoeffField::make_field(3, 3, CoeffMode::CharL(2)).unwrap();
        assert_eq!(f2.degree(), 2);
        // l = p forbidden
        assert_eq!(
            CoeffField::make_field(3, 3, CoeffMode::CharL(3)),
            Err(CoeffError::EllEqualsP)
        );
        // l | N forbidden
        assert_eq!(
            CoeffField::make_field(3, 6, CoeffMode::CharL(2)),
            Err(CoeffError::EllDividesConductor)
        );
    }

    #[test]
    fn zeta_relations() {
        for mode in [CoeffMode::Char0, CoeffMode::CharL(2), CoeffMode::CharL(7)] {
            let f = CoeffField::make_field(3, 3, mode).unwrap();
            assert_eq!(f.zeta(0), f.one());
            assert_eq!(f.zeta(1).mul(&f.zeta(2)), f.one());
            // 1 + zeta + zeta^2 = 0 (Phi_3 relation)
            let s = f.one().add(&f.zeta(1)).add(&f.zeta(2));
            assert!(s.is_zero());
            assert_eq!(f.zeta(1).inv().unwrap(), f.zeta(2));
            assert_eq!(f.zeta(1).add(&f.zeta(2)), f.from_i64(-1));
        }
    }

    #[test]
    fn zeta_has_exact_order_n() {
        for (p, n, mode) in [
            (3, 12, CoeffMode::Char0),
            (3, 3, CoeffMode::CharL(7)),
            (5, 5, CoeffMode::CharL(2)),
        ] {
            let f = CoeffField::make_field(p, n, mode).unwrap();
            let z = f.zeta(1);
            assert_eq!(z.pow(n), f.one());
            for d in 1..n {
                if n % d == 0 {
                    assert_ne!(z.pow(d), f.one(), "order smaller than N");
                }
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        // associativity, distributivity, a * a^-1 = 1 on random triples
        for mode in [CoeffMode::Char0, CoeffMode::CharL(7)] {
            let f = CoeffField::make_field(3, 3, mode).unwrap();
            let mut rng = SplitMix64::new(1);
            let rand_scalar = |rng: &mut SplitMix64| {
                let a = rng.signed(5);
                let b = rng.signed(5);
                f.from_i64(a).add(&f.zeta(1).mul(&f.from_i64(b)))
            };
            for _ in 0..1000 {
                let a = rand_scalar(&mut rng);
                let b = rand_scalar(&mut rng);
                let c = rand_scalar(&mut rng);
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn char_l_kills_l() {
        let f = CoeffField::make_field(3, 3, CoeffMode::CharL(7)).unwrap();
        let x = f.zeta(1).add(&f.from_i64(3));
        let mut acc = f.zero();
        for _ in 0..7 {
            acc = acc.add(&x);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn galois_is_field_automorphism() {
        let f = CoeffField::make_field(3, 9, CoeffMode::Char0).unwrap();
        let a = f.zeta(1).add(&f.from_i64(2));
        let b = f.zeta(4).add(&f.from_i64(-1));
        assert_eq!(a.galois(2).mul(&b.galois(2)), a.mul(&b).galois(2));
        assert_eq!(a.galois(2).add(&b.galois(2)), a.add(&b).galois(2));
        assert_eq!(f.zeta(1).galois(2), f.zeta(2));
    }
}
