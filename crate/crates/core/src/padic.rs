//! p-adic arithmetic kernel: square classes, Hilbert symbols, Hasse
//! invariants, non-normalized Weil factors via truncated Gauss sums, the
//! closed-formula metaplectic cocycle over Q_p and F_q((t)), and the
//! parabolic splitting-count census.
//!
//! Square classes, not full p-adic numbers, are the substrate: every cocycle
//! formula consumes only classes and symbols, so rational matrix entries are
//! reduced to (valuation parity, unit class) on demand.
//!
//! The Weil factor Omega is evaluated through the defining identity as the
//! truncated integral of psi(a x^2) over p^{-M} Z_p with mu(Z_p) = 1; levels
//! M and M + 1 must agree exactly before a value is reported stabilized.

use alloc::string::String;
use alloc::vec::Vec;

use crate::coeff::{CoeffField, CoeffMode, CoeffScalar};
use crate::field::{rat, rat_unit_mod, rat_val_p, Field, Rat};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::symplectic::{leray_decompose, x_class, SympError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalField {
    /// Q_p with residual characteristic p (p = 2 allowed).
    Qp { p: u64 },
    /// F_q((t)) with q odd; symbols only, no Weil-factor model in scope.
    Laurent { q_odd: u64 },
}

impl LocalField {
    pub fn qp(p: u64) -> LocalField {
        assert!(crate::coeff::is_prime(p));
        LocalField::Qp { p }
    }

    pub fn laurent(q: u64) -> LocalField {
        assert!(q % 2 == 1);
        LocalField::Laurent { q_odd: q }
    }

    fn residue(&self) -> u64 {
        match self {
            LocalField::Qp { p } => *p,
            LocalField::Laurent { q_odd } => *q_odd,
        }
    }

    /// Is -1 a square in the residue field (p odd / Laurent)?
    fn minus_one_square(&self) -> bool {
        self.residue() % 4 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadicError {
    MixedFields,
    ZeroClass,
    NotStabilized,
    Symplectic(SympError),
}

/// A square class of the local field: valuation parity plus unit class
/// (quadratic-residue bit for odd residue characteristic, the unit mod 8
/// for Q_2). Finitely many classes: 4 for p odd, 8 for Q_2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    pub field: LocalField,
    pub val_odd: bool,
    pub unit: UnitClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitClass {
    /// p odd or Laurent: is the unit part a nonsquare in the residue field?
    Odd { nonsquare: bool },
    /// Q_2: the odd unit modulo 8 (1, 3, 5 or 7).
    Two { u_mod_8: u64 },
}

fn legendre(u: u64, p: u64) -> i64 {
    // Euler criterion for the residue field F_p
    let mut acc = 1u64;
    let mut base = u % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

impl SquareClass {
    pub fn from_rational(field: &LocalField, x: &Rat) -> SquareClass {
        assert!(!x.is_zero(), "square class of zero");
        match field {
            LocalField::Qp { p } => {
                let v = rat_val_p(x, *p);
                let unit = if *p == 2 {
                    UnitClass::Two { u_mod_8: rat_unit_mod(x, 2, 8) }
                } else {
                    let u = rat_unit_mod(x, *p, *p);
                    UnitClass::Odd { nonsquare: legendre(u, *p) == -1 }
                };
                SquareClass { field: field.clone(), val_odd: v.rem_euclid(2) == 1, unit }
            }
            LocalField::Laurent { .. } => {
                panic!("rationals do not determine Laurent square classes; use from_parts")
            }
        }
    }

    /// Laurent-series class from (t-valuation, leading coefficient data).
    pub fn laurent_from_parts(field: &LocalField, val: i64, leading_nonsquare: bool) -> SquareClass {
        assert!(matches!(field, LocalField::Laurent { .. }));
        SquareClass {
            field: field.clone(),
            val_odd: val.rem_euclid(2) == 1,
            unit: UnitClass::Odd { nonsquare: leading_nonsquare },
        }
    }

    pub fn one(field: &LocalField) -> SquareClass {
        match field {
            LocalField::Qp { p } if *p == 2 => SquareClass {
                field: field.clone(),
                val_odd: false,
                unit: UnitClass::Two { u_mod_8: 1 },
            },
            _ => SquareClass {
                field: field.clone(),
                val_odd: false,
                unit: UnitClass::Odd { nonsquare: false },
            },
        }
    }

    pub fn minus_one(field: &LocalField) -> SquareClass {
        match field {
            LocalField::Qp { p } => {
                if *p == 2 {
                    SquareClass {
                        field: field.clone(),
                        val_odd: false,
                        unit: UnitClass::Two { u_mod_8: 7 },
                    }
                } else {
                    SquareClass {
                        field: field.clone(),
                        val_odd: false,
                        unit: UnitClass::Odd { nonsquare: !field.minus_one_square() },
                    }
                }
            }
            LocalField::Laurent { .. } => SquareClass {
                field: field.clone(),
                val_odd: false,
                unit: UnitClass::Odd { nonsquare: !field.minus_one_square() },
            },
        }
    }

    /// Class of the product: classes form a group.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        assert_eq!(self.field, other.field, "mixed fields");
        let unit = match (&self.unit, &other.unit) {
            (UnitClass::Odd { nonsquare: a }, UnitClass::Odd { nonsquare: b }) => {
                UnitClass::Odd { nonsquare: a ^ b }
            }
            (UnitClass::Two { u_mod_8: a }, UnitClass::Two { u_mod_8: b }) => {
                UnitClass::Two { u_mod_8: (a * b) % 8 }
            }
            _ => panic!("mixed unit class kinds"),
        };
        SquareClass {
            field: self.field.clone(),
            val_odd: self.val_odd ^ other.val_odd,
            unit,
        }
    }

    /// Human-readable representative, e.g. "u*pi" or "3" (mod 8 unit).
    pub fn label(&self) -> String {
        use alloc::format;
        match &self.unit {
            UnitClass::Odd { nonsquare } => match (self.val_odd, nonsquare) {
                (false, false) => "1".into(),
                (false, true) => "u".into(),
                (true, false) => "pi".into(),
                (true, true) => "u*pi".into(),
            },
            UnitClass::Two { u_mod_8 } => {
                if self.val_odd {
                    format!("2*{}", u_mod_8)
                } else {
                    format!("{}", u_mod_8)
                }
            }
        }
    }
}

/// Hilbert symbol by the classical closed form: from valuation parities and
/// residue characters for odd residue characteristic, the unit-mod-8 table
/// for Q_2, and the analogous residue formula over F_q((t)).
pub fn hilbert_symbol(a: &SquareClass, b: &SquareClass) -> i64 {
    assert_eq!(a.field, b.field, "mixed fields");
    let alpha = a.val_odd as u32;
    let beta = b.val_odd as u32;
    match (&a.unit, &b.unit) {
        (UnitClass::Odd { nonsquare: u }, UnitClass::Odd { nonsquare: v }) => {
            let chi_m1 = if a.field.minus_one_square() { 1i64 } else { -1 };
            let mut s = 1i64;
            if alpha & beta & 1 == 1 {
                s *= chi_m1;
            }
            if beta & 1 == 1 && *u {
                s = -s;
            }
            if alpha & 1 == 1 && *v {
                s = -s;
            }
            s
        }
        (UnitClass::Two { u_mod_8: u }, UnitClass::Two { u_mod_8: v }) => {
            let eps = |x: u64| (x - 1) / 2 % 2; // (x-1)/2 mod 2
            let omega = |x: u64| (x * x - 1) / 8 % 2; // (x^2-1)/8 mod 2
            let mut e = eps(*u) * eps(*v);
            e += alpha as u64 * omega(*v);
            e += beta as u64 * omega(*u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        _ => panic!("mixed unit class kinds"),
    }
}

/// Hasse invariant h_F(Q) = prod over i < j of (a_i, a_j)_F; the empty
/// product is +1 and the value is permutation-invariant.
pub fn hasse_invariant(diag: &[SquareClass]) -> i64 {
    let mut s = 1i64;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            s *= hilbert_symbol(&diag[i], &diag[j]);
        }
    }
    s
}

/// A truncated non-normalized Weil factor: the value of the defining double
/// integral with f the indicator of Z_p, evaluated over the ball p^{-M} Z_p.
/// The value lives in the minimal cyclotomic field hosting its character
/// sums; embed it where needed.
#[derive(Clone, Debug)]
pub struct OmegaValue {
    pub value: CoeffScalar,
    pub level: u32,
    pub stabilized: bool,
}

/// Conductor of the minimal field hosting the level-m truncation of
/// Omega(psi . Q_a).
pub fn omega_conductor(p: u64, a: &Rat, psi_level: i64, m: u32) -> u64 {
    let shifted_val = rat_val_p(a, p) - psi_level;
    let r = (2 * m as i64 - shifted_val).max(1) as u32;
    p.pow(r)
}

fn host_field(p: u64, a: &Rat, m: u32) -> CoeffField {
    CoeffField::make_field(p, omega_conductor(p, a, 0, m), CoeffMode::Char0)
        .expect("omega host field")
}

/// Omega_mu(psi . Q_a) at truncation level M, with mu(Z_p) = 1 and psi of
/// the given level (trivial on p^level Z_p, nontrivial one step below).
/// The returned flag records exact agreement between levels M and M + 1,
/// compared in the larger of the two hosting fields.
pub fn omega_factor(p: u64, a: &Rat, psi_level: i64, m: u32) -> OmegaValue {
    assert!(!a.is_zero());
    // a psi of level L pairs with Q_a exactly as the level-0 psi pairs with
    // Q_{a p^{-L}}: rescale once and work with the level-0 character
    let mut a0 = a.clone();
    let pr = rat(p as i64);
    let mut lvl = psi_level;
    while lvl > 0 {
        a0 = &a0 / &pr;
        lvl -= 1;
    }
    while lvl < 0 {
        a0 = &a0 * &pr;
        lvl += 1;
    }
    let field_m = host_field(p, &a0, m);
    let field_next = host_field(p, &a0, m + 1);
    let value = omega_truncated(p, &a0, m, &field_m);
    let next = omega_truncated(p, &a0, m + 1, &field_next);
    let stabilized = value.embed_into(&field_next) == next;
    OmegaValue { value, level: m, stabilized }
}

/// integral over p^{-M} Z_p of psi(a x^2) dx, exactly.
fn omega_truncated(p: u64, a: &Rat, m: u32, coeff: &CoeffField) -> CoeffScalar {
    let v = rat_val_p(a, p);
    // integrand psi(a p^{-2M} w^2), w integral; r = conductor exponent
    let r_signed = 2 * m as i64 - v;
    if r_signed <= 0 {
        // psi trivial on the whole ball: volume p^M
        return coeff.from_rat(Rat::from_integer(num_bigint::BigInt::from(p).pow(m)));
    }
    let r = r_signed as u32;
    assert!(
        coeff.conductor() % p.pow(r) == 0,
        "coefficient conductor too small for this Gauss sum"
    );
    let k = r + if p == 2 { 1 } else { 0 };
    let pk = p.pow(k);
    let pr = p.pow(r);
    // unit part of a p^{-2M} as a residue mod p^r
    let mut t = a.clone();
    for _ in 0..2 * m {
        t = &t / &rat(p as i64);
    }
    let u = rat_unit_mod(&t, p, pr);
    let step = coeff.conductor() / pr;
    let mut sum = coeff.zero();
    for w in 0..pk {
        let sq = (u as u128 * (w as u128 * w as u128 % pr as u128) % pr as u128) as u64;
        sum = sum.add(&coeff.zeta((sq * step) as i64));
    }
    // normalize: Omega^{(M)} = p^{M - K} * sum
    let mut scale = Rat::from_integer(num_bigint::BigInt::from(1));
    let mut e = m as i64 - k as i64;
    while e > 0 {
        scale = &scale * &rat(p as i64);
        e -= 1;
    }
    while e < 0 {
        scale = &scale / &rat(p as i64);
        e += 1;
    }
    sum.mul(&coeff.from_rat(scale))
}

/// Omega_{a,b} = Omega(psi . Q_a) / Omega(psi . Q_b), measure-independent.
/// Values are computed at their minimal stabilized levels and embedded into
/// `coeff` for the division; propagates non-stabilization as an error.
pub fn omega_ratio(p: u64, a: &Rat, b: &Rat, coeff: &CoeffField) -> Result<CoeffScalar, PadicError> {
    let oa = stabilized_omega(p, a, coeff)?;
    let ob = stabilized_omega(p, b, coeff)?;
    Ok(oa.mul(&ob.inv().expect("Omega values are nonzero")))
}

/// Finds the least level M <= 4 at which omega stabilizes and embeds the
/// value into the target field.
pub fn stabilized_omega(p: u64, a: &Rat, coeff: &CoeffField) -> Result<CoeffScalar, PadicError> {
    for m in 1..=4u32 {
        let o = omega_factor(p, a, 0, m);
        if o.stabilized {
            if coeff.conductor() % o.value.field().conductor() != 0 {
                return Err(PadicError::NotStabilized);
            }
            return Ok(o.value.embed_into(coeff));
        }
    }
    Err(PadicError::NotStabilized)
}

/// x(g) of a rational symplectic matrix as a square class at the field.
pub fn x_square_class(field: &LocalField, g: &Matrix<Rat>) -> Result<SquareClass, PadicError> {
    let x = x_class(g).map_err(PadicError::Symplectic)?;
    Ok(SquareClass::from_rational(field, &x))
}

/// The reduced metaplectic cocycle c(g1, g2) in {+1, -1} evaluated purely
/// from Hilbert symbols and the Hasse invariant of the Leray form:
/// c = (x1, x2) (x1 x2, -x12) (-1,-1)^{l(l-1)/2} ((-1)^l, x(w_S u_rho w_S))
///     * (2, det Q) h(Q)
/// with Q the diagonalized Leray form and l = |S1 n S2|. The last factor is
/// the value of c(w_S u_rho, w_S); under the orientation conventions used
/// here its symbol carries 2, not -2: consistency of the cocycle identity
/// with the parabolic rules forces the value to be even in rho, and
/// (2, det Q) is the even choice. The finite-field instance is unchanged
/// (every symbol is 1 there).
pub fn cocycle_evaluate(
    field: &LocalField,
    g1: &Matrix<Rat>,
    g2: &Matrix<Rat>,
) -> Result<i64, PadicError> {
    assert!(matches!(field, LocalField::Qp { .. }), "rational matrices live over Q_p");
    let x1 = x_square_class(field, g1)?;
    let x2 = x_square_class(field, g2)?;
    let x12 = x_square_class(field, &g1.mul(g2))?;
    let data = leray_decompose(g1, g2).map_err(PadicError::Symplectic)?;
    let l = data.s1.iter().filter(|i| data.s2.contains(i)).count() as u64;
    let minus_one = SquareClass::minus_one(field);
    let one = SquareClass::one(field);

    let mut value = hilbert_symbol(&x1, &x2);
    value *= hilbert_symbol(&x1.mul(&x2), &minus_one.mul(&x12));
    if (l * l.saturating_sub(1) / 2) % 2 == 1 {
        value *= hilbert_symbol(&minus_one, &minus_one);
    }
    // x(w_S u_rho w_S) = class of det(rho restricted to S)
    let q_diag: Vec<SquareClass> = data
        .q_diag()
        .iter()
        .map(|d| SquareClass::from_rational(field, d))
        .collect();
    let det_q = q_diag.iter().fold(one.clone(), |acc, c| acc.mul(c));
    if l % 2 == 1 {
        value *= hilbert_symbol(&minus_one, &det_q);
    }
    if !q_diag.is_empty() {
        // c(w_S u_rho, w_S) = (2, det Q)_F h_F(Q)
        let two = SquareClass::from_rational(field, &rat(2));
        value *= hilbert_symbol(&two, &det_q);
        value *= hasse_invariant(&q_diag);
    }
    Ok(value)
}

/// Same formula instantiated over a finite field, where every symbol is +1:
/// the Leray machinery runs over F_q and the value collapses to 1, matching
/// the operator-level triviality of the finite-field cocycle.
pub fn cocycle_formula_finite(
    g1: &Matrix<crate::finitefield::FqElement>,
    g2: &Matrix<crate::finitefield::FqElement>,
) -> Result<i64, PadicError> {
    let _x1 = x_class(g1).map_err(PadicError::Symplectic)?;
    let _x2 = x_class(g2).map_err(PadicError::Symplectic)?;
    let _x12 = x_class(&g1.mul(g2)).map_err(PadicError::Symplectic)?;
    let data = leray_decompose(g1, g2).map_err(PadicError::Symplectic)?;
    for &i in &data.s {
        assert!(!data.rho.at(i, i).is_zero());
    }
    // all finite-field Hilbert symbols and the Hasse invariant are +1
    Ok(1)
}

#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub trials: u32,
    pub failures: Vec<u64>,
    pub seed: u64,
}

/// Verifies the 2-cocycle identity c(g1,g2) c(g1 g2, g3) = c(g2,g3) c(g1, g2 g3)
/// on random rational triples; failures are reported with reproducer seeds.
pub fn cocycle_identity_check(
    field: &LocalField,
    m: usize,
    trials: u32,
    seed: u64,
) -> Result<CocycleReport, PadicError> {
    let mut rng = SplitMix64::new(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let g1 = crate::symplectic::random_sp_rat(m, &mut rng);
        let g2 = crate::symplectic::random_sp_rat(m, &mut rng);
        let g3 = crate::symplectic::random_sp_rat(m, &mut rng);
        let lhs = cocycle_evaluate(field, &g1, &g2)? * cocycle_evaluate(field, &g1.mul(&g2), &g3)?;
        let rhs = cocycle_evaluate(field, &g2, &g3)? * cocycle_evaluate(field, &g1, &g2.mul(&g3))?;
        if lhs != rhs {
            failures.push(seed.wrapping_add(trial as u64));
        }
    }
    Ok(CocycleReport { trials, failures, seed })
}

#[derive(Clone, Debug)]
pub struct SplittingCensus {
    /// number of maps satisfying eps_a eps_b = (a,b) eps_{ab}
    pub count: usize,
    /// class labels in the enumeration order used by the witnesses
    pub labels: Vec<String>,
    /// all solutions, one sign vector per solution, aligned with labels
    pub witnesses: Vec<Vec<i64>>,
}

/// Exhaustive census of parabolic splittings over a local field with odd
/// residue characteristic: maps from F^x/F^{x2} (if -1 is a square) or
/// F^x/F^{x4} (if not) to {+-1} satisfying eps_a eps_b = (a, b)_F eps_{ab}.
pub fn splitting_census(field: &LocalField) -> SplittingCensus {
    assert!(field.residue() % 2 == 1, "odd residue characteristic only");
    // class representatives with a group structure index -> index
    let (classes, labels): (Vec<SquareClass>, Vec<String>) = if field.minus_one_square() {
        // F^x / F^{x2}: {1, u, pi, u pi}
        let one = SquareClass::one(field);
        let u = SquareClass {
            field: field.clone(),
            val_odd: false,
            unit: UnitClass::Odd { nonsquare: true },
        };
        let pi = SquareClass {
            field: field.clone(),
            val_odd: true,
            unit: UnitClass::Odd { nonsquare: false },
        };
        let upi = u.mul(&pi);
        let cs = alloc::vec![one, u, pi, upi];
        let ls = cs.iter().map(|c| c.label()).collect();
        (cs, ls)
    } else {
        // F^x / F^{x4} = <-1> x <pi>: elements (-1)^i pi^j, j mod 4
        let mut cs = Vec::new();
        let mut ls = Vec::new();
        for i in 0..2 {
            for j in 0..4 {
                cs.push(FourthPowerClass { neg: i == 1, pi_pow: j });
                ls.push(alloc::format!("(-1)^{} pi^{}", i, j));
            }
        }
        // the mod-4th-powers census is handled separately below
        return census_mod_fourth_powers(field, cs, ls);
    };
    let mul_table: Vec<Vec<usize>> = classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| {
                    let ab = a.mul(b);
                    classes.iter().position(|c| *c == ab).unwrap()
                })
                .collect()
        })
        .collect();
    let symbols: Vec<Vec<i64>> = classes
        .iter()
        .map(|a| classes.iter().map(|b| hilbert_symbol(a, b)).collect())
        .collect();
    let n = classes.len();
    let mut witnesses = Vec::new();
    for mask in 0..(1u32 << n) {
        let eps: Vec<i64> = (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| eps[i] * eps[j] == symbols[i][j] * eps[mul_table[i][j]])
        });
        if ok {
            witnesses.push(eps);
        }
    }
    SplittingCensus { count: witnesses.len(), labels, witnesses }
}

#[derive(Clone, PartialEq)]
struct FourthPowerClass {
    neg: bool,
    pi_pow: u64, // mod 4
}

fn census_mod_fourth_powers(
    field: &LocalField,
    classes: Vec<FourthPowerClass>,
    labels: Vec<String>,
) -> SplittingCensus {
    // symbol on representatives (-1)^i pi^j: well defined modulo squares,
    // a fortiori modulo fourth powers
    let to_square_class = |c: &FourthPowerClass| -> SquareClass {
        let mut s = SquareClass::one(field);
        if c.neg {
            s = s.mul(&SquareClass::minus_one(field));
        }
        let pi = SquareClass {
            field: field.clone(),
            val_odd: true,
            unit: UnitClass::Odd { nonsquare: false },
        };
        for _ in 0..c.pi_pow % 2 {
            s = s.mul(&pi);
        }
        // pi^2: even valuation, square unit: trivial as a square class
        s
    };
    let n = classes.len();
    let mul = |a: &FourthPowerClass, b: &FourthPowerClass| FourthPowerClass {
        neg: a.neg ^ b.neg,
        pi_pow: (a.pi_pow + b.pi_pow) % 4,
    };
    let mul_table: Vec<Vec<usize>> = classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| {
                    let ab = mul(a, b);
                    classes.iter().position(|c| *c == ab).unwrap()
                })
                .collect()
        })
        .collect();
    let symbols: Vec<Vec<i64>> = classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| hilbert_symbol(&to_square_class(a), &to_square_class(b)))
                .collect()
        })
        .collect();
    let mut witnesses = Vec::new();
    for mask in 0..(1u32 << n) {
        let eps: Vec<i64> = (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| eps[i] * eps[j] == symbols[i][j] * eps[mul_table[i][j]])
        });
        if ok {
            witnesses.push(eps);
        }
    }
    SplittingCensus { count: witnesses.len(), labels, witnesses }
}

/// A coefficient field hosting the stabilized Omega values of the standard
/// square-class suite at p (ratios are divided here, so it is kept small:
/// the Gauss-sum truncations themselves live in their own minimal fields).
pub fn omega_suite_field(p: u64) -> CoeffField {
    let r = if p == 2 { 6 } else { 2 };
    CoeffField::make_field(p, p.pow(r), CoeffMode::Char0).expect("valid omega field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::finitefield::FqField;

    fn q2() -> LocalField {
        LocalField::qp(2)
    }
    fn q3() -> LocalField {
        LocalField::qp(3)
    }
    fn q5() -> LocalField {
        LocalField::qp(5)
    }

    fn sym(field: &LocalField, a: i64, b: i64) -> i64 {
        hilbert_symbol(
            &SquareClass::from_rational(field, &rat(a)),
            &SquareClass::from_rational(field, &rat(b)),
        )
    }

    #[test]
    fn classical_symbol_values() {
        // (-1, -1)_2 = -1
        assert_eq!(sym(&q2(), -1, -1), -1);
        // (-1, pi)_3 = (-1, -pi)_3 = -1 and (-1, -1)_3 = +1
        assert_eq!(sym(&q3(), -1, 3), -1);
        assert_eq!(sym(&q3(), -1, -3), -1);
        assert_eq!(sym(&q3(), -1, -1), 1);
        // (1, b) = 1 for any b
        for b in [-1, 2, 3, 5, 6, -15] {
            assert_eq!(sym(&q2(), 1, b), 1);
            assert_eq!(sym(&q3(), 1, b), 1);
            assert_eq!(sym(&q5(), 1, b), 1);
        }
    }

    fn class_reps(field: &LocalField) -> Vec<i64> {
        match field {
            LocalField::Qp { p: 2 } => alloc::vec![1, 3, 5, 7, 2, 6, 10, 14],
            LocalField::Qp { p } => {
                let u = (2..*p).find(|x| legendre(*x, *p) == -1).unwrap() as i64;
                let pi = *p as i64;
                alloc::vec![1, u, pi, u * pi]
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn symbol_symmetry_bimultiplicativity_and_steinberg() {
        for field in [q2(), q3(), q5()] {
            let reps = class_reps(&field);
            for &a in &reps {
                for &b in &reps {
                    assert_eq!(sym(&field, a, b), sym(&field, b, a));
                    // (a, a) = (-1, a)
                    assert_eq!(sym(&field, a, a), sym(&field, -1, a));
                    for &c in &reps {
                        assert_eq!(
                            sym(&field, a * b, c),
                            sym(&field, a, c) * sym(&field, b, c),
                            "bimultiplicativity fails at ({a},{b};{c})"
                        );
                    }
                    // Steinberg relation (a, 1 - a) = 1
                    if 1 - a != 0 {
                        assert_eq!(sym(&field, a, 1 - a), 1, "(a, 1-a) != 1 for a = {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_invariant_examples() {
        // rank 1: empty product
        let c = SquareClass::from_rational(&q3(), &rat(3));
        assert_eq!(hasse_invariant(&[c]), 1);
        // <-1, -1> over Q_2: the single symbol (-1, -1)_2 = -1
        let m1 = SquareClass::from_rational(&q2(), &rat(-1));
        assert_eq!(hasse_invariant(&[m1.clone(), m1]), -1);
        // permutation invariance on <1, u, pi> over Q_5
        let f = q5();
        let a = SquareClass::from_rational(&f, &rat(1));
        let b = SquareClass::from_rational(&f, &rat(2));
        let c = SquareClass::from_rational(&f, &rat(5));
        let h1 = hasse_invariant(&[a.clone(), b.clone(), c.clone()]);
        let h2 = hasse_invariant(&[c, a, b]);
        assert_eq!(h1, h2);
    }

    #[test]
    fn omega_unit_is_one_and_stabilizes_immediately() {
        for p in [3u64, 5] {
            for a in [1i64, 2, -1] {
                let o = omega_factor(p, &rat(a), 0, 1);
                assert!(o.stabilized, "unit Omega must stabilize at M = 1");
                assert_eq!(o.value, o.value.one_of(), "Omega(psi . unit x^2) = 1");
            }
        }
    }

    #[test]
    fn omega_degenerate_convention() {
        // a = 0 with the degenerate convention: Omega(psi . 0) = mu({0}) = 1
        // under the point normalization used here (the radical is quotiented
        // away), so the op rejects a = 0 rather than guessing a mass.
        // The nonzero low-valuation case behaves like the unit case after
        // the psi-level shift: check level reindexing.
        let p = 3u64;
        let o_shift = omega_factor(p, &rat(3), 1, 1);
        let o_plain = omega_factor(p, &rat(1), 0, 1);
        assert!(o_shift.stabilized && o_plain.stabilized);
        assert_eq!(o_shift.value, o_plain.value.embed_into(o_shift.value.field()));
    }

    #[test]
    fn omega_ratio_identities_q3() {
        let p = 3u64;
        let coeff = omega_suite_field(p);
        // Omega_{1,1} = 1
        assert_eq!(omega_ratio(p, &rat(1), &rat(1), &coeff).unwrap(), coeff.one());
        // Omega_{pi^2, 1} = |pi|^{-1} = 3 (direct value of the defining
        // integral: scaling x by pi multiplies the truncated integral by p)
        let r = omega_ratio(p, &rat(9), &rat(1), &coeff).unwrap();
        assert_eq!(r, coeff.from_rat(rat(3)));
        // Omega_{pi,1}^2 = (pi,pi)_3 Omega_{pi^2,1} = -3, so Omega_{pi,1}
        // is a primitive 4th root of unity times sqrt(3)
        let opi = omega_ratio(p, &rat(3), &rat(1), &coeff).unwrap();
        let sq = opi.mul(&opi);
        let sign = sym(&q3(), 3, 3);
        assert_eq!(sign, -1);
        let expect = coeff.from_rat(rat(sign * 3));
        assert_eq!(sq, expect);
    }

    #[test]
    fn omega_minus_one_squared_is_the_symbol() {
        // (Omega_{-1,1})^2 = (-1,-1)_F for p in {2, 3, 5}
        for p in [2u64, 3, 5] {
            let coeff = omega_suite_field(p);
            let field = LocalField::qp(p);
            let r = omega_ratio(p, &rat(-1), &rat(1), &coeff).unwrap();
            let sq = r.mul(&r);
            let expect = coeff.from_i64(sym(&field, -1, -1));
            assert_eq!(sq, expect, "fails at p = {p}");
        }
    }

    #[test]
    fn symbol_agrees_with_omega_ratio_route() {
        // (a, b) = Omega_{ab,1} / (Omega_{a,1} Omega_{b,1}) on all class
        // pairs for p in {3, 5}, via the multiplicative cross-check
        for p in [3u64, 5] {
            let field = LocalField::qp(p);
            let coeff = omega_suite_field(p);
            let reps = class_reps(&field);
            let omega_of = |a: i64| stabilized_omega(p, &rat(a), &coeff).unwrap();
            let o1 = omega_of(1);
            for &a in &reps {
                for &b in &reps {
                    let lhs = coeff
                        .from_i64(sym(&field, a, b))
                        .mul(&omega_of(a))
                        .mul(&omega_of(b));
                    let rhs = omega_of(a * b).mul(&o1);
                    assert_eq!(lhs, rhs, "Omega route disagrees at p={p}, ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn cocycle_parabolic_rule_and_symmetry() {
        let field = q3();
        // p = -id (x(p) = class of (-1)^m = -1), g with x(g) = pi
        let mut g = Matrix::identity(2, &rat(0));
        *g.at_mut(0, 0) = rat(3);
        *g.at_mut(1, 1) = rat(1) / rat(3);
        let p_el = Matrix::identity(2, &rat(0)).map(|x: &Rat| x.neg());
        let c1 = cocycle_evaluate(&field, &g, &p_el).unwrap();
        let c2 = cocycle_evaluate(&field, &p_el, &g).unwrap();
        assert_eq!(c1, c2);
        // (x(p), x(g)) = (-1, pi)_3 = -1
        assert_eq!(c1, -1);
        // g2 = identity gives +1
        let id = Matrix::identity(2, &rat(0));
        assert_eq!(cocycle_evaluate(&field, &g, &id).unwrap(), 1);
    }

    #[test]
    fn cocycle_of_full_w_pair_at_m2() {
        // c(w_S, w_S') with l = |S n S'| = 2 at m = 2 is (-1,-1)_F
        let w = crate::symplectic::w_builder(2, &[0, 1], &rat(0));
        assert_eq!(cocycle_evaluate(&q2(), &w, &w).unwrap(), -1);
        assert_eq!(cocycle_evaluate(&q5(), &w, &w).unwrap(), 1);
        assert_eq!(cocycle_evaluate(&q3(), &w, &w).unwrap(), 1);
    }

    #[test]
    fn cocycle_identity_small_runs() {
        for field in [q2(), q3()] {
            let rep = cocycle_identity_check(&field, 1, 25, 42).unwrap();
            assert!(rep.failures.is_empty(), "cocycle identity fails over {field:?}");
        }
        let rep = cocycle_identity_check(&q5(), 2, 10, 43).unwrap();
        assert!(rep.failures.is_empty());
    }

    #[test]
    fn finite_field_formula_route_is_trivial() {
        let fq = FqField::new(3, 1).unwrap();
        let mut rng = SplitMix64::new(9);
        let mut rs = {
            let fq = fq.clone();
            move |r: &mut SplitMix64| fq.element_of_index(r.below(3) as usize)
        };
        for _ in 0..50 {
            let g1 = crate::symplectic::random_sp(1, &fq.zero(), &mut rng, &mut rs, 8);
            let g2 = crate::symplectic::random_sp(1, &fq.zero(), &mut rng, &mut rs, 8);
            assert_eq!(cocycle_formula_finite(&g1, &g2).unwrap(), 1);
        }
    }

    #[test]
    fn census_counts_and_witness() {
        // Q_5: -1 is a square, 16 candidate maps, exactly 4 solutions
        let c5 = splitting_census(&q5());
        assert_eq!(c5.count, 4);
        // the relation at a = a' = 1 forces eps_1 = 1 in every witness
        let one_pos = c5.labels.iter().position(|l| l == "1").unwrap();
        for w in &c5.witnesses {
            assert_eq!(w[one_pos], 1);
        }
        // Q_3: -1 is not a square, 256 candidates, exactly 4 solutions,
        // including the explicit witness eps_{-1} = -1, eps_pi = eps_{-pi} = 1
        let c3 = splitting_census(&q3());
        assert_eq!(c3.count, 4);
        let idx = |lbl: &str| c3.labels.iter().position(|l| l == lbl).unwrap();
        let m1 = idx("(-1)^1 pi^0");
        let pi = idx("(-1)^0 pi^1");
        let mpi = idx("(-1)^1 pi^1");
        assert!(
            c3.witnesses
                .iter()
                .any(|w| w[m1] == -1 && w[pi] == 1 && w[mpi] == 1),
            "the classical explicit splitting must appear among the solutions"
        );
        for w in &c3.witnesses {
            assert_eq!(w[idx("(-1)^0 pi^0")], 1);
        }
    }

    #[test]
    fn laurent_symbols() {
        let f9 = LocalField::laurent(9);
        // -1 is a square in F_9, so (t, t) = chi(-1) = +1
        let t = SquareClass::laurent_from_parts(&f9, 1, false);
        assert_eq!(hilbert_symbol(&t, &t), 1);
        let f3 = LocalField::laurent(3);
        let t3 = SquareClass::laurent_from_parts(&f3, 1, false);
        assert_eq!(hilbert_symbol(&t3, &t3), -1);
        // units pair trivially
        let u = SquareClass::laurent_from_parts(&f3, 0, true);
        let v = SquareClass::laurent_from_parts(&f3, 0, false);
        assert_eq!(hilbert_symbol(&u, &v), 1);
    }
}
