//! Exact scalar fields: the rationals, prime fields `F_p` (p odd), and the
//! cyclotomic extension `Q(ε)` by a primitive q-th root of unity (q prime).
//!
//! Cyclotomic elements are stored over the power basis `1, ε, …, ε^{q-2}`;
//! the relation `1 + ε + … + ε^{q-1} = 0` eliminates `ε^{q-1}`, so every
//! element has exactly one coefficient vector and zero testing is
//! coefficient-wise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("characteristic must be an odd prime, got {0}")]
    BadCharacteristic(u64),
    #[error("cyclotomic order must be prime, got {0}")]
    BadCyclotomicOrder(u64),
    #[error("{field} has no primitive {q}-th root of unity")]
    NoRootOfUnity { field: FieldSpec, q: u64 },
    #[error("{value} has no image in {field}")]
    NotRepresentable { value: String, field: FieldSpec },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Which field a [`Scalar`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    /// `F_p`, p an odd prime.
    Prime(u64),
    /// `Q(ε)` with ε a primitive q-th root of unity, q prime.
    Cyclotomic(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn cyclotomic(q: u64) -> Result<Self, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::BadCyclotomicOrder(q));
        }
        Ok(FieldSpec::Cyclotomic(q))
    }

    /// `0` selects the rationals, anything else must be an odd prime.
    pub fn from_characteristic(p: u64) -> Result<Self, FieldError> {
        if p == 0 {
            Ok(FieldSpec::Rational)
        } else {
            FieldSpec::prime(p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Prime { p, v: 0 },
            FieldSpec::Cyclotomic(q) => Scalar::Cyclotomic {
                q,
                coeffs: vec![BigRational::zero(); (q - 1) as usize],
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime(p) => Scalar::Prime {
                p,
                v: n.rem_euclid(p as i64) as u64,
            },
            FieldSpec::Cyclotomic(q) => {
                let mut coeffs = vec![BigRational::zero(); (q - 1) as usize];
                coeffs[0] = BigRational::from_integer(n.into());
                Scalar::Cyclotomic { q, coeffs }
            }
        }
    }

    /// Image of a rational number; fails in `F_p` when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, FieldError> {
        match *self {
            FieldSpec::Rational => Ok(Scalar::Rational(r.clone())),
            FieldSpec::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = residue(r.numer(), &modulus);
                let den = residue(r.denom(), &modulus);
                if den == 0 {
                    return Err(FieldError::NotRepresentable {
                        value: r.to_string(),
                        field: *self,
                    });
                }
                let den = Scalar::Prime { p, v: den };
                Scalar::Prime { p, v: num }.try_div(&den)
            }
            FieldSpec::Cyclotomic(q) => {
                let mut coeffs = vec![BigRational::zero(); (q - 1) as usize];
                coeffs[0] = r.clone();
                Ok(Scalar::Cyclotomic { q, coeffs })
            }
        }
    }

    /// A primitive q-th root of unity in this field, if one exists.
    ///
    /// Cyclotomic(q) returns ε itself; the rationals only carry `-1` (q = 2);
    /// `F_p` carries one exactly when q divides p - 1, and the smallest such
    /// residue is returned so the choice is deterministic.
    pub fn root_of_unity(&self, q: u64) -> Result<Scalar, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::BadCyclotomicOrder(q));
        }
        let missing = FieldError::NoRootOfUnity { field: *self, q };
        match *self {
            _ if q == 2 => Ok(self.from_int(-1)),
            FieldSpec::Rational => Err(missing),
            FieldSpec::Cyclotomic(order) if order == q => Ok(cyclotomic_power(q, 1)),
            FieldSpec::Cyclotomic(_) => Err(missing),
            FieldSpec::Prime(p) => {
                if (p - 1) % q != 0 {
                    return Err(missing);
                }
                (2..p)
                    .find(|&x| pow_mod(x, q, p) == 1)
                    .map(|v| Scalar::Prime { p, v })
                    .ok_or(missing)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Cyclotomic(q) => write!(f, "Q(e{q})"),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn residue(n: &BigInt, modulus: &BigInt) -> u64 {
    let r = ((n % modulus) + modulus) % modulus;
    r.to_u64().expect("residue fits in u64")
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % p) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, v: u64 },
    /// Coordinates over `1, ε, …, ε^{q-2}`.
    Cyclotomic { q: u64, coeffs: Vec<BigRational> },
}

/// `ε^k` in canonical form; `k` may be any integer.
fn cyclotomic_power(q: u64, k: i64) -> Scalar {
    let mut exps = BTreeMap::new();
    exps.insert(k, BigRational::one());
    cyclotomic_canonical(&exps, q).expect("q checked prime by caller")
}

/// Canonical form of `Σ c_k ε^k`: exponents are reduced mod q and `ε^{q-1}`
/// is rewritten as `-(1 + ε + … + ε^{q-2})`.
pub fn cyclotomic_canonical(
    exps: &BTreeMap<i64, BigRational>,
    q: u64,
) -> Result<Scalar, FieldError> {
    if !is_prime(q) {
        return Err(FieldError::BadCyclotomicOrder(q));
    }
    let mut full = vec![BigRational::zero(); q as usize];
    for (k, c) in exps {
        full[k.rem_euclid(q as i64) as usize] += c;
    }
    Ok(Scalar::Cyclotomic {
        q,
        coeffs: reduce_full(full),
    })
}

/// Folds a length-q exponent vector onto the power basis of length q - 1.
fn reduce_full(mut full: Vec<BigRational>) -> Vec<BigRational> {
    let top = full.pop().expect("q >= 2");
    if !top.is_zero() {
        for c in full.iter_mut() {
            *c -= &top;
        }
    }
    full
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
            Scalar::Cyclotomic { q, .. } => FieldSpec::Cyclotomic(*q),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { v, .. } => *v == 0,
            Scalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    fn check(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::Mismatch(a, b))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, v: a }, Scalar::Prime { v: b, .. }) => Scalar::Prime {
                p: *p,
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            (Scalar::Cyclotomic { q, coeffs: a }, Scalar::Cyclotomic { coeffs: b, .. }) => {
                Scalar::Cyclotomic {
                    q: *q,
                    coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                }
            }
            _ => unreachable!("field checked"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, v: a }, Scalar::Prime { v: b, .. }) => Scalar::Prime {
                p: *p,
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            (Scalar::Cyclotomic { q, coeffs: a }, Scalar::Cyclotomic { coeffs: b, .. }) => {
                let q = *q as usize;
                let mut full = vec![BigRational::zero(); q];
                for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        full[(i + j) % q] += x * y;
                    }
                }
                Scalar::Cyclotomic {
                    q: q as u64,
                    coeffs: reduce_full(full),
                }
            }
            _ => unreachable!("field checked"),
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { p, v } => Scalar::Prime {
                p: *p,
                v: (*p - *v) % *p,
            },
            Scalar::Cyclotomic { q, coeffs } => Scalar::Cyclotomic {
                q: *q,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { p, v } => Scalar::Prime {
                p: *p,
                v: pow_mod(*v, *p - 2, *p),
            },
            Scalar::Cyclotomic { q, .. } => cyclotomic_inverse(self, *q),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// The rational value when the scalar lies in the prime subfield `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic { coeffs, .. } if coeffs[1..].iter().all(Zero::is_zero) => {
                Some(coeffs[0].clone())
            }
            _ => None,
        }
    }
}

/// Solves `x · y = 1` by Gaussian elimination on the multiplication-by-x
/// matrix over the power basis.
#[allow(clippy::needless_range_loop)]
fn cyclotomic_inverse(x: &Scalar, q: u64) -> Scalar {
    let dim = (q - 1) as usize;
    // column j = x * ε^j
    let cols: Vec<Vec<BigRational>> = (0..dim)
        .map(|j| match x * &cyclotomic_power(q, j as i64) {
            Scalar::Cyclotomic { coeffs, .. } => coeffs,
            _ => unreachable!(),
        })
        .collect();
    // augmented rows: [M | e_0]
    let mut rows: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(if i == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            });
            row
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim)
            .find(|&r| !rows[r][col].is_zero())
            .expect("nonzero cyclotomic elements are invertible");
        rows.swap(col, pivot);
        let lead = rows[col][col].clone();
        for v in rows[col].iter_mut() {
            *v /= &lead;
        }
        for r in 0..dim {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in col..=dim {
                    let delta = &factor * &rows[col][k];
                    rows[r][k] -= delta;
                }
            }
        }
    }
    Scalar::Cyclotomic {
        q,
        coeffs: rows.into_iter().map(|mut r| r.pop().unwrap()).collect(),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

// Operators panic on field mismatch; use the `try_*` methods at API boundaries.
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Prime { v, .. } => write!(f, "{v}"),
            Scalar::Cyclotomic { coeffs, .. } => {
                let mut out = String::new();
                for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let mag = fmt_rational(&c.abs());
                    let sign = if c.is_negative() { "-" } else { "+" };
                    if out.is_empty() {
                        if c.is_negative() {
                            out.push('-');
                        }
                    } else {
                        out.push_str(&format!(" {sign} "));
                    }
                    out.push_str(&match k {
                        0 => mag,
                        _ => {
                            let power = if k == 1 { "e".to_string() } else { format!("e^{k}") };
                            if c.abs().is_one() {
                                power
                            } else {
                                format!("{mag}*{power}")
                            }
                        }
                    });
                }
                if out.is_empty() {
                    out.push('0');
                }
                write!(f, "{out}")
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    fn cyc(q: u64, coeffs: &[i64]) -> Scalar {
        Scalar::Cyclotomic {
            q,
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    #[test]
    fn rational_sum() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn prime_product() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_int(3) * f.from_int(4), f.from_int(2));
    }

    #[test]
    fn cyclotomic_cube_root() {
        let e = cyclotomic_power(3, 1);
        let e2 = cyclotomic_power(3, 2);
        assert!((&e * &e2).is_one());
    }

    #[test]
    fn canonical_forms() {
        let mut m = BTreeMap::new();
        m.insert(3, BigRational::one());
        assert_eq!(cyclotomic_canonical(&m, 3).unwrap(), cyc(3, &[1, 0]));

        let m: BTreeMap<_, _> = (0..3).map(|k| (k, BigRational::one())).collect();
        assert!(cyclotomic_canonical(&m, 3).unwrap().is_zero());

        // ε^{-1} = ε² = -1 - ε
        let mut m = BTreeMap::new();
        m.insert(-1, BigRational::one());
        assert_eq!(cyclotomic_canonical(&m, 3).unwrap(), cyc(3, &[-1, -1]));

        assert_eq!(
            cyclotomic_canonical(&BTreeMap::new(), 4),
            Err(FieldError::BadCyclotomicOrder(4))
        );
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert_eq!(FieldSpec::prime(2), Err(FieldError::BadCharacteristic(2)));
        assert_eq!(FieldSpec::prime(9), Err(FieldError::BadCharacteristic(9)));
        assert!(FieldSpec::cyclotomic(6).is_err());
        assert!(FieldSpec::cyclotomic(2).is_ok());
    }

    #[test]
    fn errors_are_explicit() {
        assert_eq!(rat(0, 1).inv(), Err(FieldError::DivisionByZero));
        let f5 = FieldSpec::Prime(5);
        assert_eq!(
            rat(1, 1).try_add(&f5.one()),
            Err(FieldError::Mismatch(FieldSpec::Rational, f5))
        );
        assert!(f5.from_rational(&BigRational::new(1.into(), 5.into())).is_err());
        assert_eq!(
            f5.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(),
            f5.from_int(3)
        );
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(FieldSpec::Rational.root_of_unity(2).unwrap(), rat(-1, 1));
        assert!(FieldSpec::Rational.root_of_unity(3).is_err());
        let f7 = FieldSpec::Prime(7);
        let w = f7.root_of_unity(3).unwrap();
        assert!(w.pow(3).is_one() && !w.is_one());
        assert!(FieldSpec::Prime(5).root_of_unity(3).is_err());
        let e = FieldSpec::Cyclotomic(5).root_of_unity(5).unwrap();
        assert!(e.pow(5).is_one());
    }

    #[test]
    fn display() {
        assert_eq!(cyc(3, &[-1, -1]).to_string(), "-1 - e");
        assert_eq!(cyc(5, &[0, 2, 0, -1]).to_string(), "2*e - e^3");
        assert_eq!(rat(-3, 4).to_string(), "-3/4");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field() -> impl Strategy<Value = FieldSpec> {
            prop_oneof![
                Just(FieldSpec::Rational),
                Just(FieldSpec::Prime(3)),
                Just(FieldSpec::Prime(7)),
                Just(FieldSpec::Cyclotomic(3)),
                Just(FieldSpec::Cyclotomic(5)),
            ]
        }

        fn element(f: FieldSpec) -> impl Strategy<Value = Scalar> {
            let len = match f {
                FieldSpec::Cyclotomic(q) => (q - 1) as usize,
                _ => 1,
            };
            proptest::collection::vec((-9i64..=9, 1i64..=4), len).prop_map(move |parts| {
                match f {
                    FieldSpec::Rational => rat(parts[0].0, parts[0].1),
                    FieldSpec::Prime(_) => f.from_int(parts[0].0),
                    FieldSpec::Cyclotomic(q) => Scalar::Cyclotomic {
                        q,
                        coeffs: parts
                            .iter()
                            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                            .collect(),
                    },
                }
            })
        }

        fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
            field().prop_flat_map(|f| (element(f), element(f), element(f)))
        }

        proptest! {
            #[test]
            fn field_axioms((x, y, z) in triple()) {
                prop_assert_eq!(&x + &y, &y + &x);
                prop_assert_eq!(&x * &y, &y * &x);
                prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert!((&x - &x).is_zero());
                if !x.is_zero() {
                    prop_assert!((&x * &x.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn epsilon_power_depends_on_residue(k in -40i64..40, q in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
                prop_assert_eq!(cyclotomic_power(q, k), cyclotomic_power(q, k + q as i64));
                let sum = (0..q as i64)
                    .map(|j| cyclotomic_power(q, k + j))
                    .fold(FieldSpec::Cyclotomic(q).zero(), |a, b| a + b);
                prop_assert!(sum.is_zero());
            }
        }
    }
}
