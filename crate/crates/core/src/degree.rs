//! Grading groups: `Z`, or `Z_q × Z_q` for the Pauli grading.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("mixed grading groups: {0} and {1}")]
    Mixed(Grading, Grading),
    #[error("cannot parse degree {0:?}")]
    Parse(String),
    #[error("residue modulus must be positive")]
    ZeroModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grading {
    Integer,
    /// `Z_q × Z_q`.
    Pauli(u64),
}

impl Grading {
    pub fn zero(&self) -> Degree {
        match *self {
            Grading::Integer => Degree::Int(0),
            Grading::Pauli(q) => Degree::Pauli { q, i: 0, j: 0 },
        }
    }

    /// Every element of a finite grading group, in lexicographic order.
    pub fn elements(&self) -> Option<Vec<Degree>> {
        match *self {
            Grading::Integer => None,
            Grading::Pauli(q) => Some(
                (0..q)
                    .flat_map(|i| (0..q).map(move |j| Degree::pauli(q, i as i64, j as i64)))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Integer => write!(f, "Z"),
            Grading::Pauli(q) => write!(f, "Z_{q} x Z_{q}"),
        }
    }
}

/// An element of the grading group, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Int(i64),
    Pauli { q: u64, i: u64, j: u64 },
}

impl Degree {
    pub fn pauli(q: u64, i: i64, j: i64) -> Degree {
        Degree::Pauli {
            q,
            i: i.rem_euclid(q as i64) as u64,
            j: j.rem_euclid(q as i64) as u64,
        }
    }

    pub fn grading(&self) -> Grading {
        match *self {
            Degree::Int(_) => Grading::Integer,
            Degree::Pauli { q, .. } => Grading::Pauli(q),
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match *self {
            Degree::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == self.grading().zero()
    }

    pub fn try_add(&self, other: &Degree) -> Result<Degree, DegreeError> {
        match (*self, *other) {
            (Degree::Int(a), Degree::Int(b)) => Ok(Degree::Int(a + b)),
            (Degree::Pauli { q, i, j }, Degree::Pauli { q: q2, i: r, j: s }) if q == q2 => {
                Ok(Degree::Pauli {
                    q,
                    i: (i + r) % q,
                    j: (j + s) % q,
                })
            }
            (a, b) => Err(DegreeError::Mixed(a.grading(), b.grading())),
        }
    }

    pub fn neg(&self) -> Degree {
        match *self {
            Degree::Int(a) => Degree::Int(-a),
            Degree::Pauli { q, i, j } => Degree::Pauli {
                q,
                i: (q - i) % q,
                j: (q - j) % q,
            },
        }
    }
}

/// Group sum of a list of degrees; the empty list sums to the identity of
/// `grading`.
pub fn degree_add(grading: Grading, ds: &[Degree]) -> Result<Degree, DegreeError> {
    ds.iter().try_fold(grading.zero(), |acc, d| {
        if d.grading() != grading {
            return Err(DegreeError::Mixed(grading, d.grading()));
        }
        acc.try_add(d)
    })
}

/// Representative of an integer degree in `[0, p-1]`.
pub fn degree_residue(d: i64, p: u64) -> Result<u64, DegreeError> {
    if p == 0 {
        return Err(DegreeError::ZeroModulus);
    }
    Ok(d.rem_euclid(p as i64) as u64)
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Int(n) => write!(f, "{n}"),
            Degree::Pauli { i, j, .. } => write!(f, "({i},{j})"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `"7"` / `"-3"` as an integer degree and `"(1,2)"` as a pair; pairs
/// need the modulus from context, so they come back unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawDegree {
    Int(i64),
    Pair(i64, i64),
}

impl RawDegree {
    pub fn into_degree(self, pauli_q: Option<u64>) -> Result<Degree, DegreeError> {
        match (self, pauli_q) {
            (RawDegree::Int(n), None) => Ok(Degree::Int(n)),
            (RawDegree::Pair(i, j), Some(q)) => Ok(Degree::pauli(q, i, j)),
            (RawDegree::Int(_), Some(q)) => Err(DegreeError::Mixed(Grading::Integer, Grading::Pauli(q))),
            (RawDegree::Pair(..), None) => Err(DegreeError::Parse(
                "pair degree needs a Pauli grading".into(),
            )),
        }
    }
}

impl FromStr for RawDegree {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || DegreeError::Parse(s.to_string());
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            Ok(RawDegree::Pair(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        } else {
            t.parse().map(RawDegree::Int).map_err(|_| bad())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn integer_sum() {
        let s = degree_add(Grading::Integer, &[Degree::Int(3), Degree::Int(-1)]).unwrap();
        assert_eq!(s, Degree::Int(2));
        assert_eq!(degree_add(Grading::Integer, &[]).unwrap(), Degree::Int(0));
    }

    #[test]
    fn pauli_sum() {
        let s = degree_add(Grading::Pauli(3), &[Degree::pauli(3, 2, 1), Degree::pauli(3, 2, 2)]).unwrap();
        assert_eq!(s, Degree::pauli(3, 1, 0));
    }

    #[test]
    fn mixed_is_an_error() {
        let r = degree_add(Grading::Integer, &[Degree::Int(1), Degree::pauli(2, 1, 0)]);
        assert!(matches!(r, Err(DegreeError::Mixed(..))));
        assert!(Degree::pauli(2, 1, 0).try_add(&Degree::pauli(3, 1, 0)).is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(degree_residue(7, 5).unwrap(), 2);
        assert_eq!(degree_residue(-1, 5).unwrap(), 4);
        assert_eq!(degree_residue(10, 5).unwrap(), 0);
    }

    #[test]
    fn parse_raw() {
        assert_eq!("-4".parse::<RawDegree>().unwrap(), RawDegree::Int(-4));
        assert_eq!("( 1, 2)".parse::<RawDegree>().unwrap(), RawDegree::Pair(1, 2));
        assert!("(1;2)".parse::<RawDegree>().is_err());
        assert_eq!(
            RawDegree::Pair(4, -1).into_degree(Some(3)).unwrap(),
            Degree::pauli(3, 1, 2)
        );
    }

    proptest! {
        #[test]
        fn addition_is_abelian(a in -50i64..50, b in -50i64..50, c in -50i64..50, q in prop_oneof![Just(2u64), Just(3), Just(5)]) {
            let (x, y, z) = (Degree::pauli(q, a, b), Degree::pauli(q, b, c), Degree::pauli(q, c, a));
            prop_assert_eq!(x.try_add(&y).unwrap(), y.try_add(&x).unwrap());
            prop_assert_eq!(
                x.try_add(&y).unwrap().try_add(&z).unwrap(),
                x.try_add(&y.try_add(&z).unwrap()).unwrap()
            );
            prop_assert!(x.try_add(&x.neg()).unwrap().is_zero());
        }

        #[test]
        fn residue_is_a_homomorphism(a in -1000i64..1000, b in -1000i64..1000, p in prop_oneof![Just(3u64), Just(5), Just(7)]) {
            let lhs = degree_residue(a + b, p).unwrap();
            let rhs = (degree_residue(a, p).unwrap() + degree_residue(b, p).unwrap()) % p;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
