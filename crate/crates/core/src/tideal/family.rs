use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebras::{ThinAlgebra, ThinKind};
use crate::degree::Degree;
use crate::freelie::Generator;

/// A family of generating identities, instantiated lazily at concrete degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `[x1^r, x2^s]` for `r = s` (char 0) or `r ≡ s mod p`.
    CommPair,
    /// `[x1^r, x2^s]` only for the listed `(r, s)`, in either order.
    CommPairAt(Vec<(i64, i64)>),
    /// `α[x1^a,x2^b,x3^c] − β[x1^a,x3^c,x2^b]` for all integer degrees.
    Triple,
    /// `x^c` for `c ≤ max`.
    SupportZero { max: i64 },
    /// `x^g` for `g` outside the support of the algebra.
    OutsideSupport,
    /// `[x1^g, x2^h]` when `[L_g, L_h] = 0` and `g + h` is in the support.
    CommutingPair,
    /// `[x1^g,x3^k,x2^h] − λ[x1^g,x2^h,x3^k]` with `λ` read off the algebra.
    SwapLambda,
    /// `[x4,x1,x2,x3] − λ[x4,x3,x2,x1]` with `λ` read off the algebra.
    PauliDeg4,
}

impl Family {
    pub fn arity(&self) -> usize {
        match self {
            Family::SupportZero { .. } | Family::OutsideSupport => 1,
            Family::CommPair | Family::CommPairAt(_) | Family::CommutingPair => 2,
            Family::Triple | Family::SwapLambda => 3,
            Family::PauliDeg4 => 4,
        }
    }

    /// The generator of this family at the given variable degrees, if the
    /// family has a member there.
    pub fn instance(&self, d: &[Degree], a: &ThinAlgebra) -> Option<Generator> {
        debug_assert_eq!(d.len(), self.arity());
        let ints = || d.iter().map(Degree::as_int).collect::<Option<Vec<i64>>>();
        let p = a.field().characteristic() as i64;
        match self {
            Family::CommPair => {
                let v = ints()?;
                let (r, s) = (v[0], v[1]);
                let related = if p == 0 { r == s } else { (r - s) % p == 0 };
                related.then_some(Generator::CommPair { r, s })
            }
            Family::CommPairAt(list) => {
                let v = ints()?;
                let (r, s) = (v[0], v[1]);
                list.iter()
                    .any(|&(u, w)| (u, w) == (r, s) || (w, u) == (r, s))
                    .then_some(Generator::CommPair { r, s })
            }
            Family::Triple => {
                let v = ints()?;
                Some(Generator::Triple { a: v[0], b: v[1], c: v[2] })
            }
            Family::SupportZero { max } => {
                let c = d[0].as_int()?;
                (c <= *max).then_some(Generator::SupportZero { g: d[0] })
            }
            Family::OutsideSupport => (!a.in_support(&d[0])).then_some(Generator::SupportZero { g: d[0] }),
            Family::CommutingPair => {
                let sum = d[0].try_add(&d[1]).ok()?;
                (a.in_support(&sum) && a.structure(&d[0], &d[1]).is_zero())
                    .then_some(Generator::CommutingPair { g: d[0], h: d[1] })
            }
            Family::SwapLambda => {
                let lambda = a.derive_swap_lambda(d[0], d[1], d[2])?;
                Some(Generator::SwapLambda { g: d[0], h: d[1], k: d[2], lambda })
            }
            Family::PauliDeg4 => {
                let lambda = a.derive_pauli_lambda([d[0], d[1], d[2], d[3]])?;
                Some(Generator::PauliDeg4 { g: [d[0], d[1], d[2], d[3]], lambda })
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CommPair => write!(f, "comm_pair"),
            Family::CommPairAt(list) => {
                let items: Vec<String> = list.iter().map(|(r, s)| format!("({r},{s})")).collect();
                write!(f, "comm_pair_at[{}]", items.join(","))
            }
            Family::Triple => write!(f, "triple"),
            Family::SupportZero { max } => write!(f, "support_zero(c<={max})"),
            Family::OutsideSupport => write!(f, "outside_support"),
            Family::CommutingPair => write!(f, "commuting_pair"),
            Family::SwapLambda => write!(f, "swap_lambda"),
            Family::PauliDeg4 => write!(f, "pauli_deg4"),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Named generator sets.
pub struct FamilySet;

impl FamilySet {
    /// `[x^r, x^s]` (related degrees) and the triple family.
    pub fn u1() -> Vec<Family> {
        vec![Family::CommPair, Family::Triple]
    }

    /// The `U_1` families plus `x^c`, `c ≤ −2`.
    pub fn w1() -> Vec<Family> {
        vec![Family::CommPair, Family::Triple, Family::SupportZero { max: -2 }]
    }

    pub fn pauli() -> Vec<Family> {
        vec![
            Family::OutsideSupport,
            Family::CommutingPair,
            Family::SwapLambda,
            Family::PauliDeg4,
        ]
    }

    /// The degree-two generators alone.
    pub fn monomial_only() -> Vec<Family> {
        vec![Family::CommPair]
    }

    /// The default basis for an algebra.
    pub fn for_algebra(a: &ThinAlgebra) -> Vec<Family> {
        match a.kind() {
            ThinKind::U1 => FamilySet::u1(),
            ThinKind::W1 => FamilySet::w1(),
            ThinKind::Pauli(_) => FamilySet::pauli(),
        }
    }
}
