//! Graded Lie algebras used as models: thin algebras given by a structure
//! function, and finite algebras given by a bracket table.

mod pauli;
mod structure;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::degree::{Degree, Grading};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::freelie::{BracketExpr, Monomial, MultilinearPoly, Variable};

pub use pauli::{build_pauli_matrix_oracle, compare_with_thin, pauli_matrices};
pub use structure::{AlgebraElement, StructureAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra {0:?}")]
    Unknown(String),
    #[error("{algebra} cannot be graded by {grading}")]
    WrongGrading { algebra: String, grading: Grading },
    #[error("Pauli grading needs a prime order, got {0}")]
    NotPrime(u64),
    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("bracket ({0}, {1}) leaves the degree {2} component")]
    NotGraded(usize, usize, Degree),
    #[error("matrix oracle disagrees with the structure function at {0}, {1}")]
    OracleMismatch(Degree, Degree),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThinKind {
    U1,
    W1,
    /// `sl_q` with the `Z_q × Z_q` Pauli grading.
    Pauli(u64),
}

impl fmt::Display for ThinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThinKind::U1 => write!(f, "u1"),
            ThinKind::W1 => write!(f, "w1"),
            ThinKind::Pauli(q) => write!(f, "pauli:{q}"),
        }
    }
}

impl FromStr for ThinKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "u1" => Ok(ThinKind::U1),
            "w1" => Ok(ThinKind::W1),
            t => t
                .strip_prefix("pauli:")
                .and_then(|q| q.parse().ok())
                .map(ThinKind::Pauli)
                .ok_or_else(|| AlgebraError::Unknown(s.to_string())),
        }
    }
}

/// A graded algebra whose nonzero homogeneous components are one-dimensional,
/// spanned by `d_g`, with `[d_g, d_h] = c(g,h) d_{g+h}`.
#[derive(Debug, Clone)]
pub struct ThinAlgebra {
    kind: ThinKind,
    field: FieldSpec,
    /// `ε^0, …, ε^(q-1)` for the Pauli grading.
    eps_powers: Vec<Scalar>,
}

impl ThinAlgebra {
    pub fn new(kind: ThinKind, field: FieldSpec) -> Result<Self, AlgebraError> {
        let eps_powers = match kind {
            ThinKind::Pauli(q) => {
                if !crate::field::is_prime(q) {
                    return Err(AlgebraError::NotPrime(q));
                }
                let eps = field.root_of_unity(q)?;
                (0..q).map(|k| eps.pow(k)).collect()
            }
            _ => Vec::new(),
        };
        Ok(ThinAlgebra {
            kind,
            field,
            eps_powers,
        })
    }

    pub fn u1(field: FieldSpec) -> Self {
        ThinAlgebra::new(ThinKind::U1, field).expect("u1 exists over every field")
    }

    pub fn w1(field: FieldSpec) -> Self {
        ThinAlgebra::new(ThinKind::W1, field).expect("w1 exists over every field")
    }

    pub fn pauli(q: u64, field: FieldSpec) -> Result<Self, AlgebraError> {
        ThinAlgebra::new(ThinKind::Pauli(q), field)
    }

    /// `sl_q` over the smallest field of characteristic 0 holding `ε`:
    /// `Q` for `q = 2`, `Q(ε)` otherwise.
    pub fn pauli_rational(q: u64) -> Result<Self, AlgebraError> {
        let field = if q == 2 {
            FieldSpec::Rational
        } else {
            FieldSpec::cyclotomic(q)?
        };
        ThinAlgebra::pauli(q, field)
    }

    /// Like [`ThinAlgebra::new`], also checking the requested grading group.
    pub fn with_grading(kind: ThinKind, grading: Grading, field: FieldSpec) -> Result<Self, AlgebraError> {
        let a = ThinAlgebra::new(kind, field)?;
        if a.grading() != grading {
            return Err(AlgebraError::WrongGrading {
                algebra: kind.to_string(),
                grading,
            });
        }
        Ok(a)
    }

    pub fn kind(&self) -> ThinKind {
        self.kind
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn grading(&self) -> Grading {
        match self.kind {
            ThinKind::Pauli(q) => Grading::Pauli(q),
            _ => Grading::Integer,
        }
    }

    pub fn in_support(&self, g: &Degree) -> bool {
        match (self.kind, *g) {
            (ThinKind::U1, Degree::Int(_)) => true,
            (ThinKind::W1, Degree::Int(n)) => n >= -1,
            (ThinKind::Pauli(q), Degree::Pauli { q: q2, i, j }) => q == q2 && (i, j) != (0, 0),
            _ => false,
        }
    }

    /// The whole support when it is finite.
    pub fn finite_support(&self) -> Option<Vec<Degree>> {
        self.grading()
            .elements()
            .map(|all| all.into_iter().filter(|g| self.in_support(g)).collect())
    }

    /// `c(g,h)`; zero when any of `g`, `h`, `g+h` is outside the support.
    pub fn structure(&self, g: &Degree, h: &Degree) -> Scalar {
        let Ok(sum) = g.try_add(h) else {
            return self.field.zero();
        };
        if !(self.in_support(g) && self.in_support(h) && self.in_support(&sum)) {
            return self.field.zero();
        }
        match (*g, *h) {
            (Degree::Int(i), Degree::Int(j)) => self.field.from_int(j - i),
            (Degree::Pauli { q, i, j }, Degree::Pauli { i: r, j: s, .. }) => {
                let e = |k: u64| &self.eps_powers[((q - k % q) % q) as usize];
                e(r * j) - e(i * s)
            }
            _ => unreachable!("gradings already matched"),
        }
    }

    /// Value of a left-normed monomial at the canonical basis vectors, with its degree.
    pub fn eval_monomial(&self, m: &Monomial) -> (Scalar, Degree) {
        let seq = m.degree_sequence();
        let mut deg = seq[0];
        let mut value = if self.in_support(&deg) {
            self.field.one()
        } else {
            self.field.zero()
        };
        for h in &seq[1..] {
            if value.is_zero() {
                deg = deg.try_add(h).unwrap_or(deg);
                continue;
            }
            value = &value * &self.structure(&deg, h);
            deg = deg.try_add(h).unwrap_or(deg);
        }
        (value, deg)
    }

    pub fn eval_poly(&self, p: &MultilinearPoly) -> Scalar {
        p.terms().fold(self.field.zero(), |acc, (sigma, c)| {
            let (v, _) = self.eval_monomial(&p.basis_monomial(sigma));
            &acc + &(c * &v)
        })
    }

    pub fn is_identity(&self, p: &MultilinearPoly) -> bool {
        self.eval_poly(p).is_zero()
    }

    /// Direct recursive evaluation of a bracket tree at the canonical basis.
    pub fn eval_expr(&self, e: &BracketExpr) -> (Scalar, Degree) {
        match e {
            BracketExpr::Leaf(v) => {
                let val = if self.in_support(&v.degree) {
                    self.field.one()
                } else {
                    self.field.zero()
                };
                (val, v.degree)
            }
            BracketExpr::Node(children) => {
                let mut acc = self.eval_expr(&children[0]);
                for c in &children[1..] {
                    let (v, h) = self.eval_expr(c);
                    let coef = self.structure(&acc.1, &h);
                    let deg = acc.1.try_add(&h).unwrap_or(acc.1);
                    acc = (&(&acc.0 * &v) * &coef, deg);
                }
                acc
            }
        }
    }

    /// `λ` with `[x1^g, x3^k, x2^h] ≡ λ[x1^g, x2^h, x3^k]`, when the right-hand
    /// monomial is not an identity.
    pub fn derive_swap_lambda(&self, g: Degree, h: Degree, k: Degree) -> Option<Scalar> {
        let x = |i: u32, d: Degree| Variable::new(i, d);
        let m123 = Monomial::new(vec![x(1, g), x(2, h), x(3, k)]).unwrap();
        let m132 = Monomial::new(vec![x(1, g), x(3, k), x(2, h)]).unwrap();
        let (den, _) = self.eval_monomial(&m123);
        if den.is_zero() {
            return None;
        }
        let (num, _) = self.eval_monomial(&m132);
        Some(num.try_div(&den).expect("nonzero denominator"))
    }

    /// `λ` with `[x4,x1,x2,x3] ≡ λ[x4,x3,x2,x1]`, when both monomials are nonzero.
    pub fn derive_pauli_lambda(&self, g: [Degree; 4]) -> Option<Scalar> {
        let x = |i: usize| Variable::new(i as u32, g[i - 1]);
        let m1 = Monomial::new(vec![x(4), x(1), x(2), x(3)]).unwrap();
        let m2 = Monomial::new(vec![x(4), x(3), x(2), x(1)]).unwrap();
        let (num, _) = self.eval_monomial(&m1);
        let (den, _) = self.eval_monomial(&m2);
        if num.is_zero() || den.is_zero() {
            return None;
        }
        Some(num.try_div(&den).expect("nonzero denominator"))
    }
}

impl fmt::Display for ThinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.kind, self.field)
    }
}
