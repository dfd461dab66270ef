use std::fmt;

use super::{normalize, BracketExpr, FreeLieError, MultilinearPoly};
use crate::degree::Degree;
use crate::field::{FieldSpec, Scalar};

/// One instance of a generating identity, with concrete degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `[x1^r, x2^s]`.
    CommPair { r: i64, s: i64 },
    /// `α[x1^a,x2^b,x3^c] − β[x1^a,x3^c,x2^b]` with
    /// `α = (c−a)(b−c−a)`, `β = (b−a)(c−b−a)`.
    Triple { a: i64, b: i64, c: i64 },
    /// `x1^g` for a degree outside the support.
    SupportZero { g: Degree },
    /// `[x1^g, x2^h]` for a commuting pair of degrees.
    CommutingPair { g: Degree, h: Degree },
    /// `[x1^g, x3^k, x2^h] − λ[x1^g, x2^h, x3^k]`.
    SwapLambda { g: Degree, h: Degree, k: Degree, lambda: Scalar },
    /// `[x4, x1, x2, x3] − λ[x4, x3, x2, x1]`.
    PauliDeg4 { g: [Degree; 4], lambda: Scalar },
}

pub(crate) fn triple_coefficients(a: i64, b: i64, c: i64) -> (i64, i64) {
    ((c - a) * (b - c - a), (b - a) * (c - b - a))
}

fn lm(vars: &[(u32, Degree)]) -> BracketExpr {
    BracketExpr::left_normed(vars.iter().map(|&(i, d)| BracketExpr::var(i, d)).collect())
}

impl Generator {
    pub fn family(&self) -> &'static str {
        match self {
            Generator::CommPair { .. } => "comm_pair",
            Generator::Triple { .. } => "triple",
            Generator::SupportZero { .. } => "support_zero",
            Generator::CommutingPair { .. } => "commuting_pair",
            Generator::SwapLambda { .. } => "swap_lambda",
            Generator::PauliDeg4 { .. } => "pauli_deg4",
        }
    }

    /// Degrees of `x1, x2, …` in index order.
    pub fn degrees(&self) -> Vec<Degree> {
        match self {
            Generator::CommPair { r, s } => vec![Degree::Int(*r), Degree::Int(*s)],
            Generator::Triple { a, b, c } => vec![Degree::Int(*a), Degree::Int(*b), Degree::Int(*c)],
            Generator::SupportZero { g } => vec![*g],
            Generator::CommutingPair { g, h } => vec![*g, *h],
            Generator::SwapLambda { g, h, k, .. } => vec![*g, *h, *k],
            Generator::PauliDeg4 { g, .. } => g.to_vec(),
        }
    }

    /// The generator as a signed sum of bracket trees over `field`.
    pub fn terms(&self, field: FieldSpec) -> Vec<(Scalar, BracketExpr)> {
        let d = self.degrees();
        let v = |i: usize| (i as u32, d[i - 1]);
        match self {
            Generator::CommPair { .. } | Generator::CommutingPair { .. } => {
                vec![(field.one(), lm(&[v(1), v(2)]))]
            }
            Generator::Triple { a, b, c } => {
                let (alpha, beta) = triple_coefficients(*a, *b, *c);
                vec![
                    (field.from_int(alpha), lm(&[v(1), v(2), v(3)])),
                    (-field.from_int(beta), lm(&[v(1), v(3), v(2)])),
                ]
            }
            Generator::SupportZero { .. } => vec![(field.one(), lm(&[v(1)]))],
            Generator::SwapLambda { lambda, .. } => vec![
                (field.one(), lm(&[v(1), v(3), v(2)])),
                (-lambda.clone(), lm(&[v(1), v(2), v(3)])),
            ],
            Generator::PauliDeg4 { lambda, .. } => vec![
                (field.one(), lm(&[v(4), v(1), v(2), v(3)])),
                (-lambda.clone(), lm(&[v(4), v(3), v(2), v(1)])),
            ],
        }
    }

    /// Normalized polynomial; zero in the free algebra is reported as
    /// [`FreeLieError::Degenerate`].
    pub fn build(&self, field: FieldSpec) -> Result<MultilinearPoly, FreeLieError> {
        let p = normalize(&self.terms(field))?;
        if p.is_zero() {
            return Err(FreeLieError::Degenerate(self.to_string()));
        }
        Ok(p)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::CommPair { r, s } => write!(f, "comm_pair({r},{s})"),
            Generator::Triple { a, b, c } => write!(f, "triple({a},{b},{c})"),
            Generator::SupportZero { g } => write!(f, "support_zero({g})"),
            Generator::CommutingPair { g, h } => write!(f, "commuting_pair({g},{h})"),
            Generator::SwapLambda { g, h, k, lambda } => {
                write!(f, "swap_lambda({g},{h},{k};{lambda})")
            }
            Generator::PauliDeg4 { g, lambda } => {
                write!(f, "pauli_deg4({},{},{},{};{lambda})", g[0], g[1], g[2], g[3])
            }
        }
    }
}
