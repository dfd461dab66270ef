//! Consequences of generating identities inside `P_n^g`.
//!
//! The consequence span of a family of generators is built from every
//! multilinear specialization: split a subset of the variables into ordered
//! blocks, substitute a basis monomial of each block for the generator's
//! variables, then bracket on the left-over variables in every order. The
//! identities of a thin algebra inside `P_n^g` are the kernel of the single
//! functional `N_σ ↦ eval(N_σ)`.

mod family;
mod verify;

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use thiserror::Error;

use crate::algebras::ThinAlgebra;
use crate::degree::Degree;
use crate::field::Scalar;
use crate::freelie::{Ambient, BracketExpr, FreeLieError, MultilinearPoly, Variable};
use crate::linalg::{dot, nullspace, Subspace};

pub use family::{Family, FamilySet};
pub use verify::{
    sweep, verify_tuple, SweepConfig, TupleVerdict, VerificationReport, VerifyOptions, FLAG_SUPPORT_AT_MINUS_TWO,
};

/// Largest arity handled without an explicit opt-in.
pub const DEFAULT_MAX_N: usize = 5;
/// Largest arity handled at all.
pub const HARD_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TidealError {
    #[error("n = {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("empty tuple")]
    Empty,
    #[error("polynomial is not over the variables of this space")]
    AmbientMismatch,
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
}

pub(crate) fn check_bound(n: usize, bound: usize) -> Result<(), TidealError> {
    if n == 0 {
        return Err(TidealError::Empty);
    }
    let bound = bound.min(HARD_MAX_N);
    if n > bound {
        return Err(TidealError::BoundExceeded { n, bound });
    }
    Ok(())
}

/// The values `eval(N_σ)` in basis order.
pub fn evaluation_functional(amb: &Ambient, a: &ThinAlgebra) -> Vec<Scalar> {
    (0..amb.dim()).map(|i| a.eval_monomial(&amb.basis_monomial(i)).0).collect()
}

/// Identities of `a` inside `P_n^g`.
pub fn identity_kernel(g: &[Degree], a: &ThinAlgebra, bound: usize) -> Result<Subspace, TidealError> {
    check_bound(g.len(), bound)?;
    let amb = Ambient::for_degrees(g);
    Ok(kernel_of(&amb, a))
}

pub(crate) fn kernel_of(amb: &Ambient, a: &ThinAlgebra) -> Subspace {
    let phi = evaluation_functional(amb, a);
    let basis = nullspace(a.field(), &[phi], amb.dim());
    Subspace::spanned_by(a.field(), amb.dim(), &basis)
}

/// What building a consequence span produced.
#[derive(Debug, Clone)]
pub struct SpanOutcome {
    pub span: Subspace,
    pub rows_generated: usize,
    /// Rows that did not vanish on the algebra, with the instance that produced them.
    pub unsound: Vec<String>,
    /// Generator instances that were specialized at least once.
    pub instances: BTreeSet<String>,
    /// Whether enumeration ended early because the target rank was reached.
    pub stopped_early: bool,
}

/// A named generator instance with its terms.
type Instance = (String, Vec<(Scalar, BracketExpr)>);

/// Basis monomials `N_τ` on the variables of one block.
fn block_monomials(block: &[Variable]) -> Vec<BracketExpr> {
    let (pivot, rest) = block.split_last().expect("blocks are nonempty");
    rest.iter()
        .permutations(rest.len())
        .map(|perm| {
            let mut items = vec![BracketExpr::Leaf(*pivot)];
            items.extend(perm.into_iter().map(|v| BracketExpr::Leaf(*v)));
            BracketExpr::left_normed(items)
        })
        .collect()
}

/// Assignments of each variable to "outside" (`None`) or one of `k` blocks,
/// with every block used.
fn block_assignments(n: usize, k: usize) -> impl Iterator<Item = Vec<Option<usize>>> {
    (0..n)
        .map(|_| 0..=k)
        .multi_cartesian_product()
        .map(|codes| codes.into_iter().map(|c| c.checked_sub(1)).collect::<Vec<_>>())
        .filter(move |a| (0..k).all(|b| a.contains(&Some(b))))
}

/// Consequence span of `families` inside `P_n^g` with rows checked against
/// `a`. With `target_rank`, enumeration stops as soon as the span reaches it.
pub fn consequence_span(
    g: &[Degree],
    a: &ThinAlgebra,
    families: &[Family],
    target_rank: Option<usize>,
) -> SpanOutcome {
    let amb = Ambient::for_degrees(g);
    let field = a.field();
    let phi = evaluation_functional(&amb, a);
    let vars = amb.vars().to_vec();
    let mut out = SpanOutcome {
        span: Subspace::new(field, amb.dim()),
        rows_generated: 0,
        unsound: Vec::new(),
        instances: BTreeSet::new(),
        stopped_early: false,
    };
    if target_rank == Some(0) {
        out.stopped_early = true;
        return out;
    }

    for family in families {
        let k = family.arity();
        if k > vars.len() {
            continue;
        }
        let mut cache: HashMap<Vec<Degree>, Option<Instance>> = HashMap::new();
        for assignment in block_assignments(vars.len(), k) {
            let mut blocks: Vec<Vec<Variable>> = vec![Vec::new(); k];
            let mut outside = Vec::new();
            for (v, slot) in vars.iter().zip(&assignment) {
                match slot {
                    Some(b) => blocks[*b].push(*v),
                    None => outside.push(*v),
                }
            }
            let block_degrees: Vec<Degree> = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|v| v.degree)
                        .reduce(|x, y| x.try_add(&y).expect("one grading"))
                        .unwrap()
                })
                .collect();
            let instance = cache
                .entry(block_degrees.clone())
                .or_insert_with(|| {
                    let gen = family.instance(&block_degrees, a)?;
                    gen.build(field).ok()?;
                    Some((gen.to_string(), gen.terms(field)))
                })
                .clone();
            let Some((name, terms)) = instance else {
                continue;
            };
            out.instances.insert(name.clone());

            let choices: Vec<Vec<BracketExpr>> = blocks.iter().map(|b| block_monomials(b)).collect();
            for pick in choices.into_iter().multi_cartesian_product() {
                let images: HashMap<u32, BracketExpr> =
                    pick.into_iter().enumerate().map(|(i, e)| (i as u32 + 1, e)).collect();
                let inner: Vec<(Scalar, BracketExpr)> =
                    terms.iter().map(|(c, t)| (c.clone(), t.substitute(&images))).collect();
                for order in outside.iter().permutations(outside.len()) {
                    let mut row = vec![field.zero(); amb.dim()];
                    for (c, t) in &inner {
                        let mut items = vec![t.clone()];
                        items.extend(order.iter().map(|v| BracketExpr::Leaf(**v)));
                        let ints = amb.dense_int(&BracketExpr::left_normed(items));
                        for (r, x) in row.iter_mut().zip(ints) {
                            if x != 0 {
                                *r = &*r + &(c * &field.from_int(x));
                            }
                        }
                    }
                    out.rows_generated += 1;
                    if !dot(&phi, &row).is_zero() {
                        out.unsound.push(name.clone());
                    }
                    out.span.insert(&row);
                    if target_rank.is_some_and(|t| out.span.rank() >= t) {
                        out.stopped_early = true;
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Whether `p` lies in a subspace of the ambient space `amb`.
pub fn is_member(p: &MultilinearPoly, amb: &Ambient, s: &Subspace) -> Result<bool, TidealError> {
    let v = amb.to_dense(p).map_err(|_| TidealError::AmbientMismatch)?;
    if v.len() != s.ambient_dim() {
        return Err(TidealError::AmbientMismatch);
    }
    Ok(s.contains(&v))
}

#[cfg(test)]
mod tests;
