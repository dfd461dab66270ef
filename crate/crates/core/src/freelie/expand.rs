use std::collections::{BTreeMap, HashMap};

use super::{BracketExpr, FreeLieError, MultilinearPoly, Variable};
use crate::field::{FieldError, Scalar};

/// A word in the free associative algebra, by variable index.
pub type Word = Vec<u32>;

/// Expansion of `e` with every product written out, unmerged: a left-normed
/// monomial of length n gives exactly `2^(n-1)` signed words.
pub fn assoc_expand_raw(e: &BracketExpr) -> Vec<(i64, Word)> {
    match e {
        BracketExpr::Leaf(v) => vec![(1, vec![v.index])],
        BracketExpr::Node(children) => {
            let mut acc = assoc_expand_raw(&children[0]);
            for c in &children[1..] {
                let rhs = assoc_expand_raw(c);
                let mut next = Vec::with_capacity(2 * acc.len() * rhs.len());
                for (a, u) in &acc {
                    for (b, v) in &rhs {
                        next.push((a * b, [u.as_slice(), v].concat()));
                        next.push((-a * b, [v.as_slice(), u].concat()));
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

/// Merged expansion with zero coefficients dropped.
pub fn assoc_expand(e: &BracketExpr) -> BTreeMap<Word, i64> {
    let mut out = BTreeMap::new();
    for (w, c) in expand_merged(e) {
        if c != 0 {
            out.insert(w, c);
        }
    }
    out
}

fn expand_merged(e: &BracketExpr) -> HashMap<Word, i64> {
    match e {
        BracketExpr::Leaf(v) => HashMap::from([(vec![v.index], 1)]),
        BracketExpr::Node(children) => {
            let mut acc = expand_merged(&children[0]);
            for c in &children[1..] {
                let rhs = expand_merged(c);
                let mut next: HashMap<Word, i64> = HashMap::with_capacity(2 * acc.len() * rhs.len());
                for (u, a) in &acc {
                    for (v, b) in &rhs {
                        *next.entry([u.as_slice(), v].concat()).or_default() += a * b;
                        *next.entry([v.as_slice(), u].concat()).or_default() -= a * b;
                    }
                }
                next.retain(|_, c| *c != 0);
                acc = next;
            }
            acc
        }
    }
}

/// Integer `N_σ` coordinates of a multilinear tree: the coefficients of the
/// words starting with `pivot`, keyed by the remaining letters.
pub fn normalize_int(e: &BracketExpr, pivot: u32) -> Vec<(Word, i64)> {
    pivot_words(e, pivot)
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| (w[1..].to_vec(), c))
        .collect()
}

fn pivot_words(e: &BracketExpr, pivot: u32) -> HashMap<Word, i64> {
    let mut full = expand_merged(e);
    full.retain(|w, _| w[0] == pivot);
    full
}

/// Coordinates of `Σ c_i e_i` in the `N_σ` basis of `P_n^g`.
///
/// All trees must be multilinear over the same variables with the same
/// degrees, and all scalars over one field.
pub fn normalize(terms: &[(Scalar, BracketExpr)]) -> Result<MultilinearPoly, FreeLieError> {
    let (first_coef, first_expr) = terms.first().ok_or(FreeLieError::Empty)?;
    let field = first_coef.field();
    first_expr.check_multilinear()?;
    let mut context: Vec<Variable> = first_expr.variables();
    context.sort();
    for w in context.windows(2) {
        if w[0].index == w[1].index {
            return Err(FreeLieError::DegreeConflict(w[0].index));
        }
    }
    let pivot = context.last().unwrap().index;

    let mut coords: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (c, e) in terms {
        if c.field() != field {
            return Err(FieldError::Mismatch(field, c.field()).into());
        }
        e.check_multilinear()?;
        let mut vars = e.variables();
        vars.sort();
        if vars != context {
            let same_indices = vars.len() == context.len()
                && vars.iter().zip(&context).all(|(a, b)| a.index == b.index);
            return Err(match (same_indices, vars.iter().zip(&context).find(|(a, b)| a != b)) {
                (true, Some((a, _))) => FreeLieError::DegreeConflict(a.index),
                _ => FreeLieError::VariableSetMismatch,
            });
        }
        if c.is_zero() {
            continue;
        }
        for (sigma, k) in normalize_int(e, pivot) {
            let add = c * &field.from_int(k);
            let entry = coords.entry(sigma).or_insert_with(|| field.zero());
            *entry = &*entry + &add;
        }
    }
    Ok(MultilinearPoly::from_parts(field, context, coords))
}
