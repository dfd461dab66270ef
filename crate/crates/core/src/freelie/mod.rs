//! Multilinear components `P_n^g` of the free graded Lie algebra.
//!
//! Polynomials are stored over the basis of left-normed commutators
//! `N_σ = [x_pivot, x_σ(1), …, x_σ(n-1)]`, where the pivot is the variable of
//! largest index. Coordinates are found by expanding into the free
//! associative algebra: `N_σ` is the only basis element whose expansion
//! contains the word `x_pivot x_σ(1) ⋯ x_σ(n-1)`, and it contains it with
//! coefficient one.

mod expand;
mod generators;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::degree::{Degree, DegreeError};
use crate::field::{FieldError, FieldSpec, Scalar};

pub use expand::{assoc_expand, assoc_expand_raw, normalize, normalize_int, Word};
pub use generators::Generator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeLieError {
    #[error("no terms to normalize")]
    Empty,
    #[error("variable x{0} occurs more than once")]
    RepeatedVariable(u32),
    #[error("terms are over different variable sets")]
    VariableSetMismatch,
    #[error("variable x{0} is used with two different degrees")]
    DegreeConflict(u32),
    #[error("polynomials live in different spaces")]
    ContextMismatch,
    #[error("degenerate generator {0}: identically zero in the free algebra")]
    Degenerate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub index: u32,
    pub degree: Degree,
}

impl Variable {
    pub fn new(index: u32, degree: Degree) -> Self {
        Variable { index, degree }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.index, self.degree)
    }
}

/// A bracket tree. A node with k >= 3 children is the left-normed bracket
/// `[c1, …, ck]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BracketExpr {
    Leaf(Variable),
    Node(Vec<BracketExpr>),
}

impl BracketExpr {
    pub fn var(index: u32, degree: Degree) -> Self {
        BracketExpr::Leaf(Variable::new(index, degree))
    }

    pub fn bracket(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Node(vec![a, b])
    }

    /// `[items…]`; a single item is returned unchanged.
    pub fn left_normed(mut items: Vec<BracketExpr>) -> Self {
        assert!(!items.is_empty(), "left-normed bracket of nothing");
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            BracketExpr::Node(items)
        }
    }

    /// Variables in order of appearance.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Variable>) {
        match self {
            BracketExpr::Leaf(v) => out.push(*v),
            BracketExpr::Node(children) => children.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    pub fn degree(&self) -> Result<Degree, DegreeError> {
        let vars = self.variables();
        let grading = vars[0].degree.grading();
        crate::degree::degree_add(grading, &vars.iter().map(|v| v.degree).collect::<Vec<_>>())
    }

    /// Replaces each leaf `x_i` that has an entry in `images` by that tree.
    pub fn substitute(&self, images: &HashMap<u32, BracketExpr>) -> BracketExpr {
        match self {
            BracketExpr::Leaf(v) => images.get(&v.index).cloned().unwrap_or_else(|| self.clone()),
            BracketExpr::Node(children) => {
                BracketExpr::Node(children.iter().map(|c| c.substitute(images)).collect())
            }
        }
    }

    pub fn check_multilinear(&self) -> Result<(), FreeLieError> {
        let mut seen = HashMap::new();
        for v in self.variables() {
            if seen.insert(v.index, v.degree).is_some() {
                return Err(FreeLieError::RepeatedVariable(v.index));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Leaf(v) => write!(f, "{v}"),
            BracketExpr::Node(children) => write!(f, "[{}]", children.iter().join(", ")),
        }
    }
}

/// A left-normed commutator of distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: Vec<Variable>,
}

impl Monomial {
    pub fn new(vars: Vec<Variable>) -> Result<Self, FreeLieError> {
        assert!(!vars.is_empty(), "monomial needs at least one variable");
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if !seen.insert(v.index) {
                return Err(FreeLieError::RepeatedVariable(v.index));
            }
        }
        Ok(Monomial { vars })
    }

    /// Monomial `[x1:d1, …, xn:dn]`.
    pub fn from_degrees(degrees: &[Degree]) -> Self {
        Monomial {
            vars: degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| Variable::new(i as u32 + 1, d))
                .collect(),
        }
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn degree_sequence(&self) -> Vec<Degree> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn to_expr(&self) -> BracketExpr {
        BracketExpr::left_normed(self.vars.iter().map(|&v| BracketExpr::Leaf(v)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.len() == 1 {
            write!(f, "{}", self.vars[0])
        } else {
            write!(f, "[{}]", self.vars.iter().join(", "))
        }
    }
}

/// An element of `P_n^g` in `N_σ` coordinates. σ is keyed by the explicit
/// sequence of non-pivot variable indices; missing keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    field: FieldSpec,
    context: Vec<Variable>,
    coords: BTreeMap<Vec<u32>, Scalar>,
}

impl MultilinearPoly {
    /// The zero polynomial over `context` (any order; it is sorted by index).
    pub fn zero(field: FieldSpec, mut context: Vec<Variable>) -> Self {
        context.sort();
        MultilinearPoly {
            field,
            context,
            coords: BTreeMap::new(),
        }
    }

    pub(crate) fn from_parts(
        field: FieldSpec,
        context: Vec<Variable>,
        coords: BTreeMap<Vec<u32>, Scalar>,
    ) -> Self {
        let coords = coords.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultilinearPoly {
            field,
            context,
            coords,
        }
    }

    /// The single basis monomial `N_σ`.
    pub fn basis_element(field: FieldSpec, context: Vec<Variable>, sigma: Vec<u32>) -> Self {
        let mut p = MultilinearPoly::zero(field, context);
        p.coords.insert(sigma, field.one());
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn context(&self) -> &[Variable] {
        &self.context
    }

    pub fn arity(&self) -> usize {
        self.context.len()
    }

    pub fn pivot(&self) -> Variable {
        *self.context.last().expect("non-empty context")
    }

    pub fn coord(&self, sigma: &[u32]) -> Scalar {
        self.coords
            .get(sigma)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero coordinates in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// `N_σ` as a monomial.
    pub fn basis_monomial(&self, sigma: &[u32]) -> Monomial {
        let by_index: HashMap<u32, Variable> = self.context.iter().map(|v| (v.index, *v)).collect();
        let mut vars = vec![self.pivot()];
        vars.extend(sigma.iter().map(|i| by_index[i]));
        Monomial { vars }
    }

    /// Expresses the polynomial as a sum of scaled basis monomials.
    pub fn to_terms(&self) -> Vec<(Scalar, BracketExpr)> {
        self.coords
            .iter()
            .map(|(sigma, c)| (c.clone(), self.basis_monomial(sigma).to_expr()))
            .collect()
    }

    fn same_space(&self, other: &Self) -> Result<(), FreeLieError> {
        if self.context != other.context {
            return Err(FreeLieError::ContextMismatch);
        }
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field, other.field).into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FreeLieError> {
        self.same_space(other)?;
        let mut coords = self.coords.clone();
        for (k, v) in &other.coords {
            let entry = coords.entry(k.clone()).or_insert_with(|| self.field.zero());
            *entry = &*entry + v;
        }
        Ok(MultilinearPoly::from_parts(self.field, self.context.clone(), coords))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FreeLieError> {
        self.add(&other.scale(&self.field.from_int(-1))?)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self, FreeLieError> {
        if s.field() != self.field {
            return Err(FieldError::Mismatch(self.field, s.field()).into());
        }
        let coords = self.coords.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        Ok(MultilinearPoly::from_parts(self.field, self.context.clone(), coords))
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = self
            .coords
            .iter()
            .map(|(sigma, c)| format!("({c})*{}", self.basis_monomial(sigma)));
        write!(f, "{}", parts.format(" + "))
    }
}

/// The ambient space `P_n^g` with its `N_σ` basis in lexicographic order of σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    vars: Vec<Variable>,
    basis: Vec<Vec<u32>>,
    position: HashMap<Vec<u32>, usize>,
}

impl Ambient {
    pub fn new(mut vars: Vec<Variable>) -> Result<Self, FreeLieError> {
        assert!(!vars.is_empty(), "ambient space needs variables");
        vars.sort();
        if let Some(w) = vars.windows(2).find(|w| w[0].index == w[1].index) {
            return Err(FreeLieError::RepeatedVariable(w[0].index));
        }
        let others: Vec<u32> = vars[..vars.len() - 1].iter().map(|v| v.index).collect();
        let basis: Vec<Vec<u32>> = others.iter().copied().permutations(others.len()).collect();
        let position = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Ambient {
            vars,
            basis,
            position,
        })
    }

    /// `P_n^g` for variables `x1..xn` with the given degrees.
    pub fn for_degrees(degrees: &[Degree]) -> Self {
        let vars = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| Variable::new(i as u32 + 1, d))
            .collect();
        Ambient::new(vars).expect("indices are distinct")
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn position(&self, sigma: &[u32]) -> Option<usize> {
        self.position.get(sigma).copied()
    }

    pub fn basis_monomial(&self, i: usize) -> Monomial {
        let mut vars = vec![*self.vars.last().unwrap()];
        let by_index: HashMap<u32, Variable> = self.vars.iter().map(|v| (v.index, *v)).collect();
        vars.extend(self.basis[i].iter().map(|j| by_index[j]));
        Monomial { vars }
    }

    pub fn to_dense(&self, p: &MultilinearPoly) -> Result<Vec<Scalar>, FreeLieError> {
        if p.context != self.vars {
            return Err(FreeLieError::ContextMismatch);
        }
        let mut out = vec![p.field.zero(); self.dim()];
        for (sigma, c) in &p.coords {
            out[self.position[sigma]] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(&self, field: FieldSpec, v: &[Scalar]) -> MultilinearPoly {
        assert_eq!(v.len(), self.dim());
        let coords = self
            .basis
            .iter()
            .zip(v)
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect();
        MultilinearPoly::from_parts(field, self.vars.clone(), coords)
    }

    /// Integer `N_σ` coordinates of one bracket tree over exactly these
    /// variables, as a dense vector.
    pub fn dense_int(&self, e: &BracketExpr) -> Vec<i64> {
        let pivot = self.vars.last().unwrap().index;
        let mut out = vec![0i64; self.dim()];
        for (word, c) in normalize_int(e, pivot) {
            out[self.position[&word]] += c;
        }
        out
    }
}
