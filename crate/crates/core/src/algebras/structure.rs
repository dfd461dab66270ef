use std::collections::HashMap;

use itertools::Itertools;

use super::AlgebraError;
use crate::degree::Degree;
use crate::field::{FieldSpec, Scalar};
use crate::freelie::{BracketExpr, MultilinearPoly};
use crate::linalg::axpy;

/// `[b_i, b_j] = Σ c_k b_k` as `(i, j, [(k, c_k)])`.
pub type BracketRule = (usize, usize, Vec<(usize, Scalar)>);

/// A finite-dimensional graded Lie algebra with a homogeneous basis and a
/// dense bracket table.
#[derive(Debug, Clone)]
pub struct StructureAlgebra {
    name: String,
    field: FieldSpec,
    labels: Vec<String>,
    degrees: Vec<Degree>,
    /// `table[i][j]` holds the coordinates of `[b_i, b_j]`.
    table: Vec<Vec<Vec<Scalar>>>,
}

/// A vector in a [`StructureAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

impl StructureAlgebra {
    /// Builds the table from the listed brackets `[b_i, b_j] = Σ c_k b_k`
    /// (`i < j` suffices); the rest follows by antisymmetry, and unlisted
    /// pairs bracket to zero. The result is checked for antisymmetry, Jacobi
    /// and the grading.
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        basis: Vec<(String, Degree)>,
        brackets: &[BracketRule],
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let mut table = vec![vec![vec![field.zero(); n]; n]; n];
        for (i, j, terms) in brackets {
            for (k, c) in terms {
                table[*i][*j][*k] = &table[*i][*j][*k] + c;
                table[*j][*i][*k] = &table[*j][*i][*k] - c;
            }
        }
        let (labels, degrees) = basis.into_iter().unzip();
        let a = StructureAlgebra {
            name: name.into(),
            field,
            labels,
            degrees,
            table,
        };
        a.check()?;
        Ok(a)
    }

    /// Builds from a full table without filling in antisymmetry.
    pub fn from_table(
        name: impl Into<String>,
        field: FieldSpec,
        basis: Vec<(String, Degree)>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, AlgebraError> {
        let (labels, degrees) = basis.into_iter().unzip();
        let a = StructureAlgebra {
            name: name.into(),
            field,
            labels,
            degrees,
            table,
        };
        a.check()?;
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement {
            coords: crate::linalg::unit(self.field, self.dim(), i),
        }
    }

    /// Basis indices of the homogeneous component of degree `g`.
    pub fn component(&self, g: &Degree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == *g).collect()
    }

    /// Degrees with a nonzero component, without repetition, in first-seen order.
    pub fn support(&self) -> Vec<Degree> {
        self.degrees.iter().copied().unique().collect()
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                axpy(&mut out, &(a * b), &self.table[i][j]);
            }
        }
        AlgebraElement { coords: out }
    }

    /// Smallest `c` with `L^(c+1) = 0` in the lower central series, if the
    /// algebra is nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let n = self.dim();
        let mut term = crate::linalg::Subspace::full(self.field, n);
        for class in 0..=n {
            if term.rank() == 0 {
                return Some(class);
            }
            let mut next = crate::linalg::Subspace::new(self.field, n);
            for row in term.rows() {
                let x = AlgebraElement { coords: row.clone() };
                for j in 0..n {
                    next.insert(&self.bracket(&x, &self.basis_element(j)).coords);
                }
            }
            if next.rank() == term.rank() {
                return None;
            }
            term = next;
        }
        None
    }

    pub fn check(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for (i, j) in (0..n).cartesian_product(0..n) {
            let sum: Vec<Scalar> = self.table[i][j]
                .iter()
                .zip(&self.table[j][i])
                .map(|(a, b)| a + b)
                .collect();
            if sum.iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::NotAntisymmetric(i, j));
            }
            let target = self.degrees[i].try_add(&self.degrees[j]).ok();
            for (k, c) in self.table[i][j].iter().enumerate() {
                if !c.is_zero() && Some(self.degrees[k]) != target {
                    return Err(AlgebraError::NotGraded(i, j, self.degrees[k]));
                }
            }
        }
        for (i, j, k) in (0..n).tuple_combinations() {
            let e = |t| self.basis_element(t);
            let jac = [
                self.bracket(&self.bracket(&e(i), &e(j)), &e(k)),
                self.bracket(&self.bracket(&e(j), &e(k)), &e(i)),
                self.bracket(&self.bracket(&e(k), &e(i)), &e(j)),
            ];
            let mut total = vec![self.field.zero(); n];
            for t in &jac {
                axpy(&mut total, &self.field.one(), &t.coords);
            }
            if total.iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::JacobiFails(i, j, k));
            }
        }
        Ok(())
    }

    /// Value of a bracket tree with variable `x_i` sent to basis element
    /// `assignment[i]`.
    pub fn eval_expr(&self, e: &BracketExpr, assignment: &HashMap<u32, usize>) -> AlgebraElement {
        match e {
            BracketExpr::Leaf(v) => self.basis_element(assignment[&v.index]),
            BracketExpr::Node(children) => {
                let mut acc = self.eval_expr(&children[0], assignment);
                for c in &children[1..] {
                    acc = self.bracket(&acc, &self.eval_expr(c, assignment));
                }
                acc
            }
        }
    }

    pub fn eval_poly(&self, p: &MultilinearPoly, assignment: &HashMap<u32, usize>) -> AlgebraElement {
        let mut out = vec![self.field.zero(); self.dim()];
        for (sigma, c) in p.terms() {
            let v = self.eval_expr(&p.basis_monomial(sigma).to_expr(), assignment);
            axpy(&mut out, c, &v.coords);
        }
        AlgebraElement { coords: out }
    }

    /// A substitution of homogeneous basis elements on which `p` does not
    /// vanish, if there is one.
    pub fn witness(&self, p: &MultilinearPoly) -> Option<HashMap<u32, usize>> {
        let choices: Vec<Vec<usize>> = p.context().iter().map(|v| self.component(&v.degree)).collect();
        if choices.iter().any(Vec::is_empty) {
            return None;
        }
        choices
            .into_iter()
            .multi_cartesian_product()
            .map(|pick| {
                p.context()
                    .iter()
                    .zip(pick)
                    .map(|(v, b)| (v.index, b))
                    .collect::<HashMap<u32, usize>>()
            })
            .find(|a| !self.eval_poly(p, a).is_zero())
    }

    /// Multilinear `p` is an identity iff it vanishes on every tuple of
    /// homogeneous basis elements of matching degrees.
    pub fn is_identity(&self, p: &MultilinearPoly) -> bool {
        self.witness(p).is_none()
    }
}
