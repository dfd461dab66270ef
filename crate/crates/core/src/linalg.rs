//! Exact row reduction over a [`FieldSpec`].

use crate::field::{FieldSpec, Scalar};

/// A subspace of `K^dim` held in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Subspace {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, dim: usize) -> Self {
        let mut s = Subspace::new(field, dim);
        for i in 0..dim {
            s.insert(&unit(field, dim, i));
        }
        s
    }

    pub fn spanned_by<'a>(field: FieldSpec, dim: usize, vs: impl IntoIterator<Item = &'a Vec<Scalar>>) -> Self {
        let mut s = Subspace::new(field, dim);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the echelon rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                axpy(&mut v, &-c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for c in r.iter_mut() {
            *c = &*c * &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                axpy(row, &-c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coefficients of `v` along the echelon rows, if `v` lies in the span.
    /// In reduced form these are just the entries of `v` at the pivots.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Rebuilds a vector from echelon coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&mut out, c, row);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other)
    }
}

pub fn unit(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

/// `y += a·x`.
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let field = a.first().map(Scalar::field).unwrap_or(FieldSpec::Rational);
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Basis of `{x : M x = 0}` for a matrix with `ncols` columns.
pub fn nullspace(field: FieldSpec, m: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let rref = Subspace::spanned_by(field, ncols, m);
    let free: Vec<usize> = (0..ncols).filter(|c| !rref.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = unit(field, ncols, f);
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Some `x` with `Σ_i x_i · cols[i] = b`, if one exists.
pub fn solve_columns(field: FieldSpec, cols: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    // Augmented system: rows are coordinates, unknowns are the column weights.
    let n = cols.len();
    let m = b.len();
    let mut aug: Vec<Vec<Scalar>> = (0..m)
        .map(|r| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m).find(|&k| !aug[k][c].is_zero()) else {
            continue;
        };
        aug.swap(r, k);
        let inv = aug[r][c].inv().expect("nonzero pivot");
        for e in aug[r].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot_row = aug[r].clone();
        for (k, row) in aug.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &-f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}
