use itertools::Itertools;

use super::{AlgebraError, StructureAlgebra, ThinAlgebra};
use crate::degree::Degree;
use crate::field::{is_prime, FieldSpec, Scalar};
use crate::linalg::{dot, Subspace};

type Matrix = Vec<Vec<Scalar>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| dot(&a[i], &b.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect()
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn identity(field: FieldSpec, n: usize) -> Matrix {
    (0..n).map(|i| crate::linalg::unit(field, n, i)).collect()
}

fn mat_pow(m: &Matrix, k: u64, field: FieldSpec) -> Matrix {
    (0..k).fold(identity(field, m.len()), |acc, _| mat_mul(&acc, m))
}

/// `A = diag(ε^(q-1), …, ε, 1)` and the cyclic shift `B` with `B e_(k+1) = e_k`;
/// they satisfy `AB = ε BA`.
pub fn pauli_matrices(q: u64, field: FieldSpec) -> Result<(Matrix, Matrix), AlgebraError> {
    let eps = field.root_of_unity(q)?;
    let n = q as usize;
    let mut a = vec![vec![field.zero(); n]; n];
    let mut b = vec![vec![field.zero(); n]; n];
    for k in 0..n {
        a[k][k] = eps.pow(q - 1 - k as u64);
        b[k][(k + 1) % n] = field.one();
    }
    Ok((a, b))
}

/// `sl_q` on the basis `A^i B^j`, `(i,j) ≠ (0,0)`, with every bracket
/// computed from explicit matrix products and decomposed back into the basis.
pub fn build_pauli_matrix_oracle(q: u64, field: FieldSpec) -> Result<StructureAlgebra, AlgebraError> {
    if !is_prime(q) {
        return Err(AlgebraError::NotPrime(q));
    }
    let (a, b) = pauli_matrices(q, field)?;
    let degrees: Vec<(u64, u64)> = (0..q).cartesian_product(0..q).collect();
    let flat = |m: &Matrix| m.iter().flatten().cloned().collect::<Vec<Scalar>>();
    let mats: Vec<Matrix> = degrees
        .iter()
        .map(|&(i, j)| mat_mul(&mat_pow(&a, i, field), &mat_pow(&b, j, field)))
        .collect();

    // Decompose via a reduced echelon form of the full matrix basis, tracking
    // which basis matrix each coordinate belongs to through unit tags.
    let n2 = (q * q) as usize;
    let tagged: Vec<Vec<Scalar>> = mats
        .iter()
        .enumerate()
        .map(|(t, m)| {
            let mut row = flat(m);
            row.extend(crate::linalg::unit(field, n2, t));
            row
        })
        .collect();
    let echelon = Subspace::spanned_by(field, 2 * n2, &tagged);
    assert_eq!(echelon.rank(), n2, "the matrices A^i B^j are a basis");
    let decompose = |m: &Matrix| -> Vec<Scalar> {
        let mut v = flat(m);
        v.extend(vec![field.zero(); n2]);
        // Σ c_t (mat_t, e_t) reduces (m, 0) to (0, -c).
        let r = echelon.reduce(&v);
        assert!(r[..n2].iter().all(Scalar::is_zero));
        r[n2..].iter().map(|c| -c.clone()).collect()
    };

    let support: Vec<usize> = (1..n2).collect();
    let basis = support
        .iter()
        .map(|&t| {
            let (i, j) = degrees[t];
            (format!("A^{i}B^{j}"), Degree::pauli(q, i as i64, j as i64))
        })
        .collect();
    let table: Vec<Vec<Vec<Scalar>>> = support
        .iter()
        .map(|&s| {
            support
                .iter()
                .map(|&t| {
                    let comm = mat_sub(&mat_mul(&mats[s], &mats[t]), &mat_mul(&mats[t], &mats[s]));
                    let c = decompose(&comm);
                    assert!(c[0].is_zero(), "commutators are traceless");
                    c[1..].to_vec()
                })
                .collect()
        })
        .collect();
    StructureAlgebra::from_table(format!("sl_{q} (matrices)"), field, basis, table)
}

/// Compares every bracket of a Pauli matrix oracle with the thin structure
/// function; returns the number of basis pairs checked.
pub fn compare_with_thin(oracle: &StructureAlgebra, thin: &ThinAlgebra) -> Result<usize, AlgebraError> {
    let field = oracle.field();
    let n = oracle.dim();
    for (x, y) in (0..n).cartesian_product(0..n) {
        let (g, h) = (oracle.degrees()[x], oracle.degrees()[y]);
        let sum = g.try_add(&h).expect("same grading");
        let expected = thin.structure(&g, &h);
        for (k, c) in oracle.basis_bracket(x, y).iter().enumerate() {
            let want = if oracle.degrees()[k] == sum {
                expected.clone()
            } else {
                field.zero()
            };
            if *c != want {
                return Err(AlgebraError::OracleMismatch(g, h));
            }
        }
    }
    Ok(n * n)
}
