//! Dense matrices over an exact field, with Gaussian elimination.
//!
//! Zero-dimensional shapes (0 x n, n x 0) are legal and compose without
//! special cases; every matrix carries its field so degenerate shapes stay
//! well typed.

use std::fmt;

use super::scalar::{FieldSpec, Scalar};
use super::LinAlgError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::EntryCount { rows, cols });
        }
        if entries.iter().any(|s| s.field() != field) {
            return Err(LinAlgError::FieldMismatch);
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Builds from integer literals, mapped into the field.
    pub fn from_i64(field: FieldSpec, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let entries = data
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cols, "ragged matrix literal");
                row.iter().map(|n| field.from_i64(*n))
            })
            .collect();
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix, LinAlgError> {
        if c.field() != self.field {
            return Err(LinAlgError::FieldMismatch);
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        })
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinAlgError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Rank by exact Gaussian elimination, pivoting on the first nonzero
    /// entry in each column.
    pub fn rank(&self) -> usize {
        rref(self.clone()).1.len()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form. Returns the reduced matrix and the pivot
/// column indices in order.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        // First nonzero entry at or below `row`.
        let Some(pivot_row) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if pivot_row != row {
            for c in 0..m.cols {
                let a = m.get(row, c).clone();
                let b = m.get(pivot_row, c).clone();
                m.set(row, c, b);
                m.set(pivot_row, c, a);
            }
        }
        let inv = m.get(row, col).inv().expect("pivot is nonzero");
        for c in 0..m.cols {
            let v = m.get(row, c) * &inv;
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r != row && !m.get(r, col).is_zero() {
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// A basis of the nullspace `{x : m x = 0}`, one vector per free column,
/// in free-column order.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let n = m.cols();
    let (reduced, pivots) = rref(m.clone());
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &pivot_col) in pivots.iter().enumerate() {
            v[pivot_col] = -reduced.get(row, free);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_multiplication() {
        let q = FieldSpec::Q;
        let m = Matrix::from_i64(q, &[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(q, 2);
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn zero_dimensional_shapes_compose() {
        let q = FieldSpec::Q;
        let a = Matrix::zero(q, 2, 0);
        let b = Matrix::zero(q, 0, 3);
        let ab = a.mul(&b).unwrap();
        assert_eq!((ab.rows(), ab.cols()), (2, 3));
        assert!(ab.is_zero());
        let id0 = Matrix::identity(q, 0);
        assert_eq!(b.rows(), 0);
        assert_eq!(id0.mul(&b).unwrap(), b);
    }

    #[test]
    fn rank_of_known_matrices() {
        let q = FieldSpec::Q;
        assert_eq!(Matrix::identity(q, 3).rank(), 3);
        assert_eq!(Matrix::zero(q, 3, 4).rank(), 0);
        let singular = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.rank(), 1);
        let wide = Matrix::from_i64(q, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(wide.rank(), 2);
    }

    #[test]
    fn rank_is_exact_over_rationals() {
        // A matrix that tempts floating-point cancellation: rank must be 2.
        let q = FieldSpec::Q;
        let third = q.parse("1/3").unwrap();
        let two_thirds = q.parse("2/3").unwrap();
        let m = Matrix::new(
            q,
            2,
            2,
            vec![third.clone(), two_thirds.clone(), two_thirds, q.parse("4/3").unwrap()],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_solves_the_system() {
        let q = FieldSpec::Q;
        let m = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            // m v = 0, exactly.
            for r in 0..m.rows() {
                let mut acc = q.zero();
                for (c, x) in v.iter().enumerate() {
                    acc = &acc + &(m.get(r, c) * x);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn nullspace_over_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let m = Matrix::from_i64(f2, &[&[1, 1]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![f2.one(), f2.one()]);
    }

    #[test]
    fn shape_errors() {
        let q = FieldSpec::Q;
        let a = Matrix::from_i64(q, &[&[1, 2]]);
        let b = Matrix::from_i64(q, &[&[1, 2]]);
        assert!(matches!(a.mul(&b), Err(LinAlgError::ShapeMismatch(_))));
        let f2 = FieldSpec::prime(2).unwrap();
        let c = Matrix::identity(f2, 1);
        assert_eq!(
            Matrix::identity(q, 1).add(&c),
            Err(LinAlgError::FieldMismatch)
        );
    }
}
