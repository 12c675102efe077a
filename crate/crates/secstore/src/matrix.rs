//! Exact dense linear algebra over GF(q).
//!
//! Everything reduces to Gaussian elimination with deterministic pivoting
//! (first nonzero column, topmost row), so repeated runs produce identical
//! matrices. All operations return new matrices; values are never mutated
//! in place by callers.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    /// Builds a matrix from raw integer entries, reducing them mod q.
    pub fn from_rows(field: &Field, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let q = field.modulus();
        let data = rows.iter().flatten().map(|&v| v % q).collect();
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Zero matrix of the given shape.
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Raw entry in [0, q).
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn at(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.get(r, c))
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn require_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.require_same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = out.data[r * rhs.cols + c];
                    out.data[r * rhs.cols + c] = f.add_raw(cur, f.mul_raw(a, rhs.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product m * v^T for a raw row vector.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = 0;
                for (c, &vc) in v.iter().enumerate() {
                    acc = f.add_raw(acc, f.mul_raw(self.get(r, c), vc % f.modulus()));
                }
                acc
            })
            .collect())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.require_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack requires equal column counts".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Restriction to the given columns, in the given order.
    pub fn restrict_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Rows `range` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Reduced row echelon form together with the ascending pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // Topmost row at or below pivot_row with a nonzero entry.
            let Some(sel) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != pivot_row {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let inv = f
                .inv_raw(m.get(pivot_row, col))
                .expect("pivot entry is nonzero");
            for c in 0..m.cols {
                m.data[pivot_row * m.cols + c] = f.mul_raw(m.get(pivot_row, c), inv);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub_raw(m.get(r, c), f.mul_raw(factor, m.get(pivot_row, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square full-rank matrix.
    pub fn invert(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("invert requires a square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::SingularMatrix);
        }
        let mut out = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = red.get(r, n + c);
            }
        }
        Ok(out)
    }

    /// Basis of { x : self * x^T = 0 }, one basis vector per row.
    ///
    /// The basis is read off the RREF free columns in ascending order, so it
    /// is deterministic.
    pub fn nullspace(&self) -> Matrix {
        let (red, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * self.cols + fc] = 1;
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = red.get(prow, fc);
                if v != 0 {
                    out.data[k * self.cols + pc] = f.sub_raw(0, v);
                }
            }
        }
        out
    }

    /// True iff v lies in the span of the columns of `self`.
    pub fn column_span_contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} rows",
                v.len(),
                self.rows
            )));
        }
        if v.iter().all(|&x| x % self.field.modulus() == 0) {
            return Ok(true);
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for (r, &vr) in v.iter().enumerate() {
            for c in 0..self.cols {
                aug.data[r * (self.cols + 1) + c] = self.get(r, c);
            }
            aug.data[r * (self.cols + 1) + self.cols] = vr % self.field.modulus();
        }
        Ok(aug.rank() == self.rank())
    }

    /// Rank test for trivial intersection of the orthogonal complement of
    /// one row span with another row span: rk(a1 * a2^T) = rows(a1).
    ///
    /// For equally shaped matrices this is equivalent to there being no
    /// nonzero v with v*a2 orthogonal to every row of a1.
    pub fn spans_intersect_trivially(a1: &Matrix, a2: &Matrix) -> Result<bool> {
        a1.require_same_field(a2)?;
        if a1.cols != a2.cols {
            return Err(Error::DimensionMismatch(
                "span intersection test requires equal column counts".into(),
            ));
        }
        let prod = a1.mul(&a2.transpose())?;
        Ok(prod.rank() == a1.rows)
    }

    /// Coordinates of `target`'s rows in terms of `basis`'s rows:
    /// returns X with X * basis = target, or None when inconsistent.
    pub fn express_in_rows(basis: &Matrix, target: &Matrix) -> Result<Option<Matrix>> {
        basis.require_same_field(target)?;
        if basis.cols != target.cols {
            return Err(Error::DimensionMismatch(
                "row expression requires equal column counts".into(),
            ));
        }
        // Solve basis^T * x^T = row^T for every target row via one RREF of
        // the augmented system [basis^T | target^T].
        let bt = basis.transpose();
        let tt = target.transpose();
        let mut aug = Matrix::zeros(&basis.field, basis.cols, basis.rows + target.rows);
        for r in 0..basis.cols {
            for c in 0..basis.rows {
                aug.data[r * (basis.rows + target.rows) + c] = bt.get(r, c);
            }
            for c in 0..target.rows {
                aug.data[r * (basis.rows + target.rows) + basis.rows + c] = tt.get(r, c);
            }
        }
        let (red, pivots) = aug.rref();
        // Inconsistent iff some pivot falls in the augmented block.
        if pivots.iter().any(|&p| p >= basis.rows) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(&basis.field, target.rows, basis.rows);
        for (prow, &pc) in pivots.iter().enumerate() {
            for t in 0..target.rows {
                x.data[t * basis.rows + pc] = red.get(prow, basis.rows + t);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        Ok(())
    }
}

/// Hamming weight of a raw vector.
pub fn weight(v: &[u64]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}
