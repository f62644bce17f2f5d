//! Dense exact linear algebra over `Q(ζ_N)`.

use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycloNum, FieldContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("column count mismatch: {0} vs {1}")]
    ColumnMismatch(usize, usize),
}

/// Rectangular matrix of cyclotomic numbers sharing one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Arc<FieldContext>,
    cols: usize,
    rows: Vec<Vec<CycloNum>>,
}

impl Matrix {
    pub fn zeros(ctx: &Arc<FieldContext>, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            cols,
            rows: vec![vec![CycloNum::zero(ctx); cols]; rows],
        }
    }

    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.rows[i][i] = CycloNum::one(ctx);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(ctx: &Arc<FieldContext>, cols: usize, rows: Vec<Vec<CycloNum>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            ctx: ctx.clone(),
            cols,
            rows,
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        self.rows[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycloNum] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycloNum]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn push_row(&mut self, row: Vec<CycloNum>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.rows.push(row);
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::ColumnMismatch(self.cols, other.cols));
        }
        let mut out = self.clone();
        out.rows.extend(other.rows.iter().cloned());
        Ok(out)
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        Matrix {
            ctx: self.ctx.clone(),
            cols: cols.len(),
            rows,
        }
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> Matrix {
        Matrix {
            ctx: self.ctx.clone(),
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .filter(|r| r.iter().any(|x| !x.is_zero()))
                .cloned()
                .collect(),
        }
    }

    /// `coeffs · self`, a combination of the rows.
    pub fn combine_rows(&self, coeffs: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(coeffs.len(), self.rows.len());
        let mut out = vec![CycloNum::zero(&self.ctx); self.cols];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn row_reduce(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&mut rows, self.cols, None);
        (
            Matrix {
                ctx: self.ctx.clone(),
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// RREF with the zero rows removed: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let (mut r, pivots) = self.row_reduce();
        r.rows.truncate(pivots.len());
        r
    }

    /// A nonzero `λ` with `λ · self = 0`, if the rows are dependent.
    pub fn left_kernel_vector(&self) -> Option<Vec<CycloNum>> {
        let n = self.rows.len();
        let width = self.cols + n;
        let mut aug: Vec<Vec<CycloNum>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..n).map(|j| {
                    if i == j {
                        CycloNum::one(&self.ctx)
                    } else {
                        CycloNum::zero(&self.ctx)
                    }
                }));
                v
            })
            .collect();
        let pivots = rref_in_place(&mut aug, width, Some(self.cols));
        if pivots.len() == n {
            return None;
        }
        // rows past the last pivot have a zero left block
        Some(aug[pivots.len()][self.cols..].to_vec())
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over Q(zeta_{})",
            self.rows.len(),
            self.cols,
            self.ctx.order()
        )?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination restricted to pivots in columns `< limit`
/// (all columns when `None`). Returns pivot columns; the pivot rows come
/// first and every pivot entry is 1.
fn rref_in_place(rows: &mut [Vec<CycloNum>], width: usize, limit: Option<usize>) -> Vec<usize> {
    let limit = limit.unwrap_or(width);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..limit {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[next][col..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (before, rest) = rows.split_at_mut(next);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Row-space equality.
pub fn subspace_equal(a: &Matrix, b: &Matrix) -> Result<bool, LinAlgError> {
    if a.ncols() != b.ncols() {
        return Err(LinAlgError::ColumnMismatch(a.ncols(), b.ncols()));
    }
    Ok(a.row_space_basis() == b.row_space_basis())
}

/// Is `v` in the row space of `b`?
pub fn member(v: &[CycloNum], b: &Matrix) -> Result<bool, LinAlgError> {
    if v.len() != b.ncols() {
        return Err(LinAlgError::ColumnMismatch(v.len(), b.ncols()));
    }
    let base = b.rank();
    let mut ext = b.clone();
    ext.push_row(v.to_vec());
    Ok(ext.rank() == base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(ctx: &Arc<FieldContext>, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            ctx,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| CycloNum::from_int(ctx, x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_examples() {
        let q = FieldContext::new(1);
        let id = Matrix::identity(&q, 2);
        let (r, p) = id.row_reduce();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1]);

        let ones = int_matrix(&q, &[&[1, 1], &[1, 1]]);
        let (r, p) = ones.row_reduce();
        assert_eq!(r, int_matrix(&q, &[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let f4 = FieldContext::new(4);
        let z = CycloNum::root_of_unity(&f4, 1);
        let m = Matrix::from_rows(
            &f4,
            2,
            vec![
                vec![CycloNum::one(&f4), z.clone()],
                vec![z, CycloNum::from_int(&f4, -1)],
            ],
        );
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_examples() {
        let q = FieldContext::new(1);
        assert_eq!(Matrix::zeros(&q, 3, 4).rank(), 0);
        assert_eq!(Matrix::identity(&q, 5).rank(), 5);
        assert_eq!(
            int_matrix(&q, &[&[1; 4], &[1; 4], &[1; 4], &[1; 4]]).rank(),
            1
        );
    }

    #[test]
    fn subspace_and_membership() {
        let q = FieldContext::new(1);
        let a = int_matrix(&q, &[&[1, 0]]);
        let b = int_matrix(&q, &[&[2, 0]]);
        assert!(subspace_equal(&a, &a).unwrap());
        assert!(subspace_equal(&a, &b).unwrap());
        let v = [CycloNum::zero(&q), CycloNum::one(&q)];
        assert!(!member(&v, &a).unwrap());
        assert!(member(&[CycloNum::from_int(&q, 7), CycloNum::zero(&q)], &a).unwrap());
        let c = int_matrix(&q, &[&[1, 0, 0]]);
        assert_eq!(
            subspace_equal(&a, &c),
            Err(LinAlgError::ColumnMismatch(2, 3))
        );
        assert!(member(&v, &c).is_err());
    }

    #[test]
    fn left_kernel() {
        let q = FieldContext::new(1);
        let m = int_matrix(&q, &[&[1, 2], &[2, 4], &[0, 1]]);
        let lam = m.left_kernel_vector().unwrap();
        assert!(lam.iter().any(|x| !x.is_zero()));
        assert!(m.combine_rows(&lam).iter().all(CycloNum::is_zero));
        assert!(Matrix::identity(&q, 3).left_kernel_vector().is_none());
    }
}
