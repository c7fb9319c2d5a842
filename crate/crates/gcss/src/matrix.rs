//! Dense column-major matrix storage and the kernels the selection engine
//! and oracles are built on.
//!
//! Everything here works in `f64`; the selection recursions subtract
//! accumulated quantities and visibly drift in 32-bit arithmetic.

use thiserror::Error;

/// Errors from matrix construction and kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("entry buffer holds {got} values, expected {rows}x{cols} = {expected}")]
    EntryCountMismatch {
        rows: usize,
        cols: usize,
        got: usize,
        expected: usize,
    },
    #[error("non-finite entry {value} at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize, value: f64 },
    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
    #[error("row counts differ: {left} vs {right}")]
    RowCountMismatch { left: usize, right: usize },
    #[error("ragged row {row}: has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("k = {k} out of range 1..={max}")]
    SvdRankOutOfRange { k: usize, max: usize },
    #[error("SVD did not converge after {sweeps} Jacobi sweeps")]
    SvdNotConverged { sweeps: usize },
}

/// Dense real matrix, column-major so single-column traversal is a
/// contiguous slice walk. Every hot kernel in the crate walks columns.
///
/// Construction rejects empty shapes and non-finite entries; one NaN would
/// otherwise poison every downstream recursion silently.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    /// Entry (i, j) lives at `data[j * rows + i]`.
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Build from a column-major buffer.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        Self::check_shape(rows, cols, data.len())?;
        let m = DenseMatrix { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    /// Build from a row-major buffer.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        Self::check_shape(rows, cols, data.len())?;
        let mut col_major = vec![0.0; data.len()];
        for i in 0..rows {
            for j in 0..cols {
                col_major[j * rows + i] = data[i * cols + j];
            }
        }
        let m = DenseMatrix {
            rows,
            cols,
            data: col_major,
        };
        m.check_finite()?;
        Ok(m)
    }

    /// Build from row slices; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::EmptyMatrix {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    got: r.len(),
                    expected: cols,
                });
            }
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(rows.len(), cols, flat)
    }

    /// Single-column matrix from a vector.
    pub fn from_column(entries: Vec<f64>) -> Result<Self, MatrixError> {
        let rows = entries.len();
        Self::from_col_major(rows, 1, entries)
    }

    /// All-zero matrix. Panics on empty shapes; callers validate user input
    /// before reaching here.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-sized matrix");
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// n×n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Fill entry-by-entry from a closure. Panics on empty shapes.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    fn check_shape(rows: usize, cols: usize, len: usize) -> Result<(), MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyMatrix { rows, cols });
        }
        if len != rows * cols {
            return Err(MatrixError::EntryCountMismatch {
                rows,
                cols,
                got: len,
                expected: rows * cols,
            });
        }
        Ok(())
    }

    fn check_finite(&self) -> Result<(), MatrixError> {
        for (idx, &v) in self.data.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixError::NonFiniteEntry {
                    row: idx % self.rows,
                    col: idx / self.rows,
                    value: v,
                });
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.rows + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[col * self.rows + row] = value;
    }

    /// Contiguous view of column `j`.
    #[inline]
    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Column-major view of all entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// New matrix holding the given columns in the given order.
    /// Indices must be in range; duplicates are the caller's concern.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Self, MatrixError> {
        if indices.is_empty() {
            return Err(MatrixError::EmptyMatrix {
                rows: self.rows,
                cols: 0,
            });
        }
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for &j in indices {
            if j >= self.cols {
                return Err(MatrixError::ColumnOutOfRange {
                    index: j,
                    cols: self.cols,
                });
            }
            data.extend_from_slice(self.column(j));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        })
    }

    /// self * x for a column vector x of length `cols`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                axpy(xj, self.column(j), &mut out);
            }
        }
        out
    }

    /// selfᵀ * x for a column vector x of length `rows`.
    pub fn mul_transpose_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols).map(|j| dot(self.column(j), x)).collect()
    }

    /// Entry-wise difference; shapes must match.
    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// self * other.
    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let rhs = other.column(j);
            let out_col = out.column_mut(j);
            for (k, &c) in rhs.iter().enumerate() {
                if c != 0.0 {
                    axpy(c, self.column(k), out_col);
                }
            }
        }
        out
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum()
}

/// AᵀA_{:j} — the j-th column of the source Gram matrix, without forming it.
pub fn gram_column(a: &DenseMatrix, j: usize) -> Result<Vec<f64>, MatrixError> {
    if j >= a.cols() {
        return Err(MatrixError::ColumnOutOfRange {
            index: j,
            cols: a.cols(),
        });
    }
    let aj = a.column(j);
    Ok((0..a.cols()).map(|i| dot(a.column(i), aj)).collect())
}

/// BᵀA_{:j} — the j-th column of A reduced against every column of B.
pub fn cross_gram_column(
    b: &DenseMatrix,
    a: &DenseMatrix,
    j: usize,
) -> Result<Vec<f64>, MatrixError> {
    if b.rows() != a.rows() {
        return Err(MatrixError::RowCountMismatch {
            left: b.rows(),
            right: a.rows(),
        });
    }
    if j >= a.cols() {
        return Err(MatrixError::ColumnOutOfRange {
            index: j,
            cols: a.cols(),
        });
    }
    let aj = a.column(j);
    Ok((0..b.cols()).map(|c| dot(b.column(c), aj)).collect())
}

/// XᵀY.
pub fn mat_transpose_mat(x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
    if x.rows() != y.rows() {
        return Err(MatrixError::RowCountMismatch {
            left: x.rows(),
            right: y.rows(),
        });
    }
    let mut out = DenseMatrix::zeros(x.cols(), y.cols());
    for c in 0..y.cols() {
        let yc = y.column(c);
        for i in 0..x.cols() {
            out.set(i, c, dot(x.column(i), yc));
        }
    }
    Ok(out)
}

/// Sum of squared entries.
pub fn frobenius_sq(x: &DenseMatrix) -> f64 {
    norm_sq(x.as_slice())
}

/// Leading left singular vectors with their singular values.
#[derive(Debug, Clone)]
pub struct SvdPair {
    /// m×k with orthonormal columns.
    pub u_k: DenseMatrix,
    /// The k largest singular values, non-increasing, all ≥ 0.
    pub sigma: Vec<f64>,
}

const JACOBI_MAX_SWEEPS: usize = 60;
const JACOBI_TOL: f64 = 1e-14;

/// Top-k singular pairs of `a` via one-sided Jacobi rotations.
///
/// Jacobi is slow but accurate at this scale; the contract here is the
/// tail-energy identity ‖A − U_k U_kᵀ A‖²_F = Σ_{i>k} σ_i², not speed.
pub fn top_k_svd(a: &DenseMatrix, k: usize) -> Result<SvdPair, MatrixError> {
    let max_k = a.rows().min(a.cols());
    if k == 0 || k > max_k {
        return Err(MatrixError::SvdRankOutOfRange { k, max: max_k });
    }

    // One-sided Jacobi orthogonalizes the columns of its working matrix.
    // Run it on whichever of A / Aᵀ has at most as many columns as rows;
    // the left singular vectors of A are then either the normalized worked
    // columns (square/tall A) or the accumulated rotations (wide A).
    let (mut sigma, mut u_cols) = if a.cols() <= a.rows() {
        let mut work = a.clone();
        jacobi_orthogonalize(&mut work, None)?;
        columns_to_basis(&work, a.rows())
    } else {
        let mut work = transpose(a);
        let mut acc = DenseMatrix::identity(a.rows());
        jacobi_orthogonalize(&mut work, Some(&mut acc))?;
        // work = Aᵀ·acc has orthogonal columns, so σ_j = ‖work_{:j}‖ and the
        // left singular vectors of A are the columns of acc.
        let sig: Vec<f64> = (0..work.cols())
            .map(|j| norm_sq(work.column(j)).sqrt())
            .collect();
        let cols: Vec<Vec<f64>> = (0..acc.cols()).map(|j| acc.column(j).to_vec()).collect();
        (sig, cols)
    };

    // Order by descending singular value; stable on ties for determinism.
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap().then(i.cmp(&j)));
    sigma = order.iter().map(|&i| sigma[i]).collect();
    u_cols = order.iter().map(|&i| u_cols[i].clone()).collect();

    // Columns attached to zero singular values carry no direction of their
    // own; replace them with an orthonormal completion so U_kᵀU_k = I holds
    // for every admissible k.
    complete_basis(&mut u_cols, a.rows(), &sigma);

    let mut u_data = Vec::with_capacity(a.rows() * k);
    for col in u_cols.iter().take(k) {
        u_data.extend_from_slice(col);
    }
    let mut u_k = DenseMatrix {
        rows: a.rows(),
        cols: k,
        data: u_data,
    };
    canonicalize_signs(&mut u_k);
    sigma.truncate(k);
    Ok(SvdPair { u_k, sigma })
}

fn transpose(a: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.cols(), a.rows(), |i, j| a.get(j, i))
}

/// Rotate column pairs of `work` until all pairs are orthogonal. When `acc`
/// is given, the same rotations are applied to it from the right.
fn jacobi_orthogonalize(
    work: &mut DenseMatrix,
    mut acc: Option<&mut DenseMatrix>,
) -> Result<(), MatrixError> {
    let n = work.cols();
    if n == 1 {
        return Ok(());
    }
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let alpha = norm_sq(work.column(i));
                let beta = norm_sq(work.column(j));
                let gamma = dot(work.column(i), work.column(j));
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let rel = gamma.abs() / (alpha * beta).sqrt();
                off = off.max(rel);
                if rel <= JACOBI_TOL {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_columns(work, i, j, c, s);
                if let Some(acc) = acc.as_deref_mut() {
                    rotate_columns(acc, i, j, c, s);
                }
            }
        }
        if off <= JACOBI_TOL {
            return Ok(());
        }
    }
    Err(MatrixError::SvdNotConverged {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

fn rotate_columns(m: &mut DenseMatrix, i: usize, j: usize, c: f64, s: f64) {
    let rows = m.rows();
    for r in 0..rows {
        let vi = m.get(r, i);
        let vj = m.get(r, j);
        m.set(r, i, c * vi - s * vj);
        m.set(r, j, s * vi + c * vj);
    }
}

/// Normalize worked columns into unit vectors plus their norms.
fn columns_to_basis(work: &DenseMatrix, rows: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut sigma = Vec::with_capacity(work.cols());
    let mut cols = Vec::with_capacity(work.cols());
    for j in 0..work.cols() {
        let col = work.column(j);
        let s = norm_sq(col).sqrt();
        sigma.push(s);
        if s > 0.0 {
            cols.push(col.iter().map(|v| v / s).collect());
        } else {
            cols.push(vec![0.0; rows]);
        }
    }
    (sigma, cols)
}

/// Replace (near-)zero columns with standard basis vectors orthogonalized
/// against everything kept so far. Deterministic: e_0, e_1, … tried in order.
fn complete_basis(cols: &mut [Vec<f64>], rows: usize, sigma: &[f64]) {
    let scale = sigma.first().copied().unwrap_or(0.0);
    let floor = scale * 1e-14;
    let mut next_axis = 0;
    for j in 0..cols.len() {
        if sigma[j] > floor {
            continue;
        }
        'axes: while next_axis < rows {
            let mut cand = vec![0.0; rows];
            cand[next_axis] = 1.0;
            next_axis += 1;
            for (i, kept) in cols.iter().enumerate() {
                if i == j {
                    continue;
                }
                let proj = dot(&cand, kept);
                axpy(-proj, kept, &mut cand);
            }
            let n = norm_sq(&cand).sqrt();
            if n > 1e-8 {
                for v in cand.iter_mut() {
                    *v /= n;
                }
                cols[j] = cand;
                break 'axes;
            }
        }
    }
}

/// Fix the sign ambiguity: the largest-magnitude entry of each column is
/// made positive (lowest index on exact ties).
fn canonicalize_signs(u: &mut DenseMatrix) {
    for j in 0..u.cols() {
        let col = u.column_mut(j);
        let mut lead = 0;
        for (i, v) in col.iter().enumerate() {
            if v.abs() > col[lead].abs() {
                lead = i;
            }
        }
        if col[lead] < 0.0 {
            for v in col.iter_mut() {
                *v = -*v;
            }
        }
    }
}
