//! Direct reference implementations of the selection criterion.
//!
//! Everything here recomputes projections from scratch through an
//! orthogonal factorization, materializing the residuals the fast engine
//! avoids. That makes this module asymptotically worse on purpose: it is
//! the ground truth the engine's recursions are checked against, and the
//! backing for the engine's optional periodic refresh.

use crate::matrix::{self, frobenius_sq, DenseMatrix, MatrixError};
use thiserror::Error;

/// Default ceiling on the number of subsets `exhaustive_best` will visit.
pub const DEFAULT_ENUM_CAP: u128 = 100_000;

/// Relative floor under which a pivot no longer counts toward the rank.
const RANK_REL_TOL: f64 = 1e-12;

/// Columns whose residual energy falls below this fraction of the largest
/// initial column energy are treated as already spanned. Mirrors the
/// engine's default admissibility threshold.
pub const ADMIT_REL_TOL: f64 = 1e-10;

/// Candidates whose criterion lies within this fraction of ‖B‖²_F of the
/// running best are treated as exact ties (smallest index wins). Keeps the
/// tie rule stable when the true values coincide and only roundoff differs.
const TIE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("selection is empty")]
    EmptySelection,
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("column index {index} appears more than once in the selection")]
    DuplicateIndex { index: usize },
    #[error("row counts differ: {left} vs {right}")]
    RowCountMismatch { left: usize, right: usize },
    #[error("l = {l} out of range 1..={cols}")]
    SubsetSizeOutOfRange { l: usize, cols: usize },
    #[error("{combinations} subsets exceed the enumeration cap {cap}")]
    EnumerationCapExceeded { combinations: u128, cap: u128 },
    #[error("subset {prefix:?} is not contained in {superset:?}")]
    NotASubset {
        prefix: Vec<usize>,
        superset: Vec<usize>,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A projected matrix plus what the factorization revealed about A_{:S}.
#[derive(Debug, Clone)]
pub struct Projection {
    /// P^(S) X.
    pub matrix: DenseMatrix,
    /// Numerical rank of A_{:S}.
    pub rank: usize,
    /// True when rank < |S|; the solve fell back to minimum-norm semantics.
    pub rank_deficient: bool,
}

/// Least-squares coefficients plus the same rank diagnostics.
#[derive(Debug, Clone)]
pub struct Coefficients {
    /// |S|×r matrix T with A_{:S}·T = P^(S)B; minimum-norm when A_{:S} is
    /// rank deficient.
    pub matrix: DenseMatrix,
    pub rank: usize,
    pub rank_deficient: bool,
}

fn validate_selection(a: &DenseMatrix, s: &[usize]) -> Result<(), OracleError> {
    if s.is_empty() {
        return Err(OracleError::EmptySelection);
    }
    let mut seen = vec![false; a.cols()];
    for &j in s {
        if j >= a.cols() {
            return Err(OracleError::IndexOutOfRange {
                index: j,
                cols: a.cols(),
            });
        }
        if seen[j] {
            return Err(OracleError::DuplicateIndex { index: j });
        }
        seen[j] = true;
    }
    Ok(())
}

fn validate_rows(a: &DenseMatrix, x: &DenseMatrix) -> Result<(), OracleError> {
    if a.rows() != x.rows() {
        return Err(OracleError::RowCountMismatch {
            left: a.rows(),
            right: x.rows(),
        });
    }
    Ok(())
}

/// Project the columns of `x` onto the span of the columns of `a` indexed
/// by `s`, via a least-squares solve. The m×m projector is never formed.
pub fn projection_apply(
    a: &DenseMatrix,
    s: &[usize],
    x: &DenseMatrix,
) -> Result<Projection, OracleError> {
    validate_selection(a, s)?;
    validate_rows(a, x)?;
    let basis = a.select_columns(s)?;
    let (coeffs, rank) = min_norm_least_squares(&basis, x);
    let matrix = match coeffs {
        Some(t) => basis.mul(&t),
        None => DenseMatrix::zeros(x.rows(), x.cols()),
    };
    Ok(Projection {
        matrix,
        rank,
        rank_deficient: rank < s.len(),
    })
}

/// ‖B − P^(S)B‖²_F. An empty selection projects to zero, so the value is
/// ‖B‖²_F.
pub fn criterion(a: &DenseMatrix, s: &[usize], b: &DenseMatrix) -> Result<f64, OracleError> {
    validate_rows(a, b)?;
    if s.is_empty() {
        return Ok(frobenius_sq(b));
    }
    let proj = projection_apply(a, s, b)?;
    Ok(frobenius_sq(&b.sub(&proj.matrix)))
}

/// T* = argmin_T ‖B − A_{:S}T‖²_F, minimum-norm on rank deficiency.
pub fn solve_coefficients(
    a: &DenseMatrix,
    s: &[usize],
    b: &DenseMatrix,
) -> Result<Coefficients, OracleError> {
    validate_selection(a, s)?;
    validate_rows(a, b)?;
    let basis = a.select_columns(s)?;
    let (coeffs, rank) = min_norm_least_squares(&basis, b);
    let matrix = match coeffs {
        Some(t) => t,
        None => DenseMatrix::zeros(s.len(), b.cols()),
    };
    Ok(Coefficients {
        matrix,
        rank,
        rank_deficient: rank < s.len(),
    })
}

/// Greedy selection by direct evaluation: at each step, append the smallest
/// index that minimizes the criterion, skipping columns whose residual
/// energy says they already lie in the current span.
pub fn naive_greedy(
    a: &DenseMatrix,
    b: &DenseMatrix,
    l: usize,
) -> Result<Vec<usize>, OracleError> {
    validate_rows(a, b)?;
    if l == 0 || l > a.cols() {
        return Err(OracleError::SubsetSizeOutOfRange { l, cols: a.cols() });
    }
    let admit_floor = (0..a.cols())
        .map(|j| matrix::norm_sq(a.column(j)))
        .fold(0.0f64, f64::max)
        * ADMIT_REL_TOL;
    let tie_window = frobenius_sq(b) * TIE_REL_TOL;

    let mut selected: Vec<usize> = Vec::with_capacity(l);
    for _ in 0..l {
        // Residual source columns under the current selection.
        let residual = if selected.is_empty() {
            a.clone()
        } else {
            let proj = projection_apply(a, &selected, a)?;
            a.sub(&proj.matrix)
        };
        let mut best: Option<(usize, f64)> = None;
        let mut trial = selected.clone();
        for i in 0..a.cols() {
            if selected.contains(&i) {
                continue;
            }
            if matrix::norm_sq(residual.column(i)) <= admit_floor {
                continue;
            }
            trial.push(i);
            let value = criterion(a, &trial, b)?;
            trial.pop();
            match best {
                Some((_, best_value)) if value >= best_value - tie_window => {}
                _ => best = Some((i, value)),
            }
        }
        match best {
            Some((i, _)) => selected.push(i),
            None => break,
        }
    }
    Ok(selected)
}

/// Exhaustive minimum over all size-l subsets, enumerated in lexicographic
/// order; the first-found minimum is kept on exact ties. Errors out when
/// C(n, l) exceeds `cap`.
pub fn exhaustive_best(
    a: &DenseMatrix,
    b: &DenseMatrix,
    l: usize,
    cap: u128,
) -> Result<(Vec<usize>, f64), OracleError> {
    validate_rows(a, b)?;
    let n = a.cols();
    if l == 0 || l > n {
        return Err(OracleError::SubsetSizeOutOfRange { l, cols: n });
    }
    let combinations = binomial(n as u128, l as u128);
    if combinations > cap {
        return Err(OracleError::EnumerationCapExceeded { combinations, cap });
    }

    let mut subset: Vec<usize> = (0..l).collect();
    let mut best_set = subset.clone();
    let mut best_value = criterion(a, &subset, b)?;
    while next_combination(&mut subset, n) {
        let value = criterion(a, &subset, b)?;
        if value < best_value {
            best_value = value;
            best_set = subset.clone();
        }
    }
    Ok((best_set, best_value))
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul(n - i) / (i + 1);
    }
    out
}

/// Advance `subset` to the next lexicographic size-l combination of 0..n.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let l = subset.len();
    let mut i = l;
    while i > 0 {
        i -= 1;
        if subset[i] < n - l + i {
            subset[i] += 1;
            for j in i + 1..l {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Verify the projector split P^(S)x = P^(P)x + R^(R)x on probe columns,
/// where R^(R) projects onto the residuals E = A − P^(P)A of the columns
/// R = S∖P. Returns the worst deviation ‖lhs − rhs‖ / max(1, ‖x‖).
pub fn check_projection_decomposition(
    a: &DenseMatrix,
    p_set: &[usize],
    s_set: &[usize],
    probes: &DenseMatrix,
) -> Result<f64, OracleError> {
    validate_selection(a, s_set)?;
    validate_rows(a, probes)?;
    if !p_set.is_empty() {
        validate_selection(a, p_set)?;
    }
    for &j in p_set {
        if !s_set.contains(&j) {
            return Err(OracleError::NotASubset {
                prefix: p_set.to_vec(),
                superset: s_set.to_vec(),
            });
        }
    }

    let full = projection_apply(a, s_set, probes)?.matrix;
    let prefix = if p_set.is_empty() {
        DenseMatrix::zeros(probes.rows(), probes.cols())
    } else {
        projection_apply(a, p_set, probes)?.matrix
    };

    let r_set: Vec<usize> = s_set
        .iter()
        .copied()
        .filter(|j| !p_set.contains(j))
        .collect();
    let residual_term = if r_set.is_empty() {
        DenseMatrix::zeros(probes.rows(), probes.cols())
    } else {
        let e = if p_set.is_empty() {
            a.clone()
        } else {
            let pa = projection_apply(a, p_set, a)?.matrix;
            a.sub(&pa)
        };
        let e_r = e.select_columns(&r_set)?;
        let (coeffs, _rank) = min_norm_least_squares(&e_r, probes);
        match coeffs {
            Some(t) => e_r.mul(&t),
            None => DenseMatrix::zeros(probes.rows(), probes.cols()),
        }
    };

    let mut worst = 0.0f64;
    for c in 0..probes.cols() {
        let mut diff_sq = 0.0;
        for r in 0..probes.rows() {
            let d = full.get(r, c) - prefix.get(r, c) - residual_term.get(r, c);
            diff_sq += d * d;
        }
        let x_norm = matrix::norm_sq(probes.column(c)).sqrt();
        worst = worst.max(diff_sq.sqrt() / x_norm.max(1.0));
    }
    Ok(worst)
}

// ── Least squares via Householder QR with column pivoting ────────────────
//
// The oracle has to be more trustworthy than the fast path it validates,
// so the solve goes through an orthogonal factorization, not the normal
// equations. Rank deficiency falls back to the minimum-norm solution via a
// complete orthogonal decomposition of the leading rows of R.

/// One Householder reflector H = I − τ·u·uᵀ acting on rows `offset..`,
/// with u[0] = 1.
struct Reflector {
    offset: usize,
    u: Vec<f64>,
    tau: f64,
}

impl Reflector {
    /// Build the reflector sending `x` to α·e₁; returns None for ‖x‖ = 0.
    fn from_column(offset: usize, x: &[f64]) -> Option<(Reflector, f64)> {
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            return None;
        }
        let x0 = x[0];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        let v0 = x0 - alpha;
        let mut u = Vec::with_capacity(x.len());
        u.push(1.0);
        u.extend(x[1..].iter().map(|v| v / v0));
        let tau = 2.0 * v0 * v0 / (2.0 * (norm_sq - alpha * x0));
        Some((Reflector { offset, u, tau }, alpha))
    }

    /// Apply in place to one column.
    fn apply(&self, col: &mut [f64]) {
        let tail = &mut col[self.offset..];
        let w = self.tau * matrix::dot(&self.u, tail);
        for (t, &ui) in tail.iter_mut().zip(&self.u) {
            *t -= w * ui;
        }
    }

    fn apply_to_matrix(&self, m: &mut DenseMatrix, from_col: usize) {
        for j in from_col..m.cols() {
            self.apply(m.column_mut(j));
        }
    }
}

struct PivotedQr {
    /// Upper-triangular factor in the leading min(rows, cols) rows;
    /// entries below the diagonal are stale and never read.
    r: DenseMatrix,
    reflectors: Vec<Reflector>,
    pivots: Vec<usize>,
    rank: usize,
}

fn pivoted_qr(m: &DenseMatrix, with_pivoting: bool) -> PivotedQr {
    let rows = m.rows();
    let cols = m.cols();
    let steps = rows.min(cols);
    let mut work = m.clone();
    let mut reflectors = Vec::with_capacity(steps);
    let mut pivots: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    let mut first_pivot_norm = 0.0f64;

    for s in 0..steps {
        if with_pivoting {
            // Trailing column with the largest residual norm. Norms are
            // recomputed directly; selections here are small.
            let mut pivot = s;
            let mut pivot_norm_sq = trailing_norm_sq(&work, s, s);
            for j in s + 1..cols {
                let nrm = trailing_norm_sq(&work, s, j);
                if nrm > pivot_norm_sq {
                    pivot_norm_sq = nrm;
                    pivot = j;
                }
            }
            if pivot != s {
                swap_columns(&mut work, s, pivot);
                pivots.swap(s, pivot);
            }
        }
        let pivot_norm = trailing_norm_sq(&work, s, s).sqrt();
        if s == 0 {
            first_pivot_norm = pivot_norm;
        }
        if with_pivoting && (pivot_norm <= first_pivot_norm * RANK_REL_TOL || pivot_norm == 0.0) {
            break;
        }
        let Some((reflector, alpha)) = Reflector::from_column(s, &work.column(s)[s..]) else {
            continue;
        };
        work.set(s, s, alpha);
        reflector.apply_to_matrix(&mut work, s + 1);
        reflectors.push(reflector);
        rank = s + 1;
    }
    PivotedQr {
        r: work,
        reflectors,
        pivots,
        rank,
    }
}

fn trailing_norm_sq(m: &DenseMatrix, from_row: usize, j: usize) -> f64 {
    m.column(j)[from_row..].iter().map(|v| v * v).sum()
}

fn swap_columns(m: &mut DenseMatrix, i: usize, j: usize) {
    for r in 0..m.rows() {
        let t = m.get(r, i);
        m.set(r, i, m.get(r, j));
        m.set(r, j, t);
    }
}

/// Minimum-norm least-squares solution of basis·T ≈ rhs.
///
/// Returns the coefficient matrix (basis.cols × rhs.cols) and the numerical
/// rank; `None` coefficients mean the basis was numerically zero.
fn min_norm_least_squares(basis: &DenseMatrix, rhs: &DenseMatrix) -> (Option<DenseMatrix>, usize) {
    let qr = pivoted_qr(basis, true);
    let q = qr.rank;
    if q == 0 {
        return (None, 0);
    }
    let k = basis.cols();

    // Leading q rows of Qᵀ·rhs.
    let mut work = rhs.clone();
    for reflector in &qr.reflectors {
        reflector.apply_to_matrix(&mut work, 0);
    }

    // Solve [R11 R12]·y = c (coordinates in pivoted order).
    let y = if q == k {
        // Full rank: back-substitution on the upper-triangular R11.
        let mut y = DenseMatrix::zeros(k, rhs.cols());
        for c in 0..rhs.cols() {
            for i in (0..q).rev() {
                let mut v = work.get(i, c);
                for j in i + 1..q {
                    v -= qr.r.get(i, j) * y.get(j, c);
                }
                y.set(i, c, v / qr.r.get(i, i));
            }
        }
        y
    } else {
        // Complete orthogonal decomposition: factor W = [R11 R12]ᵀ (k×q)
        // as W = Q_w·R_w, giving [R11 R12] = R_wᵀ·Q_wᵀ. Forward-substitute
        // R_wᵀ·z = c, then the minimum-norm y is Q_w·z.
        let mut w = DenseMatrix::zeros(k, q);
        for i in 0..q {
            for j in i..k {
                w.set(j, i, qr.r.get(i, j));
            }
        }
        let inner = pivoted_qr(&w, false);
        let mut z = DenseMatrix::zeros(q, rhs.cols());
        for c in 0..rhs.cols() {
            for i in 0..q {
                let mut v = work.get(i, c);
                for j in 0..i {
                    // (R_wᵀ)[i][j] = R_w[j][i]
                    v -= inner.r.get(j, i) * z.get(j, c);
                }
                z.set(i, c, v / inner.r.get(i, i));
            }
        }
        // y = Q_w·z: pad z to k rows, apply the inner reflectors in reverse.
        let mut y = DenseMatrix::zeros(k, rhs.cols());
        for c in 0..rhs.cols() {
            for i in 0..q {
                y.set(i, c, z.get(i, c));
            }
        }
        for reflector in inner.reflectors.iter().rev() {
            reflector.apply_to_matrix(&mut y, 0);
        }
        y
    };

    // Undo pivoting: row i of y belongs to original column pivots[i].
    let mut coeffs = DenseMatrix::zeros(k, rhs.cols());
    for i in 0..k {
        for c in 0..rhs.cols() {
            coeffs.set(qr.pivots[i], c, y.get(i, c));
        }
    }
    (Some(coeffs), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::frobenius_sq;

    fn example_matrix() -> DenseMatrix {
        DenseMatrix::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap()
    }

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!(
            (got - want).abs() <= tol * want.abs().max(1.0),
            "got {got}, want {want}"
        );
    }

    #[test]
    fn projection_full_span_is_identity() {
        let eye = DenseMatrix::identity(2);
        let x = DenseMatrix::from_rows(&[vec![3.0, -1.0], vec![0.5, 2.0]]).unwrap();
        let p = projection_apply(&eye, &[0, 1], &x).unwrap();
        assert!(!p.rank_deficient);
        for i in 0..2 {
            for j in 0..2 {
                assert_close(p.matrix.get(i, j), x.get(i, j), 1e-12);
            }
        }
    }

    #[test]
    fn projection_single_column() {
        let a = example_matrix();
        let p = projection_apply(&a, &[2], &a).unwrap();
        let expected = [[0.5, 0.5, 1.0], [0.5, 0.5, 1.0]];
        for i in 0..2 {
            for j in 0..3 {
                assert_close(p.matrix.get(i, j), expected[i][j], 1e-12);
            }
        }
    }

    #[test]
    fn projection_of_orthogonal_input_is_zero() {
        // Span of (1,1)ᵀ; probe (1,-1)ᵀ is orthogonal to it.
        let a = example_matrix();
        let x = DenseMatrix::from_column(vec![1.0, -1.0]).unwrap();
        let p = projection_apply(&a, &[2], &x).unwrap();
        assert!(p.matrix.as_slice().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn projection_validates_input() {
        let a = example_matrix();
        assert!(matches!(
            projection_apply(&a, &[], &a),
            Err(OracleError::EmptySelection)
        ));
        assert!(matches!(
            projection_apply(&a, &[0, 0], &a),
            Err(OracleError::DuplicateIndex { index: 0 })
        ));
        assert!(matches!(
            projection_apply(&a, &[9], &a),
            Err(OracleError::IndexOutOfRange { index: 9, .. })
        ));
    }

    #[test]
    fn criterion_cases() {
        let a = example_matrix();
        let value = criterion(&a, &[2], &a).unwrap();
        assert_close(value, 1.0, 1e-12);

        // Spanning selection drives the criterion to zero.
        let value = criterion(&a, &[0, 1], &a).unwrap();
        assert!(value.abs() < 1e-12);

        // Empty selection: ‖B‖²_F.
        let eye = DenseMatrix::identity(3);
        assert_close(criterion(&eye, &[], &eye).unwrap(), 3.0, 1e-12);
    }

    #[test]
    fn naive_greedy_cases() {
        let a = example_matrix();
        assert_eq!(naive_greedy(&a, &a, 1).unwrap(), vec![2]);

        let eye = DenseMatrix::identity(3);
        let e2 = DenseMatrix::from_column(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(naive_greedy(&eye, &e2, 1).unwrap(), vec![1]);

        // After {2} both remaining columns drive the criterion to zero;
        // the smallest index wins the tie.
        assert_eq!(naive_greedy(&a, &a, 2).unwrap(), vec![2, 0]);
    }

    #[test]
    fn exhaustive_cases() {
        let a = example_matrix();
        let (set, value) = exhaustive_best(&a, &a, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(set, vec![2]);
        assert_close(value, 1.0, 1e-12);

        // l = n: all columns, minimal achievable value (zero here).
        let (set, value) = exhaustive_best(&a, &a, 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(set, vec![0, 1, 2]);
        assert!(value.abs() < 1e-10);

        // Zero target: every subset scores zero, lexicographically first wins.
        let zero = DenseMatrix::zeros(2, 2);
        let (set, value) = exhaustive_best(&a, &zero, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(set, vec![0, 1]);
        assert_eq!(value, 0.0);

        assert!(matches!(
            exhaustive_best(&a, &a, 2, 1),
            Err(OracleError::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn solve_coefficients_cases() {
        let eye = DenseMatrix::identity(2);
        let b = DenseMatrix::from_column(vec![5.0, 7.0]).unwrap();
        let t = solve_coefficients(&eye, &[0, 1], &b).unwrap();
        assert_close(t.matrix.get(0, 0), 5.0, 1e-12);
        assert_close(t.matrix.get(1, 0), 7.0, 1e-12);

        let a = example_matrix();
        let b = DenseMatrix::from_column(vec![1.0, 1.0]).unwrap();
        let t = solve_coefficients(&a, &[2], &b).unwrap();
        assert_close(t.matrix.get(0, 0), 1.0, 1e-12);

        // Target orthogonal to the span: zero coefficients.
        let b = DenseMatrix::from_column(vec![1.0, -1.0]).unwrap();
        let t = solve_coefficients(&a, &[2], &b).unwrap();
        assert!(t.matrix.get(0, 0).abs() < 1e-12);
    }

    #[test]
    fn solve_coefficients_min_norm_on_rank_deficiency() {
        // Two identical columns: LS solutions form a line; minimum-norm
        // splits the weight evenly.
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let b = DenseMatrix::from_column(vec![2.0, 0.0]).unwrap();
        let t = solve_coefficients(&a, &[0, 1], &b).unwrap();
        assert!(t.rank_deficient);
        assert_eq!(t.rank, 1);
        assert_close(t.matrix.get(0, 0), 1.0, 1e-10);
        assert_close(t.matrix.get(1, 0), 1.0, 1e-10);
    }

    #[test]
    fn rank_deficient_projection_equals_independent_subset() {
        // Column 2 duplicates column 0: projecting through {0, 1, 2} must
        // agree with projecting through {0, 1}, with the deficiency flagged.
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 0.5, 1.0],
            vec![-0.3, 2.0, -0.3],
            vec![0.7, -1.1, 0.7],
        ])
        .unwrap();
        let x = DenseMatrix::from_rows(&[vec![1.0, 0.2], vec![0.4, -1.0], vec![-2.0, 0.6]])
            .unwrap();
        let deficient = projection_apply(&a, &[0, 1, 2], &x).unwrap();
        let independent = projection_apply(&a, &[0, 1], &x).unwrap();
        assert!(deficient.rank_deficient);
        assert_eq!(deficient.rank, 2);
        assert!(!independent.rank_deficient);
        for i in 0..3 {
            for j in 0..2 {
                assert_close(deficient.matrix.get(i, j), independent.matrix.get(i, j), 1e-10);
            }
        }
    }

    #[test]
    fn projection_idempotent() {
        let a = example_matrix();
        let x = DenseMatrix::from_rows(&[vec![0.3, -2.0], vec![1.5, 0.7]]).unwrap();
        let once = projection_apply(&a, &[2], &x).unwrap().matrix;
        let twice = projection_apply(&a, &[2], &once).unwrap().matrix;
        for i in 0..2 {
            for j in 0..2 {
                assert_close(twice.get(i, j), once.get(i, j), 1e-10);
            }
        }
    }

    #[test]
    fn decomposition_identity_case() {
        // Orthonormal columns: P^({0,1}) = diag(1,1,0) exactly.
        let eye = DenseMatrix::identity(3);
        let probes = DenseMatrix::from_rows(&[
            vec![1.0, 0.2],
            vec![-0.5, 0.9],
            vec![2.0, -1.0],
        ])
        .unwrap();
        let dev = check_projection_decomposition(&eye, &[0], &[0, 1], &probes).unwrap();
        assert!(dev < 1e-12, "deviation {dev}");
        // R empty: the residual term vanishes and both sides agree exactly.
        let dev = check_projection_decomposition(&eye, &[0, 1], &[0, 1], &probes).unwrap();
        assert!(dev < 1e-12, "deviation {dev}");
    }

    #[test]
    fn pythagoras_and_contraction() {
        let a = example_matrix();
        let b = DenseMatrix::from_rows(&[vec![0.4, 1.2, -0.3], vec![-1.1, 0.8, 0.5]]).unwrap();
        let s = [2usize];
        let proj = projection_apply(&a, &s, &b).unwrap().matrix;
        let crit = criterion(&a, &s, &b).unwrap();
        let total = frobenius_sq(&b);
        assert_close(frobenius_sq(&proj) + crit, total, 1e-10);

        for i in [0usize, 1] {
            let bigger = criterion(&a, &[2, i], &b).unwrap();
            assert!(bigger <= crit + 1e-10 * total);
        }
    }
}
