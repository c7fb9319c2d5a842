//! Builders for the target matrix B.
//!
//! One selection engine serves several problems; what changes is only how
//! the target is constructed from the source (or supplied externally):
//!
//! - [`TargetSpec::SelfTarget`] — B = A: plain column subset selection.
//! - [`TargetSpec::RandomProjection`] — B = AΩ, a seeded Gaussian sketch of
//!   the source span.
//! - [`TargetSpec::FeaturePartition`] — columns of A summed within seeded
//!   random groups.
//! - [`TargetSpec::Svd`] — B = U_k·Σ_k, the dominant subspace of A.
//! - [`TargetSpec::External`] — one or more supplied signal vectors; with a
//!   single column this makes the engine run orthogonal least squares.

use crate::matrix::{axpy, top_k_svd, DenseMatrix, MatrixError};
use crate::rng::{NormalSource, SplitMix64};
use std::borrow::Cow;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TargetError {
    #[error("random projection needs r ≥ 1 sketch columns")]
    ZeroSketchColumns,
    #[error("feature partition needs 1 ≤ c ≤ {cols} groups, got {c}")]
    GroupCountOutOfRange { c: usize, cols: usize },
    #[error("external target has {target_rows} rows, source has {source_rows}")]
    RowCountMismatch {
        target_rows: usize,
        source_rows: usize,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Declarative description of how to build B.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSpec {
    /// B = A, shared without copying.
    SelfTarget,
    /// B = AΩ with Ω an n×r matrix of i.i.d. N(0, 1/r) entries drawn
    /// column-by-column from a [`NormalSource`] seeded with `seed`.
    RandomProjection { r: usize, seed: u64 },
    /// Each source column is assigned one of `c` groups by consecutive
    /// draws of a seeded [`SplitMix64`] (column j gets draw j, mod c);
    /// B_{:c'} is the sum of group c'. Empty groups yield zero columns.
    FeaturePartition { c: usize, seed: u64 },
    /// B = U_k·diag(σ_1..σ_k) from the top-k SVD of A.
    Svd { k: usize },
    /// B supplied as-is; must have as many rows as A.
    External(DenseMatrix),
}

/// Materialize the target for `a`. Self and external targets are borrowed,
/// the rest are freshly built. Identical (A, spec) — including the seed —
/// produce bit-identical results.
pub fn build_target<'a>(
    a: &'a DenseMatrix,
    spec: &'a TargetSpec,
) -> Result<Cow<'a, DenseMatrix>, TargetError> {
    match spec {
        TargetSpec::SelfTarget => Ok(Cow::Borrowed(a)),
        TargetSpec::RandomProjection { r, seed } => {
            if *r == 0 {
                return Err(TargetError::ZeroSketchColumns);
            }
            Ok(Cow::Owned(random_projection(a, *r, *seed)))
        }
        TargetSpec::FeaturePartition { c, seed } => {
            if *c == 0 || *c > a.cols() {
                return Err(TargetError::GroupCountOutOfRange {
                    c: *c,
                    cols: a.cols(),
                });
            }
            Ok(Cow::Owned(feature_partition(a, *c, *seed)))
        }
        TargetSpec::Svd { k } => {
            let svd = top_k_svd(a, *k)?;
            let mut b = svd.u_k;
            for (j, sigma) in svd.sigma.iter().enumerate() {
                for v in b.column_mut(j) {
                    *v *= sigma;
                }
            }
            Ok(Cow::Owned(b))
        }
        TargetSpec::External(b) => {
            if b.rows() != a.rows() {
                return Err(TargetError::RowCountMismatch {
                    target_rows: b.rows(),
                    source_rows: a.rows(),
                });
            }
            Ok(Cow::Borrowed(b))
        }
    }
}

/// B = AΩ. Ω's entries are standard normals scaled by 1/√r, generated in
/// column-major order so the construction is reproducible from the
/// documented generator alone. Ω is built one column at a time; the full
/// n×r matrix is never stored.
fn random_projection(a: &DenseMatrix, r: usize, seed: u64) -> DenseMatrix {
    let scale = 1.0 / (r as f64).sqrt();
    let mut source = NormalSource::new(seed);
    let mut b = DenseMatrix::zeros(a.rows(), r);
    let mut omega_col = vec![0.0; a.cols()];
    for c in 0..r {
        for entry in omega_col.iter_mut() {
            *entry = source.next_normal() * scale;
        }
        let out = b.column_mut(c);
        for (j, &coef) in omega_col.iter().enumerate() {
            axpy(coef, a.column(j), out);
        }
    }
    b
}

fn feature_partition(a: &DenseMatrix, c: usize, seed: u64) -> DenseMatrix {
    let mut rng = SplitMix64::new(seed);
    let mut b = DenseMatrix::zeros(a.rows(), c);
    for j in 0..a.cols() {
        let group = rng.next_index(c);
        axpy(1.0, a.column(j), b.column_mut(group));
    }
    b
}
