//! The fast greedy selection engine.
//!
//! State is a pair of per-column criterion vectors `f` (numerators,
//! ‖H_{:i}‖² for the implicit H = FᵀE) and `g` (denominators, the diagonal
//! of the implicit G = EᵀE), maintained through rank-one updates driven by
//! the normalized vectors ω and υ of each selected column. Residual
//! matrices E and F, and the Gram matrices G and H, are never formed.
//!
//! Per iteration the engine does one Gram-column pass over the source
//! (O(mn)), one pass over the target (O(mr)), and history sums of size
//! O(t(n+r)); memory beyond the inputs is the ω/υ history, O(l(n+r)).

use crate::matrix::{
    axpy, cross_gram_column, frobenius_sq, gram_column, norm_sq, DenseMatrix, MatrixError,
};
use crate::oracle::{self, OracleError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GreedyError {
    #[error("row counts differ: source has {left}, target has {right}")]
    RowCountMismatch { left: usize, right: usize },
    #[error("l = {l} out of range 1..={cols}")]
    SubsetSizeOutOfRange { l: usize, cols: usize },
    #[error("tolerances must be non-negative (eps_admit {eps_admit}, eps_stop {eps_stop})")]
    InvalidTolerance { eps_admit: f64, eps_stop: f64 },
    #[error("column {index} is not admissible (already selected or numerically spanned)")]
    InadmissibleColumn { index: usize },
    #[error(
        "numerical breakdown at iteration {iteration}: residual energy of the pivot column \
         came out as {delta_p:e} ≤ 0 after accumulated updates; consider enabling periodic \
         refresh (refresh_every)"
    )]
    NumericalBreakdown { iteration: usize, delta_p: f64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Numerical thresholds governing admissibility, early stop and refresh.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceConfig {
    /// A column whose `g` falls to or below `eps_admit` times the largest
    /// initial `g` counts as spanned and leaves the candidate pool.
    /// Relative, so selection is invariant to input scale.
    pub eps_admit: f64,
    /// Stop early when the best available gain is at most `eps_stop` times
    /// the initial objective. Zero disables the check entirely.
    pub eps_stop: f64,
    /// Recompute `f` and `g` from explicit residuals every this many
    /// iterations, to arrest floating-point drift on ill-conditioned
    /// inputs. `None` (the default) never refreshes.
    pub refresh_every: Option<usize>,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_admit: 1e-10,
            eps_stop: 0.0,
            refresh_every: None,
        }
    }
}

/// Why a run ended before selecting the requested number of columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// No admissible column remains: everything left is numerically inside
    /// the selected span.
    SpanExhausted,
    /// The best available gain fell below the configured threshold.
    GainBelowThreshold,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StopReason::SpanExhausted => write!(f, "span exhausted"),
            StopReason::GainBelowThreshold => write!(f, "gain below threshold"),
        }
    }
}

/// Outcome of scanning for the next column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NextColumn {
    Column(usize),
    Exhausted(StopReason),
}

/// The engine's evolving state across iterations.
#[derive(Debug, Clone)]
pub struct SelectionState {
    selected: Vec<usize>,
    selected_mask: Vec<bool>,
    omega_hist: Vec<Vec<f64>>,
    upsilon_hist: Vec<Vec<f64>>,
    f: Vec<f64>,
    g: Vec<f64>,
    /// Largest initial g; admissibility thresholds are relative to it.
    admit_scale: f64,
    objective: f64,
    initial_objective: f64,
}

impl SelectionState {
    /// Indices chosen so far, in selection order.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    /// Criterion numerators f_i = ‖H_{:i}‖².
    pub fn f(&self) -> &[f64] {
        &self.f
    }

    /// Criterion denominators g_i = G_ii (residual energy per column).
    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// Current value of the selection objective ‖B − P^(S)B‖²_F, tracked by
    /// running subtraction of the per-iteration gains.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// ‖B‖²_F.
    pub fn initial_objective(&self) -> f64 {
        self.initial_objective
    }

    /// Number of completed iterations (= selected columns).
    pub fn iteration(&self) -> usize {
        self.selected.len()
    }

    /// Largest initial g, the scale admissibility is measured against.
    pub fn admissibility_scale(&self) -> f64 {
        self.admit_scale
    }

    /// ω history, one n-vector per completed iteration.
    pub fn omega_history(&self) -> &[Vec<f64>] {
        &self.omega_hist
    }

    /// υ history, one r-vector per completed iteration.
    pub fn upsilon_history(&self) -> &[Vec<f64>] {
        &self.upsilon_hist
    }

    /// Floats retained by the state itself; the acceptance suite checks
    /// this stays far below n² and m².
    pub fn retained_floats(&self) -> usize {
        self.f.len()
            + self.g.len()
            + self.omega_hist.iter().map(Vec::len).sum::<usize>()
            + self.upsilon_hist.iter().map(Vec::len).sum::<usize>()
    }
}

/// One row of the selection trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub index: usize,
    /// The criterion value f_p/g_p of the chosen column — exactly the
    /// objective decrease this selection produces.
    pub gain: f64,
    pub objective_after: f64,
}

/// Full account of one greedy run.
#[derive(Debug, Clone)]
pub struct GreedyReport {
    pub selected: Vec<usize>,
    pub iterations: Vec<IterationRecord>,
    pub initial_objective: f64,
    pub final_objective: f64,
    pub stopped_early: Option<StopReason>,
    /// Iterations after which the state was refreshed from residuals.
    pub refresh_iterations: Vec<usize>,
    /// Echo of the thresholds the run used.
    pub tolerances: ToleranceConfig,
}

/// Set up the state: f_i = ‖BᵀA_{:i}‖², g_i = A_{:i}ᵀA_{:i}, objective
/// ‖B‖²_F, empty histories.
pub fn init_state(a: &DenseMatrix, b: &DenseMatrix) -> Result<SelectionState, GreedyError> {
    if a.rows() != b.rows() {
        return Err(GreedyError::RowCountMismatch {
            left: a.rows(),
            right: b.rows(),
        });
    }
    let n = a.cols();
    let f = initial_numerators(a, b);
    let g: Vec<f64> = (0..n).map(|j| norm_sq(a.column(j))).collect();
    let admit_scale = g.iter().copied().fold(0.0f64, f64::max);
    let objective = frobenius_sq(b);
    Ok(SelectionState {
        selected: Vec::new(),
        selected_mask: vec![false; n],
        omega_hist: Vec::new(),
        upsilon_hist: Vec::new(),
        f,
        g,
        admit_scale,
        objective,
        initial_objective: objective,
    })
}

/// Row-block height for the quadratic-form initialization path. A constant,
/// so the scratch block is O(m) — never an m×m array.
const INIT_BLOCK_ROWS: usize = 32;

/// All f_i = ‖BᵀA_{:i}‖² at once.
///
/// Two exact routes with different cost shapes:
/// direct accumulation is O(mnr); the quadratic form f_i = A_{:i}ᵀ(BBᵀ)A_{:i}
/// with BBᵀ streamed in constant-height row blocks is O(m²(n+r)) and O(m)
/// scratch. Picking whichever is cheaper keeps the initialization linear in
/// n even when the target is as wide as the source.
fn initial_numerators(a: &DenseMatrix, b: &DenseMatrix) -> Vec<f64> {
    let m = a.rows();
    let n = a.cols();
    let r = b.cols();
    if m * (n + r) >= n * r {
        let mut f = vec![0.0; n];
        for (i, fi) in f.iter_mut().enumerate() {
            let ai = a.column(i);
            *fi = (0..r)
                .map(|c| {
                    let d = crate::matrix::dot(b.column(c), ai);
                    d * d
                })
                .sum();
        }
        return f;
    }

    let mut f = vec![0.0; n];
    let mut w_block = vec![0.0; INIT_BLOCK_ROWS.min(m) * m];
    let mut block_start = 0;
    while block_start < m {
        let height = INIT_BLOCK_ROWS.min(m - block_start);
        let w_block = &mut w_block[..height * m];
        w_block.fill(0.0);
        // Rows block_start.. of W = BBᵀ, accumulated column by column.
        for c in 0..r {
            let bc = b.column(c);
            for u in 0..height {
                let coef = bc[block_start + u];
                if coef != 0.0 {
                    axpy(coef, bc, &mut w_block[u * m..(u + 1) * m]);
                }
            }
        }
        for (i, fi) in f.iter_mut().enumerate() {
            let ai = a.column(i);
            let mut contrib = 0.0;
            for u in 0..height {
                let w_row = &w_block[u * m..(u + 1) * m];
                contrib += ai[block_start + u] * crate::matrix::dot(w_row, ai);
            }
            *fi += contrib;
        }
        block_start += height;
    }
    f
}

/// Ratios within this relative distance of the maximum count as tied, and
/// the smallest tied index wins. Mathematically equal criteria (a rank-one
/// residual space makes every candidate's ratio identical) reach this scan
/// carrying ~1e-13 of accumulated roundoff; a strict comparison would let
/// that noise pick the column and diverge from the direct oracle.
const SELECT_TIE_REL: f64 = 1e-9;

/// Scan for the next column: the smallest index whose ratio f_i/g_i is
/// within [`SELECT_TIE_REL`] of the best over admissible columns.
pub fn select_next(state: &SelectionState, tol: &ToleranceConfig) -> NextColumn {
    let floor = tol.eps_admit * state.admit_scale;
    let admissible = |i: usize| !state.selected_mask[i] && state.g[i] > floor;

    let mut best_ratio = f64::NEG_INFINITY;
    let mut found = false;
    for i in 0..state.g.len() {
        if !admissible(i) {
            continue;
        }
        found = true;
        let ratio = state.f[i] / state.g[i];
        if ratio > best_ratio {
            best_ratio = ratio;
        }
    }
    if !found {
        return NextColumn::Exhausted(StopReason::SpanExhausted);
    }
    if tol.eps_stop > 0.0 && best_ratio <= tol.eps_stop * state.initial_objective {
        return NextColumn::Exhausted(StopReason::GainBelowThreshold);
    }
    let threshold = best_ratio - best_ratio.abs() * SELECT_TIE_REL;
    for i in 0..state.g.len() {
        if admissible(i) && state.f[i] / state.g[i] >= threshold {
            return NextColumn::Column(i);
        }
    }
    unreachable!("an admissible column always reaches the tie threshold");
}

/// Fold column `p` into the state and return the objective gain it
/// produced.
///
/// Computes δ and γ from the Gram columns of the inputs minus the history
/// sums, normalizes them into ω and υ, then applies the rank-one criterion
/// updates and the objective decrement.
pub fn update_state(
    state: &mut SelectionState,
    a: &DenseMatrix,
    b: &DenseMatrix,
    p: usize,
) -> Result<f64, GreedyError> {
    if a.rows() != b.rows() {
        return Err(GreedyError::RowCountMismatch {
            left: a.rows(),
            right: b.rows(),
        });
    }
    if p < state.selected_mask.len() && state.selected_mask[p] {
        return Err(GreedyError::InadmissibleColumn { index: p });
    }
    let iteration = state.iteration() + 1;

    // δ = AᵀA_{:p} − Σ_r ω_p^(r)·ω^(r)
    let mut delta = gram_column(a, p)?;
    for omega in &state.omega_hist {
        axpy(-omega[p], omega, &mut delta);
    }
    let delta_p = delta[p];
    if delta_p <= 0.0 {
        return Err(GreedyError::NumericalBreakdown { iteration, delta_p });
    }
    let inv_root = 1.0 / delta_p.sqrt();
    let omega: Vec<f64> = delta.iter().map(|d| d * inv_root).collect();

    // γ = BᵀA_{:p} − Σ_r ω_p^(r)·υ^(r)
    let mut gamma = cross_gram_column(b, a, p)?;
    for (omega_r, upsilon_r) in state.omega_hist.iter().zip(&state.upsilon_hist) {
        axpy(-omega_r[p], upsilon_r, &mut gamma);
    }
    let upsilon: Vec<f64> = gamma.iter().map(|c| c * inv_root).collect();

    let gain = state.f[p] / state.g[p];
    if !gain.is_finite() {
        return Err(GreedyError::InadmissibleColumn { index: p });
    }

    // f ← f − 2·(ω ∘ (AᵀBυ − Σ_r (υ^(r)ᵀυ)·ω^(r))) + ‖υ‖²·(ω ∘ ω)
    // AᵀBυ is computed as Aᵀ(Bυ): the product AᵀB itself is never formed.
    let b_upsilon = b.mul_vec(&upsilon);
    let mut h_t_upsilon = a.mul_transpose_vec(&b_upsilon);
    for (omega_r, upsilon_r) in state.omega_hist.iter().zip(&state.upsilon_hist) {
        let coef = crate::matrix::dot(upsilon_r, &upsilon);
        axpy(-coef, omega_r, &mut h_t_upsilon);
    }
    let upsilon_sq = norm_sq(&upsilon);
    for i in 0..state.f.len() {
        let w = omega[i];
        state.f[i] += w * (upsilon_sq * w - 2.0 * h_t_upsilon[i]);
        state.g[i] -= w * w;
    }

    state.objective -= gain;
    state.selected.push(p);
    state.selected_mask[p] = true;
    state.omega_hist.push(omega);
    state.upsilon_hist.push(upsilon);
    Ok(gain)
}

/// Recompute f and g from explicit residuals (the slow, direct route),
/// discarding accumulated drift. Selection history and the objective trace
/// are left untouched.
fn refresh_from_residuals(
    state: &mut SelectionState,
    a: &DenseMatrix,
    b: &DenseMatrix,
) -> Result<(), GreedyError> {
    let (e, f_resid) = if state.selected.is_empty() {
        (a.clone(), b.clone())
    } else {
        let pa = oracle::projection_apply(a, &state.selected, a)?.matrix;
        let pb = oracle::projection_apply(a, &state.selected, b)?.matrix;
        (a.sub(&pa), b.sub(&pb))
    };
    for i in 0..a.cols() {
        let ei = e.column(i);
        state.g[i] = norm_sq(ei);
        state.f[i] = (0..f_resid.cols())
            .map(|c| {
                let d = crate::matrix::dot(f_resid.column(c), ei);
                d * d
            })
            .sum();
    }
    Ok(())
}

/// Run the whole selection: initialization plus up to `l` rounds of
/// scan-and-update, stopping early when the pool is exhausted.
pub fn greedy_select(
    a: &DenseMatrix,
    b: &DenseMatrix,
    l: usize,
    tol: &ToleranceConfig,
) -> Result<GreedyReport, GreedyError> {
    if l == 0 || l > a.cols() {
        return Err(GreedyError::SubsetSizeOutOfRange { l, cols: a.cols() });
    }
    if !(tol.eps_admit >= 0.0 && tol.eps_stop >= 0.0) {
        return Err(GreedyError::InvalidTolerance {
            eps_admit: tol.eps_admit,
            eps_stop: tol.eps_stop,
        });
    }
    let mut state = init_state(a, b)?;
    let mut iterations = Vec::with_capacity(l);
    let mut refresh_iterations = Vec::new();
    let mut stopped_early = None;

    for _ in 0..l {
        match select_next(&state, tol) {
            NextColumn::Column(p) => {
                let gain = update_state(&mut state, a, b, p)?;
                iterations.push(IterationRecord {
                    index: p,
                    gain,
                    objective_after: state.objective(),
                });
                if let Some(every) = tol.refresh_every {
                    if every > 0 && state.iteration() % every == 0 {
                        refresh_from_residuals(&mut state, a, b)?;
                        refresh_iterations.push(state.iteration());
                    }
                }
            }
            NextColumn::Exhausted(reason) => {
                stopped_early = Some(reason);
                break;
            }
        }
    }

    Ok(GreedyReport {
        selected: state.selected().to_vec(),
        iterations,
        initial_objective: state.initial_objective(),
        final_objective: state.objective(),
        stopped_early,
        refresh_iterations,
        tolerances: tol.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_matrix() -> DenseMatrix {
        DenseMatrix::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap()
    }

    fn assert_vec_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn init_worked_example() {
        let a = example_matrix();
        let state = init_state(&a, &a).unwrap();
        assert_eq!(state.f(), &[2.0, 2.0, 6.0]);
        assert_eq!(state.g(), &[1.0, 1.0, 2.0]);
        assert_eq!(state.objective(), 4.0);
        assert_eq!(state.iteration(), 0);
    }

    #[test]
    fn init_identity_single_target() {
        let eye = DenseMatrix::identity(3);
        let e2 = DenseMatrix::from_column(vec![0.0, 1.0, 0.0]).unwrap();
        let state = init_state(&eye, &e2).unwrap();
        assert_eq!(state.f(), &[0.0, 1.0, 0.0]);
        assert_eq!(state.g(), &[1.0, 1.0, 1.0]);
        assert_eq!(state.objective(), 1.0);
    }

    #[test]
    fn init_zero_target() {
        let a = example_matrix();
        let b = DenseMatrix::zeros(2, 2);
        let state = init_state(&a, &b).unwrap();
        assert!(state.f().iter().all(|&v| v == 0.0));
        assert_eq!(state.objective(), 0.0);
    }

    #[test]
    fn init_rejects_row_mismatch() {
        let a = example_matrix();
        let b = DenseMatrix::zeros(3, 1);
        assert!(matches!(
            init_state(&a, &b),
            Err(GreedyError::RowCountMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn init_paths_agree() {
        // Shapes on both sides of the cost crossover give the same f.
        let mut rng = crate::rng::SplitMix64::new(11);
        for (m, n, r) in [(3usize, 12usize, 12usize), (6, 4, 3), (40, 50, 45)] {
            let a = DenseMatrix::from_fn(m, n, |_, _| rng.next_in(-1.0, 1.0));
            let b = DenseMatrix::from_fn(m, r, |_, _| rng.next_in(-1.0, 1.0));
            let direct: Vec<f64> = (0..n)
                .map(|i| {
                    (0..r)
                        .map(|c| {
                            let d = crate::matrix::dot(b.column(c), a.column(i));
                            d * d
                        })
                        .sum()
                })
                .collect();
            let f = initial_numerators(&a, &b);
            for (got, want) in f.iter().zip(&direct) {
                assert!((got - want).abs() <= 1e-10 * want.max(1.0));
            }
        }
    }

    #[test]
    fn select_next_prefers_best_ratio_then_smallest_index() {
        let a = example_matrix();
        let state = init_state(&a, &a).unwrap();
        // Ratios are (2, 2, 3).
        assert_eq!(
            select_next(&state, &ToleranceConfig::default()),
            NextColumn::Column(2)
        );

        // All-equal ratios: smallest index wins.
        let eye = DenseMatrix::identity(3);
        let ones = DenseMatrix::from_column(vec![1.0, 1.0, 1.0]).unwrap();
        let state = init_state(&eye, &ones).unwrap();
        assert_eq!(
            select_next(&state, &ToleranceConfig::default()),
            NextColumn::Column(0)
        );
    }

    #[test]
    fn select_next_exhausts_on_zero_source() {
        let a = DenseMatrix::zeros(2, 2);
        let b = DenseMatrix::zeros(2, 1);
        let state = init_state(&a, &b).unwrap();
        assert_eq!(
            select_next(&state, &ToleranceConfig::default()),
            NextColumn::Exhausted(StopReason::SpanExhausted)
        );
    }

    #[test]
    fn update_worked_example() {
        let a = example_matrix();
        let mut state = init_state(&a, &a).unwrap();
        let gain = update_state(&mut state, &a, &a, 2).unwrap();
        assert_eq!(gain, 3.0);
        assert_eq!(state.objective(), 1.0);
        assert_vec_close(state.g(), &[0.5, 0.5, 0.0], 1e-15);
        assert_vec_close(state.f(), &[0.5, 0.5, 0.0], 1e-14);
        let root_half = std::f64::consts::FRAC_1_SQRT_2;
        assert_vec_close(
            &state.omega_history()[0],
            &[root_half, root_half, 2.0 * root_half],
            1e-15,
        );
        assert_eq!(state.omega_history()[0], state.upsilon_history()[0]);

        // Second selection spans the whole plane: objective hits zero.
        let gain = update_state(&mut state, &a, &a, 0).unwrap();
        assert!((gain - 1.0).abs() < 1e-12);
        assert!(state.objective().abs() < 1e-12);
        assert_eq!(state.selected(), &[2, 0]);
    }

    #[test]
    fn update_orthonormal_columns_decouple() {
        let eye = DenseMatrix::identity(2);
        let mut state = init_state(&eye, &eye).unwrap();
        let gain = update_state(&mut state, &eye, &eye, 0).unwrap();
        assert_eq!(gain, 1.0);
        assert_eq!(state.g(), &[0.0, 1.0]);
        assert_eq!(state.f(), &[0.0, 1.0]);
        assert_eq!(state.objective(), 1.0);
        assert_eq!(state.omega_history()[0], vec![1.0, 0.0]);
    }

    #[test]
    fn update_rejects_reselection_and_breakdown() {
        let eye = DenseMatrix::identity(2);
        let mut state = init_state(&eye, &eye).unwrap();
        update_state(&mut state, &eye, &eye, 0).unwrap();
        assert!(matches!(
            update_state(&mut state, &eye, &eye, 0),
            Err(GreedyError::InadmissibleColumn { index: 0 })
        ));

        // Duplicate columns: selecting the twin afterwards has no residual
        // energy left, which surfaces as a breakdown of the pivot value.
        let dup = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let mut state = init_state(&dup, &dup).unwrap();
        update_state(&mut state, &dup, &dup, 0).unwrap();
        assert!(matches!(
            update_state(&mut state, &dup, &dup, 1),
            Err(GreedyError::NumericalBreakdown { iteration: 2, .. })
        ));
    }

    #[test]
    fn greedy_select_worked_examples() {
        let a = example_matrix();
        let report = greedy_select(&a, &a, 1, &ToleranceConfig::default()).unwrap();
        assert_eq!(report.selected, vec![2]);
        assert_eq!(report.final_objective, 1.0);
        assert_eq!(report.initial_objective, 4.0);
        assert!(report.stopped_early.is_none());

        let eye = DenseMatrix::identity(3);
        let e2 = DenseMatrix::from_column(vec![0.0, 1.0, 0.0]).unwrap();
        let report = greedy_select(&eye, &e2, 1, &ToleranceConfig::default()).unwrap();
        assert_eq!(report.selected, vec![1]);
        assert_eq!(report.final_objective, 0.0);
    }

    #[test]
    fn greedy_select_early_stop_only_when_enabled() {
        let eye = DenseMatrix::identity(3);
        let e2 = DenseMatrix::from_column(vec![0.0, 1.0, 0.0]).unwrap();

        let eager = ToleranceConfig {
            eps_stop: 1e-12,
            ..ToleranceConfig::default()
        };
        let report = greedy_select(&eye, &e2, 3, &eager).unwrap();
        assert_eq!(report.selected, vec![1]);
        assert_eq!(report.stopped_early, Some(StopReason::GainBelowThreshold));

        // Disabled threshold: zero-gain columns keep being selected.
        let report = greedy_select(&eye, &e2, 3, &ToleranceConfig::default()).unwrap();
        assert_eq!(report.selected, vec![1, 0, 2]);
        assert!(report.stopped_early.is_none());
    }

    #[test]
    fn greedy_select_span_exhaustion() {
        // Rank-1 source: the second request cannot be filled.
        let dup = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let report = greedy_select(&dup, &dup, 2, &ToleranceConfig::default()).unwrap();
        assert_eq!(report.selected.len(), 1);
        assert_eq!(report.stopped_early, Some(StopReason::SpanExhausted));
    }

    #[test]
    fn greedy_select_validates_l_and_tolerances() {
        let a = example_matrix();
        assert!(matches!(
            greedy_select(&a, &a, 0, &ToleranceConfig::default()),
            Err(GreedyError::SubsetSizeOutOfRange { l: 0, cols: 3 })
        ));
        assert!(matches!(
            greedy_select(&a, &a, 4, &ToleranceConfig::default()),
            Err(GreedyError::SubsetSizeOutOfRange { l: 4, cols: 3 })
        ));
        let bad = ToleranceConfig {
            eps_admit: -1.0,
            ..ToleranceConfig::default()
        };
        assert!(matches!(
            greedy_select(&a, &a, 1, &bad),
            Err(GreedyError::InvalidTolerance { .. })
        ));
    }

    #[test]
    fn refresh_matches_unrefreshed_run() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let a = DenseMatrix::from_fn(6, 8, |_, _| rng.next_in(-1.0, 1.0));
        let b = DenseMatrix::from_fn(6, 4, |_, _| rng.next_in(-1.0, 1.0));

        let plain = greedy_select(&a, &b, 4, &ToleranceConfig::default()).unwrap();
        let refreshed_cfg = ToleranceConfig {
            refresh_every: Some(1),
            ..ToleranceConfig::default()
        };
        let refreshed = greedy_select(&a, &b, 4, &refreshed_cfg).unwrap();

        assert_eq!(plain.selected, refreshed.selected);
        assert_eq!(refreshed.refresh_iterations, vec![1, 2, 3, 4]);
        assert!((plain.final_objective - refreshed.final_objective).abs() < 1e-9);
    }

    #[test]
    fn objective_trace_is_consistent() {
        let mut rng = crate::rng::SplitMix64::new(9);
        let a = DenseMatrix::from_fn(5, 7, |_, _| rng.next_in(-1.0, 1.0));
        let b = DenseMatrix::from_fn(5, 3, |_, _| rng.next_in(-1.0, 1.0));
        let report = greedy_select(&a, &b, 3, &ToleranceConfig::default()).unwrap();

        let mut running = report.initial_objective;
        for record in &report.iterations {
            assert!(record.gain >= -1e-12 * report.initial_objective);
            running -= record.gain;
            assert!((running - record.objective_after).abs() < 1e-12);
        }
        assert_eq!(
            report.iterations.last().unwrap().objective_after,
            report.final_objective
        );
    }
}
