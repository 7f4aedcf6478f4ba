//! Binary SVM on a precomputed kernel, trained by sequential minimal
//! optimization with second-order working-set selection.
//!
//! The solver works on the dual
//!   min f(α) = ½ αᵀQα − Σα,  Q_ij = yᵢyⱼK_ij,  0 ≤ α ≤ C,  yᵀα = 0
//! and maintains the gradient G = Qα − 1. One iteration updates one
//! maximal-violating pair; a sweep is m iterations. Everything is
//! deterministic: selection scans indices in order and ties resolve to the
//! first candidate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{KernelMatrix, KernelProvenance};

const TAU: f64 = 1e-12;
/// Support vectors are the α above this threshold.
pub const SUPPORT_EPS: f64 = 1e-8;
/// Hard cap on solver sweeps.
pub const MAX_SWEEPS_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverInfo {
    pub iterations: usize,
    pub sweeps: usize,
    pub converged: bool,
    pub kkt_gap: f64,
    /// Dual objective after every pair update (non-decreasing).
    #[serde(skip)]
    pub objective_trace: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    /// αᵢ·yᵢ for every training point (zeros for non-support points).
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    /// Indices with αᵢ > [`SUPPORT_EPS`].
    pub support_indices: Vec<usize>,
    pub c: f64,
    pub provenance: KernelProvenance,
    pub seed: u64,
    pub info: SolverInfo,
}

/// Train on any precomputed kernel. The kernel must be symmetric; labels
/// must be ±1 with both classes present. Deterministic for fixed inputs.
pub fn train_svm(
    kernel: &KernelMatrix,
    labels: &[i8],
    c: f64,
    tol: f64,
    max_passes: usize,
    seed: u64,
) -> Result<SvmModel> {
    let m = kernel.m();
    if labels.len() != m {
        return Err(Error::Dimension { expected: m, got: labels.len(), context: "svm labels" });
    }
    if labels.iter().any(|&y| y != 1 && y != -1) {
        return Err(Error::Data("svm labels must be +1 or -1".into()));
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    if n_pos == 0 || n_pos == m {
        return Err(Error::Data("svm training needs both classes present".into()));
    }
    if c <= 0.0 {
        return Err(Error::Parameter(format!("svm C must be > 0, got {c}")));
    }
    if kernel.asymmetry() > 1e-10 {
        return Err(Error::Kernel(format!(
            "kernel matrix is not symmetric (max |K[i][j]-K[j][i]| = {:.3e})",
            kernel.asymmetry()
        )));
    }

    let y: Vec<f64> = labels.iter().map(|&v| v as f64).collect();
    let mut alpha = vec![0.0f64; m];
    let mut grad = vec![-1.0f64; m]; // G = Qα − 1 at α = 0
    let q = |i: usize, j: usize| y[i] * y[j] * kernel.get(i, j);

    let max_sweeps = max_passes.min(MAX_SWEEPS_CAP);
    let max_iterations = max_sweeps.saturating_mul(m).max(1);
    let mut objective_trace = Vec::new();
    let mut iterations = 0usize;
    let mut converged = false;
    let mut kkt_gap = f64::INFINITY;

    while iterations < max_iterations {
        // i: maximal -y·G over I_up; M: minimal -y·G over I_low
        let mut i_best: Option<usize> = None;
        let mut g_max = f64::NEG_INFINITY;
        let mut g_min = f64::INFINITY;
        for t in 0..m {
            let v = -y[t] * grad[t];
            let in_up = (y[t] > 0.0 && alpha[t] < c) || (y[t] < 0.0 && alpha[t] > 0.0);
            let in_low = (y[t] > 0.0 && alpha[t] > 0.0) || (y[t] < 0.0 && alpha[t] < c);
            if in_up && v > g_max {
                g_max = v;
                i_best = Some(t);
            }
            if in_low && v < g_min {
                g_min = v;
            }
        }
        kkt_gap = g_max - g_min;
        if kkt_gap <= tol {
            converged = true;
            break;
        }
        let i = i_best.expect("both classes present implies nonempty I_up");

        // j: second-order selection, largest guaranteed objective decrease
        let mut j_best: Option<usize> = None;
        let mut best_gain = f64::NEG_INFINITY;
        for t in 0..m {
            let in_low = (y[t] > 0.0 && alpha[t] > 0.0) || (y[t] < 0.0 && alpha[t] < c);
            if !in_low {
                continue;
            }
            let b = g_max + y[t] * grad[t]; // g_max − (−y·G)
            if b <= 0.0 {
                continue;
            }
            let mut a = kernel.get(i, i) + kernel.get(t, t) - 2.0 * kernel.get(i, t);
            if a <= 0.0 {
                a = TAU;
            }
            let gain = b * b / a;
            if gain > best_gain {
                best_gain = gain;
                j_best = Some(t);
            }
        }
        let Some(j) = j_best else { break };

        // analytic two-variable update with box clipping
        let (old_ai, old_aj) = (alpha[i], alpha[j]);
        let mut a = kernel.get(i, i) + kernel.get(j, j) - 2.0 * kernel.get(i, j);
        if a <= 0.0 {
            a = TAU;
        }
        if y[i] != y[j] {
            let delta = (-grad[i] - grad[j]) / a;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 && alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = diff;
            } else if diff <= 0.0 && alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / a;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let (di, dj) = (alpha[i] - old_ai, alpha[j] - old_aj);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += q(i, t) * di + q(j, t) * dj;
        }
        iterations += 1;

        // dual objective W = (Σα − αᵀG)/2, from G = Qα − 1
        let a_sum: f64 = alpha.iter().sum();
        let ag: f64 = alpha.iter().zip(&grad).map(|(a, g)| a * g).sum();
        objective_trace.push((a_sum - ag) / 2.0);
    }

    // bias from free support vectors, else midpoint of the violating bounds
    let mut sum_free = 0.0;
    let mut n_free = 0usize;
    let mut ub = f64::INFINITY;
    let mut lb = f64::NEG_INFINITY;
    for t in 0..m {
        let yg = y[t] * grad[t];
        if alpha[t] > SUPPORT_EPS && alpha[t] < c - SUPPORT_EPS {
            sum_free += yg;
            n_free += 1;
        } else if (alpha[t] >= c - SUPPORT_EPS && y[t] < 0.0)
            || (alpha[t] <= SUPPORT_EPS && y[t] > 0.0)
        {
            ub = ub.min(yg);
        } else {
            lb = lb.max(yg);
        }
    }
    let rho = if n_free > 0 { sum_free / n_free as f64 } else { (ub + lb) / 2.0 };
    let bias = -rho;

    let dual_coefs: Vec<f64> = alpha.iter().zip(&y).map(|(a, yy)| a * yy).collect();
    let support_indices: Vec<usize> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > SUPPORT_EPS)
        .map(|(t, _)| t)
        .collect();
    let sweeps = iterations.div_ceil(m.max(1));

    Ok(SvmModel {
        dual_coefs,
        bias,
        support_indices,
        c,
        provenance: kernel.provenance().clone(),
        seed,
        info: SolverInfo { iterations, sweeps, converged, kkt_gap, objective_trace },
    })
}

/// f(x) = Σᵢ dual_coefs[i]·K(x, xᵢ) + bias for one kernel row.
pub fn decision_value(model: &SvmModel, kernel_row: &[f64]) -> Result<f64> {
    if kernel_row.len() != model.dual_coefs.len() {
        return Err(Error::Dimension {
            expected: model.dual_coefs.len(),
            got: kernel_row.len(),
            context: "svm kernel row",
        });
    }
    Ok(model
        .dual_coefs
        .iter()
        .zip(kernel_row)
        .map(|(c, k)| c * k)
        .sum::<f64>()
        + model.bias)
}

/// Sign of the decision value per row; an exact zero maps to +1.
pub fn predict(model: &SvmModel, kernel_rows: &[Vec<f64>]) -> Result<Vec<i8>> {
    kernel_rows
        .iter()
        .map(|row| decision_value(model, row).map(|v| if v >= 0.0 { 1 } else { -1 }))
        .collect()
}
