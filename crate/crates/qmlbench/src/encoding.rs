//! Classical preprocessing and quantum feature-map construction.
//!
//! Features are affinely rescaled into [0, π] per column (rotation angles
//! need a bounded range, and [0, π] avoids the 0 ≡ 2π collision), optionally
//! reduced to the top-k columns by point-biserial correlation with the
//! label, and then embedded into a quantum state by a feature-map circuit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{Angle, Circuit, Gate};

/// Which feature-map circuit to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureMapKind {
    /// H layer then RZ(2xᵢ) per qubit, repeated `depth` times.
    Angle,
    /// Angle layer plus entangling CX–RZ(2(π−xᵢ)(π−xⱼ))–CX blocks.
    Zz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    /// Pairs (0,1), (1,2), …, (n−2,n−1).
    Linear,
    /// All pairs (i,j) with i < j.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureMapSpec {
    pub n_qubits: usize,
    pub depth: usize,
    pub entanglement: Entanglement,
    pub kind: FeatureMapKind,
}

impl FeatureMapSpec {
    /// The default map: ZZ kind, depth 2, linear entanglement.
    pub fn zz(n_qubits: usize) -> Self {
        FeatureMapSpec {
            n_qubits,
            depth: 2,
            entanglement: Entanglement::Linear,
            kind: FeatureMapKind::Zz,
        }
    }

    pub fn angle(n_qubits: usize) -> Self {
        FeatureMapSpec {
            n_qubits,
            depth: 1,
            entanglement: Entanglement::Linear,
            kind: FeatureMapKind::Angle,
        }
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n_qubits;
        match self.entanglement {
            Entanglement::Linear => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Entanglement::Full => {
                let mut v = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        v.push((i, j));
                    }
                }
                v
            }
        }
    }
}

/// Per-feature (min, max) learned from training rows; constant columns are
/// flagged and map to the interval midpoint π/2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingSpec {
    ranges: Vec<(f64, f64)>,
}

impl ScalingSpec {
    pub fn dim(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }
}

/// Record per-column min/max from the training rows only.
pub fn fit_scaler(train_features: &[Vec<f64>]) -> Result<ScalingSpec> {
    let Some(first) = train_features.first() else {
        return Err(Error::Data("cannot fit a scaler on an empty matrix".into()));
    };
    let d = first.len();
    let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); d];
    for row in train_features {
        if row.len() != d {
            return Err(Error::Dimension { expected: d, got: row.len(), context: "ragged feature matrix" });
        }
        for (j, &v) in row.iter().enumerate() {
            ranges[j].0 = ranges[j].0.min(v);
            ranges[j].1 = ranges[j].1.max(v);
        }
    }
    Ok(ScalingSpec { ranges })
}

/// Affine map of each component into [0, π]; out-of-range values clamp,
/// since held-out data routinely exceeds training ranges.
pub fn scale(spec: &ScalingSpec, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != spec.ranges.len() {
        return Err(Error::Dimension {
            expected: spec.ranges.len(),
            got: x.len(),
            context: "scale input",
        });
    }
    Ok(x.iter()
        .zip(&spec.ranges)
        .map(|(&v, &(lo, hi))| {
            if hi == lo {
                PI / 2.0
            } else {
                ((v - lo) / (hi - lo)).clamp(0.0, 1.0) * PI
            }
        })
        .collect())
}

pub fn scale_rows(spec: &ScalingSpec, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    rows.iter().map(|r| scale(spec, r)).collect()
}

/// Features sorted by decreasing |point-biserial correlation| with the
/// binary label; ties break toward the lower column index.
pub fn rank_features(features: &[Vec<f64>], labels: &[u8]) -> Result<Vec<(usize, f64)>> {
    if features.len() != labels.len() {
        return Err(Error::Dimension {
            expected: features.len(),
            got: labels.len(),
            context: "rank_features labels",
        });
    }
    let m = labels.len();
    if m < 2 {
        return Err(Error::Data("feature ranking needs at least 2 rows".into()));
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    if n_pos == 0 || n_pos == m {
        return Err(Error::Data("feature ranking needs both classes present".into()));
    }
    let d = features[0].len();
    let y_mean = n_pos as f64 / m as f64;
    let y_var: f64 = y_mean * (1.0 - y_mean);

    let mut scored: Vec<(usize, f64)> = (0..d)
        .map(|j| {
            let col: Vec<f64> = features.iter().map(|r| r[j]).collect();
            let mean = col.iter().sum::<f64>() / m as f64;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m as f64;
            if var == 0.0 {
                return (j, 0.0);
            }
            let cov = col
                .iter()
                .zip(labels)
                .map(|(&v, &y)| (v - mean) * (y as f64 - y_mean))
                .sum::<f64>()
                / m as f64;
            (j, (cov / (var * y_var).sqrt()).abs())
        })
        .collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(scored)
}

/// Indices of the k top-ranked features, in original column order.
pub fn top_k_indices(ranking: &[(usize, f64)], k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > ranking.len() {
        return Err(Error::Parameter(format!(
            "k must be in 1..={}, got {k}",
            ranking.len()
        )));
    }
    let mut idx: Vec<usize> = ranking[..k].iter().map(|&(j, _)| j).collect();
    idx.sort_unstable();
    Ok(idx)
}

/// Keep the k top-ranked columns, preserving original column order.
pub fn reduce(features: &[Vec<f64>], ranking: &[(usize, f64)], k: usize) -> Result<Vec<Vec<f64>>> {
    let idx = top_k_indices(ranking, k)?;
    Ok(features
        .iter()
        .map(|row| idx.iter().map(|&j| row[j]).collect())
        .collect())
}

/// Build the fully bound feature-map circuit Φ(x) for a scaled vector.
pub fn build_feature_map(x: &[f64], spec: &FeatureMapSpec) -> Result<Circuit> {
    if x.len() != spec.n_qubits {
        return Err(Error::Dimension {
            expected: spec.n_qubits,
            got: x.len(),
            context: "feature map input",
        });
    }
    if spec.depth == 0 {
        return Err(Error::Parameter("feature map depth must be >= 1".into()));
    }
    for (i, &v) in x.iter().enumerate() {
        if !(-1e-9..=PI + 1e-9).contains(&v) {
            return Err(Error::Encoding(format!(
                "component {i} = {v} is outside the scaled range [0, π]"
            )));
        }
    }
    let n = spec.n_qubits;
    let mut c = Circuit::new(n);
    for _ in 0..spec.depth {
        for q in 0..n {
            c.push(Gate::h(q));
        }
        for (q, &xq) in x.iter().enumerate() {
            c.push(Gate::rz(q, Angle::Fixed(2.0 * xq)));
        }
        if spec.kind == FeatureMapKind::Zz {
            for (i, j) in spec.pairs() {
                c.push(Gate::cx(i, j));
                c.push(Gate::rz(j, Angle::Fixed(2.0 * (PI - x[i]) * (PI - x[j]))));
                c.push(Gate::cx(i, j));
            }
        }
    }
    Ok(c)
}
