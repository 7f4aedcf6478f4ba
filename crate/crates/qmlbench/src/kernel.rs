//! Fidelity quantum kernel K(x,z) = |⟨Φ(x)|Φ(z)⟩|² and the classical RBF
//! kernel used by the baseline SVM.
//!
//! Gram matrices are computed on the upper triangle only and mirrored,
//! which halves the cost and makes symmetry exact regardless of the
//! parallel schedule. Entries are pure functions, so results are
//! bit-identical for any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::encoding::{build_feature_map, FeatureMapSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum KernelProvenance {
    Quantum(FeatureMapSpec),
    Rbf { gamma: f64 },
}

/// m×m real symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    m: usize,
    entries: Vec<f64>,
    provenance: KernelProvenance,
}

impl KernelMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }

    pub fn provenance(&self) -> &KernelProvenance {
        &self.provenance
    }

    /// Max |K[i][j] − K[j][i]|; zero by construction here, but external
    /// matrices fed to the SVM are checked through this.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.m {
            for j in i + 1..self.m {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Row-major full-matrix CSV with 17 significant digits, for
    /// cross-checking against external tools.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        for i in 0..self.m {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn from_entries(m: usize, entries: Vec<f64>, provenance: KernelProvenance) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::Dimension {
                expected: m * m,
                got: entries.len(),
                context: "kernel entries",
            });
        }
        Ok(KernelMatrix { m, entries, provenance })
    }
}

/// One fidelity-kernel value: simulate |Φ(x)⟩ and |Φ(z)⟩ from |0…0⟩ and
/// return the squared magnitude of their inner product.
pub fn kernel_entry(x: &[f64], z: &[f64], spec: &FeatureMapSpec) -> Result<f64> {
    if x.len() != z.len() {
        return Err(Error::Dimension { expected: x.len(), got: z.len(), context: "kernel entry" });
    }
    let sx = build_feature_map(x, spec)?.run(&[])?;
    let sz = build_feature_map(z, spec)?.run(&[])?;
    Ok(sx.inner_product(&sz)?.norm_sqr())
}

/// Quantum Gram matrix over the rows of `x`.
pub fn kernel_matrix(x: &[Vec<f64>], spec: &FeatureMapSpec) -> Result<KernelMatrix> {
    let m = x.len();
    if m == 0 {
        return Err(Error::Data("kernel matrix needs at least one row".into()));
    }
    let upper: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let computed: Vec<f64> = upper
        .par_iter()
        .map(|&(i, j)| kernel_entry(&x[i], &x[j], spec))
        .collect::<Result<_>>()?;
    let mut entries = vec![0.0; m * m];
    for (&(i, j), &v) in upper.iter().zip(&computed) {
        entries[i * m + j] = v;
        entries[j * m + i] = v;
    }
    KernelMatrix::from_entries(m, entries, KernelProvenance::Quantum(*spec))
}

/// Rectangular test-vs-train fidelity kernel block, row i = test point i.
pub fn cross_kernel(
    x_test: &[Vec<f64>],
    x_train: &[Vec<f64>],
    spec: &FeatureMapSpec,
) -> Result<Vec<Vec<f64>>> {
    if let (Some(a), Some(b)) = (x_test.first(), x_train.first()) {
        if a.len() != b.len() {
            return Err(Error::Dimension {
                expected: b.len(),
                got: a.len(),
                context: "cross kernel column counts",
            });
        }
    }
    x_test
        .par_iter()
        .map(|t| x_train.iter().map(|r| kernel_entry(t, r, spec)).collect())
        .collect()
}

/// Classical RBF Gram matrix: exp(−gamma·‖xᵢ−xⱼ‖²).
pub fn rbf_kernel_matrix(x: &[Vec<f64>], gamma: f64) -> Result<KernelMatrix> {
    if gamma <= 0.0 {
        return Err(Error::Parameter(format!("rbf gamma must be > 0, got {gamma}")));
    }
    let m = x.len();
    if m == 0 {
        return Err(Error::Data("kernel matrix needs at least one row".into()));
    }
    let mut entries = vec![0.0; m * m];
    for i in 0..m {
        entries[i * m + i] = 1.0;
        for j in i + 1..m {
            let v = rbf_entry(&x[i], &x[j], gamma);
            entries[i * m + j] = v;
            entries[j * m + i] = v;
        }
    }
    KernelMatrix::from_entries(m, entries, KernelProvenance::Rbf { gamma })
}

/// Rectangular test-vs-train RBF block.
pub fn rbf_cross_kernel(x_test: &[Vec<f64>], x_train: &[Vec<f64>], gamma: f64) -> Result<Vec<Vec<f64>>> {
    if gamma <= 0.0 {
        return Err(Error::Parameter(format!("rbf gamma must be > 0, got {gamma}")));
    }
    Ok(x_test
        .iter()
        .map(|t| x_train.iter().map(|r| rbf_entry(t, r, gamma)).collect())
        .collect())
}

fn rbf_entry(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// Default gamma heuristic: 1/d.
pub fn default_gamma(d: usize) -> f64 {
    1.0 / d.max(1) as f64
}
