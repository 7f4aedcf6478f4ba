//! CSV ingestion, stratified splits and synthetic dataset generators.
//!
//! File-level labels are {0, 1}; the ±1 mapping the SVM needs happens at
//! the SVM boundary, nowhere else.

use std::f64::consts::PI;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::encoding::FeatureMapSpec;
use crate::error::{Error, Result};
use crate::variational::{build_ansatz, VariationalKind, VqcModel};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }

    /// Rows by index, preserving order.
    pub fn select_rows(&self, idx: &[usize]) -> Dataset {
        Dataset {
            feature_names: self.feature_names.clone(),
            features: idx.iter().map(|&i| self.features[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Columns by index, preserving order and names.
    pub fn select_columns(&self, idx: &[usize]) -> Dataset {
        Dataset {
            feature_names: idx.iter().map(|&j| self.feature_names[j].clone()).collect(),
            features: self
                .features
                .iter()
                .map(|row| idx.iter().map(|&j| row[j]).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&y| y == 1).count();
        (self.labels.len() - pos, pos)
    }
}

/// Result of a CSV ingestion: the dataset plus how many rows were dropped
/// because a retained cell failed to parse.
#[derive(Clone, Debug)]
pub struct CsvLoad {
    pub dataset: Dataset,
    pub rejected_rows: usize,
}

/// Load a headered CSV. `label_column` must hold only 0/1 values;
/// `drop_columns` (identifier columns and the like) are removed before
/// parsing. Row order is preserved; rows with unparseable retained cells
/// are rejected and counted.
pub fn load_csv(path: &Path, label_column: &str, drop_columns: &[String]) -> Result<CsvLoad> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("cannot open {}: {e}", path.display()),
            )),
            _ => Error::Schema(e.to_string()),
        })?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Schema(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    let label_idx = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::Schema(format!("label column '{label_column}' not found")))?;
    let keep: Vec<usize> = (0..headers.len())
        .filter(|&j| j != label_idx && !drop_columns.contains(&headers[j]))
        .collect();
    let feature_names: Vec<String> = keep.iter().map(|&j| headers[j].clone()).collect();

    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut rejected = 0usize;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Schema(e.to_string()))?;
        let label_raw = record.get(label_idx).unwrap_or("").trim();
        let label = match label_raw {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(Error::Schema(format!(
                    "label column '{label_column}' must be 0/1, found '{other}'"
                )))
            }
        };
        let parsed: Option<Vec<f64>> = keep
            .iter()
            .map(|&j| record.get(j).and_then(|c| c.trim().parse::<f64>().ok()))
            .collect();
        match parsed {
            Some(row) => {
                features.push(row);
                labels.push(label);
            }
            None => rejected += 1,
        }
    }
    if labels.is_empty() {
        return Err(Error::Data(format!("{} holds no usable rows", path.display())));
    }
    Ok(CsvLoad { dataset: Dataset { feature_names, features, labels }, rejected_rows: rejected })
}

/// Seeded train/test split. Stratified keeps per-class proportions within
/// one sample. Both sides keep original row order, so the split is a clean
/// partition by row identity.
pub fn split(
    dataset: &Dataset,
    train_fraction: f64,
    seed: u64,
    stratified: bool,
) -> Result<(Dataset, Dataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Parameter(format!(
            "train fraction must be in (0, 1), got {train_fraction}"
        )));
    }
    let m = dataset.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx: Vec<usize> = Vec::new();
    let mut test_idx: Vec<usize> = Vec::new();

    let pick = |mut idx: Vec<usize>, rng: &mut ChaCha8Rng| {
        for i in (1..idx.len()).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        let n_train = (train_fraction * idx.len() as f64).round() as usize;
        (idx[..n_train].to_vec(), idx[n_train..].to_vec())
    };

    if stratified {
        for class in [0u8, 1u8] {
            let idx: Vec<usize> =
                (0..m).filter(|&i| dataset.labels[i] == class).collect();
            let (tr, te) = pick(idx, &mut rng);
            train_idx.extend(tr);
            test_idx.extend(te);
        }
    } else {
        let (tr, te) = pick((0..m).collect(), &mut rng);
        train_idx = tr;
        test_idx = te;
    }
    if train_idx.is_empty() || test_idx.is_empty() {
        return Err(Error::Parameter(format!(
            "train fraction {train_fraction} leaves an empty side for {m} rows"
        )));
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    Ok((dataset.select_rows(&train_idx), dataset.select_rows(&test_idx)))
}

fn generic_names(d: usize) -> Vec<String> {
    (0..d).map(|j| format!("f{j}")).collect()
}

/// Quantum-separable synthetic data: draw scaled vectors uniformly, label
/// each by the sign of a fixed VQC's readout, and keep only points with
/// |⟨Z⟩| ≥ gap so the boundary region is empty. Class counts stay within
/// 10% of balance by construction.
pub fn synth_adhoc(
    m: usize,
    spec: &FeatureMapSpec,
    theta_star: &[f64],
    gap: f64,
    seed: u64,
) -> Result<Dataset> {
    if !(0.0..1.0).contains(&gap) {
        return Err(Error::Parameter(format!("gap must be in [0, 1), got {gap}")));
    }
    if m < 2 {
        return Err(Error::Parameter("synth_adhoc needs m >= 2".into()));
    }
    let n = spec.n_qubits;
    if !theta_star.len().is_multiple_of(n) || theta_star.is_empty() {
        return Err(Error::Parameter(format!(
            "theta_star length {} is not a positive multiple of n_qubits {n}",
            theta_star.len()
        )));
    }
    let layers = theta_star.len() / n;
    let generator = VqcModel::new(
        theta_star.to_vec(),
        build_ansatz(n, layers)?,
        *spec,
        0,
        VariationalKind::Vqc,
    )?;

    // |pos − neg| ≤ 0.1·m requires pos ≤ 0.55·m; integer arithmetic keeps
    // the bound exact, and the ceil(m/2) floor keeps m fillable
    let max_per_class = (m * 11 / 20).max(m.div_ceil(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(m);
    let mut labels: Vec<u8> = Vec::with_capacity(m);
    let mut draws = 0usize;
    while labels.len() < m {
        draws += 1;
        if draws > 1_000_000 {
            return Err(Error::Generation(format!(
                "could not fill {m} points at gap {gap} within 10^6 draws"
            )));
        }
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..PI)).collect();
        let z = generator.z_value(&x)?;
        if z.abs() < gap {
            continue;
        }
        let label = u8::from(z >= 0.0);
        let count = labels.iter().filter(|&&y| y == label).count();
        if count >= max_per_class {
            continue;
        }
        features.push(x);
        labels.push(label);
    }
    Ok(Dataset { feature_names: generic_names(n), features, labels })
}

/// Two seeded Gaussian clusters centred at ±separation/2 along every axis,
/// unit variance, m/2 points each.
pub fn synth_blobs(m: usize, d: usize, separation: f64, seed: u64) -> Result<Dataset> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::Parameter(format!("m must be even and positive, got {m}")));
    }
    if separation < 0.0 {
        return Err(Error::Parameter("separation must be >= 0".into()));
    }
    if d == 0 {
        return Err(Error::Parameter("d must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for i in 0..m {
        let label = (i % 2) as u8;
        let centre = if label == 1 { separation / 2.0 } else { -separation / 2.0 };
        let row: Vec<f64> =
            (0..d).map(|_| centre + rng.sample::<f64, _>(StandardNormal)).collect();
        features.push(row);
        labels.push(label);
    }
    Ok(Dataset { feature_names: generic_names(d), features, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_small_fixture() {
        let f = write_temp("id,a,b,y\n1,0.5,2,0\n2,1.5,3,1\n3,2.5,4,0\n");
        let load = load_csv(f.path(), "y", &["id".to_string()]).unwrap();
        assert_eq!(load.dataset.len(), 3);
        assert_eq!(load.dataset.dim(), 2);
        assert_eq!(load.dataset.feature_names, vec!["a", "b"]);
        assert_eq!(load.dataset.labels, vec![0, 1, 0]);
        assert_eq!(load.rejected_rows, 0);
        // loading twice yields identical datasets
        let again = load_csv(f.path(), "y", &["id".to_string()]).unwrap();
        assert_eq!(load.dataset, again.dataset);
    }

    #[test]
    fn malformed_row_rejected_and_counted() {
        let f = write_temp("a,b,y\n0.5,2,0\nnot_a_number,3,1\n2.5,4,1\n");
        let load = load_csv(f.path(), "y", &[]).unwrap();
        assert_eq!(load.dataset.len(), 2);
        assert_eq!(load.rejected_rows, 1);
    }

    #[test]
    fn schema_errors() {
        let f = write_temp("a,b,y\n1,2,0\n");
        assert!(matches!(
            load_csv(f.path(), "missing", &[]),
            Err(Error::Schema(_))
        ));
        let g = write_temp("a,y\n1,2\n");
        assert!(matches!(load_csv(g.path(), "y", &[]), Err(Error::Schema(_))));
        assert!(matches!(
            load_csv(Path::new("/nonexistent/file.csv"), "y", &[]),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn split_is_disjoint_and_exhaustive() {
        let ds = synth_blobs(10, 2, 1.0, 0).unwrap();
        let (train, test) = split(&ds, 0.5, 42, false).unwrap();
        assert_eq!(train.len(), 5);
        assert_eq!(test.len(), 5);
        let mut all: Vec<Vec<f64>> =
            train.features.iter().chain(test.features.iter()).cloned().collect();
        let mut orig = ds.features.clone();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        orig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(all, orig);
    }

    #[test]
    fn stratified_split_keeps_proportions() {
        let ds = Dataset {
            feature_names: vec!["x".into()],
            features: (0..10).map(|i| vec![i as f64]).collect(),
            labels: vec![1, 1, 1, 1, 1, 1, 1, 1, 0, 0],
        };
        let (train, _test) = split(&ds, 0.5, 7, true).unwrap();
        let (neg, pos) = train.class_counts();
        assert_eq!(pos, 4);
        assert_eq!(neg, 1);
    }

    #[test]
    fn split_determinism_and_validation() {
        let ds = synth_blobs(20, 2, 1.0, 3).unwrap();
        let a = split(&ds, 0.3, 11, true).unwrap();
        let b = split(&ds, 0.3, 11, true).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert!(split(&ds, 0.0, 0, true).is_err());
        assert!(split(&ds, 1.0, 0, true).is_err());
        let tiny = synth_blobs(2, 1, 0.0, 0).unwrap();
        assert!(split(&tiny, 0.01, 0, false).is_err());
    }

    #[test]
    fn adhoc_labels_consistent_with_generator() {
        let spec = FeatureMapSpec::zz(2);
        let theta = vec![0.9, -1.2, 0.6, 0.4];
        let ds = synth_adhoc(60, &spec, &theta, 0.2, 5).unwrap();
        assert_eq!(ds.len(), 60);
        let generator = VqcModel::new(
            theta.clone(),
            build_ansatz(2, 2).unwrap(),
            spec,
            0,
            VariationalKind::Vqc,
        )
        .unwrap();
        for (x, &y) in ds.features.iter().zip(&ds.labels) {
            let z = generator.z_value(x).unwrap();
            assert!(z.abs() >= 0.2);
            assert_eq!(u8::from(z >= 0.0), y);
        }
        let (neg, pos) = ds.class_counts();
        assert!((neg as i64 - pos as i64).unsigned_abs() as usize <= 6);
    }

    #[test]
    fn adhoc_zero_gap_accepts_every_draw() {
        let spec = FeatureMapSpec::zz(2);
        // balance capping may still skip draws, so just check it fills
        let ds = synth_adhoc(20, &spec, &[0.4, 0.7], 0.0, 1).unwrap();
        assert_eq!(ds.len(), 20);
    }

    #[test]
    fn adhoc_impossible_gap_errors() {
        // gap ≥ 1 is a parameter error
        assert!(synth_adhoc(10, &FeatureMapSpec::zz(2), &[0.1, 0.1], 1.0, 0).is_err());
        // a depth-1 single-qubit zz map (no pairs) is H then a pure phase,
        // so with a tiny rotation |⟨Z⟩| stays near 0 and a gap of 0.5 is
        // unreachable
        let spec = FeatureMapSpec { depth: 1, ..FeatureMapSpec::zz(1) };
        let res = synth_adhoc(10, &spec, &[1e-4], 0.5, 0);
        assert!(matches!(res, Err(Error::Generation(_))));
    }

    #[test]
    fn blobs_shape_and_determinism() {
        let a = synth_blobs(100, 2, 10.0, 9).unwrap();
        assert_eq!(a.len(), 100);
        assert_eq!(a.class_counts(), (50, 50));
        let b = synth_blobs(100, 2, 10.0, 9).unwrap();
        assert_eq!(a, b);
        assert!(synth_blobs(99, 2, 1.0, 0).is_err());
        // far-apart clusters sit on the correct side of zero
        for (row, &y) in a.features.iter().zip(&a.labels) {
            let mean: f64 = row.iter().sum::<f64>() / row.len() as f64;
            assert_eq!(u8::from(mean > 0.0), y);
        }
    }
}
