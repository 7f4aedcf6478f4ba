//! Benchmark configuration: a versioned JSON file with strict key
//! checking. Structural problems fail at parse time; semantic problems are
//! collected and reported exhaustively before any work starts.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::data::{load_csv, synth_adhoc, synth_blobs, Dataset};
use crate::encoding::FeatureMapSpec;
use crate::error::{Error, Result};
use crate::variational::Optimizer;

pub const CONFIG_VERSION: u32 = 1;
/// Environment variable that may supply the dataset path.
pub const DATA_ENV_VAR: &str = "QMLBENCH_DATA";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Svm,
    Mlp,
    Qsvm,
    Vqc,
    Qcnn,
}

impl ModelId {
    pub fn is_quantum(self) -> bool {
        matches!(self, ModelId::Qsvm | ModelId::Vqc | ModelId::Qcnn)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::Svm => "svm",
            ModelId::Mlp => "mlp",
            ModelId::Qsvm => "qsvm",
            ModelId::Vqc => "vqc",
            ModelId::Qcnn => "qcnn",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "svm" => Ok(ModelId::Svm),
            "mlp" => Ok(ModelId::Mlp),
            "qsvm" => Ok(ModelId::Qsvm),
            "vqc" => Ok(ModelId::Vqc),
            "qcnn" => Ok(ModelId::Qcnn),
            other => Err(Error::Parameter(format!(
                "unknown model '{other}' (expected svm|mlp|qsvm|vqc|qcnn)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlobsConfig {
    pub m: usize,
    pub d: usize,
    pub separation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdhocConfig {
    pub m: usize,
    pub gap: f64,
    pub theta_star: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    /// CSV dataset path; falls back to the QMLBENCH_DATA env var.
    #[serde(default)]
    pub csv_path: Option<String>,
    /// Schema descriptor (label column, drop columns, expected width).
    #[serde(default)]
    pub schema_path: Option<String>,
    #[serde(default)]
    pub label_column: Option<String>,
    #[serde(default)]
    pub drop_columns: Option<Vec<String>>,
    #[serde(default)]
    pub blobs: Option<BlobsConfig>,
    #[serde(default)]
    pub adhoc: Option<AdhocConfig>,
}

/// Structured description of an external CSV: which column is the label,
/// which columns are identifiers to drop, how many features to expect.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaDescriptor {
    pub label_column: String,
    #[serde(default)]
    pub drop_columns: Vec<String>,
    #[serde(default)]
    pub expected_feature_count: Option<usize>,
}

impl SchemaDescriptor {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("cannot read schema descriptor {}: {e}", path.display()),
            ))
        })?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SvmConfig {
    pub c: f64,
    pub tol: f64,
    pub max_passes: usize,
    /// RBF width for the classical SVM; `None` means 1/d.
    pub gamma: Option<f64>,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig { c: 1.0, tol: 1e-3, max_passes: 100_000, gamma: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MlpConfig {
    pub hidden: Vec<usize>,
    pub learning_rate: f64,
    pub epochs: usize,
    /// 0 = full batch.
    pub batch: usize,
}

impl Default for MlpConfig {
    fn default() -> Self {
        MlpConfig { hidden: vec![64], learning_rate: 0.05, epochs: 200, batch: 0 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VariationalConfig {
    pub layers: usize,
    pub iterations: usize,
    pub learning_rate: f64,
    pub optimizer: Optimizer,
}

impl Default for VariationalConfig {
    fn default() -> Self {
        VariationalConfig {
            layers: 2,
            iterations: 200,
            learning_rate: 0.1,
            optimizer: Optimizer::Spsa,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AttackConfig {
    pub epsilons: Vec<f64>,
    pub noise_levels: Vec<f64>,
    pub shots: usize,
}

impl Default for AttackConfig {
    fn default() -> Self {
        AttackConfig {
            epsilons: vec![0.0, 0.1, 0.3, 0.6, 0.9],
            noise_levels: vec![0.0, 0.02, 0.05, 0.1, 0.3],
            shots: 200,
        }
    }
}

fn default_fractions() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

fn default_models() -> Vec<ModelId> {
    vec![ModelId::Svm, ModelId::Mlp]
}

fn default_feature_map() -> FeatureMapSpec {
    FeatureMapSpec::zz(8)
}

fn default_qml_train_cap() -> usize {
    400
}

fn default_output_dir() -> String {
    "out".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub version: u32,
    pub data: DataConfig,
    #[serde(default = "default_models")]
    pub models: Vec<ModelId>,
    #[serde(default = "default_fractions")]
    pub fractions: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
    /// Quantum models consume the top `feature_map.n_qubits` features.
    #[serde(default = "default_feature_map")]
    pub feature_map: FeatureMapSpec,
    /// Training-subsample ceiling for the quantum models; keeps fraction
    /// sweeps finishable on a desk machine. Recorded in every affected row.
    #[serde(default = "default_qml_train_cap")]
    pub qml_train_cap: usize,
    #[serde(default)]
    pub svm: SvmConfig,
    #[serde(default)]
    pub mlp: MlpConfig,
    #[serde(default)]
    pub vqc: VariationalConfig,
    #[serde(default)]
    pub qcnn: VariationalConfig,
    #[serde(default)]
    pub attack: AttackConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
}

impl BenchConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("cannot read config {}: {e}", path.display()),
            ))
        })?;
        let config: BenchConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(vec![format!("{}: {e}", path.display())]))?;
        config.validate()?;
        Ok(config)
    }

    /// Collect every semantic problem at once.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.version != CONFIG_VERSION {
            problems.push(format!(
                "version must be {CONFIG_VERSION}, got {}",
                self.version
            ));
        }
        if self.models.is_empty() {
            problems.push("models list is empty".into());
        }
        let mut seen = Vec::new();
        for &m in &self.models {
            if seen.contains(&m) {
                problems.push(format!("model '{}' listed twice", m.as_str()));
            }
            seen.push(m);
        }
        if self.fractions.is_empty() {
            problems.push("fractions list is empty".into());
        }
        for &f in &self.fractions {
            if !(f > 0.0 && f < 1.0) {
                problems.push(format!("fraction {f} outside (0, 1)"));
            }
        }
        let n = self.feature_map.n_qubits;
        if n == 0 || n > crate::sim::MAX_QUBITS {
            problems.push(format!(
                "feature_map.n_qubits must be in 1..={}, got {n}",
                crate::sim::MAX_QUBITS
            ));
        }
        if self.feature_map.depth == 0 {
            problems.push("feature_map.depth must be >= 1".into());
        }
        if self.models.contains(&ModelId::Qcnn) && (n < 2 || !n.is_power_of_two()) {
            problems.push(format!(
                "qcnn requires a power-of-two qubit count >= 2, feature_map.n_qubits is {n}"
            ));
        }
        let sources = [
            self.data.csv_path.is_some()
                || self.data.schema_path.is_some()
                || std::env::var(DATA_ENV_VAR).is_ok(),
            self.data.blobs.is_some(),
            self.data.adhoc.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() > 1 && (self.data.blobs.is_some() && self.data.adhoc.is_some()) {
            problems.push("data must name exactly one source (csv, blobs or adhoc)".into());
        }
        if self.data.blobs.is_none() && self.data.adhoc.is_none() && !sources[0] {
            problems.push(format!(
                "no data source: set data.csv_path, data.blobs, data.adhoc or {DATA_ENV_VAR}"
            ));
        }
        if let Some(b) = &self.data.blobs {
            if b.m == 0 || b.m % 2 != 0 {
                problems.push(format!("data.blobs.m must be even and positive, got {}", b.m));
            }
            if b.d == 0 {
                problems.push("data.blobs.d must be >= 1".into());
            }
        }
        if let Some(a) = &self.data.adhoc {
            if !(0.0..1.0).contains(&a.gap) {
                problems.push(format!("data.adhoc.gap must be in [0, 1), got {}", a.gap));
            }
            if a.m < 2 {
                problems.push("data.adhoc.m must be >= 2".into());
            }
            if a.theta_star.is_empty() || a.theta_star.len() % n != 0 {
                problems.push(format!(
                    "data.adhoc.theta_star length {} must be a positive multiple of n_qubits {n}",
                    a.theta_star.len()
                ));
            }
        }
        if self.svm.c <= 0.0 {
            problems.push(format!("svm.c must be > 0, got {}", self.svm.c));
        }
        if self.svm.tol <= 0.0 {
            problems.push(format!("svm.tol must be > 0, got {}", self.svm.tol));
        }
        if let Some(g) = self.svm.gamma {
            if g <= 0.0 {
                problems.push(format!("svm.gamma must be > 0, got {g}"));
            }
        }
        if self.mlp.learning_rate <= 0.0 {
            problems.push("mlp.learning_rate must be > 0".into());
        }
        if self.mlp.hidden.contains(&0) {
            problems.push("mlp.hidden sizes must be positive".into());
        }
        for (name, vc) in [("vqc", &self.vqc), ("qcnn", &self.qcnn)] {
            if vc.iterations == 0 {
                problems.push(format!("{name}.iterations must be >= 1"));
            }
            if vc.learning_rate <= 0.0 {
                problems.push(format!("{name}.learning_rate must be > 0"));
            }
            if name == "vqc" && vc.layers == 0 {
                problems.push("vqc.layers must be >= 1".into());
            }
        }
        if self.qml_train_cap < 2 {
            problems.push("qml_train_cap must be >= 2".into());
        }
        for &e in &self.attack.epsilons {
            if e < 0.0 {
                problems.push(format!("attack.epsilons entry {e} is negative"));
            }
        }
        for &p in &self.attack.noise_levels {
            if !(0.0..=1.0).contains(&p) {
                problems.push(format!("attack.noise_levels entry {p} outside [0, 1]"));
            }
        }
        if self.attack.shots < 100 {
            problems.push(format!("attack.shots must be >= 100, got {}", self.attack.shots));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }

    /// Stable hash of the effective configuration; stamped on every row.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Resolve the CSV path: explicit config value first, then the env var.
    pub fn dataset_path(&self) -> Option<PathBuf> {
        self.data
            .csv_path
            .clone()
            .or_else(|| std::env::var(DATA_ENV_VAR).ok())
            .map(PathBuf::from)
    }

    /// Load or generate the configured dataset. Returns the dataset and the
    /// number of rejected CSV rows (0 for synthetic sources).
    pub fn load_dataset(&self) -> Result<(Dataset, usize)> {
        if let Some(blobs) = &self.data.blobs {
            return Ok((synth_blobs(blobs.m, blobs.d, blobs.separation, self.seed)?, 0));
        }
        if let Some(adhoc) = &self.data.adhoc {
            let ds = synth_adhoc(adhoc.m, &self.feature_map, &adhoc.theta_star, adhoc.gap, self.seed)?;
            return Ok((ds, 0));
        }
        let Some(path) = self.dataset_path() else {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("no dataset path configured and {DATA_ENV_VAR} is unset"),
            )));
        };
        let schema = match &self.data.schema_path {
            Some(p) => Some(SchemaDescriptor::read(Path::new(p))?),
            None => None,
        };
        let label = self
            .data
            .label_column
            .clone()
            .or_else(|| schema.as_ref().map(|s| s.label_column.clone()))
            .ok_or_else(|| {
                Error::Schema("no label column: set data.label_column or a schema descriptor".into())
            })?;
        let drops = self
            .data
            .drop_columns
            .clone()
            .or_else(|| schema.as_ref().map(|s| s.drop_columns.clone()))
            .unwrap_or_default();
        let load = load_csv(&path, &label, &drops)?;
        if let Some(expect) = schema.as_ref().and_then(|s| s.expected_feature_count) {
            if load.dataset.dim() != expect {
                return Err(Error::Schema(format!(
                    "{} has {} feature columns, schema expects {expect}",
                    path.display(),
                    load.dataset.dim()
                )));
            }
        }
        Ok((load.dataset, load.rejected_rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob_config() -> BenchConfig {
        serde_json::from_value(serde_json::json!({
            "version": 1,
            "data": { "blobs": { "m": 40, "d": 2, "separation": 4.0 } },
            "models": ["svm"],
            "fractions": [0.5],
            "feature_map": { "n_qubits": 2, "depth": 2, "entanglement": "linear", "kind": "zz" }
        }))
        .unwrap()
    }

    #[test]
    fn defaults_fill_in() {
        let c = blob_config();
        assert_eq!(c.svm.c, 1.0);
        assert_eq!(c.mlp.hidden, vec![64]);
        assert_eq!(c.qml_train_cap, 400);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn unknown_keys_rejected() {
        let r: std::result::Result<BenchConfig, _> = serde_json::from_value(serde_json::json!({
            "version": 1,
            "data": {},
            "who_is_this": true
        }));
        assert!(r.is_err());
    }

    #[test]
    fn validation_lists_all_problems() {
        let mut c = blob_config();
        c.version = 9;
        c.fractions = vec![1.5];
        c.svm.c = -1.0;
        let err = c.validate().unwrap_err();
        let Error::Config(problems) = err else { panic!("expected config error") };
        assert!(problems.len() >= 3, "{problems:?}");
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let c = blob_config();
        assert_eq!(c.hash(), c.hash());
        let mut c2 = blob_config();
        c2.seed = 99;
        assert_ne!(c.hash(), c2.hash());
    }

    #[test]
    fn qcnn_requires_power_of_two() {
        let mut c = blob_config();
        c.models = vec![ModelId::Qcnn];
        c.feature_map.n_qubits = 3;
        assert!(c.validate().is_err());
    }

    #[test]
    fn model_id_parsing() {
        assert_eq!(ModelId::parse("qsvm").unwrap(), ModelId::Qsvm);
        assert!(ModelId::parse("resnet").is_err());
    }
}
