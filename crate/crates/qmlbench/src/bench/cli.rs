//! Command-line interface. Exit codes: 0 success, 1 validation/usage
//! error, 2 runtime failure.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::config::{BenchConfig, ModelId};
use super::report::{emit_report, ALL_FORMATS};
use super::runner::{attack_model, kernel_dump, run_benchmark, sweep_fractions, write_attack_reports};
use crate::encoding::rank_features;
use crate::error::Error;

#[derive(Parser, Debug)]
#[command(
    name = "qmlbench",
    version,
    about = "Benchmark quantum and classical ML models on an exact statevector simulator"
)]
struct Cli {
    /// Override every seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train and evaluate the configured models.
    Bench {
        #[command(subcommand)]
        action: BenchAction,
    },
    /// FGSM (and, for variational models, noise) robustness probes.
    Attack {
        #[command(flatten)]
        config: ConfigArg,
        /// Model to attack: svm|mlp|qsvm|vqc|qcnn.
        #[arg(long)]
        model: String,
        /// Insist on the noise probe even for non-variational models
        /// (fails with a model-kind error).
        #[arg(long)]
        noise: bool,
    },
    /// Kernel matrix utilities.
    Kernel {
        #[command(subcommand)]
        action: KernelAction,
    },
    /// Rank features of a CSV by |point-biserial correlation| with the label.
    RankFeatures {
        /// CSV file with a header row and a 0/1 label column.
        #[arg(long)]
        data: PathBuf,
        /// Label column name.
        #[arg(long, default_value = "Diagnosis")]
        label: String,
        /// Columns to drop before ranking.
        #[arg(long, num_args = 0.., default_values_t = [
            "PatientID".to_string(), "DoctorInCharge".to_string()
        ])]
        drop: Vec<String>,
        /// Print only the first N features.
        #[arg(long)]
        top: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum BenchAction {
    /// Run every configured (model, fraction) cell once.
    Run {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Run the full training-fraction sweep.
    Sweep {
        #[command(flatten)]
        config: ConfigArg,
    },
}

#[derive(Subcommand, Debug)]
enum KernelAction {
    /// Write the quantum Gram matrix of the prepared training rows as CSV.
    Dump {
        #[command(flatten)]
        config: ConfigArg,
    },
}

#[derive(Args, Debug)]
struct ConfigArg {
    /// Benchmark configuration file (JSON).
    #[arg(long)]
    config: PathBuf,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) => 1,
        _ => 2,
    }
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<BenchConfig, Error> {
    let mut config = BenchConfig::from_file(path)?;
    if let Some(s) = seed {
        config.seed = s;
    }
    Ok(config)
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Bench { action } => {
            let (config, sweep) = match &action {
                BenchAction::Run { config } => (load_config(&config.config, cli.seed)?, false),
                BenchAction::Sweep { config } => (load_config(&config.config, cli.seed)?, true),
            };
            let report = if sweep { sweep_fractions(&config)? } else { run_benchmark(&config)? };
            let out_dir = PathBuf::from(&config.output_dir);
            let files = emit_report(&report, &ALL_FORMATS, &out_dir)?;
            for row in &report.rows {
                match (&row.error, row.test_accuracy) {
                    (Some(e), _) => println!(
                        "{:>5} f={:.1}  FAILED: {e}",
                        row.model.as_str(),
                        row.train_fraction
                    ),
                    (None, Some(acc)) => println!(
                        "{:>5} f={:.1}  acc={acc:.4}  train={:.3}s  predict={:.3}s",
                        row.model.as_str(),
                        row.train_fraction,
                        row.train_cpu_seconds.unwrap_or(0.0),
                        row.predict_cpu_seconds.unwrap_or(0.0),
                    ),
                    _ => {}
                }
            }
            for f in files {
                println!("wrote {}", f.display());
            }
            Ok(())
        }
        Command::Attack { config, model, noise } => {
            let config = load_config(&config.config, cli.seed)?;
            let model_id = ModelId::parse(&model)?;
            let reports = attack_model(&config, model_id, noise)?;
            for r in &reports {
                let (kind, level) = match r.level {
                    crate::attack::AttackLevel::Epsilon(e) => ("eps", e),
                    crate::attack::AttackLevel::NoiseP(p) => ("noise_p", p),
                };
                println!(
                    "{} {kind}={level:.3}  clean={:.4}  attacked={:.4}",
                    r.model_id, r.clean_accuracy, r.attacked_accuracy
                );
            }
            let files = write_attack_reports(&reports, model_id, &PathBuf::from(&config.output_dir))?;
            for f in files {
                println!("wrote {}", f.display());
            }
            Ok(())
        }
        Command::Kernel { action: KernelAction::Dump { config } } => {
            let config = load_config(&config.config, cli.seed)?;
            let path = kernel_dump(&config, &PathBuf::from(&config.output_dir))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::RankFeatures { data, label, drop, top } => {
            let load = crate::data::load_csv(&data, &label, &drop)?;
            if load.rejected_rows > 0 {
                eprintln!("note: {} row(s) rejected", load.rejected_rows);
            }
            let ranking = rank_features(&load.dataset.features, &load.dataset.labels)?;
            let limit = top.unwrap_or(ranking.len());
            for (idx, score) in ranking.iter().take(limit) {
                println!("{}\t{score:.6}", load.dataset.feature_names[*idx]);
            }
            Ok(())
        }
    }
}

/// Entry point used by the binary: parses argv, runs, maps errors to exit
/// codes (usage problems → 1, runtime failures → 2).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the same path; those are success
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
