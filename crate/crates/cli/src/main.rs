//! `entpower` — reproduce the entangling/disentangling power experiments:
//! GGM evaluation, single-unitary powers, lambda/time sweeps, random
//! scatters, brickwork circuits, and the self-check suites.

use std::path::PathBuf;
use std::process::ExitCode;

use chrono::Utc;
use clap::{Args, Parser, Subcommand};
use entpower::brickwork::CircuitSpec;
use entpower::ggm::ggm;
use entpower::tensor::PureState;
use entpower::zoo::{InnerGate, OmegaVariant, UnitarySpec};
use entpower::{Ansatz, OptimizerConfig, DEFAULT_MAX_QUBITS};
use entpower_cli::{
    csv_string, execute, parse_amplitude_file, CircuitMode, LambdaKind, RunConfig, RunManifest,
    ScatterKind, TimeKind,
};

const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "entpower", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap on worker threads (default: all cores). Results do not depend on
    /// this; only wall time does.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Dense-storage qubit cap; raise at your own risk.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

#[derive(Args, Clone)]
struct OptimizerArgs {
    /// Base PRNG seed; every restart derives its own stream from it.
    #[arg(long, env = "ENTPOWER_SEED", default_value_t = 42)]
    seed: u64,
    /// Random restarts per ansatz.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Objective evaluation cap per restart.
    #[arg(long, default_value_t = 5000)]
    max_evals: usize,
    /// Comma-separated ansatz list (symmetric, odd-even, edge-bulk,
    /// no-phases, full); default: all applicable.
    #[arg(long)]
    ansatz: Option<String>,
}

impl OptimizerArgs {
    fn to_config(&self) -> anyhow::Result<OptimizerConfig> {
        let ansatz = match &self.ansatz {
            None => None,
            Some(names) => {
                let mut list = Vec::new();
                for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    list.push(parse_ansatz(name)?);
                }
                Some(list)
            }
        };
        Ok(OptimizerConfig {
            restarts: self.restarts,
            max_evals: self.max_evals,
            seed: self.seed,
            ansatz,
            ..OptimizerConfig::default()
        })
    }
}

fn parse_ansatz(name: &str) -> anyhow::Result<Ansatz> {
    Ok(match name {
        "full" => Ansatz::Full,
        "no-phases" => Ansatz::NoPhases,
        "symmetric" => Ansatz::Symmetric,
        "odd-even" => Ansatz::OddEven,
        "edge-bulk" => Ansatz::EdgeBulk,
        other => anyhow::bail!("unknown ansatz '{other}'"),
    })
}

fn parse_omega(name: &str) -> anyhow::Result<OmegaVariant> {
    Ok(match name {
        "paper" => OmegaVariant::Paper,
        "cube-root" => OmegaVariant::CubeRoot,
        other => anyhow::bail!("unknown omega variant '{other}'"),
    })
}

#[derive(Subcommand)]
enum Command {
    /// GGM of a named state or an amplitude file.
    Ggm {
        /// Named state: ghz, w, or product.
        #[arg(long, conflicts_with = "amps")]
        named: Option<String>,
        /// Qubit count for a named state.
        #[arg(long)]
        n: Option<usize>,
        /// Amplitude file: one "re im" per line, 2^N lines.
        #[arg(long)]
        amps: Option<PathBuf>,
    },
    /// Entangling and disentangling power of one unitary.
    Power {
        /// Unitary family: identity, diag-phase, diag-random, nd-even,
        /// nd-odd, dm, dm-h, haar.
        #[arg(long, conflicts_with = "spec")]
        kind: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        /// Inner gate for nd-odd: uw or haar.
        #[arg(long, default_value = "uw")]
        inner: String,
        #[arg(long, default_value = "paper")]
        omega_variant: String,
        /// UnitarySpec JSON file (alternative to --kind).
        #[arg(long)]
        spec: Option<PathBuf>,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lambda sweep of nd-even / nd-odd over [0, 2pi].
    ScanLambda {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 97)]
        grid: usize,
        #[arg(long, default_value = "uw")]
        inner: String,
        #[arg(long, default_value = "paper")]
        omega_variant: String,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time sweep of dm / dm-h over [0, pi].
    ScanTime {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 65)]
        grid: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random diagonal or Haar unitaries, one row per sample.
    RandomScatter {
        /// diag or haar.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Powers of a brickwork circuit: explicit spec or sampled ensembles.
    Circuit {
        /// CircuitSpec JSON file.
        #[arg(long, conflicts_with_all = ["mode", "samples"])]
        spec: Option<PathBuf>,
        /// Sampling mode: same-haar, distinct-haar, per-bond.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check suites; nonzero exit on any failure.
    Verify {
        #[arg(long, env = "ENTPOWER_SEED", default_value_t = 42)]
        seed: u64,
    },
    /// Re-execute the config embedded in a manifest.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn check_cap(num_qubits: usize, cap: usize) -> Result<(), ExitCode> {
    if num_qubits > cap {
        eprintln!(
            "error: {num_qubits} qubits exceeds the cap of {cap} (raise with --max-qubits)"
        );
        return Err(ExitCode::from(EXIT_CAP));
    }
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Ggm { named, n, amps } => {
            let state = match (named, amps) {
                (Some(name), None) => {
                    let n = n.ok_or_else(|| anyhow::anyhow!("--named requires --n"))?;
                    if let Err(code) = check_cap(n, cli.max_qubits) {
                        return Ok(code);
                    }
                    match name.as_str() {
                        "ghz" => PureState::ghz(n)?,
                        "w" => PureState::w_state(n)?,
                        "product" => PureState::basis_state(n, 0),
                        other => anyhow::bail!("unknown named state '{other}'"),
                    }
                }
                (None, Some(path)) => {
                    let state = match parse_amplitude_file(&path) {
                        Ok(state) => state,
                        Err(err) => {
                            eprintln!("error: {err:#}");
                            return Ok(ExitCode::from(EXIT_PARSE));
                        }
                    };
                    if let Err(code) = check_cap(state.num_qubits(), cli.max_qubits) {
                        return Ok(code);
                    }
                    state
                }
                _ => anyhow::bail!("provide exactly one of --named or --amps"),
            };
            let result = ggm(&state)?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed } => {
            let report = entpower::verify::run_all(seed);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Power {
            kind,
            n,
            dim,
            phi,
            lambda,
            t,
            inner,
            omega_variant,
            spec,
            optimizer,
            out,
        } => {
            let optimizer = optimizer.to_config()?;
            let unitary_spec = match (kind, spec) {
                (Some(kind), None) => match build_spec(
                    &kind,
                    n,
                    dim,
                    phi,
                    lambda,
                    t,
                    &inner,
                    &omega_variant,
                    optimizer.seed,
                ) {
                    Ok(spec) => spec,
                    Err(err) => {
                        eprintln!("error: {err:#}");
                        return Ok(ExitCode::from(EXIT_PARSE));
                    }
                },
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)?;
                    match serde_json::from_str::<UnitarySpec>(&text) {
                        Ok(spec) => spec,
                        Err(err) => {
                            eprintln!("error: invalid unitary spec: {err}");
                            return Ok(ExitCode::from(EXIT_PARSE));
                        }
                    }
                }
                _ => {
                    eprintln!("error: provide exactly one of --kind or --spec");
                    return Ok(ExitCode::from(EXIT_PARSE));
                }
            };
            let config = RunConfig::Power {
                spec: unitary_spec,
                optimizer,
            };
            if let Err(code) = check_cap(config.num_qubits(), cli.max_qubits) {
                return Ok(code);
            }
            run_to_output(config, out, OutputFormat::Json)
        }
        Command::ScanLambda {
            kind,
            n,
            grid,
            inner,
            omega_variant,
            optimizer,
            out,
        } => {
            let kind = match kind.as_str() {
                "nd-even" => LambdaKind::NdEven,
                "nd-odd" => LambdaKind::NdOdd,
                other => {
                    eprintln!("error: unknown scan-lambda kind '{other}'");
                    return Ok(ExitCode::from(EXIT_PARSE));
                }
            };
            let expected_parity = match kind {
                LambdaKind::NdEven => 0,
                LambdaKind::NdOdd => 1,
            };
            if n % 2 != expected_parity {
                eprintln!("error: kind/qubit parity mismatch (n = {n})");
                return Ok(ExitCode::from(EXIT_PARSE));
            }
            if let Err(code) = check_cap(n, cli.max_qubits) {
                return Ok(code);
            }
            let config = RunConfig::ScanLambda {
                kind,
                n,
                inner: parse_inner(&inner, &omega_variant, optimizer.seed)?,
                grid,
                optimizer: optimizer.to_config()?,
            };
            run_to_output(config, out, OutputFormat::Csv)
        }
        Command::ScanTime {
            kind,
            n,
            grid,
            optimizer,
            out,
        } => {
            let kind = match kind.as_str() {
                "dm" => TimeKind::Dm,
                "dm-h" => TimeKind::DmH,
                other => {
                    eprintln!("error: unknown scan-time kind '{other}'");
                    return Ok(ExitCode::from(EXIT_PARSE));
                }
            };
            let expected_parity = match kind {
                TimeKind::Dm => 0,
                TimeKind::DmH => 1,
            };
            if n % 2 != expected_parity {
                eprintln!("error: kind/qubit parity mismatch (n = {n})");
                return Ok(ExitCode::from(EXIT_PARSE));
            }
            if let Err(code) = check_cap(n, cli.max_qubits) {
                return Ok(code);
            }
            let config = RunConfig::ScanTime {
                kind,
                n,
                grid,
                optimizer: optimizer.to_config()?,
            };
            run_to_output(config, out, OutputFormat::Csv)
        }
        Command::RandomScatter {
            kind,
            n,
            dim,
            samples,
            optimizer,
            out,
        } => {
            let kind = match kind.as_str() {
                "diag" => ScatterKind::Diag {
                    n: n.ok_or_else(|| anyhow::anyhow!("--kind diag requires --n"))?,
                },
                "haar" => ScatterKind::Haar {
                    dim: dim.ok_or_else(|| anyhow::anyhow!("--kind haar requires --dim"))?,
                },
                other => {
                    eprintln!("error: unknown random-scatter kind '{other}'");
                    return Ok(ExitCode::from(EXIT_PARSE));
                }
            };
            let config = RunConfig::RandomScatter {
                kind,
                samples,
                optimizer: optimizer.to_config()?,
            };
            if let Err(code) = check_cap(config.num_qubits(), cli.max_qubits) {
                return Ok(code);
            }
            run_to_output(config, out, OutputFormat::Csv)
        }
        Command::Circuit {
            spec,
            mode,
            n,
            depth,
            samples,
            optimizer,
            out,
        } => {
            let optimizer = optimizer.to_config()?;
            let config = match (spec, mode) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(&path)?;
                    let circuit = match serde_json::from_str::<CircuitSpec>(&text) {
                        Ok(c) => c,
                        Err(err) => {
                            eprintln!("error: invalid circuit spec: {err}");
                            return Ok(ExitCode::from(EXIT_PARSE));
                        }
                    };
                    RunConfig::Circuit { circuit, optimizer }
                }
                (None, Some(mode)) => {
                    let mode = match mode.as_str() {
                        "same-haar" => CircuitMode::SameHaar,
                        "distinct-haar" => CircuitMode::DistinctHaar,
                        "per-bond" => CircuitMode::PerBond,
                        other => {
                            eprintln!("error: unknown circuit mode '{other}'");
                            return Ok(ExitCode::from(EXIT_PARSE));
                        }
                    };
                    RunConfig::CircuitEnsemble {
                        n: n.ok_or_else(|| anyhow::anyhow!("--mode requires --n"))?,
                        mode,
                        depth,
                        samples,
                        optimizer,
                    }
                }
                _ => {
                    eprintln!("error: provide exactly one of --spec or --mode");
                    return Ok(ExitCode::from(EXIT_PARSE));
                }
            };
            if let Err(code) = check_cap(config.num_qubits(), cli.max_qubits) {
                return Ok(code);
            }
            let format = match &config {
                RunConfig::Circuit { .. } => OutputFormat::Json,
                _ => OutputFormat::Csv,
            };
            run_to_output(config, out, format)
        }
        Command::Rerun { manifest, out } => {
            let text = std::fs::read_to_string(&manifest)?;
            let manifest: RunManifest = match serde_json::from_str(&text) {
                Ok(m) => m,
                Err(err) => {
                    eprintln!("error: invalid manifest: {err}");
                    return Ok(ExitCode::from(EXIT_PARSE));
                }
            };
            if !manifest.hash_is_consistent() {
                eprintln!("error: manifest config hash does not match its config");
                return Ok(ExitCode::from(EXIT_PARSE));
            }
            if let Err(code) = check_cap(manifest.config.num_qubits(), cli.max_qubits) {
                return Ok(code);
            }
            run_to_output(manifest.config, Some(out), OutputFormat::Csv)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_spec(
    kind: &str,
    n: Option<usize>,
    dim: Option<usize>,
    phi: Option<f64>,
    lambda: Option<f64>,
    t: Option<f64>,
    inner: &str,
    omega_variant: &str,
    seed: u64,
) -> anyhow::Result<UnitarySpec> {
    let need_n = || n.ok_or_else(|| anyhow::anyhow!("--kind {kind} requires --n"));
    Ok(match kind {
        "identity" => UnitarySpec::DiagPhase {
            n: need_n()?,
            phi: 0.0,
        },
        "diag-phase" => UnitarySpec::DiagPhase {
            n: need_n()?,
            phi: phi.ok_or_else(|| anyhow::anyhow!("diag-phase requires --phi"))?,
        },
        "diag-random" => UnitarySpec::DiagRandom { n: need_n()?, seed },
        "nd-even" => UnitarySpec::NdEven {
            n: need_n()?,
            lambda: lambda.ok_or_else(|| anyhow::anyhow!("nd-even requires --lambda"))?,
        },
        "nd-odd" => UnitarySpec::NdOdd {
            n: need_n()?,
            lambda: lambda.ok_or_else(|| anyhow::anyhow!("nd-odd requires --lambda"))?,
            inner: parse_inner(inner, omega_variant, seed)?,
        },
        "dm" => UnitarySpec::Dm {
            n: need_n()?,
            t: t.ok_or_else(|| anyhow::anyhow!("dm requires --t"))?,
        },
        "dm-h" => UnitarySpec::DmH {
            n: need_n()?,
            t: t.ok_or_else(|| anyhow::anyhow!("dm-h requires --t"))?,
        },
        "haar" => UnitarySpec::Haar {
            dim: dim.ok_or_else(|| anyhow::anyhow!("haar requires --dim"))?,
            seed,
        },
        other => anyhow::bail!("unknown unitary kind '{other}'"),
    })
}

fn parse_inner(inner: &str, omega_variant: &str, seed: u64) -> anyhow::Result<InnerGate> {
    Ok(match inner {
        "uw" => InnerGate::UwExact {
            omega: parse_omega(omega_variant)?,
        },
        "haar" => InnerGate::HaarSeed { seed },
        other => anyhow::bail!("unknown inner gate '{other}'"),
    })
}

enum OutputFormat {
    Csv,
    Json,
}

/// Executes the config; writes the data file plus manifest when `--out` is
/// given, otherwise prints to stdout.
fn run_to_output(
    config: RunConfig,
    out: Option<PathBuf>,
    format: OutputFormat,
) -> anyhow::Result<ExitCode> {
    let started_at = Utc::now().to_rfc3339();
    let records = execute(&config)?;
    let finished_at = Utc::now().to_rfc3339();

    let rendered = match format {
        OutputFormat::Csv => csv_string(&records),
        OutputFormat::Json => {
            if records.len() == 1 {
                serde_json::to_string_pretty(&records[0])? + "\n"
            } else {
                serde_json::to_string_pretty(&records)? + "\n"
            }
        }
    };
    match out {
        None => print!("{rendered}"),
        Some(path) => {
            std::fs::write(&path, rendered)?;
            let manifest = RunManifest::new(config, started_at, finished_at);
            let manifest_path = manifest_path_for(&path);
            std::fs::write(
                &manifest_path,
                serde_json::to_string_pretty(&manifest)? + "\n",
            )?;
            eprintln!(
                "wrote {} and {}",
                path.display(),
                manifest_path.display()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn manifest_path_for(data_path: &std::path::Path) -> PathBuf {
    let mut name = data_path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    data_path.with_file_name(name)
}
