use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmc_core::dist::{train_ansatz, Stage, TrainingSchedule, VariationalAnsatz};
use qmc_core::econ::{AppRun, SimpleProblem, StressModel};
use qmc_core::engine::{LoaderMode, RMode, ThetaSide};
use serde::Serialize;

use qmc_bench::config::Scenario;
use qmc_bench::error::{arg_err, BenchError, Result};
use qmc_bench::figures::{Bench, Target};
use qmc_bench::output::{sink, write_rows, Format, SWEEP_NONDETERMINISTIC};
use qmc_bench::resources::{qmc_resources, CountLoader, ResourceRow};
use qmc_bench::sweep::{error_sweep, qmc_config, run_app, App, Estimator, SweepSpec};

#[derive(Parser, Debug)]
#[command(name = "qmc", version, about = "Quantum Monte Carlo estimators for economic models: runs, sweeps, resource counts and benchmarks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for training, sampling and derived streams.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Scenario TOML; built-in defaults when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (directory for `bench`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Concurrent sweep points.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RModeArg {
    Exact,
    Linear,
}

impl From<RModeArg> for RMode {
    fn from(r: RModeArg) -> Self {
        match r {
            RModeArg::Exact => RMode::Exact,
            RModeArg::Linear => RMode::Linear,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LoaderArg {
    Exact,
    Trained,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train a layered RY/CNOT loader on an application's grid distribution.
    TrainA {
        #[arg(long, value_enum, default_value_t = App::Simple)]
        app: App,
        /// Grid qubits; defaults to the scenario's value.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        layers: Option<usize>,
        /// Epochs per learning-rate stage.
        #[arg(long)]
        epochs: Option<usize>,
    },
    /// One QMC run.
    Run {
        #[arg(value_enum)]
        app: App,
        /// Grid qubits per dimension.
        #[arg(long)]
        m: Option<usize>,
        /// Estimation qubits.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RModeArg::Exact)]
        r_mode: RModeArg,
        /// Readout half; the linear neoclassical run picks it from the shock location by default.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, value_enum, default_value_t = LoaderArg::Exact)]
        loader: LoaderArg,
        /// Artifact written by `train-a`; required with `--loader trained`.
        #[arg(long)]
        ansatz: Option<PathBuf>,
        /// Also write the outcome distribution `y,theta,probability` here.
        #[arg(long)]
        distribution_out: Option<PathBuf>,
    },
    /// Error against oracle calls or samples.
    Sweep {
        #[arg(long, value_enum)]
        app: App,
        #[arg(long, value_enum)]
        estimator: Estimator,
        /// Estimation qubits, as a list `4,5,6` or an inclusive range `4..12`.
        #[arg(long)]
        n: Option<String>,
        /// Sample counts for the classical estimator, e.g. `100,1000,10000`.
        #[arg(long)]
        n_samples: Option<String>,
        #[arg(long, default_value_t = 50)]
        repeats: usize,
    },
    /// Decomposed gate counts and depth of the neoclassical circuit.
    Resources {
        #[arg(long)]
        m: Option<usize>,
        /// Estimation qubits, list or range.
        #[arg(long, default_value = "3..10")]
        n: String,
        #[arg(long, value_enum, default_value_t = RModeArg::Linear)]
        r_mode: RModeArg,
        /// Ansatz layers counted for the loader; 0 counts the exact preparation.
        #[arg(long, default_value_t = 10)]
        layers: usize,
    },
    /// Plot data for one figure, or all of them, into the `--out` directory.
    Bench {
        #[arg(long, value_enum, default_value_t = Target::All)]
        target: Target,
    },
    /// Analytic and grid reference values.
    Oracle {
        #[arg(value_enum)]
        app: App,
    },
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    let bad = || BenchError::Argument(format!("cannot parse {s:?} as a list or range"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().replace('_', "").parse::<f64>().map_err(|_| bad())).map(|v| {
        let v = v?;
        if v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
            return Err(bad());
        }
        Ok(v as u64)
    }).collect()
}

#[derive(Serialize)]
struct RunRow {
    app: &'static str,
    n: usize,
    #[serde(rename = "N_oracle")]
    n_oracle: u64,
    theta_hat: f64,
    mu_normalized: f64,
    mu: f64,
    abs_error: f64,
    oracle_value: f64,
    fractional_error: f64,
}

#[derive(Serialize)]
struct OracleRow {
    app: &'static str,
    quantity: &'static str,
    value: f64,
}

#[derive(Serialize)]
struct DistRow {
    y: usize,
    theta: f64,
    probability: f64,
}

fn with_m(mut scenario: Scenario, app: App, m: Option<usize>) -> Scenario {
    if let Some(m) = m {
        match app {
            App::Simple => scenario.simple.m = m,
            App::Stress => scenario.stress_m = m,
            App::Neoclassical => scenario.neoclassical.m = m,
        }
    }
    scenario
}

fn target_distribution(app: App, scenario: &Scenario) -> Result<Vec<qmc_core::dist::DiscretizedDistribution>> {
    Ok(match app {
        App::Simple => vec![scenario.simple.distribution()?],
        App::Stress => StressModel::new(scenario.stress.clone(), scenario.stress_m)?.distributions().to_vec(),
        App::Neoclassical => vec![scenario.neoclassical.distribution()?],
    })
}

fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    let scenario = match &g.config {
        Some(p) => Scenario::load(p)?,
        None => Scenario::default(),
    };
    match cli.command {
        Command::TrainA { app, m, layers, epochs } => {
            let scenario = with_m(scenario, app, m);
            let target = target_distribution(app, &scenario)?.swap_remove(0);
            let t = &scenario.training;
            let epochs = epochs.unwrap_or(t.epochs_per_stage);
            let stages = t.learning_rates.iter().map(|&lr| Stage { epochs, learning_rate: lr }).collect();
            let outcome = train_ansatz(&target, layers.unwrap_or(t.layers), &TrainingSchedule { stages, seed: g.seed })?;
            eprintln!("final cost {:.6e}", outcome.final_cost);
            sink(g.out.as_deref())?.write_all(outcome.ansatz.to_artifact(g.seed, outcome.final_cost).as_bytes())?;
        }
        Command::Run { app, m, n, r_mode, side, loader, ansatz, distribution_out } => {
            let scenario = with_m(scenario, app, m);
            let mut config = qmc_config(app, r_mode.into(), n, &scenario, false);
            if let Some(s) = side {
                config = config.with_side(match s {
                    SideArg::Left => ThetaSide::Left,
                    SideArg::Right => ThetaSide::Right,
                });
            }
            if let LoaderArg::Trained = loader {
                let Some(path) = ansatz else { return arg_err("--loader trained needs --ansatz <file>") };
                let (a, _) = VariationalAnsatz::from_artifact(&std::fs::read_to_string(path)?)?;
                let dims = target_distribution(app, &scenario)?.len();
                config = config.with_loader(LoaderMode::Trained(vec![a; dims]));
            }
            let r: AppRun = run_app(app, &config, &scenario, false)?;
            if let Some(path) = distribution_out {
                let d = &r.estimate.distribution;
                let rows: Vec<DistRow> =
                    d.iter().enumerate().map(|(y, &p)| DistRow { y, theta: y as f64 / d.len() as f64, probability: p }).collect();
                write_rows(&mut *sink(Some(&path))?, &rows, g.format, &[])?;
            }
            let row = RunRow {
                app: app.name(),
                n,
                n_oracle: r.estimate.oracle_calls,
                theta_hat: r.estimate.theta_hat,
                mu_normalized: r.estimate.mu_normalized,
                mu: r.estimate.mu,
                abs_error: r.abs_error,
                oracle_value: r.oracle,
                fractional_error: r.fractional_error,
            };
            write_rows(&mut *sink(g.out.as_deref())?, &[row], g.format, &[])?;
        }
        Command::Sweep { app, estimator, n, n_samples, repeats } => {
            let range = match (estimator, n, n_samples) {
                (Estimator::Classical, _, Some(s)) => parse_list(&s)?,
                (Estimator::Classical, _, None) => return arg_err("the classical estimator needs --n-samples"),
                (_, Some(s), _) => parse_list(&s)?,
                (_, None, _) => return arg_err("quantum estimators need --n"),
            };
            let spec = SweepSpec { app, estimator, range, repeats, seed: g.seed };
            let rows = error_sweep(&spec, &scenario, g.jobs)?;
            write_rows(&mut *sink(g.out.as_deref())?, &rows, g.format, SWEEP_NONDETERMINISTIC)?;
        }
        Command::Resources { m, n, r_mode, layers } => {
            let scenario = with_m(scenario, App::Neoclassical, m);
            let loader = if layers == 0 { CountLoader::Exact } else { CountLoader::Ansatz(layers) };
            let rows = parse_list(&n)?
                .into_iter()
                .map(|n| Ok(ResourceRow::new(n as usize, &qmc_resources(&scenario.neoclassical, loader, r_mode.into(), n as usize)?)))
                .collect::<Result<Vec<_>>>()?;
            write_rows(&mut *sink(g.out.as_deref())?, &rows, g.format, &[])?;
        }
        Command::Bench { target } => {
            let dir = g.out.unwrap_or_else(|| PathBuf::from("bench-out"));
            std::fs::create_dir_all(&dir)?;
            let mut bench = Bench::new(scenario, g.seed, g.jobs, g.format, &dir);
            for line in bench.run(target)? {
                println!("{line}");
            }
        }
        Command::Oracle { app } => {
            let rows = match app {
                App::Simple => vec![
                    OracleRow { app: "simple", quantity: "continuous", value: SimpleProblem::exact_mean() },
                    OracleRow { app: "simple", quantity: "grid", value: scenario.simple.grid_mean()? },
                ],
                App::Stress => {
                    let model = StressModel::new(scenario.stress.clone(), scenario.stress_m)?;
                    vec![
                        OracleRow { app: "stress", quantity: "continuous", value: model.continuous_mean()? },
                        OracleRow { app: "stress", quantity: "grid", value: model.grid_mean() },
                    ]
                }
                App::Neoclassical => vec![
                    OracleRow { app: "neoclassical", quantity: "continuous", value: scenario.neoclassical.continuous_mean() },
                    OracleRow { app: "neoclassical", quantity: "grid", value: scenario.neoclassical.grid_mean()? },
                    OracleRow { app: "neoclassical_scaling", quantity: "grid", value: scenario.neoclassical_scaling.grid_mean()? },
                ],
            };
            write_rows(&mut *sink(g.out.as_deref())?, &rows, g.format, &[])?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
