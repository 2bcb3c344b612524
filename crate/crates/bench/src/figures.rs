//! The `bench` pipeline: one target per figure, each writing its plot data.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qmc_core::dist::{train_ansatz, TrainingSchedule};
use qmc_core::econ::{simple_qmc, StressModel};
use qmc_core::engine::{QmcConfig, RMode};
use serde::Serialize;

use crate::config::Scenario;
use crate::crossover::{runtime_extrapolate, speedup_at_error, CrossoverRow, ErrorTimeLine};
use crate::error::Result;
use crate::fit::{loglog_fit, DepthFit, ScalingFit};
use crate::output::{sink, write_crossover, write_rows, Format, SWEEP_NONDETERMINISTIC};
use crate::resources::{resource_sweep, CountLoader, ResourceRow};
use crate::sweep::{classical_problem, discretization_bias, error_sweep, time_per_sample, App, Estimator, SweepRow, SweepSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Outcome distribution of the simple example.
    Fig3,
    /// Neoclassical error scaling: exact, linear and classical.
    Fig6,
    /// Stress-test error against oracle calls, with the plateau.
    Fig7,
    /// Gate counts and depth against estimation qubits.
    Fig8,
    /// Error against runtime and crossover table.
    Fig9,
    /// As fig9 with the quantum slope set to −1.
    Fig10,
    /// Trained loader output against its target.
    Fig11,
    All,
}

pub const GATE_TIMES: [f64; 6] = [1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4];
pub const SPEEDUPS: [f64; 2] = [1e3, 1e6];
pub const HEADLINE_ERROR: f64 = 1e-8;
pub const NEO_N: std::ops::RangeInclusive<u64> = 4..=12;
pub const CLASSICAL_N: [u64; 5] = [100, 1_000, 10_000, 100_000, 1_000_000];
/// Reaches `N > 10^6`; the register budget is lifted to fit since the
/// spectral strategy never holds the joint register.
pub const STRESS_N: std::ops::RangeInclusive<u64> = 1..=20;
pub const DEPTH_N: std::ops::RangeInclusive<usize> = 3..=10;

#[derive(Clone, Debug, Serialize)]
pub struct FitRow {
    pub series: String,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points_used: usize,
    pub points_excluded: usize,
}

impl FitRow {
    fn new(series: &str, f: &ScalingFit) -> Self {
        FitRow {
            series: series.into(),
            slope: f.slope,
            intercept: f.intercept,
            r_squared: f.r_squared,
            points_used: f.points.len(),
            points_excluded: f.excluded.len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct LinePoint {
    series: String,
    time_s: f64,
    error: f64,
}

#[derive(Clone, Debug, Serialize)]
struct DistRow {
    y: usize,
    theta: f64,
    probability: f64,
}

#[derive(Clone, Debug, Serialize)]
struct LoaderRow {
    i: usize,
    x: f64,
    target: f64,
    trained: f64,
}

#[derive(Clone, Debug, Serialize)]
struct CostRow {
    epoch: usize,
    cost: f64,
}

/// Everything fig9 and fig10 need, computed once.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingInputs {
    pub exact: ScalingFit,
    pub linear: ScalingFit,
    pub classical: ScalingFit,
    pub depth: DepthFit,
    pub time_per_sample_s: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossoverSummary {
    pub quantum_slope: f64,
    pub rows: Vec<CrossoverRow>,
    /// `T_classical / T_quantum` at `ε = 1e-8`, 1 ns gates, 1000× cluster.
    pub headline_speedup: f64,
}

pub struct Bench {
    pub scenario: Scenario,
    pub seed: u64,
    pub jobs: usize,
    pub format: Format,
    pub out_dir: PathBuf,
    pub repeats: usize,
    sweeps: Option<(Vec<SweepRow>, Vec<SweepRow>, Vec<SweepRow>)>,
    resources: Option<Vec<ResourceRow>>,
    inputs: Option<ScalingInputs>,
}

impl Bench {
    pub fn new(scenario: Scenario, seed: u64, jobs: usize, format: Format, out_dir: &Path) -> Self {
        Bench {
            scenario,
            seed,
            jobs,
            format,
            out_dir: out_dir.to_path_buf(),
            repeats: 50,
            sweeps: None,
            resources: None,
            inputs: None,
        }
    }

    fn path(&self, stem: &str) -> PathBuf {
        let ext = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        self.out_dir.join(format!("{stem}.{ext}"))
    }

    fn emit<T: Serialize>(&self, stem: &str, rows: &[T], nondeterministic: &[&str]) -> Result<()> {
        write_rows(&mut *sink(Some(&self.path(stem)))?, rows, self.format, nondeterministic)
    }

    pub fn run(&mut self, target: Target) -> Result<Vec<String>> {
        match target {
            Target::Fig3 => self.fig3(),
            Target::Fig6 => self.fig6(),
            Target::Fig7 => self.fig7(),
            Target::Fig8 => self.fig8(),
            Target::Fig9 => self.fig9(),
            Target::Fig10 => self.fig10(),
            Target::Fig11 => self.fig11(),
            Target::All => {
                let mut lines = Vec::new();
                for t in [Target::Fig3, Target::Fig6, Target::Fig7, Target::Fig8, Target::Fig9, Target::Fig10, Target::Fig11] {
                    lines.extend(self.run(t)?);
                }
                Ok(lines)
            }
        }
    }

    pub fn fig3(&mut self) -> Result<Vec<String>> {
        let run = simple_qmc(&self.scenario.simple, &QmcConfig::new(6))?;
        let d = &run.estimate.distribution;
        let rows: Vec<DistRow> =
            d.iter().enumerate().map(|(y, &p)| DistRow { y, theta: y as f64 / d.len() as f64, probability: p }).collect();
        self.emit("fig3_theta_distribution", &rows, &[])?;
        Ok(vec![format!(
            "fig3: theta_hat = {:.6}, mu_hat = {:.6}, exact mu = {:.6}",
            run.estimate.theta_hat,
            run.estimate.mu,
            run.reference
        )])
    }

    fn neoclassical_sweeps(&mut self) -> Result<&(Vec<SweepRow>, Vec<SweepRow>, Vec<SweepRow>)> {
        if self.sweeps.is_none() {
            let spec = |estimator, range: Vec<u64>| SweepSpec {
                app: App::Neoclassical,
                estimator,
                range,
                repeats: self.repeats,
                seed: self.seed,
            };
            let exact = error_sweep(&spec(Estimator::QmcExact, NEO_N.collect()), &self.scenario, self.jobs)?;
            let linear = error_sweep(&spec(Estimator::QmcLinear, NEO_N.collect()), &self.scenario, self.jobs)?;
            let classical = error_sweep(&spec(Estimator::Classical, CLASSICAL_N.to_vec()), &self.scenario, self.jobs)?;
            self.sweeps = Some((exact, linear, classical));
        }
        Ok(self.sweeps.as_ref().unwrap())
    }

    pub fn scaling_inputs(&mut self) -> Result<ScalingInputs> {
        if let Some(i) = &self.inputs {
            return Ok(i.clone());
        }
        let (exact, linear, classical) = self.neoclassical_sweeps()?.clone();
        let pts = |rows: &[SweepRow]| rows.iter().map(|r| (r.big_n as f64, r.error)).collect::<Vec<_>>();
        let problem = classical_problem(App::Neoclassical, &self.scenario)?;
        let rows = self.resources()?;
        let inputs = ScalingInputs {
            exact: loglog_fit(&pts(&exact), None)?,
            linear: loglog_fit(&pts(&linear), None)?,
            classical: loglog_fit(&pts(&classical), None)?,
            depth: DepthFit::fit(
                &rows.iter().map(|r| r.n).collect::<Vec<_>>(),
                &rows.iter().map(|r| r.depth).collect::<Vec<_>>(),
            )?,
            time_per_sample_s: time_per_sample(&problem, 1_000_000, 5, self.seed)?,
        };
        self.inputs = Some(inputs.clone());
        Ok(inputs)
    }

    pub fn fig6(&mut self) -> Result<Vec<String>> {
        let (exact, linear, classical) = self.neoclassical_sweeps()?.clone();
        let all: Vec<SweepRow> = exact.iter().chain(&linear).chain(&classical).cloned().collect();
        self.emit("fig6_sweeps", &all, SWEEP_NONDETERMINISTIC)?;
        let pts = |rows: &[SweepRow]| rows.iter().map(|r| (r.big_n as f64, r.error)).collect::<Vec<_>>();
        let fits = [
            ("qmc_exact", loglog_fit(&pts(&exact), None)?),
            ("qmc_linear", loglog_fit(&pts(&linear), None)?),
            ("classical", loglog_fit(&pts(&classical), None)?),
        ];
        let rows: Vec<FitRow> = fits.iter().map(|(s, f)| FitRow::new(s, f)).collect();
        self.emit("fig6_fits", &rows, &[])?;
        Ok(fits.iter().map(|(s, f)| format!("fig6: {s} slope = {:.4} (R^2 = {:.4})", f.slope, f.r_squared)).collect())
    }

    /// The scenario with a register budget covering [`STRESS_N`].
    pub fn stress_sweep_scenario(&self) -> Scenario {
        let need = 2 * self.scenario.stress_m + 1 + *STRESS_N.end() as usize;
        Scenario { max_qubits: self.scenario.max_qubits.max(need), ..self.scenario.clone() }
    }

    pub fn stress_fits(&self, rows: &[SweepRow]) -> Result<(ScalingFit, ScalingFit, f64)> {
        let bias = discretization_bias(App::Stress, &self.scenario)?.unwrap_or(0.0);
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.big_n as f64, r.error)).collect();
        Ok((loglog_fit(&pts, None)?, loglog_fit(&pts, Some(bias))?, bias))
    }

    pub fn fig7(&mut self) -> Result<Vec<String>> {
        let spec = SweepSpec {
            app: App::Stress,
            estimator: Estimator::QmcExact,
            range: STRESS_N.collect(),
            repeats: 0,
            seed: self.seed,
        };
        let rows = error_sweep(&spec, &self.stress_sweep_scenario(), self.jobs)?;
        self.emit("fig7_stress_sweep", &rows, SWEEP_NONDETERMINISTIC)?;
        let (raw, filtered, bias) = self.stress_fits(&rows)?;
        let model = StressModel::new(self.scenario.stress.clone(), self.scenario.stress_m)?;
        let cont = model.continuous_mean()?;
        self.emit("fig7_fits", &[FitRow::new("unfiltered", &raw), FitRow::new("plateau_filtered", &filtered)], &[])?;
        Ok(vec![
            format!("fig7: discretisation bias = {bias:.3e} (fraction {:.3e})", bias / cont),
            format!("fig7: slope unfiltered = {:.4}, plateau-filtered = {:.4}", raw.slope, filtered.slope),
        ])
    }

    fn resources(&mut self) -> Result<Vec<ResourceRow>> {
        if self.resources.is_none() {
            let ns: Vec<usize> = DEPTH_N.collect();
            let layers = self.scenario.training.layers;
            self.resources =
                Some(resource_sweep(&self.scenario.neoclassical, CountLoader::Ansatz(layers), RMode::Linear, &ns)?);
        }
        Ok(self.resources.clone().unwrap())
    }

    pub fn fig8(&mut self) -> Result<Vec<String>> {
        let rows = self.resources()?;
        self.emit("fig8_resources", &rows, &[])?;
        let fit = DepthFit::fit(&rows.iter().map(|r| r.n).collect::<Vec<_>>(), &rows.iter().map(|r| r.depth).collect::<Vec<_>>())?;
        let last = rows.last().unwrap();
        Ok(vec![format!(
            "fig8: n = {} has {} gates, depth {}; log10 depth = {:.4} + {:.4} n (R^2 = {:.6})",
            last.n, last.total_gates, last.depth, fit.c0, fit.c1, fit.r_squared
        )])
    }

    pub fn crossover(&mut self, slope_override: Option<f64>) -> Result<CrossoverSummary> {
        let inputs = self.scaling_inputs()?;
        let q = match slope_override {
            Some(s) => inputs.linear.with_slope(s),
            None => inputs.linear.clone(),
        };
        let table = runtime_extrapolate(&q, &inputs.depth, &GATE_TIMES, &inputs.classical, inputs.time_per_sample_s, &SPEEDUPS);
        let ql = ErrorTimeLine::quantum(&q, &inputs.depth, 1e-9);
        let cl = ErrorTimeLine::classical(&inputs.classical, inputs.time_per_sample_s, 1e3);
        Ok(CrossoverSummary { quantum_slope: q.slope, rows: table.rows, headline_speedup: speedup_at_error(&ql, &cl, HEADLINE_ERROR) })
    }

    fn emit_time_lines(&self, stem: &str, q: &ScalingFit, inputs: &ScalingInputs) -> Result<()> {
        let times: Vec<f64> = (-6..=12).map(|k| 10f64.powi(k)).collect();
        let mut pts = Vec::new();
        for &t in &GATE_TIMES {
            let l = ErrorTimeLine::quantum(q, &inputs.depth, t);
            pts.extend(times.iter().map(|&time| LinePoint { series: format!("quantum_t={t:e}"), time_s: time, error: l.error_at(time) }));
        }
        for &f in &SPEEDUPS {
            let l = ErrorTimeLine::classical(&inputs.classical, inputs.time_per_sample_s, f);
            pts.extend(times.iter().map(|&time| LinePoint { series: format!("classical_x{f:e}"), time_s: time, error: l.error_at(time) }));
        }
        self.emit(stem, &pts, &[])
    }

    fn crossover_target(&mut self, stem: &str, slope: Option<f64>) -> Result<Vec<String>> {
        let s = self.crossover(slope)?;
        let inputs = self.scaling_inputs()?;
        let q = slope.map_or_else(|| inputs.linear.clone(), |v| inputs.linear.with_slope(v));
        write_crossover(&mut *sink(Some(&self.path(&format!("{stem}_crossover"))))?, &s.rows, self.format)?;
        self.emit_time_lines(&format!("{stem}_lines"), &q, &inputs)?;
        Ok(vec![format!(
            "{stem}: quantum slope {:.4}, classical slope {:.4}, {:.3e} s/sample; at eps = 1e-8 with 1 ns gates the 1000x cluster takes {:.3}x the quantum time",
            s.quantum_slope, inputs.classical.slope, inputs.time_per_sample_s, s.headline_speedup
        )])
    }

    pub fn fig9(&mut self) -> Result<Vec<String>> {
        self.crossover_target("fig9", None)
    }

    pub fn fig10(&mut self) -> Result<Vec<String>> {
        self.crossover_target("fig10", Some(-1.0))
    }

    pub fn fig11(&mut self) -> Result<Vec<String>> {
        let target = self.scenario.simple.distribution()?;
        let schedule = TrainingSchedule::three_stage(self.seed);
        let out = train_ansatz(&target, 5, &schedule)?;
        let trained = out.ansatz.probabilities();
        let rows: Vec<LoaderRow> = target
            .grid()
            .iter()
            .enumerate()
            .map(|(i, &x)| LoaderRow { i, x, target: target.masses()[i], trained: trained[i] })
            .collect();
        self.emit("fig11_loader", &rows, &[])?;
        let costs: Vec<CostRow> = out.cost_trace.iter().enumerate().map(|(epoch, &cost)| CostRow { epoch, cost }).collect();
        self.emit("fig11_cost", &costs, &[])?;
        Ok(vec![format!("fig11: 5-layer loader final cost {:.4e}", out.final_cost)])
    }
}
