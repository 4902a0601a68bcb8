//! Multi-trial benchmark tables: mean objective value per iteration for each
//! method, averaged over seeded random initial points.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::objectives::{by_name, Objective};
use crate::optimizers::{
    isgm_run, sgm_run, sm_run, RunConfig, RunTrace, StepSchedule, Subgradient,
};
use crate::sampling::initial_point;
use crate::specular::EstimateMethod;

/// A solver together with its step rule, as used in benchmark tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchMethod {
    /// Subgradient method, constant step.
    SmConst,
    /// Subgradient method, `gamma_k = 1 / (k + 1)`.
    SmDimin,
    Isgm,
    /// SGM with the halving schedule and `t0 = b - a`.
    SgmShor,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 4] = [
        BenchMethod::SmConst,
        BenchMethod::SmDimin,
        BenchMethod::Isgm,
        BenchMethod::SgmShor,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BenchMethod::SmConst => "sm_const",
            BenchMethod::SmDimin => "sm_dimin",
            BenchMethod::Isgm => "isgm",
            BenchMethod::SgmShor => "sgm_shor",
        }
    }
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown method `{s}`")))
    }
}

/// Run one method from `base.x0` with the method's own step rule.
pub fn run_method(
    f: &Objective,
    method: BenchMethod,
    base: RunConfig,
    gamma_const: f64,
) -> Result<RunTrace> {
    match method {
        BenchMethod::SmConst => sm_run(
            f,
            base.with_schedule(StepSchedule::Constant { gamma: gamma_const }),
            Subgradient::SymmetricDerivative,
        ),
        BenchMethod::SmDimin => sm_run(
            f,
            base.with_schedule(StepSchedule::Diminishing),
            Subgradient::SymmetricDerivative,
        ),
        BenchMethod::Isgm => isgm_run(f, base),
        BenchMethod::SgmShor => sgm_run(
            f,
            base.with_schedule(StepSchedule::ShorHalving {
                t0: f.domain().width(),
            }),
        ),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    pub objective_name: String,
    pub methods: Vec<BenchMethod>,
    pub trials: u64,
    pub iterations: usize,
    pub seed: u64,
    pub gamma_const: f64,
    pub eta: f64,
    pub mesh: f64,
    pub derivative_mode: EstimateMethod,
    /// Pin every trial to this initial point instead of drawing one.
    pub x0: Option<f64>,
}

impl Default for BenchSpec {
    fn default() -> Self {
        Self {
            objective_name: "sum_abs".into(),
            methods: BenchMethod::ALL.to_vec(),
            trials: 20,
            iterations: 20,
            seed: 42,
            gamma_const: 0.005,
            eta: 1e-6,
            mesh: 1e-6,
            derivative_mode: EstimateMethod::FiniteDifference,
            x0: None,
        }
    }
}

/// Across-trial means per iteration; row `k` holds iterate `k`.
///
/// A trace that stopped before the last row keeps its final iterate for the
/// remaining rows.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchTable {
    pub methods: Vec<BenchMethod>,
    /// `mean_f[k][m]`: mean of `f(x_k)` for method `m`.
    pub mean_f: Vec<Vec<f64>>,
    /// `mean_subopt[k][m]`: mean of `f(x_k) - f(x*)`.
    pub mean_subopt: Vec<Vec<f64>>,
}

impl BenchTable {
    pub fn rows(&self) -> usize {
        self.mean_f.len()
    }

    pub fn column_subopt(&self, method: BenchMethod) -> Option<Vec<f64>> {
        let m = self.methods.iter().position(|&x| x == method)?;
        Some(self.mean_subopt.iter().map(|row| row[m]).collect())
    }
}

/// All traces of a benchmark, indexed `[method][trial]`.
pub fn bench_traces(spec: &BenchSpec) -> Result<(Objective, Vec<Vec<RunTrace>>)> {
    if spec.trials == 0 {
        return Err(Error::BadParameter("trials must be at least 1".into()));
    }
    if spec.iterations == 0 {
        return Err(Error::BadParameter("iterations must be at least 1".into()));
    }
    if spec.methods.is_empty() {
        return Err(Error::BadParameter("no methods selected".into()));
    }
    let f = by_name(&spec.objective_name)?;
    let domain = f.domain();
    let x0s: Vec<f64> = (0..spec.trials)
        .map(|i| {
            spec.x0
                .unwrap_or_else(|| initial_point(domain, spec.seed, i))
        })
        .collect();
    let mut traces = Vec::with_capacity(spec.methods.len());
    for &method in &spec.methods {
        let mut per_trial = Vec::with_capacity(x0s.len());
        for &x0 in &x0s {
            let base = RunConfig {
                x0,
                eta: spec.eta,
                max_iters: spec.iterations,
                mesh: spec.mesh,
                schedule: StepSchedule::Constant {
                    gamma: spec.gamma_const,
                },
                derivative_mode: spec.derivative_mode,
            };
            per_trial.push(run_method(&f, method, base, spec.gamma_const)?);
        }
        traces.push(per_trial);
    }
    Ok((f, traces))
}

pub fn bench(spec: &BenchSpec) -> Result<BenchTable> {
    let (f, traces) = bench_traces(spec)?;
    let f_star = f
        .min_value()
        .ok_or_else(|| Error::BadParameter(format!("{} has no known minimum", f.name())))?;
    let rows = spec.iterations + 1;
    let n = spec.trials as f64;
    let mut mean_f = vec![vec![0.0; spec.methods.len()]; rows];
    let mut mean_subopt = vec![vec![0.0; spec.methods.len()]; rows];
    for (m, per_trial) in traces.iter().enumerate() {
        for k in 0..rows {
            let (mut sum_f, mut sum_gap) = (0.0, 0.0);
            for tr in per_trial {
                let rec = tr.records.get(k).unwrap_or_else(|| tr.last());
                sum_f += rec.fx;
                sum_gap += rec.fx - f_star;
            }
            mean_f[k][m] = sum_f / n;
            mean_subopt[k][m] = sum_gap / n;
        }
    }
    Ok(BenchTable {
        methods: spec.methods.clone(),
        mean_f,
        mean_subopt,
    })
}
