//! Specular gradient method, its implicit variant, and the symmetric-derivative
//! subgradient baseline.
//!
//! All three share one loop: evaluate a derivative quantity at `x_k`, stop if
//! it is within tolerance or the iteration budget is spent, otherwise step and
//! update the best point seen so far. They differ only in the quantity tested
//! and in how the step is formed:
//!
//! | method | tested quantity      | step                                  |
//! |--------|----------------------|---------------------------------------|
//! | SGM    | `f^spd(x_k)`         | `x - gamma_k f^spd(x_k)`              |
//! | ISGM   | `f'_+(x_k)+f'_-(x_k)` | `x - t_k sign(f'_+ + f'_-)`, `t_0 = (b-a)/2` |
//! | SM     | symmetric derivative | `x - gamma_k s_k`                     |
//!
//! Iterates that leave the domain are clamped to `[a + mu, b - mu]` with
//! `mu = 1e-9 (b - a)`; two clamps in a row end the run with
//! [`StopReason::OutOfDomain`].

use std::fmt;

use crate::error::{Error, Result};
use crate::objectives::{Interval, Objective};
use crate::specular::{
    pair_at, specular_from_pair, specular_sign, symmetric_at, DerivativeMode, EstimateMethod,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    /// Fixed step `gamma`.
    Constant { gamma: f64 },
    /// `gamma_k = 1 / (k + 1)`.
    Diminishing,
    /// `t_k = t0 / 2^k`; SGM divides by `|f^spd(x_k)|` so that `|x_{k+1} - x_k| = t_k`.
    ShorHalving { t0: f64 },
}

impl StepSchedule {
    fn validate(&self) -> Result<()> {
        match *self {
            StepSchedule::Constant { gamma } if !(gamma > 0.0 && gamma.is_finite()) => Err(
                Error::BadConfig(format!("constant step must be positive, got {gamma}")),
            ),
            StepSchedule::ShorHalving { t0 } if !(t0 > 0.0 && t0.is_finite()) => {
                Err(Error::BadConfig(format!("t0 must be positive, got {t0}")))
            }
            _ => Ok(()),
        }
    }

    /// Multiplier applied to the derivative at iteration `k`.
    fn gamma(&self, k: usize, deriv: f64) -> f64 {
        match *self {
            StepSchedule::Constant { gamma } => gamma,
            StepSchedule::Diminishing => 1.0 / (k as f64 + 1.0),
            StepSchedule::ShorHalving { t0 } => shor_t(t0, k) / deriv.abs(),
        }
    }
}

/// `t0 / 2^k`.
pub fn shor_t(t0: f64, k: usize) -> f64 {
    let k = i32::try_from(k).unwrap_or(i32::MAX);
    t0 * 0.5f64.powi(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Sgm,
    Isgm,
    Sm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Sgm => "SGM",
            Method::Isgm => "ISGM",
            Method::Sm => "SM",
        })
    }
}

/// Subgradient used by the baseline method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Subgradient {
    #[default]
    SymmetricDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub x0: f64,
    /// Stopping tolerance on the tested derivative quantity.
    pub eta: f64,
    pub max_iters: usize,
    /// Finite-difference mesh.
    pub mesh: f64,
    pub schedule: StepSchedule,
    pub derivative_mode: EstimateMethod,
}

impl RunConfig {
    /// Defaults of the benchmark setup: `eta = h = 1e-6`, 20 iterations,
    /// constant step `0.005`, analytic derivatives.
    pub fn new(x0: f64) -> Self {
        Self {
            x0,
            eta: 1e-6,
            max_iters: 20,
            mesh: 1e-6,
            schedule: StepSchedule::Constant { gamma: 0.005 },
            derivative_mode: EstimateMethod::Analytic,
        }
    }

    pub fn with_schedule(mut self, schedule: StepSchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_max_iters(mut self, n: usize) -> Self {
        self.max_iters = n;
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_mesh(mut self, mesh: f64) -> Self {
        self.mesh = mesh;
        self
    }

    pub fn with_derivative_mode(mut self, mode: EstimateMethod) -> Self {
        self.derivative_mode = mode;
        self
    }

    pub fn derivatives(&self) -> DerivativeMode {
        match self.derivative_mode {
            EstimateMethod::Analytic => DerivativeMode::Analytic {
                fallback_mesh: self.mesh,
            },
            EstimateMethod::FiniteDifference => {
                DerivativeMode::FiniteDifference { mesh: self.mesh }
            }
        }
    }

    fn validate(&self, f: &Objective) -> Result<()> {
        if !f.domain().contains(self.x0) {
            return Err(Error::BadConfig(format!(
                "x0 = {} is outside the domain {}",
                self.x0,
                f.domain()
            )));
        }
        if !(self.eta > 0.0) {
            return Err(Error::BadConfig(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::BadConfig("max_iters must be at least 1".into()));
        }
        if !(self.mesh > 0.0 && self.mesh.is_finite()) {
            return Err(Error::BadConfig(format!(
                "mesh must be positive, got {}",
                self.mesh
            )));
        }
        self.schedule.validate()
    }
}

/// State at iterate `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub x: f64,
    pub fx: f64,
    /// `f^spd(x_k)` for SGM, `f'_+ + f'_-` for ISGM, the symmetric derivative for SM.
    pub deriv: f64,
    /// Step size used to leave `x_k` (`gamma_k` or `t_k`); `None` on the final record.
    pub step: Option<f64>,
    /// Bound on `|x_k - x*|` guaranteed by the halving schedule, if any.
    pub envelope: Option<f64>,
    pub x_best: f64,
    pub f_best: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    ToleranceMet,
    MaxIters,
    ZeroDerivative,
    OutOfDomain,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::ToleranceMet => "ToleranceMet",
            StopReason::MaxIters => "MaxIters",
            StopReason::ZeroDerivative => "ZeroDerivative",
            StopReason::OutOfDomain => "OutOfDomain",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub method: Method,
    pub config: RunConfig,
    pub domain: Interval,
    /// How one-sided derivatives were actually obtained.
    pub derivative_source: EstimateMethod,
    pub records: Vec<IterationRecord>,
    pub stop_reason: StopReason,
}

impl RunTrace {
    pub fn last(&self) -> &IterationRecord {
        self.records
            .last()
            .expect("a trace has at least one record")
    }

    /// Iterations performed.
    pub fn iterations(&self) -> usize {
        self.records.len() - 1
    }
}

/// Keep the incumbent unless the candidate is strictly better.
pub fn best_update(current: (f64, f64), candidate: (f64, f64)) -> (f64, f64) {
    if candidate.1 < current.1 {
        candidate
    } else {
        current
    }
}

/// Move `x` into `[lo + mu, hi - mu]`. Returns the point and whether it moved.
fn clamp_into(domain: Interval, x: f64) -> (f64, bool) {
    let margin = |bound: f64| {
        if domain.is_bounded() {
            domain.inset()
        } else {
            1e-9 * bound.abs().max(1.0)
        }
    };
    let lo = domain.lo + margin(domain.lo);
    let hi = domain.hi - margin(domain.hi);
    if x.is_nan() {
        // no direction to clamp towards; stay put at the nearer admissible edge
        return (lo.max(hi.min(0.0)), true);
    }
    if x < lo {
        (lo, true)
    } else if x > hi {
        (hi, true)
    } else {
        (x, false)
    }
}

/// What one method does at a single iterate.
struct Probe {
    deriv: f64,
    /// Quantity compared against `eta`.
    tested: f64,
    /// Signed displacement `x_{k+1} - x_k` and the step size that produced it.
    move_by: Option<(f64, f64)>,
}

fn run_loop<F>(
    f: &Objective,
    cfg: RunConfig,
    method: Method,
    mut probe: F,
    envelope: impl Fn(usize) -> Option<f64>,
) -> Result<RunTrace>
where
    F: FnMut(usize, f64) -> Result<Probe>,
{
    let domain = f.domain();
    let source = if cfg.derivative_mode == EstimateMethod::Analytic && f.has_analytic_pair() {
        EstimateMethod::Analytic
    } else {
        EstimateMethod::FiniteDifference
    };
    let mut x = cfg.x0;
    let mut fx = f.value(x)?;
    let mut best = (x, fx);
    let mut records = Vec::with_capacity(cfg.max_iters + 1);
    let mut clamped_before = false;
    let mut escaped = false;

    let stop_reason = 'run: {
        for k in 0.. {
            let p = probe(k, x)?;
            let mut rec = IterationRecord {
                k,
                x,
                fx,
                deriv: p.deriv,
                step: None,
                envelope: envelope(k),
                x_best: best.0,
                f_best: best.1,
            };
            let reason = if escaped {
                Some(StopReason::OutOfDomain)
            } else if p.tested == 0.0 {
                Some(StopReason::ZeroDerivative)
            } else if p.tested.abs() <= cfg.eta {
                Some(StopReason::ToleranceMet)
            } else if k == cfg.max_iters {
                Some(StopReason::MaxIters)
            } else {
                None
            };
            if let Some(reason) = reason {
                records.push(rec);
                break 'run reason;
            }
            let (delta, step) = p
                .move_by
                .expect("a probe with nonzero tested quantity supplies a step");
            rec.step = Some(step);
            records.push(rec);

            let (next, clamped) = clamp_into(domain, x + delta);
            escaped = clamped && clamped_before;
            clamped_before = clamped;
            x = next;
            fx = f.value(x)?;
            best = best_update(best, (x, fx));
        }
        unreachable!("the loop only exits through a stop reason");
    };

    Ok(RunTrace {
        method,
        config: cfg,
        domain,
        derivative_source: source,
        records,
        stop_reason,
    })
}

/// Specular gradient method.
pub fn sgm_run(f: &Objective, cfg: RunConfig) -> Result<RunTrace> {
    cfg.validate(f)?;
    let mode = cfg.derivatives();
    let schedule = cfg.schedule;
    let envelope = move |k| match schedule {
        StepSchedule::ShorHalving { t0 } => Some(shor_t(t0, k)),
        _ => None,
    };
    run_loop(
        f,
        cfg,
        Method::Sgm,
        |k, x| {
            let deriv = specular_from_pair(pair_at(f, x, mode)?.0);
            let gamma = schedule.gamma(k, deriv);
            Ok(Probe {
                deriv,
                tested: deriv,
                move_by: (deriv != 0.0).then(|| (-gamma * deriv, gamma)),
            })
        },
        envelope,
    )
}

/// Implicit specular gradient method. The schedule in `cfg` is ignored; the
/// step starts at `(b - a) / 2` and halves every iteration.
pub fn isgm_run(f: &Objective, cfg: RunConfig) -> Result<RunTrace> {
    let domain = f.domain();
    if !domain.is_bounded() {
        return Err(Error::BadConfig(format!(
            "ISGM needs a bounded domain, got {domain}"
        )));
    }
    cfg.validate(f)?;
    let mode = cfg.derivatives();
    let width = domain.width();
    run_loop(
        f,
        cfg,
        Method::Isgm,
        |k, x| {
            let pair = pair_at(f, x, mode)?.0;
            let sign = specular_sign(pair);
            let t = shor_t(0.5 * width, k);
            Ok(Probe {
                deriv: pair.sum(),
                // the zero band of the sign counts as a zero derivative
                tested: if sign == 0 { 0.0 } else { pair.sum() },
                move_by: (sign != 0).then(|| (-t * f64::from(sign), t)),
            })
        },
        // |x_k - x*| <= t_{k-1} = (b - a) / 2^k, and |x_0 - x*| < b - a
        move |k| Some(shor_t(width, k)),
    )
}

/// Subgradient method with the symmetric derivative as subgradient.
pub fn sm_run(f: &Objective, cfg: RunConfig, subgrad: Subgradient) -> Result<RunTrace> {
    if let StepSchedule::ShorHalving { .. } = cfg.schedule {
        return Err(Error::BadConfig(
            "the halving schedule is reserved for SGM".into(),
        ));
    }
    cfg.validate(f)?;
    let mode = cfg.derivatives();
    let schedule = cfg.schedule;
    run_loop(
        f,
        cfg,
        Method::Sm,
        |k, x| {
            let s = match subgrad {
                Subgradient::SymmetricDerivative => symmetric_at(f, x, mode)?,
            };
            let gamma = schedule.gamma(k, s);
            Ok(Probe {
                deriv: s,
                tested: s,
                move_by: Some((-gamma * s, gamma)),
            })
        },
        |_| None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{
        abs_value, builtin_huber, builtin_kink_counterexample, builtin_power_p,
    };
    use approx::assert_relative_eq;

    fn abs_on(lo: f64, hi: f64) -> Objective {
        abs_value(Interval::new(lo, hi).unwrap())
    }

    #[test]
    fn shor_t_examples() {
        assert_eq!(shor_t(1.0, 0), 1.0);
        assert_eq!(shor_t(1.0, 3), 0.125);
        assert_eq!(shor_t(2.0, 20), 1.9073486328125e-6);
        for k in 0..60 {
            assert_eq!(shor_t(3.0, k + 1) / shor_t(3.0, k), 0.5);
        }
    }

    #[test]
    fn best_update_examples() {
        assert_eq!(best_update((1.0, 5.0), (2.0, 3.0)), (2.0, 3.0));
        assert_eq!(best_update((1.0, 5.0), (2.0, 5.0)), (1.0, 5.0));
        assert_eq!(best_update((0.0, 0.0), (-0.414, 0.1716)), (0.0, 0.0));
    }

    #[test]
    fn sgm_single_halving_step_hits_the_kink() {
        let f = abs_on(-2.0, 2.0);
        let cfg = RunConfig::new(1.0).with_schedule(StepSchedule::ShorHalving { t0: 1.0 });
        let tr = sgm_run(&f, cfg).unwrap();
        assert_eq!(tr.records.len(), 2);
        assert_eq!(tr.records[1].x, 0.0);
        assert_eq!(tr.stop_reason, StopReason::ZeroDerivative);
        assert_eq!(tr.last().x_best, 0.0);
        assert_eq!(tr.records[0].envelope, Some(1.0));
        assert_eq!(tr.records[0].step, Some(1.0));
        assert_eq!(tr.last().step, None);
    }

    #[test]
    fn sgm_constant_step_on_quadratic_halves() {
        let f = builtin_power_p(2.0).unwrap();
        let cfg = RunConfig::new(1.0)
            .with_schedule(StepSchedule::Constant { gamma: 0.5 })
            .with_max_iters(10);
        let tr = sgm_run(&f, cfg).unwrap();
        // direct recursion x <- x - 0.5 x
        let mut x = 1.0f64;
        for rec in &tr.records {
            assert_eq!(rec.x, x);
            x -= 0.5 * x;
        }
        assert_eq!(tr.last().x, 2f64.powi(-10));
        assert_eq!(tr.stop_reason, StopReason::MaxIters);
        assert_eq!(tr.iterations(), 10);
    }

    #[test]
    fn sgm_leaves_the_kink_minimizer_but_keeps_it_as_best() {
        let f = builtin_kink_counterexample();
        let cfg = RunConfig::new(0.0)
            .with_schedule(StepSchedule::Constant { gamma: 1.0 })
            .with_max_iters(1);
        let tr = sgm_run(&f, cfg).unwrap();
        let x1 = tr.records[1];
        assert_relative_eq!(x1.x, 1.0 - 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(x1.fx, 3.0 - 2.0 * 2f64.sqrt(), max_relative = 1e-13);
        assert_eq!((x1.x_best, x1.f_best), (0.0, 0.0));
    }

    #[test]
    fn isgm_on_abs_from_0995() {
        let f = abs_on(-1.0, 1.0);
        let tr = isgm_run(&f, RunConfig::new(0.995).with_max_iters(30)).unwrap();
        // hand recursion: t = 1, 1/2, 1/4, ...
        let expect = [
            0.995,
            0.995 - 1.0,
            0.995 - 1.0 + 0.5,
            0.995 - 1.0 + 0.5 - 0.25,
        ];
        for (rec, e) in tr.records.iter().zip(expect) {
            assert_relative_eq!(rec.x, e, epsilon = 1e-15);
        }
        for rec in &tr.records[1..] {
            assert!(rec.x.abs() <= 2f64.powi(1 - rec.k as i32));
            assert_eq!(rec.envelope, Some(2.0 * 0.5f64.powi(rec.k as i32)));
        }
        assert_eq!(tr.records[0].step, Some(1.0));
        assert_eq!(tr.records[1].step, Some(0.5));
    }

    #[test]
    fn isgm_stops_immediately_at_the_kink() {
        let tr = isgm_run(&abs_on(-1.0, 1.0), RunConfig::new(0.0)).unwrap();
        assert_eq!(tr.iterations(), 0);
        assert_eq!(tr.stop_reason, StopReason::ZeroDerivative);
        assert_eq!(tr.last().x_best, 0.0);
    }

    #[test]
    fn isgm_huber_first_step() {
        let f = builtin_huber(0.5).unwrap();
        let tr = isgm_run(&f, RunConfig::new(-1.995)).unwrap();
        assert_relative_eq!(tr.records[1].x, 0.005, epsilon = 1e-15);
        assert_eq!(tr.records[0].step, Some(2.0));
    }

    #[test]
    fn isgm_rejects_unbounded_domains() {
        let f = abs_on(f64::NEG_INFINITY, f64::INFINITY);
        assert!(matches!(
            isgm_run(&f, RunConfig::new(1.0)),
            Err(Error::BadConfig(_))
        ));
    }

    #[test]
    fn sm_constant_step_on_abs() {
        let f = abs_on(-2.0, 2.0);
        let tr = sm_run(&f, RunConfig::new(1.0), Subgradient::SymmetricDerivative).unwrap();
        assert_eq!(tr.iterations(), 20);
        // 20 steps of 0.005 in the linear region
        assert_relative_eq!(tr.last().x, 0.9, epsilon = 1e-12);
        assert_relative_eq!(tr.last().f_best, 0.9, epsilon = 1e-12);
    }

    #[test]
    fn sm_stops_at_zero_symmetric_derivative() {
        let tr = sm_run(
            &abs_on(-2.0, 2.0),
            RunConfig::new(0.0),
            Subgradient::default(),
        )
        .unwrap();
        assert_eq!(tr.iterations(), 0);
        assert_eq!(tr.stop_reason, StopReason::ZeroDerivative);
    }

    #[test]
    fn sm_diminishing_first_step_on_power() {
        let f = builtin_power_p(1.3).unwrap();
        let cfg = RunConfig::new(2.995).with_schedule(StepSchedule::Diminishing);
        let tr = sm_run(&f, cfg, Subgradient::SymmetricDerivative).unwrap();
        // 2.995 - 2.995^0.3 to 40 digits
        assert_relative_eq!(
            tr.records[1].x,
            1.605_306_430_182_855_4,
            max_relative = 1e-14
        );
        assert_eq!(tr.records[0].step, Some(1.0));
        assert_eq!(tr.records[1].step, Some(0.5));
    }

    #[test]
    fn sm_rejects_halving_schedule() {
        let cfg = RunConfig::new(1.0).with_schedule(StepSchedule::ShorHalving { t0: 1.0 });
        assert!(matches!(
            sm_run(&abs_on(-2.0, 2.0), cfg, Subgradient::default()),
            Err(Error::BadConfig(_))
        ));
    }

    #[test]
    fn bad_configs_are_rejected() {
        let f = abs_on(-1.0, 1.0);
        assert!(sgm_run(&f, RunConfig::new(1.0)).is_err());
        assert!(sgm_run(&f, RunConfig::new(0.5).with_eta(0.0)).is_err());
        assert!(sgm_run(&f, RunConfig::new(0.5).with_max_iters(0)).is_err());
        assert!(sgm_run(&f, RunConfig::new(0.5).with_mesh(-1.0)).is_err());
        let bad = RunConfig::new(0.5).with_schedule(StepSchedule::Constant { gamma: 0.0 });
        assert!(sgm_run(&f, bad).is_err());
        assert!(isgm_run(&f, RunConfig::new(-1.0)).is_err());
    }

    #[test]
    fn repeated_escapes_stop_the_run() {
        // gamma = 10 on |x| bounces between the two clamped edges
        let f = abs_on(-1.0, 1.0);
        let cfg = RunConfig::new(0.5).with_schedule(StepSchedule::Constant { gamma: 10.0 });
        let tr = sm_run(&f, cfg, Subgradient::default()).unwrap();
        assert_eq!(tr.stop_reason, StopReason::OutOfDomain);
        assert_eq!(tr.iterations(), 2);
        for rec in &tr.records {
            assert!(f.domain().contains(rec.x));
        }
        // a single clamp is tolerated
        let cfg = RunConfig::new(0.5).with_schedule(StepSchedule::Constant { gamma: 1.2 });
        let tr = sm_run(&f, cfg, Subgradient::default()).unwrap();
        assert_ne!(tr.stop_reason, StopReason::OutOfDomain);
    }

    #[test]
    fn finite_difference_mode_is_recorded() {
        let f = builtin_huber(0.5).unwrap();
        let cfg = RunConfig::new(1.0).with_derivative_mode(EstimateMethod::FiniteDifference);
        let tr = isgm_run(&f, cfg).unwrap();
        assert_eq!(tr.derivative_source, EstimateMethod::FiniteDifference);
        let no_pair = Objective::new("sq", Interval::new(-1.0, 1.0).unwrap(), |x| x * x);
        let tr = isgm_run(&no_pair, RunConfig::new(0.3)).unwrap();
        assert_eq!(tr.derivative_source, EstimateMethod::FiniteDifference);
        assert!(tr.last().x.abs() < 1e-5);
    }
}
