//! Grid and random-sample checks of the properties that the specular
//! derivative and the solvers are expected to satisfy.
//!
//! Each check returns a [`CheckReport`]: the worst violation found, the
//! tolerance it was held to, and the points where the worst case occurred.
//! A report passes exactly when `worst_violation <= tolerance`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::objectives::{abs_value, Interval, Objective};
use crate::optimizers::{
    isgm_run, sgm_run, sm_run, Method, RunConfig, RunTrace, StepSchedule, Subgradient,
};
use crate::sampling::{heavy_tailed, initial_point, trial_rng, uniform_in};
use crate::specular::{
    a_formula, pair_at, specular_from_pair, specular_sign, DerivativeMode, OneSidedPair,
};

/// Tolerance on `f(x) - f^spd(y)(x - y) - f(y)` with analytic derivatives.
pub const SUBGRADIENT_TOL_ANALYTIC: f64 = 1e-9;
/// Same, with finite-difference derivatives.
pub const SUBGRADIENT_TOL_FD: f64 = 1e-4;
pub const MONOTONE_TOL_ANALYTIC: f64 = 1e-12;
pub const MONOTONE_TOL_FD: f64 = 1e-4;
pub const ENVELOPE_TOL: f64 = 1e-9;
pub const QUASI_MVT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub passed: bool,
    pub worst_violation: f64,
    pub tolerance: f64,
    /// Coordinates of the worst case (meaning depends on the check).
    pub witness: Vec<f64>,
    pub samples: usize,
}

impl CheckReport {
    fn from_worst(name: impl Into<String>, tolerance: f64, worst: Worst, samples: usize) -> Self {
        let worst_violation = worst.value.max(0.0);
        Self {
            check_name: name.into(),
            passed: worst_violation <= tolerance,
            worst_violation,
            tolerance,
            witness: worst.witness,
            samples,
        }
    }

    /// Merge reports of the same check over several inputs (e.g. traces).
    pub fn combine(name: impl Into<String>, reports: &[CheckReport]) -> Self {
        let tolerance = reports.first().map_or(0.0, |r| r.tolerance);
        let mut worst = Worst::default();
        for r in reports {
            worst.offer(r.worst_violation, || r.witness.clone());
        }
        let mut out = Self::from_worst(
            name,
            tolerance,
            worst,
            reports.iter().map(|r| r.samples).sum(),
        );
        out.passed = reports.iter().all(|r| r.passed);
        out
    }

    /// The line-oriented report format:
    /// `CHECK <name> PASS|FAIL worst=<v> samples=<n> [witness=<a;b;..>]`.
    pub fn line(&self) -> String {
        let mut s = format!(
            "CHECK {} {} worst={} samples={}",
            self.check_name,
            if self.passed { "PASS" } else { "FAIL" },
            self.worst_violation,
            self.samples
        );
        if !self.witness.is_empty() {
            let pts: Vec<String> = self.witness.iter().map(|w| w.to_string()).collect();
            s.push_str(" witness=");
            s.push_str(&pts.join(";"));
        }
        s
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

/// Running maximum of a violation together with where it happened.
#[derive(Debug, Default)]
struct Worst {
    value: f64,
    witness: Vec<f64>,
}

impl Worst {
    fn offer(&mut self, value: f64, witness: impl FnOnce() -> Vec<f64>) {
        if value > self.value || (self.witness.is_empty() && value > 0.0) {
            self.value = value;
            self.witness = witness();
        }
    }
}

/// Evenly spaced points on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || n < 2 {
            return Err(Error::BadParameter(format!(
                "grid needs finite lo < hi and n >= 2, got [{lo}, {hi}] with n = {n}"
            )));
        }
        Ok(Self { lo, hi, n })
    }

    /// `n` points across a bounded open domain, inset by `1e-9 * width`.
    pub fn for_domain(domain: Interval, n: usize) -> Result<Self> {
        if !domain.is_bounded() {
            return Err(Error::BadParameter(format!(
                "grid needs a bounded domain, got {domain}"
            )));
        }
        let mu = domain.inset();
        Self::new(domain.lo + mu, domain.hi - mu, n)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.n - 1) as f64;
        // convex combination keeps symmetric grids exactly symmetric
        (0..self.n).map(move |i| {
            let t = i as f64 / last;
            (1.0 - t) * self.lo + t * self.hi
        })
    }
}

fn uses_fd(f: &Objective, mode: DerivativeMode) -> bool {
    matches!(mode, DerivativeMode::FiniteDifference { .. }) || !f.has_analytic_pair()
}

struct GridSample {
    x: Vec<f64>,
    fx: Vec<f64>,
    pair: Vec<OneSidedPair>,
    spd: Vec<f64>,
}

fn sample_grid(f: &Objective, grid: Grid, mode: DerivativeMode) -> Result<GridSample> {
    let x: Vec<f64> = grid.points().collect();
    let fx = x.iter().map(|&v| f.value(v)).collect::<Result<Vec<_>>>()?;
    let pair = x
        .iter()
        .map(|&v| pair_at(f, v, mode).map(|p| p.0))
        .collect::<Result<Vec<_>>>()?;
    let spd = pair.iter().map(|&p| specular_from_pair(p)).collect();
    Ok(GridSample { x, fx, pair, spd })
}

fn named(check: &str, f: &Objective) -> String {
    format!("{check}[{}]", f.name())
}

/// Draw `(alpha, beta)` with `beta <= alpha` and `|alpha + beta| >= 1e-9`.
fn ordered_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let (a, b) = (heavy_tailed(rng), heavy_tailed(rng));
        let (alpha, beta) = if a >= b { (a, b) } else { (b, a) };
        if (alpha + beta).abs() >= 1e-9 {
            return (alpha, beta);
        }
    }
}

/// `beta <= A(alpha, beta) <= alpha` on random ordered pairs, relative
/// tolerance `1e-12 * max(1, |alpha|, |beta|)`.
pub fn check_a_bounds(samples: usize, seed: u64) -> CheckReport {
    let mut rng = trial_rng(seed, 0);
    let mut worst = Worst::default();
    for _ in 0..samples {
        let (alpha, beta) = ordered_pair(&mut rng);
        let a = a_formula(alpha, beta).expect("sum bounded away from zero");
        let scale = 1f64.max(alpha.abs()).max(beta.abs());
        let v = (beta - a).max(a - alpha) / scale;
        worst.offer(v, || vec![alpha, beta]);
    }
    CheckReport::from_worst("a_bounds", 1e-12, worst, samples)
}

/// `specular_sign(p) == sign(f^spd)` exactly and `2 |f^spd| <= |alpha + beta| + 1e-12`
/// on random (unordered) pairs.
pub fn check_sign_and_magnitude(samples: usize, seed: u64) -> CheckReport {
    let mut rng = trial_rng(seed, 1);
    let mut worst = Worst::default();
    for _ in 0..samples {
        let p = OneSidedPair {
            right: heavy_tailed(&mut rng),
            left: heavy_tailed(&mut rng),
        };
        let spd = specular_from_pair(p);
        let sign_of_spd = if spd > 0.0 {
            1
        } else if spd < 0.0 {
            -1
        } else {
            0
        };
        if specular_sign(p) != sign_of_spd {
            worst.offer(f64::INFINITY, || vec![p.right, p.left]);
        }
        let excess = 2.0 * spd.abs() - p.sum().abs();
        worst.offer(excess, || vec![p.right, p.left]);
    }
    CheckReport::from_worst("sign_and_magnitude", 1e-12, worst, samples)
}

/// First-order condition `f(x) >= f^spd(y)(x - y) + f(y)` over all ordered grid
/// pairs. Witness: `(x, y)`.
pub fn check_subgradient_inequality(
    f: &Objective,
    grid: Grid,
    mode: DerivativeMode,
) -> Result<CheckReport> {
    let s = sample_grid(f, grid, mode)?;
    let mut worst = Worst::default();
    for (j, &y) in s.x.iter().enumerate() {
        for (i, &x) in s.x.iter().enumerate() {
            let gap = s.fx[i] - s.spd[j] * (x - y) - s.fx[j];
            worst.offer(-gap, || vec![x, y]);
        }
    }
    let tol = if uses_fd(f, mode) {
        SUBGRADIENT_TOL_FD
    } else {
        SUBGRADIENT_TOL_ANALYTIC
    };
    Ok(CheckReport::from_worst(
        named("subgradient_inequality", f),
        tol,
        worst,
        s.x.len() * s.x.len(),
    ))
}

/// `f^spd` nondecreasing along the grid. Witness: the offending neighbours.
pub fn check_specular_monotone(
    f: &Objective,
    grid: Grid,
    mode: DerivativeMode,
) -> Result<CheckReport> {
    let s = sample_grid(f, grid, mode)?;
    let mut worst = Worst::default();
    for i in 1..s.x.len() {
        worst.offer(s.spd[i - 1] - s.spd[i], || vec![s.x[i - 1], s.x[i]]);
    }
    let tol = if uses_fd(f, mode) {
        MONOTONE_TOL_FD
    } else {
        MONOTONE_TOL_ANALYTIC
    };
    Ok(CheckReport::from_worst(
        named("specular_monotone", f),
        tol,
        worst,
        s.x.len(),
    ))
}

/// On every maximal run of grid points where `f^spd > 0` (resp. `< 0`, `= 0`
/// within `1e-12`), `f` is strictly increasing (resp. strictly decreasing,
/// constant within `1e-9`).
///
/// Strictness failures (equal neighbouring values in a signed run) count as a
/// violation of one unit in the last place of the value.
pub fn check_sign_monotonicity_props(
    f: &Objective,
    grid: Grid,
    mode: DerivativeMode,
) -> Result<CheckReport> {
    let s = sample_grid(f, grid, mode)?;
    let class = |d: f64| {
        if d > 1e-12 {
            1
        } else if d < -1e-12 {
            -1
        } else {
            0
        }
    };
    let mut worst = Worst::default();
    for i in 1..s.x.len() {
        let c = class(s.spd[i]);
        if c != class(s.spd[i - 1]) {
            continue;
        }
        let (prev, next) = (s.fx[i - 1], s.fx[i]);
        let v = match c {
            1 if next <= prev => (prev - next).max(ulp(prev)),
            -1 if next >= prev => (next - prev).max(ulp(prev)),
            // constant runs are held to 1e-9; rescale onto the zero tolerance
            0 => (next - prev).abs() - 1e-9,
            _ => 0.0,
        };
        worst.offer(v, || vec![s.x[i - 1], s.x[i]]);
    }
    Ok(CheckReport::from_worst(
        named("sign_monotonicity", f),
        0.0,
        worst,
        s.x.len(),
    ))
}

fn ulp(v: f64) -> f64 {
    let a = v.abs();
    if a == 0.0 {
        f64::MIN_POSITIVE
    } else {
        f64::from_bits(a.to_bits() + 1) - a
    }
}

/// `f^spd(x) (x - x*) >= -1e-12` everywhere on the grid, and `>= 1e-12` where
/// `|x - x*| >= 1e-3` and `f^spd(x) != 0`. `x*` is the minimizer nearest `x`.
pub fn check_alignment(f: &Objective, grid: Grid, mode: DerivativeMode) -> Result<CheckReport> {
    let m = f
        .minimizers()
        .ok_or_else(|| Error::BadParameter(format!("{} has no declared minimizer", f.name())))?;
    let s = sample_grid(f, grid, mode)?;
    let mut worst = Worst::default();
    for (i, &x) in s.x.iter().enumerate() {
        let offset = x - m.nearest(x);
        let product = s.spd[i] * offset;
        let strict = offset.abs() >= 1e-3 && s.spd[i] != 0.0;
        // both conditions expressed against the common tolerance 1e-12
        let v = if strict { 2e-12 - product } else { -product };
        worst.offer(v, || vec![x, product]);
    }
    Ok(CheckReport::from_worst(
        named("alignment", f),
        1e-12,
        worst,
        s.x.len(),
    ))
}

/// At most one grid point with `f'_+ f'_- < -1e-12`. Witness: offending points.
pub fn check_kink_uniqueness(
    f: &Objective,
    grid: Grid,
    mode: DerivativeMode,
) -> Result<CheckReport> {
    let s = sample_grid(f, grid, mode)?;
    let kinks: Vec<f64> =
        s.x.iter()
            .zip(&s.pair)
            .filter(|(_, p)| p.right * p.left < -1e-12)
            .map(|(&x, _)| x)
            .collect();
    let excess = kinks.len().saturating_sub(1) as f64;
    let mut report = CheckReport::from_worst(
        named("kink_uniqueness", f),
        0.0,
        Worst {
            value: excess,
            witness: Vec::new(),
        },
        s.x.len(),
    );
    if !report.passed {
        report.witness = kinks;
    }
    Ok(report)
}

/// Witness search for points `c1, c2` of `[lo, hi]` with
/// `f^spd(c2) <= (f(hi) - f(lo)) / (hi - lo) <= f^spd(c1)` up to `1e-6`.
///
/// The search grid has `grid_n` points inset from `lo` and `hi` by
/// `1e-9 (hi - lo)`. Witness: `(c1, c2)` when found, else the grid bounds.
pub fn quasi_mvt_witness(
    f: &Objective,
    lo: f64,
    hi: f64,
    grid_n: usize,
    mode: DerivativeMode,
) -> Result<CheckReport> {
    if grid_n < 3 {
        return Err(Error::BadParameter(format!(
            "grid_n must be >= 3, got {grid_n}"
        )));
    }
    let slope = (f.value(hi)? - f.value(lo)?) / (hi - lo);
    let mu = 1e-9 * (hi - lo);
    let grid = Grid::new(lo + mu, hi - mu, grid_n)?;
    let s = sample_grid(f, grid, mode)?;
    let (mut c1, mut c2) = (0, 0);
    for i in 0..s.x.len() {
        if s.spd[i] > s.spd[c1] {
            c1 = i;
        }
        if s.spd[i] < s.spd[c2] {
            c2 = i;
        }
    }
    let shortfall = (slope - s.spd[c1]).max(s.spd[c2] - slope);
    let mut report = CheckReport::from_worst(
        named("quasi_mvt", f),
        QUASI_MVT_TOL,
        Worst {
            value: shortfall,
            witness: Vec::new(),
        },
        s.x.len(),
    );
    report.witness = if report.passed {
        vec![s.x[c1], s.x[c2]]
    } else {
        vec![lo, hi]
    };
    Ok(report)
}

/// [`quasi_mvt_witness`] on `count` random subintervals of the domain.
pub fn check_quasi_mvt_random(
    f: &Objective,
    count: usize,
    grid_n: usize,
    seed: u64,
    mode: DerivativeMode,
) -> Result<CheckReport> {
    let mut rng = trial_rng(seed, 2);
    let mut reports = Vec::with_capacity(count);
    while reports.len() < count {
        let (u, v) = (
            uniform_in(f.domain(), &mut rng),
            uniform_in(f.domain(), &mut rng),
        );
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        if hi - lo < 1e-6 {
            continue;
        }
        reports.push(quasi_mvt_witness(f, lo, hi, grid_n, mode)?);
    }
    let mut out = CheckReport::combine(named("quasi_mvt", f), &reports);
    if out.passed {
        out.witness.clear();
    } else if let Some(bad) = reports.iter().find(|r| !r.passed) {
        out.witness = bad.witness.clone();
    }
    Ok(out)
}

/// Envelope of the halving schedule.
///
/// * ISGM: `|x_k - x*| <= (b - a) / 2^k` for `k >= 1`.
/// * SGM with [`StepSchedule::ShorHalving`]: `|x_k - x*| <= t_k` for all `k`.
///   Raw SGM steps can overshoot this bound; use [`check_lagged_envelope`] for
///   the bound that always holds in one dimension.
///
/// Witness: `(k, x_k, bound)` of the worst exceedance.
pub fn check_envelope(trace: &RunTrace, x_star: f64) -> Result<CheckReport> {
    let first = match (trace.method, trace.config.schedule) {
        (Method::Isgm, _) => 1,
        (Method::Sgm, StepSchedule::ShorHalving { .. }) => 0,
        (m, s) => {
            return Err(Error::BadTrace(format!(
                "no envelope for {m} with schedule {s:?}"
            )))
        }
    };
    let name = format!("envelope_{}", trace.method.to_string().to_lowercase());
    Ok(envelope_report(name, trace, x_star, first, |rec| {
        rec.envelope
    }))
}

/// `|x_k - x*| <= t_{k-1} = 2 t_k` for `k >= 1` on an SGM trace with the
/// halving schedule and `t0 >= |x0 - x*|`.
pub fn check_lagged_envelope(trace: &RunTrace, x_star: f64) -> Result<CheckReport> {
    if !matches!(
        (trace.method, trace.config.schedule),
        (Method::Sgm, StepSchedule::ShorHalving { .. })
    ) {
        return Err(Error::BadTrace(
            "the lagged envelope applies to SGM with the halving schedule".into(),
        ));
    }
    Ok(envelope_report(
        "envelope_sgm_lagged".into(),
        trace,
        x_star,
        1,
        |rec| rec.envelope.map(|t| 2.0 * t),
    ))
}

fn envelope_report(
    name: String,
    trace: &RunTrace,
    x_star: f64,
    first: usize,
    bound: impl Fn(&crate::optimizers::IterationRecord) -> Option<f64>,
) -> CheckReport {
    let mut worst = Worst::default();
    let mut n = 0;
    for rec in trace.records.iter().skip(first) {
        if let Some(b) = bound(rec) {
            n += 1;
            worst.offer((rec.x - x_star).abs() - b, || vec![rec.k as f64, rec.x, b]);
        }
    }
    CheckReport::from_worst(name, ENVELOPE_TOL, worst, n)
}

/// Smallest `c` with `|x_k - x*| <= c 2^-k` over the trace.
pub fn rlinear_constant(trace: &RunTrace, x_star: f64) -> f64 {
    trace
        .records
        .iter()
        .map(|r| (r.x - x_star).abs() * 2f64.powi(r.k as i32))
        .fold(0.0, f64::max)
}

/// R-linear rate with ratio 1/2: the fitted constant of [`rlinear_constant`]
/// must not exceed `4 (b - a)`, and consecutive envelope values (when the trace
/// has them) must halve exactly.
///
/// The violation is `max(0, c - 4 (b - a))`, plus `|ratio - 1/2|` for every
/// envelope pair that does not halve. Witness: `(c, limit)`.
pub fn check_rlinear(trace: &RunTrace, x_star: f64) -> Result<CheckReport> {
    if !trace.domain.is_bounded() {
        return Err(Error::BadTrace(
            "R-linear fit needs a bounded domain".into(),
        ));
    }
    let c = rlinear_constant(trace, x_star);
    let limit = 4.0 * trace.domain.width();
    let ratio_error: f64 = trace
        .records
        .windows(2)
        .filter_map(|w| match (w[0].envelope, w[1].envelope) {
            (Some(a), Some(b)) => Some((b / a - 0.5).abs()),
            _ => None,
        })
        .sum();
    let violation = (c - limit).max(0.0) + ratio_error;
    let mut report = CheckReport::from_worst(
        format!("rlinear_{}", trace.method.to_string().to_lowercase()),
        0.0,
        Worst {
            value: violation,
            witness: Vec::new(),
        },
        trace.records.len(),
    );
    report.witness = vec![c, limit];
    Ok(report)
}

/// Options for [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub grid_n: usize,
    pub mode: DerivativeMode,
    pub seed: u64,
    pub random_samples: usize,
    pub trials: u64,
    pub iterations: usize,
    pub quasi_mvt_intervals: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            grid_n: 201,
            mode: DerivativeMode::analytic(),
            seed: 42,
            random_samples: 100_000,
            trials: 20,
            iterations: 30,
            quasi_mvt_intervals: 100,
        }
    }
}

/// Reports from [`run_suite`], sorted by check name.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    /// Literal `|x_k - x*| <= t_k` reports for SGM traces that overshoot it.
    pub overshoots: Vec<CheckReport>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Every check over every objective in `objectives`.
///
/// Grid checks run on all of them; checks that need a minimizer or a convex
/// objective are skipped for objectives without a declared minimizer.
pub fn run_suite(objectives: &[Objective], opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let mut reports = vec![
        check_a_bounds(opts.random_samples, opts.seed),
        check_sign_and_magnitude(opts.random_samples, opts.seed),
        rlinear_contrast()?,
    ];
    let mut overshoots = Vec::new();
    for f in objectives {
        let grid = Grid::for_domain(f.domain(), opts.grid_n)?;
        reports.push(check_subgradient_inequality(f, grid, opts.mode)?);
        reports.push(check_specular_monotone(f, grid, opts.mode)?);
        reports.push(check_sign_monotonicity_props(f, grid, opts.mode)?);
        reports.push(check_kink_uniqueness(f, grid, opts.mode)?);
        reports.push(check_quasi_mvt_random(
            f,
            opts.quasi_mvt_intervals,
            opts.grid_n.max(3),
            opts.seed,
            opts.mode,
        )?);
        if f.minimizers().is_none() {
            continue;
        }
        reports.push(check_alignment(f, grid, opts.mode)?);
        let traces = halving_traces(f, opts)?;
        reports.extend(traces.reports);
        overshoots.extend(traces.overshoots);
    }
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    Ok(SuiteOutcome {
        reports,
        overshoots,
    })
}

struct TraceChecks {
    reports: Vec<CheckReport>,
    overshoots: Vec<CheckReport>,
}

fn halving_traces(f: &Objective, opts: &SuiteOptions) -> Result<TraceChecks> {
    let m = f.minimizers().expect("caller checked");
    let d = f.domain();
    let mut isgm_env = Vec::new();
    let mut isgm_rate = Vec::new();
    let mut sgm_lagged = Vec::new();
    let mut overshoots = Vec::new();
    for i in 0..opts.trials {
        let x0 = initial_point(d, opts.seed, i);
        let x_star = m.nearest(x0);
        let cfg = RunConfig::new(x0)
            .with_max_iters(opts.iterations)
            .with_mesh(opts.mode.mesh())
            .with_derivative_mode(match opts.mode {
                DerivativeMode::Analytic { .. } => crate::specular::EstimateMethod::Analytic,
                DerivativeMode::FiniteDifference { .. } => {
                    crate::specular::EstimateMethod::FiniteDifference
                }
            });
        let isgm = isgm_run(f, cfg)?;
        isgm_env.push(check_envelope(&isgm, x_star)?);
        isgm_rate.push(check_rlinear(&isgm, x_star)?);

        let sgm = sgm_run(
            f,
            cfg.with_schedule(StepSchedule::ShorHalving { t0: d.width() }),
        )?;
        sgm_lagged.push(check_lagged_envelope(&sgm, x_star)?);
        let literal = check_envelope(&sgm, x_star)?;
        if !literal.passed {
            let mut r = literal;
            r.check_name = format!("envelope_sgm[{}] trial={i} x0={x0}", f.name());
            overshoots.push(r);
        }
    }
    Ok(TraceChecks {
        reports: vec![
            CheckReport::combine(named("envelope_isgm", f), &isgm_env),
            CheckReport::combine(named("rlinear_isgm", f), &isgm_rate),
            CheckReport::combine(named("envelope_sgm_lagged", f), &sgm_lagged),
        ],
        overshoots,
    })
}

/// The constant-step baseline on `|x|` must *not* fit the 1/2 rate over 40
/// iterations. Passes when [`check_rlinear`] rejects that trace.
pub fn rlinear_contrast() -> Result<CheckReport> {
    let f = abs_value(Interval { lo: -2.0, hi: 2.0 });
    let cfg = RunConfig::new(1.0)
        .with_schedule(StepSchedule::Constant { gamma: 0.005 })
        .with_max_iters(40);
    let trace = sm_run(&f, cfg, Subgradient::SymmetricDerivative)?;
    let fit = check_rlinear(&trace, 0.0)?;
    Ok(CheckReport {
        check_name: "rlinear_contrast_sm".into(),
        passed: !fit.passed,
        worst_violation: if fit.passed { 1.0 } else { 0.0 },
        tolerance: 0.0,
        witness: fit.witness,
        samples: fit.samples,
    })
}
