//! Objectives on open intervals, with the benchmark registry.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::specular::{pair_at, DerivativeMode, OneSidedPair};

/// Names accepted by [`by_name`], in registry order.
pub const BUILTIN_NAMES: [&str; 5] = [
    "sum_abs",
    "piecewise_power",
    "huber",
    "power_p",
    "kink_counterexample",
];

/// Parameters used by the registry for the parametrised builtins.
pub const HUBER_DELTA: f64 = 0.5;
pub const POWER_P: f64 = 1.3;
pub const PIECEWISE_P: f64 = 1.3;
pub const PIECEWISE_Q: f64 = 1.2;

/// An open interval `(lo, hi)`. Either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::BadParameter(format!("empty interval ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Inset used for clamping and grids: `1e-9 * width`.
    pub fn inset(&self) -> f64 {
        1e-9 * self.width()
    }

    pub(crate) fn out_of_domain(&self, x: f64) -> Error {
        Error::OutOfDomain {
            x,
            lo: self.lo,
            hi: self.hi,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Closed set of known global minimizers, `[lo, hi]` (a point when `lo == hi`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizerSet {
    pub lo: f64,
    pub hi: f64,
}

impl MinimizerSet {
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn nearest(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    pub fn distance(&self, x: f64) -> f64 {
        (x - self.nearest(x)).abs()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

type EvalFn = dyn Fn(f64) -> f64 + Send + Sync;
type PairFn = dyn Fn(f64) -> OneSidedPair + Send + Sync;

/// A real function on an open interval.
///
/// Cloning is cheap; the callbacks are shared. Callbacks must be `Send + Sync`,
/// so an objective can be evaluated from several threads at once.
#[derive(Clone)]
pub struct Objective {
    name: String,
    domain: Interval,
    eval: Arc<EvalFn>,
    analytic_pair: Option<Arc<PairFn>>,
    minimizers: Option<MinimizerSet>,
    convexity_asserted: bool,
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("analytic", &self.analytic_pair.is_some())
            .field("minimizers", &self.minimizers)
            .field("convexity_asserted", &self.convexity_asserted)
            .finish()
    }
}

impl Objective {
    pub fn new(
        name: impl Into<String>,
        domain: Interval,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
            analytic_pair: None,
            minimizers: None,
            convexity_asserted: false,
        }
    }

    /// Attach analytic one-sided derivatives `x -> (f'_+(x), f'_-(x))`.
    pub fn with_analytic_pair(
        mut self,
        pair: impl Fn(f64) -> OneSidedPair + Send + Sync + 'static,
    ) -> Self {
        self.analytic_pair = Some(Arc::new(pair));
        self
    }

    pub fn with_minimizers(mut self, minimizers: MinimizerSet) -> Self {
        self.minimizers = Some(minimizers);
        self
    }

    pub fn with_convexity_asserted(mut self, convex: bool) -> Self {
        self.convexity_asserted = convex;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn minimizers(&self) -> Option<MinimizerSet> {
        self.minimizers
    }

    pub fn convexity_asserted(&self) -> bool {
        self.convexity_asserted
    }

    pub fn has_analytic_pair(&self) -> bool {
        self.analytic_pair.is_some()
    }

    /// `f(x)`; errors outside the open domain or on a non-finite value.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(self.domain.out_of_domain(x));
        }
        let v = (self.eval)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.domain.out_of_domain(x))
        }
    }

    /// Analytic one-sided derivatives at `x`, if the objective provides them.
    pub fn analytic_pair(&self, x: f64) -> Option<Result<OneSidedPair>> {
        let pair = self.analytic_pair.as_ref()?;
        if !self.domain.contains(x) {
            return Some(Err(self.domain.out_of_domain(x)));
        }
        Some(Ok(pair(x)))
    }

    /// `f(x*)`, evaluated at the lower end of the minimizer set.
    pub fn min_value(&self) -> Option<f64> {
        let m = self.minimizers?;
        self.value(m.lo).ok()
    }
}

/// Look up a builtin by its registry name.
pub fn by_name(name: &str) -> Result<Objective> {
    match name {
        "sum_abs" => Ok(builtin_sum_abs()),
        "piecewise_power" => builtin_piecewise_power(),
        "huber" => builtin_huber(HUBER_DELTA),
        "power_p" => builtin_power_p(POWER_P),
        "kink_counterexample" => Ok(builtin_kink_counterexample()),
        other => Err(Error::UnknownObjective(other.to_string())),
    }
}

/// All five builtins in registry order.
pub fn builtins() -> Vec<Objective> {
    BUILTIN_NAMES
        .iter()
        .map(|n| by_name(n).expect("registry names are valid"))
        .collect()
}

/// Slopes of `|x - c|`: right slope then left slope.
fn abs_slopes(x: f64, c: f64) -> (f64, f64) {
    if x > c {
        (1.0, 1.0)
    } else if x < c {
        (-1.0, -1.0)
    } else {
        (1.0, -1.0)
    }
}

/// `sum_{i=0}^{99} |x - i/100| + |x + i/100|` on `(-1, 1)`.
pub fn builtin_sum_abs() -> Objective {
    let centers = || (0..100).map(|i| i as f64 / 100.0);
    Objective::new("sum_abs", Interval { lo: -1.0, hi: 1.0 }, move |x| {
        centers().map(|c| (x - c).abs() + (x + c).abs()).sum()
    })
    .with_analytic_pair(move |x| {
        let (mut right, mut left) = (0.0, 0.0);
        for c in centers() {
            for s in [abs_slopes(x, c), abs_slopes(x, -c)] {
                right += s.0;
                left += s.1;
            }
        }
        OneSidedPair { right, left }
    })
    .with_minimizers(MinimizerSet::point(0.0))
    .with_convexity_asserted(true)
}

/// `|x|^p / p` left of 0, `|x|^q / q` on `[0, 1/2)`, then the line
/// `3 (x - 1/2) + (1/2)^q / q`, on `(-1, 1)` with `p = 1.3`, `q = 1.2`.
pub fn builtin_piecewise_power() -> Result<Objective> {
    piecewise_power(PIECEWISE_P, PIECEWISE_Q)
}

fn piecewise_power(p: f64, q: f64) -> Result<Objective> {
    if !(p > 1.0 && q > 1.0) {
        return Err(Error::BadParameter(format!(
            "piecewise_power needs p > 1 and q > 1, got p = {p}, q = {q}"
        )));
    }
    let joint = 0.5f64.powf(q) / q;
    let eval = move |x: f64| {
        if x < 0.0 {
            x.abs().powf(p) / p
        } else if x < 0.5 {
            x.powf(q) / q
        } else {
            3.0 * (x - 0.5) + joint
        }
    };
    let slope = move |x: f64| {
        if x < 0.0 {
            -x.abs().powf(p - 1.0)
        } else if x < 0.5 {
            x.powf(q - 1.0)
        } else {
            3.0
        }
    };
    Ok(
        Objective::new("piecewise_power", Interval { lo: -1.0, hi: 1.0 }, eval)
            .with_analytic_pair(move |x| {
                if x == 0.0 {
                    OneSidedPair::smooth(0.0)
                } else if x == 0.5 {
                    OneSidedPair {
                        right: 3.0,
                        left: 0.5f64.powf(q - 1.0),
                    }
                } else {
                    OneSidedPair::smooth(slope(x))
                }
            })
            .with_minimizers(MinimizerSet::point(0.0))
            .with_convexity_asserted(true),
    )
}

/// Huber loss on `(-2, 2)`.
pub fn builtin_huber(delta: f64) -> Result<Objective> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::BadParameter(format!(
            "huber needs delta > 0, got {delta}"
        )));
    }
    Ok(
        Objective::new("huber", Interval { lo: -2.0, hi: 2.0 }, move |x| {
            if x.abs() <= delta {
                0.5 * x * x
            } else {
                delta * (x.abs() - 0.5 * delta)
            }
        })
        .with_analytic_pair(move |x| OneSidedPair::smooth(x.clamp(-delta, delta)))
        .with_minimizers(MinimizerSet::point(0.0))
        .with_convexity_asserted(true),
    )
}

/// `|x|^p / p` on `(-3, 3)`.
pub fn builtin_power_p(p: f64) -> Result<Objective> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::BadParameter(format!("power_p needs p > 1, got {p}")));
    }
    Ok(
        Objective::new("power_p", Interval { lo: -3.0, hi: 3.0 }, move |x| {
            x.abs().powf(p) / p
        })
        .with_analytic_pair(move |x| {
            if x == 0.0 {
                OneSidedPair::smooth(0.0)
            } else {
                OneSidedPair::smooth(x.signum() * x.abs().powf(p - 1.0))
            }
        })
        .with_minimizers(MinimizerSet::point(0.0))
        .with_convexity_asserted(true),
    )
}

/// `x` for `x >= 0`, `x^2` for `x < 0`, on `(-10, 10)`.
///
/// Minimized at 0, yet its specular derivative there is `sqrt(2) - 1`.
pub fn builtin_kink_counterexample() -> Objective {
    Objective::new(
        "kink_counterexample",
        Interval {
            lo: -10.0,
            hi: 10.0,
        },
        |x| if x >= 0.0 { x } else { x * x },
    )
    .with_analytic_pair(|x| {
        if x > 0.0 {
            OneSidedPair::smooth(1.0)
        } else if x < 0.0 {
            OneSidedPair::smooth(2.0 * x)
        } else {
            OneSidedPair {
                right: 1.0,
                left: 0.0,
            }
        }
    })
    .with_minimizers(MinimizerSet::point(0.0))
    .with_convexity_asserted(true)
}

/// `|x|` on the given interval, which must contain 0. Not part of the registry.
pub fn abs_value(domain: Interval) -> Objective {
    Objective::new("abs", domain, f64::abs)
        .with_analytic_pair(|x| {
            let (right, left) = abs_slopes(x, 0.0);
            OneSidedPair { right, left }
        })
        .with_minimizers(MinimizerSet::point(0.0))
        .with_convexity_asserted(true)
}

/// `x^3` on `(-1, 1)`: not convex, used to show that the convexity checks bite.
pub fn planted_cubic() -> Objective {
    Objective::new("planted_cubic", Interval { lo: -1.0, hi: 1.0 }, |x| {
        x * x * x
    })
    .with_analytic_pair(|x| OneSidedPair::smooth(3.0 * x * x))
}

/// Lipschitz constant of a convex `f` on `[c, d]`: `max(|f'_+(c)|, |f'_-(d)|)`.
pub fn lipschitz_bound(f: &Objective, c: f64, d: f64, mode: DerivativeMode) -> Result<f64> {
    if !(c < d) {
        return Err(Error::BadParameter(format!("need c < d, got [{c}, {d}]")));
    }
    let right_at_c = pair_at(f, c, mode)?.0.right;
    let left_at_d = pair_at(f, d, mode)?.0.left;
    Ok(right_at_c.abs().max(left_at_d.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specular::{one_sided_fd, Side};
    use approx::assert_relative_eq;

    /// Slope of the sum-of-absolutes objective by counting summands.
    fn sum_abs_slope_oracle(x: f64, side: Side) -> f64 {
        let mut s = 0.0;
        for i in 0..100 {
            for c in [i as f64 / 100.0, -(i as f64) / 100.0] {
                s += match (x.partial_cmp(&c).unwrap(), side) {
                    (std::cmp::Ordering::Greater, _) => 1.0,
                    (std::cmp::Ordering::Less, _) => -1.0,
                    (std::cmp::Ordering::Equal, Side::Right) => 1.0,
                    (std::cmp::Ordering::Equal, Side::Left) => -1.0,
                };
            }
        }
        s
    }

    fn grid(d: Interval, n: usize) -> Vec<f64> {
        let (lo, hi) = (d.lo + d.inset(), d.hi - d.inset());
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                (1.0 - t) * lo + t * hi
            })
            .collect()
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(builtins().len(), 5);
        for name in BUILTIN_NAMES {
            assert_eq!(by_name(name).unwrap().name(), name);
        }
        assert_eq!(
            by_name("nope").unwrap_err(),
            Error::UnknownObjective("nope".into())
        );
    }

    #[test]
    fn sum_abs_examples() {
        let f = builtin_sum_abs();
        // brute-force sum: 2 * 4950 / 100
        assert_relative_eq!(f.value(0.0).unwrap(), 99.0, max_relative = 1e-14);
        assert_eq!(f.value(0.5).unwrap(), f.value(-0.5).unwrap());
        let p = f.analytic_pair(0.0).unwrap().unwrap();
        assert_eq!((p.right, p.left), (2.0, -2.0));
        let r = one_sided_fd(&f, 0.0, 1e-8, Side::Right).unwrap().value;
        let l = one_sided_fd(&f, 0.0, 1e-8, Side::Left).unwrap().value;
        assert!((r - 2.0).abs() < 1e-4 && (l + 2.0).abs() < 1e-4);
    }

    #[test]
    fn sum_abs_pairs_match_slope_count() {
        let f = builtin_sum_abs();
        for x in grid(f.domain(), 401)
            .into_iter()
            .chain([0.0, 0.37, -0.5, 0.99])
        {
            let p = f.analytic_pair(x).unwrap().unwrap();
            assert_eq!(p.right, sum_abs_slope_oracle(x, Side::Right), "x = {x}");
            assert_eq!(p.left, sum_abs_slope_oracle(x, Side::Left), "x = {x}");
        }
    }

    #[test]
    fn piecewise_power_examples() {
        let f = builtin_piecewise_power().unwrap();
        assert_eq!(f.value(0.0).unwrap(), 0.0);
        // 0.5^1.2 / 1.2 to 40 digits
        assert_relative_eq!(
            f.value(0.5).unwrap(),
            0.362_729_401_373_385_06,
            max_relative = 1e-14
        );
        let p = f.analytic_pair(0.5).unwrap().unwrap();
        assert_eq!(p.right, 3.0);
        assert_relative_eq!(p.left, 0.870_550_563_296_124_1, max_relative = 1e-14);
        let p0 = f.analytic_pair(0.0).unwrap().unwrap();
        assert_eq!((p0.right, p0.left), (0.0, 0.0));
    }

    #[test]
    fn huber_examples() {
        let f = builtin_huber(0.5).unwrap();
        assert_eq!(f.value(0.0).unwrap(), 0.0);
        assert_eq!(f.value(1.0).unwrap(), 0.375);
        let p = f.analytic_pair(0.5).unwrap().unwrap();
        assert_eq!((p.right, p.left), (0.5, 0.5));
        assert!(matches!(builtin_huber(0.0), Err(Error::BadParameter(_))));
        assert!(builtin_huber(-1.0).is_err());
    }

    #[test]
    fn power_p_examples() {
        let f = builtin_power_p(1.3).unwrap();
        assert_relative_eq!(f.value(1.0).unwrap(), 1.0 / 1.3, max_relative = 1e-15);
        assert_eq!(f.value(0.0).unwrap(), 0.0);
        let p = f.analytic_pair(0.0).unwrap().unwrap();
        assert_eq!((p.right, p.left), (0.0, 0.0));
        assert!(builtin_power_p(1.0).is_err());
        assert!(builtin_power_p(0.5).is_err());
    }

    #[test]
    fn kink_counterexample_examples() {
        let f = builtin_kink_counterexample();
        assert_eq!(f.value(-2.0).unwrap(), 4.0);
        assert_eq!(f.value(3.0).unwrap(), 3.0);
        let s = crate::specular::specular_at(&f, 0.0, DerivativeMode::analytic()).unwrap();
        assert!((s - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!(s != 0.0);
    }

    #[test]
    fn evaluation_outside_domain_fails() {
        let f = builtin_huber(0.5).unwrap();
        assert!(matches!(f.value(2.0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(f.value(-2.5), Err(Error::OutOfDomain { .. })));
        let nan = Objective::new("nan", Interval::new(-1.0, 1.0).unwrap(), |_| f64::NAN);
        assert!(matches!(nan.value(0.0), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn lipschitz_examples() {
        let m = DerivativeMode::analytic();
        let abs = abs_value(Interval::new(-2.0, 2.0).unwrap());
        assert_eq!(lipschitz_bound(&abs, -1.0, 1.0, m).unwrap(), 1.0);
        // slope count at 0.99-: 98 summands +1, one -1, and 100 more +1
        assert_eq!(
            lipschitz_bound(&builtin_sum_abs(), -0.99, 0.99, m).unwrap(),
            198.0
        );
        assert_eq!(
            lipschitz_bound(&builtin_huber(0.5).unwrap(), -1.9, 1.9, m).unwrap(),
            0.5
        );
        assert!(lipschitz_bound(&abs, 1.0, -1.0, m).is_err());
    }

    #[test]
    fn junctions_are_continuous() {
        let eps = 1e-8;
        let cases: Vec<(Objective, Vec<f64>)> = vec![
            (
                builtin_sum_abs(),
                (-99..=99).map(|i| i as f64 / 100.0).collect(),
            ),
            (builtin_piecewise_power().unwrap(), vec![0.0, 0.5]),
            (builtin_huber(0.5).unwrap(), vec![-0.5, 0.5]),
            (builtin_power_p(1.3).unwrap(), vec![0.0]),
            (builtin_kink_counterexample(), vec![0.0]),
        ];
        for (f, joints) in cases {
            for j in joints {
                let gap = (f.value(j - eps).unwrap() - f.value(j + eps).unwrap()).abs();
                // a continuous piece with slope L moves by up to 2 eps L across the joint
                let slope =
                    lipschitz_bound(&f, j - eps, j + eps, DerivativeMode::analytic()).unwrap();
                assert!(
                    gap <= 1e-6 + 2.0 * eps * slope,
                    "{} at {j}: gap {gap}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn builtins_are_grid_convex_and_minimized_where_declared() {
        for f in builtins() {
            let xs = grid(f.domain(), 201);
            let vals: Vec<f64> = xs.iter().map(|&x| f.value(x).unwrap()).collect();
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    let mid = f.value(0.5 * (xs[i] + xs[j])).unwrap();
                    assert!(mid <= 0.5 * (vals[i] + vals[j]) + 1e-9, "{}", f.name());
                }
            }
            let fmin = f.min_value().unwrap();
            assert!(vals.iter().all(|&v| fmin <= v + 1e-9), "{}", f.name());
        }
    }

    #[test]
    fn one_sided_slopes_are_ordered() {
        for f in builtins() {
            let xs = grid(f.domain(), 201);
            let pairs: Vec<OneSidedPair> = xs
                .iter()
                .map(|&x| f.analytic_pair(x).unwrap().unwrap())
                .collect();
            for p in &pairs {
                assert!(p.left <= p.right + 1e-12, "{}", f.name());
            }
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    assert!(pairs[i].right <= pairs[j].left + 1e-12, "{}", f.name());
                }
            }
        }
    }

    #[test]
    fn analytic_and_fd_agree_away_from_kinks() {
        let h = 1e-6;
        let kinks = |name: &str| -> Vec<f64> {
            match name {
                "sum_abs" => (-99..=99).map(|i| i as f64 / 100.0).collect(),
                "piecewise_power" => vec![0.0, 0.5],
                "huber" => vec![-0.5, 0.5],
                _ => vec![0.0],
            }
        };
        for f in builtins() {
            let ks = kinks(f.name());
            let d = f.domain();
            for x in grid(d, 201) {
                let near_kink = ks.iter().any(|k| (x - k).abs() < 2.0 * h);
                if near_kink || x - d.lo < 2.0 * h || d.hi - x < 2.0 * h {
                    continue;
                }
                let p = f.analytic_pair(x).unwrap().unwrap();
                let r = one_sided_fd(&f, x, h, Side::Right).unwrap().value;
                let l = one_sided_fd(&f, x, h, Side::Left).unwrap().value;
                assert!((r - p.right).abs() <= 10.0 * h, "{} x={x}", f.name());
                assert!((l - p.left).abs() <= 10.0 * h, "{} x={x}", f.name());
            }
        }
    }
}
