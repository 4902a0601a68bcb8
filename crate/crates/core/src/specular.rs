//! Derivative calculus built from one-sided derivatives.
//!
//! Everything here works on a [`OneSidedPair`] `(right, left) = (f'_+(x), f'_-(x))`.
//! The specular derivative is the value `A(right, left)` of the closed form
//!
//! ```text
//! A(a, b) = (a b - 1 + sqrt((a^2 + 1)(b^2 + 1))) / (a + b)
//! ```
//!
//! with the zero branch taken when `a + b` vanishes. For a convex function it
//! always lies between the two one-sided derivatives and it has the sign of
//! `a + b`, which is what the implicit method uses in place of the value.

use crate::error::{Error, Result};
use crate::objectives::Objective;

/// Relative width of the band around `alpha + beta = 0` that is treated as the
/// zero branch.
pub const ZERO_SUM_RTOL: f64 = 1e-12;

/// Smallest finite-difference mesh tried before a probe is declared out of domain.
pub const MIN_MESH: f64 = 1e-12;

/// Right- and left-hand derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSidedPair {
    /// `f'_+(x)`
    pub right: f64,
    /// `f'_-(x)`
    pub left: f64,
}

impl OneSidedPair {
    pub fn new(right: f64, left: f64) -> Result<Self> {
        if !right.is_finite() || !left.is_finite() {
            return Err(Error::BadParameter(format!(
                "one-sided derivatives must be finite, got ({right}, {left})"
            )));
        }
        Ok(Self { right, left })
    }

    /// Pair of a function that is differentiable at the point.
    pub fn smooth(slope: f64) -> Self {
        Self {
            right: slope,
            left: slope,
        }
    }

    pub fn sum(&self) -> f64 {
        self.right + self.left
    }

    /// True when the sum is zero up to [`ZERO_SUM_RTOL`] relative to the larger
    /// magnitude.
    pub fn is_zero_sum(&self) -> bool {
        let scale = 1f64.max(self.right.abs()).max(self.left.abs());
        self.sum().abs() <= ZERO_SUM_RTOL * scale
    }
}

/// How a derivative value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateMethod {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    pub method: EstimateMethod,
    /// Mesh actually used. Zero for analytic values.
    pub mesh: f64,
}

/// Which derivative source to use when evaluating one-sided derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    /// Use the objective's analytic one-sided derivatives when it has them,
    /// falling back to finite differences with `fallback_mesh` otherwise.
    Analytic { fallback_mesh: f64 },
    /// Always use one-sided finite differences with the given mesh.
    FiniteDifference { mesh: f64 },
}

impl DerivativeMode {
    pub fn analytic() -> Self {
        DerivativeMode::Analytic {
            fallback_mesh: 1e-6,
        }
    }

    pub fn finite_difference(mesh: f64) -> Self {
        DerivativeMode::FiniteDifference { mesh }
    }

    pub fn mesh(&self) -> f64 {
        match *self {
            DerivativeMode::Analytic { fallback_mesh } => fallback_mesh,
            DerivativeMode::FiniteDifference { mesh } => mesh,
        }
    }
}

/// The closed form `A(alpha, beta)`.
///
/// When `alpha * beta < 1` the numerator cancels badly, so the algebraically
/// equal form `(alpha + beta) / (sqrt(..) - alpha * beta + 1)` is used there.
/// Both forms are symmetric in their arguments, so `a_formula(a, b)` and
/// `a_formula(b, a)` are bitwise equal.
pub fn a_formula(alpha: f64, beta: f64) -> Result<f64> {
    let sum = alpha + beta;
    if sum == 0.0 {
        return Err(Error::DegenerateSum { alpha, beta });
    }
    if alpha == beta {
        return Ok(alpha);
    }
    let root = alpha.hypot(1.0) * beta.hypot(1.0);
    let product = alpha * beta;
    let value = if product < 1.0 {
        sum / (root - product + 1.0)
    } else {
        (product - 1.0 + root) / sum
    };
    Ok(value)
}

/// Specular derivative from a one-sided pair.
pub fn specular_from_pair(pair: OneSidedPair) -> f64 {
    if pair.is_zero_sum() {
        return 0.0;
    }
    // the zero-sum band is wider than the exact-zero pole
    a_formula(pair.right, pair.left).unwrap_or(0.0)
}

/// Symmetric derivative `(right + left) / 2`.
pub fn symmetric_from_pair(pair: OneSidedPair) -> f64 {
    0.5 * (pair.right + pair.left)
}

/// Sign of the specular derivative, read off `right + left`.
///
/// Uses the same zero band as [`specular_from_pair`], so the two always agree.
pub fn specular_sign(pair: OneSidedPair) -> i8 {
    if pair.is_zero_sum() {
        0
    } else if pair.sum() > 0.0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// One-sided difference quotient.
///
/// If `x + h` (resp. `x - h`) is not inside the open domain the mesh is halved
/// until it is, down to [`MIN_MESH`].
pub fn one_sided_fd(f: &Objective, x: f64, h: f64, side: Side) -> Result<DerivativeEstimate> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::BadParameter(format!(
            "mesh must be positive, got {h}"
        )));
    }
    let fx = f.value(x)?;
    let h = shrink_mesh(f, x, h, side)?;
    let value = match side {
        Side::Right => (f.value(x + h)? - fx) / h,
        Side::Left => (fx - f.value(x - h)?) / h,
    };
    if !value.is_finite() {
        return Err(f.domain().out_of_domain(x));
    }
    Ok(DerivativeEstimate {
        value,
        method: EstimateMethod::FiniteDifference,
        mesh: h,
    })
}

fn shrink_mesh(f: &Objective, x: f64, mut h: f64, side: Side) -> Result<f64> {
    let domain = f.domain();
    loop {
        let probe = match side {
            Side::Right => x + h,
            Side::Left => x - h,
        };
        if domain.contains(probe) && probe != x {
            return Ok(h);
        }
        h *= 0.5;
        if h < MIN_MESH {
            return Err(domain.out_of_domain(probe));
        }
    }
}

/// Central difference `(f(x + h) - f(x - h)) / 2h` with the same mesh shrinking
/// as [`one_sided_fd`] (the smaller of the two admissible meshes is used).
pub fn central_fd(f: &Objective, x: f64, h: f64) -> Result<DerivativeEstimate> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::BadParameter(format!(
            "mesh must be positive, got {h}"
        )));
    }
    f.value(x)?;
    let h = shrink_mesh(f, x, h, Side::Right)?.min(shrink_mesh(f, x, h, Side::Left)?);
    let value = (f.value(x + h)? - f.value(x - h)?) / (2.0 * h);
    if !value.is_finite() {
        return Err(f.domain().out_of_domain(x));
    }
    Ok(DerivativeEstimate {
        value,
        method: EstimateMethod::FiniteDifference,
        mesh: h,
    })
}

/// One-sided derivatives at `x`, together with how they were obtained.
pub fn pair_at(
    f: &Objective,
    x: f64,
    mode: DerivativeMode,
) -> Result<(OneSidedPair, EstimateMethod)> {
    if !f.domain().contains(x) {
        return Err(f.domain().out_of_domain(x));
    }
    match mode {
        DerivativeMode::Analytic { fallback_mesh } => match f.analytic_pair(x) {
            Some(pair) => {
                let pair = pair?;
                if !pair.right.is_finite() || !pair.left.is_finite() {
                    return Err(f.domain().out_of_domain(x));
                }
                Ok((pair, EstimateMethod::Analytic))
            }
            None => fd_pair(f, x, fallback_mesh),
        },
        DerivativeMode::FiniteDifference { mesh } => fd_pair(f, x, mesh),
    }
}

fn fd_pair(f: &Objective, x: f64, mesh: f64) -> Result<(OneSidedPair, EstimateMethod)> {
    let right = one_sided_fd(f, x, mesh, Side::Right)?.value;
    let left = one_sided_fd(f, x, mesh, Side::Left)?.value;
    Ok((
        OneSidedPair { right, left },
        EstimateMethod::FiniteDifference,
    ))
}

/// Specular derivative of `f` at `x`.
pub fn specular_at(f: &Objective, x: f64, mode: DerivativeMode) -> Result<f64> {
    Ok(specular_from_pair(pair_at(f, x, mode)?.0))
}

/// Symmetric derivative of `f` at `x`: `(right + left) / 2` from analytic pairs,
/// a central difference in finite-difference mode.
pub fn symmetric_at(f: &Objective, x: f64, mode: DerivativeMode) -> Result<f64> {
    match mode {
        DerivativeMode::Analytic { .. } if f.has_analytic_pair() => {
            Ok(symmetric_from_pair(pair_at(f, x, mode)?.0))
        }
        _ => Ok(central_fd(f, x, mode.mesh())?.value),
    }
}
