//! One-dimensional nonsmooth convex minimization with specular derivatives.
//!
//! The crate is organised bottom-up:
//!
//! * [`specular`]: the closed-form specular derivative of a pair of one-sided
//!   derivatives, the symmetric derivative, sign extraction and one-sided
//!   finite differences.
//! * [`objectives`]: convex objectives on open intervals and the benchmark
//!   registry (`sum_abs`, `piecewise_power`, `huber`, `power_p`,
//!   `kink_counterexample`).
//! * [`optimizers`]: the specular gradient method (SGM), its implicit variant
//!   (ISGM) and the symmetric-derivative subgradient method (SM).
//! * [`verification`]: grid and sample checks of the convex-analysis facts and
//!   convergence envelopes, reported as [`CheckReport`]s.
//! * [`experiment`]: seeded multi-trial benchmark tables.
//!
//! ```
//! use specular_core::{isgm_run, objectives, RunConfig};
//!
//! let f = objectives::by_name("huber").unwrap();
//! let trace = isgm_run(&f, RunConfig::new(-1.995)).unwrap();
//! assert!(trace.last().f_best < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod error;
pub mod experiment;
pub mod objectives;
pub mod optimizers;
pub mod sampling;
pub mod specular;
pub mod verification;

pub use error::{Error, Result};
pub use experiment::{bench, BenchMethod, BenchSpec, BenchTable};
pub use objectives::{Interval, MinimizerSet, Objective};
pub use optimizers::{
    best_update, isgm_run, sgm_run, shor_t, sm_run, IterationRecord, Method, RunConfig, RunTrace,
    StepSchedule, StopReason, Subgradient,
};
pub use specular::{
    a_formula, one_sided_fd, pair_at, specular_from_pair, specular_sign, symmetric_from_pair,
    DerivativeEstimate, DerivativeMode, EstimateMethod, OneSidedPair, Side,
};
pub use verification::{CheckReport, Grid};
