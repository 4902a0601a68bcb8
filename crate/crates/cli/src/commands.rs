use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use specular_core::experiment::{bench, run_method, BenchMethod, BenchSpec};
use specular_core::objectives::{self, builtins, planted_cubic, BUILTIN_NAMES};
use specular_core::sampling::initial_point;
use specular_core::verification::{run_suite, SuiteOptions};
use specular_core::CheckReport;
use specular_core::{DerivativeMode, EstimateMethod, RunConfig, StepSchedule, StopReason};

use crate::cli::{BenchArgs, RunArgs, VerifyArgs};
use crate::output::{write_table, write_trace};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn run(args: &RunArgs) -> Result<u8> {
    let s = &args.solver;
    let f = objectives::by_name(&s.objective)?;
    let x0 = args
        .x0
        .unwrap_or_else(|| initial_point(f.domain(), s.seed, 0));
    let cfg = RunConfig {
        x0,
        eta: s.eta,
        max_iters: s.iters,
        mesh: s.h,
        schedule: StepSchedule::Constant { gamma: s.gamma },
        derivative_mode: EstimateMethod::from(s.derivatives),
    };
    let trace = run_method(&f, BenchMethod::from(args.method), cfg, s.gamma)?;
    write_trace(sink(s.output.as_deref())?, &trace, f.min_value())?;
    Ok(if trace.stop_reason == StopReason::OutOfDomain {
        EXIT_DOMAIN
    } else {
        EXIT_OK
    })
}

pub fn bench_cmd(args: &BenchArgs) -> Result<u8> {
    let s = &args.solver;
    let methods = if args.method.is_empty() {
        BenchMethod::ALL.to_vec()
    } else {
        args.method.iter().map(|&m| m.into()).collect()
    };
    let spec = BenchSpec {
        objective_name: s.objective.clone(),
        methods,
        trials: args.trials,
        iterations: s.iters,
        seed: s.seed,
        gamma_const: s.gamma,
        eta: s.eta,
        mesh: s.h,
        derivative_mode: s.derivatives.into(),
        x0: args.x0,
    };
    let table = bench(&spec)?;
    write_table(sink(s.output.as_deref())?, &table)?;
    Ok(EXIT_OK)
}

pub fn verify(args: &VerifyArgs) -> Result<u8> {
    let mode = match EstimateMethod::from(args.derivatives) {
        EstimateMethod::Analytic => DerivativeMode::Analytic {
            fallback_mesh: args.h,
        },
        EstimateMethod::FiniteDifference => DerivativeMode::FiniteDifference { mesh: args.h },
    };
    let opts = SuiteOptions {
        grid_n: args.grid,
        mode,
        seed: args.seed,
        ..SuiteOptions::default()
    };
    let mut fs = builtins();
    if args.inject_nonconvex {
        fs.push(planted_cubic());
    }
    let outcome = run_suite(&fs, &opts)?;
    let mut out = io::stdout().lock();
    for r in &outcome.reports {
        writeln!(out, "{r}")?;
    }
    // one note per objective: how many SGM runs overshoot `t_k`, and the worst one
    let mut notes: Vec<(&str, usize, &CheckReport)> = Vec::new();
    for o in &outcome.overshoots {
        let key = o.check_name.split(' ').next().unwrap_or(&o.check_name);
        match notes.iter_mut().find(|n| n.0 == key) {
            Some(n) => {
                n.1 += 1;
                if o.worst_violation > n.2.worst_violation {
                    n.2 = o;
                }
            }
            None => notes.push((key, 1, o)),
        }
    }
    for (key, count, worst) in notes {
        eprintln!(
            "NOTE {key} overshoots t_k in {count}/{} runs; worst: {}",
            opts.trials,
            worst.line().trim_start_matches("CHECK ")
        );
    }
    Ok(if outcome.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

pub fn list() -> Result<u8> {
    let mut out = io::stdout().lock();
    for name in BUILTIN_NAMES {
        writeln!(out, "objective {name}")?;
    }
    for m in BenchMethod::ALL {
        writeln!(out, "method {m}")?;
    }
    Ok(EXIT_OK)
}
