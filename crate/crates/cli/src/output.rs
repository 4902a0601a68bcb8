//! CSV rendering of traces and benchmark tables.
//!
//! Reals are printed with `f64`'s `Display`, which gives the shortest decimal
//! that parses back to the same value. Missing values are empty fields.

use std::io::Write;

use specular_core::{BenchTable, RunTrace};

fn real(v: f64) -> String {
    v.to_string()
}

fn opt(v: Option<f64>) -> String {
    v.map(real).unwrap_or_default()
}

pub const TRACE_HEADER: [&str; 10] = [
    "k",
    "x",
    "f_x",
    "subopt",
    "deriv",
    "step",
    "envelope",
    "x_best",
    "f_best",
    "stop_reason",
];

pub fn write_trace<W: Write>(out: W, trace: &RunTrace, f_star: Option<f64>) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(TRACE_HEADER)?;
    let last = trace.records.len() - 1;
    for (i, r) in trace.records.iter().enumerate() {
        w.write_record([
            r.k.to_string(),
            real(r.x),
            real(r.fx),
            opt(f_star.map(|m| r.fx - m)),
            real(r.deriv),
            opt(r.step),
            opt(r.envelope),
            real(r.x_best),
            real(r.f_best),
            if i == last {
                trace.stop_reason.to_string()
            } else {
                String::new()
            },
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per iteration: `k`, then the mean-value block (`<method>_f`), then
/// the mean-suboptimality block (`<method>_subopt`).
pub fn write_table<W: Write>(out: W, table: &BenchTable) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec!["k".to_string()];
    header.extend(table.methods.iter().map(|m| format!("{m}_f")));
    header.extend(table.methods.iter().map(|m| format!("{m}_subopt")));
    w.write_record(&header)?;
    for (k, (vals, gaps)) in table.mean_f.iter().zip(&table.mean_subopt).enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(vals.iter().copied().map(real));
        row.extend(gaps.iter().copied().map(real));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
