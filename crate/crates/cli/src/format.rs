//! Deterministic CSV emission.
//!
//! Fixed column order, LF newlines, no locale dependence. Real values are
//! written in scientific notation with 17 significant digits so they
//! round-trip to the exact double; counts are plain integers.

use std::fmt::Write;

use d2tcp_dynamics::analysis::{BifurcationPoint, PeriodResult, Segment};
use d2tcp_dynamics::StepRecord;

/// 17 significant digits: one leading digit plus 16 fractional.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn orbit_csv(records: &[StepRecord]) -> String {
    let mut out = String::from("k,window,alpha,queue,marked,rtt_s\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k,
            fmt_value(r.window),
            fmt_value(r.alpha),
            fmt_value(r.queue),
            r.marked,
            fmt_value(r.rtt_s)
        )
        .unwrap();
    }
    out
}

pub fn bifurcate_csv(points: &[BifurcationPoint]) -> String {
    let mut out = String::from("param,observable,kind\n");
    for p in points {
        writeln!(
            out,
            "{},{},{}",
            fmt_value(p.param_value),
            fmt_value(p.observable_value),
            p.kind.as_str()
        )
        .unwrap();
    }
    out
}

pub fn return_map_csv(pairs: &[(f64, f64)]) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in pairs {
        writeln!(out, "{},{}", fmt_value(*x), fmt_value(*y)).unwrap();
    }
    out
}

pub fn cobweb_csv(segments: &[Segment]) -> String {
    let mut out = String::from("x1,y1,x2,y2\n");
    for s in segments {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_value(s.x1),
            fmt_value(s.y1),
            fmt_value(s.x2),
            fmt_value(s.y2)
        )
        .unwrap();
    }
    out
}

pub fn map_graph_csv(pairs: &[(f64, f64)]) -> String {
    let mut out = String::from("input,output\n");
    for (input, output) in pairs {
        writeln!(out, "{},{}", fmt_value(*input), fmt_value(*output)).unwrap();
    }
    out
}

pub fn red_curve_csv(pairs: &[(f64, f64)]) -> String {
    let mut out = String::from("avg_queue,probability\n");
    for (q, p) in pairs {
        writeln!(out, "{},{}", fmt_value(*q), fmt_value(*p)).unwrap();
    }
    out
}

pub fn period_csv(result: &PeriodResult) -> String {
    let period = match result.period {
        Some(p) => p.to_string(),
        None => "none".to_string(),
    };
    format!(
        "period,tolerance\n{},{}\n",
        period,
        fmt_value(result.tolerance)
    )
}

pub fn lyapunov_csv(exponent: f64, iterations: usize) -> String {
    format!(
        "exponent,iterations\n{},{}\n",
        fmt_value(exponent),
        iterations
    )
}
