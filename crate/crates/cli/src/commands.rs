//! Command execution: each command turns a scenario into CSV text, a
//! one-line summary, and optionally an SVG rendering.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use d2tcp_dynamics::analysis::{
    cobweb, distinct_count, lyapunov_estimate, map_graph, peak_period, return_map, sweep_point,
    BifurcationPoint, Observable, SweepSpec,
};
use d2tcp_dynamics::{run_series, threshold_policy, MarkingPolicy, StepRecord};

use crate::format;
use crate::scenario::Scenario;
use crate::svg::{self, Geometry, Plot};

/// Everything a command produces; the caller decides where it goes.
#[derive(Debug)]
pub struct Artifacts {
    pub csv: String,
    pub summary: String,
    pub svg: Option<String>,
}

fn run_scenario(scenario: &Scenario) -> Vec<StepRecord> {
    run_series(
        scenario.initial,
        &scenario.link,
        &scenario.sender,
        &scenario.marking,
        scenario.transient,
        scenario.samples,
    )
}

// A scenario carries a sweep iff the command is a sweep command.
fn reject_sweep(scenario: &Scenario, command: &str) -> Result<()> {
    if scenario.sweep.is_some() {
        bail!("scenario has a [sweep] section, but {command} is not a sweep command");
    }
    Ok(())
}

fn observable_series(scenario: &Scenario, observable: Observable) -> Vec<f64> {
    observable.series(&run_scenario(scenario))
}

pub fn orbit(scenario: &Scenario, observable: Observable, want_svg: bool) -> Result<Artifacts> {
    reject_sweep(scenario, "orbit")?;
    let records = run_scenario(scenario);
    let marked = records.iter().filter(|r| r.marked).count();
    let summary = format!(
        "orbit: {} samples over k=[{}, {}], {} marked intervals",
        records.len(),
        records.first().map(|r| r.k).unwrap_or(0),
        records.last().map(|r| r.k).unwrap_or(0),
        marked
    );
    let svg = want_svg.then(|| {
        let points = records
            .iter()
            .map(|r| (r.k as f64, observable.extract(r)))
            .collect();
        svg::render(&Plot {
            geometry: Geometry::Polyline(points),
            x_label: "k".into(),
            y_label: observable.as_str().into(),
        })
    });
    Ok(Artifacts {
        csv: format::orbit_csv(&records),
        summary,
        svg,
    })
}

/// Evaluates the sweep grid, optionally in parallel and optionally on a
/// geometric grid. The output is identical regardless of evaluation
/// order: grid points are independent and concatenated in grid order.
pub fn bifurcate(
    scenario: &Scenario,
    parallel: bool,
    log_grid: bool,
    want_svg: bool,
) -> Result<Artifacts> {
    let spec = scenario
        .sweep_spec()
        .context("the bifurcate command needs a [sweep] section in the scenario")?;
    spec.validate()?;
    let grid = if log_grid {
        geometric_grid(&spec)?
    } else {
        spec.grid()
    };

    let evaluate = |&value: &f64| -> Result<Vec<BifurcationPoint>> {
        sweep_point(
            &spec,
            &scenario.link,
            &scenario.sender,
            &scenario.marking,
            scenario.initial,
            value,
        )
        .map_err(Into::into)
    };
    let per_point: Vec<Vec<BifurcationPoint>> = if parallel {
        grid.par_iter().map(evaluate).collect::<Result<_>>()?
    } else {
        grid.iter().map(evaluate).collect::<Result<_>>()?
    };
    let points: Vec<BifurcationPoint> = per_point.into_iter().flatten().collect();

    let summary = format!(
        "bifurcate: {} extrema across {} grid values of {}",
        points.len(),
        grid.len(),
        spec.parameter.as_str()
    );
    let svg = want_svg.then(|| {
        svg::render(&Plot {
            geometry: Geometry::Points(
                points
                    .iter()
                    .map(|p| (p.param_value, p.observable_value))
                    .collect(),
            ),
            x_label: spec.parameter.as_str().into(),
            y_label: spec.observable.as_str().into(),
        })
    });
    Ok(Artifacts {
        csv: format::bifurcate_csv(&points),
        summary,
        svg,
    })
}

/// Geometric grid with the same point count the linear reading of
/// `(from, to, step)` implies. Requires a positive `from`.
fn geometric_grid(spec: &SweepSpec) -> Result<Vec<f64>> {
    if spec.from <= 0.0 {
        bail!("--log-grid needs sweep.from > 0");
    }
    let n = spec.grid().len();
    let ratio = spec.to / spec.from;
    Ok((0..n)
        .map(|i| spec.from * ratio.powf(i as f64 / (n - 1) as f64))
        .collect())
}

pub fn cobweb_cmd(
    scenario: &Scenario,
    observable: Observable,
    want_svg: bool,
) -> Result<Artifacts> {
    reject_sweep(scenario, "cobweb")?;
    let series = observable_series(scenario, observable);
    let segments = cobweb(&series)?;
    // distinct diagonal corners, i.e. distinct steady-state values
    let corners: Vec<f64> = segments.iter().step_by(2).map(|s| s.x2).collect();
    let summary = format!(
        "cobweb: {} segments, {} distinct diagonal corners (tolerance 1e-6)",
        segments.len(),
        distinct_count(&corners, 1e-6)
    );
    let svg = want_svg.then(|| {
        svg::render(&Plot {
            geometry: Geometry::Segments {
                segments: segments.iter().map(|s| (s.x1, s.y1, s.x2, s.y2)).collect(),
                diagonal: true,
            },
            x_label: format!("{}[k]", observable.as_str()),
            y_label: format!("{}[k+1]", observable.as_str()),
        })
    });
    Ok(Artifacts {
        csv: format::cobweb_csv(&segments),
        summary,
        svg,
    })
}

pub fn return_map_cmd(
    scenario: &Scenario,
    observable: Observable,
    order: usize,
    want_svg: bool,
) -> Result<Artifacts> {
    reject_sweep(scenario, "return-map")?;
    let series = observable_series(scenario, observable);
    let pairs = return_map(&series, order)?;
    let summary = format!("return-map: order {}, {} pairs", order, pairs.len());
    let svg = want_svg.then(|| {
        svg::render(&Plot {
            geometry: Geometry::Points(pairs.clone()),
            x_label: format!("{}[k]", observable.as_str()),
            y_label: format!("{}[k+{}]", observable.as_str(), order),
        })
    });
    Ok(Artifacts {
        csv: format::return_map_csv(&pairs),
        summary,
        svg,
    })
}

pub fn map_graph_cmd(
    scenario: &Scenario,
    observable: Observable,
    frozen: Option<f64>,
    domain: (Option<f64>, Option<f64>),
    resolution: usize,
    want_svg: bool,
) -> Result<Artifacts> {
    if scenario.marking != MarkingPolicy::Threshold {
        bail!("map-graph is defined for threshold marking only");
    }
    reject_sweep(scenario, "map-graph")?;
    let border = scenario.link.border();
    let (frozen, from, to) = match observable {
        Observable::Window => (
            frozen.unwrap_or_else(|| scenario.initial.alpha()),
            domain.0.unwrap_or(1.0),
            domain.1.unwrap_or(2.0 * border),
        ),
        Observable::Alpha => (
            frozen.unwrap_or_else(|| scenario.initial.window()),
            domain.0.unwrap_or(0.0),
            domain.1.unwrap_or(1.0),
        ),
        Observable::Queue => (0.0, 0.0, 0.0), // rejected below
    };
    let pairs = map_graph(
        observable,
        frozen,
        &scenario.link,
        &scenario.sender,
        from,
        to,
        resolution,
    )?;
    let summary = format!(
        "map-graph: {} over [{:.6}, {:.6}] at {} points, border K*={:.6}",
        observable.as_str(),
        from,
        to,
        pairs.len(),
        border
    );
    let svg = want_svg.then(|| {
        svg::render(&Plot {
            geometry: Geometry::Points(pairs.clone()),
            x_label: observable.as_str().into(),
            y_label: format!("{}'", observable.as_str()),
        })
    });
    Ok(Artifacts {
        csv: format::map_graph_csv(&pairs),
        summary,
        svg,
    })
}

pub fn red_curve(scenario: &Scenario, resolution: usize, want_svg: bool) -> Result<Artifacts> {
    if resolution < 2 {
        bail!("--resolution must be >= 2");
    }
    reject_sweep(scenario, "red-curve")?;
    let params = match &scenario.marking {
        MarkingPolicy::Red(params) => *params,
        MarkingPolicy::Threshold => threshold_policy(&scenario.link),
    };
    let buffer = scenario.link.buffer_packets();
    let pairs: Vec<(f64, f64)> = (0..resolution)
        .map(|i| {
            let q = buffer * i as f64 / (resolution - 1) as f64;
            (q, params.probability(q))
        })
        .collect();
    let summary = format!(
        "red-curve: {} points, knees at q_min={:.6}, q_max={:.6}, p_max={:.6}",
        pairs.len(),
        params.q_min_packets(),
        params.q_max_packets(),
        params.p_max()
    );
    let svg = want_svg.then(|| {
        svg::render(&Plot {
            geometry: Geometry::Polyline(pairs.clone()),
            x_label: "avg_queue".into(),
            y_label: "probability".into(),
        })
    });
    Ok(Artifacts {
        csv: format::red_curve_csv(&pairs),
        summary,
        svg,
    })
}

/// Steady-state period read from the excursion structure: the recurrence
/// of the successive local maxima of the observable (one lobe per
/// excursion). A plain per-sample recurrence is available through the
/// library's `detect_period`.
pub fn period(
    scenario: &Scenario,
    observable: Observable,
    tolerance: f64,
    max_period: usize,
) -> Result<Artifacts> {
    reject_sweep(scenario, "period")?;
    let series = observable_series(scenario, observable);
    let result = peak_period(&series, tolerance, max_period)?;
    let summary = match result.period {
        Some(p) => format!("period={p}"),
        None => "period=none".to_string(),
    };
    Ok(Artifacts {
        csv: format::period_csv(&result),
        summary,
        svg: None,
    })
}

pub fn lyapunov(scenario: &Scenario, iterations: usize, separation: f64) -> Result<Artifacts> {
    if scenario.marking != MarkingPolicy::Threshold {
        bail!("lyapunov is defined for threshold marking only");
    }
    reject_sweep(scenario, "lyapunov")?;
    let exponent = lyapunov_estimate(
        scenario.initial,
        &scenario.link,
        &scenario.sender,
        scenario.transient,
        iterations,
        separation,
    )?;
    let sign = if exponent > 0.0 {
        "positive: diverging"
    } else {
        "non-positive: contracting"
    };
    Ok(Artifacts {
        csv: format::lyapunov_csv(exponent, iterations),
        summary: format!("lyapunov: exponent={exponent:.6e} per iteration ({sign})"),
        svg: None,
    })
}
