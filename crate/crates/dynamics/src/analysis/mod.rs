//! Nonlinear-dynamics instrumentation over map orbits.
//!
//! Everything here consumes either a plain `&[f64]` series or the
//! validated parameter types from [`crate::map`], and produces plain
//! values in canonical order, so results are reproducible across runs
//! and across serial/parallel evaluation.

mod extrema;
mod graph;
mod lyapunov;
mod period;
mod returns;
mod sweep;

pub use extrema::{distinct_count, local_extrema, Extremum, ExtremumKind};
pub use graph::map_graph;
pub use lyapunov::lyapunov_estimate;
pub use period::{detect_period, peak_period, PeriodResult};
pub use returns::{cobweb, return_map, Segment};
pub use sweep::{
    sweep_bifurcation, sweep_point, BifurcationPoint, SweepParameter, SweepSpec,
};

use alloc::vec::Vec;

use crate::map::StepRecord;

/// Which per-interval observable an analysis reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Window,
    Alpha,
    Queue,
}

impl Observable {
    pub fn extract(&self, record: &StepRecord) -> f64 {
        match self {
            Observable::Window => record.window,
            Observable::Alpha => record.alpha,
            Observable::Queue => record.queue,
        }
    }

    /// Projects an orbit onto this observable.
    pub fn series(&self, records: &[StepRecord]) -> Vec<f64> {
        records.iter().map(|r| self.extract(r)).collect()
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Observable::Window => "window",
            Observable::Alpha => "alpha",
            Observable::Queue => "queue",
        }
    }
}

impl core::str::FromStr for Observable {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "window" => Ok(Observable::Window),
            "alpha" => Ok(Observable::Alpha),
            "queue" => Ok(Observable::Queue),
            _ => Err(UnknownName("observable (expected window, alpha or queue)")),
        }
    }
}

/// A name failed to parse into one of a closed set of tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownName(pub &'static str);

impl core::fmt::Display for UnknownName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "unknown {}", self.0)
    }
}

impl core::error::Error for UnknownName {}
