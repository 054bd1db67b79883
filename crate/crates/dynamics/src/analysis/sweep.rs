//! Bifurcation sweeps: per-parameter-value extrema of an observable.

use alloc::vec::Vec;

use crate::error::AnalysisError;
use crate::map::{LinkParams, MapState, SenderParams};
use crate::math;
use crate::red::{run_series, MarkingPolicy};

use super::extrema::{local_extrema, ExtremumKind};
use super::{Observable, UnknownName};

/// Which map parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Marked-fraction weight `g`.
    Weight,
    /// Round-trip propagation delay `d`, in seconds.
    PropDelay,
    /// Marking threshold `K`, in packets.
    Threshold,
    /// Deadline exponent `γ`.
    Gamma,
}

impl SweepParameter {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::Weight => "g",
            SweepParameter::PropDelay => "d",
            SweepParameter::Threshold => "K",
            SweepParameter::Gamma => "gamma",
        }
    }

    /// Returns the base parameters with this one overridden, revalidated.
    pub fn apply(
        &self,
        link: &LinkParams,
        sender: &SenderParams,
        value: f64,
    ) -> Result<(LinkParams, SenderParams), AnalysisError> {
        let result = match self {
            SweepParameter::Weight => {
                SenderParams::new(value, sender.gamma()).map(|s| (*link, s))
            }
            SweepParameter::Gamma => SenderParams::new(sender.g(), value).map(|s| (*link, s)),
            SweepParameter::PropDelay => LinkParams::new(
                link.capacity_bps(),
                value,
                link.packet_size_bits(),
                link.buffer_packets(),
                link.threshold_packets(),
            )
            .map(|l| (l, *sender)),
            SweepParameter::Threshold => LinkParams::new(
                link.capacity_bps(),
                link.prop_delay_s(),
                link.packet_size_bits(),
                link.buffer_packets(),
                value,
            )
            .map(|l| (l, *sender)),
        };
        result.map_err(|source| AnalysisError::SweptParamInvalid { value, source })
    }
}

impl core::str::FromStr for SweepParameter {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g" => Ok(SweepParameter::Weight),
            "d" => Ok(SweepParameter::PropDelay),
            "K" => Ok(SweepParameter::Threshold),
            "gamma" => Ok(SweepParameter::Gamma),
            _ => Err(UnknownName("sweep parameter (expected g, d, K or gamma)")),
        }
    }
}

/// A declarative sweep: the parameter to vary, its grid, the observable
/// to record and the per-point run lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub observable: Observable,
    pub transient: usize,
    pub samples: usize,
}

/// Slack applied when counting grid points, so an endpoint that lands on
/// the grid up to float rounding is kept.
const GRID_COUNT_SLACK: f64 = 1e-9;

impl SweepSpec {
    pub fn validate(&self) -> Result<(), AnalysisError> {
        if !self.from.is_finite()
            || !self.to.is_finite()
            || !self.step.is_finite()
            || self.step <= 0.0
            || self.from >= self.to
        {
            return Err(AnalysisError::BadSweepRange {
                from: self.from,
                to: self.to,
                step: self.step,
            });
        }
        if self.grid_len() < 2 {
            return Err(AnalysisError::GridTooSmall);
        }
        if self.samples < 3 {
            return Err(AnalysisError::TooFewSamples {
                samples: self.samples,
            });
        }
        Ok(())
    }

    fn grid_len(&self) -> usize {
        (math::floor((self.to - self.from) / self.step + GRID_COUNT_SLACK) as usize) + 1
    }

    /// Grid values `from + i·step`, inclusive of `from`, excluding points
    /// beyond `to`. Each value is computed from the index, not by
    /// cumulative addition, so long grids do not drift.
    pub fn grid(&self) -> Vec<f64> {
        (0..self.grid_len())
            .map(|i| self.from + i as f64 * self.step)
            .collect()
    }
}

/// One steady-state extremum of the swept observable at one grid value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationPoint {
    pub param_value: f64,
    pub observable_value: f64,
    pub kind: ExtremumKind,
}

/// Evaluates a single grid point: overrides the swept parameter, runs the
/// orbit from `initial`, and tags the extrema of the observable. Grid
/// points are independent; there is no state carryover between them.
pub fn sweep_point(
    spec: &SweepSpec,
    link: &LinkParams,
    sender: &SenderParams,
    marking: &MarkingPolicy,
    initial: MapState,
    value: f64,
) -> Result<Vec<BifurcationPoint>, AnalysisError> {
    let (link, sender) = spec.parameter.apply(link, sender, value)?;
    let marking = match marking {
        // Threshold marking has no extra parameters to rebuild.
        MarkingPolicy::Threshold => MarkingPolicy::Threshold,
        MarkingPolicy::Red(params) => MarkingPolicy::Red(*params),
    };
    let records = run_series(initial, &link, &sender, &marking, spec.transient, spec.samples);
    let series = spec.observable.series(&records);
    let extrema = local_extrema(&series)?;
    Ok(extrema
        .into_iter()
        .map(|e| BifurcationPoint {
            param_value: value,
            observable_value: e.value,
            kind: e.kind,
        })
        .collect())
}

/// Full sweep over the grid, serial, ordered by ascending parameter value
/// and iteration order within each value. Callers that parallelize should
/// map [`sweep_point`] over [`SweepSpec::grid`] and concatenate in grid
/// order; the output is identical by construction.
pub fn sweep_bifurcation(
    spec: &SweepSpec,
    link: &LinkParams,
    sender: &SenderParams,
    marking: &MarkingPolicy,
    initial: MapState,
) -> Result<Vec<BifurcationPoint>, AnalysisError> {
    spec.validate()?;
    let mut out = Vec::new();
    for value in spec.grid() {
        out.extend(sweep_point(spec, link, sender, marking, initial, value)?);
    }
    Ok(out)
}
