//! Steady-state period detection.

use alloc::vec::Vec;

use crate::error::AnalysisError;
use crate::math;

use super::extrema::{local_extrema, ExtremumKind};

/// Outcome of a period search: the smallest recurrence shift found, or
/// none, together with the tolerance that was applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodResult {
    pub period: Option<usize>,
    pub tolerance: f64,
}

fn check_inputs(tolerance: f64, max_period: usize) -> Result<(), AnalysisError> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(AnalysisError::BadTolerance);
    }
    if max_period == 0 {
        return Err(AnalysisError::BadMaxPeriod);
    }
    Ok(())
}

/// Smallest `p ∈ [1, max_period]` such that `|x[k+p] − x[k]| ≤ tolerance`
/// for every index in the series, or none. The caller passes the
/// steady-state tail; the whole input is checked.
///
/// Errors if the series is shorter than `2·max_period`, so every
/// candidate shift is compared over at least `max_period` pairs.
pub fn detect_period(
    series: &[f64],
    tolerance: f64,
    max_period: usize,
) -> Result<PeriodResult, AnalysisError> {
    check_inputs(tolerance, max_period)?;
    let n = series.len();
    if n < 2 * max_period {
        return Err(AnalysisError::InsufficientSeries {
            len: n,
            min: 2 * max_period,
        });
    }
    for p in 1..=max_period {
        if (0..n - p).all(|k| math::abs(series[k + p] - series[k]) <= tolerance) {
            return Ok(PeriodResult {
                period: Some(p),
                tolerance,
            });
        }
    }
    Ok(PeriodResult {
        period: None,
        tolerance,
    })
}

/// Orbit period as read from the excursion structure: the recurrence
/// period of the successive local maxima.
///
/// Periods of this map are conventionally counted by lobes — one lobe per
/// excursion above the border — rather than by raw samples, because the
/// additive climb stretches every excursion over many sampling intervals.
/// A constant series is a fixed point and reports period 1; a series with
/// fewer than two maxima has no excursion structure and reports none.
pub fn peak_period(
    series: &[f64],
    tolerance: f64,
    max_period: usize,
) -> Result<PeriodResult, AnalysisError> {
    check_inputs(tolerance, max_period)?;
    let extrema = local_extrema(series)?;
    if series.iter().all(|&v| v == series[0]) {
        return Ok(PeriodResult {
            period: Some(1),
            tolerance,
        });
    }
    let peaks: Vec<f64> = extrema
        .iter()
        .filter(|e| e.kind == ExtremumKind::Max)
        .map(|e| e.value)
        .collect();
    if peaks.len() < 2 {
        return Ok(PeriodResult {
            period: None,
            tolerance,
        });
    }
    let effective_max = max_period.min(peaks.len() / 2);
    if effective_max == 0 {
        return Ok(PeriodResult {
            period: None,
            tolerance,
        });
    }
    detect_period(&peaks, tolerance, effective_max)
}
