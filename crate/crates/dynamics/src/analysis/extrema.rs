//! Local extrema of a sampled series.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::AnalysisError;

/// Whether an extremum is a local maximum or minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

impl ExtremumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtremumKind::Max => "max",
            ExtremumKind::Min => "min",
        }
    }
}

/// One interior extremum of a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    /// Index into the input series. Plateaus report their first index.
    pub index: usize,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Strict interior extrema of a series, plateau-aware.
///
/// A run of equal values counts as one extremum at its first index when
/// the series turns there (strictly larger or smaller than both
/// neighbors of the run). A constant series degenerates to a fixed point
/// and reports its single value tagged as both a maximum and a minimum.
///
/// Errors with [`AnalysisError::InsufficientSeries`] below three values.
pub fn local_extrema(series: &[f64]) -> Result<Vec<Extremum>, AnalysisError> {
    let n = series.len();
    if n < 3 {
        return Err(AnalysisError::InsufficientSeries { len: n, min: 3 });
    }
    if series.iter().all(|&v| v == series[0]) {
        return Ok(vec![
            Extremum {
                index: 0,
                value: series[0],
                kind: ExtremumKind::Max,
            },
            Extremum {
                index: 0,
                value: series[0],
                kind: ExtremumKind::Min,
            },
        ]);
    }

    let mut out = Vec::new();
    let mut run_start = 0;
    while run_start < n {
        let mut run_end = run_start;
        while run_end + 1 < n && series[run_end + 1] == series[run_start] {
            run_end += 1;
        }
        // Only interior runs can turn; the series boundary decides nothing.
        if run_start > 0 && run_end < n - 1 {
            let value = series[run_start];
            let before = series[run_start - 1];
            let after = series[run_end + 1];
            if value > before && value > after {
                out.push(Extremum {
                    index: run_start,
                    value,
                    kind: ExtremumKind::Max,
                });
            } else if value < before && value < after {
                out.push(Extremum {
                    index: run_start,
                    value,
                    kind: ExtremumKind::Min,
                });
            }
        }
        run_start = run_end + 1;
    }
    Ok(out)
}

/// Number of distinct values in `values` when clustered with the given
/// absolute tolerance: sorted values start a new cluster whenever they
/// exceed the previous cluster representative by more than `tolerance`.
pub fn distinct_count(values: &[f64], tolerance: f64) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let mut count = 1;
    let mut representative = sorted[0];
    for &v in &sorted[1..] {
        if v - representative > tolerance {
            count += 1;
            representative = v;
        }
    }
    count
}
