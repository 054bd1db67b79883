//! Return maps and cobweb segments.

use alloc::vec::Vec;

use crate::error::AnalysisError;

/// Pairs `(x[k], x[k + order])` in iteration order: the order-`n` return
/// map of a sampled observable.
pub fn return_map(series: &[f64], order: usize) -> Result<Vec<(f64, f64)>, AnalysisError> {
    if order == 0 {
        return Err(AnalysisError::BadOrder);
    }
    let n = series.len();
    if n <= order {
        return Err(AnalysisError::InsufficientSeries {
            len: n,
            min: order + 1,
        });
    }
    Ok((0..n - order).map(|k| (series[k], series[k + order])).collect())
}

/// One straight segment of a cobweb diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

/// Graphical iteration of a series: for each `k` the vertical-then-
/// horizontal pair of segments
///
/// ```text
/// (x[k], x[k+1]) → (x[k+1], x[k+1]) → (x[k+1], x[k+2])
/// ```
///
/// yielding `2·(n − 2)` segments whose corners all touch the diagonal
/// `y = x`.
pub fn cobweb(series: &[f64]) -> Result<Vec<Segment>, AnalysisError> {
    let n = series.len();
    if n < 3 {
        return Err(AnalysisError::InsufficientSeries { len: n, min: 3 });
    }
    let mut segments = Vec::with_capacity(2 * (n - 2));
    for k in 0..n - 2 {
        segments.push(Segment {
            x1: series[k],
            y1: series[k + 1],
            x2: series[k + 1],
            y2: series[k + 1],
        });
        segments.push(Segment {
            x1: series[k + 1],
            y1: series[k + 1],
            x2: series[k + 1],
            y2: series[k + 2],
        });
    }
    Ok(segments)
}
