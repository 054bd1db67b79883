//! Error types for parameter validation and analysis preconditions.

use core::fmt;

/// A constructor argument violated its invariant.
///
/// Every variant names the offending field in scenario-file spelling so
/// validation messages can be surfaced verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamError {
    /// capacity must be finite and > 0
    Capacity,
    /// propagation delay must be finite and >= 0
    PropDelay,
    /// packet size must be finite and > 0
    PacketSize,
    /// buffer must be finite and > 0
    Buffer,
    /// marking threshold must satisfy 0 < K < B
    Threshold,
    /// marked-fraction weight must satisfy 0 < g < 1
    Weight,
    /// deadline exponent must be finite and > 0
    Gamma,
    /// window must be finite and > 0
    Window,
    /// congestion history must lie in [0, 1]
    Alpha,
    /// RED averaging weight must satisfy 0 < w <= 1
    RedWeight,
    /// RED thresholds must satisfy 0 <= q_min <= q_max
    RedThresholds,
    /// RED ceiling probability must satisfy 0 < p_max <= 1
    RedPMax,
    /// averaged queue must be finite and >= 0
    AvgQueue,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            ParamError::Capacity => "capacity_bps must be finite and > 0",
            ParamError::PropDelay => "prop_delay_s must be finite and >= 0",
            ParamError::PacketSize => "packet_size_bits must be finite and > 0",
            ParamError::Buffer => "buffer_packets must be finite and > 0",
            ParamError::Threshold => {
                "threshold_packets must be > 0 and < buffer_packets"
            }
            ParamError::Weight => "g must lie strictly between 0 and 1",
            ParamError::Gamma => "gamma must be finite and > 0",
            ParamError::Window => "window_packets must be finite and > 0",
            ParamError::Alpha => "alpha must lie in [0, 1]",
            ParamError::RedWeight => "red weight must satisfy 0 < w <= 1",
            ParamError::RedThresholds => {
                "red thresholds must satisfy 0 <= q_min_packets <= q_max_packets"
            }
            ParamError::RedPMax => "red p_max must satisfy 0 < p_max <= 1",
            ParamError::AvgQueue => "avg_queue must be finite and >= 0",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for ParamError {}

/// An analysis operation was called outside its domain.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    /// Series shorter than the operation's minimum length.
    InsufficientSeries { len: usize, min: usize },
    /// Sweep range is empty or stepped the wrong way.
    BadSweepRange { from: f64, to: f64, step: f64 },
    /// Sweep grid resolves to fewer than two points.
    GridTooSmall,
    /// Sweep sample count below the extrema minimum of three.
    TooFewSamples { samples: usize },
    /// A swept value violated the target parameter's invariant.
    SweptParamInvalid { value: f64, source: ParamError },
    /// Tolerance must be finite and > 0.
    BadTolerance,
    /// max_period must be >= 1.
    BadMaxPeriod,
    /// Return-map order must be >= 1.
    BadOrder,
    /// map_graph domain must be a nonempty interval sampled at >= 2 points.
    BadDomain,
    /// map_graph only applies to the state variables, not the queue.
    NotAStateVariable,
    /// Lyapunov separation must be finite and > 0.
    BadSeparation,
    /// Lyapunov iteration count must be >= 1.
    BadIterations,
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::InsufficientSeries { len, min } => {
                write!(f, "insufficient series: got {len} values, need at least {min}")
            }
            AnalysisError::BadSweepRange { from, to, step } => {
                write!(f, "invalid sweep range: from={from}, to={to}, step={step} (need from < to and step > 0)")
            }
            AnalysisError::GridTooSmall => {
                f.write_str("sweep grid produces fewer than two points")
            }
            AnalysisError::TooFewSamples { samples } => {
                write!(f, "sweep needs samples >= 3 to extract extrema, got {samples}")
            }
            AnalysisError::SweptParamInvalid { value, source } => {
                write!(f, "swept value {value} is invalid: {source}")
            }
            AnalysisError::BadTolerance => f.write_str("tolerance must be finite and > 0"),
            AnalysisError::BadMaxPeriod => f.write_str("max_period must be >= 1"),
            AnalysisError::BadOrder => f.write_str("return-map order must be >= 1"),
            AnalysisError::BadDomain => {
                f.write_str("domain must satisfy from < to and resolution >= 2")
            }
            AnalysisError::NotAStateVariable => {
                f.write_str("map graph is defined for window and alpha only")
            }
            AnalysisError::BadSeparation => {
                f.write_str("separation must be finite and > 0")
            }
            AnalysisError::BadIterations => f.write_str("iterations must be >= 1"),
        }
    }
}

impl core::error::Error for AnalysisError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            AnalysisError::SweptParamInvalid { source, .. } => Some(source),
            _ => None,
        }
    }
}
