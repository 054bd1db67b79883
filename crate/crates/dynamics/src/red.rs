//! RED marking and its reduction to the hard threshold.
//!
//! The general RED controller averages the queue with an EWMA and marks
//! with a probability that is piecewise linear between `q_min` and
//! `q_max`. Setting `q_min = q_max = K`, `p_max = 1` and weight 1 (so the
//! average *is* the instantaneous queue) collapses the curve to the hard
//! on/off threshold used by the sender map.

use alloc::vec::Vec;

use crate::error::ParamError;
use crate::map::{orbit, LinkParams, MapState, SenderParams, StepRecord};

/// RED curve parameters: EWMA weight `w ∈ (0, 1]`, knees
/// `0 ≤ q_min ≤ q_max` in packets and ceiling probability `p_max ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedParams {
    weight: f64,
    q_min_packets: f64,
    q_max_packets: f64,
    p_max: f64,
}

impl RedParams {
    pub fn new(
        weight: f64,
        q_min_packets: f64,
        q_max_packets: f64,
        p_max: f64,
    ) -> Result<Self, ParamError> {
        if !weight.is_finite() || weight <= 0.0 || weight > 1.0 {
            return Err(ParamError::RedWeight);
        }
        if !q_min_packets.is_finite()
            || !q_max_packets.is_finite()
            || q_min_packets < 0.0
            || q_min_packets > q_max_packets
        {
            return Err(ParamError::RedThresholds);
        }
        if !p_max.is_finite() || p_max <= 0.0 || p_max > 1.0 {
            return Err(ParamError::RedPMax);
        }
        Ok(Self {
            weight,
            q_min_packets,
            q_max_packets,
            p_max,
        })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn q_min_packets(&self) -> f64 {
        self.q_min_packets
    }

    pub fn q_max_packets(&self) -> f64 {
        self.q_max_packets
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    /// Marking probability for an averaged queue level:
    ///
    /// ```text
    /// p = 0                                   q̄ < q_min
    /// p = (q̄ − q_min)/(q_max − q_min)·p_max   q_min ≤ q̄ ≤ q_max
    /// p = 1                                   q̄ > q_max
    /// ```
    ///
    /// The degenerate `q_min = q_max` curve is the hard threshold: 0 at or
    /// below the knee, 1 above it.
    pub fn probability(&self, avg_queue: f64) -> f64 {
        if avg_queue > self.q_max_packets {
            1.0
        } else if avg_queue < self.q_min_packets || self.q_min_packets == self.q_max_packets {
            0.0
        } else {
            (avg_queue - self.q_min_packets) / (self.q_max_packets - self.q_min_packets)
                * self.p_max
        }
    }
}

/// EWMA state of the RED controller: the averaged queue `q̄ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedState {
    avg_queue: f64,
}

impl RedState {
    pub fn new(avg_queue: f64) -> Result<Self, ParamError> {
        if !avg_queue.is_finite() || avg_queue < 0.0 {
            return Err(ParamError::AvgQueue);
        }
        Ok(Self { avg_queue })
    }

    /// The empty-buffer start, `q̄ = 0`.
    pub fn empty() -> Self {
        Self { avg_queue: 0.0 }
    }

    pub fn avg_queue(&self) -> f64 {
        self.avg_queue
    }

    /// One EWMA update, `q̄' = (1 − w)·q̄ + w·q`.
    pub fn ewma_update(&self, instantaneous_queue: f64, params: &RedParams) -> Self {
        Self {
            avg_queue: (1.0 - params.weight) * self.avg_queue
                + params.weight * instantaneous_queue,
        }
    }
}

/// The RED configuration that reproduces the hard threshold of the sender
/// map: both knees at `K`, ceiling 1, and weight 1 so the EWMA passes the
/// instantaneous queue through unchanged.
pub fn threshold_policy(link: &LinkParams) -> RedParams {
    RedParams {
        weight: 1.0,
        q_min_packets: link.threshold_packets(),
        q_max_packets: link.threshold_packets(),
        p_max: 1.0,
    }
}

/// Which marking scheme drives a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarkingPolicy {
    /// Hard threshold on the instantaneous queue (the sender map proper).
    Threshold,
    /// General RED with fractional probabilities. An experimental
    /// extension of the map: the probability feeds the history update
    /// directly as the marked fraction, and any positive probability
    /// fires the multiplicative branch.
    Red(RedParams),
}

/// Orbit of the sender driven by general RED marking. The EWMA starts
/// from an empty buffer. Records carry the instantaneous queue and
/// `marked = (p > 0)`.
pub fn orbit_red(
    initial: MapState,
    link: &LinkParams,
    sender: &SenderParams,
    red: &RedParams,
    transient: usize,
    samples: usize,
) -> Vec<StepRecord> {
    let mut state = initial;
    let mut avg = RedState::empty();
    let mut records = Vec::with_capacity(samples);
    for k in 0..transient + samples {
        let queue = link.queue_next(state.window());
        avg = avg.ewma_update(queue, red);
        let p = red.probability(avg.avg_queue());
        let marked = p > 0.0;
        if k >= transient {
            records.push(StepRecord {
                k: k as u64,
                window: state.window(),
                alpha: state.alpha(),
                queue,
                marked,
                rtt_s: link.rtt(queue),
            });
        }
        let (window, alpha) = if marked {
            (
                sender.cut_factor(state.alpha()) * state.window(),
                (1.0 - sender.g()) * state.alpha() + sender.g() * p,
            )
        } else {
            (state.window() + 1.0, (1.0 - sender.g()) * state.alpha())
        };
        state = MapState::new(window, alpha).expect("red orbit preserves state invariants");
    }
    records
}

/// Runs an orbit under the given marking policy.
pub fn run_series(
    initial: MapState,
    link: &LinkParams,
    sender: &SenderParams,
    marking: &MarkingPolicy,
    transient: usize,
    samples: usize,
) -> Vec<StepRecord> {
    match marking {
        MarkingPolicy::Threshold => orbit(initial, link, sender, transient, samples),
        MarkingPolicy::Red(params) => orbit_red(initial, link, sender, params, transient, samples),
    }
}
