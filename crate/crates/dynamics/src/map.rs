//! The two-state sender map under hard-threshold marking.
//!
//! State is the pair `(W, α)`: the congestion window in packets and the
//! exponentially weighted marked fraction. One map step covers one RTT
//! sampling interval. The queue is not a state variable — it has no
//! memory and is recomputed from the window each interval:
//!
//! ```text
//! q' = clamp(W − C·d/M, 0, B)
//! marked  ⟺  q' > K
//! W' = (1 − α^γ/2)·W   if marked,   W + 1      otherwise
//! α' = (1 − g)·α + g   if marked,   (1 − g)·α  otherwise
//! ```
//!
//! Both updates read the pre-step `(W, α)`. The decision border expressed
//! in window units is `K* = K + C·d/M`; orbits switch between the additive
//! and multiplicative branches by colliding with it.

use alloc::vec::Vec;

use crate::error::ParamError;
use crate::math;

/// Link and switch constants: capacity, propagation delay, packet size,
/// buffer size and marking threshold.
///
/// Validated on construction; `0 < K < B` is required so that marking on
/// the clamped queue coincides with the window-side border test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    capacity_bps: f64,
    prop_delay_s: f64,
    packet_size_bits: f64,
    buffer_packets: f64,
    threshold_packets: f64,
}

impl LinkParams {
    pub fn new(
        capacity_bps: f64,
        prop_delay_s: f64,
        packet_size_bits: f64,
        buffer_packets: f64,
        threshold_packets: f64,
    ) -> Result<Self, ParamError> {
        if !capacity_bps.is_finite() || capacity_bps <= 0.0 {
            return Err(ParamError::Capacity);
        }
        if !prop_delay_s.is_finite() || prop_delay_s < 0.0 {
            return Err(ParamError::PropDelay);
        }
        if !packet_size_bits.is_finite() || packet_size_bits <= 0.0 {
            return Err(ParamError::PacketSize);
        }
        if !buffer_packets.is_finite() || buffer_packets <= 0.0 {
            return Err(ParamError::Buffer);
        }
        if !threshold_packets.is_finite()
            || threshold_packets <= 0.0
            || threshold_packets >= buffer_packets
        {
            return Err(ParamError::Threshold);
        }
        Ok(Self {
            capacity_bps,
            prop_delay_s,
            packet_size_bits,
            buffer_packets,
            threshold_packets,
        })
    }

    pub fn capacity_bps(&self) -> f64 {
        self.capacity_bps
    }

    pub fn prop_delay_s(&self) -> f64 {
        self.prop_delay_s
    }

    pub fn packet_size_bits(&self) -> f64 {
        self.packet_size_bits
    }

    pub fn buffer_packets(&self) -> f64 {
        self.buffer_packets
    }

    pub fn threshold_packets(&self) -> f64 {
        self.threshold_packets
    }

    /// In-flight packet budget of the bare link, `C·d/M`.
    ///
    /// Real-valued; no rounding to whole packets.
    pub fn bandwidth_delay_product(&self) -> f64 {
        self.capacity_bps * self.prop_delay_s / self.packet_size_bits
    }

    /// The marking border in window units, `K* = K + C·d/M`.
    pub fn border(&self) -> f64 {
        self.threshold_packets + self.bandwidth_delay_product()
    }

    /// Queue produced by a window over one sampling interval,
    /// `clamp(W − C·d/M, 0, B)`.
    pub fn queue_next(&self, window: f64) -> f64 {
        (window - self.bandwidth_delay_product()).clamp(0.0, self.buffer_packets)
    }

    /// Hard-threshold marking on the instantaneous queue: marked iff
    /// `q > K`, strictly. A queue exactly at `K` is unmarked.
    pub fn mark(&self, queue: f64) -> bool {
        queue > self.threshold_packets
    }

    /// Round-trip time implied by a queue level, `d + q·M/C`.
    pub fn rtt(&self, queue: f64) -> f64 {
        self.prop_delay_s + queue * self.packet_size_bits / self.capacity_bps
    }
}

/// Sender constants: the marked-fraction weight `g ∈ (0, 1)` and the
/// deadline exponent `γ > 0`. `γ = 1` is plain DCTCP; larger `γ` makes
/// the window cut more aggressive at the same congestion history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SenderParams {
    g: f64,
    gamma: f64,
}

impl SenderParams {
    pub fn new(g: f64, gamma: f64) -> Result<Self, ParamError> {
        if !g.is_finite() || g <= 0.0 || g >= 1.0 {
            return Err(ParamError::Weight);
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(ParamError::Gamma);
        }
        Ok(Self { g, gamma })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Window multiplier applied on a marked interval, `1 − α^γ/2`.
    ///
    /// `γ = 1` skips the pow call entirely so that the DCTCP special case
    /// is bit-identical to computing `1 − α/2` directly.
    pub fn cut_factor(&self, alpha: f64) -> f64 {
        let history = if self.gamma == 1.0 {
            alpha
        } else {
            math::powf(alpha, self.gamma)
        };
        1.0 - history / 2.0
    }
}

/// The two independent state variables of the map: window `W > 0` and
/// congestion history `α ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapState {
    window: f64,
    alpha: f64,
}

impl MapState {
    pub fn new(window: f64, alpha: f64) -> Result<Self, ParamError> {
        if !window.is_finite() || window <= 0.0 {
            return Err(ParamError::Window);
        }
        if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
            return Err(ParamError::Alpha);
        }
        Ok(Self { window, alpha })
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Full observable snapshot of one sampling interval: the pre-step state,
/// the queue it generates, the marking decision and the implied RTT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    /// Iteration index. Assigned by orbit drivers; a standalone [`step`]
    /// leaves it at 0.
    pub k: u64,
    /// Window `W_k` in packets.
    pub window: f64,
    /// Congestion history `α_k`.
    pub alpha: f64,
    /// Queue generated by `W_k`, clamped to `[0, B]`.
    pub queue: f64,
    /// Marking decision on that queue; also the marked fraction fed back
    /// to the sender (0 or 1 under threshold marking).
    pub marked: bool,
    /// Round-trip time implied by the recorded queue, in seconds.
    pub rtt_s: f64,
}

/// One step of the map. Returns the successor state and the record of the
/// interval that produced it.
///
/// Both the window and history updates read the same pre-step state, so
/// the step is a simultaneous update of `(W, α)`.
pub fn step(state: MapState, link: &LinkParams, sender: &SenderParams) -> (MapState, StepRecord) {
    let queue = link.queue_next(state.window);
    let marked = link.mark(queue);
    let (window, alpha) = if marked {
        (
            sender.cut_factor(state.alpha) * state.window,
            (1.0 - sender.g) * state.alpha + sender.g,
        )
    } else {
        (state.window + 1.0, (1.0 - sender.g) * state.alpha)
    };
    let record = StepRecord {
        k: 0,
        window: state.window,
        alpha: state.alpha,
        queue,
        marked,
        rtt_s: link.rtt(queue),
    };
    // Output invariants hold by construction: the cut factor lies in
    // [1/2, 1] for alpha in [0, 1], and the history update is a convex
    // combination with the mark bit.
    (MapState { window, alpha }, record)
}

/// Iterates [`step`] `transient + samples` times from `initial` and
/// returns the last `samples` records in iteration order. Record indices
/// are global, counted from the initial state, so a `(transient, samples)`
/// run equals the tail of a `(0, transient + samples)` run.
pub fn orbit(
    initial: MapState,
    link: &LinkParams,
    sender: &SenderParams,
    transient: usize,
    samples: usize,
) -> Vec<StepRecord> {
    let mut state = initial;
    let mut records = Vec::with_capacity(samples);
    for k in 0..transient + samples {
        let (next, mut record) = step(state, link, sender);
        if k >= transient {
            record.k = k as u64;
            records.push(record);
        }
        state = next;
    }
    records
}
