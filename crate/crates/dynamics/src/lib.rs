//! Two-state discrete-time dynamics of DCTCP/D2TCP congestion control.
//!
//! A D2TCP sender facing a hard-threshold marking switch reduces to a
//! two-dimensional map in the congestion window `W` and the congestion
//! history `α`, sampled once per round-trip time. The map is piecewise
//! smooth and discontinuous across the border `W = K + C·d/M`, and its
//! orbits range from low-period cycles to border-collision chaos.
//!
//! The crate is split into three layers:
//!
//! * [`map`] — the sender/switch map itself: validated parameter types,
//!   the one-step transition and orbit iteration.
//! * [`red`] — the general RED marking model, its reduction to the hard
//!   threshold, and an orbit driver for RED-marked senders.
//! * [`analysis`] — instrumentation over orbits: local extrema,
//!   bifurcation sweeps, period detection, return maps, cobweb segments,
//!   one-step map graphs and Lyapunov-exponent estimation.
//!
//! Everything is a pure function over immutable value types; there is no
//! interior mutability and no randomness, so equal inputs always produce
//! identical outputs. The crate is `no_std`-compatible (enable the `libm`
//! feature instead of the default `std`).

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod map;
mod math;
pub mod red;

pub use error::{AnalysisError, ParamError};
pub use map::{orbit, step, LinkParams, MapState, SenderParams, StepRecord};
pub use red::{orbit_red, run_series, threshold_policy, MarkingPolicy, RedParams, RedState};
