//! One-step map graphs with one state variable frozen.

use alloc::vec::Vec;

use crate::error::AnalysisError;
use crate::map::{step, LinkParams, MapState, SenderParams};

use super::Observable;

/// Samples the one-step image of `window` or `alpha` over a domain grid,
/// holding the other state variable at `frozen_other`. The grid includes
/// both endpoints. Exposes the jump of the map across the border
/// `K* = K + C·d/M`.
///
/// The queue is not a state variable, so asking for its map graph is an
/// error.
pub fn map_graph(
    observable: Observable,
    frozen_other: f64,
    link: &LinkParams,
    sender: &SenderParams,
    domain_from: f64,
    domain_to: f64,
    resolution: usize,
) -> Result<Vec<(f64, f64)>, AnalysisError> {
    if observable == Observable::Queue {
        return Err(AnalysisError::NotAStateVariable);
    }
    if !domain_from.is_finite() || !domain_to.is_finite() || domain_from >= domain_to
        || resolution < 2
    {
        return Err(AnalysisError::BadDomain);
    }
    let span = domain_to - domain_from;
    let mut points = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let input = domain_from + span * i as f64 / (resolution - 1) as f64;
        let state = match observable {
            Observable::Window => MapState::new(input, frozen_other),
            Observable::Alpha => MapState::new(frozen_other, input),
            Observable::Queue => unreachable!(),
        }
        .map_err(|source| AnalysisError::SweptParamInvalid {
            value: input,
            source,
        })?;
        let (next, _) = step(state, link, sender);
        let output = match observable {
            Observable::Window => next.window(),
            Observable::Alpha => next.alpha(),
            Observable::Queue => unreachable!(),
        };
        points.push((input, output));
    }
    Ok(points)
}
