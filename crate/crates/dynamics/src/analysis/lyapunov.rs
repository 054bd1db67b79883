//! Largest-Lyapunov-exponent estimation by twin-orbit renormalization.

use crate::error::AnalysisError;
use crate::map::{step, LinkParams, MapState, SenderParams};
use crate::math;

fn offset(reference: MapState, separation: f64) -> MapState {
    MapState::new(reference.window() + separation, reference.alpha())
        .expect("window offset by a positive separation stays valid")
}

/// Two-orbit estimate of the largest Lyapunov exponent of the threshold
/// map, per iteration.
///
/// A reference orbit and a perturbed twin (offset by `separation` along
/// the window axis) are evolved together after the transient; every step
/// accumulates `ln(distance/separation)` and rescales the twin back to
/// `separation` along the current difference direction. Twin border
/// straddles are not handled specially, so a positive estimate signals
/// exponential divergence seeded by border collisions rather than smooth
/// stretching.
///
/// If the twins ever collapse to the identical float state the offset is
/// re-seeded and that step is not counted; a run where every step
/// collapsed reports negative infinity (contraction below float
/// resolution).
pub fn lyapunov_estimate(
    initial: MapState,
    link: &LinkParams,
    sender: &SenderParams,
    transient: usize,
    iterations: usize,
    separation: f64,
) -> Result<f64, AnalysisError> {
    if !separation.is_finite() || separation <= 0.0 {
        return Err(AnalysisError::BadSeparation);
    }
    if iterations == 0 {
        return Err(AnalysisError::BadIterations);
    }

    let mut reference = initial;
    for _ in 0..transient {
        reference = step(reference, link, sender).0;
    }
    let mut perturbed = offset(reference, separation);

    let mut log_growth_sum = 0.0;
    let mut counted = 0usize;
    for _ in 0..iterations {
        reference = step(reference, link, sender).0;
        perturbed = step(perturbed, link, sender).0;
        let dw = perturbed.window() - reference.window();
        let da = perturbed.alpha() - reference.alpha();
        let distance = math::sqrt(dw * dw + da * da);
        if distance == 0.0 || !distance.is_finite() {
            perturbed = offset(reference, separation);
            continue;
        }
        log_growth_sum += math::ln(distance / separation);
        counted += 1;
        // Rescale the twin to `separation` along the difference direction.
        // The rescaled offset has magnitude `separation`, so alpha can
        // poke at most that far outside [0, 1]; clamp it back.
        let scale = separation / distance;
        let window = reference.window() + dw * scale;
        let alpha = (reference.alpha() + da * scale).clamp(0.0, 1.0);
        perturbed = MapState::new(window, alpha)
            .unwrap_or_else(|_| offset(reference, separation));
    }
    if counted == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(log_growth_sum / counted as f64)
}
