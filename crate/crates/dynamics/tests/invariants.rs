//! Cross-module invariants of the map, the RED reduction and the
//! analysis operators, mostly as property tests.

use d2tcp_dynamics::analysis::{
    cobweb, detect_period, return_map, sweep_point, Observable, SweepParameter, SweepSpec,
};
use d2tcp_dynamics::{
    orbit, step, threshold_policy, LinkParams, MapState, MarkingPolicy, SenderParams,
};
use proptest::prelude::*;

fn arb_link() -> impl Strategy<Value = LinkParams> {
    (
        1e6..1e11f64,    // capacity, bps
        0.0..1e-3f64,    // propagation delay, s
        64.0..65536.0f64, // packet size, bits
        10.0..1000.0f64, // buffer, packets
        0.01..0.99f64,   // threshold as a fraction of the buffer
    )
        .prop_map(|(c, d, m, b, kf)| LinkParams::new(c, d, m, b, kf * b).unwrap())
}

fn arb_sender() -> impl Strategy<Value = SenderParams> {
    (1e-4..0.999f64, 0.05..8.0f64).prop_map(|(g, gamma)| SenderParams::new(g, gamma).unwrap())
}

fn arb_state() -> impl Strategy<Value = MapState> {
    (1e-3..2000.0f64, 0.0..=1.0f64).prop_map(|(w, a)| MapState::new(w, a).unwrap())
}

proptest! {
    // Marking on the clamped queue equals the window-side border test:
    // mark(queue_next(W)) ⟺ W > K*, because 0 < K < B pins the
    // comparison inside the unclamped region.
    #[test]
    fn border_equivalence(link in arb_link(), window in 1e-6..5000.0f64) {
        let marked = link.mark(link.queue_next(window));
        prop_assert_eq!(marked, window > link.border());
    }

    // Every alpha reachable under an arbitrary mark sequence stays in
    // [0, 1]: each update is a convex combination with the mark bit.
    #[test]
    fn alpha_containment_under_any_mark_sequence(
        link in arb_link(),
        sender in arb_sender(),
        alpha0 in 0.0..=1.0f64,
        marks in prop::collection::vec(any::<bool>(), 1..200),
    ) {
        let above = link.border() + 1.0;
        let below = (link.border() * 0.5).max(1e-6);
        let mut alpha = alpha0;
        for &marked in &marks {
            let window = if marked { above } else { below };
            let state = MapState::new(window, alpha).unwrap();
            let (next, record) = step(state, &link, &sender);
            prop_assert_eq!(record.marked, marked);
            alpha = next.alpha();
            prop_assert!((0.0..=1.0).contains(&alpha));
        }
    }

    // Marked steps cut by at most half; unmarked steps add exactly one.
    #[test]
    fn window_floor_and_additive_increase(
        link in arb_link(),
        sender in arb_sender(),
        state in arb_state(),
    ) {
        let (next, record) = step(state, &link, &sender);
        if record.marked {
            prop_assert!(next.window() >= state.window() / 2.0);
            prop_assert!(next.window() <= state.window());
        } else {
            prop_assert_eq!(next.window(), state.window() + 1.0);
        }
    }

    // Emitted queues always lie inside the buffer.
    #[test]
    fn queue_containment(
        link in arb_link(),
        sender in arb_sender(),
        state in arb_state(),
    ) {
        for record in orbit(state, &link, &sender, 0, 300) {
            prop_assert!(record.queue >= 0.0);
            prop_assert!(record.queue <= link.buffer_packets());
            prop_assert!(record.rtt_s >= link.prop_delay_s());
        }
    }

    // At fixed alpha in (0, 1) the marked-branch multiplier grows
    // strictly with gamma.
    #[test]
    fn cut_factor_monotone_in_gamma(
        g in 0.01..0.99f64,
        alpha in 0.01..0.99f64,
        gamma_low in 0.1..4.0f64,
        bump in 0.1..4.0f64,
    ) {
        let low = SenderParams::new(g, gamma_low).unwrap();
        let high = SenderParams::new(g, gamma_low + bump).unwrap();
        prop_assert!(high.cut_factor(alpha) > low.cut_factor(alpha));
    }

    // Two runs with equal inputs produce identical record sequences.
    #[test]
    fn orbits_are_deterministic(
        link in arb_link(),
        sender in arb_sender(),
        state in arb_state(),
    ) {
        let a = orbit(state, &link, &sender, 50, 100);
        let b = orbit(state, &link, &sender, 50, 100);
        prop_assert_eq!(a, b);
    }

    // The degenerate RED configuration reproduces the hard threshold
    // exactly, probability 1 iff marked.
    #[test]
    fn threshold_policy_matches_mark(link in arb_link(), queue in 0.0..1000.0f64) {
        let queue = queue.min(link.buffer_packets());
        let policy = threshold_policy(&link);
        let p = policy.probability(queue);
        prop_assert_eq!(p == 1.0, link.mark(queue));
        prop_assert_eq!(p == 0.0, !link.mark(queue));
    }

    // RED probability is monotone non-decreasing and bounded in [0, 1].
    #[test]
    fn red_probability_monotone_and_bounded(
        w in 0.01..=1.0f64,
        q_min in 0.0..100.0f64,
        span in 0.0..100.0f64,
        p_max in 0.01..=1.0f64,
        q_a in 0.0..300.0f64,
        q_b in 0.0..300.0f64,
    ) {
        let params = d2tcp_dynamics::RedParams::new(w, q_min, q_min + span, p_max).unwrap();
        let (lo, hi) = if q_a <= q_b { (q_a, q_b) } else { (q_b, q_a) };
        let p_lo = params.probability(lo);
        let p_hi = params.probability(hi);
        prop_assert!((0.0..=1.0).contains(&p_lo));
        prop_assert!((0.0..=1.0).contains(&p_hi));
        prop_assert!(p_lo <= p_hi);
    }

    // EWMA contracts toward the instantaneous queue with factor 1 − w.
    #[test]
    fn ewma_is_a_contraction(
        w in 0.01..=1.0f64,
        avg in 0.0..500.0f64,
        queue in 0.0..500.0f64,
    ) {
        let params = d2tcp_dynamics::RedParams::new(w, 10.0, 20.0, 1.0).unwrap();
        let state = d2tcp_dynamics::RedState::new(avg).unwrap();
        let next = state.ewma_update(queue, &params);
        let lhs = (next.avg_queue() - queue).abs();
        let rhs = (1.0 - w) * (avg - queue).abs();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    // Order-2 return map equals the order-1 map composed with itself on
    // matching indices.
    #[test]
    fn return_map_composition(series in prop::collection::vec(-100.0..100.0f64, 3..60)) {
        let first = return_map(&series, 1).unwrap();
        let second = return_map(&series, 2).unwrap();
        for (k, &(x, y)) in second.iter().enumerate() {
            prop_assert_eq!(x, first[k].0);
            prop_assert_eq!(y, first[k + 1].1);
        }
    }

    // Cobweb segments alternate horizontal moves onto the diagonal and
    // vertical moves off it; every corner touches y = x.
    #[test]
    fn cobweb_geometry(series in prop::collection::vec(-100.0..100.0f64, 3..60)) {
        let segments = cobweb(&series).unwrap();
        prop_assert_eq!(segments.len(), 2 * (series.len() - 2));
        for pair in segments.chunks_exact(2) {
            let horizontal = pair[0];
            let vertical = pair[1];
            prop_assert_eq!(horizontal.y1, horizontal.y2);
            prop_assert_eq!(horizontal.x2, horizontal.y2); // ends on the diagonal
            prop_assert_eq!(vertical.x1, vertical.x2);
            prop_assert_eq!(vertical.x1, vertical.y1); // starts on the diagonal
            prop_assert_eq!(horizontal.x2, vertical.x1); // shared corner
        }
    }

    // detect_period recovers a planted period in the presence of noise
    // an order of magnitude below tolerance, matching the brute-force
    // all-shift oracle.
    #[test]
    fn detect_period_matches_oracle(
        period in 1usize..=8,
        noise_seed in any::<u64>(),
    ) {
        let tolerance = 1e-6;
        let mut series = Vec::with_capacity(64);
        let mut rng_state = noise_seed | 1;
        for i in 0..64usize {
            // strictly increasing base values keep the planted period minimal
            let base = (i % period) as f64;
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let noise = (rng_state >> 11) as f64 / (1u64 << 53) as f64 * tolerance / 10.0;
            series.push(base + noise);
        }
        let detected = detect_period(&series, tolerance, 8).unwrap().period;
        prop_assert_eq!(detected, oracle_all_shifts(&series, tolerance, 8));
        prop_assert_eq!(detected, Some(period));
        // a detected period also validates at twice the shift, within
        // twice the tolerance
        let p = detected.unwrap();
        for k in 0..series.len() - 2 * p {
            prop_assert!((series[k + 2 * p] - series[k]).abs() <= 2.0 * tolerance);
        }
    }
}

/// Independent all-shift scan used as the period oracle.
fn oracle_all_shifts(series: &[f64], tolerance: f64, max_period: usize) -> Option<usize> {
    'candidate: for p in 1..=max_period {
        let mut k = 0;
        while k + p < series.len() {
            if (series[k + p] - series[k]).abs() > tolerance {
                continue 'candidate;
            }
            k += 1;
        }
        return Some(p);
    }
    None
}

/// A plain DCTCP step written independently of the library: the history
/// is never exponentiated.
fn dctcp_step(window: f64, alpha: f64, link: &LinkParams, g: f64) -> (f64, f64) {
    let queue = link.queue_next(window);
    if link.mark(queue) {
        ((1.0 - alpha / 2.0) * window, (1.0 - g) * alpha + g)
    } else {
        (window + 1.0, (1.0 - g) * alpha)
    }
}

// gamma = 1 must reproduce plain DCTCP bit-for-bit over a long run.
#[test]
fn dctcp_is_the_gamma_one_special_case() {
    let link = LinkParams::new(10e9, 30e-6, 8192.0, 200.0, 15.0).unwrap();
    let sender = SenderParams::new(1.0 / 16.0, 1.0).unwrap();
    let g = sender.g();

    let mut state = MapState::new(1.0, 0.0).unwrap();
    let (mut window, mut alpha) = (1.0f64, 0.0f64);
    for _ in 0..1_000_000 {
        let (next, _) = step(state, &link, &sender);
        let (w_ref, a_ref) = dctcp_step(window, alpha, &link, g);
        assert_eq!(next.window().to_bits(), w_ref.to_bits());
        assert_eq!(next.alpha().to_bits(), a_ref.to_bits());
        state = next;
        window = w_ref;
        alpha = a_ref;
    }
}

// Slow feedback complicates the dynamics: sweeping the delay from
// nanoseconds to a hundred microseconds grows the number of distinct
// steady-state extrema.
#[test]
fn delay_sweep_grows_extrema_counts() {
    let link = LinkParams::new(10e9, 1e-9, 8192.0, 200.0, 20.0).unwrap();
    let sender = SenderParams::new(0.037, 1.0).unwrap();
    let initial = MapState::new(1.0, 0.0).unwrap();
    let spec = SweepSpec {
        parameter: SweepParameter::PropDelay,
        from: 1e-9,
        to: 1e-4,
        step: 1e-7,
        observable: Observable::Queue,
        transient: 5000,
        samples: 1000,
    };
    let count_at = |delay: f64| -> usize {
        let points = sweep_point(
            &spec,
            &link,
            &sender,
            &MarkingPolicy::Threshold,
            initial,
            delay,
        )
        .unwrap();
        let values: Vec<f64> = points.iter().map(|p| p.observable_value).collect();
        d2tcp_dynamics::analysis::distinct_count(&values, 1e-6)
    };
    let fast_feedback = count_at(1e-9);
    let slow_feedback = count_at(1e-4);
    assert!(
        fast_feedback < slow_feedback,
        "expected fewer distinct extrema at 1 ns ({fast_feedback}) than at 100 us ({slow_feedback})"
    );
    assert_eq!(fast_feedback, 6); // a stable three-excursion orbit
}

// Evaluating the sweep grid in any order and re-sorting yields exactly
// the serial output.
#[test]
fn sweep_is_order_independent() {
    let link = LinkParams::new(10e9, 1e-9, 8192.0, 200.0, 20.0).unwrap();
    let sender = SenderParams::new(1.0 / 16.0, 1.0).unwrap();
    let initial = MapState::new(1.0, 0.0).unwrap();
    let spec = SweepSpec {
        parameter: SweepParameter::Weight,
        from: 0.01,
        to: 0.05,
        step: 0.001,
        observable: Observable::Queue,
        transient: 1000,
        samples: 200,
    };
    spec.validate().unwrap();

    let grid = spec.grid();
    let forward: Vec<_> = grid
        .iter()
        .flat_map(|&v| {
            sweep_point(&spec, &link, &sender, &MarkingPolicy::Threshold, initial, v).unwrap()
        })
        .collect();

    let mut reversed: Vec<(f64, Vec<_>)> = grid
        .iter()
        .rev()
        .map(|&v| {
            (
                v,
                sweep_point(&spec, &link, &sender, &MarkingPolicy::Threshold, initial, v)
                    .unwrap(),
            )
        })
        .collect();
    reversed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let resorted: Vec<_> = reversed.into_iter().flat_map(|(_, pts)| pts).collect();

    assert_eq!(forward, resorted);
}
