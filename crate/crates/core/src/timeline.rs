//! Link lifetimes from the distance curve, and the decomposition of the
//! mission window into slices with a constant set of live links.
//!
//! The squared distance between two orbiting platforms is a trigonometric
//! polynomial whose frequencies are bounded by `|ω_p|`, `|ω_q|` and
//! `|ω_p − ω_q|`. We sample it on a grid of `(π/16)/Ω`, add every local
//! extremum found by bisecting sign changes of its derivative, and then
//! locate each threshold crossing by bisection on `s²(t) − D²` between
//! consecutive critical points, where the function is monotone.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::interval::{IntervalSet, TimeInterval};
use crate::kinematics::{pair_distance, squared_distance_with_rate, PlatformSpec, Scenario};
use crate::{DISTANCE_TOLERANCE, OMEGA_FLOOR, TIME_TOLERANCE};

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkTimeline {
    /// Platform indices, smaller first.
    pub pair: (usize, usize),
    pub live: IntervalSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Slice {
    pub interval: TimeInterval,
    /// Live links, sorted.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineDecomposition {
    pub slices: Vec<Slice>,
}

impl TimelineDecomposition {
    pub fn slice_at(&self, t: f64) -> Option<&Slice> {
        let idx = self.slices.partition_point(|s| s.interval.end < t);
        self.slices.get(idx).filter(|s| s.interval.start <= t)
    }
}

/// Grid step used to isolate roots of the distance curve of `p` and `q`.
pub fn isolation_step(p: &PlatformSpec, q: &PlatformSpec) -> f64 {
    let omega = p
        .angular_velocity
        .abs()
        .max(q.angular_velocity.abs())
        .max((p.angular_velocity - q.angular_velocity).abs())
        .max(OMEGA_FLOOR);
    (std::f64::consts::PI / 16.0) / omega
}

fn grid(window: &TimeInterval, step: f64) -> Vec<f64> {
    let cells = (window.len() / step).ceil().max(1.0) as usize;
    let mut pts: Vec<f64> = (0..cells)
        .map(|k| window.start + k as f64 * step)
        .filter(|&t| t < window.end)
        .collect();
    if pts.is_empty() {
        pts.push(window.start);
    }
    pts.push(window.end);
    pts
}

/// Sorted times containing both window ends, the sampling grid and every
/// local extremum of the pair distance inside the window.
pub(crate) fn critical_times(p: &PlatformSpec, q: &PlatformSpec, window: &TimeInterval) -> Vec<f64> {
    let rate = |t: f64| squared_distance_with_rate(p, q, t).1;
    let pts = grid(window, isolation_step(p, q));
    let mut out = Vec::with_capacity(pts.len() * 2);
    let mut prev_rate = rate(pts[0]);
    out.push(pts[0]);
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let rb = rate(b);
        if prev_rate != 0.0 && rb != 0.0 && (prev_rate < 0.0) != (rb < 0.0) {
            out.push(bisect(a, b, |t| rate(t) < 0.0, prev_rate < 0.0, |_, _| false));
        }
        out.push(b);
        prev_rate = rb;
    }
    out.dedup();
    out
}

/// Bisects `[lo, hi]` where `pred(lo) == pred_lo` and `pred(hi) != pred_lo`.
/// Stops early once `done(mid, width)` holds and otherwise at float resolution.
fn bisect(
    mut lo: f64,
    mut hi: f64,
    pred: impl Fn(f64) -> bool,
    pred_lo: bool,
    done: impl Fn(f64, f64) -> bool,
) -> f64 {
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTIONS {
        if mid <= lo || mid >= hi || done(mid, hi - lo) {
            break;
        }
        if pred(mid) == pred_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }
    mid
}

/// Maximal intervals of `window` where `pair_distance(p, q, t) <= threshold`.
///
/// Each crossing is located to within [`TIME_TOLERANCE`] and to
/// `|s(τ) − D| <= DISTANCE_TOLERANCE`. Contacts shorter than
/// [`TIME_TOLERANCE`] are dropped and shorter gaps are merged.
pub fn link_live_intervals(
    p: &PlatformSpec,
    q: &PlatformSpec,
    window: &TimeInterval,
    threshold: f64,
) -> IntervalSet {
    let d2 = threshold * threshold;
    let live = |t: f64| squared_distance_with_rate(p, q, t).0 <= d2;

    if window.len() < TIME_TOLERANCE {
        return if live(window.midpoint()) {
            IntervalSet::single(*window)
        } else {
            IntervalSet::empty()
        };
    }

    let crossing_found = |t: f64, width: f64| {
        width <= TIME_TOLERANCE && (pair_distance(p, q, t) - threshold).abs() <= DISTANCE_TOLERANCE
    };

    let pts = critical_times(p, q, window);
    let mut raw = Vec::new();
    let mut state = live(pts[0]);
    let mut open = state.then_some(pts[0]);
    for w in pts.windows(2) {
        let next = live(w[1]);
        if next != state {
            let tau = bisect(w[0], w[1], live, state, crossing_found);
            match open.take() {
                Some(start) => raw.push(TimeInterval { start, end: tau }),
                None => open = Some(tau),
            }
            state = next;
        }
    }
    if let Some(start) = open {
        raw.push(TimeInterval {
            start,
            end: window.end,
        });
    }
    IntervalSet::normalized(raw, TIME_TOLERANCE)
}

/// Live intervals for every platform pair of the scenario, in pair order.
pub fn link_timelines(scenario: &Scenario) -> Vec<LinkTimeline> {
    let pairs: Vec<(usize, usize)> = scenario.pairs().collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| LinkTimeline {
            pair: (i, j),
            live: link_live_intervals(
                &scenario.platforms[i],
                &scenario.platforms[j],
                &scenario.window,
                scenario.threshold_for(i, j),
            ),
        })
        .collect()
}

/// Splits `window` at every interval endpoint and labels each slice with the
/// links live at its midpoint; neighbouring slices with equal labels merge.
pub fn decompose_timeline(timelines: &[LinkTimeline], window: &TimeInterval) -> TimelineDecomposition {
    let live_at = |t: f64| -> Vec<(usize, usize)> {
        let mut e: Vec<_> = timelines
            .iter()
            .filter(|l| l.live.contains(t))
            .map(|l| l.pair)
            .collect();
        e.sort_unstable();
        e
    };

    if window.is_degenerate() {
        return TimelineDecomposition {
            slices: vec![Slice {
                interval: *window,
                edges: live_at(window.start),
            }],
        };
    }

    let mut bounds = vec![window.start, window.end];
    for l in timelines {
        for iv in l.live.clip(window).iter() {
            bounds.push(iv.start);
            bounds.push(iv.end);
        }
    }
    bounds.sort_by(f64::total_cmp);
    bounds.dedup();

    let mut slices: Vec<Slice> = Vec::new();
    for w in bounds.windows(2) {
        let interval = TimeInterval {
            start: w[0],
            end: w[1],
        };
        let edges = live_at(interval.midpoint());
        match slices.last_mut() {
            Some(last) if last.edges == edges => last.interval.end = interval.end,
            _ => slices.push(Slice { interval, edges }),
        }
    }
    TimelineDecomposition { slices }
}
