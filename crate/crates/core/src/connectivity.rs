//! All-time connectivity of the backbone and the range/velocity solvers
//! built on top of it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::TimeInterval;
use crate::kinematics::Scenario;
use crate::timeline::{decompose_timeline, link_timelines, Slice, TimelineDecomposition};

/// Default bracket width for [`solve_min_range`], meters.
pub const DEFAULT_RANGE_TOLERANCE: f64 = 1e-3;
/// Default number of uniform samples for [`solve_velocity`].
pub const DEFAULT_VELOCITY_GRID: usize = 64;

const VELOCITY_REFINE_STEPS: usize = 40;

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut u: usize) -> usize {
        while self.parent[u] != u {
            self.parent[u] = self.parent[self.parent[u]];
            u = self.parent[u];
        }
        u
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    /// Components as sorted member lists, ordered by smallest member.
    pub fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            let r = self.find(u);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(u);
        }
        out
    }
}

/// Connected components of the graph on `n` nodes with the given edges.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    uf.components()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub interval: TimeInterval,
    /// Component partition by platform id.
    pub partition: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub connected_throughout: bool,
    pub first_violation: Option<Violation>,
}

/// Per-slice verdicts behind a [`ConnectivityReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityProfile {
    pub decomposition: TimelineDecomposition,
    /// Component partition (platform indices) of each slice, in slice order.
    pub partitions: Vec<Vec<Vec<usize>>>,
}

impl ConnectivityProfile {
    pub fn connected_at(&self, t: f64) -> Option<bool> {
        let idx = self
            .decomposition
            .slices
            .partition_point(|s| s.interval.end < t);
        self.decomposition
            .slices
            .get(idx)
            .filter(|s| s.interval.start <= t)
            .map(|_| self.partitions[idx].len() <= 1)
    }

    pub fn slices(&self) -> impl Iterator<Item = (&Slice, bool)> {
        self.decomposition
            .slices
            .iter()
            .zip(&self.partitions)
            .map(|(s, p)| (s, p.len() <= 1))
    }
}

pub fn connectivity_profile(scenario: &Scenario) -> Result<ConnectivityProfile> {
    if scenario.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let timelines = link_timelines(scenario);
    let decomposition = decompose_timeline(&timelines, &scenario.window);
    let partitions = decomposition
        .slices
        .iter()
        .map(|s| components(scenario.len(), &s.edges))
        .collect();
    Ok(ConnectivityProfile {
        decomposition,
        partitions,
    })
}

/// Checks that the backbone graph is connected over every slice of the
/// mission window and reports the first slice where it is not.
pub fn check_connectivity(scenario: &Scenario) -> Result<ConnectivityReport> {
    let profile = connectivity_profile(scenario)?;
    Ok(report_from_profile(scenario, &profile))
}

pub fn report_from_profile(scenario: &Scenario, profile: &ConnectivityProfile) -> ConnectivityReport {
    let first_violation = profile
        .decomposition
        .slices
        .iter()
        .zip(&profile.partitions)
        .find(|(_, parts)| parts.len() > 1)
        .map(|(slice, parts)| Violation {
            interval: slice.interval,
            partition: parts
                .iter()
                .map(|c| c.iter().map(|&i| scenario.platforms[i].id.clone()).collect())
                .collect(),
        });
    ConnectivityReport {
        connected_throughout: first_violation.is_none(),
        first_violation,
    }
}

fn connected_at_range(template: &Scenario, d: f64) -> Result<ConnectivityReport> {
    check_connectivity(&template.with_threshold(d))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeSolution {
    pub min_range: f64,
    pub certificate: ConnectivityReport,
}

/// Smallest uniform communication threshold in `(0, t_max]` that keeps the
/// network connected throughout the window, to within `eps`.
///
/// The live-edge set only grows with the threshold, so connectivity is
/// monotone in it and bisection applies. The template's own threshold is
/// ignored.
pub fn solve_min_range(template: &Scenario, t_max: f64, eps: f64) -> Result<RangeSolution> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::invalid("t_max", "must be > 0"));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::invalid("eps", "must be > 0"));
    }
    let mut certificate = connected_at_range(template, t_max)?;
    if !certificate.connected_throughout {
        return Err(Error::InfeasibleAtMaxRange { t_max });
    }
    let (mut lo, mut hi) = (0.0, t_max);
    while hi - lo > eps {
        let mid = 0.5 * (lo + hi);
        let report = connected_at_range(template, mid)?;
        if report.connected_throughout {
            hi = mid;
            certificate = report;
        } else {
            lo = mid;
        }
    }
    Ok(RangeSolution {
        min_range: hi,
        certificate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VelocityObjective {
    Minimum,
    ClosestToOptimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocitySolution {
    pub chosen_omega: f64,
    pub objective: VelocityObjective,
    pub certificate: ConnectivityReport,
}

/// Searches for a uniform angular velocity (applied to every platform) that
/// keeps the network connected throughout the window.
///
/// Feasibility is not monotone in ω, so the range is scanned on a uniform
/// grid of `grid_points` samples. Without a target the smallest feasible
/// sample is returned; with `omega_target` the feasible sample closest to it.
/// The pick is then refined by bisection toward the adjacent infeasible
/// sample (or toward the target itself).
pub fn solve_velocity(
    template: &Scenario,
    omega_min: f64,
    omega_max: f64,
    grid_points: usize,
    omega_target: Option<f64>,
) -> Result<VelocitySolution> {
    if !(omega_min.is_finite() && omega_max.is_finite()) || omega_min > omega_max {
        return Err(Error::invalid("omega range", "need finite omega_min <= omega_max"));
    }
    if grid_points < 2 {
        return Err(Error::invalid("grid_points", "must be >= 2"));
    }
    if template.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    let check = |omega: f64| check_connectivity(&template.with_uniform_angular_velocity(omega));

    let step = (omega_max - omega_min) / (grid_points - 1) as f64;
    let samples: Vec<f64> = (0..grid_points)
        .map(|k| {
            if k + 1 == grid_points {
                omega_max
            } else {
                omega_min + k as f64 * step
            }
        })
        .collect();
    let reports: Vec<ConnectivityReport> = samples
        .par_iter()
        .map(|&w| check(w))
        .collect::<Result<_>>()?;
    let feasible: Vec<usize> = (0..grid_points)
        .filter(|&k| reports[k].connected_throughout)
        .collect();
    if feasible.is_empty() {
        return Err(Error::NoFeasibleVelocity {
            omega_min,
            omega_max,
        });
    }

    let (objective, pick, toward) = match omega_target {
        None => {
            let k = feasible[0];
            let toward = (k > 0).then(|| samples[k - 1]);
            (VelocityObjective::Minimum, k, toward)
        }
        Some(target) => {
            let target = target.clamp(omega_min, omega_max);
            let k = *feasible
                .iter()
                .min_by(|&&a, &&b| {
                    (samples[a] - target)
                        .abs()
                        .total_cmp(&(samples[b] - target).abs())
                        .then(a.cmp(&b))
                })
                .expect("non-empty");
            let toward = (samples[k] != target).then_some(target);
            (VelocityObjective::ClosestToOptimal, k, toward)
        }
    };

    let mut chosen = samples[pick];
    let mut certificate = reports[pick].clone();
    if let Some(mut bad) = toward {
        let target_report = check(bad)?;
        if target_report.connected_throughout {
            // only reachable for a feasible target between samples
            chosen = bad;
            certificate = target_report;
        } else {
            for _ in 0..VELOCITY_REFINE_STEPS {
                let mid = 0.5 * (chosen + bad);
                if mid == chosen || mid == bad {
                    break;
                }
                let r = check(mid)?;
                if r.connected_throughout {
                    chosen = mid;
                    certificate = r;
                } else {
                    bad = mid;
                }
            }
        }
    }
    Ok(VelocitySolution {
        chosen_omega: chosen,
        objective,
        certificate,
    })
}
