//! Routing between a source and destination with the fewest path switches.
//!
//! Paths of at most `k` hops are enumerated over the link timelines and
//! their lifetimes are the intersections of their links' lifetimes. The
//! route is then built greedily: at each handover instant take the live
//! interval that reaches furthest. This greedy choice is optimal.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{IntervalSet, TimeInterval};
use crate::kinematics::Scenario;
use crate::timeline::{link_timelines, LinkTimeline};
use crate::TIME_TOLERANCE;

pub const DEFAULT_MAX_HOPS: usize = 3;
pub const PATH_CEILING: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathLifetime {
    /// Platform indices, source first.
    pub nodes: Vec<usize>,
    pub live: IntervalSet,
}

impl PathLifetime {
    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }

    /// True when the path is never live inside the window it was built for.
    pub fn is_dead(&self) -> bool {
        self.live.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteLeg {
    pub path: PathLifetime,
    pub use_interval: TimeInterval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutePlan {
    pub legs: Vec<RouteLeg>,
    pub switch_count: usize,
}

/// All simple paths from `s` to `d` with at most `k` edges, in lexicographic
/// order of their node sequences. Every link that has a timeline is an edge,
/// even one that is never live; such paths come back with an empty lifetime.
pub fn enumerate_paths(timelines: &[LinkTimeline], s: usize, d: usize, k: usize) -> Result<Vec<PathLifetime>> {
    enumerate_paths_with_ceiling(timelines, s, d, k, PATH_CEILING)
}

pub fn enumerate_paths_with_ceiling(
    timelines: &[LinkTimeline],
    s: usize,
    d: usize,
    k: usize,
    ceiling: usize,
) -> Result<Vec<PathLifetime>> {
    if s == d {
        return Err(Error::invalid("destination", "must differ from source"));
    }
    if k == 0 {
        return Err(Error::invalid("max_hops", "must be >= 1"));
    }

    let mut adjacency: HashMap<usize, Vec<(usize, &IntervalSet)>> = HashMap::new();
    for l in timelines {
        let (a, b) = l.pair;
        adjacency.entry(a).or_default().push((b, &l.live));
        adjacency.entry(b).or_default().push((a, &l.live));
    }
    for nbrs in adjacency.values_mut() {
        nbrs.sort_by_key(|&(v, _)| v);
    }

    struct Walk<'a> {
        adjacency: &'a HashMap<usize, Vec<(usize, &'a IntervalSet)>>,
        dest: usize,
        max_hops: usize,
        ceiling: usize,
        stack: Vec<usize>,
        out: Vec<PathLifetime>,
    }

    impl Walk<'_> {
        fn extend(&mut self, live: Option<IntervalSet>) -> Result<()> {
            let here = *self.stack.last().expect("stack holds the source");
            let Some(nbrs) = self.adjacency.get(&here) else {
                return Ok(());
            };
            for &(next, link) in nbrs {
                if self.stack.contains(&next) {
                    continue;
                }
                let joined = match &live {
                    None => link.clone(),
                    Some(acc) => acc.intersection(link, TIME_TOLERANCE),
                };
                if next == self.dest {
                    if self.out.len() == self.ceiling {
                        return Err(Error::TooManyPaths(self.ceiling));
                    }
                    let mut nodes = self.stack.clone();
                    nodes.push(next);
                    self.out.push(PathLifetime { nodes, live: joined });
                } else if self.stack.len() < self.max_hops {
                    self.stack.push(next);
                    self.extend(Some(joined))?;
                    self.stack.pop();
                }
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        adjacency: &adjacency,
        dest: d,
        max_hops: k,
        ceiling,
        stack: vec![s],
        out: Vec::new(),
    };
    walk.extend(None)?;
    Ok(walk.out)
}

/// Greedy minimum path-switch cover of `[t1, t2]`.
///
/// At the current handover instant every path interval that has started and
/// finishes strictly later is admissible; the one finishing last wins. Ties
/// keep the path already in use, then the lexicographically smallest path.
/// Using the same path again after an outage counts as a new switch.
pub fn min_switch_route(paths: &[PathLifetime], t1: f64, t2: f64) -> Result<RoutePlan> {
    if !(t1.is_finite() && t2.is_finite()) || t1 > t2 {
        return Err(Error::invalid("route window", "need finite t1 <= t2"));
    }

    if t1 == t2 {
        let best = paths
            .iter()
            .filter(|p| p.live.contains(t1))
            .min_by(|a, b| a.nodes.cmp(&b.nodes))
            .ok_or(Error::CoverageGap(t1))?;
        return Ok(RoutePlan {
            legs: vec![RouteLeg {
                path: best.clone(),
                use_interval: TimeInterval { start: t1, end: t2 },
            }],
            switch_count: 0,
        });
    }

    let mut legs: Vec<RouteLeg> = Vec::new();
    let mut current: Option<usize> = None;
    let mut t_start = t1;
    while t_start < t2 {
        let mut best: Option<(usize, f64)> = None;
        for (idx, p) in paths.iter().enumerate() {
            let Some(finish) = p
                .live
                .iter()
                .filter(|iv| iv.start <= t_start && iv.end > t_start)
                .map(|iv| iv.end)
                .next()
            else {
                continue;
            };
            let better = match best {
                None => true,
                Some((b, bf)) => {
                    finish > bf
                        || (finish == bf
                            && current != Some(b)
                            && (current == Some(idx) || p.nodes < paths[b].nodes))
                }
            };
            if better {
                best = Some((idx, finish));
            }
        }
        let (idx, finish) = best.ok_or(Error::CoverageGap(t_start))?;
        let end = finish.min(t2);
        match legs.last_mut() {
            Some(last) if current == Some(idx) => last.use_interval.end = end,
            _ => legs.push(RouteLeg {
                path: paths[idx].clone(),
                use_interval: TimeInterval { start: t_start, end },
            }),
        }
        current = Some(idx);
        t_start = finish;
    }

    let switch_count = legs.len() - 1;
    Ok(RoutePlan { legs, switch_count })
}

/// Route between platform ids `s` and `d` over `[t1, t2]` using paths of at
/// most `k` hops, with link lifetimes computed over the scenario window.
pub fn route(scenario: &Scenario, s: &str, d: &str, k: usize, t1: f64, t2: f64) -> Result<RoutePlan> {
    let (si, di) = (scenario.index_of(s)?, scenario.index_of(d)?);
    if t1 < scenario.window.start || t2 > scenario.window.end {
        return Err(Error::invalid("route window", "must lie inside the scenario window"));
    }
    let timelines = link_timelines(scenario);
    let paths = enumerate_paths(&timelines, si, di, k)?;
    min_switch_route(&paths, t1, t2)
}
