//! Closed time intervals and normalized sets of them.
//!
//! An [`IntervalSet`] is always sorted, pairwise disjoint, and separated by
//! gaps wider than the tolerance it was normalized with. Link lifetimes, path
//! lifetimes and route legs are all expressed in these terms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed interval `[start, end]` in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeInterval {
    pub start: f64,
    pub end: f64,
}

impl TimeInterval {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::invalid("interval", "endpoints must be finite"));
        }
        if start > end {
            return Err(Error::invalid(
                "interval",
                format!("start {start} is after end {end}"),
            ));
        }
        Ok(Self { start, end })
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_degenerate(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, t: f64) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    pub fn intersect(&self, other: &TimeInterval) -> Option<TimeInterval> {
        let start = self.start.max(other.start);
        let end = self.end.min(other.end);
        (start <= end).then_some(TimeInterval { start, end })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<TimeInterval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(interval: TimeInterval) -> Self {
        Self {
            intervals: vec![interval],
        }
    }

    /// Builds a set from arbitrary intervals: sorts, merges overlaps and gaps
    /// no wider than `eps`, then drops pieces shorter than `eps`.
    pub fn normalized<I>(intervals: I, eps: f64) -> Self
    where
        I: IntoIterator<Item = TimeInterval>,
    {
        let mut raw: Vec<TimeInterval> = intervals.into_iter().collect();
        raw.sort_by(|a, b| a.start.total_cmp(&b.start).then(a.end.total_cmp(&b.end)));

        let mut merged: Vec<TimeInterval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match merged.last_mut() {
                Some(last) if iv.start - last.end <= eps => {
                    last.end = last.end.max(iv.end);
                }
                _ => merged.push(iv),
            }
        }
        merged.retain(|iv| iv.len() >= eps);
        Self { intervals: merged }
    }

    pub fn intervals(&self) -> &[TimeInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TimeInterval> {
        self.intervals.iter()
    }

    /// Total length covered.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(TimeInterval::len).sum()
    }

    pub fn contains(&self, t: f64) -> bool {
        // first interval whose end is >= t
        let idx = self.intervals.partition_point(|iv| iv.end < t);
        self.intervals
            .get(idx)
            .is_some_and(|iv| iv.start <= t)
    }

    /// The interval containing `t`, if any.
    pub fn interval_at(&self, t: f64) -> Option<TimeInterval> {
        let idx = self.intervals.partition_point(|iv| iv.end < t);
        self.intervals
            .get(idx)
            .copied()
            .filter(|iv| iv.start <= t)
    }

    /// Point-set intersection. Pieces shorter than `eps` are dropped.
    pub fn intersection(&self, other: &IntervalSet, eps: f64) -> IntervalSet {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                if iv.len() >= eps {
                    out.push(iv);
                }
            }
            if a[i].end < b[j].end {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn union(&self, other: &IntervalSet, eps: f64) -> IntervalSet {
        IntervalSet::normalized(
            self.intervals.iter().chain(other.intervals.iter()).copied(),
            eps,
        )
    }

    pub fn clip(&self, window: &TimeInterval) -> IntervalSet {
        IntervalSet {
            intervals: self
                .intervals
                .iter()
                .filter_map(|iv| iv.intersect(window))
                .collect(),
        }
    }

    /// True when every interval of `self` lies inside some interval of `other`,
    /// allowing each endpoint to stick out by at most `slack`.
    pub fn is_subset_of(&self, other: &IntervalSet, slack: f64) -> bool {
        self.intervals.iter().all(|iv| {
            other
                .intervals
                .iter()
                .any(|o| o.start - slack <= iv.start && iv.end <= o.end + slack)
        })
    }

    /// True when the set covers all of `window` with no gap.
    pub fn covers(&self, window: &TimeInterval) -> bool {
        self.interval_at(window.start)
            .is_some_and(|iv| iv.end >= window.end)
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a TimeInterval;
    type IntoIter = std::slice::Iter<'a, TimeInterval>;

    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}
