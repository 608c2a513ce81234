//! Platforms on horizontal circular orbits and their pairwise distances.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::TimeInterval;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        self.distance_squared(other).sqrt()
    }

    pub fn distance_squared(&self, other: &Point3) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        dx * dx + dy * dy + dz * dz
    }
}

/// One platform flying a horizontal circle.
///
/// The angular position about the orbit center at time `t` is
/// `initial_phase + angular_velocity * t`; the sign of the angular velocity
/// gives the direction of travel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlatformSpec {
    pub id: String,
    pub center_x: f64,
    pub center_y: f64,
    pub altitude: f64,
    pub orbit_radius: f64,
    pub angular_velocity: f64,
    pub initial_phase: f64,
}

impl PlatformSpec {
    /// Validates the parameters and normalizes the phase into `[0, 2π)`.
    pub fn new(
        id: impl Into<String>,
        center: (f64, f64),
        altitude: f64,
        orbit_radius: f64,
        angular_velocity: f64,
        initial_phase: f64,
    ) -> Result<Self> {
        let spec = Self {
            id: id.into(),
            center_x: center.0,
            center_y: center.1,
            altitude,
            orbit_radius,
            angular_velocity,
            initial_phase: normalize_angle(initial_phase),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a platform whose orbit center is given in polar form
    /// `(radius, angle)` about the origin.
    pub fn with_polar_center(
        id: impl Into<String>,
        center_radius: f64,
        center_angle: f64,
        altitude: f64,
        orbit_radius: f64,
        angular_velocity: f64,
        initial_phase: f64,
    ) -> Result<Self> {
        let center = (
            center_radius * center_angle.cos(),
            center_radius * center_angle.sin(),
        );
        Self::new(
            id,
            center,
            altitude,
            orbit_radius,
            angular_velocity,
            initial_phase,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::invalid("id", "must not be empty"));
        }
        for (name, v) in [
            ("center_x", self.center_x),
            ("center_y", self.center_y),
            ("altitude", self.altitude),
            ("angular_velocity", self.angular_velocity),
            ("initial_phase", self.initial_phase),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if !(self.orbit_radius.is_finite() && self.orbit_radius > 0.0) {
            return Err(Error::invalid("orbit_radius", "must be > 0"));
        }
        Ok(())
    }

    /// Linear speed along the orbit, m/s.
    pub fn speed(&self) -> f64 {
        self.angular_velocity.abs() * self.orbit_radius
    }

    pub fn angle_at(&self, t: f64) -> f64 {
        self.initial_phase + self.angular_velocity * t
    }

    pub fn with_angular_velocity(&self, omega: f64) -> Self {
        Self {
            angular_velocity: omega,
            ..self.clone()
        }
    }
}

pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

pub fn position_at(p: &PlatformSpec, t: f64) -> Point3 {
    let theta = p.angle_at(t);
    Point3 {
        x: p.center_x + p.orbit_radius * theta.cos(),
        y: p.center_y + p.orbit_radius * theta.sin(),
        z: p.altitude,
    }
}

pub fn velocity_at(p: &PlatformSpec, t: f64) -> Point3 {
    let theta = p.angle_at(t);
    let k = p.orbit_radius * p.angular_velocity;
    Point3 {
        x: -k * theta.sin(),
        y: k * theta.cos(),
        z: 0.0,
    }
}

pub fn pair_distance(p: &PlatformSpec, q: &PlatformSpec, t: f64) -> f64 {
    position_at(p, t).distance(&position_at(q, t))
}

/// Squared distance and its time derivative `2 (P − Q)·(P' − Q')`.
pub(crate) fn squared_distance_with_rate(p: &PlatformSpec, q: &PlatformSpec, t: f64) -> (f64, f64) {
    let (a, b) = (position_at(p, t), position_at(q, t));
    let (va, vb) = (velocity_at(p, t), velocity_at(q, t));
    let d = (a.x - b.x, a.y - b.y, a.z - b.z);
    let dv = (va.x - vb.x, va.y - vb.y);
    (
        d.0 * d.0 + d.1 * d.1 + d.2 * d.2,
        2.0 * (d.0 * dv.0 + d.1 * dv.1),
    )
}

/// Minimum and maximum of [`pair_distance`] over `window`.
pub fn pair_distance_extrema(p: &PlatformSpec, q: &PlatformSpec, window: &TimeInterval) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for t in crate::timeline::critical_times(p, q, window) {
        let s = pair_distance(p, q, t);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    (lo, hi)
}

/// A set of platforms, a mission window and a communication threshold.
///
/// `pair_thresholds` optionally overrides the threshold for individual
/// platform pairs, keyed by platform index with the smaller index first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub platforms: Vec<PlatformSpec>,
    pub window: TimeInterval,
    pub comm_threshold: f64,
    #[serde(default)]
    pub pair_thresholds: BTreeMap<(usize, usize), f64>,
}

impl Scenario {
    pub fn new(platforms: Vec<PlatformSpec>, window: TimeInterval, comm_threshold: f64) -> Result<Self> {
        let s = Self {
            platforms,
            window,
            comm_threshold,
            pair_thresholds: BTreeMap::new(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, p) in self.platforms.iter().enumerate() {
            p.validate().map_err(|e| match e {
                Error::Invalid { field, reason } => Error::Invalid {
                    field: format!("platforms[{i}].{field}"),
                    reason,
                },
                other => other,
            })?;
            if !seen.insert(p.id.as_str()) {
                return Err(Error::invalid(
                    format!("platforms[{i}].id"),
                    format!("duplicate id `{}`", p.id),
                ));
            }
        }
        if self.window.start > self.window.end {
            return Err(Error::invalid("window", "start is after end"));
        }
        if !(self.comm_threshold.is_finite() && self.comm_threshold > 0.0) {
            return Err(Error::invalid("comm_threshold", "must be > 0"));
        }
        for (&(i, j), &d) in &self.pair_thresholds {
            if i >= j || j >= self.platforms.len() {
                return Err(Error::invalid(
                    "pair_thresholds",
                    format!("bad pair ({i}, {j})"),
                ));
            }
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::invalid("pair_thresholds", "threshold must be > 0"));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.platforms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.platforms.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.platforms
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| Error::UnknownPlatform(id.to_string()))
    }

    /// Threshold for the pair `(i, j)` in either order.
    pub fn threshold_for(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pair_thresholds
            .get(&key)
            .copied()
            .unwrap_or(self.comm_threshold)
    }

    /// Same scenario with a single uniform threshold and no per-pair overrides.
    pub fn with_threshold(&self, d: f64) -> Self {
        Self {
            comm_threshold: d,
            pair_thresholds: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn with_uniform_angular_velocity(&self, omega: f64) -> Self {
        Self {
            platforms: self
                .platforms
                .iter()
                .map(|p| p.with_angular_velocity(omega))
                .collect(),
            ..self.clone()
        }
    }

    /// All unordered index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.platforms.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn unit(id: &str, center: (f64, f64), r: f64, omega: f64, phase: f64) -> PlatformSpec {
        PlatformSpec::new(id, center, 0.0, r, omega, phase).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn position_quarter_turn() {
        let p = unit("a", (0.0, 0.0), 1.0, FRAC_PI_2, 0.0);
        let p0 = position_at(&p, 0.0);
        assert_eq!((p0.x, p0.y, p0.z), (1.0, 0.0, 0.0));
        let p1 = position_at(&p, 1.0);
        assert!(close(p1.x, 0.0, 1e-15) && close(p1.y, 1.0, 1e-15));
    }

    #[test]
    fn polar_center_conversion() {
        let p = PlatformSpec::with_polar_center("a", 15.0, FRAC_PI_3, 0.0, 1.0, 1.0, 0.0).unwrap();
        let pos = position_at(&p, 0.0);
        assert!(close(pos.x, 8.5, 1e-12));
        assert!(close(pos.y, 15.0 * (3.0f64).sqrt() / 2.0, 1e-12));
        assert!(close(pos.y, 12.990_381_056_766_58, 1e-12));
    }

    #[test]
    fn phase_is_normalized() {
        let p = unit("a", (0.0, 0.0), 1.0, 1.0, -FRAC_PI_2);
        assert!(close(p.initial_phase, 3.0 * FRAC_PI_2, 1e-15));
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert!(normalize_angle(7.0 * PI) < TAU);
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(PlatformSpec::new("a", (0.0, 0.0), 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(PlatformSpec::new("a", (0.0, 0.0), 0.0, -1.0, 1.0, 0.0).is_err());
        assert!(PlatformSpec::new("a", (0.0, 0.0), 0.0, 1.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn coincident_and_antipodal_distances() {
        let p = unit("a", (3.0, 4.0), 2.0, 0.7, 0.3);
        let antipode = unit("b", (3.0, 4.0), 2.0, 0.7, 0.3 + PI);
        for k in 0..50 {
            let t = k as f64 * 0.37;
            assert_eq!(pair_distance(&p, &p, t), 0.0);
            assert!(close(pair_distance(&p, &antipode, t), 4.0, 1e-12));
        }
    }

    #[test]
    fn offset_centers_closed_form() {
        let p = unit("a", (0.0, 0.0), 2.0, 1.0, 0.0);
        let q = unit("b", (10.0, 0.0), 2.0, 1.0, PI);
        for k in 0..100 {
            let t = k as f64 * 0.1;
            let expected = (116.0 - 80.0 * t.cos()).sqrt();
            assert!(close(pair_distance(&p, &q, t), expected, 1e-12));
        }
        assert!(close(pair_distance(&p, &q, 0.0), 6.0, 1e-12));
        assert!(close(pair_distance(&p, &q, PI), 14.0, 1e-12));
    }

    #[test]
    fn altitude_enters_distance() {
        let p = PlatformSpec::new("a", (0.0, 0.0), 0.0, 1.0, 0.0, 0.0).unwrap();
        let q = PlatformSpec::new("b", (0.0, 0.0), 5.0, 1.0, 0.0, 0.0).unwrap();
        assert!(close(pair_distance(&p, &q, 3.0), 5.0, 1e-12));
    }

    #[test]
    fn extrema_over_period() {
        let window = TimeInterval::new(0.0, TAU).unwrap();
        let p = unit("a", (0.0, 0.0), 2.0, 1.0, 0.0);
        let q = unit("b", (10.0, 0.0), 2.0, 1.0, PI);
        let (lo, hi) = pair_distance_extrema(&p, &q, &window);
        assert!(close(lo, 6.0, 1e-9), "{lo}");
        assert!(close(hi, 14.0, 1e-9), "{hi}");

        let r = unit("c", (0.0, 0.0), 2.0, 1.0, PI);
        let (lo, hi) = pair_distance_extrema(&p, &r, &window);
        assert!(close(lo, 4.0, 1e-12) && close(hi, 4.0, 1e-12));

        let (lo, hi) = pair_distance_extrema(&p, &p, &window);
        assert_eq!((lo, hi), (0.0, 0.0));
    }

    #[test]
    fn extrema_with_different_speeds_match_dense_scan() {
        let window = TimeInterval::new(0.0, 40.0).unwrap();
        let p = PlatformSpec::new("a", (0.0, 0.0), 1.0, 3.0, 0.31, 0.2).unwrap();
        let q = PlatformSpec::new("b", (7.0, -2.0), 4.0, 5.0, -0.17, 2.0).unwrap();
        let (lo, hi) = pair_distance_extrema(&p, &q, &window);
        let (mut dlo, mut dhi) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in 0..=400_000 {
            let s = pair_distance(&p, &q, 40.0 * k as f64 / 400_000.0);
            dlo = dlo.min(s);
            dhi = dhi.max(s);
        }
        // the scan can only under-reach the true extrema
        assert!(lo <= dlo + 1e-12 && dlo - lo < 1e-6, "{lo} vs {dlo}");
        assert!(hi >= dhi - 1e-12 && hi - dhi < 1e-6, "{hi} vs {dhi}");
    }

    #[test]
    fn scenario_rejects_duplicates_and_bad_threshold() {
        let w = TimeInterval::new(0.0, 1.0).unwrap();
        let a = unit("a", (0.0, 0.0), 1.0, 1.0, 0.0);
        assert!(matches!(
            Scenario::new(vec![a.clone(), a.clone()], w, 1.0),
            Err(Error::Invalid { field, .. }) if field == "platforms[1].id"
        ));
        assert!(Scenario::new(vec![a], w, 0.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_platform(id: &'static str) -> impl Strategy<Value = PlatformSpec> {
            (
                -100.0f64..100.0,
                -100.0f64..100.0,
                0.0f64..20.0,
                0.5f64..30.0,
                -1.0f64..1.0,
                0.0f64..TAU,
            )
                .prop_map(move |(x, y, z, r, w, b)| PlatformSpec::new(id, (x, y), z, r, w, b).unwrap())
        }

        proptest! {
            #[test]
            fn translation_invariance(p in arb_platform("a"), q in arb_platform("b"),
                                      dx in -500.0f64..500.0, dy in -500.0f64..500.0,
                                      t in 0.0f64..1000.0) {
                let shift = |s: &PlatformSpec| PlatformSpec {
                    center_x: s.center_x + dx,
                    center_y: s.center_y + dy,
                    ..s.clone()
                };
                let a = pair_distance(&p, &q, t);
                let b = pair_distance(&shift(&p), &shift(&q), t);
                prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
            }

            #[test]
            fn symmetric(p in arb_platform("a"), q in arb_platform("b"), t in 0.0f64..1000.0) {
                prop_assert_eq!(pair_distance(&p, &q, t), pair_distance(&q, &p, t));
            }

            #[test]
            fn common_phase_shift_is_time_shift(p in arb_platform("a"), q in arb_platform("b"),
                                                omega in 0.05f64..1.0, shift in 0.0f64..TAU,
                                                t in 0.0f64..100.0) {
                let p = p.with_angular_velocity(omega);
                let q = q.with_angular_velocity(omega);
                let rotate = |s: &PlatformSpec| PlatformSpec {
                    initial_phase: s.initial_phase + shift,
                    ..s.clone()
                };
                let a = pair_distance(&rotate(&p), &rotate(&q), t);
                let b = pair_distance(&p, &q, t + shift / omega);
                prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0));
            }

            #[test]
            fn periodic_for_shared_rate(p in arb_platform("a"), q in arb_platform("b"),
                                        omega in 0.05f64..1.0, t in 0.0f64..100.0) {
                let p = PlatformSpec { angular_velocity: omega, ..p };
                let q = PlatformSpec { angular_velocity: omega, orbit_radius: p.orbit_radius, ..q };
                let a = pair_distance(&p, &q, t);
                let b = pair_distance(&p, &q, t + TAU / omega);
                prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
            }
        }
    }
}
