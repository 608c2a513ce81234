//! Corridor coverage with platforms circling on the corridor's top surface.
//!
//! `n` platforms evenly spaced on an orbit of radius `r_o`, each covering a
//! sphere of radius `r_s`, keep a cylinder of radius `2 r_o cos(π/n)` and
//! half-height `sqrt(r_s² − r_o²)` covered at every phase. Orbits are tiled
//! over the top face so that these cylinders cover the corridor.

use std::f64::consts::{PI, SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{solve_min_range, RangeSolution};
use crate::error::{Error, Result};
use crate::interval::TimeInterval;
use crate::kinematics::{PlatformSpec, Point3, Scenario};

pub const DEFAULT_N_MAX: usize = 100;
pub const MIN_PLATFORMS_PER_ORBIT: usize = 3;

/// Relative slack applied before taking tile-count ceilings so that exact
/// multiples are not pushed up by rounding.
const CEIL_SLACK: f64 = 1e-12;
/// Relative slack on the coverage test `distance <= r_s`.
const COVER_SLACK: f64 = 1e-12;
const MC_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corridor {
    pub length: f64,
    pub width: f64,
    pub height: f64,
}

impl Corridor {
    pub fn new(length: f64, width: f64, height: f64) -> Result<Self> {
        for (name, v) in [("length", length), ("width", width), ("height", height)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("corridor.{name}"), "must be > 0"));
            }
        }
        Ok(Self {
            length,
            width,
            height,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Strategy {
    /// Inscribed square tiles.
    Square,
    /// Inscribed rectangles with the corridor's aspect ratio.
    AspectRectangle,
}

impl Strategy {
    pub fn number(self) -> u8 {
        match self {
            Strategy::Square => 1,
            Strategy::AspectRectangle => 2,
        }
    }
}

impl From<Strategy> for u8 {
    fn from(s: Strategy) -> u8 {
        s.number()
    }
}

impl TryFrom<u8> for Strategy {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Strategy::Square),
            2 => Ok(Strategy::AspectRectangle),
            _ => Err(Error::invalid("strategy", format!("expected 1 or 2, got {v}"))),
        }
    }
}

/// Lens formed by two neighbouring coverage spheres on one orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeafGeometry {
    pub half_length: f64,
    pub width: f64,
    /// Distance from the orbit center to the far tip of the leaf.
    pub center_offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderSpec {
    pub radius: f64,
    pub half_height: f64,
    pub volume: f64,
}

fn check_orbit_inputs(r_s: f64, r_o: f64, n: usize) -> Result<()> {
    if !(r_s.is_finite() && r_s > 0.0) {
        return Err(Error::invalid("r_s", "must be > 0"));
    }
    if !(r_o.is_finite() && r_o > 0.0) {
        return Err(Error::invalid("r_o", "must be > 0"));
    }
    if n < MIN_PLATFORMS_PER_ORBIT {
        return Err(Error::invalid("n", "need at least 3 platforms per orbit"));
    }
    if r_o > r_s {
        return Err(Error::NoInvariantCylinder { r_o, r_s });
    }
    Ok(())
}

pub fn leaf_for(r_s: f64, r_o: f64, n: usize) -> Result<LeafGeometry> {
    check_orbit_inputs(r_s, r_o, n)?;
    let half_angle = PI / n as f64;
    let width = r_s - r_o * half_angle.sin();
    let half_length = (width * (2.0 * r_s - width)).sqrt();
    let center_offset = half_length - (r_s - width) / half_angle.tan();
    Ok(LeafGeometry {
        half_length,
        width,
        center_offset,
    })
}

/// The invariant coverage cylinder of one orbit. `r_o == r_s` is allowed and
/// gives a cylinder of zero height.
pub fn cylinder_for(r_s: f64, r_o: f64, n: usize) -> Result<CylinderSpec> {
    check_orbit_inputs(r_s, r_o, n)?;
    let radius = 2.0 * r_o * (PI / n as f64).cos();
    let half_height = (r_s * r_s - r_o * r_o).max(0.0).sqrt();
    Ok(CylinderSpec {
        radius,
        half_height,
        volume: PI * radius * radius * half_height,
    })
}

/// `n / cos²(π/n)`, the per-orbit factor shared by both placement objectives.
pub fn orbit_cost_factor(n: usize) -> f64 {
    let c = (PI / n as f64).cos();
    n as f64 / (c * c)
}

fn ceil_count(x: f64) -> usize {
    (x * (1.0 - CEIL_SLACK)).ceil().max(1.0) as usize
}

/// Tile size and grid dimensions for a cylinder radius under a strategy.
fn tiling(corridor: &Corridor, cylinder_radius: f64, strategy: Strategy) -> (f64, f64, usize, usize) {
    match strategy {
        Strategy::Square => {
            let side = SQRT_2 * cylinder_radius;
            (
                side,
                side,
                ceil_count(corridor.length / side),
                ceil_count(corridor.width / side),
            )
        }
        Strategy::AspectRectangle => {
            let diag = corridor.length.hypot(corridor.width);
            let a = 2.0 * cylinder_radius * corridor.length / diag;
            let b = 2.0 * cylinder_radius * corridor.width / diag;
            let q = ceil_count(diag / (2.0 * cylinder_radius));
            (a, b, q, q)
        }
    }
}

pub fn orbit_count(corridor: &Corridor, cylinder_radius: f64, strategy: Strategy) -> usize {
    let (_, _, cols, rows) = tiling(corridor, cylinder_radius, strategy);
    cols * rows
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveragePlan {
    pub n: usize,
    pub orbit_radius: f64,
    pub cylinder: CylinderSpec,
    pub m: usize,
    pub strategy: Strategy,
    pub total: usize,
    /// Orbit centers on the top face, in corridor coordinates.
    pub centers: Vec<(f64, f64)>,
    /// Common altitude of all orbits (the corridor's top face).
    pub altitude: f64,
    pub tile: (f64, f64),
    pub grid: (usize, usize),
    /// Phase of platform 0 on each orbit; the rest follow at `2π/n` spacing.
    pub phase_offsets: Vec<f64>,
}

impl CoveragePlan {
    pub fn platform_phase(&self, orbit: usize, k: usize) -> f64 {
        self.phase_offsets[orbit] + TAU * k as f64 / self.n as f64
    }

    /// Platform positions when every orbit has rotated by `phase`.
    pub fn positions(&self, phase: f64) -> impl Iterator<Item = Point3> + '_ {
        self.centers.iter().enumerate().flat_map(move |(j, &(cx, cy))| {
            (0..self.n).map(move |k| {
                let a = self.platform_phase(j, k) + phase;
                Point3::new(
                    cx + self.orbit_radius * a.cos(),
                    cy + self.orbit_radius * a.sin(),
                    self.altitude,
                )
            })
        })
    }

    /// Copy of the plan with orbit `idx` removed.
    pub fn without_orbit(&self, idx: usize) -> Self {
        let mut p = self.clone();
        p.centers.remove(idx);
        p.phase_offsets.remove(idx);
        p.m = p.centers.len();
        p.total = p.m * p.n;
        p
    }

    pub fn with_phase_offsets(mut self, offsets: Vec<f64>) -> Result<Self> {
        if offsets.len() != self.centers.len() {
            return Err(Error::invalid("phase_offsets", "need one offset per orbit"));
        }
        self.phase_offsets = offsets;
        Ok(self)
    }

    /// Scenario with every platform of the plan moving at `omega`.
    pub fn to_scenario(&self, omega: f64, window: TimeInterval, comm_threshold: f64) -> Result<Scenario> {
        let mut platforms = Vec::with_capacity(self.total);
        for (j, &center) in self.centers.iter().enumerate() {
            for k in 0..self.n {
                platforms.push(PlatformSpec::new(
                    format!("o{j}p{k}"),
                    center,
                    self.altitude,
                    self.orbit_radius,
                    omega,
                    self.platform_phase(j, k),
                )?);
            }
        }
        Scenario::new(platforms, window, comm_threshold)
    }
}

/// Cheapest orbit layout covering the corridor at all times.
///
/// The orbit radius is pinned at its largest feasible value
/// `sqrt(r_s² − H²)`, which maximizes every cylinder radius; `n` is then
/// enumerated over `3..=n_max` and the plan minimizing `m·n` is returned,
/// ties going to the smaller `n`.
pub fn plan_coverage(corridor: &Corridor, r_s: f64, strategy: Strategy, n_max: usize) -> Result<CoveragePlan> {
    if !(r_s.is_finite() && r_s > 0.0) {
        return Err(Error::invalid("r_s", "must be > 0"));
    }
    if r_s <= corridor.height {
        return Err(Error::CoverageInfeasible {
            r_s,
            height: corridor.height,
        });
    }
    if n_max < MIN_PLATFORMS_PER_ORBIT {
        return Err(Error::invalid("n_max", "must be >= 3"));
    }
    let r_o = (r_s * r_s - corridor.height * corridor.height).sqrt();

    let mut best: Option<(usize, usize, CylinderSpec)> = None;
    for n in MIN_PLATFORMS_PER_ORBIT..=n_max {
        let cyl = cylinder_for(r_s, r_o, n)?;
        let m = orbit_count(corridor, cyl.radius, strategy);
        if best.is_none_or(|(bn, bm, _)| m * n < bm * bn) {
            best = Some((n, m, cyl));
        }
    }
    let (n, m, cylinder) = best.expect("n range is non-empty");

    let (a, b, cols, rows) = tiling(corridor, cylinder.radius, strategy);
    let centers: Vec<(f64, f64)> = (0..rows)
        .flat_map(|j| (0..cols).map(move |i| ((i as f64 + 0.5) * a, (j as f64 + 0.5) * b)))
        .collect();
    debug_assert_eq!(centers.len(), m);
    Ok(CoveragePlan {
        n,
        orbit_radius: r_o,
        cylinder,
        m,
        strategy,
        total: m * n,
        phase_offsets: vec![0.0; centers.len()],
        centers,
        altitude: corridor.height,
        tile: (a, b),
        grid: (cols, rows),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageWitness {
    pub point: Point3,
    pub phase: f64,
    pub min_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub samples: usize,
    pub covered: usize,
    pub fraction: f64,
    /// Sample farthest from its nearest platform.
    pub worst: Option<CoverageWitness>,
}

fn nearest_platform_distance(plan: &CoveragePlan, p: &Point3, phase: f64) -> f64 {
    let dz = plan.altitude - p.z;
    let mut best = f64::INFINITY;
    for (j, &(cx, cy)) in plan.centers.iter().enumerate() {
        let rho = (p.x - cx).hypot(p.y - cy);
        // no platform of this orbit can beat the current best
        let floor = (rho - plan.orbit_radius).abs().hypot(dz);
        if floor >= best {
            continue;
        }
        for k in 0..plan.n {
            let a = plan.platform_phase(j, k) + phase;
            let dx = p.x - (cx + plan.orbit_radius * a.cos());
            let dy = p.y - (cy + plan.orbit_radius * a.sin());
            best = best.min((dx * dx + dy * dy + dz * dz).sqrt());
        }
    }
    best
}

/// Monte-Carlo check that the corridor is covered at all phases.
///
/// Draws `point_samples` uniform points in the corridor and, for each,
/// `phase_samples` uniform common rotation phases in `[0, 2π)`. A sample is
/// covered when some platform lies within `r_s`. Chunks of samples use
/// independent streams of a seeded ChaCha generator, so the result depends
/// only on the inputs and `seed`.
pub fn verify_coverage(
    plan: &CoveragePlan,
    corridor: &Corridor,
    r_s: f64,
    phase_samples: usize,
    point_samples: usize,
    seed: u64,
) -> CoverageReport {
    let limit = r_s * (1.0 + COVER_SLACK);
    let chunks = point_samples.div_ceil(MC_CHUNK);
    let per_chunk: Vec<(usize, usize, Option<CoverageWitness>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = MC_CHUNK.min(point_samples - c * MC_CHUNK);
            let mut covered = 0;
            let mut total = 0;
            let mut worst: Option<CoverageWitness> = None;
            for _ in 0..count {
                let point = Point3::new(
                    rng.random::<f64>() * corridor.length,
                    rng.random::<f64>() * corridor.width,
                    rng.random::<f64>() * corridor.height,
                );
                for _ in 0..phase_samples {
                    let phase = rng.random::<f64>() * TAU;
                    let d = nearest_platform_distance(plan, &point, phase);
                    total += 1;
                    if d <= limit {
                        covered += 1;
                    }
                    if worst.is_none_or(|w| d > w.min_distance) {
                        worst = Some(CoverageWitness {
                            point,
                            phase,
                            min_distance: d,
                        });
                    }
                }
            }
            (total, covered, worst)
        })
        .collect();

    let mut samples = 0;
    let mut covered = 0;
    let mut worst: Option<CoverageWitness> = None;
    for (t, c, w) in per_chunk {
        samples += t;
        covered += c;
        if let Some(w) = w {
            if worst.is_none_or(|b| w.min_distance > b.min_distance) {
                worst = Some(w);
            }
        }
    }
    CoverageReport {
        samples,
        covered,
        fraction: if samples == 0 {
            1.0
        } else {
            covered as f64 / samples as f64
        },
        worst,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectedCoverageConfig {
    /// Angular velocity shared by every platform, rad/s. Must be non-zero.
    pub angular_velocity: f64,
    pub n_max: usize,
    pub range_tolerance: f64,
    /// Per-orbit phase offsets; `None` aligns all orbits at phase 0.
    pub phase_offsets: Option<Vec<f64>>,
}

impl Default for ConnectedCoverageConfig {
    fn default() -> Self {
        Self {
            angular_velocity: 0.1,
            n_max: DEFAULT_N_MAX,
            range_tolerance: crate::connectivity::DEFAULT_RANGE_TOLERANCE,
            phase_offsets: None,
        }
    }
}

/// Coverage plan first, then the smallest range keeping its platforms
/// connected over one common orbital period.
pub fn plan_connected_coverage(
    corridor: &Corridor,
    r_s: f64,
    strategy: Strategy,
    t_max: f64,
    config: &ConnectedCoverageConfig,
) -> Result<(CoveragePlan, RangeSolution)> {
    let omega = config.angular_velocity;
    if !(omega.is_finite() && omega != 0.0) {
        return Err(Error::invalid("angular_velocity", "must be finite and non-zero"));
    }
    let mut plan = plan_coverage(corridor, r_s, strategy, config.n_max)?;
    if let Some(offsets) = &config.phase_offsets {
        plan = plan.with_phase_offsets(offsets.clone())?;
    }
    let window = TimeInterval::new(0.0, TAU / omega.abs())?;
    let scenario = plan.to_scenario(omega, window, t_max)?;
    let range = solve_min_range(&scenario, t_max, config.range_tolerance)?;
    Ok((plan, range))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_reference_values() {
        let c = cylinder_for(10.0, 6.0, 5).unwrap();
        assert!((c.radius - 12.0 * (PI / 5.0).cos()).abs() < 1e-12);
        assert!((c.radius - 9.708_203_932_499_369).abs() < 1e-12);
        assert!((c.half_height - 8.0).abs() < 1e-12);
        assert!((c.volume - PI * c.radius * c.radius * 8.0).abs() < 1e-9);
    }

    #[test]
    fn cylinder_boundary_and_errors() {
        let c = cylinder_for(7.0, 7.0, 5).unwrap();
        assert_eq!(c.half_height, 0.0);
        assert!(matches!(cylinder_for(5.0, 6.0, 5), Err(Error::NoInvariantCylinder { .. })));
        assert!(cylinder_for(5.0, 4.0, 2).is_err());
        assert!(cylinder_for(5.0, 0.0, 4).is_err());
    }

    #[test]
    fn cylinder_radius_limit_for_many_platforms() {
        let c = cylinder_for(10.0, 4.0, 1_000_000).unwrap();
        assert!((c.radius - 8.0).abs() < 1e-9);
    }

    #[test]
    fn leaf_chain_reproduces_cylinder() {
        let (r_s, r_o, n) = (10.0, 6.0, 5);
        let leaf = leaf_for(r_s, r_o, n).unwrap();
        let cyl = cylinder_for(r_s, r_o, n).unwrap();
        let t = (PI / n as f64).tan();
        assert!((leaf.width - (r_s - r_o * (PI / 5.0).sin())).abs() < 1e-12);
        assert!((r_s - leaf.width - (leaf.half_length - leaf.center_offset) * t).abs() < 1e-12);
        assert!((2.0 * (leaf.half_length - leaf.center_offset) - cyl.radius).abs() < 1e-12);
        let hc = (leaf.center_offset * (2.0 * leaf.half_length - leaf.center_offset)).sqrt();
        assert!((hc - cyl.half_height).abs() < 1e-12);
    }

    #[test]
    fn cost_factor_minimum_at_five() {
        let best = (3..=100)
            .min_by(|&a, &b| orbit_cost_factor(a).total_cmp(&orbit_cost_factor(b)))
            .unwrap();
        assert_eq!(best, 5);
    }

    #[test]
    fn plan_rejects_shallow_spheres() {
        let c = Corridor::new(100.0, 100.0, 10.0).unwrap();
        assert!(matches!(
            plan_coverage(&c, 10.0, Strategy::Square, 100),
            Err(Error::CoverageInfeasible { .. })
        ));
        assert!(plan_coverage(&c, 20.0, Strategy::Square, 2).is_err());
        assert!(Corridor::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn square_corridor_strategies_agree() {
        let c = Corridor::new(100.0, 100.0, 10.0).unwrap();
        let s1 = plan_coverage(&c, 20.0, Strategy::Square, 100).unwrap();
        let s2 = plan_coverage(&c, 20.0, Strategy::AspectRectangle, 100).unwrap();
        assert_eq!(s1.total, s2.total);
        assert_eq!((s1.n, s1.m), (s2.n, s2.m));
    }

    #[test]
    fn paper_scale_corridor_golden_totals() {
        // frozen from the enumerator; at this aspect ratio the rectangle tiling is cheaper
        let c = Corridor::new(100.0, 70.0, 10.0).unwrap();
        let s1 = plan_coverage(&c, 20.0, Strategy::Square, 100).unwrap();
        let s2 = plan_coverage(&c, 20.0, Strategy::AspectRectangle, 100).unwrap();
        assert!((s1.orbit_radius - 300f64.sqrt()).abs() < 1e-12);
        assert_eq!((s1.n, s1.m, s1.total), (5, 6, 30));
        assert_eq!((s2.n, s2.m, s2.total), (7, 4, 28));
    }

    #[test]
    fn even_tiles_pick_five() {
        let r_s: f64 = 20.0;
        let h = 10.0;
        let r_o = (r_s * r_s - h * h).sqrt();
        let side = SQRT_2 * 2.0 * r_o * (PI / 5.0).cos();
        for (kx, ky) in [(1, 1), (3, 2), (7, 4), (12, 12)] {
            let c = Corridor::new(kx as f64 * side, ky as f64 * side, h).unwrap();
            let plan = plan_coverage(&c, r_s, Strategy::Square, 100).unwrap();
            assert_eq!(plan.n, 5, "{kx}x{ky}");
            assert_eq!(plan.m, kx * ky);
        }
    }

    #[test]
    fn centers_anchor_at_min_corner() {
        let c = Corridor::new(100.0, 70.0, 10.0).unwrap();
        let plan = plan_coverage(&c, 20.0, Strategy::Square, 100).unwrap();
        let (a, b) = plan.tile;
        assert_eq!(plan.centers[0], (0.5 * a, 0.5 * b));
        assert_eq!(plan.centers.len(), plan.grid.0 * plan.grid.1);
        assert!(plan.grid.0 as f64 * a >= c.length);
        assert!(plan.grid.1 as f64 * b >= c.width);
    }

    #[test]
    fn coverage_of_solver_plan_and_mutant() {
        let c = Corridor::new(60.0, 45.0, 8.0).unwrap();
        let plan = plan_coverage(&c, 18.0, Strategy::Square, 100).unwrap();
        let full = verify_coverage(&plan, &c, 18.0, 1, 20_000, 1);
        assert_eq!(full.fraction, 1.0);
        let cut = verify_coverage(&plan.without_orbit(0), &c, 18.0, 1, 20_000, 1);
        assert!(cut.fraction < 1.0);
        let w = cut.worst.unwrap();
        assert!(w.min_distance > 18.0);
        assert!(w.point.x <= plan.tile.0 && w.point.y <= plan.tile.1);
    }

    #[test]
    fn point_corridor_under_center() {
        let c = Corridor::new(1e-9, 1e-9, 5.0).unwrap();
        let mut plan = plan_coverage(&c, 12.0, Strategy::Square, 20).unwrap();
        assert_eq!(plan.m, 1);
        plan.centers[0] = (0.0, 0.0);
        let r = verify_coverage(&plan, &c, 12.0, 4, 1000, 9);
        assert_eq!(r.fraction, 1.0);
        assert_eq!(r.samples, 4000);
    }

    #[test]
    fn verification_is_seed_deterministic() {
        let c = Corridor::new(60.0, 45.0, 8.0).unwrap();
        let plan = plan_coverage(&c, 18.0, Strategy::Square, 100).unwrap().without_orbit(1);
        let a = verify_coverage(&plan, &c, 18.0, 2, 10_000, 42);
        let b = verify_coverage(&plan, &c, 18.0, 2, 10_000, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn worst_cylinder_point_is_at_sphere_radius() {
        let (r_s, r_o, n) = (15.0, 9.0, 5usize);
        let cyl = cylinder_for(r_s, r_o, n).unwrap();
        // rim point midway between platforms at angles 0 and 2π/n
        let mid = PI / n as f64;
        let p = Point3::new(cyl.radius * mid.cos(), cyl.radius * mid.sin(), -cyl.half_height);
        let nearest = (0..n)
            .map(|k| {
                let a = TAU * k as f64 / n as f64;
                p.distance(&Point3::new(r_o * a.cos(), r_o * a.sin(), 0.0))
            })
            .fold(f64::INFINITY, f64::min);
        assert!((nearest - r_s).abs() < 1e-9 * r_s);
    }

    #[test]
    fn connected_coverage_single_orbit() {
        // side of the n = 4 square tile is 29.66; n = 5 gives 33.93
        let c = Corridor::new(32.0, 32.0, 6.0).unwrap();
        let cfg = ConnectedCoverageConfig {
            angular_velocity: 0.2,
            ..Default::default()
        };
        let (plan, range) = plan_connected_coverage(&c, 16.0, Strategy::Square, 100.0, &cfg).unwrap();
        assert_eq!((plan.m, plan.n), (1, 5));
        let chord = 2.0 * plan.orbit_radius * (PI / 5.0).sin();
        assert!((range.min_range - chord).abs() <= 1e-3, "{} vs {chord}", range.min_range);
    }

    #[test]
    fn connected_coverage_range_too_small() {
        let c = Corridor::new(20.0, 20.0, 6.0).unwrap();
        let r = plan_connected_coverage(&c, 16.0, Strategy::Square, 1.0, &Default::default());
        assert!(matches!(r, Err(Error::InfeasibleAtMaxRange { .. })));
        let still = ConnectedCoverageConfig {
            angular_velocity: 0.0,
            ..Default::default()
        };
        assert!(plan_connected_coverage(&c, 16.0, Strategy::Square, 100.0, &still).is_err());
    }
}
