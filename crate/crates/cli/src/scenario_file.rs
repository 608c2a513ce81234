//! Human-edited TOML scenario files.
//!
//! Angles and angular velocities are in degrees in the file and converted to
//! radians when the core [`Scenario`] is built. [`ScenarioFile`] itself keeps
//! the file's units so that load, save, load is the identity.

use std::path::Path;

use orbitnet_core::coverage::{Corridor, Strategy};
use orbitnet_core::routing::DEFAULT_MAX_HOPS;
use orbitnet_core::{PlatformSpec, Scenario, TimeInterval};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use toml::de::{DeTable, DeValue};

use crate::error::InputError;

pub const FILE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub comm_threshold: f64,
    pub window: WindowBlock,
    #[serde(default)]
    pub platforms: Vec<PlatformEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub thresholds: Vec<ThresholdEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corridor: Option<CorridorBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub routing: Option<RoutingBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowBlock {
    pub start: f64,
    pub end: f64,
}

/// Orbit center either Cartesian (`center_x`, `center_y`) or polar
/// (`center_radius`, `center_angle_deg`), not both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlatformEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_angle_deg: Option<f64>,
    #[serde(default)]
    pub altitude: f64,
    pub orbit_radius: f64,
    pub angular_velocity_deg: f64,
    #[serde(default)]
    pub initial_phase_deg: f64,
}

/// Per-pair override of the communication threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdEntry {
    pub a: String,
    pub b: String,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorridorBlock {
    pub length: f64,
    pub width: f64,
    pub height: f64,
    pub sphere_radius: f64,
    #[serde(default = "default_strategy")]
    pub strategy: u8,
    /// Upper bound on the range for connected-coverage planning.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// Shared angular velocity for connected-coverage planning, deg/s.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angular_velocity_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
}

fn default_strategy() -> u8 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoutingBlock {
    pub source: String,
    pub destination: String,
    #[serde(default = "default_hops")]
    pub max_hops: usize,
    /// Defaults to the window start.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    /// Defaults to the window end.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<f64>,
}

fn default_hops() -> usize {
    DEFAULT_MAX_HOPS
}

/// A parsed and validated file together with its source text.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub file: ScenarioFile,
    pub scenario: Scenario,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Line of the value at `path` (e.g. `platforms[2].orbit_radius`). Falls back
/// to the deepest existing ancestor when the field itself is absent.
fn line_of_path(src: &str, path: &str) -> Option<usize> {
    let root = DeTable::parse(src).ok()?;
    let mut span = root.span();
    let mut current = DeValue::Table(root.into_inner());
    for part in path.split('.') {
        let (key, index) = match part.find('[') {
            Some(i) => (&part[..i], part[i + 1..part.len() - 1].parse::<usize>().ok()),
            None => (part, None),
        };
        let Some(v) = current.get(key) else { break };
        span = v.span();
        let mut next = v.get_ref().clone();
        if let Some(i) = index {
            let Some(item) = next.get(i) else { break };
            span = item.span();
            next = item.get_ref().clone();
        }
        current = next;
    }
    Some(line_of(src, span.start))
}

impl ScenarioFile {
    pub fn parse(src: &str) -> Result<Self, InputError> {
        toml::from_str(src).map_err(|e| InputError::Parse {
            line: e.span().map(|s| line_of(src, s.start)),
            message: e.message().to_string(),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario data serializes")
    }

    /// Validates the file and builds the core scenario. Errors name the
    /// offending field by its path in the file.
    pub fn to_scenario(&self) -> Result<Scenario, InputError> {
        if self.schema_version != FILE_SCHEMA_VERSION {
            return Err(invalid("schema_version", format!("unsupported version {}, expected 1", self.schema_version)));
        }
        positive("comm_threshold", self.comm_threshold)?;
        finite("window.start", self.window.start)?;
        finite("window.end", self.window.end)?;
        if self.window.start > self.window.end {
            return Err(invalid("window.end", "must not precede window.start"));
        }
        let window = TimeInterval::new(self.window.start, self.window.end)
            .map_err(|e| invalid("window", e.to_string()))?;

        let mut platforms = Vec::with_capacity(self.platforms.len());
        for (i, p) in self.platforms.iter().enumerate() {
            let f = |name: &str| format!("platforms[{i}].{name}");
            if p.id.trim().is_empty() {
                return Err(invalid(f("id"), "must not be empty"));
            }
            if self.platforms[..i].iter().any(|q| q.id == p.id) {
                return Err(invalid(f("id"), format!("duplicate id `{}`", p.id)));
            }
            let center = match (p.center_x, p.center_y, p.center_radius, p.center_angle_deg) {
                (Some(x), Some(y), None, None) => {
                    finite(&f("center_x"), x)?;
                    finite(&f("center_y"), y)?;
                    (x, y)
                }
                (None, None, Some(r), Some(a)) => {
                    finite(&f("center_radius"), r)?;
                    finite(&f("center_angle_deg"), a)?;
                    let a = a.to_radians();
                    (r * a.cos(), r * a.sin())
                }
                _ => {
                    return Err(invalid(
                        f("center_x"),
                        "give either center_x and center_y, or center_radius and center_angle_deg",
                    ))
                }
            };
            finite(&f("altitude"), p.altitude)?;
            positive(&f("orbit_radius"), p.orbit_radius)?;
            finite(&f("angular_velocity_deg"), p.angular_velocity_deg)?;
            finite(&f("initial_phase_deg"), p.initial_phase_deg)?;
            let spec = PlatformSpec::new(
                p.id.clone(),
                center,
                p.altitude,
                p.orbit_radius,
                p.angular_velocity_deg.to_radians(),
                p.initial_phase_deg.to_radians(),
            )
            .map_err(|e| invalid(format!("platforms[{i}]"), e.to_string()))?;
            platforms.push(spec);
        }

        let mut scenario = Scenario::new(platforms, window, self.comm_threshold)
            .map_err(|e| invalid("platforms", e.to_string()))?;
        for (k, t) in self.thresholds.iter().enumerate() {
            let f = |name: &str| format!("thresholds[{k}].{name}");
            let a = scenario.index_of(&t.a).map_err(|e| invalid(f("a"), e.to_string()))?;
            let b = scenario.index_of(&t.b).map_err(|e| invalid(f("b"), e.to_string()))?;
            if a == b {
                return Err(invalid(f("b"), "must differ from a"));
            }
            positive(&f("distance"), t.distance)?;
            scenario.pair_thresholds.insert((a.min(b), a.max(b)), t.distance);
        }

        if let Some(c) = &self.corridor {
            corridor_of(c)?;
        }
        if let Some(r) = &self.routing {
            for (name, id) in [("source", &r.source), ("destination", &r.destination)] {
                scenario
                    .index_of(id)
                    .map_err(|e| invalid(format!("routing.{name}"), e.to_string()))?;
            }
            if r.source == r.destination {
                return Err(invalid("routing.destination", "must differ from source"));
            }
            if r.max_hops == 0 {
                return Err(invalid("routing.max_hops", "must be >= 1"));
            }
            let (start, end) = r.window(&window);
            if !(start.is_finite() && end.is_finite()) || start > end {
                return Err(invalid("routing.end", "need start <= end"));
            }
            if start < window.start || end > window.end {
                return Err(invalid("routing.start", "must lie inside the scenario window"));
            }
        }
        Ok(scenario)
    }
}

impl RoutingBlock {
    pub fn window(&self, scenario_window: &TimeInterval) -> (f64, f64) {
        (
            self.start.unwrap_or(scenario_window.start),
            self.end.unwrap_or(scenario_window.end),
        )
    }
}

pub fn corridor_of(c: &CorridorBlock) -> Result<(Corridor, f64, Strategy), InputError> {
    positive("corridor.length", c.length)?;
    positive("corridor.width", c.width)?;
    positive("corridor.height", c.height)?;
    positive("corridor.sphere_radius", c.sphere_radius)?;
    let strategy = Strategy::try_from(c.strategy).map_err(|_| invalid("corridor.strategy", "must be 1 or 2"))?;
    if let Some(t) = c.t_max {
        positive("corridor.t_max", t)?;
    }
    if let Some(w) = c.angular_velocity_deg {
        if !(w.is_finite() && w != 0.0) {
            return Err(invalid("corridor.angular_velocity_deg", "must be finite and non-zero"));
        }
    }
    if let Some(n) = c.n_max {
        if n < 3 {
            return Err(invalid("corridor.n_max", "must be >= 3"));
        }
    }
    let corridor = Corridor::new(c.length, c.width, c.height).map_err(|e| invalid("corridor", e.to_string()))?;
    Ok((corridor, c.sphere_radius, strategy))
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> InputError {
    InputError::Invalid {
        field: field.into(),
        reason: reason.into(),
        line: None,
    }
}

fn finite(field: &str, v: f64) -> Result<(), InputError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, "must be finite"))
    }
}

fn positive(field: &str, v: f64) -> Result<(), InputError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(field, format!("must be > 0, got {v}")))
    }
}

/// Parses and validates source text, attaching line numbers to field errors.
pub fn load_str(src: &str) -> Result<LoadedScenario, InputError> {
    let file = ScenarioFile::parse(src)?;
    let scenario = file.to_scenario().map_err(|e| match e {
        InputError::Invalid { field, reason, .. } => InputError::Invalid {
            line: line_of_path(src, &field),
            field,
            reason,
        },
        other => other,
    })?;
    Ok(LoadedScenario {
        file,
        scenario,
        sha256: sha256_hex(src.as_bytes()),
    })
}

pub fn load_path(path: &Path) -> Result<LoadedScenario, InputError> {
    let src = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_str(&src)
}
