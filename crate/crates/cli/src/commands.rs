//! Subcommand implementations. Each returns a [`Report`] that the binary
//! renders as text or as a single JSON line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use orbitnet_core::connectivity::{
    check_connectivity, solve_min_range, solve_velocity, ConnectivityReport, DEFAULT_RANGE_TOLERANCE,
};
use orbitnet_core::coverage::{
    plan_connected_coverage, plan_coverage, verify_coverage, ConnectedCoverageConfig, CoveragePlan, Corridor,
    Strategy, DEFAULT_N_MAX,
};
use orbitnet_core::routing::route;
use orbitnet_core::scene::{
    canonical_value, default_plot_step, distance_csv, distance_plot_svg, link_chart_csv, link_chart_svg,
    SceneDocument,
};
use orbitnet_core::timeline::link_timelines;
use orbitnet_core::Scenario;
use serde_json::{json, Value};

use crate::error::{CliError, InputError};
use crate::scenario_file::{corridor_of, sha256_hex, CorridorBlock, LoadedScenario};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    /// False when the analysis ran but the answer is negative (exit 1).
    pub feasible: bool,
    pub data: Value,
    pub text: String,
}

impl Report {
    fn new(command: &'static str, feasible: bool, data: Value, text: String) -> Self {
        Self {
            command,
            feasible,
            data: canonical_value(&data),
            text,
        }
    }
}

fn input_error(field: &str, reason: impl Into<String>) -> CliError {
    CliError::Input(InputError::Invalid {
        field: field.to_string(),
        reason: reason.into(),
        line: None,
    })
}

fn g(x: f64) -> String {
    format!("{}", orbitnet_core::scene::round_significant(x))
}

fn render_connectivity(scenario: &Scenario, report: &ConnectivityReport, out: &mut String) {
    let w = scenario.window;
    match &report.first_violation {
        None => {
            let _ = writeln!(out, "connected throughout [{}, {}]", g(w.start), g(w.end));
        }
        Some(v) => {
            let _ = writeln!(
                out,
                "not connected: first violation on [{}, {}]",
                g(v.interval.start),
                g(v.interval.end)
            );
            let parts: Vec<String> = v.partition.iter().map(|c| format!("{{{}}}", c.join(", "))).collect();
            let _ = writeln!(out, "components: {}", parts.join(" "));
        }
    }
}

pub fn check(input: &LoadedScenario) -> Result<Report, CliError> {
    let report = check_connectivity(&input.scenario)?;
    let mut text = String::new();
    render_connectivity(&input.scenario, &report, &mut text);
    Ok(Report::new(
        "check",
        report.connected_throughout,
        json!({ "report": report }),
        text,
    ))
}

pub fn solve_range(input: &LoadedScenario, t_max: f64, eps: Option<f64>) -> Result<Report, CliError> {
    let eps = eps.unwrap_or(DEFAULT_RANGE_TOLERANCE);
    let sol = solve_min_range(&input.scenario, t_max, eps)?;
    let text = format!("minimum range: {} m (tolerance {})\n", g(sol.min_range), g(eps));
    Ok(Report::new(
        "solve-range",
        true,
        json!({ "min_range": sol.min_range, "tolerance": eps, "t_max": t_max, "certificate": sol.certificate }),
        text,
    ))
}

pub fn solve_velocity_cmd(
    input: &LoadedScenario,
    omega_min_deg: f64,
    omega_max_deg: f64,
    grid: usize,
    target_deg: Option<f64>,
) -> Result<Report, CliError> {
    let sol = solve_velocity(
        &input.scenario,
        omega_min_deg.to_radians(),
        omega_max_deg.to_radians(),
        grid,
        target_deg.map(f64::to_radians),
    )?;
    let speeds: Vec<Value> = input
        .scenario
        .platforms
        .iter()
        .map(|p| json!({ "id": p.id, "speed": sol.chosen_omega.abs() * p.orbit_radius }))
        .collect();
    let text = format!(
        "angular velocity: {} rad/s ({} deg/s)\n",
        g(sol.chosen_omega),
        g(sol.chosen_omega.to_degrees())
    );
    Ok(Report::new(
        "solve-velocity",
        true,
        json!({
            "angular_velocity": sol.chosen_omega,
            "angular_velocity_deg": sol.chosen_omega.to_degrees(),
            "objective": sol.objective,
            "speeds": speeds,
            "certificate": sol.certificate,
        }),
        text,
    ))
}

#[derive(Debug, Clone, Default)]
pub struct RouteArgs {
    pub source: Option<String>,
    pub destination: Option<String>,
    pub max_hops: Option<usize>,
    pub start: Option<f64>,
    pub end: Option<f64>,
}

pub fn route_cmd(input: &LoadedScenario, args: &RouteArgs) -> Result<Report, CliError> {
    let block = input.file.routing.as_ref();
    let pick = |flag: &Option<String>, file: Option<&String>, field: &str| {
        flag.clone()
            .or_else(|| file.cloned())
            .ok_or_else(|| input_error(field, "missing: pass the flag or add a [routing] block"))
    };
    let s = pick(&args.source, block.map(|b| &b.source), "routing.source")?;
    let d = pick(&args.destination, block.map(|b| &b.destination), "routing.destination")?;
    let k = args
        .max_hops
        .or(block.map(|b| b.max_hops))
        .unwrap_or(orbitnet_core::routing::DEFAULT_MAX_HOPS);
    let w = input.scenario.window;
    let t1 = args.start.or(block.and_then(|b| b.start)).unwrap_or(w.start);
    let t2 = args.end.or(block.and_then(|b| b.end)).unwrap_or(w.end);

    let plan = route(&input.scenario, &s, &d, k, t1, t2)?;
    let ids = |nodes: &[usize]| -> Vec<String> {
        nodes.iter().map(|&i| input.scenario.platforms[i].id.clone()).collect()
    };
    let mut text = format!("route {s} -> {d} over [{}, {}]: {} switch(es)\n", g(t1), g(t2), plan.switch_count);
    let legs: Vec<Value> = plan
        .legs
        .iter()
        .map(|leg| {
            let path = ids(&leg.path.nodes);
            let _ = writeln!(
                text,
                "  [{}, {}] {}",
                g(leg.use_interval.start),
                g(leg.use_interval.end),
                path.join(" - ")
            );
            json!({ "path": path, "start": leg.use_interval.start, "end": leg.use_interval.end })
        })
        .collect();
    Ok(Report::new(
        "route",
        true,
        json!({
            "source": s, "destination": d, "max_hops": k, "start": t1, "end": t2,
            "switch_count": plan.switch_count, "legs": legs,
        }),
        text,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyChoice {
    One(Strategy),
    Both,
}

fn corridor_block(input: &LoadedScenario) -> Result<&CorridorBlock, CliError> {
    input
        .file
        .corridor
        .as_ref()
        .ok_or_else(|| input_error("corridor", "missing [corridor] block"))
}

fn plan_text(plan: &CoveragePlan, out: &mut String) {
    let _ = writeln!(
        out,
        "strategy {}: n = {}, r_o = {} m, r_c = {} m, h_c = {} m, m = {} ({} x {}), total = {}",
        plan.strategy.number(),
        plan.n,
        g(plan.orbit_radius),
        g(plan.cylinder.radius),
        g(plan.cylinder.half_height),
        plan.m,
        plan.grid.0,
        plan.grid.1,
        plan.total
    );
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyArgs {
    pub phase_samples: usize,
    pub point_samples: usize,
    pub seed: u64,
}

pub fn plan_coverage_cmd(
    input: &LoadedScenario,
    strategy: Option<StrategyChoice>,
    verify: Option<VerifyArgs>,
) -> Result<Report, CliError> {
    let block = corridor_block(input)?;
    let (corridor, r_s, file_strategy) = corridor_of(block)?;
    let n_max = block.n_max.unwrap_or(DEFAULT_N_MAX);
    let strategies = match strategy.unwrap_or(StrategyChoice::One(file_strategy)) {
        StrategyChoice::One(s) => vec![s],
        StrategyChoice::Both => vec![Strategy::Square, Strategy::AspectRectangle],
    };
    let mut text = String::new();
    let mut plans = Vec::new();
    let mut feasible = true;
    for s in strategies {
        let plan = plan_coverage(&corridor, r_s, s, n_max)?;
        plan_text(&plan, &mut text);
        let check = verify.map(|v| verify_coverage(&plan, &corridor, r_s, v.phase_samples, v.point_samples, v.seed));
        if let Some(c) = &check {
            let _ = writeln!(text, "  coverage check: {}/{} samples covered", c.covered, c.samples);
            feasible &= c.covered == c.samples;
        }
        plans.push(json!({ "plan": plan, "verification": check }));
    }
    Ok(Report::new(
        "plan-coverage",
        feasible,
        json!({ "corridor": corridor, "sphere_radius": r_s, "plans": plans, "seed": verify.map(|v| v.seed) }),
        text,
    ))
}

pub fn plan_connected_coverage_cmd(
    input: &LoadedScenario,
    t_max: Option<f64>,
    strategy: Option<Strategy>,
) -> Result<Report, CliError> {
    let block = corridor_block(input)?;
    let (corridor, r_s, file_strategy) = corridor_of(block)?;
    let t_max = t_max
        .or(block.t_max)
        .ok_or_else(|| input_error("corridor.t_max", "missing: pass --t-max or set corridor.t_max"))?;
    let mut config = ConnectedCoverageConfig::default();
    if let Some(w) = block.angular_velocity_deg {
        config.angular_velocity = w.to_radians();
    }
    if let Some(n) = block.n_max {
        config.n_max = n;
    }
    let (plan, range) = plan_connected_coverage(&corridor, r_s, strategy.unwrap_or(file_strategy), t_max, &config)?;
    let mut text = String::new();
    plan_text(&plan, &mut text);
    let _ = writeln!(text, "minimum connecting range: {} m", g(range.min_range));
    Ok(Report::new(
        "plan-connected-coverage",
        true,
        json!({
            "corridor": corridor, "sphere_radius": r_s, "t_max": t_max,
            "angular_velocity": config.angular_velocity, "plan": plan,
            "min_range": range.min_range, "certificate": range.certificate,
        }),
        text,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotTarget {
    Pair(String, String),
    LinkChart,
}

/// Writes `<stem>.svg` and `<stem>.csv` next to `out`.
pub fn plot(input: &LoadedScenario, target: &PlotTarget, step: Option<f64>, out: &Path) -> Result<Report, CliError> {
    let sc = &input.scenario;
    let (svg, csv, label) = match target {
        PlotTarget::Pair(a, b) => {
            let i = sc.index_of(a).map_err(|e| input_error("pair", e.to_string()))?;
            let j = sc.index_of(b).map_err(|e| input_error("pair", e.to_string()))?;
            if i == j {
                return Err(input_error("pair", "needs two distinct platforms"));
            }
            let step = step.unwrap_or_else(|| default_plot_step(&sc.window));
            if !(step.is_finite() && step >= 0.0) {
                return Err(input_error("step", "must be >= 0"));
            }
            let (p, q) = (&sc.platforms[i], &sc.platforms[j]);
            let d = sc.threshold_for(i, j);
            (
                distance_plot_svg(p, q, &sc.window, d, step),
                distance_csv(p, q, &sc.window, step),
                format!("{a}-{b}"),
            )
        }
        PlotTarget::LinkChart => {
            let tl = link_timelines(sc);
            (link_chart_svg(sc, &tl), link_chart_csv(sc, &tl), "link-chart".to_string())
        }
    };
    let svg_path = out.with_extension("svg");
    let csv_path = out.with_extension("csv");
    write_file(&svg_path, &svg)?;
    write_file(&csv_path, &csv)?;
    let text = format!(
        "plot {label}: wrote {} and {} ({} rows)\n",
        svg_path.display(),
        csv_path.display(),
        csv.lines().count().saturating_sub(1)
    );
    Ok(Report::new(
        "plot",
        true,
        json!({
            "target": label,
            "svg": { "path": svg_path.display().to_string(), "sha256": sha256_hex(svg.as_bytes()) },
            "csv": { "path": csv_path.display().to_string(), "sha256": sha256_hex(csv.as_bytes()),
                     "rows": csv.lines().count().saturating_sub(1) },
        }),
        text,
    ))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Output {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Coverage plan for the scene, when the file has a corridor block.
pub fn scene_coverage(corridor: Option<&CorridorBlock>) -> Result<Option<CoveragePlan>, CliError> {
    let Some(block) = corridor else { return Ok(None) };
    let (corridor, r_s, strategy): (Corridor, f64, Strategy) = corridor_of(block)?;
    Ok(Some(plan_coverage(
        &corridor,
        r_s,
        strategy,
        block.n_max.unwrap_or(DEFAULT_N_MAX),
    )?))
}

pub fn build_scene(input: &LoadedScenario, revision: u64) -> Result<SceneDocument, CliError> {
    let coverage = scene_coverage(input.file.corridor.as_ref())?;
    let mut doc = SceneDocument::build(&input.scenario, revision, coverage)?;
    doc.input_sha256 = Some(input.sha256.clone());
    Ok(doc)
}

/// The scene document as canonical JSON, written to `out` when given.
pub fn export_scene(input: &LoadedScenario, out: Option<&PathBuf>) -> Result<(String, Option<Report>), CliError> {
    let json = build_scene(input, 0)?.to_canonical_json();
    let Some(path) = out else { return Ok((json, None)) };
    write_file(path, &json)?;
    let report = Report::new(
        "export-scene",
        true,
        json!({ "path": path.display().to_string(), "sha256": sha256_hex(json.as_bytes()) }),
        format!("wrote scene to {}\n", path.display()),
    );
    Ok((json, Some(report)))
}
