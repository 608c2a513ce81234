//! Self-contained scene documents for the orbit designer, plus CSV and SVG
//! exports of distance curves and link charts.
//!
//! Everything here serializes deterministically: object keys are sorted and
//! floats are rounded to 9 significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::connectivity::{components, connectivity_profile, report_from_profile};
use crate::coverage::CoveragePlan;
use crate::error::Result;
use crate::interval::{IntervalSet, TimeInterval};
use crate::kinematics::{pair_distance, position_at, PlatformSpec, Point3, Scenario};
use crate::timeline::{decompose_timeline, link_live_intervals, link_timelines, LinkTimeline};

pub const SCENE_SCHEMA_VERSION: u32 = 1;
pub const SIGNIFICANT_DIGITS: usize = 9;
/// Default number of plot steps across the window.
pub const PLOT_STEPS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenePlatform {
    #[serde(flatten)]
    pub spec: PlatformSpec,
    /// Position at the document's reference time.
    pub reference_position: Point3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneLink {
    pub a: String,
    pub b: String,
    pub threshold: f64,
    pub live: Vec<TimeInterval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSlice {
    pub start: f64,
    pub end: f64,
    pub edges: Vec<(String, String)>,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneDocument {
    pub schema_version: u32,
    pub revision: u64,
    pub reference_time: f64,
    pub window: TimeInterval,
    pub comm_threshold: f64,
    pub platforms: Vec<ScenePlatform>,
    pub links: Vec<SceneLink>,
    pub slices: Vec<SceneSlice>,
    pub connected_throughout: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage: Option<CoveragePlan>,
    /// SHA-256 of the input the document was built from, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
}

impl SceneDocument {
    pub fn build(scenario: &Scenario, revision: u64, coverage: Option<CoveragePlan>) -> Result<Self> {
        let ids = |i: usize| scenario.platforms[i].id.clone();
        let reference_time = scenario.window.start;
        let platforms = scenario
            .platforms
            .iter()
            .map(|p| ScenePlatform {
                spec: p.clone(),
                reference_position: position_at(p, reference_time),
            })
            .collect();

        let (links, slices, connected_throughout) = if scenario.is_empty() {
            (Vec::new(), Vec::new(), true)
        } else {
            let profile = connectivity_profile(scenario)?;
            let report = report_from_profile(scenario, &profile);
            let links = link_timelines(scenario)
                .into_iter()
                .map(|l| SceneLink {
                    a: ids(l.pair.0),
                    b: ids(l.pair.1),
                    threshold: scenario.threshold_for(l.pair.0, l.pair.1),
                    live: l.live.intervals().to_vec(),
                })
                .collect();
            let slices = profile
                .slices()
                .map(|(s, connected)| SceneSlice {
                    start: s.interval.start,
                    end: s.interval.end,
                    edges: s.edges.iter().map(|&(a, b)| (ids(a), ids(b))).collect(),
                    connected,
                })
                .collect();
            (links, slices, report.connected_throughout)
        };

        Ok(Self {
            schema_version: SCENE_SCHEMA_VERSION,
            revision,
            reference_time,
            window: scenario.window,
            comm_threshold: scenario.comm_threshold,
            platforms,
            links,
            slices,
            connected_throughout,
            coverage,
            input_sha256: None,
        })
    }

    pub fn to_canonical_json(&self) -> String {
        canonical_json(self)
    }
}

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(m) => m.values_mut().for_each(round_value),
        _ => {}
    }
}

/// JSON value with floats rounded to 9 significant digits. Object keys are
/// kept sorted by `serde_json`'s default map.
pub fn canonical_value<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("plain data serializes");
    round_value(&mut v);
    v
}

/// Pretty JSON with sorted keys and floats rounded to 9 significant digits.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = canonical_value(value);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn fmt_num(x: f64) -> String {
    format!("{}", round_significant(x))
}

/// Sample times `start + k·step`, the last one clamped to the window end;
/// `ceil(len/step) + 1` samples.
pub fn plot_times(window: &TimeInterval, step: f64) -> Vec<f64> {
    if window.is_degenerate() || !(step > 0.0) {
        return vec![window.start];
    }
    let n = (window.len() / step).ceil() as usize;
    (0..=n)
        .map(|k| (window.start + k as f64 * step).min(window.end))
        .collect()
}

pub fn default_plot_step(window: &TimeInterval) -> f64 {
    window.len() / PLOT_STEPS as f64
}

pub fn distance_csv(p: &PlatformSpec, q: &PlatformSpec, window: &TimeInterval, step: f64) -> String {
    let mut out = String::from("t,s_ij\n");
    for t in plot_times(window, step) {
        let _ = writeln!(out, "{},{}", fmt_num(t), fmt_num(pair_distance(p, q, t)));
    }
    out
}

pub fn link_chart_csv(scenario: &Scenario, timelines: &[LinkTimeline]) -> String {
    let mut out = String::from("a,b,start,end\n");
    for l in timelines {
        for iv in l.live.iter() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                scenario.platforms[l.pair.0].id,
                scenario.platforms[l.pair.1].id,
                fmt_num(iv.start),
                fmt_num(iv.end)
            );
        }
    }
    out
}

const W: f64 = 960.0;
const H: f64 = 420.0;
const MARGIN: f64 = 60.0;
const LIVE: &str = "#1f5fbf";
const DEAD: &str = "#c62828";

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Distance-versus-time plot with the threshold line drawn across it. Curve
/// segments are blue where the link is live and red where it is not, and a
/// bar under the axis repeats the live/dead split.
pub fn distance_plot_svg(
    p: &PlatformSpec,
    q: &PlatformSpec,
    window: &TimeInterval,
    threshold: f64,
    step: f64,
) -> String {
    let times = plot_times(window, step);
    let dist: Vec<f64> = times.iter().map(|&t| pair_distance(p, q, t)).collect();
    let live = link_live_intervals(p, q, window, threshold);

    let y_max = dist.iter().copied().fold(threshold, f64::max) * 1.05;
    let span = window.len().max(f64::MIN_POSITIVE);
    let plot_h = H - 2.0 * MARGIN - 30.0;
    let x = |t: f64| MARGIN + (t - window.start) / span * (W - 2.0 * MARGIN);
    let y = |s: f64| MARGIN + plot_h * (1.0 - s / y_max);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="30" font-family="sans-serif" font-size="14">distance {} - {} (threshold {})</text>"#,
        escape(&p.id),
        escape(&q.id),
        fmt_num(threshold)
    );
    let axis_y = y(0.0);
    let _ = writeln!(
        svg,
        r#"<path d="M{:.2} {:.2} V{:.2} H{:.2}" stroke="black" fill="none"/>"#,
        MARGIN,
        MARGIN,
        axis_y,
        W - MARGIN
    );

    // consecutive samples grouped by liveness of the segment midpoint
    let mut i = 0;
    while i + 1 < times.len() {
        let state = live.contains(0.5 * (times[i] + times[i + 1]));
        let mut d = format!("M{:.2} {:.2}", x(times[i]), y(dist[i]));
        let mut j = i + 1;
        loop {
            let _ = write!(d, " L{:.2} {:.2}", x(times[j]), y(dist[j]));
            if j + 1 >= times.len() || live.contains(0.5 * (times[j] + times[j + 1])) != state {
                break;
            }
            j += 1;
        }
        let color = if state { LIVE } else { DEAD };
        let _ = writeln!(svg, r#"<path d="{d}" stroke="{color}" stroke-width="1.5" fill="none"/>"#);
        i = j;
    }

    let _ = writeln!(
        svg,
        r#"<line class="ctl" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-dasharray="6 4"/>"#,
        MARGIN,
        y(threshold),
        W - MARGIN,
        y(threshold)
    );

    let bar_y = H - MARGIN - 10.0;
    let _ = writeln!(
        svg,
        r#"<rect x="{:.2}" y="{bar_y:.2}" width="{:.2}" height="10" fill="{DEAD}"/>"#,
        MARGIN,
        W - 2.0 * MARGIN
    );
    for iv in live.iter() {
        let _ = writeln!(
            svg,
            r#"<rect class="live" x="{:.2}" y="{bar_y:.2}" width="{:.2}" height="10" fill="{LIVE}"/>"#,
            x(iv.start),
            (x(iv.end) - x(iv.start)).max(0.5)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{:.2}" font-family="sans-serif" font-size="11">t = {}</text>"#,
        H - 20.0,
        fmt_num(window.start)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">t = {}</text>"#,
        W - MARGIN,
        H - 20.0,
        fmt_num(window.end)
    );
    svg.push_str("</svg>\n");
    svg
}

/// One row of live-interval bars per link, with a tick at every slice
/// boundary of the decomposition.
pub fn link_chart_svg(scenario: &Scenario, timelines: &[LinkTimeline]) -> String {
    let window = scenario.window;
    let decomposition = decompose_timeline(timelines, &window);
    let row_h = 22.0;
    let height = 2.0 * MARGIN + row_h * timelines.len().max(1) as f64;
    let span = window.len().max(f64::MIN_POSITIVE);
    let x = |t: f64| MARGIN + 80.0 + (t - window.start) / span * (W - 2.0 * MARGIN - 80.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{height}" viewBox="0 0 {W} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{height}" fill="white"/>"#);
    for (row, l) in timelines.iter().enumerate() {
        let y = MARGIN + row as f64 * row_h;
        let label = format!(
            "{}-{}",
            scenario.platforms[l.pair.0].id, scenario.platforms[l.pair.1].id
        );
        let _ = writeln!(
            svg,
            r#"<text x="{MARGIN}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            y + 14.0,
            escape(&label)
        );
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="12" fill="{DEAD}" opacity="0.35"/>"#,
            x(window.start),
            y + 4.0,
            x(window.end) - x(window.start)
        );
        for iv in l.live.iter() {
            let _ = writeln!(
                svg,
                r#"<rect class="live" x="{:.2}" y="{:.2}" width="{:.2}" height="12" fill="{LIVE}"/>"#,
                x(iv.start),
                y + 4.0,
                (x(iv.end) - x(iv.start)).max(0.5)
            );
        }
    }
    let bottom = height - MARGIN + 8.0;
    let mut bounds: Vec<f64> = decomposition.slices.iter().map(|s| s.interval.start).collect();
    bounds.push(window.end);
    for t in bounds {
        let _ = writeln!(
            svg,
            r#"<line class="tick" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-width="0.6"/>"#,
            x(t),
            MARGIN - 6.0,
            x(t),
            bottom
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Connectivity verdicts for the scene's slices rebuilt from its link
/// intervals alone, for consumers holding only the document.
pub fn slice_connectivity_from_links(doc: &SceneDocument) -> Vec<bool> {
    let index = |id: &str| doc.platforms.iter().position(|p| p.spec.id == id);
    let timelines: Vec<LinkTimeline> = doc
        .links
        .iter()
        .filter_map(|l| {
            Some(LinkTimeline {
                pair: (index(&l.a)?, index(&l.b)?),
                live: IntervalSet::normalized(l.live.iter().copied(), 0.0),
            })
        })
        .collect();
    decompose_timeline(&timelines, &doc.window)
        .slices
        .iter()
        .map(|s| components(doc.platforms.len(), &s.edges).len() <= 1)
        .collect()
}
