use std::f64::consts::{PI, TAU};

use orbitnet_core::connectivity::{check_connectivity, connectivity_profile, solve_min_range};
use orbitnet_core::coverage::{
    plan_connected_coverage, plan_coverage, verify_coverage, ConnectedCoverageConfig, Corridor, Strategy,
};
use orbitnet_core::kinematics::pair_distance;
use orbitnet_core::routing::{enumerate_paths, route};
use orbitnet_core::scene::{slice_connectivity_from_links, SceneDocument};
use orbitnet_core::timeline::link_timelines;
use orbitnet_core::{PlatformSpec, Scenario, TimeInterval};

fn ring(n: usize, d: f64) -> Scenario {
    // platforms on separate orbits around a circle, phases staggered
    let platforms = (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            PlatformSpec::new(
                format!("r{i}"),
                (20.0 * a.cos(), 20.0 * a.sin()),
                3.0,
                4.0,
                0.2 * if i % 2 == 0 { 1.0 } else { -1.0 },
                a,
            )
            .unwrap()
        })
        .collect();
    Scenario::new(platforms, TimeInterval::new(0.0, 80.0).unwrap(), d).unwrap()
}

#[test]
fn routes_exist_when_network_is_connected() {
    let sc = ring(6, 7.0);
    let range = solve_min_range(&sc, 60.0, 1e-3).unwrap();
    let connected = sc.with_threshold(range.min_range);
    assert!(check_connectivity(&connected).unwrap().connected_throughout);
    // with every hop count allowed, a connected network always has a route
    let n = connected.len();
    for d in 1..n {
        let plan = route(&connected, "r0", &format!("r{d}"), n - 1, 0.0, 80.0).unwrap();
        assert_eq!(plan.legs.first().unwrap().use_interval.start, 0.0);
        assert_eq!(plan.legs.last().unwrap().use_interval.end, 80.0);
    }
}

#[test]
fn route_gap_coincides_with_disconnection() {
    let sc = ring(4, 18.0);
    let report = check_connectivity(&sc).unwrap();
    let profile = connectivity_profile(&sc).unwrap();
    let paths = enumerate_paths(&link_timelines(&sc), 0, 2, 3).unwrap();
    // the pair is joined at t exactly when some path is live at t
    for k in 0..=400 {
        let t = 80.0 * k as f64 / 400.0;
        let any_path = paths.iter().any(|p| p.live.contains(t));
        if profile.connected_at(t) == Some(true) {
            assert!(any_path, "connected at {t} but no r0-r2 path");
        }
    }
    if report.connected_throughout {
        assert!(route(&sc, "r0", "r2", 3, 0.0, 80.0).is_ok());
    }
}

#[test]
fn scene_slices_agree_with_profile() {
    let sc = ring(5, 16.0);
    let doc = SceneDocument::build(&sc, 0, None).unwrap();
    let direct: Vec<bool> = doc.slices.iter().map(|s| s.connected).collect();
    assert_eq!(slice_connectivity_from_links(&doc), direct);
    assert_eq!(doc.connected_throughout, check_connectivity(&sc).unwrap().connected_throughout);
    for s in &doc.slices {
        let mid = 0.5 * (s.start + s.end);
        for l in &doc.links {
            let (i, j) = (sc.index_of(&l.a).unwrap(), sc.index_of(&l.b).unwrap());
            let live = pair_distance(&sc.platforms[i], &sc.platforms[j], mid) <= l.threshold;
            let listed = s.edges.iter().any(|(a, b)| a == &l.a && b == &l.b);
            assert_eq!(live, listed, "slice at {mid}, link {}-{}", l.a, l.b);
        }
    }
}

#[test]
fn connected_coverage_plan_is_covering_and_connected() {
    let c = Corridor::new(70.0, 50.0, 6.0).unwrap();
    let cfg = ConnectedCoverageConfig {
        angular_velocity: 0.05,
        ..Default::default()
    };
    let (plan, range) = plan_connected_coverage(&c, 15.0, Strategy::Square, 200.0, &cfg).unwrap();
    assert_eq!(plan, plan_coverage(&c, 15.0, Strategy::Square, cfg.n_max).unwrap());
    assert_eq!(verify_coverage(&plan, &c, 15.0, 4, 20_000, 1).fraction, 1.0);
    let window = TimeInterval::new(0.0, TAU / 0.05).unwrap();
    let sc = plan.to_scenario(0.05, window, range.min_range).unwrap();
    assert!(check_connectivity(&sc).unwrap().connected_throughout);
    assert!(!check_connectivity(&sc.with_threshold(range.min_range - 2e-3)).unwrap().connected_throughout);
}

#[test]
fn phase_offsets_change_only_connectivity() {
    let c = Corridor::new(60.0, 30.0, 5.0).unwrap();
    let base = ConnectedCoverageConfig {
        angular_velocity: 0.1,
        ..Default::default()
    };
    let (plan, aligned) = plan_connected_coverage(&c, 14.0, Strategy::Square, 200.0, &base).unwrap();
    let offsets: Vec<f64> = (0..plan.centers.len()).map(|j| j as f64 * PI / plan.n as f64).collect();
    let shifted_cfg = ConnectedCoverageConfig {
        phase_offsets: Some(offsets.clone()),
        ..base
    };
    let (shifted, staggered) = plan_connected_coverage(&c, 14.0, Strategy::Square, 200.0, &shifted_cfg).unwrap();
    assert_eq!(shifted.phase_offsets, offsets);
    assert_eq!(verify_coverage(&shifted, &c, 14.0, 4, 20_000, 2).fraction, 1.0);
    assert!(aligned.min_range > 0.0 && staggered.min_range > 0.0);
}
