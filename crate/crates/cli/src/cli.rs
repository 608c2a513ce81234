//! Argument parsing and output rendering for the binary.

use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitnet_core::connectivity::DEFAULT_VELOCITY_GRID;
use orbitnet_core::coverage::Strategy;
use serde_json::{json, Map, Value};

use crate::commands::{self, PlotTarget, Report, RouteArgs, StrategyChoice, VerifyArgs};
use crate::error::{CliError, InputError, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK};
use crate::scenario_file::{load_path, LoadedScenario};
use crate::service;

#[derive(Debug, Parser)]
#[command(name = "orbitnet", version, about = "Connectivity, routing and coverage planning for orbiting backbone networks")]
pub struct Cli {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Output path for files the command writes.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    #[value(name = "1")]
    Square,
    #[value(name = "2")]
    Rectangle,
    Both,
}

impl StrategyArg {
    fn single(self) -> Option<Strategy> {
        match self {
            StrategyArg::Square => Some(Strategy::Square),
            StrategyArg::Rectangle => Some(Strategy::AspectRectangle),
            StrategyArg::Both => None,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify connectivity over the whole window.
    Check,
    /// Smallest uniform range keeping the network connected.
    SolveRange {
        /// Largest admissible range, m.
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Uniform angular velocity keeping the network connected.
    SolveVelocity {
        #[arg(long, allow_negative_numbers = true)]
        omega_min_deg: f64,
        #[arg(long, allow_negative_numbers = true)]
        omega_max_deg: f64,
        /// Preferred angular velocity; the closest feasible value is returned.
        #[arg(long, allow_negative_numbers = true)]
        target_deg: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_VELOCITY_GRID)]
        grid: usize,
    },
    /// Minimum path-switch route; flags override the [routing] block.
    Route(RouteFlags),
    /// Orbit placement covering the corridor.
    PlanCoverage {
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Monte-Carlo check with this many corridor points.
        #[arg(long)]
        verify: Option<usize>,
        /// Phases per point for the Monte-Carlo check.
        #[arg(long, default_value_t = 1)]
        phases: usize,
    },
    /// Coverage placement followed by the minimum connecting range.
    PlanConnectedCoverage {
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
    },
    /// Distance plot for a pair (`--pair a,b`) or the link chart.
    Plot {
        #[arg(long, value_delimiter = ',', conflicts_with = "link_chart")]
        pair: Option<Vec<String>>,
        #[arg(long)]
        link_chart: bool,
        /// Sampling step, s. Defaults to window/2000.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Scene document as canonical JSON.
    ExportScene,
    /// Serve the scene document over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        bind: IpAddr,
    },
}

#[derive(Debug, Args)]
pub struct RouteFlags {
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub destination: Option<String>,
    #[arg(long)]
    pub max_hops: Option<usize>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub end: Option<f64>,
}

fn emit_report(out: &mut dyn Write, format: Format, hash: &str, r: &Report) {
    match format {
        Format::Text => {
            let _ = write!(out, "{}", r.text);
            let _ = writeln!(out, "input sha256: {hash}");
        }
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("command".into(), json!(r.command));
            obj.insert("status".into(), json!(if r.feasible { "ok" } else { "infeasible" }));
            obj.insert("input_sha256".into(), json!(hash));
            if let Value::Object(data) = &r.data {
                obj.extend(data.clone());
            }
            let _ = writeln!(out, "{}", Value::Object(obj));
        }
    }
}

fn emit_error(out: &mut dyn Write, err_out: &mut dyn Write, format: Format, command: &str, hash: Option<&str>, e: &CliError) {
    match format {
        Format::Text => {
            let _ = writeln!(err_out, "{}: {e}", e.kind());
            if let Some(h) = hash {
                let _ = writeln!(err_out, "input sha256: {h}");
            }
        }
        Format::Json => {
            let mut obj = json!({ "command": command, "status": e.kind(), "error": e.to_string(), "input_sha256": hash });
            if let CliError::Input(InputError::Invalid { field, line, .. }) = e {
                obj["field"] = json!(field);
                obj["line"] = json!(line);
            }
            let _ = writeln!(out, "{obj}");
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check => "check",
        Command::SolveRange { .. } => "solve-range",
        Command::SolveVelocity { .. } => "solve-velocity",
        Command::Route(_) => "route",
        Command::PlanCoverage { .. } => "plan-coverage",
        Command::PlanConnectedCoverage { .. } => "plan-connected-coverage",
        Command::Plot { .. } => "plot",
        Command::ExportScene => "export-scene",
        Command::Serve { .. } => "serve",
    }
}

fn load(cli: &Cli) -> Result<LoadedScenario, CliError> {
    let path = cli.scenario.as_ref().ok_or_else(|| InputError::Invalid {
        field: "--scenario".into(),
        reason: "required".into(),
        line: None,
    })?;
    Ok(load_path(path)?)
}

enum Outcome {
    Report(Report),
    Raw(String),
}

fn dispatch(cli: &Cli, input: &LoadedScenario) -> Result<Outcome, CliError> {
    let report = match &cli.command {
        Command::Check => commands::check(input)?,
        Command::SolveRange { t_max, tolerance } => commands::solve_range(input, *t_max, *tolerance)?,
        Command::SolveVelocity {
            omega_min_deg,
            omega_max_deg,
            target_deg,
            grid,
        } => commands::solve_velocity_cmd(input, *omega_min_deg, *omega_max_deg, *grid, *target_deg)?,
        Command::Route(f) => commands::route_cmd(
            input,
            &RouteArgs {
                source: f.source.clone(),
                destination: f.destination.clone(),
                max_hops: f.max_hops,
                start: f.start,
                end: f.end,
            },
        )?,
        Command::PlanCoverage {
            strategy,
            verify,
            phases,
        } => {
            let choice = strategy.map(|s| s.single().map_or(StrategyChoice::Both, StrategyChoice::One));
            let verify = verify.map(|points| VerifyArgs {
                phase_samples: *phases,
                point_samples: points,
                seed: cli.seed,
            });
            commands::plan_coverage_cmd(input, choice, verify)?
        }
        Command::PlanConnectedCoverage { t_max, strategy } => {
            let s = match strategy {
                Some(StrategyArg::Both) => {
                    return Err(InputError::Invalid {
                        field: "--strategy".into(),
                        reason: "pick 1 or 2".into(),
                        line: None,
                    }
                    .into())
                }
                Some(s) => s.single(),
                None => None,
            };
            commands::plan_connected_coverage_cmd(input, *t_max, s)?
        }
        Command::Plot { pair, link_chart, step } => {
            let target = match (pair, link_chart) {
                (Some(p), false) if p.len() == 2 => PlotTarget::Pair(p[0].clone(), p[1].clone()),
                (None, true) => PlotTarget::LinkChart,
                _ => {
                    return Err(InputError::Invalid {
                        field: "--pair".into(),
                        reason: "pass --pair a,b or --link-chart".into(),
                        line: None,
                    }
                    .into())
                }
            };
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("plot"));
            commands::plot(input, &target, *step, &out)?
        }
        Command::ExportScene => {
            let (json, report) = commands::export_scene(input, cli.out.as_ref())?;
            return Ok(match report {
                Some(r) => Outcome::Report(r),
                None => Outcome::Raw(json),
            });
        }
        Command::Serve { .. } => unreachable!("serve is handled by run"),
    };
    if let Some(path) = &cli.out {
        if !matches!(cli.command, Command::Plot { .. }) {
            let mut data = report.data.clone();
            data["input_sha256"] = json!(input.sha256);
            let mut s = serde_json::to_string_pretty(&data).expect("value serializes");
            s.push('\n');
            commands::write_file(path, &s)?;
        }
    }
    Ok(Outcome::Report(report))
}

fn serve(input: &LoadedScenario, bind: IpAddr, port: u16) -> Result<(), CliError> {
    let doc = commands::build_scene(input, 0)?;
    let state = service::AppState::new(doc);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Output {
        path: "runtime".into(),
        message: e.to_string(),
    })?;
    runtime
        .block_on(service::serve(SocketAddr::new(bind, port), state))
        .map_err(|e| CliError::Output {
            path: format!("{bind}:{port}"),
            message: e.to_string(),
        })
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err_out: &mut dyn Write) -> i32 {
    let name = command_name(&cli.command);
    let input = match load(cli) {
        Ok(i) => i,
        Err(e) => {
            emit_error(out, err_out, cli.format, name, None, &e);
            return e.exit_code();
        }
    };
    if let Command::Serve { port, bind } = &cli.command {
        return match serve(&input, *bind, *port) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                emit_error(out, err_out, cli.format, name, Some(&input.sha256), &e);
                EXIT_INPUT
            }
        };
    }
    match dispatch(cli, &input) {
        Ok(Outcome::Raw(s)) => {
            let _ = write!(out, "{s}");
            EXIT_OK
        }
        Ok(Outcome::Report(r)) => {
            emit_report(out, cli.format, &input.sha256, &r);
            if r.feasible {
                EXIT_OK
            } else {
                EXIT_INFEASIBLE
            }
        }
        Err(e) => {
            emit_error(out, err_out, cli.format, name, Some(&input.sha256), &e);
            e.exit_code()
        }
    }
}
