//! `rs-velocity` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or numeric error,
//! 3 property verification failure. Tables go to stdout, diagnostics to
//! stderr.

mod args;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use rs_velocity_core::verify::{run_suite, SuiteConfig};
use rs_velocity_core::{
    convergence_scan, light_cone_divergence_scan, relative_velocity, to_bounded_with,
    to_unbounded_with, BoundedVelocity, FiniteDefinition, FittedOrder, Scenario, UnboundedVelocity,
    VelocityError,
};

use args::{Cli, CliConfig, Command, Direction, Scan};
use output::{json_num, num, Cell, Format, Table};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// What a command produced: stdout text, an optional diagnostic, and the exit code.
struct Outcome {
    stdout: String,
    diagnostic: Option<String>,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            diagnostic: None,
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            diagnostic: Some(diagnostic(&e)),
            code: EXIT_DOMAIN,
        },
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    if let Some(msg) = outcome.diagnostic {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.code)
}

fn diagnostic(e: &VelocityError) -> String {
    format!("error: {}: {e}", e.name())
}

fn run(cli: &Cli) -> Result<Outcome, VelocityError> {
    let config = &cli.config;
    match &cli.command {
        Command::Map { direction, value } => cmd_map(config, *direction, *value),
        Command::Relative {
            definition,
            law,
            body,
            observer,
        } => {
            let scenario = Scenario {
                obs_body: *body,
                obs_observer: *observer,
                definition: *definition,
                law: *law,
            };
            cmd_relative(config, &scenario)
        }
        Command::Scan(Scan::Convergence {
            definition,
            x,
            t,
            grid,
        }) => cmd_scan_convergence(config, *definition, *x, *t, &grid.0),
        Command::Scan(Scan::LightCone { t, eps }) => cmd_scan_light_cone(config, *t, &eps.0),
        Command::Verify { cases } => Ok(cmd_verify(config, *cases as usize)),
    }
}

fn config_json(config: &CliConfig, format: Format) -> Value {
    json!({
        "c": json_num(config.c.get()),
        "rel_tol": json_num(config.rel_tol),
        "format": format.name(),
        "seed": config.seed,
        "saturation": config.saturation.name(),
    })
}

/// Renders a single-row result: `value representation` in plain form.
fn scalar(
    config: &CliConfig,
    value: f64,
    representation: &str,
    saturated: bool,
    extra: Value,
) -> String {
    let format = config.format.unwrap_or(Format::Plain);
    match format {
        Format::Plain => format!("{} {representation}\n", num(value)),
        Format::Csv => {
            let mut table = Table::new(&["value", "representation", "saturated"]);
            table.push(vec![
                Cell::Num(value),
                Cell::Text(representation.into()),
                Cell::Bool(saturated),
            ]);
            table.to_csv()
        }
        Format::Json => {
            let mut doc = json!({
                "config": config_json(config, format),
                "value": json_num(value),
                "representation": representation,
                "saturated": saturated,
            });
            if let (Value::Object(doc), Value::Object(extra)) = (&mut doc, extra) {
                doc.extend(extra);
            }
            format!("{doc}\n")
        }
    }
}

fn cmd_map(config: &CliConfig, direction: Direction, value: f64) -> Result<Outcome, VelocityError> {
    let mode = config.saturation.mode();
    let c = config.c;
    let (mapped, representation, saturated) = match direction {
        Direction::ToBounded => {
            let v = to_bounded_with(UnboundedVelocity::new(value)?, c, mode)?;
            (v.value(), "bounded", v.is_saturated())
        }
        Direction::ToUnbounded => {
            let a = to_unbounded_with(BoundedVelocity::new(value, c)?, c, mode)?;
            (a.value(), "unbounded", false)
        }
    };
    // plain output is the bare number
    let stdout = if config.format.unwrap_or(Format::Plain) == Format::Plain {
        format!("{}\n", num(mapped))
    } else {
        scalar(
            config,
            mapped,
            representation,
            saturated,
            json!({ "input": json_num(value) }),
        )
    };
    let mut outcome = Outcome::ok(stdout);
    if saturated {
        outcome.diagnostic = Some(format!("note: result clamped below c = {}", config.c));
    }
    Ok(outcome)
}

fn cmd_relative(config: &CliConfig, scenario: &Scenario) -> Result<Outcome, VelocityError> {
    let v = relative_velocity(scenario, config.c, config.saturation.mode())?;
    let extra = json!({
        "definition": scenario.definition.name(),
        "law": scenario.law.name(),
        "claim_id": scenario.claim_id(),
    });
    Ok(Outcome::ok(scalar(
        config,
        v.value(),
        &v.representation().to_string(),
        v.is_saturated(),
        extra,
    )))
}

fn cmd_scan_convergence(
    config: &CliConfig,
    definition: FiniteDefinition,
    x: f64,
    t: f64,
    grid: &[f64],
) -> Result<Outcome, VelocityError> {
    let obs = rs_velocity_core::ObservationRecord::new(x, t, t)?;
    let scan = convergence_scan(definition, &obs, config.c, grid)?;
    let mut table = Table::new(&["T", "value", "abs_error"]);
    for row in &scan.rows {
        table.push(vec![
            Cell::Num(row.regularization),
            Cell::Num(row.value),
            Cell::Num(row.abs_error_vs_limit),
        ]);
    }
    let order = match scan.fit {
        FittedOrder::Order(order) => Some(order),
        FittedOrder::Degenerate { .. } => None,
    };
    let format = config.format.unwrap_or(Format::Csv);
    let mut stdout = match format {
        Format::Csv => table.to_csv(),
        Format::Plain => table.to_plain(),
        Format::Json => {
            let doc = json!({
                "config": config_json(config, format),
                "definition": match definition {
                    FiniteDefinition::Def2 => "def2",
                    FiniteDefinition::Def3 => "def3",
                },
                "x": json_num(x),
                "t": json_num(t),
                "rows": table.json_rows(),
                "order": order.map_or(Value::Null, json_num),
            });
            format!("{doc}\n")
        }
    };
    if let Some(order) = order {
        match format {
            Format::Csv => stdout.push_str(&format!("# fitted_order={}\r\n", num(order))),
            Format::Plain => stdout.push_str(&format!("fitted order: {}\n", num(order))),
            Format::Json => {}
        }
    }
    let mut outcome = Outcome::ok(stdout);
    if let Err(e) = scan.order() {
        outcome.diagnostic = Some(diagnostic(&e));
        outcome.code = EXIT_DOMAIN;
    }
    Ok(outcome)
}

fn cmd_scan_light_cone(config: &CliConfig, t: f64, eps: &[f64]) -> Result<Outcome, VelocityError> {
    let scan = light_cone_divergence_scan(t, config.c, eps)?;
    let mut table = Table::new(&["epsilon", "x", "def2_limit", "def3_limit"]);
    for row in &scan.rows {
        table.push(vec![
            Cell::Num(row.epsilon),
            Cell::Num(row.x),
            Cell::Num(row.def2_limit.value()),
            Cell::Num(row.def3_limit.value()),
        ]);
    }
    let format = config.format.unwrap_or(Format::Csv);
    let stdout = match format {
        Format::Csv => table.to_csv(),
        Format::Plain => table.to_plain(),
        Format::Json => {
            let doc = json!({
                "config": config_json(config, format),
                "t": json_num(t),
                "rows": table.json_rows(),
                "def2_monotone": scan.def2_monotone,
                "def3_monotone": scan.def3_monotone,
                "beyond": scan.rows.iter().map(|r| json!({
                    "x_over_ct": json_num(1.0 / r.epsilon),
                    "def2_limit": json_num(r.beyond_def2_limit.value()),
                    "saturated": r.beyond_def2_limit.is_saturated(),
                })).collect::<Vec<_>>(),
                "beyond_def2_bounded": scan.beyond_def2_bounded,
                "all_pass": scan.monotone() && scan.beyond_def2_bounded,
            });
            format!("{doc}\n")
        }
    };
    let mut outcome = Outcome::ok(stdout);
    if !(scan.monotone() && scan.beyond_def2_bounded) {
        outcome.diagnostic = Some("warning: light-cone columns are not strictly increasing".into());
    }
    Ok(outcome)
}

fn cmd_verify(config: &CliConfig, cases: usize) -> Outcome {
    let outcomes = run_suite(&SuiteConfig {
        c: config.c,
        rel_tol: config.rel_tol,
        seed: config.seed,
        cases,
    });
    let mut table = Table::new(&["property", "cases", "max_residual", "pass"]);
    for o in &outcomes {
        table.push(vec![
            Cell::Text(o.property.into()),
            Cell::Int(o.cases as u64),
            Cell::Num(o.max_residual),
            Cell::Bool(o.pass),
        ]);
    }
    let all_pass = outcomes.iter().all(|o| o.pass);
    let format = config.format.unwrap_or(Format::Csv);
    let stdout = match format {
        Format::Csv => table.to_csv(),
        Format::Plain => table.to_plain(),
        Format::Json => {
            let doc = json!({
                "config": config_json(config, format),
                "rows": table.json_rows(),
                "all_pass": all_pass,
            });
            format!("{doc}\n")
        }
    };
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| o.property)
        .collect();
    Outcome {
        stdout,
        diagnostic: (!all_pass)
            .then(|| format!("error: verification failed: {}", failed.join(", "))),
        code: if all_pass { 0 } else { EXIT_VERIFY },
    }
}
