use clap::{Args, Parser, Subcommand, ValueEnum};
use rs_velocity_core::{
    CompositionTag, DefinitionTag, FiniteDefinition, LightSpeed, ObservationRecord, SaturationMode,
};

use crate::output::Format;

/// Bounded and unbounded one-dimensional velocities: maps, composition laws,
/// operational definitions and property checks.
#[derive(Debug, Parser)]
#[command(name = "rs-velocity", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Light speed: a positive number, or `si` for 299792458.
    #[arg(long = "c", global = true, env = "RS_VELOCITY_C", default_value = "1", value_parser = parse_light_speed)]
    pub c: LightSpeed,

    /// Relative tolerance for equivalence checks.
    #[arg(long = "tol", global = true, default_value = "1e-12", value_parser = parse_tolerance)]
    pub rel_tol: f64,

    /// Output format. Scalars default to plain, tables to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for the property suite.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// What to do when a bounded result rounds onto the light cone.
    #[arg(long, global = true, value_enum, default_value_t = Saturation::Clamp)]
    pub saturation: Saturation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Saturation {
    Clamp,
    Error,
}

impl Saturation {
    pub fn mode(self) -> SaturationMode {
        match self {
            Saturation::Clamp => SaturationMode::Clamp,
            Saturation::Error => SaturationMode::Error,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Saturation::Clamp => "clamp",
            Saturation::Error => "error",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map a velocity between the bounded and unbounded representations.
    Map {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(allow_negative_numbers = true)]
        value: f64,
    },
    /// Velocity of a body relative to an observer.
    Relative {
        /// def1, def2, def2-limit, def3 or def3-limit.
        #[arg(value_parser = parse_definition)]
        definition: DefinitionTag,
        /// galilean or einstein.
        #[arg(value_parser = parse_law)]
        law: CompositionTag,
        /// Body observation `x,t[,T]`; T defaults to 1000 t.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_observation)]
        body: ObservationRecord,
        /// Observer observation `x,t[,T]`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_observation)]
        observer: ObservationRecord,
    },
    /// Tabulate convergence or light-cone behaviour.
    #[command(subcommand)]
    Scan(Scan),
    /// Run the seeded property suite.
    Verify {
        /// Samples per property.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    ToBounded,
    ToUnbounded,
}

#[derive(Debug, Subcommand)]
pub enum Scan {
    /// Finite-T definition against its limit over a grid of T.
    Convergence {
        #[arg(long = "def", value_parser = parse_finite_definition)]
        definition: FiniteDefinition,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        t: f64,
        /// `start:stop:logN` (N log-spaced points) or a comma list.
        #[arg(long = "T-grid", default_value = "1e2:1e5:log4", value_parser = parse_grid)]
        grid: Grid,
    },
    /// Both limit definitions at x = ct(1 - eps).
    LightCone {
        #[arg(long)]
        t: f64,
        /// Descending comma list of eps in (0, 1).
        #[arg(long, default_value = "1e-2,1e-4,1e-6,1e-8", value_parser = parse_list)]
        eps: Grid,
    },
}

/// A parsed list of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

fn parse_light_speed(s: &str) -> Result<LightSpeed, String> {
    if s.eq_ignore_ascii_case("si") {
        return Ok(LightSpeed::SI);
    }
    let c: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    LightSpeed::new(c).map_err(|e| e.to_string())
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

fn parse_definition(s: &str) -> Result<DefinitionTag, String> {
    s.parse()
        .map_err(|e: rs_velocity_core::VelocityError| e.to_string())
}

fn parse_law(s: &str) -> Result<CompositionTag, String> {
    s.parse()
        .map_err(|e: rs_velocity_core::VelocityError| e.to_string())
}

fn parse_finite_definition(s: &str) -> Result<FiniteDefinition, String> {
    s.parse()
        .map_err(|e: rs_velocity_core::VelocityError| e.to_string())
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse().map_err(|e| format!("`{s}`: {e}"))
}

pub fn parse_observation(s: &str) -> Result<ObservationRecord, String> {
    let fields = s.split(',').map(parse_f64).collect::<Result<Vec<_>, _>>()?;
    let obs = match fields.as_slice() {
        [x, t] => ObservationRecord::with_default_regularization(*x, *t),
        [x, t, t_reg] => ObservationRecord::new(*x, *t, *t_reg),
        _ => return Err(format!("expected `x,t` or `x,t,T`, got `{s}`")),
    };
    obs.map_err(|e| e.to_string())
}

fn parse_list(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(parse_f64)
        .collect::<Result<_, _>>()
        .map(Grid)
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [_] => parse_list(s),
        [start, stop, count] => {
            let (start, stop) = (parse_f64(start)?, parse_f64(stop)?);
            let n: usize = count
                .strip_prefix("log")
                .ok_or_else(|| format!("expected `logN` as the third field, got `{count}`"))?
                .parse()
                .map_err(|e| format!("`{count}`: {e}"))?;
            if !(start > 0.0 && stop > start && n >= 2) {
                return Err(format!(
                    "log grid needs 0 < start < stop and at least 2 points, got `{s}`"
                ));
            }
            let (lo, hi) = (start.log10(), stop.log10());
            let step = (hi - lo) / (n - 1) as f64;
            let mut points: Vec<f64> = (0..n).map(|i| 10f64.powf(lo + step * i as f64)).collect();
            points[0] = start;
            points[n - 1] = stop;
            Ok(Grid(points))
        }
        _ => Err(format!(
            "expected `start:stop:logN` or a comma list, got `{s}`"
        )),
    }
}
