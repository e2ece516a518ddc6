//! `nanotemp`: minimal group sizes and length scales for local temperature.

mod output;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nanotemp_core::debye::ebar;
use nanotemp_core::material::{load_table, lookup};
use nanotemp_core::solver::{lmin_point, log_grid, nmin_at, nmin_curve};
use nanotemp_core::Material;
use serde::Serialize;

use output::Row;

#[derive(Parser)]
#[command(name = "nanotemp", version, about = "Minimal length scales on which local temperature exists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit n_min over a log-spaced grid of T / Theta.
    NminCurve(CurveArgs),
    /// Minimal group size and length for one material.
    Lmin(LminArgs),
    /// Reduced thermal energy per site.
    Ebar(EbarArgs),
    /// Run the exact small-chain property suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Criterion {
    /// Width of the thermal energy window.
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Accepted relative deviation of the local temperature.
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    delta: f64,
}

#[derive(Args)]
struct MaterialArgs {
    /// Built-in (iron, carbon, silicon) or user material.
    #[arg(long)]
    material: Option<String>,
    /// JSON array of {name, theta_K, a0_angstrom}; shadows the built-ins.
    #[arg(long, env = "NANOTEMP_MATERIALS")]
    materials: Option<PathBuf>,
}

impl MaterialArgs {
    fn resolve(&self) -> Result<Option<Material>> {
        let Some(name) = &self.material else { return Ok(None) };
        let user = match &self.materials {
            Some(path) => load_table(path)?,
            None => Vec::new(),
        };
        Ok(Some(lookup(name, &user)?))
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Temperature {
    /// T / Theta.
    #[arg(long = "t-ratio", allow_hyphen_values = true)]
    t_ratio: Option<f64>,
    /// Temperature in kelvin; needs --material.
    #[arg(long = "T", requires = "material", allow_hyphen_values = true)]
    kelvin: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 1e-4, allow_hyphen_values = true)]
    tmin: f64,
    #[arg(long, default_value_t = 1e4, allow_hyphen_values = true)]
    tmax: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[command(flatten)]
    criterion: Criterion,
    #[command(flatten)]
    material: MaterialArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LminArgs {
    #[command(flatten)]
    temperature: Temperature,
    #[command(flatten)]
    criterion: Criterion,
    #[command(flatten)]
    material: MaterialArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EbarArgs {
    #[command(flatten)]
    temperature: Temperature,
    #[command(flatten)]
    material: MaterialArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Group sizes to check.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    n: Vec<usize>,
    /// Group counts to check; skewness must fall along this list.
    #[arg(long, value_delimiter = ',', default_value = "4,5")]
    groups: Vec<usize>,
    /// Occupations per mode kept in the truncated basis.
    #[arg(long = "d", default_value_t = 4, value_parser = clap::value_parser!(u16).range(2..))]
    local_dim: u16,
    /// Largest basis diagonalized densely.
    #[arg(long, default_value_t = 1024)]
    max_dim: usize,
}

#[derive(Serialize)]
struct LminRecord<'a> {
    material: &'a str,
    #[serde(rename = "T_K")]
    kelvin: f64,
    #[serde(flatten)]
    row: Row,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `T / Theta` from either flag; kelvin needs a material.
fn t_ratio(temperature: &Temperature, material: Option<&Material>) -> Result<f64> {
    match (temperature.t_ratio, temperature.kelvin, material) {
        (Some(t), None, _) => Ok(t),
        (None, Some(k), Some(m)) => Ok(m.t_ratio(k)),
        (None, Some(_), None) => bail!("--T needs --material"),
        _ => bail!("give exactly one of --t-ratio and --T"),
    }
}

fn curve(args: &CurveArgs) -> Result<()> {
    let material = args.material.resolve()?;
    let grid = log_grid(args.tmin, args.tmax, args.points)?;
    let points = nmin_curve(&grid, args.criterion.alpha, args.criterion.delta, material.as_ref())?;
    let rows: Vec<Row> = points.iter().map(Row::from).collect();
    let text = match args.format {
        Format::Csv => output::csv(&rows),
        Format::Json => output::json(&rows),
    };
    emit(&text, args.out.as_deref())
}

fn lmin(args: &LminArgs) -> Result<()> {
    let material = args.material.resolve()?.context("lmin needs --material")?;
    let t = t_ratio(&args.temperature, Some(&material))?;
    let kelvin = t * material.theta_k;
    let (alpha, delta) = (args.criterion.alpha, args.criterion.delta);
    let point = match args.temperature.kelvin {
        Some(k) => lmin_point(&material, k, alpha, delta)?,
        None => nmin_at(t, alpha, delta)?.with_lattice_constant(material.a0_m()),
    };
    let record = LminRecord { material: &material.name, kelvin, row: Row::from(&point) };
    let text = match args.format {
        Format::Csv => output::lmin_csv(record.material, kelvin, &record.row),
        Format::Json => output::json(&record),
    };
    emit(&text, args.out.as_deref())
}

fn ebar_cmd(args: &EbarArgs) -> Result<()> {
    let material = args.material.resolve()?;
    let t = t_ratio(&args.temperature, material.as_ref())?;
    println!("{}", output::float(ebar(t)?));
    Ok(())
}

fn verify_cmd(args: &VerifyArgs) -> bool {
    let cfg = verify::Config {
        sizes: args.n.clone(),
        groups: args.groups.clone(),
        local_dim: args.local_dim as usize,
        max_dim: args.max_dim,
    };
    let checks = verify::run(&cfg);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| c.status == verify::Status::Fail).count();
    println!("{} checks, {failed} failed", checks.len());
    failed == 0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::NminCurve(a) => curve(a),
        Command::Lmin(a) => lmin(a),
        Command::Ebar(a) => ebar_cmd(a),
        Command::Verify(a) => {
            return if verify_cmd(a) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
