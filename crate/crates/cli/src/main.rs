//! `viscoswell` command-line driver.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use viscoswell::config::RunConfig;
use viscoswell::experiments::{
    compare_external_curve, default_convergence_grids, normalize_record, preset, read_curve_file, run_convergence_study,
    ExperimentPreset, MassUptake, CONVERGENCE_REFERENCE, PRESET_NAMES,
};
use viscoswell::output::{write_convergence_file, write_fields_file, write_mass_file};
use viscoswell::solver::steady_state_oracle;
use viscoswell::PdeScheme;
use viscoswell::{Error, Result};

#[derive(Parser)]
#[command(name = "viscoswell", version, about = "Fluid uptake in a swelling viscoelastic slab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write fields.csv, mass.csv and summary.json.
    Run(Common),
    /// Grid-convergence study; writes convergence.csv and summary.json.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Probe location Z*.
        #[arg(long, default_value_t = 0.0)]
        probe_z: f64,
        /// Probe time t*.
        #[arg(long, default_value_t = 0.5)]
        probe_t: f64,
        /// Comma-separated grid sizes (default 5,15,…,345,351).
        #[arg(long, value_delimiter = ',')]
        grids: Option<Vec<usize>>,
        /// PDE time integrator for the study: `explicit` or `implicit`.
        /// The explicit sub-step shrinks with the grid, so its time error
        /// varies smoothly with N.
        #[arg(long, default_value = "explicit")]
        scheme: String,
    },
    /// Compare a simulated mass curve with a `time,normalized_mass` CSV.
    Compare {
        #[command(flatten)]
        common: Common,
        /// External curve to compare against.
        curve: PathBuf,
        /// Use this mass.csv instead of running the simulation.
        #[arg(long)]
        simulated: Option<PathBuf>,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Built-in parameter set; config keys override it.
    #[arg(long)]
    preset: Option<String>,
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "t-final")]
    t_final: Option<f64>,
    /// Node count (the reference grid for `converge`).
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
}

impl Common {
    fn resolve(&self) -> Result<(ExperimentPreset, PathBuf)> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if self.config.is_none() && self.preset.is_none() {
            return Err(Error::config("preset", "give --preset <name> or --config <file>"));
        }
        if let Some(p) = &self.preset {
            cfg.preset = Some(p.clone());
        }
        if self.t_final.is_some() {
            cfg.t_final = self.t_final;
        }
        if self.dt.is_some() {
            cfg.dt_star = self.dt;
        }
        let out = self.out.clone().or(cfg.out.clone()).unwrap_or_else(|| PathBuf::from("out"));
        Ok((cfg.resolve()?, out))
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn simulate(p: &ExperimentPreset) -> Result<MassUptake> {
    normalize_record(p.run()?, p.is_free_swelling())
}

fn cmd_run(common: &Common) -> Result<()> {
    let (mut p, out) = common.resolve()?;
    if let Some(n) = common.grid {
        p.n = n;
        p.validate()?;
    }
    let uptake = simulate(&p)?;
    ensure_dir(&out)?;
    write_fields_file(&out.join("fields.csv"), &uptake.record)?;
    write_mass_file(&out.join("mass.csv"), &uptake)?;

    let rec = &uptake.record;
    let last = rec.final_state().expect("a run always has samples");
    let force = p.schedule.force_at(p.t_final)?;
    let oracle = match steady_state_oracle(&p.params, force) {
        Ok((p_eq, g_eq)) => {
            let dev = last.p.iter().map(|x| ((x - p_eq) / p_eq).abs()).fold(0.0, f64::max);
            json!({ "p_eq": p_eq, "g_eq": g_eq, "max_relative_deviation": dev })
        }
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let iters = &rec.inner_iteration_counts;
    let mean = if iters.is_empty() { 0.0 } else { iters.iter().sum::<usize>() as f64 / iters.len() as f64 };
    let summary = json!({
        "name": p.name,
        "params": to_value(&p.params),
        "N": p.n,
        "solver": to_value(&p.solver),
        "schedule": to_value(&p.schedule),
        "t_final": p.t_final,
        "characteristic_time": to_value(&p.characteristic_time),
        "samples": rec.len(),
        "final_boundary_p": rec.boundary_p.last(),
        "m0": uptake.m0,
        "m_inf": uptake.m_inf,
        "steady_state_oracle": oracle,
        "inner_iterations": {
            "steps": iters.len(),
            "max": iters.iter().max(),
            "mean": mean,
        },
        "floor_activations": rec.floor_activations,
        "diagnostics": rec.diagnostics,
    });
    write_json(&out.join("summary.json"), &summary)?;
    eprintln!("wrote {}", out.display());
    Ok(())
}

fn cmd_converge(common: &Common, probe_z: f64, probe_t: f64, grids: Option<Vec<usize>>, scheme: &str) -> Result<()> {
    let (mut p, out) = common.resolve()?;
    p.solver.pde_scheme = match scheme {
        "explicit" => PdeScheme::Explicit,
        "implicit" => PdeScheme::Implicit,
        other => return Err(Error::config("scheme", format!("unknown scheme `{other}`"))),
    };
    let grids = grids.unwrap_or_else(default_convergence_grids);
    let reference = common.grid.unwrap_or(CONVERGENCE_REFERENCE);
    let report = run_convergence_study(&p.params, &p.schedule, &p.solver, &grids, reference, probe_z, probe_t)?;
    ensure_dir(&out)?;
    write_convergence_file(&out.join("convergence.csv"), &report)?;
    write_json(&out.join("summary.json"), &json!({ "name": p.name, "convergence": to_value(&report) }))?;
    eprintln!(
        "errors {} within the {}% band; wrote {}",
        if report.monotone { "nonincreasing" } else { "NOT nonincreasing" },
        report.noise_band * 100.0,
        out.display()
    );
    Ok(())
}

fn cmd_compare(common: &Common, curve: &Path, simulated: Option<&Path>) -> Result<()> {
    let external = read_curve_file(curve)?;
    let sim = match simulated {
        Some(path) => read_curve_file(path)?,
        None => simulate(&common.resolve()?.0)?.curve,
    };
    let c = compare_external_curve(&sim, &external)?;
    println!("{}", serde_json::to_string_pretty(&to_value(&c)).map_err(|e| Error::Io(e.to_string()))?);
    Ok(())
}

fn cmd_presets() -> Result<()> {
    for name in PRESET_NAMES {
        let p = preset(name)?;
        let forces: Vec<String> = p.schedule.segments.iter().map(|s| s.force.to_string()).collect();
        println!(
            "{name}: beta1={} beta2={} chi={} mu_p_star={} mu_G_star={} gamma_star={} N={} dt_star={} t_final={} F*=[{}] t_char={} {}",
            p.params.beta1,
            p.params.beta2,
            p.params.chi,
            p.params.mu_p_star,
            p.params.mu_g_star,
            p.params.gamma_star,
            p.n,
            p.solver.dt_star,
            p.t_final,
            forces.join(","),
            p.characteristic_time.value,
            p.characteristic_time.unit
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(c) => cmd_run(c),
        Command::Converge {
            common,
            probe_z,
            probe_t,
            grids,
            scheme,
        } => cmd_converge(common, *probe_z, *probe_t, grids.clone(), scheme),
        Command::Compare {
            common,
            curve,
            simulated,
        } => cmd_compare(common, curve, simulated.as_deref()),
        Command::Presets => cmd_presets(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
