//! Named parameter sets and the studies built on the solver: free-swell
//! mass uptake, the compress/unload cycle, grid convergence and comparison
//! against digitized curves.

use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ivp1d::{normalized_mass, Grid, LoadSchedule, NondimParams, State1D};
use crate::solver::{run, RunRecord, SolverConfig};

/// Last two mass samples must agree to this before the final sample is
/// trusted as the plateau.
pub const FLATNESS_TOL: f64 = 1e-5;

pub const PRESET_NAMES: [&str; 4] = ["dmso-pmda-oda", "nmp-pmda-oda", "water-hfpe", "compress-cycle"];

/// Physical time unit of `t* = 1`, for labelling only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicTime {
    pub value: f64,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPreset {
    pub name: String,
    pub params: NondimParams,
    pub n: usize,
    pub solver: SolverConfig,
    pub schedule: LoadSchedule,
    pub t_final: f64,
    pub sample_every: usize,
    pub characteristic_time: CharacteristicTime,
}

impl ExperimentPreset {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        Grid::new(self.n)?;
        self.solver.validate()?;
        self.schedule.validate()?;
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(Error::config("t_final", "must be finite and ≥ 0"));
        }
        if self.sample_every < 1 {
            return Err(Error::config("sample_every", "must be at least 1"));
        }
        self.schedule.force_at(self.t_final)?;
        Ok(())
    }

    pub fn is_free_swelling(&self) -> bool {
        self.schedule.segments.iter().all(|s| s.force == 0.0)
    }

    pub fn initial_state(&self) -> Result<State1D> {
        State1D::dry(self.n)
    }

    pub fn run(&self) -> Result<RunRecord> {
        self.validate()?;
        run(
            &self.initial_state()?,
            &self.schedule,
            &self.params,
            &self.solver,
            self.t_final,
            self.sample_every,
        )
    }
}

const DMSO: NondimParams = NondimParams {
    beta1: 1.3,
    beta2: 0.018,
    chi: 0.425,
    mu_p_star: 0.1,
    mu_g_star: 0.1,
    gamma_star: 20.0,
};

/// Free-swell horizon. The `g` field relaxes on a time scale of order ten,
/// and the wall roots follow it, so the plateau needs t* ≈ 60 to sit within
/// 1e−3 of the uniform equilibrium.
pub const FREE_SWELL_T_FINAL: f64 = 100.0;

fn free_swell(name: &str, params: NondimParams, t_char: f64, unit: &str) -> ExperimentPreset {
    ExperimentPreset {
        name: name.to_string(),
        params,
        n: 301,
        solver: SolverConfig::default(),
        schedule: LoadSchedule::free_swelling(),
        t_final: FREE_SWELL_T_FINAL,
        sample_every: 4,
        characteristic_time: CharacteristicTime {
            value: t_char,
            unit: unit.to_string(),
        },
    }
}

/// Looks up a named preset.
pub fn preset(name: &str) -> Result<ExperimentPreset> {
    let p = match name {
        "dmso-pmda-oda" => free_swell(name, DMSO, 10500.0, "min"),
        "nmp-pmda-oda" => free_swell(
            name,
            NondimParams {
                beta1: 1.4,
                beta2: 0.016,
                chi: 0.6,
                ..DMSO
            },
            245.0,
            "min",
        ),
        "water-hfpe" => free_swell(name, DMSO, 2800.0, "s"),
        "compress-cycle" => ExperimentPreset {
            schedule: LoadSchedule::from_pairs(&[(0.5, 0.0), (1.0, 1.0), (1.5, 0.0)])?,
            t_final: 1.5,
            sample_every: 1,
            ..free_swell(name, DMSO, 10500.0, "min")
        },
        other => {
            return Err(Error::config(
                "preset",
                format!("unknown preset '{other}'; expected one of {}", PRESET_NAMES.join(", ")),
            ))
        }
    };
    Ok(p)
}

/// Normalized free-swell uptake curve.
#[derive(Debug, Clone, PartialEq)]
pub struct MassUptake {
    pub record: RunRecord,
    pub m0: f64,
    pub m_inf: f64,
    /// `(t*, (m − m₀)/(m_∞ − m₀))` per sample.
    pub curve: Vec<(f64, f64)>,
}

/// Normalizes a record by its own first and last samples. With
/// `require_flat`, the last two samples must agree to [`FLATNESS_TOL`].
pub fn normalize_record(record: RunRecord, require_flat: bool) -> Result<MassUptake> {
    let m = &record.mass_curve;
    if m.len() < 2 {
        return Err(Error::config("t_final", "need at least two samples to normalize the mass curve"));
    }
    let (m0, m_inf) = (m[0], m[m.len() - 1]);
    let tail = (m[m.len() - 1] - m[m.len() - 2]).abs();
    if require_flat && tail >= FLATNESS_TOL {
        return Err(Error::config(
            "t_final",
            format!(
                "mass curve not flat at t* = {} (last samples differ by {tail:e}); increase t_final",
                record.times[record.times.len() - 1]
            ),
        ));
    }
    let curve = record
        .times
        .iter()
        .zip(m)
        .map(|(&t, &mi)| Ok((t, normalized_mass(mi, m0, m_inf)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MassUptake {
        record,
        m0,
        m_inf,
        curve,
    })
}

/// Runs a free-swell preset and normalizes by its own plateau.
pub fn run_mass_uptake(preset: &ExperimentPreset) -> Result<MassUptake> {
    normalize_record(preset.run()?, true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub grids: Vec<usize>,
    pub reference: usize,
    pub probe_z: f64,
    pub probe_t: f64,
    pub dt_star: f64,
    pub reference_value: f64,
    pub probe_values: Vec<f64>,
    pub errors: Vec<f64>,
    /// Relative slack allowed between consecutive errors.
    pub noise_band: f64,
    pub monotone: bool,
}

/// 5, 15, …, 345 and 351.
pub fn default_convergence_grids() -> Vec<usize> {
    let mut g: Vec<usize> = (5..=345).step_by(10).collect();
    g.push(351);
    g
}

pub const CONVERGENCE_REFERENCE: usize = 401;
pub const CONVERGENCE_NOISE_BAND: f64 = 0.05;

/// Linear interpolation of nodal values at `z`.
pub fn probe(p: &[f64], z: f64) -> Result<f64> {
    let grid = Grid::new(p.len())?;
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::domain("probe", format!("Z* = {z} outside [-1, 1]")));
    }
    let x = (z + 1.0) * (grid.n - 1) as f64 / 2.0;
    let i = (x.floor() as usize).min(p.len() - 2);
    let w = x - i as f64;
    if w == 0.0 {
        return Ok(p[i]);
    }
    Ok((1.0 - w) * p[i] + w * p[i + 1])
}

/// Runs every grid plus the reference in parallel and compares `p` at
/// `(probe_z, probe_t)`.
pub fn run_convergence_study(
    np: &NondimParams,
    schedule: &LoadSchedule,
    solver: &SolverConfig,
    grids: &[usize],
    reference: usize,
    probe_z: f64,
    probe_t: f64,
) -> Result<ConvergenceReport> {
    if grids.is_empty() {
        return Err(Error::config("grids", "no grids given"));
    }
    if let Some(&g) = grids.iter().find(|&&g| g >= reference) {
        return Err(Error::config(
            "grids",
            format!("grid {g} is not coarser than the reference {reference}"),
        ));
    }
    let mut all: Vec<usize> = grids.to_vec();
    all.push(reference);
    let values: Vec<f64> = all
        .par_iter()
        .map(|&n| {
            let initial = State1D::dry(n)?;
            let rec = run(&initial, schedule, np, solver, probe_t, usize::MAX).map_err(|e| tag_grid(e, n))?;
            probe(rec.p_fields.last().expect("run always samples"), probe_z)
        })
        .collect::<Result<Vec<_>>>()?;
    let reference_value = values[values.len() - 1];
    let probe_values = values[..values.len() - 1].to_vec();
    let errors: Vec<f64> = probe_values.iter().map(|v| (v - reference_value).abs()).collect();
    let monotone = errors
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + CONVERGENCE_NOISE_BAND));
    Ok(ConvergenceReport {
        grids: grids.to_vec(),
        reference,
        probe_z,
        probe_t,
        dt_star: solver.dt_star,
        reference_value,
        probe_values,
        errors,
        noise_band: CONVERGENCE_NOISE_BAND,
        monotone,
    })
}

fn tag_grid(e: Error, n: usize) -> Error {
    match e {
        Error::Domain { what, detail } => Error::Domain {
            what,
            detail: format!("grid {n}: {detail}"),
        },
        Error::Boundary(s) => Error::Boundary(format!("grid {n}: {s}")),
        Error::Io(s) => Error::Io(format!("grid {n}: {s}")),
        Error::Config { field, detail } => Error::Config {
            field,
            detail: format!("grid {n}: {detail}"),
        },
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveComparison {
    pub points: usize,
    pub rmse: f64,
    pub max_deviation: f64,
}

/// Reads a curve CSV: a `time` (or `t_star`) column and a
/// `normalized_mass` column, other columns ignored.
pub fn read_curve(reader: impl Read) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |names: &[&str]| headers.iter().position(|h| names.contains(&h));
    let (Some(ti), Some(mi)) = (col(&["time", "t_star"]), col(&["normalized_mass"])) else {
        return Err(Error::config(
            "curve",
            format!(
                "expected header 'time,normalized_mass', found '{}'",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    };
    let mut out = Vec::new();
    for (k, row) in rdr.records().enumerate() {
        let row = row?;
        let parse = |i: usize| -> Result<f64> {
            let cell = row.get(i).unwrap_or("");
            cell.parse::<f64>()
                .map_err(|_| Error::config("curve", format!("row {}: '{cell}' is not a number", k + 2)))
        };
        out.push((parse(ti)?, parse(mi)?));
    }
    Ok(out)
}

pub fn read_curve_file(path: &Path) -> Result<Vec<(f64, f64)>> {
    let f = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_curve(f)
}

fn interpolate(curve: &[(f64, f64)], t: f64) -> Option<f64> {
    let k = curve.partition_point(|&(ti, _)| ti < t);
    if k < curve.len() && curve[k].0 == t {
        return Some(curve[k].1);
    }
    if k == 0 || k == curve.len() {
        return None;
    }
    let (t0, y0) = curve[k - 1];
    let (t1, y1) = curve[k];
    Some(y0 + (y1 - y0) * (t - t0) / (t1 - t0))
}

/// Interpolates `simulated` onto the external times and reports the RMSE
/// and largest absolute deviation.
pub fn compare_external_curve(simulated: &[(f64, f64)], external: &[(f64, f64)]) -> Result<CurveComparison> {
    let increasing = |c: &[(f64, f64)]| c.windows(2).all(|w| w[1].0 > w[0].0);
    if external.len() < 2 || !increasing(external) {
        return Err(Error::config("curve", "external curve needs at least two strictly increasing times"));
    }
    if simulated.len() < 2 || !increasing(simulated) {
        return Err(Error::config("curve", "simulated curve needs at least two strictly increasing times"));
    }
    let mut sum_sq = 0.0;
    let mut max_dev: f64 = 0.0;
    for &(t, y) in external {
        let s = interpolate(simulated, t).ok_or_else(|| {
            Error::config(
                "curve",
                format!(
                    "time {t} lies outside the simulated range [{}, {}]",
                    simulated[0].0,
                    simulated[simulated.len() - 1].0
                ),
            )
        })?;
        let d = s - y;
        sum_sq += d * d;
        max_dev = max_dev.max(d.abs());
    }
    Ok(CurveComparison {
        points: external.len(),
        rmse: (sum_sq / external.len() as f64).sqrt(),
        max_deviation: max_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn preset_parameters() {
        let d = preset("dmso-pmda-oda").unwrap();
        assert_eq!((d.params.beta1, d.params.chi, d.params.beta2), (1.3, 0.425, 0.018));
        assert_eq!((d.params.mu_p_star, d.params.mu_g_star, d.params.gamma_star), (0.1, 0.1, 20.0));
        assert_eq!(d.characteristic_time, CharacteristicTime { value: 10500.0, unit: "min".into() });
        let n = preset("nmp-pmda-oda").unwrap();
        assert_eq!((n.params.beta1, n.params.chi, n.params.beta2), (1.4, 0.6, 0.016));
        assert_eq!(n.characteristic_time.value, 245.0);
        let w = preset("water-hfpe").unwrap();
        assert_eq!(w.params, d.params);
        assert_eq!(w.characteristic_time, CharacteristicTime { value: 2800.0, unit: "s".into() });
        for name in PRESET_NAMES {
            let p = preset(name).unwrap();
            assert_eq!(p.n, 301);
            assert_eq!(p.solver.dt_star, 0.025);
            assert_eq!(p.solver.tolerance, 1e-4);
            p.validate().unwrap();
        }
        assert!(preset("glycerol").is_err());
    }

    #[test]
    fn compress_cycle_schedule() {
        let c = preset("compress-cycle").unwrap();
        let forces: Vec<f64> = c.schedule.segments.iter().map(|s| s.force).collect();
        assert_eq!(forces, vec![0.0, 1.0, 0.0]);
        let ends: Vec<f64> = c.schedule.segments.iter().map(|s| s.t_end).collect();
        assert_eq!(ends, vec![0.5, 1.0, 1.5]);
        assert_eq!(c.t_final, 1.5);
        assert_eq!(c.params, preset("dmso-pmda-oda").unwrap().params);
        assert!(!c.is_free_swelling());
    }

    #[test]
    fn probe_interpolates() {
        let p = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(probe(&p, -1.0).unwrap(), 1.0);
        assert_eq!(probe(&p, 1.0).unwrap(), 4.0);
        assert_relative_eq!(probe(&p, 0.0).unwrap(), 2.5, max_relative = 1e-15);
        assert!(probe(&p, 1.5).is_err());
        assert_eq!(probe(&[1.0, 5.0, 2.0], 0.0).unwrap(), 5.0);
    }

    #[test]
    fn default_grid_list() {
        let g = default_convergence_grids();
        assert_eq!(g[..3], [5, 15, 25]);
        assert_eq!(g[g.len() - 2..], [345, 351]);
        assert!(g.iter().all(|n| n % 2 == 1));
    }

    #[test]
    fn convergence_study_rejects_bad_grids_and_matches_self() {
        let d = preset("dmso-pmda-oda").unwrap();
        let err = run_convergence_study(&d.params, &d.schedule, &d.solver, &[41], 41, 0.0, 0.1).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
        let r = run_convergence_study(&d.params, &d.schedule, &d.solver, &[21, 41], 81, 0.0, 0.1).unwrap();
        assert_eq!(r.errors.len(), 2);
        assert!(r.errors[1] < r.errors[0]);
        // Same grid twice gives identical probes.
        let r = run_convergence_study(&d.params, &d.schedule, &d.solver, &[21, 21], 41, 0.0, 0.1).unwrap();
        assert_eq!(r.probe_values[0], r.probe_values[1]);
    }

    #[test]
    fn normalization_endpoints_and_flatness_guard() {
        let rec = RunRecord {
            times: vec![0.0, 1.0, 2.0],
            mass_curve: vec![1.0, 1.2, 1.2],
            ..Default::default()
        };
        let u = normalize_record(rec.clone(), true).unwrap();
        assert_eq!(u.curve, vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)]);
        let steep = RunRecord { mass_curve: vec![1.0, 1.1, 1.2], ..rec };
        match normalize_record(steep.clone(), true) {
            Err(Error::Config { field, .. }) => assert_eq!(field, "t_final"),
            other => panic!("{other:?}"),
        }
        assert!(normalize_record(steep, false).is_ok());
    }

    #[test]
    fn curve_comparison_examples() {
        let sim = vec![(0.0, 0.0), (1.0, 0.5), (2.0, 1.0)];
        let c = compare_external_curve(&sim, &sim).unwrap();
        assert_eq!((c.rmse, c.max_deviation, c.points), (0.0, 0.0, 3));
        let shifted: Vec<_> = sim.iter().map(|&(t, y)| (t, y + 0.1)).collect();
        let c = compare_external_curve(&sim, &shifted).unwrap();
        assert_relative_eq!(c.rmse, 0.1, max_relative = 1e-12);
        assert_relative_eq!(c.max_deviation, 0.1, max_relative = 1e-12);
        let mid = compare_external_curve(&sim, &[(0.5, 0.25), (1.5, 0.75)]).unwrap();
        assert_eq!(mid.rmse, 0.0);
        assert!(compare_external_curve(&sim, &[(0.5, 0.2), (3.0, 1.0)]).is_err());
        assert!(compare_external_curve(&sim, &[(1.0, 0.2)]).is_err());
        assert!(compare_external_curve(&sim, &[(1.0, 0.2), (0.5, 0.1)]).is_err());
    }

    #[test]
    fn curve_csv_parsing() {
        let c = read_curve("time,normalized_mass\n0,0\n0.5,0.4\n".as_bytes()).unwrap();
        assert_eq!(c, vec![(0.0, 0.0), (0.5, 0.4)]);
        assert!(read_curve("t,m\n0,0\n".as_bytes()).is_err());
        assert!(read_curve("time,normalized_mass\n0,abc\n".as_bytes()).is_err());
    }
}
