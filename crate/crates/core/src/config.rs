//! TOML run configuration with flat keys named after the model symbols.
//!
//! ```toml
//! preset = "dmso-pmda-oda"   # optional base; any key below overrides it
//! beta1 = 1.3
//! beta2 = 0.018
//! chi = 0.425
//! mu_p_star = 0.1
//! mu_G_star = 0.1
//! gamma_star = 20.0
//! N = 301
//! dt_star = 0.025
//! tolerance = 1e-4
//! t_final = 100.0
//! sample_every = 4
//! schedule = [{ t_end = 0.5, force = 0.0 }, { t_end = 1.0, force = 1.0 }]
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{preset, CharacteristicTime, ExperimentPreset};
use crate::ivp1d::{LoadSchedule, LoadSegment, NondimParams};
use crate::solver::{PdeScheme, SolverConfig};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_p_star: Option<f64>,
    #[serde(rename = "mu_G_star", skip_serializing_if = "Option::is_none")]
    pub mu_g_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_star: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_every: Option<usize>,
    #[serde(rename = "P_inf_star", skip_serializing_if = "Option::is_none")]
    pub p_inf_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_inner_iters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode_substeps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pde_scheme: Option<PdeScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pde_substeps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pde_substep_safety: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dp_per_substep: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic_unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<LoadSegment>>,
}

fn require<T>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::config(field, "missing required field"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            // Point at the offending key when toml names one.
            let field = msg
                .split('`')
                .nth(1)
                .map(str::to_string)
                .unwrap_or_else(|| "config".to_string());
            Error::config(field, msg)
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::config("config", e.to_string()))
    }

    /// Every field spelled out, no preset reference.
    pub fn from_preset(p: &ExperimentPreset) -> Self {
        RunConfig {
            preset: None,
            name: Some(p.name.clone()),
            beta1: Some(p.params.beta1),
            beta2: Some(p.params.beta2),
            chi: Some(p.params.chi),
            mu_p_star: Some(p.params.mu_p_star),
            mu_g_star: Some(p.params.mu_g_star),
            gamma_star: Some(p.params.gamma_star),
            n: Some(p.n),
            dt_star: Some(p.solver.dt_star),
            tolerance: Some(p.solver.tolerance),
            t_final: Some(p.t_final),
            sample_every: Some(p.sample_every),
            p_inf_star: Some(p.schedule.p_inf_star),
            max_inner_iters: Some(p.solver.max_inner_iters),
            ode_substeps: Some(p.solver.ode_substeps),
            pde_scheme: Some(p.solver.pde_scheme),
            pde_substeps: Some(p.solver.pde_substeps),
            pde_substep_safety: Some(p.solver.pde_substep_safety),
            max_dp_per_substep: Some(p.solver.max_dp_per_substep),
            epsilon_floor: Some(p.solver.epsilon_floor),
            characteristic_time: Some(p.characteristic_time.value),
            characteristic_unit: Some(p.characteristic_time.unit.clone()),
            out: None,
            schedule: Some(p.schedule.segments.clone()),
        }
    }

    /// Builds the validated experiment: the named preset (if any) with every
    /// present key applied on top.
    pub fn resolve(&self) -> Result<ExperimentPreset> {
        let base = self.preset.as_deref().map(preset).transpose()?;
        let params = NondimParams {
            beta1: require(self.beta1.or(base.as_ref().map(|b| b.params.beta1)), "beta1")?,
            beta2: require(self.beta2.or(base.as_ref().map(|b| b.params.beta2)), "beta2")?,
            chi: require(self.chi.or(base.as_ref().map(|b| b.params.chi)), "chi")?,
            mu_p_star: require(self.mu_p_star.or(base.as_ref().map(|b| b.params.mu_p_star)), "mu_p_star")?,
            mu_g_star: require(self.mu_g_star.or(base.as_ref().map(|b| b.params.mu_g_star)), "mu_G_star")?,
            gamma_star: require(self.gamma_star.or(base.as_ref().map(|b| b.params.gamma_star)), "gamma_star")?,
        };
        let n = require(self.n.or(base.as_ref().map(|b| b.n)), "N")?;
        let t_final = require(self.t_final.or(base.as_ref().map(|b| b.t_final)), "t_final")?;
        let d = base.as_ref().map(|b| b.solver).unwrap_or_default();
        let solver = SolverConfig {
            dt_star: self.dt_star.unwrap_or(d.dt_star),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
            max_inner_iters: self.max_inner_iters.unwrap_or(d.max_inner_iters),
            pde_substep_safety: self.pde_substep_safety.unwrap_or(d.pde_substep_safety),
            ode_substeps: self.ode_substeps.unwrap_or(d.ode_substeps),
            epsilon_floor: self.epsilon_floor.unwrap_or(d.epsilon_floor),
            pde_scheme: self.pde_scheme.unwrap_or(d.pde_scheme),
            pde_substeps: self.pde_substeps.unwrap_or(d.pde_substeps),
            max_dp_per_substep: self.max_dp_per_substep.unwrap_or(d.max_dp_per_substep),
        };
        let mut schedule = match (&self.schedule, &base) {
            (Some(segs), _) => LoadSchedule {
                segments: segs.clone(),
                p_inf_star: 0.0,
            },
            (None, Some(b)) => b.schedule.clone(),
            (None, None) => LoadSchedule::free_swelling(),
        };
        if let Some(p) = self.p_inf_star {
            schedule.p_inf_star = p;
        }
        let characteristic_time = CharacteristicTime {
            value: self
                .characteristic_time
                .or(base.as_ref().map(|b| b.characteristic_time.value))
                .unwrap_or(1.0),
            unit: self
                .characteristic_unit
                .clone()
                .or(base.as_ref().map(|b| b.characteristic_time.unit.clone()))
                .unwrap_or_else(|| "t*".to_string()),
        };
        let name = self
            .name
            .clone()
            .or(base.as_ref().map(|b| b.name.clone()))
            .unwrap_or_else(|| "custom".to_string());
        let resolved = ExperimentPreset {
            name,
            params,
            n,
            solver,
            schedule,
            t_final,
            sample_every: self.sample_every.or(base.as_ref().map(|b| b.sample_every)).unwrap_or(1),
            characteristic_time,
        };
        resolved.validate()?;
        Ok(resolved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::PRESET_NAMES;

    fn field_of(e: Error) -> String {
        match e {
            Error::Config { field, .. } => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn presets_round_trip_through_toml() {
        for name in PRESET_NAMES {
            let p = preset(name).unwrap();
            let text = RunConfig::from_preset(&p).to_toml().unwrap();
            let back = RunConfig::parse(&text).unwrap().resolve().unwrap();
            assert_eq!(back, p, "{name}:\n{text}");
        }
    }

    #[test]
    fn preset_name_alone_resolves_to_preset() {
        let c = RunConfig::parse("preset = \"nmp-pmda-oda\"").unwrap();
        assert_eq!(c.resolve().unwrap(), preset("nmp-pmda-oda").unwrap());
    }

    #[test]
    fn overrides_apply_on_top_of_preset() {
        let c = RunConfig::parse("preset = \"dmso-pmda-oda\"\nN = 41\nchi = 0.5\n").unwrap();
        let r = c.resolve().unwrap();
        assert_eq!((r.n, r.params.chi, r.params.beta1), (41, 0.5, 1.3));
    }

    #[test]
    fn missing_fields_are_named() {
        let full = "beta1 = 1.3\nbeta2 = 0.018\nchi = 0.425\nmu_p_star = 0.1\nmu_G_star = 0.1\ngamma_star = 20.0\nN = 21\nt_final = 1.0\n";
        assert!(RunConfig::parse(full).unwrap().resolve().is_ok());
        for key in ["beta1", "beta2", "chi", "mu_p_star", "mu_G_star", "gamma_star", "N", "t_final"] {
            let text: String = full.lines().filter(|l| !l.starts_with(&format!("{key} "))).map(|l| format!("{l}\n")).collect();
            let err = RunConfig::parse(&text).unwrap().resolve().unwrap_err();
            assert_eq!(field_of(err), key);
        }
    }

    #[test]
    fn invalid_values_are_named() {
        let err = RunConfig::parse("preset = \"dmso-pmda-oda\"\nbeta2 = -1.0").unwrap().resolve().unwrap_err();
        assert_eq!(field_of(err), "beta2");
        let err = RunConfig::parse("preset = \"dmso-pmda-oda\"\nN = 2").unwrap().resolve().unwrap_err();
        assert_eq!(field_of(err), "N");
        let err = RunConfig::parse("preset = \"dmso-pmda-oda\"\ndt_star = 0.0").unwrap().resolve().unwrap_err();
        assert_eq!(field_of(err), "dt_star");
        let err = RunConfig::parse("preset = \"nope\"").unwrap().resolve().unwrap_err();
        assert_eq!(field_of(err), "preset");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = RunConfig::parse("beta3 = 1.0").unwrap_err();
        assert_eq!(field_of(err), "beta3");
    }

    #[test]
    fn schedule_table_syntax() {
        let c = RunConfig::parse(
            "preset = \"dmso-pmda-oda\"\nt_final = 1.0\nschedule = [{ t_end = 0.5, force = 0.0 }, { t_end = 1.0, force = 2.0 }]\n",
        )
        .unwrap();
        let r = c.resolve().unwrap();
        assert_eq!(r.schedule.force_at(0.75).unwrap(), 2.0);
        let bad = RunConfig::parse("preset = \"dmso-pmda-oda\"\nt_final = 2.0\nschedule = [{ t_end = 1.0, force = 0.0 }]\n")
            .unwrap()
            .resolve()
            .unwrap_err();
        assert_eq!(field_of(bad), "schedule");
    }
}
