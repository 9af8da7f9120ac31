//! Staggered time integration of the coupled `p`/`g` system.
//!
//! Each macro step iterates to a fixed point: wall roots from the current
//! `g` iterate, a `p` advance with `g` frozen, then a `g` advance with the
//! new `p` frozen, until successive `p` iterates agree in the Euclidean norm.
//! `p` and `g` are committed together.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ivp1d::{
    self, boundary_root, g_rate, max_diffusivity, rhs_into, rhs_jacobian_into, LoadSchedule, NondimParams,
    RhsWorkspace, State1D, BOUNDARY_P_MAX, BOUNDARY_P_MIN,
};
use crate::roots::bisect;

/// How the `p` equation is advanced across one macro step with `g` frozen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdeScheme {
    /// Backward Euler sub-steps solved by Newton on the tridiagonal Jacobian.
    #[default]
    Implicit,
    /// Forward Euler sub-steps under the diffusive stability bound.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub dt_star: f64,
    /// Threshold on `‖p^{l+1} − p^l‖₂` between inner iterates.
    pub tolerance: f64,
    pub max_inner_iters: usize,
    /// Explicit scheme: sub-step is this fraction of `β₂ ΔZ² / D_max`.
    pub pde_substep_safety: f64,
    /// RK4 sub-steps per macro step for the `g` equation.
    pub ode_substeps: usize,
    /// `p` is never evaluated below `1 + epsilon_floor`.
    pub epsilon_floor: f64,
    pub pde_scheme: PdeScheme,
    /// Implicit scheme: initial sub-steps per macro step.
    pub pde_substeps: usize,
    /// Implicit scheme: a sub-step that moves any node by more than this is
    /// retried at half the size.
    pub max_dp_per_substep: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dt_star: 0.025,
            tolerance: 1e-4,
            max_inner_iters: 50,
            pde_substep_safety: 0.4,
            ode_substeps: 10,
            epsilon_floor: ivp1d::DEFAULT_P_FLOOR,
            pde_scheme: PdeScheme::Implicit,
            pde_substeps: 10,
            max_dp_per_substep: 0.02,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, detail: &str| Err(Error::config(field, detail.to_string()));
        if !(self.dt_star > 0.0 && self.dt_star.is_finite()) {
            return bad("dt_star", "must be positive and finite");
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance", "must be positive");
        }
        if self.max_inner_iters < 1 {
            return bad("max_inner_iters", "must be at least 1");
        }
        if !(self.pde_substep_safety > 0.0 && self.pde_substep_safety < 1.0) {
            return bad("pde_substep_safety", "must lie in (0, 1)");
        }
        if self.ode_substeps < 1 {
            return bad("ode_substeps", "must be at least 1");
        }
        if !(self.epsilon_floor > 0.0 && self.epsilon_floor < 1e-3) {
            return bad("epsilon_floor", "must lie in (0, 1e-3)");
        }
        if self.pde_substeps < 1 {
            return bad("pde_substeps", "must be at least 1");
        }
        if !(self.max_dp_per_substep > 0.0) {
            return bad("max_dp_per_substep", "must be positive");
        }
        Ok(())
    }
}

/// What happened inside one macro step.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepReport {
    /// `‖p^{l+1} − p^l‖₂` after each inner sweep.
    pub residuals: Vec<f64>,
    pub boundary_p: [f64; 2],
    /// Largest sign-change count seen in any wall root scan.
    pub boundary_sign_changes: usize,
    /// Node evaluations that hit the `p` floor.
    pub floor_activations: usize,
    /// PDE sub-steps taken, summed over inner sweeps.
    pub pde_substeps: usize,
}

impl StepReport {
    pub fn iterations(&self) -> usize {
        self.residuals.len()
    }
}

/// Sampled output of a run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunRecord {
    pub times: Vec<f64>,
    pub p_fields: Vec<Vec<f64>>,
    pub g_fields: Vec<Vec<f64>>,
    pub mass_curve: Vec<f64>,
    /// Left-wall root at each sample; the initial sample carries the initial
    /// wall value.
    pub boundary_p: Vec<f64>,
    /// Inner sweeps per macro step.
    pub inner_iteration_counts: Vec<usize>,
    /// Inner residual history per macro step.
    pub inner_residuals: Vec<Vec<f64>>,
    pub floor_activations: usize,
    pub diagnostics: Vec<String>,
}

impl RunRecord {
    pub fn final_state(&self) -> Option<State1D> {
        Some(State1D {
            t_star: *self.times.last()?,
            p: self.p_fields.last()?.clone(),
            g: self.g_fields.last()?.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn push_sample(&mut self, s: &State1D, np: &NondimParams, wall: f64) {
        self.times.push(s.t_star);
        self.mass_curve.push(ivp1d::mass_ratio_of(&s.p, np.beta1));
        self.p_fields.push(s.p.clone());
        self.g_fields.push(s.g.clone());
        self.boundary_p.push(wall);
    }
}

/// Reusable buffers for one grid size.
struct Stepper {
    n: usize,
    ws: RhsWorkspace,
    rhs: Vec<f64>,
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    resid: Vec<f64>,
    delta: Vec<f64>,
    scratch: Vec<f64>,
    trial: Vec<f64>,
}

impl Stepper {
    fn new(n: usize) -> Self {
        Stepper {
            n,
            ws: RhsWorkspace::new(n),
            rhs: vec![0.0; n],
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
            resid: vec![0.0; n],
            delta: vec![0.0; n],
            scratch: vec![0.0; n],
            trial: vec![0.0; n],
        }
    }

    fn advance(
        &mut self,
        state: &State1D,
        dt: f64,
        schedule: &LoadSchedule,
        np: &NondimParams,
        cfg: &SolverConfig,
    ) -> Result<(State1D, StepReport)> {
        let n = self.n;
        let t_new = state.t_star + dt;
        let force = schedule.force_at(t_new)?;
        let floor = cfg.epsilon_floor;
        let p_old: Vec<f64> = state.p.iter().map(|&p| p.max(1.0 + floor)).collect();
        let mut report = StepReport::default();
        let mut g_iter = state.g.clone();
        let mut p_prev = p_old.clone();
        let mut p_new = vec![0.0; n];
        let mut g_new = vec![0.0; n];

        for _ in 0..cfg.max_inner_iters {
            let left = boundary_root(g_iter[0], force, np)?;
            let right = if g_iter[n - 1] == g_iter[0] {
                left
            } else {
                boundary_root(g_iter[n - 1], force, np)?
            };
            report.boundary_sign_changes = report
                .boundary_sign_changes
                .max(left.sign_changes)
                .max(right.sign_changes);
            report.boundary_p = [left.x, right.x];

            p_new.copy_from_slice(&p_old);
            p_new[0] = left.x;
            p_new[n - 1] = right.x;
            let (substeps, floored) = match cfg.pde_scheme {
                PdeScheme::Implicit => self.implicit_p(&mut p_new, &g_iter, dt, np, cfg)?,
                PdeScheme::Explicit => self.explicit_p(&mut p_new, &g_iter, dt, np, cfg)?,
            };
            report.pde_substeps += substeps;
            report.floor_activations += floored;

            advance_g(&state.g, &p_new, dt, np, cfg, &mut g_new)?;

            let res = p_new
                .iter()
                .zip(&p_prev)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            report.residuals.push(res);
            p_prev.copy_from_slice(&p_new);
            g_iter.copy_from_slice(&g_new);
            if res < cfg.tolerance {
                let next = State1D {
                    t_star: t_new,
                    p: p_new,
                    g: g_new,
                };
                return Ok((next, report));
            }
        }
        Err(Error::NonConvergence {
            t_star: t_new,
            iterations: cfg.max_inner_iters,
            residual: *report.residuals.last().unwrap_or(&f64::NAN),
        })
    }

    /// Backward Euler on the interior with fixed wall values.
    fn implicit_p(
        &mut self,
        p: &mut [f64],
        g: &[f64],
        dt: f64,
        np: &NondimParams,
        cfg: &SolverConfig,
    ) -> Result<(usize, usize)> {
        let n = self.n;
        let h0 = dt / cfg.pde_substeps as f64;
        let h_min = dt * 1e-12;
        let mut h = h0;
        let mut t = 0.0;
        let mut taken = 0;
        let mut floored = 0;
        let mut good_in_row = 0;
        // p holds the last accepted sub-step; walls are already set.
        while t < dt {
            let hs = h.min(dt - t);
            self.scratch.copy_from_slice(p);
            match self.newton_substep(hs, g, np, cfg.epsilon_floor) {
                Ok(f) => {
                    let jump = self
                        .trial
                        .iter()
                        .zip(&self.scratch)
                        .skip(1)
                        .take(n - 2)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    if jump > cfg.max_dp_per_substep && hs > h_min {
                        h = hs * 0.5;
                        good_in_row = 0;
                        continue;
                    }
                    p.copy_from_slice(&self.trial);
                    t = if hs == dt - t { dt } else { t + hs };
                    taken += 1;
                    floored += f;
                    good_in_row += 1;
                    if good_in_row >= 2 && h < h0 {
                        h = (h * 2.0).min(h0);
                        good_in_row = 0;
                    }
                }
                Err(e) => {
                    if hs <= h_min {
                        return Err(e);
                    }
                    h = hs * 0.5;
                    good_in_row = 0;
                }
            }
        }
        Ok((taken, floored))
    }

    /// Solves `q − p_old − hs R(q) = 0` for `q` into `self.trial`, starting
    /// from `p_old = self.scratch`.
    fn newton_substep(&mut self, hs: f64, g: &[f64], np: &NondimParams, floor: f64) -> Result<usize> {
        const MAX_NEWTON: usize = 30;
        let n = self.n;
        self.trial.copy_from_slice(&self.scratch);
        for _ in 0..MAX_NEWTON {
            let floored = rhs_jacobian_into(
                &self.trial,
                g,
                np,
                floor,
                &mut self.ws,
                &mut self.rhs,
                &mut self.lower,
                &mut self.diag,
                &mut self.upper,
            )?;
            for i in 1..n - 1 {
                self.resid[i] = -(self.trial[i] - self.scratch[i] - hs * self.rhs[i]);
                self.lower[i] *= -hs;
                self.upper[i] *= -hs;
                self.diag[i] = 1.0 - hs * self.diag[i];
            }
            thomas_interior(&self.lower, &self.diag, &self.upper, &self.resid, &mut self.delta)?;
            let mut max_step: f64 = 0.0;
            for i in 1..n - 1 {
                let cur = self.trial[i];
                let next = cur + self.delta[i];
                // A dry node grows like u' = K u; backward Euler with h K > 1
                // would push it through p = 1, so the sub-step must shrink.
                if next < 1.0 + floor {
                    return Err(Error::Numeric { what: "newton left p > 1", node: i });
                }
                max_step = max_step.max((next - cur).abs());
                self.trial[i] = next;
            }
            if !max_step.is_finite() {
                return Err(Error::Numeric { what: "newton update", node: 0 });
            }
            if max_step <= 1e-12 {
                return Ok(floored);
            }
        }
        Err(Error::Numeric {
            what: "newton did not converge",
            node: 0,
        })
    }

    /// Forward Euler with `Δt_sub ≤ safety β₂ ΔZ² / D_max`, `D_max`
    /// re-estimated every sub-step.
    fn explicit_p(
        &mut self,
        p: &mut [f64],
        g: &[f64],
        dt: f64,
        np: &NondimParams,
        cfg: &SolverConfig,
    ) -> Result<(usize, usize)> {
        const MAX_SUBSTEPS: usize = 20_000_000;
        let n = self.n;
        let dz = 2.0 / (n - 1) as f64;
        let mut t = 0.0;
        let mut taken = 0;
        let mut floored = 0;
        while t < dt {
            let d = max_diffusivity(p, g, np, cfg.epsilon_floor, &mut self.ws)?;
            let limit = if d > 0.0 {
                cfg.pde_substep_safety * np.beta2 * dz * dz / d
            } else {
                dt
            };
            let hs = limit.min(dt - t);
            floored += rhs_into(p, g, np, cfg.epsilon_floor, &mut self.ws, &mut self.rhs)?;
            for i in 1..n - 1 {
                let next = p[i] + hs * self.rhs[i];
                if !next.is_finite() {
                    return Err(Error::Numeric { what: "explicit update", node: i });
                }
                p[i] = next.max(1.0 + cfg.epsilon_floor);
            }
            t = if hs == dt - t { dt } else { t + hs };
            taken += 1;
            if taken > MAX_SUBSTEPS {
                return Err(Error::Numeric {
                    what: "explicit sub-step budget exhausted",
                    node: 0,
                });
            }
        }
        Ok((taken, floored))
    }
}

/// Solves the interior rows `1..n−1` of a tridiagonal system whose wall
/// unknowns are fixed (their corrections are zero).
fn thomas_interior(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64], x: &mut [f64]) -> Result<()> {
    let n = diag.len();
    let m = n - 2;
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    for k in 0..m {
        let i = k + 1;
        let (a, prev_c, prev_d) = if k == 0 { (0.0, 0.0, 0.0) } else { (lower[i], c[k - 1], d[k - 1]) };
        let denom = diag[i] - a * prev_c;
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::Numeric { what: "tridiagonal pivot", node: i });
        }
        c[k] = if k + 1 < m { upper[i] / denom } else { 0.0 };
        d[k] = (rhs[i] - a * prev_d) / denom;
    }
    x[0] = 0.0;
    x[n - 1] = 0.0;
    x[m] = d[m - 1];
    for k in (0..m - 1).rev() {
        x[k + 1] = d[k] - c[k] * x[k + 2];
    }
    Ok(())
}

/// RK4 on each node's `g` with `p` frozen.
fn advance_g(g_old: &[f64], p: &[f64], dt: f64, np: &NondimParams, cfg: &SolverConfig, out: &mut [f64]) -> Result<()> {
    let h = dt / cfg.ode_substeps as f64;
    for (i, (&g0, &pi)) in g_old.iter().zip(p).enumerate() {
        let mut g = g0;
        for _ in 0..cfg.ode_substeps {
            let k1 = g_rate(pi, g, np);
            let k2 = g_rate(pi, g + 0.5 * h * k1, np);
            let k3 = g_rate(pi, g + 0.5 * h * k2, np);
            let k4 = g_rate(pi, g + h * k3, np);
            g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Numeric { what: "g update", node: i });
        }
        out[i] = g;
    }
    Ok(())
}

fn check_inputs(state: &State1D, schedule: &LoadSchedule, np: &NondimParams, cfg: &SolverConfig) -> Result<()> {
    state.validate()?;
    schedule.validate()?;
    np.validate()?;
    cfg.validate()
}

/// Advances `state` by one macro step `cfg.dt_star`.
pub fn step(state: &State1D, schedule: &LoadSchedule, np: &NondimParams, cfg: &SolverConfig) -> Result<State1D> {
    step_with_report(state, schedule, np, cfg).map(|(s, _)| s)
}

pub fn step_with_report(
    state: &State1D,
    schedule: &LoadSchedule,
    np: &NondimParams,
    cfg: &SolverConfig,
) -> Result<(State1D, StepReport)> {
    check_inputs(state, schedule, np, cfg)?;
    Stepper::new(state.len()).advance(state, cfg.dt_star, schedule, np, cfg)
}

/// Steps from `initial` to `t_final`, sampling every `sample_every` macro
/// steps and always at the end. A final partial step lands exactly on
/// `t_final`.
pub fn run(
    initial: &State1D,
    schedule: &LoadSchedule,
    np: &NondimParams,
    cfg: &SolverConfig,
    t_final: f64,
    sample_every: usize,
) -> Result<RunRecord> {
    check_inputs(initial, schedule, np, cfg)?;
    if !(t_final >= initial.t_star) || !t_final.is_finite() {
        return Err(Error::config(
            "t_final",
            format!("{t_final} is before the initial time {}", initial.t_star),
        ));
    }
    if sample_every < 1 {
        return Err(Error::config("sample_every", "must be at least 1"));
    }
    schedule.force_at(t_final)?;

    let t0 = initial.t_star;
    let span = t_final - t0;
    let dt = cfg.dt_star;
    let steps = if span <= 0.0 {
        0
    } else {
        (span / dt - 1e-9).ceil().max(1.0) as usize
    };

    let mut record = RunRecord::default();
    let wall0 = boundary_root(initial.g[0], schedule.force_at(t0)?, np)
        .map(|r| r.x)
        .unwrap_or(initial.p[0]);
    record.push_sample(initial, np, wall0);

    let mut stepper = Stepper::new(initial.len());
    let mut state = initial.clone();
    let mut multi_root_reported = false;
    for k in 1..=steps {
        let target = if k == steps { t_final } else { t0 + k as f64 * dt };
        let h = target - state.t_star;
        let (mut next, rep) = stepper.advance(&state, h, schedule, np, cfg)?;
        next.t_star = target;
        if rep.boundary_sign_changes > 1 && !multi_root_reported {
            record.diagnostics.push(format!(
                "t* = {target}: wall balance has {} sign changes; using the smallest root",
                rep.boundary_sign_changes
            ));
            multi_root_reported = true;
        }
        record.floor_activations += rep.floor_activations;
        record.inner_iteration_counts.push(rep.iterations());
        record.inner_residuals.push(rep.residuals.clone());
        state = next;
        if k % sample_every == 0 || k == steps {
            record.push_sample(&state, np, rep.boundary_p[0]);
        }
    }
    if record.floor_activations > 0 {
        record.diagnostics.push(format!(
            "p floor engaged in {} node evaluations",
            record.floor_activations
        ));
    }
    Ok(record)
}

/// Uniform steady state `(p_eq, g_eq)` under wall force `f_star`: the `g`
/// fixed point `g⁴ = (μ_p*/μ_G*) p²` substituted into the wall balance, then
/// bisection on `p`.
pub fn steady_state_oracle(np: &NondimParams, f_star: f64) -> Result<(f64, f64)> {
    np.validate()?;
    if !(np.mu_g_star > 0.0) {
        return Err(Error::domain(
            "steady_state_oracle",
            "μ_G* = 0 has no finite g fixed point; use the elastic-limit run instead",
        ));
    }
    let ratio = (np.mu_p_star / np.mu_g_star).powf(0.25);
    let f = |p: f64| {
        let g = ratio * p.sqrt();
        ivp1d::tzz_sf(p, g, np).map_or(f64::NAN, |t| t + f_star)
    };
    let p = bisect(f, BOUNDARY_P_MIN, BOUNDARY_P_MAX, 200).map_err(|_| {
        Error::domain(
            "steady_state_oracle",
            format!("no swollen equilibrium for p in ({BOUNDARY_P_MIN}, {BOUNDARY_P_MAX})"),
        )
    })?;
    Ok((p, ratio * p.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dmso() -> NondimParams {
        NondimParams {
            beta1: 1.3,
            beta2: 0.018,
            chi: 0.425,
            mu_p_star: 0.1,
            mu_g_star: 0.1,
            gamma_star: 20.0,
        }
    }

    #[test]
    fn oracle_matches_high_precision_values() {
        let np = dmso();
        let (p, g) = steady_state_oracle(&np, 0.0).unwrap();
        assert_relative_eq!(p, 1.437_322_050_959_496_5, max_relative = 1e-14);
        assert_relative_eq!(g, 1.198_883_668_651_590_5, max_relative = 1e-14);
        assert_relative_eq!(g, p.sqrt(), max_relative = 1e-15);
        let (p1, _) = steady_state_oracle(&np, 1.0).unwrap();
        assert_relative_eq!(p1, 1.140_328_445_817_300_8, max_relative = 1e-14);
    }

    #[test]
    fn oracle_swelling_decreases_with_chi() {
        let np = dmso();
        let mut last = f64::INFINITY;
        for k in 0..=12 {
            let chi = 0.3 + 0.025 * k as f64;
            let (p, _) = steady_state_oracle(&NondimParams { chi, ..np }, 0.0).unwrap();
            assert!(p < last);
            last = p;
        }
        let (p, _) = steady_state_oracle(&NondimParams { chi: 0.6, ..np }, 0.0).unwrap();
        assert_relative_eq!(p, 1.363_652_791_219_728_3, max_relative = 1e-14);
    }

    #[test]
    fn oracle_refuses_zero_mu_g() {
        let np = NondimParams { mu_g_star: 0.0, ..dmso() };
        assert!(matches!(steady_state_oracle(&np, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let np = dmso();
        let (p, g) = steady_state_oracle(&np, 0.0).unwrap();
        let s = State1D::uniform(41, p, g).unwrap();
        let sched = LoadSchedule::free_swelling();
        for scheme in [PdeScheme::Implicit, PdeScheme::Explicit] {
            let cfg = SolverConfig { pde_scheme: scheme, ..Default::default() };
            let (next, rep) = step_with_report(&s, &sched, &np, &cfg).unwrap();
            assert_eq!(rep.iterations(), 1);
            let drift = next.p.iter().chain(&next.g).zip(s.p.iter().chain(&s.g));
            assert!(drift.map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) <= cfg.tolerance);
        }
    }

    #[test]
    fn walls_lead_the_interior_after_one_step() {
        let np = dmso();
        let s = State1D::dry(301).unwrap();
        let next = step(&s, &LoadSchedule::free_swelling(), &np, &SolverConfig::default()).unwrap();
        let mid = next.p[150];
        assert!(next.p[0] > mid && next.p[300] > mid);
        assert!(next.p[0] > 1.3);
        assert!(next.p.iter().all(|&p| p >= 1.0));
    }

    #[test]
    fn elastic_limit_g_barely_moves() {
        let np = NondimParams { mu_g_star: 0.0, gamma_star: 1e8, ..dmso() };
        let mut s = State1D::dry(51).unwrap();
        let cfg = SolverConfig::default();
        let sched = LoadSchedule::free_swelling();
        for _ in 0..4 {
            let next = step(&s, &sched, &np, &cfg).unwrap();
            let bound = next
                .p
                .iter()
                .zip(&s.g)
                .map(|(&p, &g)| 2.0 * (1.0 + (p - 1.0) / np.beta1) * np.mu_p_star * (p / g).powi(2) / np.gamma_star)
                .fold(0.0, f64::max)
                * 1.1
                * cfg.dt_star;
            let drift = next.g.iter().zip(&s.g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(drift <= 1e-8 && drift <= bound, "{drift} vs {bound}");
            s = next;
        }
    }

    #[test]
    fn zero_horizon_keeps_only_initial_sample() {
        let np = dmso();
        let s = State1D::dry(21).unwrap();
        let rec = run(&s, &LoadSchedule::free_swelling(), &np, &SolverConfig::default(), 0.0, 1).unwrap();
        assert_eq!(rec.len(), 1);
        assert_eq!(rec.p_fields[0], s.p);
        assert!(rec.inner_iteration_counts.is_empty());
    }

    #[test]
    fn run_samples_stride_and_final() {
        let np = dmso();
        let s = State1D::dry(21).unwrap();
        let rec = run(&s, &LoadSchedule::free_swelling(), &np, &SolverConfig::default(), 0.26, 4).unwrap();
        // 11 steps (last one partial); samples at 0, 4, 8 and 11.
        assert_eq!(rec.inner_iteration_counts.len(), 11);
        assert_eq!(rec.times.len(), 4);
        assert_eq!(*rec.times.last().unwrap(), 0.26);
        assert!(rec.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(rec.mass_curve.len(), rec.times.len());
        assert_eq!(rec.boundary_p.len(), rec.times.len());
    }

    #[test]
    fn implicit_and_explicit_converge_together() {
        let np = dmso();
        let s = State1D::dry(41).unwrap();
        let sched = LoadSchedule::free_swelling();
        let final_p = |cfg: SolverConfig| run(&s, &sched, &np, &cfg, 0.05, 1).unwrap().p_fields.pop().unwrap();
        let gap = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let coarse = gap(
            &final_p(SolverConfig::default()),
            &final_p(SolverConfig { pde_scheme: PdeScheme::Explicit, ..Default::default() }),
        );
        let fine = gap(
            &final_p(SolverConfig {
                pde_substeps: 2000,
                max_dp_per_substep: 2e-4,
                ..Default::default()
            }),
            &final_p(SolverConfig {
                pde_scheme: PdeScheme::Explicit,
                pde_substep_safety: 0.05,
                ..Default::default()
            }),
        );
        assert!(coarse < 0.05, "{coarse}");
        assert!(fine < 0.5 * coarse, "{fine} vs {coarse}");
    }

    #[test]
    fn thomas_solves_interior_system() {
        let lower = [0.0, -1.0, -1.0, -1.0, 0.0];
        let diag = [1.0, 4.0, 4.0, 4.0, 1.0];
        let upper = [0.0, -1.0, -1.0, -1.0, 0.0];
        let x_true = [0.0, 1.0, 2.0, 3.0, 0.0];
        let mut rhs = [0.0; 5];
        for i in 1..4 {
            rhs[i] = lower[i] * x_true[i - 1] + diag[i] * x_true[i] + upper[i] * x_true[i + 1];
        }
        let mut x = [9.0; 5];
        thomas_interior(&lower, &diag, &upper, &rhs, &mut x).unwrap();
        for i in 0..5 {
            assert!((x[i] - x_true[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn schedule_horizon_is_enforced() {
        let np = dmso();
        let s = State1D::dry(11).unwrap();
        let sched = LoadSchedule::from_pairs(&[(0.5, 0.0)]).unwrap();
        assert!(run(&s, &sched, &np, &SolverConfig::default(), 1.0, 1).is_err());
    }

    #[test]
    fn config_validation_names_fields() {
        let cfg = SolverConfig { dt_star: 0.0, ..Default::default() };
        match cfg.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "dt_star"),
            other => panic!("{other:?}"),
        }
        let cfg = SolverConfig { pde_substep_safety: 1.0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
