//! The nondimensional one-dimensional swelling problem.
//!
//! A slab `Z* ∈ [−1, 1]` is held between rigid walls and immersed in fluid.
//! Two nodal fields are carried: the stretch `p = ∂f/∂Z` (so `φˢ = 1/p`) and
//! the natural-configuration stretch `g`. They obey
//!
//! ```text
//! β₂ ∂p/∂t = (1/p²)(1 − 1/p) ∂p/∂Z ∂W/∂Z + (p − 1) ∂/∂Z[(1 − 1/p)(1/p) ∂W/∂Z]
//! γ* (1/g) ∂g/∂t = 2 (1 + (p − 1)/β₁) [μ_p* (p/g)² − μ_G* g²]
//! ```
//!
//! with the chemical-potential-like field `W = T_zz^sf + ψ̃` and the wall
//! condition `T_zz^sf(p, g) = −F*`.
//!
//! Spatial discretization is second-order central on a uniform grid. The
//! outer term uses face fluxes `Ā (W_{i+1} − W_i)/h` with arithmetic-mean face
//! coefficients, the first term uses centered differences for both factors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{leftmost_root, Root, RootOptions};

/// Lower edge of the boundary root bracket, just above the log singularity.
pub const BOUNDARY_P_MIN: f64 = 1.0 + 1e-9;
/// Upper edge of the boundary root bracket.
pub const BOUNDARY_P_MAX: f64 = 50.0;
/// Default floor applied to `p − 1` before evaluating `W`.
pub const DEFAULT_P_FLOOR: f64 = 1e-10;

/// The dimensionless group of the 1D problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NondimParams {
    /// Natural-state density ratio `ρ_Rˢ / ρ_Rᶠ`.
    pub beta1: f64,
    /// Drag time-scale group `L² V₀ α / (R θ T)`.
    pub beta2: f64,
    pub chi: f64,
    pub mu_p_star: f64,
    #[serde(rename = "mu_G_star")]
    pub mu_g_star: f64,
    pub gamma_star: f64,
}

impl NondimParams {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("beta1", self.beta1, self.beta1 > 0.0),
            ("beta2", self.beta2, self.beta2 > 0.0),
            ("gamma_star", self.gamma_star, self.gamma_star > 0.0),
            ("mu_p_star", self.mu_p_star, self.mu_p_star >= 0.0),
            ("mu_G_star", self.mu_g_star, self.mu_g_star >= 0.0),
            ("chi", self.chi, true),
        ];
        for (name, v, ok) in checks {
            if !v.is_finite() || !ok {
                return Err(Error::config(name, format!("value {v} is out of range")));
            }
        }
        Ok(())
    }

    /// `1 + (p − 1)/β₁`, i.e. `ρ/ρˢ`.
    #[inline]
    fn density_ratio(&self, p: f64) -> f64 {
        1.0 + (p - 1.0) / self.beta1
    }
}

/// Uniform node layout on `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::config("N", format!("need at least 3 nodes, got {n}")));
        }
        Ok(Grid { n })
    }

    pub fn spacing(&self) -> f64 {
        2.0 / (self.n - 1) as f64
    }

    pub fn z(&self, i: usize) -> f64 {
        // Mirror-exact coordinates: z(n−1−i) == −z(i).
        let m = (self.n - 1) as f64;
        (2.0 * i as f64 - m) / m
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.z(i)).collect()
    }

    /// Index of `Z* = 0` when the node count is odd.
    pub fn center(&self) -> Option<usize> {
        (self.n % 2 == 1).then_some(self.n / 2)
    }
}

/// Nodal `p` and `g` at time `t*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct State1D {
    pub t_star: f64,
    pub p: Vec<f64>,
    pub g: Vec<f64>,
}

impl State1D {
    /// The dry, relaxed solid: `p = g = 1` everywhere.
    pub fn dry(n: usize) -> Result<Self> {
        Self::uniform(n, 1.0, 1.0)
    }

    pub fn uniform(n: usize, p: f64, g: f64) -> Result<Self> {
        let s = State1D {
            t_star: 0.0,
            p: vec![p; n],
            g: vec![g; n],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn grid(&self) -> Grid {
        Grid { n: self.p.len() }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        Grid::new(self.p.len())?;
        if self.g.len() != self.p.len() {
            return Err(Error::domain("State1D", "p and g lengths differ"));
        }
        if let Some(i) = self.p.iter().position(|&p| !(p >= 1.0) || !p.is_finite()) {
            return Err(Error::domain("State1D", format!("p[{i}] = {} < 1", self.p[i])));
        }
        if let Some(i) = self.g.iter().position(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(Error::domain("State1D", format!("g[{i}] = {} ≤ 0", self.g[i])));
        }
        Ok(())
    }

    /// Domain average of `p`, the mean volume ratio `J`.
    pub fn mean_p(&self) -> f64 {
        trapezoid(&self.p, self.grid().spacing()) / 2.0
    }
}

/// One piece of the load history: `force` applies up to and including `t_end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoadSegment {
    pub t_end: f64,
    pub force: f64,
}

/// Piecewise-constant compressive wall force `F*(t*)` and far-field pressure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadSchedule {
    pub segments: Vec<LoadSegment>,
    /// Reported only: the multiplier equals it at the walls and it drops out
    /// of the `p`, `g` dynamics.
    #[serde(default)]
    pub p_inf_star: f64,
}

impl LoadSchedule {
    /// A single force for all time.
    pub fn constant(force: f64) -> Self {
        LoadSchedule {
            segments: vec![LoadSegment {
                t_end: f64::INFINITY,
                force,
            }],
            p_inf_star: 0.0,
        }
    }

    pub fn free_swelling() -> Self {
        Self::constant(0.0)
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let s = LoadSchedule {
            segments: pairs
                .iter()
                .map(|&(t_end, force)| LoadSegment { t_end, force })
                .collect(),
            p_inf_star: 0.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::config("schedule", "at least one segment is required"));
        }
        let mut prev = f64::NEG_INFINITY;
        for (k, seg) in self.segments.iter().enumerate() {
            if !(seg.t_end > prev) || seg.t_end.is_nan() {
                return Err(Error::config(
                    "schedule",
                    format!("segment {k}: end times must be strictly increasing"),
                ));
            }
            if !(seg.force >= 0.0) || !seg.force.is_finite() {
                return Err(Error::config(
                    "schedule",
                    format!("segment {k}: force must be finite and ≥ 0 (compressive)"),
                ));
            }
            prev = seg.t_end;
        }
        if !self.p_inf_star.is_finite() {
            return Err(Error::config("P_inf_star", "must be finite"));
        }
        Ok(())
    }

    pub fn horizon(&self) -> f64 {
        self.segments.last().map_or(f64::NEG_INFINITY, |s| s.t_end)
    }

    /// Force in effect at `t`, segments closed on the right.
    pub fn force_at(&self, t: f64) -> Result<f64> {
        let slack = 1e-9 * t.abs().max(1.0);
        self.segments
            .iter()
            .find(|s| t <= s.t_end + slack)
            .map(|s| s.force)
            .ok_or_else(|| {
                Error::config(
                    "schedule",
                    format!("t* = {t} lies beyond the schedule horizon {}", self.horizon()),
                )
            })
    }
}

#[inline]
fn log_fluid_fraction(p: f64) -> f64 {
    // ln(1 − 1/p) = ln((p − 1)/p), accurate near p = 1.
    ((p - 1.0) / p).ln()
}

/// Elastic bracket `2μ_p (p/g)² + μ_p ((p/g)² − 1) + μ_G (g² − 1)`.
#[inline]
fn elastic_bracket(p: f64, g: f64, np: &NondimParams) -> f64 {
    let r2 = (p / g) * (p / g);
    3.0 * np.mu_p_star * r2 - np.mu_p_star + np.mu_g_star * (g * g - 1.0)
}

/// Mixing bracket `ln(1 − 1/p) + 1/p + χ/p²`.
#[inline]
fn mixing_bracket(p: f64, np: &NondimParams) -> f64 {
    log_fluid_fraction(p) + 1.0 / p + np.chi / (p * p)
}

#[inline]
fn tzz_sf_raw(p: f64, g: f64, np: &NondimParams) -> f64 {
    np.density_ratio(p) * elastic_bracket(p, g, np) + (p + np.beta1 - 1.0) * mixing_bracket(p, np)
}

/// Combined solid/fluid zz-stress `T_zz^sf*` (the mixture stress without
/// the multiplier). Requires `p > 1`.
pub fn tzz_sf(p: f64, g: f64, np: &NondimParams) -> Result<f64> {
    if !(p > 1.0) || !(g > 0.0) {
        return Err(Error::domain(
            "tzz_sf",
            format!("need p > 1 and g > 0, got p = {p}, g = {g}"),
        ));
    }
    Ok(tzz_sf_raw(p, g, np))
}

#[inline]
fn psi_tilde_raw(p: f64, g: f64, np: &NondimParams) -> f64 {
    let mix = if p > 1.0 {
        (p - 1.0) * log_fluid_fraction(p)
    } else {
        0.0
    };
    np.mu_g_star * p / np.beta1 * (g * g - 1.0)
        + np.mu_p_star * p / np.beta1 * ((p / g) * (p / g) - 1.0)
        + mix
        - np.chi / p
}

/// Reduced potential `ψ̃*`. Finite at `p = 1`, where the mixing bracket
/// takes its limit.
pub fn psi_tilde(p: f64, g: f64, np: &NondimParams) -> Result<f64> {
    if !(p >= 1.0) || !(g > 0.0) {
        return Err(Error::domain(
            "psi_tilde",
            format!("need p ≥ 1 and g > 0, got p = {p}, g = {g}"),
        ));
    }
    Ok(psi_tilde_raw(p, g, np))
}

/// `W = T_zz^sf* + ψ̃*` for `p > 1`, no checks.
#[inline]
pub(crate) fn potential(p: f64, g: f64, np: &NondimParams) -> f64 {
    let l = log_fluid_fraction(p);
    let inv = 1.0 / p;
    let mix = l + inv + np.chi * inv * inv;
    let dr = np.density_ratio(p);
    let r2 = (p / g) * (p / g);
    let g2m1 = g * g - 1.0;
    dr * (3.0 * np.mu_p_star * r2 - np.mu_p_star + np.mu_g_star * g2m1)
        + (p + np.beta1 - 1.0) * mix
        + (np.mu_g_star * g2m1 + np.mu_p_star * (r2 - 1.0)) * p / np.beta1
        + (p - 1.0) * l
        - np.chi * inv
}

/// `W` and `∂W/∂p` at fixed `g`, for `p > 1`.
#[inline]
pub(crate) fn potential_with_slope(p: f64, g: f64, np: &NondimParams) -> (f64, f64) {
    let l = log_fluid_fraction(p);
    let inv = 1.0 / p;
    let mix = l + inv + np.chi * inv * inv;
    let dmix = inv * inv / (p - 1.0) - 2.0 * np.chi * inv * inv * inv;
    let dr = np.density_ratio(p);
    let g2 = g * g;
    let r2 = p * p / g2;
    let g2m1 = g2 - 1.0;
    let e = 3.0 * np.mu_p_star * r2 - np.mu_p_star + np.mu_g_star * g2m1;
    let w = dr * e
        + (p + np.beta1 - 1.0) * mix
        + (np.mu_g_star * g2m1 + np.mu_p_star * (r2 - 1.0)) * p / np.beta1
        + (p - 1.0) * l
        - np.chi * inv;
    let dtzz = e / np.beta1 + dr * 6.0 * np.mu_p_star * p / g2 + mix + (p + np.beta1 - 1.0) * dmix;
    let dpsi = (np.mu_g_star * g2m1 + np.mu_p_star * (3.0 * r2 - 1.0)) / np.beta1 + mix;
    (w, dtzz + dpsi)
}

/// `dg*/dt* = (2g/γ*)(1 + (p − 1)/β₁)[μ_p*(p/g)² − μ_G* g²]`.
#[inline]
pub fn g_rate(p: f64, g: f64, np: &NondimParams) -> f64 {
    2.0 * g / np.gamma_star * np.density_ratio(p) * (np.mu_p_star * (p / g) * (p / g) - np.mu_g_star * g * g)
}

/// Wall stress balance `T_zz^sf*(p_b, g_b) + F*`; its root in `p_b` is the
/// Dirichlet value at the walls.
pub fn boundary_residual(p_b: f64, g_b: f64, f_star: f64, np: &NondimParams) -> Result<f64> {
    Ok(tzz_sf(p_b, g_b, np)? + f_star)
}

/// Solves the wall stress balance for `p_b` on `(1 + 1e−9, 50)`, returning
/// the smallest root.
pub fn boundary_root(g_b: f64, f_star: f64, np: &NondimParams) -> Result<Root> {
    if !(g_b > 0.0) {
        return Err(Error::domain("boundary_root", format!("g_b = {g_b} ≤ 0")));
    }
    let root = leftmost_root(
        |p| tzz_sf_raw(p, g_b, np) + f_star,
        BOUNDARY_P_MIN,
        BOUNDARY_P_MAX,
        &RootOptions::default(),
    )?;
    // Near p = 1 the slope is ~β₁/(p − 1), so one ulp in p can exceed any
    // absolute residual bound; allow a few ulps' worth of residual there.
    let x = root.x;
    let dx = 1e-7 * (x - 1.0);
    let slope = ((tzz_sf_raw(x + dx, g_b, np) - tzz_sf_raw(x - dx, g_b, np)) / (2.0 * dx)).abs();
    let tol = 1e-10_f64.max(8.0 * f64::EPSILON * x * slope);
    if root.residual.abs() > tol {
        return Err(Error::Boundary(format!(
            "wall balance residual {:e} at p = {} exceeds tolerance",
            root.residual, root.x
        )));
    }
    Ok(root)
}

/// Scratch buffers for repeated right-hand-side evaluations on one grid.
#[derive(Debug, Clone)]
pub struct RhsWorkspace {
    pub(crate) pf: Vec<f64>,
    pub(crate) w: Vec<f64>,
    pub(crate) dw: Vec<f64>,
    pub(crate) a: Vec<f64>,
}

impl RhsWorkspace {
    pub fn new(n: usize) -> Self {
        RhsWorkspace {
            pf: vec![0.0; n],
            w: vec![0.0; n],
            dw: vec![0.0; n],
            a: vec![0.0; n],
        }
    }

    /// Fills floored `p`, `W` and the flux coefficient `A = (1 − 1/p)/p`.
    /// Returns the number of nodes that hit the floor.
    fn load(&mut self, p: &[f64], g: &[f64], np: &NondimParams, floor: f64, slopes: bool) -> Result<usize> {
        let mut floored = 0;
        for i in 0..p.len() {
            let mut pi = p[i];
            if !pi.is_finite() || !g[i].is_finite() {
                return Err(Error::Numeric { what: "pde_rhs input", node: i });
            }
            if pi < 1.0 + floor {
                pi = 1.0 + floor;
                floored += 1;
            }
            self.pf[i] = pi;
            self.a[i] = (pi - 1.0) / (pi * pi);
            if slopes {
                let (w, dw) = potential_with_slope(pi, g[i], np);
                self.w[i] = w;
                self.dw[i] = dw;
            } else {
                self.w[i] = potential(pi, g[i], np);
            }
            if !self.w[i].is_finite() {
                return Err(Error::Numeric { what: "potential W", node: i });
            }
        }
        Ok(floored)
    }
}

/// Evaluates `∂p/∂t` into `out` (boundary entries set to zero) and returns
/// the number of floored nodes.
pub(crate) fn rhs_into(
    p: &[f64],
    g: &[f64],
    np: &NondimParams,
    floor: f64,
    ws: &mut RhsWorkspace,
    out: &mut [f64],
) -> Result<usize> {
    let n = p.len();
    let floored = ws.load(p, g, np, floor, false)?;
    let h = 2.0 / (n - 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let scale = 1.0 / np.beta2;
    out[0] = 0.0;
    out[n - 1] = 0.0;
    let (pf, w, a) = (&ws.pf, &ws.w, &ws.a);
    for i in 1..n - 1 {
        let pi = pf[i];
        let c = (pi - 1.0) / (pi * pi * pi);
        let adv = c * (pf[i + 1] - pf[i - 1]) * (w[i + 1] - w[i - 1]) * 0.25;
        let a_plus = 0.5 * (a[i] + a[i + 1]);
        let a_minus = 0.5 * (a[i] + a[i - 1]);
        let diff = (pi - 1.0) * (a_plus * (w[i + 1] - w[i]) - a_minus * (w[i] - w[i - 1]));
        let r = (adv + diff) * inv_h2 * scale;
        if !r.is_finite() {
            return Err(Error::Numeric { what: "pde_rhs", node: i });
        }
        out[i] = r;
    }
    Ok(floored)
}

/// Tridiagonal Jacobian of the interior right-hand side with respect to `p`.
/// Row `i` couples nodes `i − 1, i, i + 1`; boundary rows are left at zero.
pub(crate) fn rhs_jacobian_into(
    p: &[f64],
    g: &[f64],
    np: &NondimParams,
    floor: f64,
    ws: &mut RhsWorkspace,
    rhs: &mut [f64],
    lower: &mut [f64],
    diag: &mut [f64],
    upper: &mut [f64],
) -> Result<usize> {
    let n = p.len();
    let floored = ws.load(p, g, np, floor, true)?;
    let h = 2.0 / (n - 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let scale = inv_h2 / np.beta2;
    let (pf, w, dw, a) = (&ws.pf, &ws.w, &ws.dw, &ws.a);
    let da = |x: f64| (2.0 - x) / (x * x * x);
    for v in [&mut *lower, &mut *diag, &mut *upper] {
        v[0] = 0.0;
        v[n - 1] = 0.0;
    }
    rhs[0] = 0.0;
    rhs[n - 1] = 0.0;
    for i in 1..n - 1 {
        let pi = pf[i];
        let u = pi - 1.0;
        let c = u / (pi * pi * pi);
        let dc = (3.0 - 2.0 * pi) / (pi * pi * pi * pi);
        let pd = pf[i + 1] - pf[i - 1];
        let q = w[i + 1] - w[i - 1];
        let s_plus = w[i + 1] - w[i];
        let s_minus = w[i] - w[i - 1];
        let a_plus = 0.5 * (a[i] + a[i + 1]);
        let a_minus = 0.5 * (a[i] + a[i - 1]);
        let flux_div = a_plus * s_plus - a_minus * s_minus;
        rhs[i] = (0.25 * c * pd * q + u * flux_div) * scale;
        upper[i] = (0.25 * c * (q + pd * dw[i + 1]) + u * (0.5 * da(pf[i + 1]) * s_plus + a_plus * dw[i + 1])) * scale;
        lower[i] = (-0.25 * c * (q + pd * dw[i - 1]) + u * (-0.5 * da(pf[i - 1]) * s_minus + a_minus * dw[i - 1]))
            * scale;
        diag[i] = (0.25 * dc * pd * q
            + flux_div
            + u * (0.5 * da(pi) * (s_plus - s_minus) - (a_plus + a_minus) * dw[i]))
            * scale;
        if !(rhs[i].is_finite() && upper[i].is_finite() && lower[i].is_finite() && diag[i].is_finite()) {
            return Err(Error::Numeric { what: "pde_rhs jacobian", node: i });
        }
    }
    Ok(floored)
}

/// Diffusivity estimate used to size explicit sub-steps: at each interior
/// node the larger of `A_i` and `(p_i − 1)` times either face coefficient,
/// times `|∂W/∂p|`. The face term keeps the bound honest next to dry nodes.
pub(crate) fn max_diffusivity(p: &[f64], g: &[f64], np: &NondimParams, floor: f64, ws: &mut RhsWorkspace) -> Result<f64> {
    let n = p.len();
    ws.load(p, g, np, floor, true)?;
    let (pf, dw, a) = (&ws.pf, &ws.dw, &ws.a);
    let mut d_max: f64 = 0.0;
    for i in 1..n - 1 {
        let u = pf[i] - 1.0;
        let face = (0.5 * (a[i] + a[i + 1])).max(0.5 * (a[i] + a[i - 1]));
        d_max = d_max.max(a[i].max(u * face) * dw[i].abs());
    }
    Ok(d_max)
}

/// Spatially discretized `∂p*/∂t*` at every node; the two wall entries are
/// zero because the walls carry Dirichlet values. Nodes below `1 + floor`
/// are evaluated at the floor.
pub fn pde_rhs_with_floor(state: &State1D, np: &NondimParams, floor: f64) -> Result<Vec<f64>> {
    state.validate()?;
    let n = state.len();
    let mut ws = RhsWorkspace::new(n);
    let mut out = vec![0.0; n];
    rhs_into(&state.p, &state.g, np, floor, &mut ws, &mut out)?;
    Ok(out)
}

/// [`pde_rhs_with_floor`] with the default `1e−10` floor.
pub fn pde_rhs(state: &State1D, np: &NondimParams) -> Result<Vec<f64>> {
    pde_rhs_with_floor(state, np, DEFAULT_P_FLOOR)
}

/// First derivative on the grid: centered inside, second-order one-sided at
/// the walls.
fn derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    if n >= 3 {
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    }
    d
}

/// Fluid velocity `v* = −(1/β₂)(1 − 1/p)(1/p) ∂W/∂Z*` at every node.
pub fn fluid_velocity(state: &State1D, np: &NondimParams) -> Result<Vec<f64>> {
    fluid_velocity_with_floor(state, np, DEFAULT_P_FLOOR)
}

pub fn fluid_velocity_with_floor(state: &State1D, np: &NondimParams, floor: f64) -> Result<Vec<f64>> {
    state.validate()?;
    let mut ws = RhsWorkspace::new(state.len());
    ws.load(&state.p, &state.g, np, floor, false)?;
    let dw = derivative(&ws.w, state.grid().spacing());
    let v: Vec<f64> = ws.a.iter().zip(&dw).map(|(a, d)| -a * d / np.beta2).collect();
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(Error::Numeric { what: "fluid_velocity", node: i });
    }
    Ok(v)
}

/// Composite trapezoid rule on a uniform grid.
pub fn trapezoid(f: &[f64], h: f64) -> f64 {
    let n = f.len();
    if n < 2 {
        return 0.0;
    }
    let inner: f64 = f[1..n - 1].iter().sum();
    h * (inner + 0.5 * (f[0] + f[n - 1]))
}

/// Swollen-to-dry mass ratio `m/m₀ = (1/(2β₁)) ∫ (p + β₁ − 1) dZ*` over the
/// reference coordinate.
pub fn mass_ratio(state: &State1D, np: &NondimParams) -> Result<f64> {
    if let Some(i) = state.p.iter().position(|&p| !(p >= 1.0)) {
        return Err(Error::domain("mass_ratio", format!("p[{i}] = {} < 1", state.p[i])));
    }
    Ok(mass_ratio_of(&state.p, np.beta1))
}

pub(crate) fn mass_ratio_of(p: &[f64], beta1: f64) -> f64 {
    let h = 2.0 / (p.len() - 1) as f64;
    let integrand: Vec<f64> = p.iter().map(|&x| x + beta1 - 1.0).collect();
    trapezoid(&integrand, h) / (2.0 * beta1)
}

/// `(m(t) − m₀) / (m_∞ − m₀)`.
pub fn normalized_mass(m_t: f64, m_0: f64, m_inf: f64) -> Result<f64> {
    if m_inf == m_0 {
        return Err(Error::domain(
            "normalized_mass",
            "m_inf equals m_0; normalization undefined",
        ));
    }
    Ok((m_t - m_0) / (m_inf - m_0))
}
