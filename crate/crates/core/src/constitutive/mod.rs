//! Dimensional constitutive relations for a mixture of a viscoelastic solid
//! and a Newtonian fluid.
//!
//! The Helmholtz potential is a thermal part, two neo-Hookean-like terms in
//! the first invariants of `B_G` (reference → natural) and `B_e` (natural →
//! current), and a Flory–Huggins mixing term in the solid volume fraction.
//! Stresses, the natural-configuration evolution law and the interaction
//! force all follow from it; the Lagrange multiplier enforcing volume
//! additivity is always supplied by the caller.
//!
//! Reference configurations are assumed to coincide with the natural states,
//! so `φˢ = 1 / det F` and `ρˢ = ρ_Rˢ φˢ`.

pub mod sls;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{elastic_stretch, invariants, DiagTensor3};

/// Dimensional material constants (SI units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// Elastic modulus coefficients of the natural → current response (Pa·K, Pa).
    pub mu_p0: f64,
    pub mu_p1: f64,
    /// Elastic modulus coefficients of the reference → natural response.
    pub mu_g0: f64,
    pub mu_g1: f64,
    /// Reference temperature of the solid (K).
    pub theta_s: f64,
    /// Gas constant (J/(mol·K)).
    pub r_gas: f64,
    /// Molar volume of the fluid (m³/mol).
    pub v0: f64,
    /// Flory–Huggins mixing parameter.
    pub chi: f64,
    /// Natural-state densities of solid and fluid (kg/m³).
    pub rho_r_solid: f64,
    pub rho_r_fluid: f64,
    /// Solid dissipation coefficient (Pa·s).
    pub gamma: f64,
    /// Solid/fluid drag coefficient.
    pub alpha: f64,
    /// Fluid viscosity coefficient.
    pub nu: f64,
    /// Thermal constants of the potential.
    pub c1: f64,
    pub c2: f64,
    pub a_s: f64,
    pub b_s: f64,
}

impl MaterialParams {
    /// `μ̄_p(θ) = (μ_p0 − μ_p1 θ) / θ_s`
    pub fn mu_p_bar(&self, theta: f64) -> f64 {
        (self.mu_p0 - self.mu_p1 * theta) / self.theta_s
    }

    /// `μ̄_G(θ) = (μ_G0 − μ_G1 θ) / θ_s`
    pub fn mu_g_bar(&self, theta: f64) -> f64 {
        (self.mu_g0 - self.mu_g1 * theta) / self.theta_s
    }

    /// `R θ / V0`, the stress scale used for nondimensionalization.
    pub fn mixing_modulus(&self, theta: f64) -> f64 {
        self.r_gas * theta / self.v0
    }

    /// Checks positivity of the physical constants and that both moduli stay
    /// non-negative across `[theta_min, theta_max]`.
    pub fn validate(&self, theta_min: f64, theta_max: f64) -> Result<()> {
        let positive = [
            ("rho_r_solid", self.rho_r_solid),
            ("rho_r_fluid", self.rho_r_fluid),
            ("v0", self.v0),
            ("r_gas", self.r_gas),
            ("theta_s", self.theta_s),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(name, format!("must be positive, got {v}")));
            }
        }
        for (name, v) in [("gamma", self.gamma), ("alpha", self.alpha), ("nu", self.nu)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(name, format!("must be non-negative, got {v}")));
            }
        }
        if !(theta_min > 0.0 && theta_min <= theta_max) {
            return Err(Error::config(
                "theta_range",
                format!("invalid range [{theta_min}, {theta_max}]"),
            ));
        }
        // Both moduli are affine in θ, so the endpoints decide.
        for theta in [theta_min, theta_max] {
            if self.mu_p_bar(theta) < 0.0 {
                return Err(Error::config("mu_p", format!("μ̄_p < 0 at θ = {theta}")));
            }
            if self.mu_g_bar(theta) < 0.0 {
                return Err(Error::config("mu_G", format!("μ̄_G < 0 at θ = {theta}")));
            }
        }
        Ok(())
    }
}

/// Kinematic and density state at a material point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureState {
    /// Solid deformation gradient.
    pub f: DiagTensor3,
    /// Reference → natural configuration map.
    pub g: DiagTensor3,
    pub theta: f64,
    pub phi_s: f64,
    pub rho: f64,
    pub rho_s: f64,
    pub rho_f: f64,
}

impl MixtureState {
    /// Builds the state implied by `F` and `G` through solid mass balance and
    /// volume additivity.
    pub fn from_deformation(
        params: &MaterialParams,
        f: DiagTensor3,
        g: DiagTensor3,
        theta: f64,
    ) -> Result<Self> {
        f.check_positive("MixtureState::F")?;
        g.check_positive("MixtureState::G")?;
        if !(theta > 0.0) {
            return Err(Error::domain("MixtureState", format!("θ must be positive, got {theta}")));
        }
        let phi_s = 1.0 / f.det();
        if phi_s > 1.0 {
            return Err(Error::domain(
                "MixtureState",
                format!("det F = {} < 1 gives φˢ > 1", f.det()),
            ));
        }
        let rho_s = params.rho_r_solid * phi_s;
        let rho_f = params.rho_r_fluid * (1.0 - phi_s);
        Ok(MixtureState {
            f,
            g,
            theta,
            phi_s,
            rho: rho_s + rho_f,
            rho_s,
            rho_f,
        })
    }

    pub fn phi_f(&self) -> f64 {
        1.0 - self.phi_s
    }

    /// Left Cauchy–Green tensor of the elastic part, `B_e = F_e F_eᵀ`.
    pub fn b_elastic(&self) -> DiagTensor3 {
        self.f.zip_with(&self.g, |a, b| a / b).left_cauchy_green()
    }

    /// Left Cauchy–Green tensor of the natural-configuration map, `B_G = G Gᵀ`.
    pub fn b_natural(&self) -> DiagTensor3 {
        self.g.left_cauchy_green()
    }

    /// `ρ J_e J_G / ρ_Rˢ`, which equals `ρ / ρˢ` when `φˢ = 1 / det F`.
    fn jacobian_prefactor(&self, params: &MaterialParams) -> f64 {
        self.rho * self.f.det() / params.rho_r_solid
    }

    /// Checks the volume-additivity and solid mass-balance relations.
    pub fn check_consistency(&self, params: &MaterialParams) -> Result<()> {
        let tol = 1e-12;
        let det = self.f.det();
        if (self.phi_s * det - 1.0).abs() > tol {
            return Err(Error::domain("MixtureState", "φˢ ≠ 1/det F"));
        }
        if (self.rho - self.rho_s - self.rho_f).abs() > tol * self.rho.abs().max(1.0) {
            return Err(Error::domain("MixtureState", "ρ ≠ ρˢ + ρᶠ"));
        }
        let ratio = self.jacobian_prefactor(params) / (self.rho / self.rho_s);
        if (ratio - 1.0).abs() > tol {
            return Err(Error::domain(
                "MixtureState",
                "ρ J_e J_G / ρ_Rˢ differs from ρ / ρˢ",
            ));
        }
        Ok(())
    }
}

/// How to treat the Flory–Huggins term at the pure-solid limit `φˢ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MixingMode {
    /// `φˢ ≥ 1` is a domain error.
    #[default]
    Strict,
    /// Use `x ln x → 0` at `φˢ = 1`.
    Limit,
}

/// `(1 − φ) ln(1 − φ) − χ φ²`, the bracket of the mixing energy.
fn mixing_energy_bracket(phi_s: f64, chi: f64, mode: MixingMode) -> Result<f64> {
    let phi_f = 1.0 - phi_s;
    let xlogx = if phi_f > 0.0 {
        phi_f * phi_f.ln()
    } else if phi_f == 0.0 && mode == MixingMode::Limit {
        0.0
    } else {
        return Err(Error::domain(
            "mixing term",
            format!("φˢ = {phi_s} is outside (0, 1)"),
        ));
    };
    Ok(xlogx - chi * phi_s * phi_s)
}

/// `ln(1 − φ) + φ + χ φ²`, the bracket of the mixing pressure.
fn mixing_pressure_bracket(phi_s: f64, chi: f64) -> Result<f64> {
    if !(phi_s > 0.0 && phi_s < 1.0) {
        return Err(Error::domain(
            "mixing pressure",
            format!("φˢ = {phi_s} must lie in (0, 1); the log is singular at 1"),
        ));
    }
    Ok((1.0 - phi_s).ln() + phi_s + chi * phi_s * phi_s)
}

struct StrainMeasures {
    i_b_natural_minus_3: f64,
    i_b_elastic_minus_3: f64,
}

fn strain_measures(state: &MixtureState) -> Result<StrainMeasures> {
    let fe = elastic_stretch(&state.f, &state.g)?;
    Ok(StrainMeasures {
        i_b_natural_minus_3: invariants(&state.b_natural())?.first - 3.0,
        i_b_elastic_minus_3: invariants(&fe.left_cauchy_green())?.first - 3.0,
    })
}

/// Specific Helmholtz potential (J/kg).
pub fn helmholtz(params: &MaterialParams, state: &MixtureState, mode: MixingMode) -> Result<f64> {
    let th = state.theta;
    let ths = params.theta_s;
    let s = strain_measures(state)?;
    let thermal = params.a_s + (params.b_s + params.c2) * (th - ths)
        - 0.5 * params.c1 * (th - ths).powi(2)
        - params.c2 * th * (th / ths).ln();
    let elastic = (params.mu_g0 - params.mu_g1 * th) / (state.rho_s * ths) * s.i_b_natural_minus_3
        + (params.mu_p0 - params.mu_p1 * th) / (state.rho_s * ths) * s.i_b_elastic_minus_3;
    let mixing = params.r_gas * th / (params.rho_r_fluid * params.v0 * state.phi_s)
        * mixing_energy_bracket(state.phi_s, params.chi, mode)?;
    Ok(thermal + elastic + mixing)
}

/// Specific entropy `η = −∂ψ/∂θ` (J/(kg·K)), in closed form.
pub fn entropy(params: &MaterialParams, state: &MixtureState, mode: MixingMode) -> Result<f64> {
    let th = state.theta;
    let ths = params.theta_s;
    let s = strain_measures(state)?;
    let thermal = -(params.b_s + params.c2)
        + params.c1 * (th - ths)
        + params.c2 * (th / ths).ln()
        + params.c2;
    let elastic = params.mu_g1 / (state.rho_s * ths) * s.i_b_natural_minus_3
        + params.mu_p1 / (state.rho_s * ths) * s.i_b_elastic_minus_3;
    let mixing = -params.r_gas / (params.rho_r_fluid * params.v0 * state.phi_s)
        * mixing_energy_bracket(state.phi_s, params.chi, mode)?;
    Ok(thermal + elastic + mixing)
}

/// Specific internal energy (J/kg), in closed form. The mixing term is
/// purely entropic and drops out.
pub fn internal_energy(params: &MaterialParams, state: &MixtureState) -> Result<f64> {
    let th = state.theta;
    let ths = params.theta_s;
    let s = strain_measures(state)?;
    Ok(params.a_s - params.b_s * ths
        + params.c2 * (th - ths)
        + 0.5 * params.c1 * (th * th - ths * ths)
        + params.mu_g0 / (state.rho_s * ths) * s.i_b_natural_minus_3
        + params.mu_p0 / (state.rho_s * ths) * s.i_b_elastic_minus_3)
}

/// Specific heat capacity `C_v = c1 θ + c2`.
pub fn heat_capacity(params: &MaterialParams, theta: f64) -> f64 {
    params.c1 * theta + params.c2
}

fn mixing_pressure(params: &MaterialParams, state: &MixtureState) -> Result<f64> {
    let j = state.f.det();
    Ok(state.rho * params.mixing_modulus(state.theta) * j / params.rho_r_fluid
        * mixing_pressure_bracket(state.phi_s, params.chi)?)
}

fn trace_terms(params: &MaterialParams, state: &MixtureState) -> Result<f64> {
    let s = strain_measures(state)?;
    Ok(params.mu_p_bar(state.theta) * s.i_b_elastic_minus_3
        + params.mu_g_bar(state.theta) * s.i_b_natural_minus_3)
}

/// Stress conjugate to the elastic part of the deformation, `T_p` (Pa).
pub fn stress_tp(params: &MaterialParams, state: &MixtureState) -> Result<DiagTensor3> {
    let pre = state.rho / state.rho_s;
    let iso = pre * trace_terms(params, state)? + mixing_pressure(params, state)?;
    let mu_p = params.mu_p_bar(state.theta);
    Ok(state.b_elastic() * (2.0 * pre * mu_p) + DiagTensor3::scalar(iso))
}

/// Stress conjugate to the natural-configuration map, `T_G` (Pa).
pub fn stress_tg(params: &MaterialParams, state: &MixtureState) -> Result<DiagTensor3> {
    let pre = state.rho / state.rho_s;
    let iso = pre * trace_terms(params, state)? + mixing_pressure(params, state)?;
    let mu_g = params.mu_g_bar(state.theta);
    Ok(state.b_natural() * (2.0 * pre * mu_g) + DiagTensor3::scalar(iso))
}

/// Partial Cauchy stress of the solid, `Tˢ = −λ φˢ I + T_p` (Pa).
pub fn partial_stress_solid(
    params: &MaterialParams,
    state: &MixtureState,
    lambda: f64,
) -> Result<DiagTensor3> {
    Ok(stress_tp(params, state)? + DiagTensor3::scalar(-lambda * state.phi_s))
}

/// Partial Cauchy stress of the fluid, `Tᶠ = −λ φᶠ I + ν Dᶠ` (Pa).
pub fn partial_stress_fluid(
    params: &MaterialParams,
    state: &MixtureState,
    lambda: f64,
    d_fluid: &DiagTensor3,
) -> DiagTensor3 {
    DiagTensor3::scalar(-lambda * state.phi_f()) + *d_fluid * params.nu
}

/// Interaction forces in the 1D setting (N/m³); `fluid = −solid`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionForce {
    pub solid: f64,
    pub fluid: f64,
}

/// `mˢ = λ ∂φˢ/∂z − α v_rel + ρᶠ ∂ψ/∂z` with `v_rel = vˢ − vᶠ`.
pub fn interaction_force_1d(
    params: &MaterialParams,
    state: &MixtureState,
    lambda: f64,
    grad_phi_s: f64,
    v_rel: f64,
    grad_psi: f64,
) -> InteractionForce {
    let solid = lambda * grad_phi_s - params.alpha * v_rel + state.rho_f * grad_psi;
    InteractionForce {
        solid,
        fluid: -solid,
    }
}

/// Rate of the natural-configuration evolution,
/// `D_G = 2ρ / (ρˢ γ) [μ̄_p B_e − μ̄_G B_G]` (1/s).
pub fn natural_config_rate(params: &MaterialParams, state: &MixtureState) -> Result<DiagTensor3> {
    if !(params.gamma > 0.0) {
        return Err(Error::domain(
            "natural_config_rate",
            "γ must be positive; take γ large for the elastic limit",
        ));
    }
    let drive = state.b_elastic() * params.mu_p_bar(state.theta)
        - state.b_natural() * params.mu_g_bar(state.theta);
    Ok(drive * (2.0 * state.rho / (state.rho_s * params.gamma)))
}

/// Total mechanical dissipation `γ |D_G|² + α |v_rel|² + ν |Dᶠ|²`.
pub fn dissipation(
    params: &MaterialParams,
    d_g: &DiagTensor3,
    v_rel: f64,
    d_fluid: &DiagTensor3,
) -> f64 {
    params.gamma * d_g.norm_sq() + params.alpha * v_rel * v_rel + params.nu * d_fluid.norm_sq()
}
