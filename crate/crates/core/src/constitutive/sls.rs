//! Diffusion-free limit: an incompressible three-dimensional standard linear
//! solid. Used as a consistency check on the full mixture model.

use crate::constitutive::MaterialParams;
use crate::tensor::DiagTensor3;

/// The two shear moduli of the reduced model at a fixed temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlsModuli {
    pub mu_p: f64,
    pub mu_g: f64,
}

impl SlsModuli {
    pub fn at(params: &MaterialParams, theta: f64) -> Self {
        SlsModuli {
            mu_p: params.mu_p_bar(theta),
            mu_g: params.mu_g_bar(theta),
        }
    }
}

/// Right-hand side `η D_G` of the incompressible evolution law:
/// `2μ̄_p B_e − 2μ̄_G B_G − ⅔[μ̄_p tr B_e − μ̄_G tr B_G] I`.
pub fn sls_evolution_rhs(m: &SlsModuli, b_p: &DiagTensor3, b_g: &DiagTensor3) -> DiagTensor3 {
    let iso = 2.0 / 3.0 * (m.mu_p * b_p.trace() - m.mu_g * b_g.trace());
    *b_p * (2.0 * m.mu_p) - *b_g * (2.0 * m.mu_g) - DiagTensor3::scalar(iso)
}

/// Cauchy stress `T = p I + 2 μ̄_p B_e`, with `p` the incompressibility multiplier.
pub fn sls_stress(pressure: f64, m: &SlsModuli, b_p: &DiagTensor3) -> DiagTensor3 {
    DiagTensor3::scalar(pressure) + *b_p * (2.0 * m.mu_p)
}

/// Isochoric uniaxial left Cauchy–Green tensor `diag(1/√b, 1/√b, b)`.
pub fn uniaxial_isochoric(b: f64) -> DiagTensor3 {
    let t = 1.0 / b.sqrt();
    DiagTensor3::new(t, t, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn equal_states_and_moduli_give_zero_rate() {
        let m = SlsModuli { mu_p: 2.0, mu_g: 2.0 };
        let b = uniaxial_isochoric(1.7);
        assert_eq!(sls_evolution_rhs(&m, &b, &b), DiagTensor3::ZERO);
    }

    #[test]
    fn identity_inputs_give_zero_rate_for_any_moduli() {
        let m = SlsModuli { mu_p: 3.5, mu_g: 0.25 };
        let r = sls_evolution_rhs(&m, &DiagTensor3::IDENTITY, &DiagTensor3::IDENTITY);
        assert!(r.entries().iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn stress_is_pressure_plus_elastic_part() {
        let m = SlsModuli { mu_p: 1.5, mu_g: 0.0 };
        let t = sls_stress(-2.0, &m, &DiagTensor3::new(1.0, 2.0, 3.0));
        assert_eq!(t, DiagTensor3::new(1.0, 4.0, 7.0));
    }

    proptest! {
        #[test]
        fn evolution_rhs_is_traceless(mu_p in 0.0f64..10.0, mu_g in 0.0f64..10.0,
                                      bp in 0.2f64..5.0, bg in 0.2f64..5.0) {
            let m = SlsModuli { mu_p, mu_g };
            let r = sls_evolution_rhs(&m, &uniaxial_isochoric(bp), &uniaxial_isochoric(bg));
            let scale = 1.0 + mu_p * bp.max(1.0 / bp.sqrt()) + mu_g * bg.max(1.0 / bg.sqrt());
            prop_assert!(r.trace().abs() <= 1e-13 * scale);
        }
    }
}
