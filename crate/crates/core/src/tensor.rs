//! Diagonal second-order tensors and the kinematic maps of the uniaxial
//! ansatz.
//!
//! Every deformation state the solver ever builds is diagonal: the motion is
//! `x = X, y = Y, z = f(Z, t)` and the natural-configuration map is
//! `G = diag(1, 1, g)`. The elastic part of the deformation,
//! `F_e = F G⁻¹`, is therefore diagonal and symmetric as well, so the whole
//! tensor layer reduces to componentwise arithmetic on three entries.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A diagonal 3×3 tensor `diag(d1, d2, d3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagTensor3 {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl DiagTensor3 {
    pub const IDENTITY: DiagTensor3 = DiagTensor3 {
        d1: 1.0,
        d2: 1.0,
        d3: 1.0,
    };

    pub const ZERO: DiagTensor3 = DiagTensor3 {
        d1: 0.0,
        d2: 0.0,
        d3: 0.0,
    };

    pub const fn new(d1: f64, d2: f64, d3: f64) -> Self {
        DiagTensor3 { d1, d2, d3 }
    }

    /// `diag(1, 1, s)`, the shape of `F`, `G` and `F_e` in the 1D problem.
    pub const fn uniaxial(s: f64) -> Self {
        DiagTensor3::new(1.0, 1.0, s)
    }

    pub fn scalar(s: f64) -> Self {
        DiagTensor3::new(s, s, s)
    }

    pub fn entries(&self) -> [f64; 3] {
        [self.d1, self.d2, self.d3]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        DiagTensor3::new(f(self.d1), f(self.d2), f(self.d3))
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        DiagTensor3::new(f(self.d1, other.d1), f(self.d2, other.d2), f(self.d3, other.d3))
    }

    pub fn trace(&self) -> f64 {
        self.d1 + self.d2 + self.d3
    }

    pub fn det(&self) -> f64 {
        self.d1 * self.d2 * self.d3
    }

    /// Scalar (Frobenius) product `A : B`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.d1 * other.d1 + self.d2 * other.d2 + self.d3 * other.d3
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|x| x.is_finite())
    }

    /// `A Aᵀ`, which for a diagonal tensor squares each entry.
    pub fn left_cauchy_green(&self) -> Self {
        self.map(|x| x * x)
    }

    pub fn try_inverse(&self) -> Result<Self> {
        if self.entries().contains(&0.0) {
            return Err(Error::domain("DiagTensor3::inverse", "zero diagonal entry"));
        }
        Ok(self.map(|x| 1.0 / x))
    }

    /// Checks the left Cauchy–Green invariant: all entries finite and positive.
    pub fn check_positive(&self, what: &'static str) -> Result<()> {
        if !self.is_finite() || self.entries().iter().any(|&x| x <= 0.0) {
            return Err(Error::domain(
                what,
                format!("expected positive finite entries, got {self:?}"),
            ));
        }
        Ok(())
    }
}

impl Add for DiagTensor3 {
    type Output = DiagTensor3;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for DiagTensor3 {
    type Output = DiagTensor3;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl Mul<f64> for DiagTensor3 {
    type Output = DiagTensor3;
    fn mul(self, rhs: f64) -> Self {
        self.map(|a| a * rhs)
    }
}

impl Mul<DiagTensor3> for f64 {
    type Output = DiagTensor3;
    fn mul(self, rhs: DiagTensor3) -> DiagTensor3 {
        rhs * self
    }
}

/// Principal invariants `(I, II, III)` of a left Cauchy–Green tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub first: f64,
    pub second: f64,
    pub third: f64,
}

/// Principal invariants of `b`: trace, `½[(tr b)² − tr(b²)]` and determinant.
pub fn invariants(b: &DiagTensor3) -> Result<Invariants> {
    b.check_positive("invariants")?;
    let tr = b.trace();
    let tr_sq = b.map(|x| x * x).trace();
    Ok(Invariants {
        first: tr,
        second: 0.5 * (tr * tr - tr_sq),
        third: b.det(),
    })
}

/// Elastic part of the deformation, `F_e = F G⁻¹` (componentwise for diagonals).
pub fn elastic_stretch(f: &DiagTensor3, g: &DiagTensor3) -> Result<DiagTensor3> {
    if g.entries().contains(&0.0) {
        return Err(Error::domain("elastic_stretch", "G has a zero entry"));
    }
    Ok(f.zip_with(g, |a, b| a / b))
}

/// Volume ratios of the total, dissipative and elastic parts of the motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobians {
    /// `det F`
    pub total: f64,
    /// `det G`
    pub natural: f64,
    /// `det F_e = det F / det G`
    pub elastic: f64,
}

pub fn jacobians(f: &DiagTensor3, g: &DiagTensor3) -> Result<Jacobians> {
    let fe = elastic_stretch(f, g)?;
    Ok(Jacobians {
        total: f.det(),
        natural: g.det(),
        elastic: fe.det(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn invariants_of_identity() {
        let inv = invariants(&DiagTensor3::IDENTITY).unwrap();
        assert_eq!((inv.first, inv.second, inv.third), (3.0, 3.0, 1.0));
    }

    #[test]
    fn invariants_hand_evaluated() {
        let inv = invariants(&DiagTensor3::uniaxial(4.0)).unwrap();
        assert_eq!((inv.first, inv.second, inv.third), (6.0, 9.0, 4.0));

        // Same tensor built as B_e = diag(1, 1, (p/g)²) with p = 2, g = 1.
        let fe = elastic_stretch(&DiagTensor3::uniaxial(2.0), &DiagTensor3::IDENTITY).unwrap();
        let inv = invariants(&fe.left_cauchy_green()).unwrap();
        assert_eq!((inv.first, inv.second, inv.third), (6.0, 9.0, 4.0));
    }

    #[test]
    fn invariants_reject_non_positive() {
        assert!(matches!(
            invariants(&DiagTensor3::new(1.0, 0.0, 1.0)),
            Err(Error::Domain { .. })
        ));
        assert!(invariants(&DiagTensor3::new(1.0, -2.0, 1.0)).is_err());
        assert!(invariants(&DiagTensor3::new(1.0, f64::NAN, 1.0)).is_err());
    }

    #[test]
    fn elastic_stretch_examples() {
        let f = DiagTensor3::uniaxial(3.0);
        assert_eq!(elastic_stretch(&f, &DiagTensor3::IDENTITY).unwrap(), f);
        let fe = elastic_stretch(&DiagTensor3::uniaxial(4.0), &DiagTensor3::uniaxial(2.0)).unwrap();
        assert_eq!(fe, DiagTensor3::uniaxial(2.0));
        let f = DiagTensor3::new(1.3, 0.7, 2.9);
        assert_eq!(elastic_stretch(&f, &f).unwrap(), DiagTensor3::IDENTITY);
        assert!(elastic_stretch(&f, &DiagTensor3::uniaxial(0.0)).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobians(&DiagTensor3::uniaxial(2.0), &DiagTensor3::IDENTITY).unwrap();
        assert_eq!((j.total, j.natural, j.elastic), (2.0, 1.0, 2.0));
        let j = jacobians(&DiagTensor3::uniaxial(4.0), &DiagTensor3::uniaxial(2.0)).unwrap();
        assert_eq!((j.total, j.natural, j.elastic), (4.0, 2.0, 2.0));
        let f = DiagTensor3::uniaxial(3.0);
        let j = jacobians(&f, &f).unwrap();
        assert_eq!((j.total, j.natural, j.elastic), (3.0, 3.0, 1.0));
    }

    proptest! {
        #[test]
        fn total_jacobian_splits(a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0,
                                 x in 0.1f64..10.0, y in 0.1f64..10.0, z in 0.1f64..10.0) {
            let f = DiagTensor3::new(a, b, c);
            let g = DiagTensor3::new(x, y, z);
            let j = jacobians(&f, &g).unwrap();
            prop_assert!((j.total - j.elastic * j.natural).abs() <= 4.0 * f64::EPSILON * j.total);
        }

        #[test]
        fn uniaxial_family_closed_form(b in 1e-3f64..1e3) {
            let inv = invariants(&DiagTensor3::uniaxial(b)).unwrap();
            let tol = 1e-12 * (1.0 + b);
            prop_assert!((inv.first - 2.0 - b).abs() <= tol);
            prop_assert!((inv.third - b).abs() <= tol);
            prop_assert!((inv.second - (2.0 * b + 1.0)).abs() <= tol);
        }
    }
}
