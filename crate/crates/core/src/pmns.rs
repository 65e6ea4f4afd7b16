//! The three-flavor lepton mixing matrix.
//!
//! Rows are indexed by flavor (e, μ, τ), columns by mass eigenstate (1, 2, 3),
//! so that `|ν_α⟩ = Σ_i U*_αi |ν_i⟩`.

use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::flavor::Flavor;

/// Mixing angles in radians, first-quadrant convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngles {
    theta12: f64,
    theta13: f64,
    theta23: f64,
}

impl MixingAngles {
    pub fn new(theta12: f64, theta13: f64, theta23: f64) -> Result<Self> {
        for (name, v) in [
            ("theta12", theta12),
            ("theta13", theta13),
            ("theta23", theta23),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
            if !(0.0..=FRAC_PI_2).contains(&v) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    min: 0.0,
                    max: FRAC_PI_2,
                });
            }
        }
        Ok(Self {
            theta12,
            theta13,
            theta23,
        })
    }

    /// Builds the angles from `sin²θ` values, taking the first-quadrant branch.
    pub fn from_sin2(s2_12: f64, s2_13: f64, s2_23: f64) -> Result<Self> {
        let angle = |name: &'static str, s2: f64| -> Result<f64> {
            if !s2.is_finite() {
                return Err(Error::NonFinite(name));
            }
            if !(0.0..=1.0).contains(&s2) {
                return Err(Error::OutOfRange {
                    name,
                    value: s2,
                    min: 0.0,
                    max: 1.0,
                });
            }
            Ok(s2.sqrt().asin())
        };
        Self::new(
            angle("sin2_theta12", s2_12)?,
            angle("sin2_theta13", s2_13)?,
            angle("sin2_theta23", s2_23)?,
        )
    }

    pub fn theta12(&self) -> f64 {
        self.theta12
    }

    pub fn theta13(&self) -> f64 {
        self.theta13
    }

    pub fn theta23(&self) -> f64 {
        self.theta23
    }
}

/// A unitary 3×3 mixing matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmnsMatrix {
    u: Matrix3<Complex64>,
}

impl PmnsMatrix {
    /// Element `U_αi`; `mass` is the zero-based mass index.
    pub fn get(&self, flavor: Flavor, mass: usize) -> Complex64 {
        self.u[(flavor.index(), mass)]
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.u
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.u)
    }

    /// `|U_αi|²` for every flavor row.
    pub fn moduli_squared(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.u[(r, c)].norm_sqr();
            }
        }
        out
    }
}

/// Standard parameterization with Dirac phase `delta_cp` (reduced mod 2π).
pub fn build_pmns(angles: MixingAngles, delta_cp: f64) -> Result<PmnsMatrix> {
    if !delta_cp.is_finite() {
        return Err(Error::NonFinite("delta_cp"));
    }
    let delta = delta_cp.rem_euclid(TAU);
    let (s12, c12) = angles.theta12.sin_cos();
    let (s13, c13) = angles.theta13.sin_cos();
    let (s23, c23) = angles.theta23.sin_cos();
    // e^{iδ}; exact 1 at δ = 0 so the matrix is exactly real there
    let phase = if delta == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, delta)
    };
    let re = |x: f64| Complex64::new(x, 0.0);

    #[rustfmt::skip]
    let u = Matrix3::new(
        re(c12 * c13),                               re(s12 * c13),                               phase.conj() * s13,
        re(-s12 * c23) - phase * (c12 * s13 * s23),  re(c12 * c23) - phase * (s12 * s13 * s23),   re(s23 * c13),
        re(s12 * s23) - phase * (c12 * s13 * c23),   re(-c12 * s23) - phase * (c23 * s12 * s13),  re(c13 * c23),
    );
    Ok(PmnsMatrix { u })
}

/// `max |(U·U† − I)_ij|`.
pub fn unitarity_deviation(u: &Matrix3<Complex64>) -> f64 {
    let prod = u * u.adjoint();
    let mut worst = 0.0_f64;
    for r in 0..3 {
        for c in 0..3 {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((prod[(r, c)] - target).norm());
        }
    }
    worst
}
