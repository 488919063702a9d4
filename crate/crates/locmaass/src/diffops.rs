//! Finite-difference realizations of the weight-kappa hyperbolic operators
//!
//!   Delta_kappa = -v^2 (d_uu + d_vv) + i kappa v (d_u + i d_v)
//!   xi_kappa    = 2 i v^kappa conj(d/d tau-bar)
//!
//! acting on black-box functions on the upper half-plane, with optional
//! Richardson extrapolation. Central stencils; the step is scaled by
//! min(1, v) so points near the real axis keep their stencil inside H.

use crate::error::{Error, Result};
use crate::qforms::UHPoint;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct OperatorConfig {
    pub h: f64,
    pub richardson: bool,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        Self { h: 1e-3, richardson: true }
    }
}

impl OperatorConfig {
    pub fn new(h: f64, richardson: bool) -> Result<Self> {
        if !(h > 0.0 && h <= 1e-2) {
            return Err(Error::Domain(format!("step h={h} outside (0, 1e-2]")));
        }
        Ok(Self { h, richardson })
    }

    fn scaled(&self, tau: UHPoint) -> f64 {
        self.h * tau.y.min(1.0)
    }
}

fn first_derivatives<F>(f: &F, tau: UHPoint, h: f64) -> (Complex64, Complex64)
where
    F: Fn(UHPoint) -> Complex64,
{
    let fu = (f(tau.shifted(h, 0.0)) - f(tau.shifted(-h, 0.0))) / (2.0 * h);
    let fv = (f(tau.shifted(0.0, h)) - f(tau.shifted(0.0, -h))) / (2.0 * h);
    (fu, fv)
}

/// xi_kappa(F)(tau) = 2 i v^kappa conj((F_u + i F_v)/2).
pub fn xi_op<F>(kappa: f64, f: &F, tau: UHPoint, cfg: &OperatorConfig) -> Complex64
where
    F: Fn(UHPoint) -> Complex64,
{
    let h = cfg.scaled(tau);
    let at = |h: f64| {
        let (fu, fv) = first_derivatives(f, tau, h);
        let dbar = (fu + Complex64::i() * fv) / 2.0;
        2.0 * Complex64::i() * tau.y.powf(kappa) * dbar.conj()
    };
    if cfg.richardson {
        (4.0 * at(h / 2.0) - at(h)) / 3.0
    } else {
        at(h)
    }
}

/// Delta_kappa(F)(tau) by central second differences.
pub fn laplacian_op<F>(kappa: f64, f: &F, tau: UHPoint, cfg: &OperatorConfig) -> Complex64
where
    F: Fn(UHPoint) -> Complex64,
{
    let h = cfg.scaled(tau);
    let center = f(tau);
    let at = |h: f64| {
        let fpu = f(tau.shifted(h, 0.0));
        let fmu = f(tau.shifted(-h, 0.0));
        let fpv = f(tau.shifted(0.0, h));
        let fmv = f(tau.shifted(0.0, -h));
        let fu = (fpu - fmu) / (2.0 * h);
        let fv = (fpv - fmv) / (2.0 * h);
        let fuu = (fpu - 2.0 * center + fmu) / (h * h);
        let fvv = (fpv - 2.0 * center + fmv) / (h * h);
        let v = tau.y;
        -(v * v) * (fuu + fvv)
            + Complex64::i() * kappa * v * (fu + Complex64::i() * fv)
    };
    if cfg.richardson {
        (4.0 * at(h / 2.0) - at(h)) / 3.0
    } else {
        at(h)
    }
}
