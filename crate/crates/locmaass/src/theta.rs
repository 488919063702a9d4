//! The two indefinite theta kernels
//!
//!   Theta(z,tau)  = y^{-2k} v^{1/2} sum_Q Q(z,1)^k e^{-4 pi Q_z^2 v} e^{2 pi i D tau}
//!   Theta*(z,tau) = v^k sum_Q Q_z Q(z,1)^{k-1} e^{-4 pi |Q(z,1)|^2 v / y^2} e^{-2 pi i D tau}
//!
//! summed over all integer forms (every discriminant). Both series share the
//! Gaussian majorant exponent -2 pi v (2 Q_z^2 + D), which is what the
//! truncation cuts on, so the real exponential is evaluated in the regrouped
//! form exp(-2 pi v G) with G the majorant; no large intermediate factors
//! appear even for very negative D.

use crate::acc::sum_mapped;
use crate::error::{Error, Result};
use crate::evaluators::{SumConfig, Truncation};
use crate::qforms::{enumerate_majorant, EnumBudget, QForm, UHPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

/// The pair (z, tau) of lift and kernel variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPoint {
    pub z: UHPoint,
    pub tau: UHPoint,
}

/// Smallest cutoff t with dropped-mass bound e^{-2 pi v t} (t/v)^{3/2} < tol.
pub fn gaussian_cutoff(v: f64, tol: f64) -> f64 {
    let mut t = (1.0 / (2.0 * PI * v)).max(1.0);
    while (-2.0 * PI * v * t).exp() * (t / v).powf(1.5) >= tol {
        t *= 1.25;
    }
    t
}

fn cutoff_from_config(v: f64, cfg: &SumConfig) -> f64 {
    match cfg.truncation {
        Truncation::Qz2Max(t) => t,
        Truncation::TargetTol(tol) => gaussian_cutoff(v, tol),
    }
}

/// Theta evaluator over a frozen majorant enumeration, reusable across
/// finite-difference stencils in both variables.
#[derive(Debug, Clone)]
pub struct FrozenTheta {
    pub k: u32,
    pub forms: Vec<QForm>,
}

impl FrozenTheta {
    /// Enumerate at `center` with cutoff sized for the smallest v the stencil
    /// will see, widened by `margin` so small z-shifts cannot drop terms.
    pub fn new(k: u32, center: UHPoint, v_min: f64, cfg: &SumConfig, margin: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("theta kernels need k >= 1".into()));
        }
        let t_max = cutoff_from_config(v_min, cfg) * margin;
        let forms = enumerate_majorant(center, t_max, &EnumBudget { max_cells: cfg.max_cells })?;
        if forms.len() > cfg.max_forms {
            return Err(Error::Capacity(format!(
                "{} theta terms exceed the cap {}",
                forms.len(),
                cfg.max_forms
            )));
        }
        Ok(Self { k, forms })
    }

    /// Theta(z, tau) over the frozen set.
    pub fn theta(&self, z: UHPoint, tau: UHPoint) -> Complex64 {
        let k = self.k as i32;
        let (v, u) = (tau.y, tau.x);
        let scale = z.y.powi(-2 * k) * v.sqrt();
        scale
            * sum_mapped(&self.forms, |q| {
                let (qpoly, qz) = q.values(z);
                let g = 2.0 * qz * qz + q.disc() as f64;
                let phase = 2.0 * PI * q.disc() as f64 * u;
                qpoly.powi(k)
                    * (-2.0 * PI * v * g).exp()
                    * Complex64::new(phase.cos(), phase.sin())
            })
    }

    /// Theta*(z, tau) over the frozen set.
    pub fn theta_star(&self, z: UHPoint, tau: UHPoint) -> Complex64 {
        let k = self.k as i32;
        let (v, u) = (tau.y, tau.x);
        let scale = v.powi(k);
        scale
            * sum_mapped(&self.forms, |q| {
                let (qpoly, qz) = q.values(z);
                let g = 2.0 * qz * qz + q.disc() as f64;
                let phase = -2.0 * PI * q.disc() as f64 * u;
                qpoly.powi(k - 1)
                    * qz
                    * (-2.0 * PI * v * g).exp()
                    * Complex64::new(phase.cos(), phase.sin())
            })
    }
}

/// Theta(z, tau) with the Gaussian truncation taken from cfg.
pub fn eval_theta(k: u32, pt: ThetaPoint, cfg: &SumConfig) -> Result<Complex64> {
    Ok(FrozenTheta::new(k, pt.z, pt.tau.y, cfg, 1.0)?.theta(pt.z, pt.tau))
}

/// Theta*(z, tau) with the Gaussian truncation taken from cfg.
pub fn eval_theta_star(k: u32, pt: ThetaPoint, cfg: &SumConfig) -> Result<Complex64> {
    Ok(FrozenTheta::new(k, pt.z, pt.tau.y, cfg, 1.0)?.theta_star(pt.z, pt.tau))
}

/// Relative residual of the differential identities coupling the kernels:
///
///   which = 1:  xi_{k+1/2,tau} Theta(z,tau)       = -i y^{2-2k} d_z Theta*(-conj z, tau)
///   which = 2:  xi_{3/2-k,tau} Theta*(-conj z,tau) = -i y^{2k}   d_z Theta(z, tau)
///
/// Both sides are formed by central differences with step h; the xi stencil
/// lives in tau, the d_z stencil in z. The enumeration is frozen across the
/// stencils so the residual measures only the finite-difference error.
pub fn theta_identity_residual(k: u32, pt: ThetaPoint, which: u8, h: f64) -> Result<f64> {
    if !(1e-5..=1e-3).contains(&h) {
        return Err(Error::Domain(format!("step h={h} outside [1e-5, 1e-3]")));
    }
    if which != 1 && which != 2 {
        return Err(Error::Domain("which must be 1 or 2".into()));
    }
    let (z, tau) = (pt.z, pt.tau);
    let mirror = UHPoint::new(-z.x, z.y)?;
    let cfg = SumConfig::with_target_tol(1e-14);
    let fr_z = FrozenTheta::new(k, z, tau.y - h, &cfg, 1.3)?;
    let fr_m = FrozenTheta::new(k, mirror, tau.y - h, &cfg, 1.3)?;

    // xi_{kappa,tau} F = i v^kappa conj(F_u + i F_v)
    let xi_tau = |f: &dyn Fn(UHPoint) -> Complex64, kappa: f64| {
        let fu = (f(tau.shifted(h, 0.0)) - f(tau.shifted(-h, 0.0))) / (2.0 * h);
        let fv = (f(tau.shifted(0.0, h)) - f(tau.shifted(0.0, -h))) / (2.0 * h);
        Complex64::i() * tau.y.powf(kappa) * (fu + Complex64::i() * fv).conj()
    };
    // d_z G = (G_x - i G_y)/2
    let dz = |g: &dyn Fn(UHPoint) -> Complex64| {
        let gx = (g(z.shifted(h, 0.0)) - g(z.shifted(-h, 0.0))) / (2.0 * h);
        let gy = (g(z.shifted(0.0, h)) - g(z.shifted(0.0, -h))) / (2.0 * h);
        (gx - Complex64::i() * gy) / 2.0
    };
    // Theta*(-conj z, tau) as a function of z.
    let star_mirrored = |w: UHPoint| fr_m.theta_star(UHPoint { x: -w.x, y: w.y }, tau);

    let (lhs, rhs) = if which == 1 {
        let lhs = xi_tau(&|t| fr_z.theta(z, t), k as f64 + 0.5);
        let rhs = -Complex64::i() * z.y.powi(2 - 2 * k as i32) * dz(&star_mirrored);
        (lhs, rhs)
    } else {
        let lhs = xi_tau(&|t| fr_m.theta_star(mirror, t), 1.5 - k as f64);
        let rhs = -Complex64::i() * z.y.powi(2 * k as i32) * dz(&|w| fr_z.theta(w, tau));
        (lhs, rhs)
    };
    Ok((lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1e-30))
}
