//! Per-form geodesics, the finite vanishing set B_z = {Q : Q_z = 0}, and the
//! closed-form prediction for the jump of F_{1-k,s,D} across the exceptional
//! set E_D.

use crate::error::{Error, Result};
use crate::qforms::{enumerate_disc_forms, EnumBudget, QForm, UHPoint};
use crate::specfun::{KernelParams, RadialKernel};
use num_complex::Complex64;

/// The locus a|z|^2 + bx + c = 0 attached to a form of positive discriminant:
/// a semicircle perpendicular to the real axis when a != 0, a vertical line
/// when a = 0 (which forces the discriminant to be a perfect square).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcKind {
    Semicircle { center: f64, radius: f64 },
    Vertical { x0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicArc {
    pub form: QForm,
    pub kind: ArcKind,
}

/// Solution locus of a|z|^2 + bx + c = 0 in the upper half-plane.
pub fn geodesic_of_form(q: &QForm) -> Result<GeodesicArc> {
    let d = q.disc();
    if d <= 0 {
        return Err(Error::Domain(format!(
            "geodesic needs positive discriminant, form {q:?} has {d}"
        )));
    }
    let kind = if q.a != 0 {
        ArcKind::Semicircle {
            center: -q.b as f64 / (2.0 * q.a as f64),
            radius: (d as f64).sqrt() / (2.0 * q.a.unsigned_abs() as f64),
        }
    } else {
        // disc = b^2 > 0, so b != 0.
        ArcKind::Vertical { x0: -q.c as f64 / q.b as f64 }
    };
    Ok(GeodesicArc { form: *q, kind })
}

/// Forms of discriminant d whose geodesic passes through z (|Q_z| <= tol).
#[derive(Debug, Clone)]
pub struct VanishingSet {
    pub z: UHPoint,
    pub forms: Vec<QForm>,
}

pub const DEFAULT_VANISHING_TOL: f64 = 1e-9;

pub fn vanishing_forms(z: UHPoint, d: i64, tol: f64) -> Result<VanishingSet> {
    if tol < 0.0 {
        return Err(Error::Domain("vanishing tolerance must be >= 0".into()));
    }
    let forms = enumerate_disc_forms(z, d, tol * tol, &EnumBudget::default())?;
    Ok(VanishingSet { z, forms })
}

/// Closed-form two-sided jump of F_{1-k,s,D} across E_D at z:
///
///   lim_{r->0+} [F(z+ir) - F(z-ir)] = 2 sum_{Q in B_z} sgn(2a) Q(z,1)^{k-1}
///                                       phi*_s(D y^2 / |Q(z,1)|^2).
///
/// The sign from above is resolved analytically: at Q_z = 0 one has
/// dQ_z/dy = 2a, so Q_{z+ir} takes the sign of a for small r. Vertical
/// geodesics (a = 0) are not crossed by the vertical approach and are
/// rejected.
pub fn predicted_jump(z: UHPoint, p: &KernelParams) -> Result<Complex64> {
    let vanishing = vanishing_forms(z, p.d, DEFAULT_VANISHING_TOL)?;
    if vanishing.forms.is_empty() {
        return Err(Error::EmptyVanishingSet);
    }
    if vanishing.forms.iter().any(|q| q.a == 0) {
        return Err(Error::VerticalGeodesic);
    }
    let kernel = RadialKernel::phi_star(p)?;
    let mut jump = Complex64::new(0.0, 0.0);
    for q in &vanishing.forms {
        let (qpoly, qz) = q.values(z);
        let w = p.d as f64 / (qz * qz + p.d as f64);
        let sign = if q.a > 0 { 1.0 } else { -1.0 };
        jump += 2.0 * sign * qpoly.powi(p.k as i32 - 1) * kernel.eval(w)?;
    }
    Ok(jump)
}
