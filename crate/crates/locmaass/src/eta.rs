//! The discriminant cusp form Delta through its eta product, used as the
//! independent oracle for the one-dimensional space of weight-12 cusp forms.

use crate::qforms::UHPoint;
use num_complex::Complex64;

/// Delta(z) = q prod_{n>=1} (1 - q^n)^24 with q = e^{2 pi i z}.
pub fn delta_eta(z: UHPoint) -> Complex64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let q = (Complex64::new(0.0, two_pi) * z.z()).exp();
    // |q|^n below 1e-18 contributes nothing at double precision.
    let n_max = ((42.0 / (two_pi * z.y)).ceil() as usize).clamp(1, 400);
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..=n_max {
        qn *= q;
        prod *= (Complex64::new(1.0, 0.0) - qn).powi(24);
    }
    q * prod
}

/// Coefficients tau(1), ..., tau(n_max) of Delta = sum tau(n) q^n, by exact
/// integer expansion of the eta product.
pub fn delta_coefficients(n_max: usize) -> Vec<i64> {
    // P(q) = prod_{n=1}^{n_max} (1 - q^n)^24 mod q^{n_max}; Delta = q P(q).
    let mut coeffs = vec![0i64; n_max];
    if n_max == 0 {
        return coeffs;
    }
    let mut p = vec![0i64; n_max];
    p[0] = 1;
    for n in 1..n_max {
        for _ in 0..24 {
            // multiply by (1 - q^n)
            for i in (n..n_max).rev() {
                p[i] -= p[i - n];
            }
        }
    }
    for (i, v) in p.iter().enumerate() {
        coeffs[i] = *v; // tau(i+1)
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        let tau = delta_coefficients(7);
        assert_eq!(tau, vec![1, -24, 252, -1472, 4830, -6048, -16744]);
    }

    #[test]
    fn eta_product_matches_q_expansion() {
        let z = UHPoint::new(0.13, 1.4).unwrap();
        let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z.z()).exp();
        let tau = delta_coefficients(30);
        let mut series = Complex64::new(0.0, 0.0);
        let mut qn = Complex64::new(1.0, 0.0);
        for t in &tau {
            qn *= q;
            series += qn * *t as f64;
        }
        let direct = delta_eta(z);
        assert!((series - direct).norm() < 1e-13 * direct.norm());
    }

    #[test]
    fn delta_is_weight_12_modular() {
        let z = UHPoint::new(0.3, 0.8).unwrap();
        let s_img = UHPoint::new(-z.x / (z.x * z.x + z.y * z.y), z.y / (z.x * z.x + z.y * z.y))
            .unwrap();
        let lhs = delta_eta(s_img);
        let rhs = z.z().powi(12) * delta_eta(z);
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }
}
