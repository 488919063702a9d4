//! Half-integral-weight Maass-Poincare series on Gamma_0(4): Whittaker seed,
//! coset machinery, theta automorphy factor, and direct evaluation for
//! Re(s) > 1.
//!
//! Double-coset representatives carry one matrix per (c, d mod c); the full
//! Gamma_infty \ Gamma sum is recovered by the right translates gamma T^n,
//! i.e. by evaluating the slashed seed at tau + n. Truncation is (c_max,
//! n_span); the growth and xi checks use the structural tail (the c > 0 part),
//! which avoids subtracting two exponentially large numbers at large v.

use crate::acc::KahanC64;
use crate::error::{Error, Result};
use crate::qforms::{Gl2Int, UHPoint};
use crate::specfun::{kronecker_signed, mathcal_m, recip_gamma};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Translates per unit of (v+1) in the d-direction window.
const N_SPAN_FACTOR: f64 = 110.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareSpec {
    /// Half-integral weight.
    pub kappa: f64,
    /// Spectral parameter, Re(s) > 1.
    pub s: Complex64,
    /// Index (discriminant label) of the seed; the seed frequency is sgn(kappa) m.
    pub m: i64,
    /// Coset truncation in c.
    pub c_max: i64,
}

impl PoincareSpec {
    pub fn new(kappa: f64, s: Complex64, m: i64, c_max: i64) -> Result<Self> {
        if (2.0 * kappa - (2.0 * kappa).round()).abs() > 1e-12 {
            return Err(Error::Domain(format!("kappa={kappa} must be half-integral")));
        }
        if ((2.0 * kappa).round() as i64) % 2 == 0 {
            return Err(Error::Domain(format!(
                "kappa={kappa} must lie in 1/2 + Z for the theta multiplier"
            )));
        }
        if s.re <= 1.0 {
            return Err(Error::SpectralDomain(
                "Poincare series needs Re(s) > 1".into(),
            ));
        }
        if m == 0 {
            return Err(Error::Domain("seed index m must be nonzero".into()));
        }
        if c_max < 0 {
            return Err(Error::Domain("c_max must be >= 0".into()));
        }
        Ok(Self { kappa, s, m, c_max })
    }

    fn seed_index(&self) -> i64 {
        if self.kappa >= 0.0 {
            self.m
        } else {
            -self.m
        }
    }
}

/// psi_{m,kappa}(s; tau) = (4 pi |m|)^{kappa/2} Gamma(2s)^{-1}
///                         M_{kappa,s}(4 pi m v) e^{2 pi i m u}.
pub fn seed_psi(m: i64, kappa: f64, s: Complex64, tau: UHPoint) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Domain("seed index must be nonzero".into()));
    }
    let t = 4.0 * PI * m as f64 * tau.y;
    let whitt = mathcal_m(kappa, s, t)?;
    let phase = 2.0 * PI * m as f64 * tau.x;
    Ok(Complex64::new((4.0 * PI * m.unsigned_abs() as f64).powf(kappa / 2.0), 0.0)
        * recip_gamma(s * 2.0)
        * whitt
        * Complex64::new(phase.cos(), phase.sin()))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a.rem_euclid(b)) }
}

/// One representative per double coset Gamma_infty \ Gamma_0(4) / Gamma_infty
/// with 0 <= c <= c_max: the identity plus, for every c divisible by 4, one
/// matrix per residue d mod c with gcd(c,d) = 1.
pub fn coset_reps(c_max: i64) -> Vec<Gl2Int> {
    let mut reps = vec![Gl2Int::identity()];
    let mut c = 4;
    while c <= c_max {
        for d in 1..c {
            if gcd(c, d) != 1 {
                continue;
            }
            // a d - b c = 1
            let (_, x, y) = ext_gcd(d, c);
            reps.push(Gl2Int { a: x, b: -y, c, d });
        }
        c += 4;
    }
    reps
}

/// Theta automorphy factor j(g,tau)^{2 kappa} with
/// j(g,tau) = (c|d) eps_d^{-1} (c tau + d)^{1/2} for c > 0, and j = 1 for the
/// identity coset. The matrix is normalized by +-1 to c > 0 (or c = 0, d > 0)
/// first; 2 kappa must be an odd integer.
pub fn theta_multiplier(g: &Gl2Int, tau: UHPoint, kappa: f64) -> Result<Complex64> {
    if g.det() != 1 {
        return Err(Error::Domain("multiplier needs determinant 1".into()));
    }
    if !g.in_gamma0(4) {
        return Err(Error::Domain("multiplier defined on Gamma_0(4)".into()));
    }
    let two_kappa = (2.0 * kappa).round();
    if (2.0 * kappa - two_kappa).abs() > 1e-12 || (two_kappa as i64) % 2 == 0 {
        return Err(Error::Domain(format!(
            "theta multiplier needs kappa in 1/2 + Z, got {kappa}"
        )));
    }
    let g = if g.c < 0 || (g.c == 0 && g.d < 0) { g.neg() } else { *g };
    if g.c == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let eps_d = if g.d.rem_euclid(4) == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::i()
    };
    let chi = Complex64::new(kronecker_signed(g.c, g.d) as f64, 0.0) / eps_d;
    Ok(chi.powi(two_kappa as i32) * g.cocycle(tau).powf(kappa))
}

/// P_{kappa,s,Gamma_0(4),m} truncated at (c_max, n_span), evaluated as
/// seed + tail so the two pieces stay separately accessible.
#[derive(Debug, Clone)]
pub struct PoincareSeries {
    pub spec: PoincareSpec,
    reps: Vec<Gl2Int>,
    n_span: i64,
}

impl PoincareSeries {
    /// v_ref sizes the translate window; use the largest v the series will be
    /// evaluated at.
    pub fn new(spec: PoincareSpec, v_ref: f64) -> Result<Self> {
        PoincareSpec::new(spec.kappa, spec.s, spec.m, spec.c_max)?;
        let n_span = (N_SPAN_FACTOR * (v_ref + 1.0)).ceil() as i64;
        Ok(Self { spec, reps: coset_reps(spec.c_max), n_span })
    }

    pub fn seed(&self, tau: UHPoint) -> Result<Complex64> {
        seed_psi(self.spec.seed_index(), self.spec.kappa, self.spec.s, tau)
    }

    /// The c > 0 part: sum over nontrivial cosets and their right T-translates.
    /// This equals (series - seed) without cancellation.
    pub fn tail(&self, tau: UHPoint) -> Result<Complex64> {
        let spec = self.spec;
        let idx = spec.seed_index();
        let n_span = self.n_span;
        let partials: std::result::Result<Vec<Complex64>, Error> = self
            .reps
            .par_iter()
            .filter(|g| g.c > 0)
            .map(|g| {
                let mut acc = KahanC64::new();
                for n in -n_span..=n_span {
                    let shifted = tau.shifted(n as f64, 0.0);
                    let j2k = theta_multiplier(g, shifted, spec.kappa)?;
                    let val = seed_psi(idx, spec.kappa, spec.s, g.apply(shifted))?;
                    acc.add(val / j2k);
                }
                Ok(acc.value())
            })
            .collect();
        let mut total = KahanC64::new();
        for p in partials? {
            total.add(p);
        }
        Ok(total.value())
    }

    pub fn eval(&self, tau: UHPoint) -> Result<Complex64> {
        Ok(self.seed(tau)? + self.tail(tau)?)
    }
}

/// One-shot evaluation of the Poincare series.
pub fn eval_poincare(spec: &PoincareSpec, tau: UHPoint) -> Result<Complex64> {
    PoincareSeries::new(*spec, tau.y)?.eval(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::{laplacian_op, xi_op, OperatorConfig};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(x: f64, y: f64) -> UHPoint {
        UHPoint::new(x, y).unwrap()
    }

    #[test]
    fn seed_holomorphic_collapse() {
        // s = kappa/2, m > 0: seed = (4 pi m)^{kappa/2} Gamma(kappa)^{-1} e^{2 pi i m tau}.
        let kappa = 2.5f64;
        let s = c64(kappa / 2.0, 0.0);
        let m = 2i64;
        let tau = pt(0.27, 0.9);
        let got = seed_psi(m, kappa, s, tau).unwrap();
        let q = (Complex64::new(0.0, 2.0 * PI * m as f64) * tau.z()).exp();
        let want = (4.0 * PI * m as f64).powf(kappa / 2.0)
            * recip_gamma(c64(kappa, 0.0))
            * q;
        assert!((got - want).norm() <= 1e-13 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn seed_is_eigenfunction() {
        let kappa = 2.5f64;
        let s = c64(2.0, 0.0);
        let m = 5i64;
        let f = move |tau: UHPoint| seed_psi(m, kappa, s, tau).unwrap();
        let tau = pt(0.2, 1.0);
        let lam = (s - kappa / 2.0) * (1.0 - s.re - kappa / 2.0 - Complex64::new(0.0, s.im));
        let got = laplacian_op(kappa, &f, tau, &OperatorConfig::default());
        let want = lam * f(tau);
        assert!(
            (got - want).norm() <= 1e-6 * want.norm(),
            "rel={}",
            (got - want).norm() / want.norm()
        );
    }

    #[test]
    fn seed_modulus_independent_of_u() {
        let kappa = 2.5f64;
        let s = c64(1.8, 0.3);
        let a = seed_psi(3, kappa, s, pt(0.0, 0.7)).unwrap().norm();
        let b = seed_psi(3, kappa, s, pt(0.41, 0.7)).unwrap().norm();
        assert!((a - b).abs() <= 1e-13 * a);
    }

    #[test]
    fn coset_reps_counts() {
        assert_eq!(coset_reps(0), vec![Gl2Int::identity()]);
        let four = coset_reps(4);
        assert_eq!(four.len(), 3); // identity + phi(4) = 2
        for c in (4..=16).step_by(4) {
            let phi = (1..c).filter(|d| gcd(c, *d) == 1).count();
            let count = coset_reps(c).len() - coset_reps(c - 1).len();
            assert_eq!(count, phi, "c={c}");
        }
        for g in coset_reps(16) {
            assert_eq!(g.det(), 1);
            assert!(g.in_gamma0(4));
        }
    }

    #[test]
    fn multiplier_trivial_cases() {
        let tau = pt(0.3, 1.2);
        assert_eq!(
            theta_multiplier(&Gl2Int::identity(), tau, 2.5).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            theta_multiplier(&Gl2Int::t(), tau, 2.5).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    #[test]
    fn multiplier_cocycle() {
        // j(g1 g2, tau)^{2k} = j(g1, g2 tau)^{2k} j(g2, tau)^{2k}
        let mut rng = StdRng::seed_from_u64(7);
        let v4 = Gl2Int::new(1, 0, 4, 1).unwrap();
        let random_gamma04 = |rng: &mut StdRng| loop {
            let mut g = Gl2Int::identity();
            for _ in 0..rng.gen_range(1..6) {
                g = if rng.gen_bool(0.5) {
                    g.mul(&Gl2Int::t())
                } else if rng.gen_bool(0.5) {
                    g.mul(&Gl2Int::t().inv())
                } else {
                    g.mul(&v4)
                };
            }
            if g.c.abs() <= 100 {
                return g;
            }
        };
        let kappa = 2.5;
        let mut checked = 0;
        while checked < 500 {
            let g1 = random_gamma04(&mut rng);
            let g2 = random_gamma04(&mut rng);
            let prod = g1.mul(&g2);
            if prod.c.abs() > 100 {
                continue;
            }
            let tau = pt(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0));
            let lhs = theta_multiplier(&prod, tau, kappa).unwrap();
            let rhs = theta_multiplier(&g1, g2.apply(tau), kappa).unwrap()
                * theta_multiplier(&g2, tau, kappa).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()),
                "g1={g1:?} g2={g2:?}: {lhs} vs {rhs}"
            );
            checked += 1;
        }
    }

    #[test]
    fn truncation_self_consistency() {
        let tau = pt(0.0, 2.0);
        let a = eval_poincare(
            &PoincareSpec::new(2.5, c64(2.0, 0.0), 5, 200).unwrap(),
            tau,
        )
        .unwrap();
        let b = eval_poincare(
            &PoincareSpec::new(2.5, c64(2.0, 0.0), 5, 400).unwrap(),
            tau,
        )
        .unwrap();
        assert!((a - b).norm() <= 1e-4 * a.norm(), "{a} vs {b}");
    }

    #[test]
    fn growth_rate_slope() {
        // |P - seed| ~ v^{1 - Re(s) - kappa/2} as v -> infinity.
        let spec = PoincareSpec::new(2.5, c64(2.0, 0.0), 5, 200).unwrap();
        let mut logs = Vec::new();
        for v in [4.0, 8.0, 16.0] {
            let series = PoincareSeries::new(spec, v).unwrap();
            let t = series.tail(pt(0.0, v)).unwrap();
            logs.push((v.ln(), t.norm().ln()));
        }
        let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
        let want = 1.0 - 2.0 - 2.5 / 2.0;
        assert!(
            (slope - want).abs() <= 0.1 * want.abs(),
            "slope={slope} want={want}"
        );
    }

    #[test]
    fn poincare_eigenfunction() {
        let spec = PoincareSpec::new(2.5, c64(2.0, 0.0), 5, 120).unwrap();
        let tau = pt(0.2, 1.0);
        let series = PoincareSeries::new(spec, 1.1).unwrap();
        let f = |w: UHPoint| series.eval(w).unwrap();
        let got = laplacian_op(spec.kappa, &f, tau, &OperatorConfig::default());
        let lam = (spec.s - spec.kappa / 2.0) * (Complex64::new(1.0 - spec.kappa / 2.0, 0.0) - spec.s);
        let want = lam * f(tau);
        let rel = (got - want).norm() / want.norm();
        assert!(rel <= 1e-2, "rel={rel}");
    }

    #[test]
    fn xi_relation_between_weights() {
        // xi_kappa(P_{kappa,s,m}) = (conj(s) - kappa/2) P_{2-kappa,conj(s),m}
        let kappa = 2.5;
        let s = c64(2.0, 0.0);
        let m = 5i64;
        let tau = pt(0.2, 1.0);
        let pos = PoincareSeries::new(PoincareSpec::new(kappa, s, m, 120).unwrap(), 1.1).unwrap();
        let neg = PoincareSeries::new(
            PoincareSpec::new(2.0 - kappa, s.conj(), m, 120).unwrap(),
            1.1,
        )
        .unwrap();
        let f = |w: UHPoint| pos.eval(w).unwrap();
        let lhs = xi_op(kappa, &f, tau, &OperatorConfig::default());
        let rhs = (s.conj() - kappa / 2.0) * neg.eval(tau).unwrap();
        let rel = (lhs - rhs).norm() / (lhs.norm() + rhs.norm());
        assert!(rel <= 1e-2, "lhs={lhs} rhs={rhs} rel={rel}");
    }

    #[test]
    fn modularity_under_gamma04_generators() {
        // P(gamma tau) = j(gamma,tau)^{2 kappa} P(tau) up to truncation noise,
        // for the generators T and (1,0;4,1) of Gamma_0(4).
        let spec = PoincareSpec::new(2.5, c64(2.0, 0.0), 5, 300).unwrap();
        let tau = pt(0.2, 1.1);
        for g in [Gl2Int::t(), Gl2Int::new(1, 0, 4, 1).unwrap()] {
            let gtau = g.apply(tau);
            let series = PoincareSeries::new(spec, tau.y.max(gtau.y)).unwrap();
            let lhs = series.eval(gtau).unwrap();
            let rhs = theta_multiplier(&g, tau, spec.kappa).unwrap() * series.eval(tau).unwrap();
            let rel = (lhs - rhs).norm() / (lhs.norm() + rhs.norm());
            assert!(rel <= 1e-2, "g={g:?}: rel={rel}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(PoincareSpec::new(2.5, c64(0.9, 0.0), 5, 100).is_err());
        assert!(PoincareSpec::new(2.0, c64(2.0, 0.0), 5, 100).is_err());
        assert!(PoincareSpec::new(2.5, c64(2.0, 0.0), 0, 100).is_err());
    }
}
