//! Named verification suites: every identity the library claims, run at fixed
//! configurations with measured residuals. The CLI `verify` subcommand prints
//! these; the acceptance test target asserts them.

use crate::diffops::{laplacian_op, xi_op, OperatorConfig};
use crate::error::Result;
use crate::eta::{delta_coefficients, delta_eta};
use crate::evaluators::{
    collapse_constant, eval_big_f, eval_f, eval_f_classical, frozen_big_f, frozen_f,
    frozen_f_classical, SumConfig,
};
use crate::geodesics::predicted_jump;
use crate::hecke::{hecke_family_big_f, hecke_family_f, hecke_family_f_classical, hecke_tp};
use crate::poincare::{PoincareSeries, PoincareSpec};
use crate::qforms::{Gl2Int, UHPoint};
use crate::specfun::{
    hyp2f1, hyp2f1_euler_oracle, mathcal_m, phi_star_at_one, phi_star_kernel, psi_kernel, psi_one,
    KernelParams,
};
use crate::theta::{theta_identity_residual, ThetaPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.threshold
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}/{} residual={:.3e} threshold={:.1e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.residual,
            self.threshold
        )
    }
}

fn check(suite: &'static str, name: impl Into<String>, residual: f64, threshold: f64) -> CheckResult {
    CheckResult { suite, name: name.into(), residual, threshold }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn pt(x: f64, y: f64) -> UHPoint {
    UHPoint::new(x, y).unwrap()
}

fn apex() -> UHPoint {
    pt(-0.5, 5f64.sqrt() / 2.0)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (a.norm() + b.norm()).max(1e-300)
}

/// Criterion 1: f_{2,D} vanishes identically (dim S_4 = 0); the truncated sum
/// must sit below max(tail estimate, 1e-6 * largest included term).
pub fn criterion_vanishing_weight4() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let cfg = SumConfig::with_qz2_max(12_000.0);
    for d in [5i64, 8, 12] {
        for (i, z) in [pt(0.0, 1.0), pt(1.0 / 3.0, 1.1), pt(-0.4, 0.8)].into_iter().enumerate() {
            let fr = frozen_f_classical(2, d, z, &cfg)?;
            let largest = fr
                .forms
                .iter()
                .map(|q| fr.term_abs(q, z))
                .fold(0.0f64, f64::max);
            let res = eval_f_classical(2, d, z, &cfg)?;
            let bound = res.tail_estimate.max(1e-6 * largest);
            out.push(check(
                "collapse",
                format!("f2-vanishes-D{d}-z{i}"),
                res.value.norm() / bound,
                1.0,
            ));
        }
    }
    Ok(out)
}

/// Criterion 2: S_12 is one-dimensional, so f_{6,D}/Delta is constant in z.
pub fn criterion_delta_proportionality() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let cfg = SumConfig::with_qz2_max(4000.0);
    let (z1, z2) = (pt(0.0, 1.0), pt(1.0 / 3.0, 1.1));
    for d in [5i64, 8] {
        let r1 = eval_f_classical(6, d, z1, &cfg)?.value / delta_eta(z1);
        let r2 = eval_f_classical(6, d, z2, &cfg)?.value / delta_eta(z2);
        out.push(check("collapse", format!("f6-delta-ratio-D{d}"), rel(r1, r2), 1e-5));
    }
    Ok(out)
}

/// Criterion 3: the collapse identity
/// f_{k,k/2+1/4,D} = 2^{2k-3}/(3(2k-1)) (4 pi D)^{3/4-k/2} f_{k,D}.
pub fn criterion_collapse_identity() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let cfg = SumConfig::with_qz2_max(2000.0);
    let z = pt(0.21, 0.87);
    for k in [2u32, 4] {
        let d = 5i64;
        let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
        let lhs = eval_f(&p, z, &cfg)?.value;
        let rhs = collapse_constant(k, d) * eval_f_classical(k, d, z, &cfg)?.value;
        out.push(check("collapse", format!("collapse-k{k}"), rel(lhs, rhs), 1e-10));
    }
    Ok(out)
}

/// Criterion 4: modularity under S and T with equivariant truncation.
pub fn criterion_modularity() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let cfg = SumConfig::with_qz2_max(400.0);
    let z = pt(0.23, 0.91);
    for k in [2u32, 4] {
        let s = c(k as f64 / 2.0 + 0.75);
        for d in [5i64, 8] {
            let p = KernelParams::new(k, s, d)?;
            for (gn, g) in [("S", Gl2Int::s()), ("T", Gl2Int::t())] {
                let gz = g.apply(z);
                let jf = g.cocycle(z).powi(2 * k as i32);
                let f_gz = eval_f(&p, gz, &cfg)?.value;
                let f_z = eval_f(&p, z, &cfg)?.value;
                out.push(check(
                    "modularity",
                    format!("f-k{k}-D{d}-{gn}"),
                    rel(f_gz, jf * f_z),
                    1e-9,
                ));
                let jneg = g.cocycle(z).powi(2 - 2 * k as i32);
                let big_gz = eval_big_f(&p, gz, &cfg)?.value;
                let big_z = eval_big_f(&p, z, &cfg)?.value;
                out.push(check(
                    "modularity",
                    format!("F-k{k}-D{d}-{gn}"),
                    rel(big_gz, jneg * big_z),
                    1e-8,
                ));
            }
        }
    }
    Ok(out)
}

fn eigen_points() -> [UHPoint; 3] {
    [pt(0.1, 1.3), pt(0.23, 1.49), pt(0.02, 0.73)]
}

/// Criterion 5: finite-difference Laplacian eigenvalue equations
/// Delta_{2k} f = 4 lambda_s f and Delta_{2-2k} F = 4 lambda_s F.
pub fn criterion_eigen_equations() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let k = 2u32;
    let d = 5i64;
    let cfg = SumConfig::with_qz2_max(4000.0);
    let op = OperatorConfig::default();
    for (sn, s) in [("re", c(1.75)), ("cx", Complex64::new(1.25, 0.5))] {
        let p = KernelParams::new(k, s, d)?;
        let lam4 = p.lambda_s() * 4.0;
        for (i, z) in eigen_points().into_iter().enumerate() {
            let fr = frozen_f(&p, z, &cfg)?;
            assert!(fr.min_abs_qz(z) >= 0.2, "eigen point {z:?} too close to E_D");
            let handle = |w: UHPoint| fr.eval(w);
            let lap = laplacian_op(2.0 * k as f64, &handle, z, &op);
            out.push(check(
                "eigen",
                format!("f-s{sn}-z{i}"),
                rel(lap, lam4 * fr.eval(z)),
                1e-4,
            ));
            let frb = frozen_big_f(&p, z, &cfg)?;
            let handle = |w: UHPoint| frb.eval(w);
            let lap = laplacian_op(2.0 - 2.0 * k as f64, &handle, z, &op);
            out.push(check(
                "eigen",
                format!("F-s{sn}-z{i}"),
                rel(lap, lam4 * frb.eval(z)),
                1e-4,
            ));
        }
    }
    Ok(out)
}

/// Criterion 6: xi-intertwining in both directions, and vanishing of the
/// xi_{2k}-image at the collapse point.
pub fn criterion_xi_intertwining() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let k = 2u32;
    let d = 5i64;
    let z = pt(0.1, 1.3);
    let cfg = SumConfig::with_qz2_max(4000.0);
    let op = OperatorConfig::default();
    for (sn, s) in [("re", c(1.75)), ("cx", Complex64::new(1.25, 0.5))] {
        let p = KernelParams::new(k, s, d)?;
        let pb = KernelParams::new(k, s.conj(), d)?;
        // xi_{2-2k} F_s = 2 (conj s - 3/4 + k/2) f_{conj s}
        let frb = frozen_big_f(&p, z, &cfg)?;
        let handle = |w: UHPoint| frb.eval(w);
        let lhs = xi_op(2.0 - 2.0 * k as f64, &handle, z, &op);
        let fr = frozen_f(&pb, z, &cfg)?;
        let rhs = 2.0 * (s.conj() - c(0.75 - k as f64 / 2.0)) * fr.eval(z);
        out.push(check("xi", format!("F-to-f-s{sn}"), rel(lhs, rhs), 1e-4));
        // xi_{2k} f_s = 2 (conj s - k/2 - 1/4) F_{conj s}
        let fr = frozen_f(&p, z, &cfg)?;
        let handle = |w: UHPoint| fr.eval(w);
        let lhs = xi_op(2.0 * k as f64, &handle, z, &op);
        let frb = frozen_big_f(&pb, z, &cfg)?;
        let rhs = 2.0 * (s.conj() - c(k as f64 / 2.0 + 0.25)) * frb.eval(z);
        out.push(check("xi", format!("f-to-F-s{sn}"), rel(lhs, rhs), 1e-4));
    }
    // Collapse point: f is holomorphic, xi_{2k} image vanishes.
    let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
    let fr = frozen_f(&p, z, &cfg)?;
    let handle = |w: UHPoint| fr.eval(w);
    let xi = xi_op(2.0 * k as f64, &handle, z, &op);
    out.push(check(
        "xi",
        "f-holomorphic-at-collapse",
        xi.norm() / fr.eval(z).norm().max(1.0),
        1e-6,
    ));
    Ok(out)
}

/// Criterion 7 + 8: jump of the F-family across E_D at the apex of the D=5
/// geodesic, the two-sided average, and continuity of the f-family.
pub fn criterion_jump_and_continuity() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let k = 2u32;
    let d = 5i64;
    let z0 = apex();
    let cfg = SumConfig::with_qz2_max(200_000.0);
    let p = KernelParams::new(k, c(1.25), d)?;
    let frb = frozen_big_f(&p, z0, &cfg)?;
    let diff = |r: f64| frb.eval(z0.shifted(0.0, r)) - frb.eval(z0.shifted(0.0, -r));
    let avg = |r: f64| (frb.eval(z0.shifted(0.0, r)) + frb.eval(z0.shifted(0.0, -r))) / 2.0;
    // Richardson in r over {1e-3, 5e-4}.
    let (r1, r2) = (1e-3, 5e-4);
    let jump_extrap = 2.0 * diff(r2) - diff(r1);
    let predicted = predicted_jump(z0, &p)?;
    // The closed form at this point: -10 phi*_s(1) = -10 (4 pi 5)^{-1/4} / 12.
    let literal = c(-10.0 * (4.0 * PI * 5.0).powf(-0.25) / 12.0);
    out.push(check("jump", "closed-form-vs-literal", rel(predicted, literal), 1e-12));
    out.push(check("jump", "two-sided-difference", rel(jump_extrap, predicted), 1e-3));

    let avg_extrap = 2.0 * avg(r2) - avg(r1);
    let at_point = frb.eval(z0);
    out.push(check("jump", "two-sided-average", rel(avg_extrap, at_point), 1e-4));

    // Criterion 8: the f-family is continuous across E_D.
    let pf = KernelParams::new(k, c(1.75), d)?;
    let fr = frozen_f(&pf, z0, &cfg)?;
    let r = 1e-4;
    let gap = (fr.eval(z0.shifted(0.0, r)) - fr.eval(z0.shifted(0.0, -r))).norm();
    out.push(check("jump", "f-continuous", gap, 1e-5));
    Ok(out)
}

/// Criterion 9: Hecke three-term identities and the tau(p) eigenvalue anchor.
pub fn criterion_hecke() -> Result<Vec<CheckResult>> {
    criterion_hecke_with(3)
}

pub fn criterion_hecke_with(p3: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let points = [
        pt(0.11, 0.93),
        pt(-0.35, 1.21),
        pt(0.52, 0.77),
        pt(0.05, 1.55),
        pt(-0.18, 0.69),
    ];
    let s = c(1.75);

    // F-side at (k,p,D) = (2,p,5) and (2,p,45).
    let cfg = SumConfig::with_qz2_max(400_000.0);
    for d in [5i64, 45] {
        let mut worst = 0.0f64;
        for z in points {
            let evf = |dd: i64, w: UHPoint| -> Result<Complex64> {
                Ok(eval_big_f(&KernelParams::new(2, s, dd)?, w, &cfg)?.value)
            };
            let fh = |w: UHPoint| evf(d, w);
            let lhs = hecke_tp(&fh, -2, p3, z)?;
            let mut rhs = Complex64::new(0.0, 0.0);
            for term in hecke_family_big_f(d, p3, 2)? {
                if term.coeff != 0.0 {
                    rhs += term.coeff * evf(term.disc, z)?;
                }
            }
            worst = worst.max(rel(lhs, rhs));
        }
        out.push(check("hecke", format!("F-three-term-D{d}"), worst, 1e-4));
    }

    // f-side at (2,3,5).
    {
        let mut worst = 0.0f64;
        for z in points {
            let evs = |dd: i64, w: UHPoint| -> Result<Complex64> {
                Ok(eval_f(&KernelParams::new(2, s, dd)?, w, &cfg)?.value)
            };
            let fh = |w: UHPoint| evs(5, w);
            let lhs = hecke_tp(&fh, 4, p3, z)?;
            let mut rhs = Complex64::new(0.0, 0.0);
            for term in hecke_family_f(5, p3, 2)? {
                if term.coeff != 0.0 {
                    rhs += term.coeff * evs(term.disc, z)?;
                }
            }
            worst = worst.max(rel(lhs, rhs));
        }
        out.push(check("hecke", "f-three-term-D5", worst, 1e-4));
    }

    // k = 6: the classical family at D = 5 recovers the T_p eigenvalue of the
    // weight-12 cusp form, checked against the eta-product coefficient.
    {
        let cfg6 = SumConfig::with_qz2_max(20_000.0);
        let z = pt(0.11, 0.93);
        let evc = |dd: i64, w: UHPoint| -> Result<Complex64> {
            Ok(eval_f_classical(6, dd, w, &cfg6)?.value)
        };
        let fh = |w: UHPoint| evc(5, w);
        let lhs = hecke_tp(&fh, 12, p3, z)?;
        let tau_p = delta_coefficients(p3 as usize)[p3 as usize - 1] as f64;
        let measured = lhs / evc(5, z)?;
        out.push(check("hecke", format!("tau{p3}-eigenvalue"), rel(measured, c(tau_p)), 1e-4));
        let mut rhs = Complex64::new(0.0, 0.0);
        for term in hecke_family_f_classical(5, p3, 6)? {
            if term.coeff != 0.0 {
                rhs += term.coeff * evc(term.disc, z)?;
            }
        }
        out.push(check("hecke", "f-classical-three-term-k6", rel(lhs, rhs), 1e-4));
    }

    // Commutation of T_p with xi across the weight pair:
    // xi_{2-2k}(F |_{2-2k} T_p) = p^{(2-2k)-1} (xi_{2-2k} F) |_{2k} T_p.
    // Each Hecke image point gets its own frozen enumeration so both sides
    // differentiate smooth functions.
    {
        let z = pt(0.11, 0.93);
        let cfgx = SumConfig::with_qz2_max(40_000.0);
        let p = KernelParams::new(2, s, 5)?;
        let op = OperatorConfig::default();
        let pf = p3 as f64;
        let kappa_neg = -2.0f64; // 2 - 2k at k = 2
        let up = UHPoint::new(pf * z.x, pf * z.y)?;
        let fr_up = frozen_big_f(&p, up, &cfgx)?;
        let mut downs = Vec::new();
        for r in 0..p3 {
            let w = UHPoint::new((z.x + r as f64) / pf, z.y / pf)?;
            downs.push((w, frozen_big_f(&p, w, &cfgx)?));
        }
        // T_p F as a smooth function of w over the frozen index sets.
        let tpf = |w: UHPoint| {
            let mut acc =
                fr_up.eval(UHPoint { x: pf * w.x, y: pf * w.y }) * pf.powi(kappa_neg as i32 - 1);
            for (r, (_, fr)) in downs.iter().enumerate() {
                acc += fr.eval(UHPoint { x: (w.x + r as f64) / pf, y: w.y / pf }) / pf;
            }
            acc
        };
        let lhs = xi_op(kappa_neg, &tpf, z, &op);
        // (xi F) at each image point, then the weight-2k Hecke combination.
        let xi_up = {
            let handle = |u: UHPoint| fr_up.eval(u);
            xi_op(kappa_neg, &handle, up, &op)
        };
        let mut rhs = xi_up * pf.powi(2 * 2 - 1);
        for (w, fr) in &downs {
            let handle = |u: UHPoint| fr.eval(u);
            rhs += xi_op(kappa_neg, &handle, *w, &op) / pf;
        }
        rhs *= pf.powi(kappa_neg as i32 - 1);
        out.push(check("hecke", "xi-commutes-Tp", rel(lhs, rhs), 1e-3));
    }

    Ok(out)
}

/// Criterion 10: the differential identities coupling Theta and Theta*.
pub fn criterion_theta_identities() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let samples = [
        ThetaPoint { z: pt(0.25, 1.0), tau: pt(0.0, 0.5) },
        ThetaPoint { z: pt(-0.3, 0.8), tau: pt(0.2, 0.6) },
    ];
    for (i, sample) in samples.into_iter().enumerate() {
        for which in [1u8, 2] {
            let res = theta_identity_residual(2, sample, which, 2e-4)?;
            out.push(check("theta-id", format!("identity{which}-sample{i}"), res, 1e-5));
        }
    }
    // O(h^2) convergence under step halving.
    let coarse = theta_identity_residual(2, samples[0], 1, 8e-4)?;
    let fine = theta_identity_residual(2, samples[0], 1, 4e-4)?;
    out.push(check("theta-id", "order-h2", fine / coarse, 0.4));
    Ok(out)
}

/// Criterion 11: special-function suite.
pub fn criterion_specfun() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    // Whittaker collapse M_{s,s-1/2}(v) = e^{-v/2} v^s, i.e. mathcal_m = e^{-t/2}.
    let mut worst = 0.0f64;
    for kappa in [1.5f64, 2.5, 4.5] {
        for t in [0.5, 5.0, 25.0, 50.0] {
            let got = mathcal_m(kappa, c(kappa / 2.0), t)?;
            let want = (-t / 2.0).exp();
            worst = worst.max((got - c(want)).norm() / want);
        }
    }
    out.push(check("specfun", "whittaker-collapse", worst, 5e-15));

    // 2F1 against the Euler integral oracle on the grid.
    let grid = [0.75, 1.5, 2.25];
    let mut worst = 0.0f64;
    for &a in &grid {
        for &b in &grid {
            for &cc in &grid {
                if !(cc > b && b > 0.0) {
                    continue;
                }
                for i in 1..10 {
                    let w = i as f64 * 0.1;
                    let direct = hyp2f1(c(a), c(b), c(cc), w)?;
                    let oracle = hyp2f1_euler_oracle(c(a), c(b), c(cc), w)?;
                    worst = worst.max((direct - oracle).norm() / (1.0 + direct.norm()));
                }
            }
        }
    }
    out.push(check("specfun", "2f1-euler-oracle", worst, 1e-9));

    // phi*_s(1) Gauss closed form.
    let mut worst = 0.0f64;
    for (k, s, d) in [(2u32, c(1.25), 5i64), (2, Complex64::new(1.9, 0.3), 8), (4, c(2.25), 5)] {
        let p = KernelParams::new(k, s, d)?;
        let got = phi_star_kernel(&p, 1.0)?;
        let want = phi_star_at_one(&p)?;
        worst = worst.max(rel(got, want));
    }
    out.push(check("specfun", "phi-star-gauss-at-one", worst, 1e-10));

    // phi*_{k/2+1/4} proportional to psi pointwise.
    let mut worst = 0.0f64;
    for (k, d) in [(2u32, 5i64), (4, 8)] {
        let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
        let scale = (4.0 * PI * d as f64).powf(0.75 - k as f64 / 2.0) / (12.0 * psi_one(k)?);
        for i in 1..=10 {
            let w = i as f64 / 10.0;
            let lhs = phi_star_kernel(&p, w)?;
            let rhs = c(scale * psi_kernel(k, w)?);
            worst = worst.max(rel(lhs, rhs));
        }
    }
    out.push(check("specfun", "phi-star-psi-collapse", worst, 1e-9));
    Ok(out)
}

/// Criterion 12: Poincare series eigenvalue, growth rate, xi-relation.
pub fn criterion_poincare() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let kappa = 2.5f64;
    let s = c(2.0);
    let m = 5i64;
    let op = OperatorConfig::default();
    let tau = pt(0.2, 1.0);

    let spec = PoincareSpec::new(kappa, s, m, 120)?;
    let series = PoincareSeries::new(spec, 1.1)?;
    let handle = |w: UHPoint| series.eval(w).unwrap();
    let lap = laplacian_op(kappa, &handle, tau, &op);
    let lam = (s - kappa / 2.0) * (c(1.0 - kappa / 2.0) - s);
    out.push(check("eigen", "poincare-eigen", rel(lap, lam * handle(tau)), 1e-2));

    // Growth slope of |P - seed| on v in {4, 8, 16}.
    let spec = PoincareSpec::new(kappa, s, m, 200)?;
    let mut logs = Vec::new();
    for v in [4.0, 8.0, 16.0] {
        let series = PoincareSeries::new(spec, v)?;
        logs.push((v.ln(), series.tail(pt(0.0, v))?.norm().ln()));
    }
    let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
    let want = 1.0 - s.re - kappa / 2.0;
    out.push(check("eigen", "poincare-growth-slope", (slope - want).abs() / want.abs(), 0.1));

    // xi_kappa(P_{kappa,s,m}) = (conj s - kappa/2) P_{2-kappa,conj s,m}.
    let pos = PoincareSeries::new(PoincareSpec::new(kappa, s, m, 120)?, 1.1)?;
    let neg = PoincareSeries::new(PoincareSpec::new(2.0 - kappa, s.conj(), m, 120)?, 1.1)?;
    let handle = |w: UHPoint| pos.eval(w).unwrap();
    let lhs = xi_op(kappa, &handle, tau, &op);
    let rhs = (s.conj() - kappa / 2.0) * neg.eval(tau)?;
    out.push(check("xi", "poincare-xi-relation", rel(lhs, rhs), 1e-2));
    Ok(out)
}

pub const SUITES: [&str; 8] = [
    "specfun",
    "collapse",
    "modularity",
    "eigen",
    "xi",
    "hecke",
    "jump",
    "theta-id",
];

/// Run one named suite.
pub fn run_suite(name: &str) -> Result<Vec<CheckResult>> {
    run_suite_with(name, 3)
}

/// Run one named suite; `p` parametrizes the hecke suite.
pub fn run_suite_with(name: &str, p: u64) -> Result<Vec<CheckResult>> {
    match name {
        "specfun" => criterion_specfun(),
        "collapse" => {
            let mut v = criterion_vanishing_weight4()?;
            v.extend(criterion_delta_proportionality()?);
            v.extend(criterion_collapse_identity()?);
            Ok(v)
        }
        "modularity" => criterion_modularity(),
        "eigen" => {
            let mut v = criterion_eigen_equations()?;
            v.extend(criterion_poincare()?.into_iter().filter(|c| c.suite == "eigen"));
            Ok(v)
        }
        "xi" => {
            let mut v = criterion_xi_intertwining()?;
            v.extend(criterion_poincare()?.into_iter().filter(|c| c.suite == "xi"));
            Ok(v)
        }
        "hecke" => criterion_hecke_with(p),
        "jump" => criterion_jump_and_continuity(),
        "theta-id" => criterion_theta_identities(),
        other => Err(crate::error::Error::Domain(format!(
            "unknown suite '{other}'; expected one of {SUITES:?} or 'all'"
        ))),
    }
}

/// Run every suite in declaration order.
pub fn run_all() -> Result<Vec<CheckResult>> {
    run_all_with(3)
}

pub fn run_all_with(p: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for name in SUITES {
        out.extend(run_suite_with(name, p)?);
    }
    Ok(out)
}
