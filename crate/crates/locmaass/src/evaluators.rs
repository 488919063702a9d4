//! Truncated lattice-sum evaluators for the four families
//!
//!   f_{k,D}      = D^{k-1/2} / (binom(2k-2,k-1) pi) sum_Q Q(z,1)^{-k}
//!   f_{k,s,D}    = sum_Q Q(z,1)^{-k} phi_s(D y^2 / |Q(z,1)|^2)
//!   F_{1-k,s,D}  = sum_Q sgn(Q_z) Q(z,1)^{k-1} phi*_s(D y^2 / |Q(z,1)|^2)
//!   F_{1-k,D}    = (4 pi D)^{3/4-k/2} / (12 psi(1)) sum_Q sgn(Q_z) Q(z,1)^{k-1} psi(...)
//!
//! Sums are cut on the SL2-invariant Q_z^2, accumulated in ascending Q_z^2
//! with compensated summation, and carry a geometric shell tail estimate.
//! Constant prefactors are hoisted out of the accumulation, so proportional
//! families truncated to the same form set stay proportional to roundoff.

use crate::acc::{sum_mapped, KahanF64};
use crate::error::{Error, Result};
use crate::qforms::{enumerate_disc_forms, EnumBudget, QForm, UHPoint};
use crate::specfun::{psi_kernel, psi_one, KernelParams, RadialKernel};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Truncation policy: a fixed cutoff on Q_z^2, or doubling of the cutoff until
/// the outermost shell contributes less than the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    Qz2Max(f64),
    TargetTol(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumConfig {
    pub truncation: Truncation,
    pub max_forms: usize,
    pub max_cells: u64,
}

impl SumConfig {
    pub fn with_qz2_max(t: f64) -> Self {
        Self { truncation: Truncation::Qz2Max(t), ..Self::default() }
    }

    pub fn with_target_tol(tol: f64) -> Self {
        Self { truncation: Truncation::TargetTol(tol), ..Self::default() }
    }

    fn budget(&self) -> EnumBudget {
        EnumBudget { max_cells: self.max_cells }
    }
}

impl Default for SumConfig {
    fn default() -> Self {
        Self {
            truncation: Truncation::TargetTol(1e-6),
            max_forms: 5_000_000,
            max_cells: 1_000_000_000,
        }
    }
}

/// Value of a truncated sum together with its error bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub forms_used: usize,
    /// min |Q_z| over the included forms; distance indicator to the
    /// exceptional set E_D.
    pub min_abs_qz: f64,
}

#[derive(Debug, Clone)]
enum SumKind {
    /// Q(z,1)^{-k} * radial(w)
    Spectral { kernel: RadialKernel },
    /// Q(z,1)^{-k}
    Classical,
    /// sgn(Q_z) Q(z,1)^{k-1} * radial(w)
    NegSpectral { kernel: RadialKernel },
    /// sgn(Q_z) Q(z,1)^{k-1} * psi(w)
    NegHarmonic,
}

/// |Q_z| below this counts as an exact zero for the sgn(Q_z) factor. Points
/// meant to lie on a geodesic hit it only to roundoff (e.g. y = sqrt(5)/2
/// squares to 1.2500000000000002), and dropping those terms is what makes the
/// evaluator return the two-sided average on the exceptional set.
const SGN_ZERO_TOL: f64 = 1e-12;

fn sgn_qz(qz: f64) -> f64 {
    if qz.abs() <= SGN_ZERO_TOL {
        0.0
    } else {
        qz.signum()
    }
}

/// A family truncated at a fixed, reusable form set. Evaluation away from the
/// enumeration point is exact termwise, which keeps finite-difference stencils
/// free of index-set jumps ("matched truncation").
#[derive(Debug, Clone)]
pub struct FrozenSum {
    pub k: u32,
    pub d: i64,
    kind: SumKind,
    prefactor: Complex64,
    pub forms: Vec<QForm>,
}

impl FrozenSum {
    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    /// The summand at z (prefactor excluded).
    fn raw_term(&self, q: &QForm, z: UHPoint) -> Complex64 {
        let (qpoly, qz) = q.values(z);
        let d = self.d as f64;
        let w = d / (qz * qz + d);
        match &self.kind {
            SumKind::Spectral { kernel } => {
                qpoly.powi(-(self.k as i32))
                    * kernel.radial(w).expect("kernel argument stays in (0,1]")
            }
            SumKind::Classical => qpoly.powi(-(self.k as i32)),
            SumKind::NegSpectral { kernel } => {
                let sign = sgn_qz(qz);
                if sign == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                qpoly.powi(self.k as i32 - 1)
                    * kernel.radial(w).expect("kernel argument stays in (0,1]")
                    * sign
            }
            SumKind::NegHarmonic => {
                let sign = sgn_qz(qz);
                if sign == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                qpoly.powi(self.k as i32 - 1)
                    * psi_kernel(self.k, w).expect("kernel argument stays in (0,1]")
                    * sign
            }
        }
    }

    /// |prefactor * term| for one form.
    pub fn term_abs(&self, q: &QForm, z: UHPoint) -> f64 {
        self.raw_term(q, z).norm() * self.prefactor.norm()
    }

    /// Deterministic compensated sum over the frozen form set.
    pub fn eval(&self, z: UHPoint) -> Complex64 {
        self.prefactor * sum_mapped(&self.forms, |q| self.raw_term(q, z))
    }

    pub fn min_abs_qz(&self, z: UHPoint) -> f64 {
        self.forms
            .iter()
            .map(|q| q.qz(z).abs())
            .fold(f64::INFINITY, f64::min)
    }

    fn decay_res(&self, s: Complex64) -> f64 {
        match &self.kind {
            SumKind::Spectral { .. } | SumKind::NegSpectral { .. } => s.re,
            SumKind::Classical | SumKind::NegHarmonic => self.k as f64 / 2.0 + 0.25,
        }
    }
}

fn binomial(n: u32, r: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..r {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn classical_prefactor(k: u32, d: i64) -> Complex64 {
    Complex64::new(
        (d as f64).powf(k as f64 - 0.5) / (binomial(2 * k - 2, k - 1) * PI),
        0.0,
    )
}

fn harmonic_prefactor(k: u32, d: i64) -> Result<Complex64> {
    Ok(Complex64::new(
        (4.0 * PI * d as f64).powf(0.75 - k as f64 / 2.0) / (12.0 * psi_one(k)?),
        0.0,
    ))
}

/// Geometric shell extrapolation on the sorted form list: the two outermost
/// quadrupling shells (t/4, t] and (t/16, t/4] give an empirical decay ratio,
/// floored by the analytic per-term exponent (Q_z^2 + D)^{1/4 - Re s}.
fn shell_tail(fr: &FrozenSum, z: UHPoint, t: f64, decay_res: f64) -> (f64, f64) {
    let mut a_out = KahanF64::new();
    let mut a_in = KahanF64::new();
    let mut total = KahanF64::new();
    for q in &fr.forms {
        let qz2 = q.qz(z).powi(2);
        let mag = fr.term_abs(q, z);
        total.add(mag);
        if qz2 > t / 4.0 {
            a_out.add(mag);
        } else if qz2 > t / 16.0 {
            a_in.add(mag);
        }
    }
    let (a_out, a_in) = (a_out.value(), a_in.value());
    let r_analytic = 4f64.powf(0.75 - decay_res).min(0.9);
    let r_emp = if a_in > 0.0 && a_out > 0.0 { a_out / a_in } else { r_analytic };
    let r = r_emp.max(r_analytic).min(0.9);
    let base = if a_out > 0.0 {
        a_out
    } else if a_in > 0.0 {
        a_in * r
    } else {
        total.value() * r
    };
    (base * r / (1.0 - r), a_out)
}

fn build_frozen(
    k: u32,
    d: i64,
    kind: SumKind,
    prefactor: Complex64,
    s_for_decay: Complex64,
    z: UHPoint,
    cfg: &SumConfig,
) -> Result<(FrozenSum, f64)> {
    let mut fr = FrozenSum { k, d, kind, prefactor, forms: Vec::new() };
    let decay = fr.decay_res(s_for_decay);
    match cfg.truncation {
        Truncation::Qz2Max(t) => {
            fr.forms = enumerate_disc_forms(z, d, t, &cfg.budget())?;
            if fr.forms.len() > cfg.max_forms {
                return Err(Error::Capacity(format!(
                    "{} forms exceed the configured cap {}",
                    fr.forms.len(),
                    cfg.max_forms
                )));
            }
            let (tail, _) = shell_tail(&fr, z, t, decay);
            Ok((fr, tail))
        }
        Truncation::TargetTol(tol) => {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Domain("target tolerance must be positive".into()));
            }
            let mut t = 32.0 + 2.0 * d as f64;
            for _ in 0..40 {
                fr.forms = enumerate_disc_forms(z, d, t, &cfg.budget())?;
                if fr.forms.len() > cfg.max_forms {
                    return Err(Error::Capacity(format!(
                        "adaptive truncation needs more than {} forms",
                        cfg.max_forms
                    )));
                }
                let (tail, a_out) = shell_tail(&fr, z, t, decay);
                if !fr.forms.is_empty() && a_out < tol && tail < tol {
                    return Ok((fr, tail));
                }
                t *= 2.0;
            }
            Err(Error::Convergence(
                "adaptive truncation did not reach the target tolerance".into(),
            ))
        }
    }
}

/// Frozen f_{k,D} (the weight-2k cusp form family).
pub fn frozen_f_classical(k: u32, d: i64, z: UHPoint, cfg: &SumConfig) -> Result<FrozenSum> {
    let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
    Ok(build_frozen(k, d, SumKind::Classical, classical_prefactor(k, d), p.s, z, cfg)?.0)
}

/// Frozen f_{k,s,D}.
pub fn frozen_f(p: &KernelParams, z: UHPoint, cfg: &SumConfig) -> Result<FrozenSum> {
    let kernel = RadialKernel::phi(p)?;
    let pref = kernel.prefactor;
    let kind = SumKind::Spectral { kernel: RadialKernel { prefactor: crate::specfun::ONE, ..kernel } };
    Ok(build_frozen(p.k, p.d, kind, pref, p.s, z, cfg)?.0)
}

/// Frozen F_{1-k,s,D}.
pub fn frozen_big_f(p: &KernelParams, z: UHPoint, cfg: &SumConfig) -> Result<FrozenSum> {
    let kernel = RadialKernel::phi_star(p)?;
    let pref = kernel.prefactor;
    let kind =
        SumKind::NegSpectral { kernel: RadialKernel { prefactor: crate::specfun::ONE, ..kernel } };
    Ok(build_frozen(p.k, p.d, kind, pref, p.s, z, cfg)?.0)
}

/// Frozen F_{1-k,D} (locally harmonic family, psi kernel).
pub fn frozen_big_f_harmonic(k: u32, d: i64, z: UHPoint, cfg: &SumConfig) -> Result<FrozenSum> {
    let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
    Ok(build_frozen(k, d, SumKind::NegHarmonic, harmonic_prefactor(k, d)?, p.s, z, cfg)?.0)
}

fn finish(fr: FrozenSum, tail: f64, z: UHPoint) -> EvalResult {
    EvalResult {
        value: fr.eval(z),
        tail_estimate: tail,
        forms_used: fr.forms.len(),
        min_abs_qz: fr.min_abs_qz(z),
    }
}

/// f_{k,D}(z), Zagier's weight-2k cusp form as a lattice sum.
pub fn eval_f_classical(k: u32, d: i64, z: UHPoint, cfg: &SumConfig) -> Result<EvalResult> {
    let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
    let (fr, tail) =
        build_frozen(k, d, SumKind::Classical, classical_prefactor(k, d), p.s, z, cfg)?;
    Ok(finish(fr, tail, z))
}

/// f_{k,s,D}(z); needs Re(s) >= k/2 + 1/4.
pub fn eval_f(p: &KernelParams, z: UHPoint, cfg: &SumConfig) -> Result<EvalResult> {
    let kernel = RadialKernel::phi(p)?;
    let pref = kernel.prefactor;
    let kind = SumKind::Spectral { kernel: RadialKernel { prefactor: crate::specfun::ONE, ..kernel } };
    let (fr, tail) = build_frozen(p.k, p.d, kind, pref, p.s, z, cfg)?;
    Ok(finish(fr, tail, z))
}

/// F_{1-k,s,D}(z); needs Re(s) > 3/4 and Re(s) >= k/2 - 3/4. The sgn(0) = 0
/// convention drops forms whose geodesic passes through z, which realizes the
/// two-sided-average value on the exceptional set.
pub fn eval_big_f(p: &KernelParams, z: UHPoint, cfg: &SumConfig) -> Result<EvalResult> {
    let kernel = RadialKernel::phi_star(p)?;
    let pref = kernel.prefactor;
    let kind =
        SumKind::NegSpectral { kernel: RadialKernel { prefactor: crate::specfun::ONE, ..kernel } };
    let (fr, tail) = build_frozen(p.k, p.d, kind, pref, p.s, z, cfg)?;
    Ok(finish(fr, tail, z))
}

/// F_{1-k,D}(z), the locally harmonic member of the family.
pub fn eval_big_f_harmonic(k: u32, d: i64, z: UHPoint, cfg: &SumConfig) -> Result<EvalResult> {
    let p = KernelParams::new(k, KernelParams::collapse_s(k), d)?;
    let (fr, tail) = build_frozen(k, d, SumKind::NegHarmonic, harmonic_prefactor(k, d)?, p.s, z, cfg)?;
    Ok(finish(fr, tail, z))
}

/// Explicit constant in the collapse identity
/// f_{k,k/2+1/4,D} = 2^{2k-3}/(3(2k-1)) (4 pi D)^{3/4-k/2} f_{k,D}.
pub fn collapse_constant(k: u32, d: i64) -> f64 {
    2f64.powi(2 * k as i32 - 3) / (3.0 * (2.0 * k as f64 - 1.0))
        * (4.0 * PI * d as f64).powf(0.75 - k as f64 / 2.0)
}

/// Gamma-factor bound: every term of f_{k,s,D} (real s) has magnitude at most
/// y^{-k} (Q_z^2+D)^{1/4 - s} * term_bound_constant.
pub fn term_bound_constant(p: &KernelParams) -> Result<f64> {
    let kernel = RadialKernel::phi(p)?;
    let half_k = p.k as f64 / 2.0;
    let f1_max = crate::specfun::hyp2f1(kernel.a, kernel.b, kernel.c, 1.0)?;
    Ok(kernel.prefactor.norm()
        * (p.d as f64).powf(p.s.re - half_k - 0.25)
        * f1_max.norm())
}
