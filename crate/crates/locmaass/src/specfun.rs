//! Special-function kernels: complex Gamma, Gauss hypergeometric on [0,1],
//! incomplete beta, Whittaker M, the Kronecker symbol, and the radial kernels
//! phi_s, phi*_s, psi that weight the lattice sums.

use crate::acc::KahanC64;
use crate::error::{Error, Result};
use crate::quad::tanh_sinh;
use num_complex::Complex64;
use std::f64::consts::PI;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// True when z sits (numerically) on a pole of Gamma.
fn near_nonpositive_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-11 && (z.re - z.re.round()).abs() < 1e-11 && z.re.round() <= 0.0
}

fn near_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-11 && (z.re - z.re.round()).abs() < 1e-11
}

// Lanczos approximation, g = 7, 9 terms. Relative accuracy ~1e-13 on the
// parameter ranges used here (|z| modest, poles excluded).
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Complex Gamma function.
pub fn cgamma(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    Ok(cgamma_unchecked(z))
}

fn cgamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection formula.
        let pi_z = z * PI;
        return c(PI) / (pi_z.sin() * cgamma_unchecked(ONE - z));
    }
    let z = z - ONE;
    let mut x = c(LANCZOS[0]);
    for (i, &coeff) in LANCZOS.iter().enumerate().skip(1) {
        x += c(coeff) / (z + c(i as f64));
    }
    let t = z + c(7.5);
    (2.0 * PI).sqrt() * t.powc(z + c(0.5)) * (-t).exp() * x
}

/// 1/Gamma(z); returns 0 at the poles.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if near_nonpositive_integer(z) {
        Complex64::new(0.0, 0.0)
    } else {
        ONE / cgamma_unchecked(z)
    }
}

/// Jacobi symbol (a|n) for odd n >= 1.
fn jacobi(a: i64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i32;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Extended Kronecker symbol (d|n) for n >= 1. Completely multiplicative in n;
/// the n = 2 factor follows the usual mod-8 rule.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    if n.is_multiple_of(2) {
        if d % 2 == 0 {
            return 0;
        }
        let two = match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => unreachable!(),
        };
        while n.is_multiple_of(2) {
            n /= 2;
            result *= two;
        }
    }
    result * jacobi(d, n)
}

/// Kronecker symbol with a signed lower argument, (a|b) for any b.
pub(crate) fn kronecker_signed(a: i64, b: i64) -> i32 {
    if b < 0 {
        let sign = if a < 0 { -1 } else { 1 };
        sign * kronecker(a, b.unsigned_abs())
    } else {
        kronecker(a, b as u64)
    }
}

/// Gauss hypergeometric series at |x| < 1 (used directly for x <= 0.8 and for
/// the 1-w argument of the connection formula).
fn hyp2f1_series(a: Complex64, b: Complex64, cc: Complex64, x: f64) -> Result<Complex64> {
    let mut term = ONE;
    let mut acc = KahanC64::new();
    acc.add(ONE);
    for n in 0..4000 {
        let nf = c(n as f64);
        let denom = (cc + nf) * c(n as f64 + 1.0);
        if denom.norm() < 1e-12 {
            return Err(Error::ParameterDegenerate(format!(
                "series denominator vanished at n={n}"
            )));
        }
        term = term * (a + nf) * (b + nf) / denom * c(x);
        acc.add(term);
        if term.norm() <= 1e-17 * (1.0 + acc.value().norm()) {
            return Ok(acc.value());
        }
    }
    Err(Error::Convergence("hypergeometric series".into()))
}

/// Gauss summation at w = 1: 2F1(a,b;c;1) = G(c)G(c-a-b)/(G(c-a)G(c-b)).
fn hyp2f1_at_one(a: Complex64, b: Complex64, cc: Complex64) -> Result<Complex64> {
    let s = cc - a - b;
    if s.re <= 0.0 {
        return Err(Error::Domain(
            "2F1 at w=1 requires Re(c-a-b) > 0".into(),
        ));
    }
    Ok(cgamma(cc)? * cgamma(s)? * recip_gamma(cc - a) * recip_gamma(cc - b))
}

/// 2F1(a,b;c;w) for 0 <= w <= 1.
///
/// Direct series for w <= 0.8; for 0.8 < w < 1 the two-term w -> 1-w
/// connection formula; Gauss summation at w = 1. When c-a-b is an integer the
/// connection formula degenerates and the direct series is used instead (it
/// still converges for every w < 1, only more slowly). Values extremely close
/// to 1 with integral c-a-b are rejected rather than summed inaccurately.
pub fn hyp2f1(a: Complex64, b: Complex64, cc: Complex64, w: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("2F1 argument w={w} outside [0,1]")));
    }
    if near_nonpositive_integer(cc) {
        return Err(Error::ParameterDegenerate("c is a non-positive integer".into()));
    }
    if w == 0.0 {
        return Ok(ONE);
    }
    if w == 1.0 {
        return hyp2f1_at_one(a, b, cc);
    }
    if w <= 0.8 {
        return hyp2f1_series(a, b, cc, w);
    }
    let s = cc - a - b;
    if near_integer(s) {
        if w > 0.99 {
            return Err(Error::ParameterDegenerate(
                "connection formula needs c-a-b non-integer".into(),
            ));
        }
        return hyp2f1_series(a, b, cc, w);
    }
    let x = 1.0 - w;
    let first = cgamma(cc)? * cgamma(s)? * recip_gamma(cc - a) * recip_gamma(cc - b)
        * hyp2f1_series(a, b, ONE - s, x)?;
    let second = cgamma(cc)? * cgamma(-s)? * recip_gamma(a) * recip_gamma(b)
        * c(x).powc(s)
        * hyp2f1_series(cc - a, cc - b, ONE + s, x)?;
    Ok(first + second)
}

/// Euler-integral evaluation of 2F1, used as an independent oracle.
/// Requires Re(c) > Re(b) > 0 and 0 <= w < 1.
pub fn hyp2f1_euler_oracle(
    a: Complex64,
    b: Complex64,
    cc: Complex64,
    w: f64,
) -> Result<Complex64> {
    if !(cc.re > b.re && b.re > 0.0) {
        return Err(Error::Domain(
            "Euler integral requires Re(c) > Re(b) > 0".into(),
        ));
    }
    if !(0.0..1.0).contains(&w) {
        return Err(Error::Domain("Euler integral requires 0 <= w < 1".into()));
    }
    let integral = tanh_sinh(
        |t, tc| {
            let tb = c(t).powc(b - ONE);
            let tcb = c(tc).powc(cc - b - ONE);
            let core = c(1.0 - w * t).powc(-a);
            tb * tcb * core
        },
        1e-13,
    );
    Ok(cgamma(cc)? * recip_gamma(b) * recip_gamma(cc - b) * integral)
}

/// Kummer confluent series 1F1(a;c;x), x >= 0.
fn hyp1f1(a: Complex64, cc: Complex64, x: f64) -> Result<Complex64> {
    let mut term = ONE;
    let mut acc = KahanC64::new();
    acc.add(ONE);
    for n in 0..8000 {
        let nf = c(n as f64);
        let denom = (cc + nf) * c(n as f64 + 1.0);
        if denom.norm() < 1e-12 {
            return Err(Error::ParameterDegenerate(format!(
                "1F1 denominator vanished at n={n}"
            )));
        }
        term = term * (a + nf) / denom * c(x);
        acc.add(term);
        if n as f64 > x && term.norm() <= 1e-17 * (1.0 + acc.value().norm()) {
            return Ok(acc.value());
        }
    }
    Err(Error::Convergence("confluent series".into()))
}

/// Whittaker M_{mu, s-1/2}(v) for v > 0, via the Kummer series.
pub fn whittaker_m(mu: Complex64, s: Complex64, v: f64) -> Result<Complex64> {
    if v <= 0.0 {
        return Err(Error::Domain("Whittaker M needs v > 0".into()));
    }
    if v > 700.0 {
        return Err(Error::WhittakerOverflow(v));
    }
    if near_nonpositive_integer(s * 2.0) {
        return Err(Error::ParameterDegenerate("2s is a non-positive integer".into()));
    }
    let kummer = hyp1f1(s - mu, s * 2.0, v)?;
    Ok(c(-v / 2.0).exp() * c(v).powc(s) * kummer)
}

/// The normalized Whittaker kernel: |t|^{-kappa/2} M_{(kappa/2) sgn t, s-1/2}(|t|).
pub fn mathcal_m(kappa: f64, s: Complex64, t: f64) -> Result<Complex64> {
    if t == 0.0 {
        return Err(Error::Domain("mathcal_m needs t != 0".into()));
    }
    let mu = c(kappa / 2.0 * t.signum());
    let m = whittaker_m(mu, s, t.abs())?;
    Ok(c(t.abs()).powc(c(-kappa / 2.0)) * m)
}

/// Lower incomplete beta beta(v; a, b) = int_0^v u^{a-1} (1-u)^{b-1} du,
/// for 0 < v <= 1 and Re(a), Re(b) > 0.
pub fn incomplete_beta(v: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::Domain(format!("incomplete beta needs v in (0,1], got {v}")));
    }
    if a.re <= 0.0 || b.re <= 0.0 {
        return Err(Error::Domain("incomplete beta needs Re(a), Re(b) > 0".into()));
    }
    if v == 1.0 {
        return complete_beta(a, b);
    }
    if v > 0.6 {
        return Ok(complete_beta(a, b)? - beta_lower_series(1.0 - v, b, a)?);
    }
    beta_lower_series(v, a, b)
}

fn complete_beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    Ok(cgamma(a)? * cgamma(b)? * recip_gamma(a + b))
}

// beta(v;a,b) = v^a sum_n (1-b)_n / (n! (a+n)) v^n
fn beta_lower_series(v: f64, a: Complex64, b: Complex64) -> Result<Complex64> {
    let mut poch = ONE; // (1-b)_n v^n / n!
    let mut acc = KahanC64::new();
    acc.add(ONE / a);
    for n in 0..2000 {
        let nf = n as f64;
        poch = poch * (ONE - b + c(nf)) * c(v / (nf + 1.0));
        let term = poch / (a + c(nf + 1.0));
        acc.add(term);
        if term.norm() <= 1e-17 * (1.0 + acc.value().norm()) {
            return Ok(c(v).powc(a) * acc.value());
        }
    }
    Err(Error::Convergence("incomplete beta series".into()))
}

/// psi(v) = (1/2) beta(v; k - 1/2, 1/2) for even k >= 2 and 0 < v <= 1.
pub fn psi_kernel(k: u32, v: f64) -> Result<f64> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Domain("psi kernel needs even k >= 2".into()));
    }
    let val = incomplete_beta(v, c(k as f64 - 0.5), c(0.5))?;
    Ok(0.5 * val.re)
}

/// psi(1) = (1/2) B(k - 1/2, 1/2).
pub fn psi_one(k: u32) -> Result<f64> {
    psi_kernel(k, 1.0)
}

/// Weight, spectral parameter and discriminant shared by the lattice-sum kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub k: u32,
    pub s: Complex64,
    pub d: i64,
}

impl KernelParams {
    pub fn new(k: u32, s: Complex64, d: i64) -> Result<Self> {
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::Domain(format!("weight parameter k={k} must be even and >= 2")));
        }
        if d <= 0 || !(d % 4 == 0 || d % 4 == 1) {
            return Err(Error::Domain(format!(
                "discriminant D={d} must be positive and congruent to 0 or 1 mod 4"
            )));
        }
        Ok(Self { k, s, d })
    }

    /// lambda_s = (s - k/2 - 1/4)(1 - s - k/2 - 1/4).
    pub fn lambda_s(&self) -> Complex64 {
        let half_k = self.k as f64 / 2.0;
        (self.s - c(half_k + 0.25)) * (c(1.0 - half_k - 0.25) - self.s)
    }

    /// The collapse point s = k/2 + 1/4 where phi_s is constant.
    pub fn collapse_s(k: u32) -> Complex64 {
        c(k as f64 / 2.0 + 0.25)
    }
}

/// A kernel of the shape prefactor * w^e * 2F1(a,b;c;w), evaluated on (0,1].
/// The prefactor is hoisted so evaluators can sum the w-dependent part alone.
#[derive(Debug, Clone, Copy)]
pub struct RadialKernel {
    pub prefactor: Complex64,
    pub w_exponent: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl RadialKernel {
    /// phi_s: kernel of the weight-2k family.
    pub fn phi(p: &KernelParams) -> Result<Self> {
        let half_k = p.k as f64 / 2.0;
        if p.s.re < half_k + 0.25 - 1e-12 {
            return Err(Error::SpectralDomain(format!(
                "phi_s needs Re(s) >= k/2 + 1/4 = {}",
                half_k + 0.25
            )));
        }
        let prefactor = cgamma(p.s + c(half_k - 0.25))?
            * c((p.d as f64).powf(half_k + 0.25))
            / (c(6.0) * cgamma(p.s * 2.0)? * c((4.0 * PI).powf(half_k - 0.25)));
        Ok(Self {
            prefactor,
            w_exponent: p.s - c(half_k + 0.25),
            a: p.s + c(half_k - 0.25),
            b: p.s - c(half_k + 0.25),
            c: p.s * 2.0,
        })
    }

    /// phi*_s: kernel of the weight-(2-2k) family.
    pub fn phi_star(p: &KernelParams) -> Result<Self> {
        let half_k = p.k as f64 / 2.0;
        if p.s.re <= 0.75 {
            return Err(Error::SpectralDomain(
                "phi*_s needs Re(s) > 3/4 (absolute convergence)".into(),
            ));
        }
        if p.s.re < half_k - 0.75 - 1e-12 {
            return Err(Error::SpectralDomain(format!(
                "phi*_s needs Re(s) >= k/2 - 3/4 = {}",
                half_k - 0.75
            )));
        }
        let prefactor = cgamma(p.s + c(half_k - 0.25))?
            * c((4.0 * PI * p.d as f64).powf(0.75 - half_k))
            / (c(12.0 * PI.sqrt()) * cgamma(p.s * 2.0)?);
        Ok(Self {
            prefactor,
            w_exponent: p.s + c(half_k - 0.75),
            a: p.s - c(half_k - 0.25),
            b: p.s + c(half_k - 0.75),
            c: p.s * 2.0,
        })
    }

    /// The w-dependent part w^e * 2F1(a,b;c;w).
    pub fn radial(&self, w: f64) -> Result<Complex64> {
        if !(w > 0.0 && w <= 1.0) {
            return Err(Error::Domain(format!("kernel argument w={w} outside (0,1]")));
        }
        Ok(c(w).powc(self.w_exponent) * hyp2f1(self.a, self.b, self.c, w)?)
    }

    pub fn eval(&self, w: f64) -> Result<Complex64> {
        Ok(self.prefactor * self.radial(w)?)
    }
}

/// phi_s(w).
pub fn phi_kernel(p: &KernelParams, w: f64) -> Result<Complex64> {
    RadialKernel::phi(p)?.eval(w)
}

/// phi*_s(w).
pub fn phi_star_kernel(p: &KernelParams, w: f64) -> Result<Complex64> {
    RadialKernel::phi_star(p)?.eval(w)
}

/// Closed form of phi*_s(1) by Gauss summation:
/// (4 pi D)^{3/4 - k/2} / (12 Gamma(s - k/2 + 3/4)). Nonzero for all admissible s.
pub fn phi_star_at_one(p: &KernelParams) -> Result<Complex64> {
    let half_k = p.k as f64 / 2.0;
    Ok(c((4.0 * PI * p.d as f64).powf(0.75 - half_k)) * recip_gamma(p.s - c(half_k - 0.75))
        / c(12.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_classical_values() {
        assert_relative_eq!(cgamma(c(1.0)).unwrap().re, 1.0, max_relative = 1e-13);
        assert_relative_eq!(
            cgamma(c(0.5)).unwrap().re,
            PI.sqrt(),
            max_relative = 1e-13
        );
        assert_relative_eq!(cgamma(c(5.0)).unwrap().re, 24.0, max_relative = 1e-13);
        // A complex spot value against |Gamma(1+i)| = sqrt(pi / sinh(pi)).
        let g = cgamma(cx(1.0, 1.0)).unwrap();
        assert_relative_eq!(
            g.norm(),
            (PI / PI.sinh()).sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn gamma_pole_detected() {
        assert!(matches!(cgamma(c(0.0)), Err(Error::GammaPole(_))));
        assert!(matches!(cgamma(c(-3.0)), Err(Error::GammaPole(_))));
        assert_eq!(recip_gamma(c(-2.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(5, 5), 0);
        assert_eq!(kronecker(5, 11), 1); // squares mod 11 contain 5
        assert_eq!(kronecker(8, 3), -1); // squares mod 3 are {0,1}
        assert_eq!(kronecker(5, 1), 1);
    }

    #[test]
    fn kronecker_matches_brute_force_residues() {
        // For odd primes p and p \nmid d the symbol is 1 iff d is a square mod p.
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let squares: std::collections::HashSet<u64> =
                (1..p).map(|x| (x * x) % p).collect();
            for d in -30i64..30 {
                let expected = if d.rem_euclid(p as i64) == 0 {
                    0
                } else if squares.contains(&(d.rem_euclid(p as i64) as u64)) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p), expected, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative() {
        for d in [-15i64, -8, -3, 5, 8, 12, 21] {
            for m in 1u64..40 {
                for n in 1u64..40 {
                    assert_eq!(
                        kronecker(d, m * n),
                        kronecker(d, m) * kronecker(d, n),
                        "d={d} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn hyp2f1_trivial_cases() {
        let (a, b, cc) = (cx(0.7, 0.1), cx(1.3, -0.2), cx(2.4, 0.0));
        assert_eq!(hyp2f1(a, b, cc, 0.0).unwrap(), ONE);
        let z = hyp2f1(a, c(0.0), cc, 0.37).unwrap();
        assert!((z - ONE).norm() < 1e-15);
    }

    #[test]
    fn hyp2f1_log_closed_form() {
        // 2F1(1,1;2;w) = -ln(1-w)/w. Here c-a-b = 0, so the w > 0.8 values
        // exercise the series fallback of the degenerate-parameter branch.
        for w in [0.1, 0.5, 0.85, 0.9] {
            let got = hyp2f1(c(1.0), c(1.0), c(2.0), w).unwrap();
            let want = -(1.0 - w).ln() / w;
            assert_relative_eq!(got.re, want, max_relative = 1e-11);
            assert!(got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn hyp2f1_connection_matches_series_interior() {
        // Near the switch point both branches must agree.
        let (a, b, cc) = (cx(1.4, 0.3), cx(0.6, -0.1), cx(2.9, 0.2));
        let from_series = hyp2f1_series(a, b, cc, 0.79).unwrap();
        let direct = hyp2f1(a, b, cc, 0.79).unwrap();
        assert!((from_series - direct).norm() < 1e-12);
        let series_slow = hyp2f1_series(a, b, cc, 0.84).unwrap();
        let connected = hyp2f1(a, b, cc, 0.84).unwrap();
        assert!(
            (series_slow - connected).norm() / connected.norm() < 1e-10,
            "{series_slow} vs {connected}"
        );
    }

    #[test]
    fn hyp2f1_euler_oracle_values() {
        // w = 0: the beta integral normalizes to 1.
        let one = hyp2f1_euler_oracle(cx(0.9, 0.3), c(1.2), c(2.1), 0.0).unwrap();
        assert!((one - ONE).norm() < 1e-11);
        // Log closed form through the integral route.
        let log_val = hyp2f1_euler_oracle(c(1.0), c(1.0), c(2.0), 0.5).unwrap();
        assert_relative_eq!(log_val.re, -(0.5f64).ln() / 0.5, max_relative = 1e-10);
    }

    #[test]
    fn hyp2f1_euler_oracle_grid() {
        let grid = [0.75, 1.5, 2.25];
        for &a in &grid {
            for &b in &grid {
                for &cc in &grid {
                    if !(cc > b && b > 0.0) {
                        continue;
                    }
                    for i in 1..10 {
                        let w = i as f64 * 0.1;
                        let direct = hyp2f1(c(a), c(b), c(cc), w).unwrap();
                        let oracle = hyp2f1_euler_oracle(c(a), c(b), c(cc), w).unwrap();
                        assert!(
                            (direct - oracle).norm() <= 1e-9 * (1.0 + direct.norm()),
                            "a={a} b={b} c={cc} w={w}: {direct} vs {oracle}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hyp2f1_degenerate_connection_rejected_near_one() {
        // c - a - b integral: no connection formula, and too close to 1 for
        // the series fallback.
        assert!(matches!(
            hyp2f1(c(1.0), c(1.0), c(3.0), 0.999),
            Err(Error::ParameterDegenerate(_))
        ));
    }

    #[test]
    fn whittaker_exact_collapse() {
        // mathcal_m(kappa, kappa/2, t) = e^{-t/2} exactly (the 1F1 series truncates).
        for kappa in [2.5f64, 1.5, 4.5] {
            for t in [0.3, 1.0, 7.0, 25.0, 50.0] {
                let got = mathcal_m(kappa, c(kappa / 2.0), t).unwrap();
                let want = (-t / 2.0).exp();
                assert_eq!(got.im, 0.0);
                assert_relative_eq!(got.re, want, max_relative = 1e-15);
            }
        }
    }

    #[test]
    fn whittaker_asymptotic_regime() {
        // M_{mu, s-1/2}(v) * G(s-mu) / (G(2s) e^{v/2} v^{-mu}) -> 1 as v grows.
        let (mu, s) = (c(1.25), c(2.0));
        let mut prev_err = f64::INFINITY;
        for v in [40.0, 60.0, 80.0] {
            let m = whittaker_m(mu, s, v).unwrap();
            let normalizer =
                cgamma(s * 2.0).unwrap() * recip_gamma(s - mu) * c(v / 2.0).exp() * c(v).powc(-mu);
            let ratio = m / normalizer;
            let err = (ratio - ONE).norm();
            assert!(err < 0.05, "v={v} ratio={ratio}");
            assert!(err < prev_err, "asymptotic error must shrink");
            prev_err = err;
        }
    }

    #[test]
    fn whittaker_integral_representation() {
        // Integral representation at (kappa, s, t) = (5/2, 2, 3).
        let (kappa, s, t) = (2.5f64, c(2.0), 3.0f64);
        let mu = c(kappa / 2.0);
        let quad = tanh_sinh(
            |u, uc| c(u).powc(s + mu - ONE) * c(uc).powc(s - mu - ONE) * c(-t * u).exp(),
            1e-13,
        );
        let m_int = c(t).powc(s)
            * c(t / 2.0).exp()
            * cgamma(s * 2.0).unwrap()
            * recip_gamma(s + mu)
            * recip_gamma(s - mu)
            * quad;
        let m_series = whittaker_m(mu, s, t).unwrap();
        assert!(
            (m_int - m_series).norm() <= 1e-9 * (1.0 + m_series.norm()),
            "{m_int} vs {m_series}"
        );
    }

    #[test]
    fn whittaker_overflow_guard() {
        assert!(matches!(
            mathcal_m(2.5, c(2.0), 701.0),
            Err(Error::WhittakerOverflow(_))
        ));
    }

    #[test]
    fn incomplete_beta_values() {
        // b = 1: integrand is u^{a-1}.
        for v in [0.2, 0.7, 1.0] {
            let a = cx(1.7, 0.4);
            let got = incomplete_beta(v, a, c(1.0)).unwrap();
            let want = c(v).powc(a) / a;
            assert!((got - want).norm() < 1e-12);
        }
        // Complete beta against gammas.
        let (a, b) = (cx(1.3, 0.2), cx(0.8, -0.1));
        let got = incomplete_beta(1.0, a, b).unwrap();
        let want = cgamma(a).unwrap() * cgamma(b).unwrap() / cgamma(a + b).unwrap();
        assert!((got - want).norm() < 1e-12 * want.norm());
        // beta(1; 3/2, 1/2) = pi/2.
        let got = incomplete_beta(1.0, c(1.5), c(0.5)).unwrap();
        assert_relative_eq!(got.re, PI / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn incomplete_beta_quadrature_oracle() {
        let (a, b) = (cx(1.5, 0.0), cx(0.5, 0.0));
        for v in [0.15, 0.5, 0.85, 0.99] {
            let got = incomplete_beta(v, a, b).unwrap();
            // Substitute u = v t to integrate over (0,1).
            let quad = tanh_sinh(
                |t, _| {
                    let u = v * t;
                    c(u).powc(a - ONE) * c(1.0 - u).powc(b - ONE) * c(v)
                },
                1e-13,
            );
            assert!((got - quad).norm() < 1e-10, "v={v}: {got} vs {quad}");
        }
    }

    #[test]
    fn psi_kernel_values() {
        assert_relative_eq!(psi_kernel(2, 1.0).unwrap(), PI / 4.0, max_relative = 1e-12);
        // Quadrature value of (1/2) int_0^{1/2} sqrt(u/(1-u)) du.
        let quad = tanh_sinh(
            |t, _| {
                let u = 0.5 * t;
                c((u / (1.0 - u)).sqrt() * 0.5)
            },
            1e-13,
        );
        assert_relative_eq!(psi_kernel(2, 0.5).unwrap(), 0.5 * quad.re, max_relative = 1e-10);
        // Strictly increasing in v.
        let mut prev = 0.0;
        for i in 1..=10 {
            let v = i as f64 / 10.0;
            let val = psi_kernel(4, v).unwrap();
            assert!(val > prev);
            prev = val;
        }
    }

    #[test]
    fn phi_constant_at_collapse_point() {
        let k = 2u32;
        let d = 5i64;
        let p = KernelParams::new(k, KernelParams::collapse_s(k), d).unwrap();
        let expected = cgamma(c(k as f64)).unwrap().re * (d as f64).powf(k as f64 / 2.0 + 0.25)
            / (6.0 * cgamma(c(k as f64 + 0.5)).unwrap().re * (4.0 * PI).powf(k as f64 / 2.0 - 0.25));
        for w in [0.1, 0.4, 0.9, 1.0] {
            let got = phi_kernel(&p, w).unwrap();
            assert_relative_eq!(got.re, expected, max_relative = 1e-12);
            assert!(got.im.abs() < 1e-15);
        }
    }

    #[test]
    fn phi_finite_limit_at_one() {
        // phi_s is continuous up to w = 1; the approach carries a sqrt(1-w)
        // cusp (c-a-b = 1/2), so the gap shrinks like sqrt(eps).
        let p = KernelParams::new(2, c(1.75), 5).unwrap();
        let at_one = phi_kernel(&p, 1.0).unwrap();
        assert!(at_one.norm() > 0.0);
        let mut prev_gap = f64::INFINITY;
        for eps in [1e-3, 1e-6, 1e-9] {
            let gap = (at_one - phi_kernel(&p, 1.0 - eps).unwrap()).norm();
            assert!(gap < prev_gap);
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-4 * at_one.norm());
    }

    #[test]
    fn phi_cross_checked_by_euler_oracle() {
        let p = KernelParams::new(2, c(1.75), 5).unwrap();
        let kernel = RadialKernel::phi(&p).unwrap();
        let w = 0.5;
        let with_oracle = kernel.prefactor
            * c(w).powc(kernel.w_exponent)
            * hyp2f1_euler_oracle(kernel.a, kernel.b, kernel.c, w).unwrap();
        let direct = phi_kernel(&p, w).unwrap();
        assert!((with_oracle - direct).norm() <= 1e-9 * direct.norm());
    }

    #[test]
    fn phi_star_gauss_value_at_one() {
        for (k, s, d) in [(2u32, cx(1.25, 0.0), 5i64), (2, cx(1.9, 0.3), 8), (4, cx(2.25, 0.0), 5)] {
            let p = KernelParams::new(k, s, d).unwrap();
            let got = phi_star_kernel(&p, 1.0).unwrap();
            let want = phi_star_at_one(&p).unwrap();
            assert!(
                (got - want).norm() <= 1e-10 * want.norm(),
                "k={k} s={s} d={d}: {got} vs {want}"
            );
            assert!(want.norm() > 0.0);
        }
    }

    #[test]
    fn phi_star_vanishes_at_zero() {
        let p = KernelParams::new(2, c(1.25), 5).unwrap();
        let tiny = phi_star_kernel(&p, 1e-12).unwrap();
        assert!(tiny.norm() < 1e-8);
    }

    #[test]
    fn phi_star_collapses_to_psi() {
        // phi*_{k/2+1/4}(w) = (4 pi D)^{3/4-k/2} psi(w) / (12 psi(1)).
        for (k, d) in [(2u32, 5i64), (4, 8)] {
            let p = KernelParams::new(k, KernelParams::collapse_s(k), d).unwrap();
            let scale = (4.0 * PI * d as f64).powf(0.75 - k as f64 / 2.0)
                / (12.0 * psi_one(k).unwrap());
            for i in 1..=10 {
                let w = i as f64 / 10.0;
                let lhs = phi_star_kernel(&p, w).unwrap();
                let rhs = scale * psi_kernel(k, w).unwrap();
                assert!(
                    (lhs.re - rhs).abs() <= 1e-9 * rhs.abs() && lhs.im.abs() < 1e-14,
                    "k={k} d={d} w={w}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn spectral_domain_guards() {
        let p = KernelParams::new(2, c(1.0), 5).unwrap();
        assert!(matches!(phi_kernel(&p, 0.5), Err(Error::SpectralDomain(_))));
        let p = KernelParams::new(2, c(0.7), 5).unwrap();
        assert!(matches!(phi_star_kernel(&p, 0.5), Err(Error::SpectralDomain(_))));
    }

    #[test]
    fn kernel_params_validation() {
        assert!(KernelParams::new(3, c(2.0), 5).is_err());
        assert!(KernelParams::new(0, c(2.0), 5).is_err());
        assert!(KernelParams::new(2, c(2.0), 7).is_err());
        assert!(KernelParams::new(2, c(2.0), -4).is_err());
        assert!(KernelParams::new(2, c(2.0), 12).is_ok());
    }
}
