//! Integer binary quadratic forms [a,b,c], their evaluation at points of the
//! upper half-plane, the SL2(Z) action, and enumeration of every form entering
//! a truncated lattice sum via the positive-definite ternary majorant
//! 2 Q_z^2 + (b^2 - 4ac).

use crate::error::{Error, Result};
use num_complex::Complex64;

/// The form a X^2 + b X Y + c Y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// b^2 - 4ac.
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }

    /// (Q(z,1), Q_z) = (a z^2 + b z + c, (a|z|^2 + b x + c)/y).
    pub fn values(&self, z: UHPoint) -> (Complex64, f64) {
        let (a, b, c) = (self.a as f64, self.b as f64, self.c as f64);
        let zc = z.z();
        let qpoly = (Complex64::new(a, 0.0) * zc + Complex64::new(b, 0.0)) * zc
            + Complex64::new(c, 0.0);
        let qz = (a * (z.x * z.x + z.y * z.y) + b * z.x + c) / z.y;
        (qpoly, qz)
    }

    pub fn qz(&self, z: UHPoint) -> f64 {
        self.values(z).1
    }

    /// Right action Q∘g: (X,Y) -> Q(aX + bY, cX + dY).
    /// Preserves the discriminant and satisfies
    /// (Q∘g)(z,1) = (cz+d)^2 Q(gz,1) for det g = 1.
    pub fn transform(&self, g: &Gl2Int) -> Self {
        let (a, b, c) = (self.a, self.b, self.c);
        let (p, q, r, s) = (g.a, g.b, g.c, g.d);
        Self::new(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )
    }
}

/// A point x + iy with y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UHPoint {
    pub x: f64,
    pub y: f64,
}

impl UHPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !y.is_finite() || y <= 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!(
                "upper half-plane point needs finite x and y > 0, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Offset within the upper half-plane; the caller keeps y + dy > 0.
    pub fn shifted(&self, dx: f64, dy: f64) -> Self {
        let y = self.y + dy;
        assert!(y > 0.0, "stencil left the upper half-plane");
        Self { x: self.x + dx, y }
    }
}

/// Integer matrix (a,b;c,d) of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gl2Int {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Gl2Int {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Domain(format!(
                "matrix ({a},{b};{c},{d}) must have determinant 1"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// S = (0,-1;1,0).
    pub fn s() -> Self {
        Self { a: 0, b: -1, c: 1, d: 0 }
    }

    /// T = (1,1;0,1).
    pub fn t() -> Self {
        Self { a: 1, b: 1, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inv(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn in_gamma0(&self, n: i64) -> bool {
        self.c.rem_euclid(n) == 0
    }

    /// Mobius action z -> (az+b)/(cz+d).
    pub fn apply(&self, z: UHPoint) -> UHPoint {
        let num = Complex64::new(self.a as f64, 0.0) * z.z() + Complex64::new(self.b as f64, 0.0);
        let den = Complex64::new(self.c as f64, 0.0) * z.z() + Complex64::new(self.d as f64, 0.0);
        let w = num / den;
        UHPoint { x: w.re, y: w.im }
    }

    /// cz + d.
    pub fn cocycle(&self, z: UHPoint) -> Complex64 {
        Complex64::new(self.c as f64, 0.0) * z.z() + Complex64::new(self.d as f64, 0.0)
    }
}

/// Gram matrix M(z) of the ternary majorant:
/// (a,b,c) M(z) (a,b,c)^T = 2 Q_z^2 + (b^2 - 4ac) = Q_z^2 + |Q(z,1)|^2 / y^2.
pub fn gram_majorant(z: UHPoint) -> [[f64; 3]; 3] {
    let p = (z.x * z.x + z.y * z.y) / z.y;
    let q = z.x / z.y;
    let r = 1.0 / z.y;
    [
        [2.0 * p * p, 2.0 * p * q, 2.0 * p * r - 2.0],
        [2.0 * p * q, 2.0 * q * q + 1.0, 2.0 * q * r],
        [2.0 * p * r - 2.0, 2.0 * q * r, 2.0 * r * r],
    ]
}

/// The majorant 2 Q_z^2 + disc(Q), canonical float route used by both the
/// interval enumeration and the brute-force oracles.
pub fn majorant_value(z: UHPoint, q: &QForm) -> f64 {
    let qz = q.qz(z);
    2.0 * qz * qz + q.disc() as f64
}

/// Cell budget for the interval enumerations.
#[derive(Debug, Clone, Copy)]
pub struct EnumBudget {
    pub max_cells: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        Self { max_cells: 1_000_000_000 }
    }
}

const END_SLACK: f64 = 1e-7;

fn int_range(lo: f64, hi: f64) -> std::ops::RangeInclusive<i64> {
    let slack = END_SLACK * (1.0 + lo.abs().max(hi.abs()));
    let lo_i = (lo - slack).ceil() as i64;
    let hi_i = (hi + slack).floor() as i64;
    lo_i..=hi_i
}

/// All forms of discriminant d with Q_z^2 <= qz2_max, sorted by
/// (Q_z^2, a, b, c). The candidate set comes from interval bounds on the
/// majorant; membership is decided by the exact Q_z computed by `values`.
pub fn enumerate_disc_forms(
    z: UHPoint,
    d: i64,
    qz2_max: f64,
    budget: &EnumBudget,
) -> Result<Vec<QForm>> {
    if d <= 0 || !(d % 4 == 0 || d % 4 == 1) {
        return Err(Error::Domain(format!(
            "discriminant D={d} must be positive and congruent to 0 or 1 mod 4"
        )));
    }
    let mut out: Vec<(f64, QForm)> = Vec::new();
    if qz2_max < 0.0 {
        return Ok(Vec::new());
    }
    let r = qz2_max.sqrt();
    let (x, y) = (z.x, z.y);
    let mut cells: u64 = 0;
    let spend = |n: u64, cells: &mut u64| -> Result<()> {
        *cells += n;
        if *cells > budget.max_cells {
            Err(Error::Capacity(format!(
                "enumeration visited more than {} cells",
                budget.max_cells
            )))
        } else {
            Ok(())
        }
    };

    let push_if_inside = |q: QForm, out: &mut Vec<(f64, QForm)>| {
        let qz = q.qz(z);
        if qz * qz <= qz2_max {
            out.push((qz * qz, q));
        }
    };

    // a = 0 needs b^2 = d, possible only for square discriminants.
    let sq = (d as f64).sqrt().round() as i64;
    if sq * sq == d {
        for b in [sq, -sq] {
            // Q_z = (bx + c)/y
            let range = int_range(-y * r - b as f64 * x, y * r - b as f64 * x);
            spend((range.end() - range.start()).max(0) as u64 + 1, &mut cells)?;
            for c in range {
                push_if_inside(QForm::new(0, b, c), &mut out);
            }
        }
    }

    // a != 0: c = (b^2 - d)/(4a) is forced; with u = b + 2ax,
    // Q_z = (u^2 + 4a^2y^2 - d) / (4ay), so |Q_z| <= r becomes
    // u^2 in [max(0, -m - w), -m + w] with m = 4a^2y^2 - d, w = 4|a|yr.
    let bound_a = ((2.0 * qz2_max + d as f64) / 2.0).sqrt() / y;
    let a_hi = (bound_a + END_SLACK * (1.0 + bound_a)).floor() as i64;
    for a in -a_hi..=a_hi {
        if a == 0 {
            continue;
        }
        let af = a as f64;
        let m = 4.0 * af * af * y * y - d as f64;
        let w = 4.0 * af.abs() * y * r;
        let hi2 = -m + w;
        if hi2 < 0.0 {
            continue;
        }
        let lo2 = (-m - w).max(0.0);
        let u_hi = hi2.sqrt();
        let u_lo = lo2.sqrt();
        // b-ranges from the two symmetric u-intervals, merged when they touch.
        let shift = -2.0 * af * x;
        let left = int_range(-u_hi + shift, -u_lo + shift);
        let right = int_range(u_lo + shift, u_hi + shift);
        let ranges: Vec<std::ops::RangeInclusive<i64>> = if *right.start() <= *left.end() {
            vec![*left.start()..=*right.end().max(left.end())]
        } else {
            vec![left, right]
        };
        for range in ranges {
            spend((range.end() - range.start()).max(0) as u64 + 1, &mut cells)?;
            for b in range {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                push_if_inside(QForm::new(a, b, num / (4 * a)), &mut out);
            }
        }
    }

    sort_forms(&mut out);
    Ok(out.into_iter().map(|(_, q)| q).collect())
}

/// All nonzero integer triples with majorant 2 Q_z^2 + (b^2-4ac) <= t_max,
/// sorted by (majorant, a, b, c).
pub fn enumerate_majorant(z: UHPoint, t_max: f64, budget: &EnumBudget) -> Result<Vec<QForm>> {
    let mut out: Vec<(f64, QForm)> = Vec::new();
    if t_max < 0.0 {
        return Ok(Vec::new());
    }
    let (x, y) = (z.x, z.y);
    let p = (x * x + y * y) / y;
    let q = x / y;
    let rr = 1.0 / y;
    // Box bounds from the inverse Gram matrix (det M = 4 identically):
    // a^2 <= t/(2y^2), b^2 <= t (2|z|^2/y^2 - 1).
    let a_hi = ((t_max / 2.0).sqrt() / y + END_SLACK).floor() as i64;
    let b_hi = ((t_max * (2.0 * (x * x + y * y) / (y * y) - 1.0)).sqrt() + END_SLACK).floor() as i64;
    let mut cells: u64 = 0;
    for a in -a_hi..=a_hi {
        let af = a as f64;
        for b in -b_hi..=b_hi {
            let bf = b as f64;
            // Quadratic in c: 2(pa+qb+rc)^2 + b^2 - 4ac <= t.
            let lin = p * af + q * bf;
            let alpha = 2.0 * rr * rr;
            let beta = 4.0 * rr * lin - 4.0 * af;
            let gamma = 2.0 * lin * lin + bf * bf - t_max;
            let disc = beta * beta - 4.0 * alpha * gamma;
            if disc < 0.0 {
                continue;
            }
            let root = disc.sqrt();
            let range = int_range((-beta - root) / (2.0 * alpha), (-beta + root) / (2.0 * alpha));
            cells += (range.end() - range.start()).max(0) as u64 + 1;
            if cells > budget.max_cells {
                return Err(Error::Capacity(format!(
                    "majorant enumeration visited more than {} cells",
                    budget.max_cells
                )));
            }
            for c in range {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let form = QForm::new(a, b, c);
                let g = majorant_value(z, &form);
                if g <= t_max {
                    out.push((g, form));
                }
            }
        }
    }
    sort_forms(&mut out);
    Ok(out.into_iter().map(|(_, q)| q).collect())
}

fn sort_forms(out: &mut [(f64, QForm)]) {
    out.sort_by(|(k1, q1), (k2, q2)| {
        k1.total_cmp(k2)
            .then(q1.a.cmp(&q2.a))
            .then(q1.b.cmp(&q2.b))
            .then(q1.c.cmp(&q2.c))
    });
}
