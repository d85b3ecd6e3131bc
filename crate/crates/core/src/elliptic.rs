//! Real-argument Jacobi elliptic functions and elliptic integrals of the first kind.
//!
//! The complete integral `K(k)` is computed with the arithmetic-geometric mean.
//! The amplitude `am(u, k)` uses the AGM phase recursion (descending Landen
//! transformation) after reducing `u` modulo `2K`, so `am(u + 2K) = am(u) + π`
//! holds by construction. The incomplete integral `F(φ, k)` uses Carlson's
//! symmetric form `R_F` after reducing `φ` modulo `π`.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

/// Tolerances used by this module and by downstream root finders.
pub mod tol {
    /// Identity residual guaranteed for `sn² + cn² = 1` and `dn² + k² sn² = 1`.
    pub const IDENTITY: f64 = 1e-12;
    /// Termination threshold for the AGM sequences (`|c_n|`).
    pub const AGM: f64 = 1e-16;
    /// Relative termination threshold for Carlson's duplication.
    pub const CARLSON: f64 = 1e-16;
}

const MAX_AGM_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EllipticError {
    #[error("elliptic modulus must satisfy 0 <= k < 1, got {0}")]
    Domain(f64),
    #[error("argument must be finite, got {0}")]
    NonFinite(f64),
}

pub type Result<T> = std::result::Result<T, EllipticError>;

/// An elliptic modulus `k ∈ [0, 1)` together with its quarter period `K(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
    k_squared: f64,
    complement: f64,
    quarter_period: f64,
}

/// Values of `(sn u, cn u, dn u)` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

impl Modulus {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) {
            return Err(EllipticError::Domain(k));
        }
        let complement = ((1.0 - k) * (1.0 + k)).sqrt();
        Ok(Self { k, k_squared: k * k, complement, quarter_period: agm_quarter_period(complement) })
    }

    /// Builds a modulus from `k²`, which is what geometric constructions produce.
    pub fn from_k_squared(k_squared: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k_squared) {
            return Err(EllipticError::Domain(k_squared.max(0.0).sqrt()));
        }
        let mut m = Self::new(k_squared.sqrt())?;
        m.k_squared = k_squared;
        Ok(m)
    }

    /// Builds a modulus from `k²` and `k'² = 1 − k²` computed independently,
    /// which keeps `K` accurate as `k → 1`.
    pub fn from_parts(k_squared: f64, complement_squared: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k_squared) || !(complement_squared > 0.0) {
            return Err(EllipticError::Domain(k_squared.max(0.0).sqrt()));
        }
        let complement = complement_squared.sqrt();
        Ok(Self { k: k_squared.sqrt(), k_squared, complement, quarter_period: agm_quarter_period(complement) })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_squared(&self) -> f64 {
        self.k_squared
    }

    /// Complementary modulus `k' = √(1 − k²)`.
    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// Complete quarter period `K(k)`.
    #[allow(non_snake_case)]
    pub fn K(&self) -> f64 {
        self.quarter_period
    }

    pub fn am(&self, u: f64) -> f64 {
        // u = r + 2K·q with |r| ≤ K, am(u) = am(r) + qπ.
        let two_k = 2.0 * self.quarter_period;
        let q = (u / two_k).round();
        let r = u - q * two_k;
        self.am_reduced(r) + q * PI
    }

    pub fn sn_cn_dn(&self, u: f64) -> JacobiTriple {
        let phi = self.am(u);
        let (sn, cn) = phi.sin_cos();
        let dn = (1.0 - self.k_squared * sn * sn).sqrt();
        JacobiTriple { sn, cn, dn }
    }

    pub fn sn(&self, u: f64) -> f64 {
        self.am(u).sin()
    }

    pub fn cn(&self, u: f64) -> f64 {
        self.am(u).cos()
    }

    pub fn dn(&self, u: f64) -> f64 {
        let s = self.sn(u);
        (1.0 - self.k_squared * s * s).sqrt()
    }

    /// Incomplete integral `F(φ, k) = ∫₀^φ dt / √(1 − k² sin² t)`.
    pub fn incomplete_f(&self, phi: f64) -> f64 {
        let q = (phi / PI).round();
        let r = phi - q * PI;
        let (s, c) = r.sin_cos();
        let reduced = if s == 0.0 { 0.0 } else { s * carlson_rf(c * c, 1.0 - self.k_squared * s * s, 1.0) };
        reduced + 2.0 * q * self.quarter_period
    }

    /// `F` at an amplitude in `[0, π/2]` given by its sine, cosine and
    /// `Δ = √(1 − k² sin²)`, avoiding cancellation near `π/2`.
    pub fn incomplete_f_from(&self, sin: f64, cos: f64, delta: f64) -> f64 {
        if sin == 0.0 {
            return 0.0;
        }
        sin * carlson_rf(cos * cos, delta * delta, 1.0)
    }

    // Phase recursion of the AGM; expects |u| ≤ K.
    fn am_reduced(&self, u: f64) -> f64 {
        if self.k == 0.0 {
            return u;
        }
        let mut a = [0.0; MAX_AGM_STEPS + 1];
        let mut c = [0.0; MAX_AGM_STEPS + 1];
        a[0] = 1.0;
        let mut b = self.complement();
        c[0] = self.k;
        let mut n = 0;
        while c[n].abs() > tol::AGM && n < MAX_AGM_STEPS {
            let an = a[n];
            a[n + 1] = 0.5 * (an + b);
            c[n + 1] = 0.5 * (an - b);
            b = (an * b).sqrt();
            n += 1;
        }
        let mut phi = (1u64 << n) as f64 * a[n] * u;
        for i in (1..=n).rev() {
            phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
        }
        phi
    }
}

fn agm_quarter_period(complement: f64) -> f64 {
    let mut a = 1.0f64;
    let mut b = complement;
    for _ in 0..MAX_AGM_STEPS {
        if (a - b).abs() <= tol::AGM * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    FRAC_PI_2 / a
}

/// Carlson's symmetric integral `R_F(x, y, z)` for nonnegative arguments, at
/// most one of which is zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * tol::CARLSON).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut scale = 1.0;
    while scale * q > a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        a = 0.25 * (a + lambda);
        scale *= 0.25;
    }
    // a_m − x_m = 4^-m (a_0 − x_0)
    let x_dev = (a - x) / a;
    let y_dev = (a - y) / a;
    let z_dev = -(x_dev + y_dev);
    let e2 = x_dev * y_dev - z_dev * z_dev;
    let e3 = x_dev * y_dev * z_dev;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

fn check_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(EllipticError::NonFinite(x))
    }
}

/// Complete elliptic integral of the first kind `K(k)`.
pub fn complete_k(k: f64) -> Result<f64> {
    Ok(Modulus::new(k)?.K())
}

pub fn incomplete_f(phi: f64, k: f64) -> Result<f64> {
    Ok(Modulus::new(k)?.incomplete_f(check_finite(phi)?))
}

pub fn jacobi_am(u: f64, k: f64) -> Result<f64> {
    Ok(Modulus::new(k)?.am(check_finite(u)?))
}

pub fn jacobi_sn_cn_dn(u: f64, k: f64) -> Result<JacobiTriple> {
    Ok(Modulus::new(k)?.sn_cn_dn(check_finite(u)?))
}
