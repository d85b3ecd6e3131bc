//! Crossing abscissas and distances from elliptic functions.
//!
//! In the frame `(u, v) = (y/c₂, x/c₂)` (canonical axes) the caustic is
//! `u² + v²/c² = 1`, `c = c₁/c₂`, the tangent at `M(φ) = (cn φ, c sn φ)` is
//! `u cn φ + (v/c) sn φ = 1`, and `ℓ_h ∩ ℓ_{h+j}` has abscissa
//! `F_j(φ_h) = (sn(φ_h + jθ) − sn φ_h) / D_j(φ_h)`.

use serde::Serialize;

use super::{tol, DiagramError, Result};
use crate::geometry::Vec2;
use crate::poncelet::{polygon, JacobiFrame};

/// `D_j(z)` directly and through the sine-amplitude formula.
pub fn d_function(frame: &JacobiFrame, j: i64, z: f64) -> (f64, f64) {
    let m = &frame.modulus;
    let a = m.sn_cn_dn(z + j as f64 * frame.theta);
    let b = m.sn_cn_dn(z);
    let direct = a.sn * b.cn - a.cn * b.sn;
    let v = m.sn_cn_dn(j as f64 * frame.beta);
    let u = m.sn_cn_dn(z + j as f64 * frame.beta);
    let formula = 2.0 * v.sn * v.cn * u.dn / (1.0 - m.k_squared() * v.sn * v.sn * u.sn * u.sn);
    (direct, formula)
}

/// `F_j(z)`; requires `j ≢ 0 (mod n)`.
pub fn f_function(frame: &JacobiFrame, n: usize, j: i64, z: f64) -> Result<f64> {
    if j.rem_euclid(n as i64) == 0 {
        return Err(DiagramError::MultipleOfN(j));
    }
    let m = &frame.modulus;
    let num = m.sn(z + j as f64 * frame.theta) - m.sn(z);
    Ok(num / d_function(frame, j, z).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub max_residual: f64,
    /// `(h, j)` attaining the maximum.
    pub worst: (usize, usize),
    /// Largest `|F_j(φ_h) − abscissa of Q_{h,j}|`.
    pub abscissa_residual: f64,
    /// Largest `||d_{h,j}| − |P_h Q_{h,j}||`.
    pub distance_residual: f64,
    /// Largest disagreement of the two expressions for `D_j`.
    pub sine_amplitude_residual: f64,
    /// Distance terms skipped because `sn φ_h` vanishes.
    pub skipped: usize,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Compares the elliptic expressions for all `Q_{h,j}`, `j ≢ 0, −1`, with the
/// intersection points of the tangent lines. Residuals are relative for
/// values above 1.
pub fn elliptic_cross_check(frame: &JacobiFrame, n: usize, p: usize, phi: f64) -> Result<CrossCheckReport> {
    let poly = polygon(frame, n, p, phi)?;
    let c = frame.caustic_axes.0 / frame.caustic_axes.1;
    let eval = |q: Vec2| {
        let z = frame.to_normalized(q);
        Vec2::new(z.x, z.y * c)
    };
    let mut report = CrossCheckReport {
        max_residual: 0.0,
        worst: (0, 0),
        abscissa_residual: 0.0,
        distance_residual: 0.0,
        sine_amplitude_residual: 0.0,
        skipped: 0,
    };
    let note = |r: &mut CrossCheckReport, h: usize, j: usize, v: f64| {
        if v > r.max_residual || v.is_nan() {
            r.max_residual = v;
            r.worst = (h, j);
        }
    };
    for h in 0..n {
        let phi_h = phi + h as f64 * frame.theta;
        let sn = frame.modulus.sn(phi_h);
        let line_h = frame.tangent_line(phi_h);
        let p_h = eval(poly.vertices[(h + n - 1) % n]);
        let x_h = f_function(frame, n, -1, phi_h)?;
        let r = rel(x_h, p_h.x);
        report.abscissa_residual = report.abscissa_residual.max(r);
        note(&mut report, h, n - 1, r);
        for j in 1..n - 1 {
            let (direct, formula) = d_function(frame, j as i64, phi_h);
            let r_sa = rel(direct, formula);
            report.sine_amplitude_residual = report.sine_amplitude_residual.max(r_sa);

            let line_hj = frame.tangent_line(phi_h + j as f64 * frame.theta);
            let Some(q) = line_h.intersect(&line_hj) else {
                continue;
            };
            let q = eval(q);
            let x_hj = f_function(frame, n, j as i64, phi_h)?;
            let r_x = rel(x_hj, q.x);
            report.abscissa_residual = report.abscissa_residual.max(r_x);
            let mut worst = r_x.max(r_sa);
            if sn.abs() > 1e-6 {
                let d = (x_h - x_hj) / sn * (c * c + (1.0 - c * c) * sn * sn).sqrt();
                let r_d = rel(d.abs(), p_h.dist(q));
                report.distance_residual = report.distance_residual.max(r_d);
                worst = worst.max(r_d);
            } else {
                report.skipped += 1;
            }
            note(&mut report, h, j, worst);
        }
    }
    if !(report.max_residual < tol::CROSS_CHECK) {
        let (h, j) = report.worst;
        return Err(DiagramError::CrossCheck { h, j, residual: report.max_residual });
    }
    Ok(report)
}
