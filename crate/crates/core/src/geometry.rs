//! Axis-aligned conics, the billiard reflection law and a direct billiard
//! simulator.
//!
//! Everything here works in the unnormalized coordinates of the table. The
//! simulator is deliberately independent of the elliptic-function machinery so
//! it can serve as an oracle for the Poncelet constructions.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Points and directions in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Vec2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

pub mod tol {
    /// How far a point may sit off the ellipse and still count as on it.
    pub const ON_ELLIPSE: f64 = 1e-9;
    /// Forward ray parameters below this are treated as grazing.
    pub const GRAZING: f64 = 1e-12;
    /// Band around `λ = B²` classified as the focal (degenerate) caustic.
    pub const FOCAL: f64 = 1e-10;
    /// Lines with `|c|` below this pass through the center.
    pub const THROUGH_CENTER: f64 = 1e-12;
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("semi-axes must be positive and finite, got ({0}, {1})")]
    BadAxes(f64, f64),
    #[error("point ({0}, {1}) is not on the ellipse (residual {2:e})")]
    NotOnEllipse(f64, f64, f64),
    #[error("direction must be a nonzero finite vector")]
    BadDirection,
    #[error("incoming direction does not arrive at the boundary (d·n = {0:e})")]
    NotIncoming(f64),
    #[error("ray grazes the ellipse (forward parameter {0:e})")]
    Grazing(f64),
    #[error("line passes through the center: caustic tangency is at infinity")]
    AsymptoticTangency,
    #[error("line does not meet the interior of the ellipse (lambda = {0})")]
    LineMissesEllipse(f64),
    #[error("point is not strictly outside the ellipse")]
    NotExternal,
    #[error("degenerate line (a, b) = (0, 0)")]
    DegenerateLine,
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// The ellipse `x²/A² + y²/B² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(GeometryError::BadAxes(a, b));
        }
        Ok(Self { a, b })
    }

    pub fn is_circle(&self) -> bool {
        self.a == self.b
    }

    /// `x²/A² + y²/B² − 1`; zero on the ellipse, negative inside.
    pub fn level(&self, p: Vec2) -> f64 {
        (p.x / self.a).powi(2) + (p.y / self.b).powi(2) - 1.0
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.level(p) < 0.0
    }

    pub fn outward_normal(&self, p: Vec2) -> Vec2 {
        Vec2::new(p.x / (self.a * self.a), p.y / (self.b * self.b)).normalized()
    }

    /// Foci on the major axis; coincide at the center for a circle.
    pub fn foci(&self) -> (Vec2, Vec2) {
        let f = (self.a * self.a - self.b * self.b).abs().sqrt();
        if self.a >= self.b {
            (Vec2::new(f, 0.0), Vec2::new(-f, 0.0))
        } else {
            (Vec2::new(0.0, f), Vec2::new(0.0, -f))
        }
    }

    /// Radial projection onto the ellipse.
    pub fn project(&self, p: Vec2) -> Vec2 {
        p * (1.0 / (self.level(p) + 1.0).sqrt())
    }

    fn check_on(&self, p: Vec2) -> Result<()> {
        let r = self.level(p);
        if r.abs() > tol::ON_ELLIPSE || !r.is_finite() {
            return Err(GeometryError::NotOnEllipse(p.x, p.y, r));
        }
        Ok(())
    }
}

/// A line `a x + b y = c`, stored with `a² + b² = 1` and `c ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line2 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if n == 0.0 || !n.is_finite() {
            return Err(GeometryError::DegenerateLine);
        }
        let s = if c < 0.0 { -1.0 / n } else { 1.0 / n };
        Ok(Self { a: a * s, b: b * s, c: c * s })
    }

    pub fn through(p: Vec2, q: Vec2) -> Result<Self> {
        let n = (q - p).perp();
        Self::new(n.x, n.y, n.dot(p))
    }

    pub fn signed_distance(&self, p: Vec2) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    /// Intersection point; `None` for (nearly) parallel lines.
    pub fn intersect(&self, o: &Line2) -> Option<Vec2> {
        let det = self.a * o.b - self.b * o.a;
        if det.abs() < 1e-15 {
            return None;
        }
        Some(Vec2::new((self.c * o.b - self.b * o.c) / det, (self.a * o.c - self.c * o.a) / det))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
    DegenerateFocal,
}

/// The conic `x²/(A² − λ) + y²/(B² − λ) = 1`, confocal with `base`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfocalConic {
    pub base: Ellipse,
    pub lambda: f64,
    pub kind: ConicKind,
}

impl ConfocalConic {
    pub fn new(base: Ellipse, lambda: f64) -> Self {
        let minor_sq = base.a.min(base.b).powi(2);
        let kind = if (lambda - minor_sq).abs() < tol::FOCAL {
            ConicKind::DegenerateFocal
        } else if lambda < minor_sq {
            ConicKind::Ellipse
        } else {
            ConicKind::Hyperbola
        };
        Self { base, lambda, kind }
    }

    /// Signed squared semi-axes `(A² − λ, B² − λ)`.
    pub fn axes_squared(&self) -> (f64, f64) {
        (self.base.a * self.base.a - self.lambda, self.base.b * self.base.b - self.lambda)
    }

    pub fn foci(&self) -> (Vec2, Vec2) {
        self.base.foci()
    }
}

/// Reflects the arrival direction `d_in` at `p ∈ E`.
///
/// `d_in` is the direction of travel when the ball hits the wall, so it must
/// point out of the table (`d_in · n > 0`). The result points back inside.
pub fn reflect_direction(e: &Ellipse, p: Vec2, d_in: Vec2) -> Result<Vec2> {
    e.check_on(p)?;
    let d = unit(d_in)?;
    let n = e.outward_normal(p);
    let dn = d.dot(n);
    if dn <= 0.0 {
        return Err(GeometryError::NotIncoming(dn));
    }
    Ok((d - n * (2.0 * dn)).normalized())
}

/// Second intersection of the ray `p + s d`, `s > 0`, with the ellipse.
pub fn advance(e: &Ellipse, p: Vec2, d: Vec2) -> Result<Vec2> {
    e.check_on(p)?;
    let d = unit(d)?;
    let (ia, ib) = (1.0 / (e.a * e.a), 1.0 / (e.b * e.b));
    let qa = d.x * d.x * ia + d.y * d.y * ib;
    let qb = p.x * d.x * ia + p.y * d.y * ib;
    let qc = e.level(p);
    let disc = (qb * qb - qa * qc).max(0.0);
    // Far root without cancellation when qb < 0.
    let s = if qb < 0.0 { (-qb + disc.sqrt()) / qa } else { -qc / (qb + disc.sqrt()).max(f64::MIN_POSITIVE) };
    if !(s > tol::GRAZING) {
        return Err(GeometryError::Grazing(s));
    }
    Ok(e.project(p + d * s))
}

/// Runs `steps` bounces from `p0` in initial direction `d0` (pointing into the
/// table). Returns the `steps + 1` bounce points, starting with `p0`.
pub fn simulate(e: &Ellipse, p0: Vec2, d0: Vec2, steps: usize) -> Result<Vec<Vec2>> {
    let mut pts = Vec::with_capacity(steps + 1);
    pts.push(p0);
    let mut p = p0;
    let mut d = unit(d0)?;
    for _ in 0..steps {
        let q = advance(e, p, d)?;
        d = reflect_direction(e, q, d)?;
        pts.push(q);
        p = q;
    }
    Ok(pts)
}

/// The confocal conic tangent to the line `l`.
///
/// For `l = {a x + b y = c}` normalized, tangency to `x²/(A²−λ) + y²/(B²−λ) = 1`
/// means `c² = (A²−λ)a² + (B²−λ)b²`, which is linear in λ.
pub fn caustic_from_chord(e: &Ellipse, l: &Line2) -> Result<ConfocalConic> {
    if l.c.abs() < tol::THROUGH_CENTER {
        return Err(GeometryError::AsymptoticTangency);
    }
    let lambda = (e.a * e.a * l.a * l.a + e.b * e.b * l.b * l.b - l.c * l.c) / (l.a * l.a + l.b * l.b);
    if lambda < -tol::ON_ELLIPSE {
        return Err(GeometryError::LineMissesEllipse(lambda));
    }
    Ok(ConfocalConic::new(*e, lambda.max(0.0)))
}

pub fn tangency_residual(c: &ConfocalConic, l: &Line2) -> f64 {
    let (p, q) = c.axes_squared();
    (l.c * l.c - p * l.a * l.a - q * l.b * l.b).abs()
}

/// Angle between the internal bisectors of `∠M₁PM₂` (tangent contacts from
/// `p`) and `∠F₁PF₂`. The second little Poncelet theorem says it vanishes.
pub fn bisector_residual(e: &Ellipse, p: Vec2) -> Result<f64> {
    if e.level(p) <= 0.0 {
        return Err(GeometryError::NotExternal);
    }
    let (m1, m2) = tangent_contacts(e, p);
    let (f1, f2) = e.foci();
    let tangent_bisector = (m1 - p).normalized() + (m2 - p).normalized();
    let focal_bisector = bisector_of(p, f1, f2);
    let c = tangent_bisector.cross(focal_bisector).abs();
    let d = tangent_bisector.dot(focal_bisector).abs();
    Ok(c.atan2(d))
}

fn bisector_of(p: Vec2, f1: Vec2, f2: Vec2) -> Vec2 {
    let u1 = f1 - p;
    let u2 = f2 - p;
    if u1.norm() == 0.0 || u2.norm() == 0.0 {
        return if u1.norm() == 0.0 { u2 } else { u1 };
    }
    u1.normalized() + u2.normalized()
}

/// Contact points of the two tangents from an external point.
pub fn tangent_contacts(e: &Ellipse, p: Vec2) -> (Vec2, Vec2) {
    // In coordinates (x/A, y/B) the ellipse is the unit circle.
    let q = Vec2::new(p.x / e.a, p.y / e.b);
    let r2 = q.dot(q);
    let h = (r2 - 1.0).max(0.0).sqrt();
    let base = q * (1.0 / r2);
    let off = q.perp() * (h / r2);
    let c1 = base + off;
    let c2 = base - off;
    (Vec2::new(c1.x * e.a, c1.y * e.b), Vec2::new(c2.x * e.a, c2.y * e.b))
}

/// Whether the open segment `pq` crosses the open focal segment.
pub fn crosses_focal_segment(e: &Ellipse, p: Vec2, q: Vec2) -> bool {
    let (f1, f2) = e.foci();
    segments_cross(p, q, f1, f2)
}

/// Proper intersection test for two closed segments in general position.
pub fn segments_cross(p: Vec2, q: Vec2, r: Vec2, s: Vec2) -> bool {
    let d1 = (q - p).cross(r - p);
    let d2 = (q - p).cross(s - p);
    let d3 = (s - r).cross(p - r);
    let d4 = (s - r).cross(q - r);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Intersection parameters `(s, t)` with `p + s(q−p) = r + t(s−r)`, if the
/// segments are not parallel.
pub fn segment_params(p: Vec2, q: Vec2, r: Vec2, s: Vec2) -> Option<(f64, f64)> {
    let u = q - p;
    let v = s - r;
    let den = u.cross(v);
    if den.abs() < 1e-300 {
        return None;
    }
    let w = r - p;
    Some((w.cross(v) / den, w.cross(u) / den))
}

fn unit(d: Vec2) -> Result<Vec2> {
    let n = d.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(GeometryError::BadDirection);
    }
    Ok(d * (1.0 / n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn corrected_quad() -> Ellipse {
        Ellipse::new((2.0 + SQRT_2).sqrt(), SQRT_2.sqrt()).unwrap()
    }

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        a.dist(b) < tol
    }

    #[test]
    fn head_on_reflection_reverses() {
        let c = Ellipse::new(1.0, 1.0).unwrap();
        let out = reflect_direction(&c, Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        assert!(close(out, Vec2::new(-1.0, 0.0), 1e-15));
    }

    #[test]
    fn outgoing_direction_is_rejected() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let r = reflect_direction(&e, Vec2::new(2.0, 0.0), Vec2::new(-1.0, 0.0));
        assert!(matches!(r, Err(GeometryError::NotIncoming(_))));
        let r = reflect_direction(&e, Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0));
        assert!(matches!(r, Err(GeometryError::NotOnEllipse(..))));
    }

    #[test]
    fn corrected_quadrilateral_reflects() {
        let e = corrected_quad();
        let d = Vec2::new(1.0, 1.0).normalized();
        let out = reflect_direction(&e, Vec2::new(1.0, 1.0), d).unwrap();
        assert!(close(out, Vec2::new(0.0, -1.0), 1e-12), "{out:?}");
        let next = advance(&e, Vec2::new(1.0, 1.0), out).unwrap();
        assert!(close(next, Vec2::new(1.0, -1.0), 1e-12));
        let pts = simulate(&e, Vec2::new(-1.0, -1.0), d, 4).unwrap();
        assert!(close(pts[4], Vec2::new(-1.0, -1.0), 1e-9));
        assert!(close(pts[2], Vec2::new(1.0, -1.0), 1e-9));
    }

    #[test]
    fn advance_on_circle() {
        let c = Ellipse::new(1.0, 1.0).unwrap();
        let p = Vec2::new(1.0, 0.0);
        assert!(close(advance(&c, p, Vec2::new(-1.0, 0.0)).unwrap(), Vec2::new(-1.0, 0.0), 1e-15));
        let q = advance(&c, p, Vec2::new(-1.0, 1.0)).unwrap();
        assert!(close(q, Vec2::new(0.0, 1.0), 1e-15));
        assert!(matches!(advance(&c, p, Vec2::new(0.0, 1.0)), Err(GeometryError::Grazing(_))));
        assert!(matches!(advance(&c, p, Vec2::new(1.0, 0.0)), Err(GeometryError::Grazing(_))));
    }

    #[test]
    fn inscribed_square_closes() {
        let c = Ellipse::new(1.0, 1.0).unwrap();
        let pts = simulate(&c, Vec2::new(1.0, 0.0), Vec2::new(-1.0, 1.0), 4).unwrap();
        assert!(close(pts[4], pts[0], 1e-14));
    }

    #[test]
    fn caustic_examples() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let tangent = Line2::new(1.0, 0.0, 2.0).unwrap();
        let c = caustic_from_chord(&e, &tangent).unwrap();
        assert_eq!(c.lambda, 0.0);
        assert_eq!(c.kind, ConicKind::Ellipse);

        let q = corrected_quad();
        let c = caustic_from_chord(&q, &Line2::new(1.0, 0.0, 1.0).unwrap()).unwrap();
        assert!((c.lambda - (1.0 + SQRT_2)).abs() < 1e-14);
        assert_eq!(c.kind, ConicKind::Hyperbola);
        let (p, s) = c.axes_squared();
        assert!((p - 1.0).abs() < 1e-14 && (s + 1.0).abs() < 1e-14);

        let circle = Ellipse::new(3.0, 3.0).unwrap();
        let c = caustic_from_chord(&circle, &Line2::new(0.6, 0.8, 1.5).unwrap()).unwrap();
        assert!((c.lambda - (9.0 - 2.25)).abs() < 1e-14);

        let through = Line2::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(caustic_from_chord(&e, &through), Err(GeometryError::AsymptoticTangency));
        let outside = Line2::new(1.0, 0.0, 3.0).unwrap();
        assert!(matches!(caustic_from_chord(&e, &outside), Err(GeometryError::LineMissesEllipse(_))));
    }

    #[test]
    fn tangency_residual_detects_perturbation() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let l = Line2::through(Vec2::new(2.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        let c = caustic_from_chord(&e, &l).unwrap();
        assert!(tangency_residual(&c, &l) < 1e-12);
        let shifted = Line2 { c: l.c + 0.1, ..l };
        // |(c+0.1)² − c²| = 0.2c + 0.01
        assert!(tangency_residual(&c, &shifted) >= 0.01);
    }

    #[test]
    fn bisector_on_axis_and_circle() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert_eq!(bisector_residual(&e, Vec2::new(3.0, 0.0)).unwrap(), 0.0);
        assert_eq!(bisector_residual(&e, Vec2::new(0.0, 2.5)).unwrap(), 0.0);
        let c = Ellipse::new(1.0, 1.0).unwrap();
        assert!(bisector_residual(&c, Vec2::new(1.3, 2.1)).unwrap() < 1e-14);
        assert_eq!(bisector_residual(&e, Vec2::new(0.5, 0.2)), Err(GeometryError::NotExternal));
    }
}
