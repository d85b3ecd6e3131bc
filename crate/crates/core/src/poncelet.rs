//! Poncelet billiard polygons in an ellipse from Jacobi's parametrization.
//!
//! For a confocal caustic `x²/(A²−λ) + y²/(B²−λ) = 1` (major axis along `x`)
//! write `c₁ = √(A²−λ)`, `c₂ = √(B²−λ)`. The map `(x, y) ↦ (y/c₂, x/c₁)`
//! sends the caustic to the unit circle and the table to
//! `X²/a*² + Y²/b*² = 1` with `a* = B/c₂ > b* = A/c₁ > 1`. In that frame
//! the tangent to the circle at `M(φ) = (cn φ, sn φ)` meets the outer
//! ellipse at `P(φ ± β)`, `P(ψ) = (a* cn ψ, b* sn ψ)`, provided
//! `k² (a*² − 1) = a*² − b*²` and `cn β = 1/a*`. Here that simplifies to
//! `k² = (A² − B²)/(A² − λ)`. Back in the table frame the vertices are
//! `(A sn ψ, B cn ψ)`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::elliptic::{EllipticError, Modulus};
use crate::geometry::{caustic_from_chord, Ellipse, GeometryError, Line2, Vec2};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PonceletError {
    #[error("caustic parameter must lie in (0, B²) = (0, {max}), got {lambda}")]
    LambdaOutOfRange { lambda: f64, max: f64 },
    #[error("n = {n} and p = {p} are not coprime")]
    NotCoprime { n: usize, p: usize },
    #[error("need p >= 1 and n >= 2p + 1, got n = {n}, p = {p}")]
    BadPeriod { n: usize, p: usize },
    #[error("the table is a circle; an ellipse with A != B is required")]
    Circle,
    #[error("no caustic with rotation number {target} (scanned rho over [{lo}, {hi}], best error {best:e})")]
    NoRoot { target: f64, lo: f64, hi: f64, best: f64 },
    #[error("rotation number is not monotone on the scan grid near lambda = {0}")]
    NotMonotone(f64),
    #[error("frame has rotation number {rho}, not {n}/{p}")]
    FrameMismatch { rho: f64, n: usize, p: usize },
    #[error("perimeter maximization did not converge (best residual {0:e})")]
    NoConvergence(f64),
    #[error("operation needs an even number of sides, got {0}")]
    OddSides(usize),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, PonceletError>;

pub mod tol {
    /// Default target accuracy of `ρ(λ)` in [`super::solve_caustic`].
    pub const ROTATION: f64 = 1e-12;
    /// A frame is accepted for `(n, p)` when `|ρ − p/n|` is below this.
    pub const FRAME_MATCH: f64 = 1e-9;
    /// Number of λ samples used to bracket the root and check monotonicity.
    pub const SCAN_POINTS: usize = 64;
    /// Minimum parameter gap between consecutive vertices in the perimeter maximizer.
    pub const BIRKHOFF_ANGLE: f64 = 1e-6;
}

/// Normalized Poncelet setup for one confocal caustic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiFrame {
    pub base: Ellipse,
    pub lambda: f64,
    pub a_star: f64,
    pub b_star: f64,
    pub modulus: Modulus,
    pub beta: f64,
    pub theta: f64,
    /// Caustic semi-axes along the major and minor axis of the table.
    pub caustic_axes: (f64, f64),
    /// The table's major axis is `y` (coordinates are swapped internally).
    pub swapped: bool,
}

impl JacobiFrame {
    pub fn new(base: Ellipse, lambda: f64) -> Result<Self> {
        let minor = base.a.min(base.b);
        let max = minor * minor;
        if !(lambda > 0.0 && lambda < max) {
            return Err(PonceletError::LambdaOutOfRange { lambda, max });
        }
        Self::build(base, lambda, max - lambda)
    }

    /// Frame for `λ = B² − gap`; keeps full relative precision in `B² − λ`
    /// when the caustic is close to the focal segment.
    pub fn from_gap(base: Ellipse, gap: f64) -> Result<Self> {
        let minor = base.a.min(base.b);
        let max = minor * minor;
        if !(gap > 0.0 && gap < max) {
            return Err(PonceletError::LambdaOutOfRange { lambda: max - gap, max });
        }
        Self::build(base, max - gap, gap)
    }

    fn build(base: Ellipse, lambda: f64, gap: f64) -> Result<Self> {
        let swapped = base.a < base.b;
        let (major, minor) = if swapped { (base.b, base.a) } else { (base.a, base.b) };
        let spread = (major - minor) * (major + minor);
        let c1 = (spread + gap).sqrt();
        let c2 = gap.sqrt();
        let a_star = minor / c2;
        let b_star = major / c1;
        let modulus = Modulus::from_parts(spread / (spread + gap), gap / (spread + gap))?;
        // sn β = √λ/B, cn β = 1/a*, dn β = b*/a*.
        let beta = modulus.incomplete_f_from(lambda.sqrt() / minor, c2 / minor, b_star / a_star);
        Ok(Self { base, lambda, a_star, b_star, modulus, beta, theta: 2.0 * beta, caustic_axes: (c1, c2), swapped })
    }

    /// `ρ = β / 2K`, the number of turns around the caustic per bounce.
    pub fn rotation_number(&self) -> f64 {
        self.beta / (2.0 * self.modulus.K())
    }

    fn canonical(&self, p: Vec2) -> Vec2 {
        if self.swapped {
            Vec2::new(p.y, p.x)
        } else {
            p
        }
    }

    /// Table coordinates to the frame where the caustic is the unit circle.
    pub fn to_normalized(&self, p: Vec2) -> Vec2 {
        let q = self.canonical(p);
        Vec2::new(q.y / self.caustic_axes.1, q.x / self.caustic_axes.0)
    }

    pub fn from_normalized(&self, q: Vec2) -> Vec2 {
        let c = Vec2::new(self.caustic_axes.0 * q.y, self.caustic_axes.1 * q.x);
        self.canonical(c)
    }

    /// `P(ψ)` on the table, in table coordinates.
    pub fn vertex(&self, psi: f64) -> Vec2 {
        let t = self.modulus.sn_cn_dn(psi);
        self.from_normalized(Vec2::new(self.a_star * t.cn, self.b_star * t.sn))
    }

    /// `M(φ)` on the caustic, in table coordinates.
    pub fn tangency_point(&self, phi: f64) -> Vec2 {
        let t = self.modulus.sn_cn_dn(phi);
        self.from_normalized(Vec2::new(t.cn, t.sn))
    }

    /// Tangent line to the caustic at `M(φ)`, in table coordinates.
    pub fn tangent_line(&self, phi: f64) -> Line2 {
        let t = self.modulus.sn_cn_dn(phi);
        // X cn φ + Y sn φ = 1 with X = y'/c₂, Y = x'/c₁ (canonical x', y').
        let (c1, c2) = self.caustic_axes;
        let (ax, ay) = (t.sn / c1, t.cn / c2);
        let (a, b) = if self.swapped { (ay, ax) } else { (ax, ay) };
        Line2::new(a, b, 1.0).expect("tangent line coefficients are never both zero")
    }

    /// Inverse of [`Self::vertex`] modulo `4K`.
    pub fn vertex_parameter(&self, p: Vec2) -> f64 {
        let q = self.to_normalized(p);
        let amplitude = (q.y / self.b_star).atan2(q.x / self.a_star);
        self.modulus.incomplete_f(amplitude)
    }

    /// Residuals of `cn β = 1/a*` and `dn β = b*/a*`.
    pub fn defining_residuals(&self) -> (f64, f64) {
        let t = self.modulus.sn_cn_dn(self.beta);
        ((t.cn - 1.0 / self.a_star).abs(), (t.dn - self.b_star / self.a_star).abs())
    }

    /// How far `P(φ ± β)` sit off the unit-circle tangent at `M(φ)`.
    pub fn tangent_lemma_residual(&self, phi: f64) -> f64 {
        let m = self.modulus.sn_cn_dn(phi);
        [phi - self.beta, phi + self.beta]
            .iter()
            .map(|&psi| {
                let v = self.modulus.sn_cn_dn(psi);
                (self.a_star * v.cn * m.cn + self.b_star * v.sn * m.sn - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    fn check_period(&self, n: usize, p: usize) -> Result<()> {
        check_np(n, p)?;
        let rho = self.rotation_number();
        if (rho - p as f64 / n as f64).abs() > tol::FRAME_MATCH {
            return Err(PonceletError::FrameMismatch { rho, n, p });
        }
        Ok(())
    }
}

/// A closed Poncelet polygon; vertex `j` is `P(φ + β + jθ)` and the side
/// ending at vertex `j` touches the caustic at `M(φ + jθ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PonceletPolygon {
    pub frame: JacobiFrame,
    pub n: usize,
    pub p: usize,
    pub phi: f64,
    pub vertices: Vec<Vec2>,
    pub tangency_points: Vec<Vec2>,
    pub perimeter: f64,
}

impl PonceletPolygon {
    /// `|V_n − V_0|` where `V_n` is computed by continuing the parametrization.
    pub fn closure_gap(&self) -> f64 {
        let f = &self.frame;
        f.vertex(self.phi + f.beta + self.n as f64 * f.theta).dist(self.vertices[0])
    }

    /// Side `j` runs from vertex `j − 1` to vertex `j` (cyclically).
    pub fn side(&self, j: usize) -> (Vec2, Vec2) {
        let n = self.n;
        (self.vertices[(j + n - 1) % n], self.vertices[j % n])
    }

    /// Parameter of the tangency point of side `j`.
    pub fn side_parameter(&self, j: usize) -> f64 {
        self.phi + j as f64 * self.frame.theta
    }

    /// `max_j |V_{j+n/2} + V_j|`.
    pub fn central_symmetry_residual(&self) -> Result<f64> {
        if self.n % 2 == 1 {
            return Err(PonceletError::OddSides(self.n));
        }
        let h = self.n / 2;
        Ok((0..self.n).map(|j| (self.vertices[(j + h) % self.n] + self.vertices[j]).norm()).fold(0.0, f64::max))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_np(n: usize, p: usize) -> Result<()> {
    if p == 0 || n < 2 * p + 1 {
        return Err(PonceletError::BadPeriod { n, p });
    }
    if gcd(n, p) != 1 {
        return Err(PonceletError::NotCoprime { n, p });
    }
    Ok(())
}

pub fn rotation_number(e: &Ellipse, lambda: f64) -> Result<f64> {
    Ok(JacobiFrame::new(*e, lambda)?.rotation_number())
}

/// Finds the caustic whose rotation number is `p/n`.
pub fn solve_caustic(e: &Ellipse, n: usize, p: usize, tol: f64) -> Result<JacobiFrame> {
    check_np(n, p)?;
    if e.is_circle() {
        return Err(PonceletError::Circle);
    }
    let max = e.a.min(e.b).powi(2);
    let target = p as f64 / n as f64;
    let samples: Vec<(f64, f64)> = (1..=tol::SCAN_POINTS)
        .map(|i| {
            let lambda = max * i as f64 / (tol::SCAN_POINTS + 1) as f64;
            rotation_number(e, lambda).map(|rho| (lambda, rho))
        })
        .collect::<Result<_>>()?;
    if let Some(w) = samples.windows(2).find(|w| w[1].1 <= w[0].1) {
        return Err(PonceletError::NotMonotone(w[1].0));
    }
    // ρ → 0 as λ → 0 and ρ → 1/2 as λ → B². Bisect on the gap B² − λ,
    // which resolves caustics hugging the focal segment.
    let mut near = 0.0;
    let mut far = max;
    for &(lambda, rho) in &samples {
        if rho < target {
            far = max - lambda;
        } else {
            near = max - lambda;
            break;
        }
    }
    let mut best: Option<(f64, JacobiFrame)> = None;
    for _ in 0..400 {
        let mid = 0.5 * (near + far);
        if mid <= near || mid >= far {
            break;
        }
        let frame = JacobiFrame::from_gap(*e, mid)?;
        let err = frame.rotation_number() - target;
        if best.as_ref().is_none_or(|(b, _)| err.abs() < b.abs()) {
            best = Some((err, frame));
        }
        if err == 0.0 {
            break;
        }
        if err < 0.0 {
            far = mid;
        } else {
            near = mid;
        }
    }
    match best {
        Some((err, frame)) if err.abs() < tol => Ok(frame),
        other => Err(PonceletError::NoRoot {
            target,
            lo: samples[0].1,
            hi: samples[samples.len() - 1].1,
            best: other.map_or(f64::INFINITY, |(e, _)| e.abs()),
        }),
    }
}

pub fn polygon(frame: &JacobiFrame, n: usize, p: usize, phi: f64) -> Result<PonceletPolygon> {
    frame.check_period(n, p)?;
    Ok(build_polygon(frame, n, p, phi))
}

fn build_polygon(frame: &JacobiFrame, n: usize, p: usize, phi: f64) -> PonceletPolygon {
    let vertices: Vec<Vec2> = (0..n).map(|j| frame.vertex(phi + frame.beta + j as f64 * frame.theta)).collect();
    let tangency_points = (0..n).map(|j| frame.tangency_point(phi + j as f64 * frame.theta)).collect();
    let perimeter = perimeter(&vertices);
    PonceletPolygon { frame: *frame, n, p, phi, vertices, tangency_points, perimeter }
}

/// Phase offset between the components of a `μ`-component union of
/// `(n, p)` Poncelet polygons sharing one caustic.
///
/// The components go through `M(φ + cτ)`, `c = 0..μ`. With `τ = θ/μ` the
/// copies are distinct only when `gcd(p, μ) = 1`; otherwise `τ = 4K/(nμ)`.
pub fn link_offset(frame: &JacobiFrame, n: usize, p: usize, mu: usize) -> f64 {
    if gcd(p, mu) == 1 {
        frame.theta / mu as f64
    } else {
        4.0 * frame.modulus.K() / (n * mu) as f64
    }
}

/// The `μ` components of a Poncelet link diagram.
pub fn link_polygons(frame: &JacobiFrame, n: usize, p: usize, mu: usize, phi: f64) -> Result<Vec<PonceletPolygon>> {
    frame.check_period(n, p)?;
    let tau = link_offset(frame, n, p, mu);
    Ok((0..mu).map(|c| build_polygon(frame, n, p, phi + c as f64 * tau)).collect())
}

pub fn perimeter(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    (0..n).map(|j| vertices[j].dist(vertices[(j + 1) % n])).sum()
}

/// Spread (max − min) of the perimeters of the polygons starting at `phis`.
pub fn graves_spread(frame: &JacobiFrame, n: usize, p: usize, phis: &[f64]) -> Result<f64> {
    frame.check_period(n, p)?;
    let (lo, hi) = phis
        .iter()
        .map(|&phi| build_polygon(frame, n, p, phi).perimeter)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Ok(if phis.is_empty() { 0.0 } else { hi - lo })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxReport {
    /// Largest distance between pairwise intersections of the main diagonals.
    pub residual: f64,
    /// Mean of those intersections.
    pub point: Vec2,
}

/// Concurrency of the main diagonals `V_j V_{j+n/2}` of an even polygon.
pub fn darboux_residual(poly: &PonceletPolygon) -> Result<DarbouxReport> {
    if poly.n % 2 == 1 {
        return Err(PonceletError::OddSides(poly.n));
    }
    let h = poly.n / 2;
    let diagonals: Vec<Line2> = (0..h)
        .map(|j| Line2::through(poly.vertices[j], poly.vertices[j + h]))
        .collect::<std::result::Result<_, _>>()?;
    let mut points = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            if let Some(q) = diagonals[i].intersect(&diagonals[j]) {
                points.push(q);
            }
        }
    }
    if points.is_empty() {
        // Parallel diagonals: no common point.
        return Ok(DarbouxReport { residual: f64::INFINITY, point: Vec2::new(f64::NAN, f64::NAN) });
    }
    let mut residual: f64 = 0.0;
    for a in &points {
        for b in &points {
            residual = residual.max(a.dist(*b));
        }
    }
    let sum = points.iter().fold(Vec2::default(), |s, &q| s + q);
    Ok(DarbouxReport { residual, point: sum * (1.0 / points.len() as f64) })
}

/// Result of maximizing the perimeter over inscribed `(n, p)` polygons with
/// one fixed vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffPolygon {
    pub polygon: PonceletPolygon,
    /// Caustic parameter of the first side.
    pub lambda: f64,
    /// Largest violation of the reflection law at the free vertices.
    pub reflection_residual: f64,
    /// Angles `∠P_{i−1} F P_i` at the focus, in `[0, 2π)`; they sum to `2πp`.
    pub focal_angles: Vec<f64>,
    pub iterations: usize,
}

/// Ellipse points parametrized by the eccentric anomaly, with focal angles
/// measured from the focus on the positive major half-axis.
struct Chart {
    swapped: bool,
    major: f64,
    minor: f64,
    focus: f64,
}

impl Chart {
    fn new(e: &Ellipse) -> Self {
        let swapped = e.a < e.b;
        let (major, minor) = if swapped { (e.b, e.a) } else { (e.a, e.b) };
        Self { swapped, major, minor, focus: ((major - minor) * (major + minor)).sqrt() }
    }

    fn canonical(&self, p: Vec2) -> Vec2 {
        if self.swapped {
            Vec2::new(p.y, p.x)
        } else {
            p
        }
    }

    fn point(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        self.canonical(Vec2::new(self.major * c, self.minor * s))
    }

    fn derivative(&self, t: f64) -> Vec2 {
        let (s, c) = t.sin_cos();
        self.canonical(Vec2::new(-self.major * s, self.minor * c))
    }

    fn anomaly_of(&self, p: Vec2) -> f64 {
        let q = self.canonical(p);
        (q.y / self.minor).atan2(q.x / self.major)
    }

    fn focal_angle(&self, p: Vec2) -> f64 {
        let q = self.canonical(p);
        q.y.atan2(q.x - self.focus)
    }
}

struct PerimeterProblem<'a> {
    chart: &'a Chart,
    start: f64,
    end: f64,
}

impl PerimeterProblem<'_> {
    fn params(&self, free: &[f64]) -> Vec<f64> {
        let mut all = Vec::with_capacity(free.len() + 2);
        all.push(self.start);
        all.extend_from_slice(free);
        all.push(self.end);
        all
    }

    fn value(&self, free: &[f64]) -> f64 {
        let pts: Vec<Vec2> = self.params(free).iter().map(|&t| self.chart.point(t)).collect();
        pts.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    fn gradient(&self, free: &[f64]) -> Vec<f64> {
        let all = self.params(free);
        let pts: Vec<Vec2> = all.iter().map(|&t| self.chart.point(t)).collect();
        (1..all.len() - 1)
            .map(|i| {
                let u = (pts[i] - pts[i - 1]).normalized() + (pts[i] - pts[i + 1]).normalized();
                u.dot(self.chart.derivative(all[i]))
            })
            .collect()
    }

    /// Reflection-law violation at each free vertex: the tangential component
    /// of the sum of unit vectors towards both neighbours.
    fn residual(&self, free: &[f64]) -> f64 {
        let all = self.params(free);
        self.gradient(free)
            .iter()
            .zip(&all[1..])
            .map(|(g, &t)| (g / self.chart.derivative(t).norm()).abs())
            .fold(0.0, f64::max)
    }

    fn ordered(&self, free: &[f64]) -> bool {
        self.params(free).windows(2).all(|w| w[1] - w[0] >= tol::BIRKHOFF_ANGLE)
    }
}

/// Solves `(T − μ I) x = r` for a symmetric tridiagonal `T`; `None` unless
/// the shifted matrix is negative definite.
fn solve_shifted(diag: &[f64], off: &[f64], mu: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut pivots = vec![0.0; n];
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut d = diag[i] - mu;
        let mut r = rhs[i];
        if i > 0 {
            let l = off[i - 1] / pivots[i - 1];
            d -= l * off[i - 1];
            r -= l * y[i - 1];
        }
        if !(d < 0.0) {
            return None;
        }
        pivots[i] = d;
        y[i] = r;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let next = if i + 1 < n { off[i] * x[i + 1] } else { 0.0 };
        x[i] = (y[i] - next) / pivots[i];
    }
    Some(x)
}

/// Maximizes the perimeter of inscribed polygons through `p0` that wind `p`
/// times around the ellipse in `n` steps, starting from equally spaced
/// parameters.
pub fn birkhoff_polygon(e: &Ellipse, n: usize, p: usize, p0: Vec2) -> Result<BirkhoffPolygon> {
    check_np(n, p)?;
    if e.level(p0).abs() > crate::geometry::tol::ON_ELLIPSE {
        return Err(GeometryError::NotOnEllipse(p0.x, p0.y, e.level(p0)).into());
    }
    const MAX_ITER: usize = 500;
    const H: f64 = 1e-6;
    let chart = Chart::new(e);
    let start = chart.anomaly_of(p0);
    let total = 2.0 * PI * p as f64;
    let problem = PerimeterProblem { chart: &chart, start, end: start + total };
    let mut free: Vec<f64> = (1..n).map(|i| start + total * i as f64 / n as f64).collect();
    let m = free.len();
    let mut iterations = 0;
    let mut residual = problem.residual(&free);
    while iterations < MAX_ITER && residual > 1e-13 {
        iterations += 1;
        let grad = problem.gradient(&free);
        // Tridiagonal Hessian by central differences of the gradient.
        let mut diag = vec![0.0; m];
        let mut off = vec![0.0; m.saturating_sub(1)];
        for i in 0..m {
            let mut plus = free.clone();
            let mut minus = free.clone();
            plus[i] += H;
            minus[i] -= H;
            let gp = problem.gradient(&plus);
            let gm = problem.gradient(&minus);
            diag[i] = (gp[i] - gm[i]) / (2.0 * H);
            if i + 1 < m {
                off[i] = (gp[i + 1] - gm[i + 1]) / (2.0 * H);
            }
        }
        let scale = diag.iter().map(|d| d.abs()).fold(1e-12, f64::max);
        let neg: Vec<f64> = grad.iter().map(|g| -g).collect();
        let mut mu = 0.0;
        let step = loop {
            if let Some(x) = solve_shifted(&diag, &off, mu, &neg) {
                break x;
            }
            mu = if mu == 0.0 { 1e-8 * scale } else { 10.0 * mu };
        };
        let f0 = problem.value(&free);
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-14 {
            let cand: Vec<f64> = free.iter().zip(&step).map(|(x, d)| x + t * d).collect();
            if problem.ordered(&cand) && problem.value(&cand) >= f0 - 4.0 * f64::EPSILON * f0 {
                free = cand;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        residual = problem.residual(&free);
        if !accepted {
            break;
        }
    }
    if residual > 1e-6 {
        return Err(PonceletError::NoConvergence(residual));
    }
    let params = problem.params(&free);
    let mut vertices: Vec<Vec2> = params[..n].iter().map(|&t| chart.point(t)).collect();
    let focal_angles = params
        .windows(2)
        .map(|w| {
            let d = chart.focal_angle(chart.point(w[1])) - chart.focal_angle(chart.point(w[0]));
            d.rem_euclid(2.0 * PI)
        })
        .collect();
    let chord = Line2::through(vertices[0], vertices[1])?;
    let lambda = caustic_from_chord(e, &chord)?.lambda;
    let frame = JacobiFrame::new(*e, lambda)?;
    let phi = frame.vertex_parameter(vertices[0]) - frame.beta;
    // The ascent runs counter-clockwise; follow the frame's direction.
    let next = frame.vertex(phi + frame.beta + frame.theta);
    if next.dist(vertices[n - 1]) < next.dist(vertices[1]) {
        vertices[1..].reverse();
    }
    let tangency_points = (0..n).map(|j| frame.tangency_point(phi + j as f64 * frame.theta)).collect();
    let perimeter = perimeter(&vertices);
    Ok(BirkhoffPolygon {
        polygon: PonceletPolygon { frame, n, p, phi, vertices, tangency_points, perimeter },
        lambda,
        reflection_residual: residual,
        focal_angles,
        iterations,
    })
}
