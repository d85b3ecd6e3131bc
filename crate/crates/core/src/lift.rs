//! Sawtooth heights over a star diagram and the billiard trajectory they
//! define in the elliptic cylinder `E × [0, 1]`.
//!
//! Along each component, parameterized by normalized arc length `t ∈ [0, 1)`,
//! the height is `z(t) = 2 |frac(m t + φ_z) − 1/2|`. Between wall bounces the
//! ball rises and falls at constant slope, bouncing off the caps at the
//! extrema of `z`. A frequency `m` and phase `φ_z` are found by search so
//! that every crossing has the requested strand on top.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::Sign;
use crate::diagram::{DiagramError, StarDiagram};
use crate::geometry::{Ellipse, Vec2};

pub mod tol {
    /// Constraint times closer than this are treated as equal.
    pub const DISTINCT_TIMES: f64 = 1e-12;
    /// Minimum arc-length gap between a sawtooth extremum and a wall vertex
    /// or crossing passage.
    pub const EXTREMUM_GAP: f64 = 1e-9;
    /// Golden-section iterations when refining the phase.
    pub const GOLDEN_STEPS: usize = 80;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiftError {
    #[error("margin delta must lie in (0, 1/4), got {0}")]
    BadDelta(f64),
    #[error("frequency m must be at least 1")]
    BadFrequency,
    #[error("constraint times {t} and {other} coincide in component {component}")]
    Degenerate { component: usize, t: f64, other: f64 },
    #[error(
        "no m <= {m_max} reaches margin {delta} in component {component} \
         (best m = {best_m}, phi_z = {best_phi}, margin = {best_margin})"
    )]
    Infeasible { component: usize, m_max: u32, delta: f64, best_m: u32, best_phi: f64, best_margin: f64 },
    #[error("{found} signs for {expected} crossings")]
    PatternLength { expected: usize, found: usize },
    #[error("{found} height plans for {expected} components")]
    PlanCount { expected: usize, found: usize },
    #[error("a cap bounce lies within {gap:e} of wall vertex {vertex} of component {component}")]
    ExtremumAtVertex { component: usize, vertex: usize, gap: f64 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type Result<T> = std::result::Result<T, LiftError>;

/// `2 |frac(m t + φ_z) − 1/2|`.
pub fn sawtooth(t: f64, m: u32, phi_z: f64) -> f64 {
    let s = (m as f64 * t + phi_z).rem_euclid(1.0);
    2.0 * (s - 0.5).abs()
}

/// Arc-length distance from `t` to the nearest extremum of the sawtooth.
pub fn extremum_gap(t: f64, m: u32, phi_z: f64) -> f64 {
    let s = 2.0 * (m as f64 * t + phi_z);
    (s - s.round()).abs() / (2.0 * m as f64)
}

/// `lo ≤ z(t) ≤ hi`; the slack is `min(z − lo, hi − z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxConstraint {
    pub t: f64,
    pub lo: f64,
    pub hi: f64,
}

/// `z(over) > z(under)`; the slack is the height difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairConstraint {
    pub over: f64,
    pub under: f64,
}

/// Height constraints on one component.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HeightProblem {
    pub boxes: Vec<BoxConstraint>,
    pub pairs: Vec<PairConstraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightPlan {
    pub m: u32,
    pub phi_z: f64,
    /// Smallest slack over all constraints.
    pub margin: f64,
    pub component_index: usize,
}

impl HeightProblem {
    pub fn len(&self) -> usize {
        self.boxes.len() + self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn margin(&self, m: u32, phi_z: f64) -> f64 {
        let z = |t| sawtooth(t, m, phi_z);
        let boxes = self.boxes.iter().map(|b| {
            let h = z(b.t);
            (h - b.lo).min(b.hi - h)
        });
        let pairs = self.pairs.iter().map(|p| z(p.over) - z(p.under));
        boxes.chain(pairs).fold(f64::INFINITY, f64::min)
    }

    fn times(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = self.boxes.iter().map(|b| b.t).collect();
        for p in &self.pairs {
            ts.push(p.over);
            ts.push(p.under);
        }
        ts
    }

    /// Smallest arc-length gap between a constraint time and an extremum.
    pub fn extremum_gap(&self, m: u32, phi_z: f64) -> f64 {
        self.times().into_iter().map(|t| extremum_gap(t, m, phi_z)).fold(f64::INFINITY, f64::min)
    }

    /// Fails if two constraint times coincide (cyclically).
    pub fn check_distinct(&self, component: usize) -> Result<()> {
        let mut ts = self.times();
        ts.sort_by(f64::total_cmp);
        let wrap = ts.first().zip(ts.last()).map(|(&a, &b)| (b, a + 1.0));
        let pairs = ts.windows(2).map(|w| (w[0], w[1])).chain(wrap.filter(|_| ts.len() > 1));
        for (t, other) in pairs {
            if other - t < tol::DISTINCT_TIMES {
                return Err(LiftError::Degenerate { component, t, other: other.rem_euclid(1.0) });
            }
        }
        Ok(())
    }

    fn refine(&self, m: u32, center: f64, half: f64) -> (f64, f64) {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let f = |x: f64| self.margin(m, x);
        let (mut a, mut b) = (center - half, center + half);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..tol::GOLDEN_STEPS {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = f(d);
            }
        }
        let best = [(center, f(center)), (c, fc), (d, fd)].into_iter().fold((center, f64::NEG_INFINITY), |acc, x| {
            if x.1 > acc.1 {
                x
            } else {
                acc
            }
        });
        (best.0.rem_euclid(1.0), best.1)
    }

    /// Best phase for frequency `m`: grid of step `1/(8 m C)` then
    /// golden-section refinement around the best grid point.
    pub fn best_phase(&self, m: u32) -> (f64, f64) {
        let count = (8 * m as usize * self.len().max(1)) as u64;
        let step = 1.0 / count as f64;
        let (mut best_phi, mut best) = (0.0, f64::NEG_INFINITY);
        for i in 0..count {
            let phi = i as f64 * step;
            let v = self.margin(m, phi);
            if v > best {
                best = v;
                best_phi = phi;
            }
        }
        self.refine(m, best_phi, step)
    }

    /// Smallest `m ≤ m_max` (by increasing search) admitting a phase with
    /// margin at least `delta`.
    pub fn solve(&self, delta: f64, m_max: u32, component: usize) -> Result<HeightPlan> {
        if !(delta > 0.0 && delta < 0.25) {
            return Err(LiftError::BadDelta(delta));
        }
        self.check_distinct(component)?;
        let mut best = (0, 0.0, f64::NEG_INFINITY);
        for m in 1..=m_max {
            let (phi, margin) = self.best_phase(m);
            if margin > best.2 {
                best = (m, phi, margin);
            }
            if margin < delta {
                continue;
            }
            // Nudge off an extremum sitting on a passage, if needed.
            let nudge = 4.0 * tol::EXTREMUM_GAP * m as f64;
            let found = [phi, phi + nudge, phi - nudge]
                .into_iter()
                .map(|p| p.rem_euclid(1.0))
                .find(|&p| self.margin(m, p) >= delta && self.extremum_gap(m, p) >= tol::EXTREMUM_GAP);
            if let Some(phi_z) = found {
                return Ok(HeightPlan { m, phi_z, margin: self.margin(m, phi_z), component_index: component });
            }
        }
        Err(LiftError::Infeasible { component, m_max, delta, best_m: best.0, best_phi: best.1, best_margin: best.2 })
    }
}

/// Per-component constraints for a signed diagram. Wall vertices must stay
/// away from the caps; a crossing within one component is a pair constraint.
/// A crossing between components puts the over-strand above `1/2` and the
/// under-strand below, so each component can be solved on its own.
pub fn height_problems(d: &StarDiagram, pattern: &[Sign]) -> Result<Vec<HeightProblem>> {
    if pattern.len() != d.crossings.len() {
        return Err(LiftError::PatternLength { expected: d.crossings.len(), found: pattern.len() });
    }
    let mut problems: Vec<HeightProblem> = d
        .vertex_arcs
        .iter()
        .map(|arcs| HeightProblem {
            boxes: arcs.iter().map(|&t| BoxConstraint { t, lo: 0.0, hi: 1.0 }).collect(),
            pairs: Vec::new(),
        })
        .collect();
    for (c, &s) in d.crossings.iter().zip(pattern) {
        let (over, under) = c.over_under(s);
        if over.component == under.component {
            problems[over.component].pairs.push(PairConstraint { over: over.t, under: under.t });
        } else {
            problems[over.component].boxes.push(BoxConstraint { t: over.t, lo: 0.5, hi: f64::INFINITY });
            problems[under.component].boxes.push(BoxConstraint { t: under.t, lo: f64::NEG_INFINITY, hi: 0.5 });
        }
    }
    Ok(problems)
}

/// One height plan per component realizing `pattern` (signs in sweep order)
/// with margin `delta`.
pub fn assign_heights(d: &StarDiagram, pattern: &[Sign], delta: f64, m_max: u32) -> Result<Vec<HeightPlan>> {
    if !(delta > 0.0 && delta < 0.25) {
        return Err(LiftError::BadDelta(delta));
    }
    let problems = height_problems(d, pattern)?;
    for (c, p) in problems.iter().enumerate() {
        p.check_distinct(c)?;
    }
    problems.iter().enumerate().map(|(c, p)| p.solve(delta, m_max, c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Event {
    Wall,
    CapBottom,
    CapTop,
}

/// One closed component; the segment from the last point returns to the first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strand3D {
    pub points: Vec<[f64; 3]>,
    pub events: Vec<Event>,
    /// Normalized arc length of each point.
    pub params: Vec<f64>,
    /// The trajectory at `t = 1`, computed independently of `points[0]`.
    pub end: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrandRef {
    pub component: usize,
    pub t: f64,
}

/// A crossing of the intended diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetCrossing {
    pub point: Vec2,
    pub over: StrandRef,
    pub under: StrandRef,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilliardKnot3D {
    pub base: Ellipse,
    pub components: Vec<Strand3D>,
    pub plans: Vec<HeightPlan>,
    pub crossings: Vec<TargetCrossing>,
}

impl BilliardKnot3D {
    /// Wall bounces of component `c` projected to the plane.
    pub fn wall_vertices(&self, c: usize) -> Vec<Vec2> {
        let s = &self.components[c];
        s.points.iter().zip(&s.events).filter(|(_, &e)| e == Event::Wall).map(|(p, _)| Vec2::new(p[0], p[1])).collect()
    }

    pub fn cap_bounces(&self, c: usize) -> usize {
        self.components[c].events.iter().filter(|&&e| e != Event::Wall).count()
    }
}

/// Lifts a signed diagram with one plan per component.
pub fn build_knot3d(d: &StarDiagram, plans: &[HeightPlan]) -> Result<BilliardKnot3D> {
    let ou = d.over_under()?;
    let signs = d.signs.clone().unwrap_or_default();
    if plans.len() != d.components.len() {
        return Err(LiftError::PlanCount { expected: d.components.len(), found: plans.len() });
    }
    let mut components = Vec::with_capacity(d.components.len());
    for (c, poly) in d.components.iter().enumerate() {
        let plan = plans.iter().find(|p| p.component_index == c).copied().unwrap_or(plans[c]);
        let (m, phi) = (plan.m, plan.phi_z);
        if m == 0 {
            return Err(LiftError::BadFrequency);
        }
        let arcs = &d.vertex_arcs[c];
        let n = poly.n;
        let mut s = Strand3D { points: Vec::new(), events: Vec::new(), params: Vec::new(), end: [0.0; 3] };
        for k in 0..n {
            let (t0, t1) = (arcs[k], if k + 1 < n { arcs[k + 1] } else { 1.0 });
            let (p0, p1) = (poly.vertices[k], poly.vertices[(k + 1) % n]);
            let gap = extremum_gap(t0, m, phi);
            if gap < tol::EXTREMUM_GAP {
                return Err(LiftError::ExtremumAtVertex { component: c, vertex: k, gap });
            }
            s.points.push([p0.x, p0.y, sawtooth(t0, m, phi)]);
            s.events.push(Event::Wall);
            s.params.push(t0);
            // Extrema where 2(m t + φ) is an integer, strictly inside the side.
            let lo = 2.0 * (m as f64 * t0 + phi);
            let hi = 2.0 * (m as f64 * t1 + phi);
            for j in (lo.floor() as i64 + 1)..=(hi.ceil() as i64 - 1) {
                let t = (j as f64 / 2.0 - phi) / m as f64;
                if !(t > t0 && t < t1) {
                    continue;
                }
                let q = p0 + (p1 - p0) * ((t - t0) / (t1 - t0));
                let top = j.rem_euclid(2) == 0;
                s.points.push([q.x, q.y, if top { 1.0 } else { 0.0 }]);
                s.events.push(if top { Event::CapTop } else { Event::CapBottom });
                s.params.push(t);
            }
        }
        let f = &poly.frame;
        let last = f.vertex(poly.phi + f.beta + n as f64 * f.theta);
        s.end = [last.x, last.y, sawtooth(1.0, m, phi)];
        components.push(s);
    }
    let crossings = d
        .crossings
        .iter()
        .zip(&ou)
        .zip(&signs)
        .map(|((c, (over, under)), &sign)| TargetCrossing {
            point: c.point,
            over: StrandRef { component: over.component, t: over.t },
            under: StrandRef { component: under.component, t: under.t },
            sign,
        })
        .collect();
    let plans = (0..d.components.len())
        .map(|c| plans.iter().find(|p| p.component_index == c).copied().unwrap_or(plans[c]))
        .collect();
    Ok(BilliardKnot3D { base: d.components[0].frame.base, components, plans, crossings })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyOptions {
    pub residual: f64,
    pub closure: f64,
    pub clearance: f64,
    /// Distance within which a projected crossing matches a target.
    pub crossing_match: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { residual: 1e-7, closure: 1e-9, clearance: 1e-6, crossing_match: 1e-7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub options: VerifyOptions,
    /// Reflection law, wall incidence and slope continuity at wall bounces.
    pub wall_residual: f64,
    /// Cap height, horizontal continuity and slope flip at cap bounces.
    pub cap_residual: f64,
    pub closure_residual: f64,
    pub contained: bool,
    pub crossings_expected: usize,
    pub crossings_found: usize,
    pub crossings_matched: usize,
    /// Every matched crossing has the target over-strand on top.
    pub signs_ok: bool,
    /// Smallest height difference at a projected crossing.
    pub min_vertical_gap: f64,
    /// Smallest distance between non-adjacent segments.
    pub clearance: f64,
    pub cap_bounces: Vec<usize>,
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn lerp3(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2])]
}

fn xy(p: [f64; 3]) -> Vec2 {
    Vec2::new(p[0], p[1])
}

/// Distance between segments `p1q1` and `p2q2` (Ericson, Real-Time Collision
/// Detection, 5.1.9).
pub fn segment_distance(p1: [f64; 3], q1: [f64; 3], p2: [f64; 3], q2: [f64; 3]) -> f64 {
    const EPS: f64 = 1e-300;
    let d1 = sub3(q1, p1);
    let d2 = sub3(q2, p2);
    let r = sub3(p1, p2);
    let a = dot3(d1, d1);
    let e = dot3(d2, d2);
    let f = dot3(d2, r);
    let (s, t);
    if a <= EPS && e <= EPS {
        return dot3(r, r).sqrt();
    }
    if a <= EPS {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot3(d1, r);
        if e <= EPS {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot3(d1, d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let c1 = lerp3(p1, q1, s);
    let c2 = lerp3(p2, q2, t);
    let d = sub3(c1, c2);
    dot3(d, d).sqrt()
}

fn unit2(v: Vec2) -> Vec2 {
    let n = v.norm();
    if n > 0.0 {
        v * (1.0 / n)
    } else {
        Vec2::new(f64::NAN, f64::NAN)
    }
}

fn slope(a: [f64; 3], b: [f64; 3]) -> f64 {
    (b[2] - a[2]) / xy(b).dist(xy(a))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn nan_max(acc: f64, v: f64) -> f64 {
    if v.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(v)
    }
}

struct Seg {
    component: usize,
    index: usize,
    count: usize,
    a: [f64; 3],
    b: [f64; 3],
    t0: f64,
    t1: f64,
}

fn segments(k: &BilliardKnot3D) -> Vec<Seg> {
    let mut out = Vec::new();
    for (c, s) in k.components.iter().enumerate() {
        let count = s.points.len();
        for i in 0..count {
            let j = (i + 1) % count;
            out.push(Seg {
                component: c,
                index: i,
                count,
                a: s.points[i],
                b: s.points[j],
                t0: s.params[i],
                t1: if j == 0 { 1.0 } else { s.params[j] },
            });
        }
    }
    out
}

fn adjacent(x: &Seg, y: &Seg) -> bool {
    x.component == y.component
        && (x.index == y.index || (x.index + 1) % x.count == y.index || (y.index + 1) % y.count == x.index)
}

/// Checks that `k` is a closed billiard trajectory of the cylinder realizing
/// its target crossings.
pub fn verify(k: &BilliardKnot3D, opts: VerifyOptions) -> VerifyReport {
    let e = &k.base;
    let mut wall: f64 = 0.0;
    let mut cap: f64 = 0.0;
    let mut closure: f64 = 0.0;
    let mut contained = true;
    for s in &k.components {
        let count = s.points.len();
        closure = nan_max(closure, dot3(sub3(s.end, s.points[0]), sub3(s.end, s.points[0])).sqrt());
        for i in 0..count {
            let p = s.points[i];
            let prev = s.points[(i + count - 1) % count];
            let next = s.points[(i + 1) % count];
            let (h_in, h_out) = (xy(sub3(p, prev)), xy(sub3(next, p)));
            let (s_in, s_out) = (slope(prev, p), slope(p, next));
            let level = e.level(xy(p));
            if !(level <= 1e-12 && p[2] >= -1e-12 && p[2] <= 1.0 + 1e-12) {
                contained = false;
            }
            match s.events[i] {
                Event::Wall => {
                    let n = e.outward_normal(xy(p));
                    let d = unit2(h_in);
                    let reflected = d - n * (2.0 * d.dot(n));
                    let law = reflected.dist(unit2(h_out));
                    let inside_height = if p[2] > 0.0 && p[2] < 1.0 { 0.0 } else { f64::INFINITY };
                    let r = law.max(level.abs()).max(rel(s_out, s_in)).max(inside_height);
                    wall = nan_max(wall, r);
                }
                Event::CapBottom | Event::CapTop => {
                    let target = if s.events[i] == Event::CapTop { 1.0 } else { 0.0 };
                    let straight = unit2(h_in).dist(unit2(h_out));
                    let flip = (s_in + s_out).abs() / s_in.abs().max(1.0);
                    let interior = if level < 0.0 { 0.0 } else { f64::INFINITY };
                    let r = (p[2] - target).abs().max(straight).max(flip).max(interior);
                    cap = nan_max(cap, r);
                }
            }
        }
    }

    let segs = segments(k);
    let mut clearance = f64::INFINITY;
    let mut found = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (x, y) = (&segs[i], &segs[j]);
            if adjacent(x, y) {
                continue;
            }
            clearance = clearance.min(segment_distance(x.a, x.b, y.a, y.b));
            let params = crate::geometry::segment_params(xy(x.a), xy(x.b), xy(y.a), xy(y.b));
            if let Some((u, v)) = params.filter(|&(u, v)| u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0) {
                let point = xy(lerp3(x.a, x.b, u));
                found.push((point, (i, lerp3(x.a, x.b, u)[2]), (j, lerp3(y.a, y.b, v)[2])));
            }
        }
    }
    let holds = |seg: &Seg, r: &StrandRef| seg.component == r.component && r.t >= seg.t0 && r.t <= seg.t1;
    let mut matched = 0;
    let mut signs_ok = true;
    let mut min_gap = f64::INFINITY;
    for target in &k.crossings {
        let hit = found.iter().find(|(q, _, _)| q.dist(target.point) < opts.crossing_match);
        let Some(&(_, (i, zi), (j, zj))) = hit else {
            signs_ok = false;
            continue;
        };
        matched += 1;
        let (over_z, under_z) = if holds(&segs[i], &target.over) && holds(&segs[j], &target.under) {
            (zi, zj)
        } else if holds(&segs[j], &target.over) && holds(&segs[i], &target.under) {
            (zj, zi)
        } else {
            signs_ok = false;
            continue;
        };
        min_gap = min_gap.min(over_z - under_z);
        if !(over_z > under_z) {
            signs_ok = false;
        }
    }
    let crossings_expected = k.crossings.len();
    let passed = wall < opts.residual
        && cap < opts.residual
        && closure < opts.closure
        && contained
        && found.len() == crossings_expected
        && matched == crossings_expected
        && signs_ok
        && clearance > opts.clearance;
    VerifyReport {
        passed,
        options: opts,
        wall_residual: wall,
        cap_residual: cap,
        closure_residual: closure,
        contained,
        crossings_expected,
        crossings_found: found.len(),
        crossings_matched: matched,
        signs_ok,
        min_vertical_gap: min_gap,
        clearance,
        cap_bounces: (0..k.components.len()).map(|c| k.cap_bounces(c)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(0.0, 1, 0.5), 0.0);
        assert!((sawtooth(0.0, 3, 0.5 + 0.3 / 2.0) - 0.3).abs() < 1e-15);
        assert_eq!(sawtooth(0.25, 1, 0.0), 0.5);
    }

    #[test]
    fn segment_distance_cases() {
        let d = segment_distance([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, -1.0, 0.3], [0.5, 1.0, 0.3]);
        assert!((d - 0.3).abs() < 1e-15);
        let d = segment_distance([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [3.0, 0.0, 0.0]);
        assert!((d - 1.0).abs() < 1e-15);
        let d = segment_distance([0.0; 3], [0.0; 3], [0.0, 2.0, 0.0], [0.0, 2.0, 0.0]);
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn distinct_times() {
        let p = HeightProblem {
            boxes: vec![BoxConstraint { t: 0.0, lo: 0.0, hi: 1.0 }],
            pairs: vec![PairConstraint { over: 0.3, under: 0.3 }],
        };
        assert!(matches!(p.check_distinct(0), Err(LiftError::Degenerate { .. })));
    }
}
