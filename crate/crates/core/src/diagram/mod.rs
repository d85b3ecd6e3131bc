//! Star-polygon knot diagrams from Poncelet polygons.
//!
//! All sides of all components are tangent to one caustic. Sorting them by
//! tangency parameter gives the ring index of each line; two sides cross iff
//! their ring offset is in `[1, p − 1]`. Crossings are read in the angular
//! order of the closed braid around the center, starting from the ray through
//! the first tangency point, and the radial level of a crossing is its braid
//! letter.

mod bracket;
mod cross_check;
mod genericity;

pub use bracket::{bracket_polynomial, braid_closure_pd, BracketResult, LaurentPoly, PlanarDiagram};
pub use cross_check::{d_function, elliptic_cross_check, f_function, CrossCheckReport};
pub use genericity::{genericity_report, GenericityReport, Relation};

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{BraidError, QuasitoricSpec, Sign};
use crate::geometry::{segment_params, Vec2};
use crate::poncelet::{PonceletError, PonceletPolygon};

pub mod tol {
    /// Minimum separation between two crossings, or a crossing and a vertex.
    pub const COINCIDENCE: f64 = 1e-10;
    /// Sweep angles closer than this are ties, broken by level.
    pub const ANGLE_TIE: f64 = 1e-12;
    /// Largest crossing count accepted by the state sum.
    pub const MAX_STATE_SUM_CROSSINGS: usize = 24;
    /// Acceptance threshold of [`super::elliptic_cross_check`].
    pub const CROSS_CHECK: f64 = 1e-7;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("degenerate diagram: {0}")]
    Degenerate(String),
    #[error("components disagree on the caustic or period")]
    MixedComponents,
    #[error("sweep word {found:?} is not a cyclic reading of the toric braid ({p}, {n})")]
    WordMismatch { p: usize, n: usize, found: Vec<usize> },
    #[error("expected {expected} crossings, diagram has {found}")]
    CrossingCount { expected: usize, found: usize },
    #[error("no signs assigned")]
    Unsigned,
    #[error("state sum limited to {max} crossings, diagram has {found}")]
    TooManyCrossings { found: usize, max: usize },
    #[error("index j = {0} is a multiple of n")]
    MultipleOfN(i64),
    #[error("elliptic cross-check failed at (h, j) = ({h}, {j}): residual {residual:e}")]
    CrossCheck { h: usize, j: usize, residual: f64 },
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Poncelet(#[from] PonceletError),
}

pub type Result<T> = std::result::Result<T, DiagramError>;

/// One traversal of a crossing by a strand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Passage {
    pub component: usize,
    /// Side index `s`; side `s` runs from vertex `s − 1` to vertex `s`.
    pub side: usize,
    /// Arc length from vertex 0, normalized by the component length.
    pub t: f64,
    /// Unit direction of travel.
    pub direction: Vec2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    /// Ring indices: the crossing is `ℓ_h ∩ ℓ_{h+j}` with `1 ≤ j ≤ p − 1`.
    pub h: usize,
    pub j: usize,
    pub point: Vec2,
    /// Passage along `ℓ_h`.
    pub a: Passage,
    /// Passage along `ℓ_{h+j}`.
    pub b: Passage,
    /// `1 +` number of strands between the center and the crossing.
    pub level: usize,
    /// Rank in the angular sweep.
    pub position: usize,
    /// Angle from the cut in the direction of travel, in `[0, 2π)`.
    pub sweep_angle: f64,
}

impl Crossing {
    /// Sign of the crossing when `a` passes over: `+1` if `a × b > 0`.
    fn sign_if_a_over(&self) -> Sign {
        if self.a.direction.cross(self.b.direction) > 0.0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    /// `(over, under)` realizing `sign`; positive means `d_over × d_under > 0`.
    pub fn over_under(&self, sign: Sign) -> (Passage, Passage) {
        if self.sign_if_a_over() == sign {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Segment {
    component: usize,
    side: usize,
    start: Vec2,
    end: Vec2,
    ring: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarDiagram {
    pub components: Vec<PonceletPolygon>,
    /// Perimeter of each component before normalization.
    pub lengths: Vec<f64>,
    /// Crossings in sweep order.
    pub crossings: Vec<Crossing>,
    /// Normalized arc length of every vertex, per component.
    pub vertex_arcs: Vec<Vec<f64>>,
    /// One sign per crossing in sweep order, once assigned.
    pub signs: Option<Vec<Sign>>,
    /// Lines in the star (sum of component side counts).
    pub lines: usize,
    /// Strand count of the closed braid (`Σ p` over components).
    pub strands: usize,
    /// `+1` if the polygons turn counter-clockwise.
    pub orientation: f64,
    /// Polar angle of the cut ray.
    pub cut: f64,
}

pub fn build_diagram(poly: &PonceletPolygon) -> Result<StarDiagram> {
    build_link_diagram(std::slice::from_ref(poly))
}

/// Diagram of a union of Poncelet polygons sharing one caustic.
pub fn build_link_diagram(polys: &[PonceletPolygon]) -> Result<StarDiagram> {
    let first = polys.first().ok_or(DiagramError::MixedComponents)?;
    if polys.iter().any(|q| q.frame != first.frame || q.n != first.n || q.p != first.p) {
        return Err(DiagramError::MixedComponents);
    }
    let lines: usize = polys.iter().map(|q| q.n).sum();
    let strands: usize = polys.iter().map(|q| q.p).sum();
    let period = 4.0 * first.frame.modulus.K();

    // Ring order of all sides by tangency parameter.
    let mut order: Vec<(f64, usize, usize)> = Vec::with_capacity(lines);
    for (c, q) in polys.iter().enumerate() {
        for s in 0..q.n {
            let psi = (q.side_parameter(s) - first.phi).rem_euclid(period);
            order.push((psi, c, s));
        }
    }
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut ring = vec![vec![0; first.n]; polys.len()];
    for (r, &(_, c, s)) in order.iter().enumerate() {
        ring[c][s] = r;
    }

    let mut lengths = Vec::with_capacity(polys.len());
    let mut vertex_arcs = Vec::with_capacity(polys.len());
    let mut segments = Vec::with_capacity(lines);
    for (c, q) in polys.iter().enumerate() {
        let n = q.n;
        let mut cum = vec![0.0; n];
        for k in 1..n {
            cum[k] = cum[k - 1] + q.vertices[k - 1].dist(q.vertices[k]);
        }
        let total = cum[n - 1] + q.vertices[n - 1].dist(q.vertices[0]);
        lengths.push(total);
        vertex_arcs.push(cum.iter().map(|v| v / total).collect::<Vec<_>>());
        for s in 0..n {
            let (start, end) = q.side(s);
            segments.push(Segment { component: c, side: s, start, end, ring: ring[c][s] });
        }
    }

    let passage = |seg: &Segment, u: f64| -> Passage {
        let arcs = &vertex_arcs[seg.component];
        let n = arcs.len();
        let from = arcs[(seg.side + n - 1) % n];
        Passage {
            component: seg.component,
            side: seg.side,
            t: from + u * seg.start.dist(seg.end) / lengths[seg.component],
            direction: (seg.end - seg.start).normalized(),
        }
    };

    let mut crossings = Vec::new();
    for (x, sa) in segments.iter().enumerate() {
        for sb in &segments[x + 1..] {
            let Some((u, v)) = segment_params(sa.start, sa.end, sb.start, sb.end) else {
                continue;
            };
            if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
                continue;
            }
            let point = sa.start + (sa.end - sa.start) * u;
            let shared = [sa.start, sa.end]
                .iter()
                .any(|&e| e.dist(sb.start) < tol::COINCIDENCE || e.dist(sb.end) < tol::COINCIDENCE);
            if shared && sa.component == sb.component {
                continue; // adjacent sides meeting at their vertex
            }
            for &e in &[sa.start, sa.end, sb.start, sb.end] {
                if point.dist(e) < tol::COINCIDENCE {
                    return Err(DiagramError::Degenerate(format!(
                        "crossing at ({}, {}) touches a vertex",
                        point.x, point.y
                    )));
                }
            }
            let fwd = (sb.ring + lines - sa.ring) % lines;
            let (first_seg, second_seg, fu, su, j) =
                if fwd <= lines - fwd { (sa, sb, u, v, fwd) } else { (sb, sa, v, u, lines - fwd) };
            crossings.push(Crossing {
                h: first_seg.ring,
                j,
                point,
                a: passage(first_seg, fu),
                b: passage(second_seg, su),
                level: 0,
                position: 0,
                sweep_angle: 0.0,
            });
        }
    }
    for (x, c) in crossings.iter().enumerate() {
        if let Some(d) = crossings[x + 1..].iter().find(|d| d.point.dist(c.point) < tol::COINCIDENCE) {
            return Err(DiagramError::Degenerate(format!(
                "crossings at ({}, {}) and ({}, {}) coincide",
                c.point.x, c.point.y, d.point.x, d.point.y
            )));
        }
    }

    // Levels: strands met along the ray from the center to the crossing.
    for c in crossings.iter_mut() {
        let below = segments
            .iter()
            .filter(|s| {
                !((s.component == c.a.component && s.side == c.a.side)
                    || (s.component == c.b.component && s.side == c.b.side))
            })
            .filter(|s| {
                segment_params(Vec2::default(), c.point, s.start, s.end)
                    .is_some_and(|(r, t)| r > 0.0 && r < 1.0 && (0.0..=1.0).contains(&t))
            })
            .count();
        c.level = below + 1;
    }

    let orientation = if polys
        .iter()
        .flat_map(|q| (0..q.n).map(move |k| q.vertices[k].cross(q.vertices[(k + 1) % q.n])))
        .sum::<f64>()
        > 0.0
    {
        1.0
    } else {
        -1.0
    };
    let mut d = StarDiagram {
        components: polys.to_vec(),
        lengths,
        crossings,
        vertex_arcs,
        signs: None,
        lines,
        strands,
        orientation,
        cut: first.tangency_points[0].angle(),
    };
    d.resweep(d.cut);
    Ok(d)
}

impl StarDiagram {
    /// Re-sorts the crossings for a cut ray at polar angle `cut`; assigned
    /// signs stay attached to their crossings.
    pub fn resweep(&mut self, cut: f64) {
        self.cut = cut;
        for c in self.crossings.iter_mut() {
            c.sweep_angle = (self.orientation * (c.point.angle() - cut)).rem_euclid(2.0 * PI);
        }
        let mut idx: Vec<usize> = (0..self.crossings.len()).collect();
        idx.sort_by(|&x, &y| {
            let (cx, cy) = (&self.crossings[x], &self.crossings[y]);
            if (cx.sweep_angle - cy.sweep_angle).abs() < tol::ANGLE_TIE {
                cx.level.cmp(&cy.level)
            } else {
                cx.sweep_angle.total_cmp(&cy.sweep_angle)
            }
        });
        let crossings: Vec<Crossing> = idx.iter().map(|&k| self.crossings[k].clone()).collect();
        self.signs = self.signs.take().map(|s| idx.iter().map(|&k| s[k]).collect());
        self.crossings = crossings;
        for (pos, c) in self.crossings.iter_mut().enumerate() {
            c.position = pos;
        }
    }

    /// Braid letters (levels) in sweep order.
    pub fn letter_word(&self) -> Vec<usize> {
        self.crossings.iter().map(|c| c.level).collect()
    }

    /// For each crossing in sweep order, the index of its letter in the
    /// toric word `(σ₁ ⋯ σ_{p−1})ⁿ`.
    pub fn toric_letter_map(&self) -> Result<Vec<usize>> {
        let (p, n) = (self.strands, self.lines);
        let word = self.letter_word();
        let expected = n * (p - 1);
        if word.len() != expected {
            return Err(DiagramError::CrossingCount { expected, found: word.len() });
        }
        let toric: Vec<usize> = (0..expected).map(|k| k % (p - 1) + 1).collect();
        match_cyclic(&word, &toric, p).ok_or(DiagramError::WordMismatch { p, n, found: word })
    }

    /// Signs the crossings from a quasitoric spec with the diagram's shape.
    pub fn assign_signs(&mut self, spec: &QuasitoricSpec) -> Result<()> {
        spec.validate()?;
        if spec.p != self.strands || spec.n != self.lines {
            return Err(DiagramError::CrossingCount { expected: self.crossings.len(), found: spec.signs.len() });
        }
        let map = self.toric_letter_map()?;
        self.signs = Some(map.iter().map(|&k| spec.signs[k]).collect());
        Ok(())
    }

    /// `(over, under)` passages of every crossing, in sweep order.
    pub fn over_under(&self) -> Result<Vec<(Passage, Passage)>> {
        let signs = self.signs.as_ref().ok_or(DiagramError::Unsigned)?;
        Ok(self.crossings.iter().zip(signs).map(|(c, &s)| c.over_under(s)).collect())
    }

    pub fn writhe(&self) -> Result<i64> {
        let signs = self.signs.as_ref().ok_or(DiagramError::Unsigned)?;
        Ok(signs.iter().map(|s| s.value()).sum())
    }
}

/// Finds a rotation of `word` equal to `target` up to commuting letters whose
/// indices differ by more than one, and the induced position map.
fn match_cyclic(word: &[usize], target: &[usize], strands: usize) -> Option<Vec<usize>> {
    let len = word.len();
    if len == 0 {
        return Some(Vec::new());
    }
    for r in 0..len {
        let rotated: Vec<usize> = (0..len).map(|k| word[(k + r) % len]).collect();
        if !trace_equivalent(&rotated, target, strands) {
            continue;
        }
        // The m-th occurrence of a letter corresponds to its m-th occurrence.
        let mut occurrences = vec![Vec::new(); strands + 1];
        for (k, &l) in target.iter().enumerate() {
            occurrences[l].push(k);
        }
        let mut seen = vec![0; strands + 1];
        let mut map = vec![0; len];
        for (k, &l) in rotated.iter().enumerate() {
            map[(k + r) % len] = occurrences[l][seen[l]];
            seen[l] += 1;
        }
        return Some(map);
    }
    None
}

/// Equality in the partially commutative monoid where `σᵢ σⱼ = σⱼ σᵢ` for
/// `|i − j| > 1`: words agree iff their projections to every pair of
/// non-commuting letters (and every single letter) agree.
fn trace_equivalent(a: &[usize], b: &[usize], strands: usize) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let project = |w: &[usize], lo: usize, hi: usize| -> Vec<usize> {
        w.iter().copied().filter(|&l| l == lo || l == hi).collect()
    };
    (1..strands).all(|i| project(a, i, i + 1) == project(b, i, i + 1) && project(a, i, i) == project(b, i, i))
}
