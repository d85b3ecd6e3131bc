//! Finite search for integer relations among arc lengths.
//!
//! Only a heuristic: a relation `q₀ + Σ qᵢ tᵢ = 0` is searched with `|qᵢ| ≤
//! qmax` and at most `max_support` nonzero `qᵢ` (`i ≥ 1`). Relations with
//! large support always exist at any fixed precision, so the support is
//! bounded.

use serde::Serialize;

use super::StarDiagram;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relation {
    pub component: usize,
    pub constant: i64,
    /// `(index into the component's values, coefficient)`.
    pub terms: Vec<(usize, i64)>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericityReport {
    pub passed: bool,
    pub qmax: i64,
    pub eps: f64,
    pub max_support: usize,
    /// Nonzero arc lengths of vertices and crossing passages, per component.
    pub values: Vec<Vec<f64>>,
    pub relation: Option<Relation>,
    /// Crossings whose second passage equals `1 − t_a` identically:
    /// `(crossing index, |t_a + t_b − 1|)`.
    pub forced: Vec<(usize, f64)>,
    /// `2c² > 1` for the caustic axis ratio `c < 1`.
    pub eccentricity_hypothesis: bool,
}

fn arc_values(d: &StarDiagram, eps: f64) -> (Vec<Vec<f64>>, Vec<(usize, f64)>) {
    let mut values: Vec<Vec<f64>> =
        d.vertex_arcs.iter().map(|arcs| arcs.iter().copied().filter(|&t| t != 0.0).collect()).collect();
    let mut forced = Vec::new();
    for (k, c) in d.crossings.iter().enumerate() {
        values[c.a.component].push(c.a.t);
        if c.a.component == c.b.component {
            let n = d.components[c.a.component].n;
            let residual = (c.a.t + c.b.t - 1.0).abs();
            if (c.a.side + c.b.side) % n == 1 % n && residual < eps {
                forced.push((k, residual));
                continue;
            }
        }
        values[c.b.component].push(c.b.t);
    }
    (values, forced)
}

/// `(q₀, [(index, q)], residual)` of a small relation `q₀ + Σ q·v = 0`.
type Found = (i64, Vec<(usize, i64)>, f64);

fn search(values: &[f64], qmax: i64, eps: f64, max_support: usize) -> Option<Found> {
    let fit = |s: f64| -> Option<(i64, f64)> {
        let q0 = -s.round();
        let r = (s + q0).abs();
        (q0.abs() <= qmax as f64 && r < eps).then_some((q0 as i64, r))
    };
    if max_support >= 1 {
        for (i, &t) in values.iter().enumerate() {
            for q in 1..=qmax {
                if let Some((q0, r)) = fit(q as f64 * t) {
                    return Some((q0, vec![(i, q)], r));
                }
            }
        }
    }
    if max_support >= 2 {
        for (i, &ti) in values.iter().enumerate() {
            for (k, &tk) in values.iter().enumerate().skip(i + 1) {
                for qi in 1..=qmax {
                    for qk in -qmax..=qmax {
                        if qk == 0 {
                            continue;
                        }
                        if let Some((q0, r)) = fit(qi as f64 * ti + qk as f64 * tk) {
                            return Some((q0, vec![(i, qi), (k, qk)], r));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Searches every component for an integer relation between 1 and its arc
/// lengths.
pub fn genericity_report(d: &StarDiagram, qmax: i64, eps: f64, max_support: usize) -> GenericityReport {
    let (values, forced) = arc_values(d, eps);
    let relation = values.iter().enumerate().find_map(|(component, v)| {
        search(v, qmax, eps, max_support).map(|(constant, terms, residual)| Relation {
            component,
            constant,
            terms,
            residual,
        })
    });
    let (c1, c2) = d.components[0].frame.caustic_axes;
    let ratio = c2 / c1;
    GenericityReport {
        passed: relation.is_none(),
        qmax,
        eps,
        max_support,
        values,
        relation,
        forced,
        eccentricity_hypothesis: 2.0 * ratio * ratio > 1.0,
    }
}
