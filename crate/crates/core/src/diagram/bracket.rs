//! Kauffman bracket by state sum over planar diagram codes.
//!
//! A crossing `[a, b, c, d]` lists its four edges counter-clockwise starting
//! from the incoming under-edge. The A-smoothing joins `a–b` and `c–d`, the
//! B-smoothing `a–d` and `b–c`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{tol, DiagramError, Result, StarDiagram};
use crate::braid::{BraidWord, Sign};

/// Laurent polynomial in `A` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn monomial(coef: i64, exp: i64) -> Self {
        let mut p = Self::default();
        p.add_term(coef, exp);
        p
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::default();
        for &(coef, exp) in terms {
            p.add_term(coef, exp);
        }
        p
    }

    fn add_term(&mut self, coef: i64, exp: i64) {
        let e = self.terms.entry(exp).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    /// `(coefficient, exponent)` pairs by increasing exponent.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.terms.iter().map(|(&e, &c)| (c, e)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(c, e);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::default();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                r.add_term(c1 * c2, e1 + e2);
            }
        }
        r
    }

    pub fn scale(&self, coef: i64, shift: i64) -> Self {
        let mut r = Self::default();
        for (&e, &c) in &self.terms {
            r.add_term(c * coef, e + shift);
        }
        r
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let sep = if k > 0 { " " } else { "" };
            let mag = c.abs();
            let body = match (mag, e) {
                (_, 0) => mag.to_string(),
                (1, 1) => "A".to_string(),
                (1, _) => format!("A^{e}"),
                (_, 1) => format!("{mag}A"),
                _ => format!("{mag}A^{e}"),
            };
            if k > 0 {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Planar diagram code with an explicit writhe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<[usize; 4]>,
    /// Edge labels are `0..edges`.
    pub edges: usize,
    pub writhe: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketResult {
    pub bracket: LaurentPoly,
    /// `(−A³)^{−w} ⟨D⟩`.
    pub normalized: LaurentPoly,
    pub writhe: i64,
    pub crossings: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns whether two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

pub fn bracket_polynomial(pd: &PlanarDiagram) -> Result<BracketResult> {
    let c = pd.crossings.len();
    if c > tol::MAX_STATE_SUM_CROSSINGS {
        return Err(DiagramError::TooManyCrossings { found: c, max: tol::MAX_STATE_SUM_CROSSINGS });
    }
    // counts[a][loops]: states with `a` A-smoothings and `loops` circles.
    let mut counts = vec![vec![0i64; pd.edges + 1]; c + 1];
    for state in 0u64..(1u64 << c) {
        let mut uf = UnionFind::new(pd.edges);
        let mut loops = pd.edges;
        for (k, x) in pd.crossings.iter().enumerate() {
            let pairs = if state >> k & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
            for (u, v) in pairs {
                if uf.union(u, v) {
                    loops -= 1;
                }
            }
        }
        let a = c - state.count_ones() as usize;
        counts[a][loops] += 1;
    }
    let delta = LaurentPoly::from_terms(&[(-1, 2), (-1, -2)]);
    let mut powers = vec![LaurentPoly::one()];
    for _ in 1..=pd.edges {
        let next = powers.last().unwrap().mul(&delta);
        powers.push(next);
    }
    let mut bracket = LaurentPoly::default();
    for (a, row) in counts.iter().enumerate() {
        for (loops, &n) in row.iter().enumerate() {
            if n != 0 {
                let shift = a as i64 - (c - a) as i64;
                bracket = bracket.add(&powers[loops - 1].scale(n, shift));
            }
        }
    }
    let w = pd.writhe;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = bracket.scale(sign, -3 * w);
    Ok(BracketResult { bracket, normalized, writhe: w, crossings: c })
}

/// Code of the closure of `w`, strands running upward; `σᵢ` is a positive
/// crossing with the strand coming from position `i` on top.
pub fn braid_closure_pd(w: &BraidWord) -> PlanarDiagram {
    let mut next = w.strands;
    let bottom: Vec<usize> = (0..w.strands).collect();
    let mut current = bottom.clone();
    let mut crossings = Vec::with_capacity(w.len());
    for l in &w.letters {
        let (i, k) = (l.index - 1, l.index);
        let (left, right) = (next, next + 1);
        next += 2;
        crossings.push(match l.sign {
            Sign::Pos => [current[k], right, left, current[i]],
            Sign::Neg => [current[i], current[k], right, left],
        });
        current[i] = left;
        current[k] = right;
    }
    // Close up: the top label at each position is the bottom label there.
    let mut rename: Vec<usize> = (0..next).collect();
    for (pos, &top) in current.iter().enumerate() {
        rename[top] = bottom[pos];
    }
    let mut compact = vec![usize::MAX; next];
    let mut edges = 0;
    for label in 0..next {
        let r = rename[label];
        if r == label {
            compact[label] = edges;
            edges += 1;
        }
    }
    let crossings = crossings.iter().map(|x| x.map(|e| compact[rename[e]])).collect();
    PlanarDiagram { crossings, edges, writhe: w.exponent_sum() }
}

impl StarDiagram {
    /// Planar diagram code of the signed diagram, with edges cut at every
    /// passage of every component.
    pub fn planar_diagram(&self) -> Result<PlanarDiagram> {
        let ou = self.over_under()?;
        // Passages per component in order of arc length.
        let mut along: Vec<Vec<(f64, usize, bool)>> = vec![Vec::new(); self.components.len()];
        for (k, (over, under)) in ou.iter().enumerate() {
            along[over.component].push((over.t, k, true));
            along[under.component].push((under.t, k, false));
        }
        let mut base = 0;
        // (incoming, outgoing) edge at each (crossing, is_over).
        let mut ends = vec![[(0usize, 0usize); 2]; ou.len()];
        for list in along.iter_mut() {
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            let m = list.len();
            if m == 0 {
                base += 1;
                continue;
            }
            for (i, &(_, k, is_over)) in list.iter().enumerate() {
                let incoming = base + (i + m - 1) % m;
                let outgoing = base + i;
                ends[k][is_over as usize] = (incoming, outgoing);
            }
            base += m;
        }
        let crossings = ou
            .iter()
            .zip(&ends)
            .map(|((over, under), e)| {
                let (u_in, u_out) = e[0];
                let (o_in, o_out) = e[1];
                if (under.direction * -1.0).cross(over.direction) > 0.0 {
                    [u_in, o_out, u_out, o_in]
                } else {
                    [u_in, o_in, u_out, o_out]
                }
            })
            .collect();
        Ok(PlanarDiagram { crossings, edges: base, writhe: self.writhe()? })
    }

    pub fn bracket(&self) -> Result<BracketResult> {
        bracket_polynomial(&self.planar_diagram()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms(&[(-1, -16), (1, -12), (1, -4)]);
        assert_eq!(p.to_string(), "-A^-16 + A^-12 + A^-4");
        assert_eq!(LaurentPoly::default().to_string(), "0");
        assert_eq!(LaurentPoly::from_terms(&[(2, 1), (-3, 0)]).to_string(), "-3 + 2A");
    }

    #[test]
    fn unknot_and_unlink() {
        let w = BraidWord::new(2, vec![]).unwrap();
        let r = bracket_polynomial(&braid_closure_pd(&w)).unwrap();
        assert_eq!(r.bracket, LaurentPoly::from_terms(&[(-1, 2), (-1, -2)]));
        let w: BraidWord = "s1".parse().unwrap();
        let r = bracket_polynomial(&braid_closure_pd(&w)).unwrap();
        assert_eq!(r.normalized, LaurentPoly::one());
    }
}
