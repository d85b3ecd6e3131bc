//! Toric and quasitoric braid words.
//!
//! The toric braid `τ_{p,n} = (σ₁ σ₂ ⋯ σ_{p−1})ⁿ` on `p` strands; a
//! quasitoric braid keeps its letters and changes some crossing signs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poncelet::gcd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("crossing signs must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("expected {expected} signs for p = {p}, n = {n}, got {got}")]
    LengthMismatch { p: usize, n: usize, expected: usize, got: usize },
    #[error("need p >= 2 and n >= 1, got p = {p}, n = {n}")]
    BadShape { p: usize, n: usize },
    #[error("cannot parse braid token {0:?}")]
    Parse(String),
    #[error("no padding certified for p = {p} (only 2-strand padding preserves the closure provably)")]
    Uncertified { p: usize },
    #[error("specs with p = {0} and p = {1} cannot be concatenated")]
    Incompatible(usize, usize),
}

pub type Result<T> = std::result::Result<T, BraidError>;

/// Crossing sign of a generator, `+1` for `σᵢ` and `-1` for `σᵢ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = BraidError;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            _ => Err(BraidError::BadSign(v)),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    /// Generator index, 1-based.
    pub index: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(BraidError::IndexOutOfRange { index: l.index, strands });
        }
        Ok(Self { strands, letters })
    }

    /// Parses `s1 s1 s1^-1`; the strand count defaults to the largest index + 1.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| {
                let bad = || BraidError::Parse(tok.to_string());
                let body = tok.strip_prefix(['s', 'σ']).ok_or_else(bad)?;
                let (idx, sign) = match body.split_once('^') {
                    Some((i, "-1")) => (i, Sign::Neg),
                    Some((i, "1" | "+1")) => (i, Sign::Pos),
                    Some(_) => return Err(bad()),
                    None => (body, Sign::Pos),
                };
                let index = idx.parse().map_err(|_| bad())?;
                Ok(Letter { index, sign })
            })
            .collect::<Result<Vec<_>>>()?;
        let strands = strands.unwrap_or_else(|| letters.iter().map(|l| l.index + 1).max().unwrap_or(2));
        Self::new(strands, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// Strand permutation: position `i` at the bottom ends at `perm[i]` at the top.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        // at[pos] = strand occupying pos; invert to strand -> final position.
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l.sign {
                Sign::Pos => format!("s{}", l.index),
                Sign::Neg => format!("s{}^-1", l.index),
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

/// Number of cycles of the permutation of `w`, i.e. components of its closure.
pub fn closure_components(w: &BraidWord) -> usize {
    let perm = w.permutation();
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
    }
    cycles
}

pub fn toric(p: usize, n: usize) -> Result<BraidWord> {
    if p < 2 || n < 1 {
        return Err(BraidError::BadShape { p, n });
    }
    let letters = (0..n).flat_map(|_| (1..p).map(|index| Letter { index, sign: Sign::Pos })).collect();
    BraidWord::new(p, letters)
}

/// Toric shape `(p, n)` with one sign per crossing, in word order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasitoricSpec {
    pub p: usize,
    pub n: usize,
    pub signs: Vec<Sign>,
}

impl QuasitoricSpec {
    pub fn new(p: usize, n: usize, signs: Vec<Sign>) -> Result<Self> {
        let spec = Self { p, n, signs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn toric(p: usize, n: usize) -> Result<Self> {
        Self::new(p, n, vec![Sign::Pos; n * p.saturating_sub(1)])
    }

    pub fn validate(&self) -> Result<()> {
        let (p, n) = (self.p, self.n);
        if p < 2 || n < 1 {
            return Err(BraidError::BadShape { p, n });
        }
        let expected = n * (p - 1);
        if self.signs.len() != expected {
            return Err(BraidError::LengthMismatch { p, n, expected, got: self.signs.len() });
        }
        Ok(())
    }

    /// Number of link components, `gcd(n, p)`.
    pub fn components(&self) -> usize {
        gcd(self.n, self.p)
    }

    /// Every component is an `(n/μ, p/μ)` Poncelet polygon with `n/μ ≥ 2p/μ + 1`.
    pub fn is_admissible(&self) -> bool {
        let mu = self.components();
        self.n / mu > 2 * (self.p / mu)
    }

    /// Concatenation of two quasitoric braids with the same strand count.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(BraidError::Incompatible(self.p, other.p));
        }
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Self::new(self.p, self.n + other.n, signs)
    }
}

pub fn quasitoric(spec: &QuasitoricSpec) -> Result<BraidWord> {
    spec.validate()?;
    let mut w = toric(spec.p, spec.n)?;
    for (l, &s) in w.letters.iter_mut().zip(&spec.signs) {
        l.sign = s;
    }
    Ok(w)
}

/// Lengthens `spec` to an admissible one with `n′ ≥ n_min` and the same closure.
///
/// Appends cancelling pairs `σ₁ σ₁⁻¹`, which keeps the word quasitoric and,
/// on two strands, the exponent sum (a complete invariant there). Longer
/// specs on more strands are returned unchanged when already admissible and
/// rejected otherwise.
pub fn pad(spec: &QuasitoricSpec, n_min: usize) -> Result<QuasitoricSpec> {
    spec.validate()?;
    if spec.n >= n_min && spec.is_admissible() {
        return Ok(spec.clone());
    }
    if spec.p != 2 {
        return Err(BraidError::Uncertified { p: spec.p });
    }
    let mut out = spec.clone();
    while out.n < n_min || !out.is_admissible() {
        out.signs.extend([Sign::Pos, Sign::Neg]);
        out.n += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let w: BraidWord = "s1 s2^-1 s1".parse().unwrap();
        assert_eq!(w.strands, 3);
        assert_eq!(w.to_string(), "s1 s2^-1 s1");
        assert!(BraidWord::parse("s0", None).is_err());
        assert!(BraidWord::parse("x1", None).is_err());
        assert!(BraidWord::parse("s1^2", None).is_err());
        assert!(BraidWord::parse("s3", Some(3)).is_err());
        assert_eq!(BraidWord::parse("", Some(3)).unwrap().len(), 0);
    }

    #[test]
    fn signs_serialize_as_integers() {
        let spec = QuasitoricSpec::new(2, 3, vec![Sign::Pos, Sign::Neg, Sign::Pos]).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"p":2,"n":3,"signs":[1,-1,1]}"#);
        assert_eq!(serde_json::from_str::<QuasitoricSpec>(&json).unwrap(), spec);
        assert!(serde_json::from_str::<QuasitoricSpec>(r#"{"p":2,"n":1,"signs":[2]}"#).is_err());
    }

    #[test]
    fn concatenation_stays_quasitoric() {
        let a = QuasitoricSpec::new(3, 1, vec![Sign::Pos, Sign::Neg]).unwrap();
        let b = QuasitoricSpec::new(3, 2, vec![Sign::Neg; 4]).unwrap();
        let c = a.concat(&b).unwrap();
        let mut joined = quasitoric(&a).unwrap().letters;
        joined.extend(quasitoric(&b).unwrap().letters);
        assert_eq!(quasitoric(&c).unwrap().letters, joined);
        let d = QuasitoricSpec::toric(2, 3).unwrap();
        assert!(a.concat(&d).is_err());
    }
}
