//! Request → billiard knot: pad the braid, solve the caustic, sample a
//! generic start, lift and verify.

use std::path::PathBuf;

use log::{debug, info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{pad, quasitoric, BraidError, QuasitoricSpec, Sign};
use crate::diagram::{
    bracket_polynomial, braid_closure_pd, build_link_diagram, genericity_report, Crossing, DiagramError,
    GenericityReport, LaurentPoly, StarDiagram,
};
use crate::geometry::Ellipse;
use crate::lift::{assign_heights, build_knot3d, verify, BilliardKnot3D, LiftError, VerifyOptions, VerifyReport};
use crate::poncelet::{link_polygons, polygon, solve_caustic, JacobiFrame, PonceletError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseSpec {
    pub a: f64,
    pub b: f64,
}

impl Default for EllipseSpec {
    fn default() -> Self {
        Self { a: 2.0, b: 1.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub obj: Option<PathBuf>,
}

fn default_delta() -> f64 {
    0.05
}
fn default_m_max() -> u32 {
    500
}
fn default_retries() -> usize {
    32
}
fn default_qmax() -> i64 {
    20
}
fn default_eps() -> f64 {
    1e-9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRequest {
    pub p: usize,
    pub n: usize,
    /// One sign per letter of `(σ₁ ⋯ σ_{p−1})ⁿ`, as `1` or `-1`.
    pub signs: Vec<Sign>,
    #[serde(default)]
    pub ellipse: EllipseSpec,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_m_max")]
    pub m_max: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_retries")]
    pub retries: usize,
    #[serde(default = "default_qmax")]
    pub qmax: i64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub tolerances: VerifyOptions,
    #[serde(default)]
    pub output: OutputPaths,
}

impl KnotRequest {
    pub fn new(p: usize, n: usize, signs: Vec<Sign>) -> Self {
        Self {
            p,
            n,
            signs,
            ellipse: EllipseSpec::default(),
            delta: default_delta(),
            m_max: default_m_max(),
            seed: 0,
            retries: default_retries(),
            qmax: default_qmax(),
            eps: default_eps(),
            tolerances: VerifyOptions::default(),
            output: OutputPaths::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameSummary {
    /// Sides and turns of each component polygon.
    pub n: usize,
    pub p: usize,
    pub lambda: f64,
    pub k: f64,
    pub quarter_period: f64,
    pub beta: f64,
    pub theta: f64,
}

impl FrameSummary {
    pub fn new(f: &JacobiFrame, n: usize, p: usize) -> Self {
        Self { n, p, lambda: f.lambda, k: f.modulus.k(), quarter_period: f.modulus.K(), beta: f.beta, theta: f.theta }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramSummary {
    pub crossings: Vec<Crossing>,
    pub signs: Vec<Sign>,
    pub vertex_arcs: Vec<Vec<f64>>,
    pub lengths: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantCheck {
    /// `(−A³)^{−w}⟨D⟩` of the signed star diagram.
    pub diagram: LaurentPoly,
    /// The same for the closure of the requested braid.
    pub braid: LaurentPoly,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotOutput {
    pub request: KnotRequest,
    pub braid: String,
    pub padded: QuasitoricSpec,
    pub components: usize,
    pub frame: FrameSummary,
    pub phi: f64,
    pub attempts: usize,
    pub genericity: GenericityReport,
    pub diagram: DiagramSummary,
    pub knot: BilliardKnot3D,
    pub verify: VerifyReport,
    pub invariant: Option<InvariantCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineOptions {
    /// Allow diagrams too large for the state sum, skipping the invariant check.
    pub skip_invariant: bool,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid request: {0}")]
    Invalid(String),
    #[error(transparent)]
    NoRoot(PonceletError),
    #[error(transparent)]
    Infeasible(LiftError),
    #[error("no generic start parameter in {0} attempts")]
    GenericityExhausted(usize),
    #[error("verification failed")]
    VerifyFailed(Box<KnotOutput>),
    #[error("bracket invariant of the diagram differs from the braid closure's")]
    InvariantMismatch(Box<KnotOutput>),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid(_) => 2,
            Self::NoRoot(_) => 3,
            Self::VerifyFailed(_) => 4,
            Self::Infeasible(_) => 5,
            Self::GenericityExhausted(_) => 6,
            Self::InvariantMismatch(_) => 7,
        }
    }

    /// The pipeline output, when it got as far as building a knot.
    pub fn output(&self) -> Option<&KnotOutput> {
        match self {
            Self::VerifyFailed(o) | Self::InvariantMismatch(o) => Some(o),
            _ => None,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> PipelineError {
    PipelineError::Invalid(e.to_string())
}

impl From<BraidError> for PipelineError {
    fn from(e: BraidError) -> Self {
        invalid(e)
    }
}

impl From<PonceletError> for PipelineError {
    fn from(e: PonceletError) -> Self {
        match e {
            PonceletError::NoRoot { .. } | PonceletError::NotMonotone(_) => Self::NoRoot(e),
            e => invalid(e),
        }
    }
}

fn sample_diagram(
    frame: &JacobiFrame,
    spec: &QuasitoricSpec,
    (n, p, mu): (usize, usize, usize),
    phi: f64,
) -> std::result::Result<StarDiagram, DiagramError> {
    let polys = if mu == 1 { vec![polygon(frame, n, p, phi)?] } else { link_polygons(frame, n, p, mu, phi)? };
    let mut d = build_link_diagram(&polys)?;
    d.assign_signs(spec)?;
    Ok(d)
}

pub fn run_pipeline(req: &KnotRequest, opts: PipelineOptions) -> Result<KnotOutput, PipelineError> {
    let input = QuasitoricSpec::new(req.p, req.n, req.signs.clone())?;
    let word = quasitoric(&input)?;
    let e = Ellipse::new(req.ellipse.a, req.ellipse.b).map_err(invalid)?;
    if e.is_circle() {
        return Err(invalid("the base ellipse is a circle"));
    }
    if !(req.delta > 0.0 && req.delta < 0.25) {
        return Err(invalid(LiftError::BadDelta(req.delta)));
    }
    let spec = pad(&input, 0)?;
    if spec.n != input.n {
        info!("padded {} to {} periods", word, spec.n);
    }
    let mu = spec.components();
    let (n_c, p_c) = (spec.n / mu, spec.p / mu);
    info!("{mu} component(s), each an ({n_c}, {p_c}) polygon");
    let frame = solve_caustic(&e, n_c, p_c, crate::poncelet::tol::ROTATION)?;
    debug!("caustic lambda = {}, k = {}", frame.lambda, frame.modulus.k());

    let period = 4.0 * frame.modulus.K();
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let mut chosen = None;
    for attempt in 1..=req.retries {
        let phi = rng.gen_range(0.0..period);
        let d = match sample_diagram(&frame, &spec, (n_c, p_c, mu), phi) {
            Ok(d) => d,
            Err(err @ (DiagramError::Degenerate(..) | DiagramError::Poncelet(_))) => {
                debug!("attempt {attempt}: phi = {phi}: {err}");
                continue;
            }
            Err(err) => return Err(invalid(err)),
        };
        let g = genericity_report(&d, req.qmax, req.eps, 2);
        if g.passed {
            info!("attempt {attempt}: phi = {phi} is generic");
            chosen = Some((phi, attempt, d, g));
            break;
        }
        debug!("attempt {attempt}: phi = {phi}: relation {:?}", g.relation);
    }
    let (phi, attempts, d, genericity) = chosen.ok_or(PipelineError::GenericityExhausted(req.retries))?;
    if !genericity.eccentricity_hypothesis {
        info!("caustic axis ratio violates 2c^2 > 1; relying on the numeric check");
    }

    let signs = d.signs.clone().unwrap_or_default();
    let invariant = match d.bracket() {
        Ok(b) => {
            let braid = bracket_polynomial(&braid_closure_pd(&word)).map_err(invalid)?.normalized;
            Some(InvariantCheck { matches: b.normalized == braid, diagram: b.normalized, braid })
        }
        Err(DiagramError::TooManyCrossings { found, max }) if opts.skip_invariant => {
            warn!("{found} crossings exceed the state-sum bound {max}; invariant not checked");
            None
        }
        Err(err) => return Err(invalid(err)),
    };

    let plans = assign_heights(&d, &signs, req.delta, req.m_max).map_err(|err| match err {
        LiftError::Infeasible { .. } => PipelineError::Infeasible(err),
        err => invalid(err),
    })?;
    for p in &plans {
        info!("component {}: m = {}, phi_z = {}, margin = {}", p.component_index, p.m, p.phi_z, p.margin);
    }
    let knot = build_knot3d(&d, &plans).map_err(PipelineError::Infeasible)?;
    let report = verify(&knot, req.tolerances);

    let output = KnotOutput {
        request: req.clone(),
        braid: word.to_string(),
        padded: spec,
        components: mu,
        frame: FrameSummary::new(&frame, n_c, p_c),
        phi,
        attempts,
        genericity,
        diagram: DiagramSummary {
            crossings: d.crossings.clone(),
            signs,
            vertex_arcs: d.vertex_arcs.clone(),
            lengths: d.lengths.clone(),
        },
        knot,
        verify: report,
        invariant,
    };
    if !output.verify.passed {
        return Err(PipelineError::VerifyFailed(Box::new(output)));
    }
    if output.invariant.as_ref().is_some_and(|i| !i.matches) {
        return Err(PipelineError::InvariantMismatch(Box::new(output)));
    }
    Ok(output)
}
