//! Batch front end: load a quiver, run one computation, render a report.
//!
//! Every command returns an [`Outcome`] carrying a JSON value, a text
//! rendering and a pass flag. Exit codes: 0 pass, 1 verification failure,
//! 2 input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use klr_core::corpus::{self, FAULTY_A2};
use klr_core::cyclotomic::{cyclotomic_dims, CycloReport, DominantWeight, MAX_DEGREE};
use klr_core::fixed_point::{Backend, CrossCheckReport, FixedPointModel, Mismatch};
use klr_core::graded::{GradedDim, SeriesReport, DEFAULT_WINDOW_WIDTH};
use klr_core::polyrep::{PolVector, PolynomialRep};
use klr_core::presentation::{all_generators, Presentation, RelationLabel};
use klr_core::roots::{parse_sequence, ColorSequence};
use klr_core::{CoreError, Quiver, RootVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Hard height limit for the exact backend.
pub const MAX_EXACT_HEIGHT: usize = 5;
/// Hard height limit for the randomized backend.
pub const MAX_RANDOMIZED_HEIGHT: usize = 8;
/// Number of independent seeds used by rank computations.
pub const RANK_SEEDS: u64 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BackendKind {
    Exact,
    Randomized,
}

/// Options shared by the computing commands.
#[derive(Debug, Clone)]
pub struct Settings {
    pub backend: BackendKind,
    pub seed: u64,
    pub points: usize,
    pub trials: usize,
    pub max_degree: Option<i64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            backend: BackendKind::Exact,
            seed: 1,
            points: 3,
            trials: 0,
            max_degree: None,
        }
    }
}

impl Settings {
    fn backend(&self) -> Backend {
        match self.backend {
            BackendKind::Exact => Backend::Exact,
            BackendKind::Randomized => Backend::Randomized {
                points: self.points,
                seed: self.seed,
            },
        }
    }

    fn seeds(&self) -> Vec<u64> {
        (0..RANK_SEEDS).map(|k| self.seed.wrapping_add(k)).collect()
    }
}

/// The result of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, passed: bool) -> Self {
        Outcome {
            json: serde_json::to_value(report).expect("reports serialize"),
            text,
            passed,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("value serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Read a quiver document. A missing path whose file stem names a bundled
/// fixture (`a1`, `a2`, `jordan`, `two_loop`, `loop_edge`,
/// `a2_q_sign_flip`) loads the fixture instead.
pub fn load_quiver(path: &Path) -> Result<Quiver> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(Quiver::parse(&text)?),
        Err(e) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            let bundled = if stem == "a2_q_sign_flip" {
                Some(FAULTY_A2)
            } else {
                corpus::CORPUS.iter().find(|(n, _)| *n == stem).map(|(_, t)| *t)
            };
            match (bundled, path.exists()) {
                (Some(text), false) => Ok(Quiver::parse(text)?),
                _ => Err(CliError::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                }),
            }
        }
    }
}

/// A color sequence given as `i,j,i` or as a JSON array of names.
pub fn parse_nu(q: &Quiver, text: &str) -> Result<ColorSequence> {
    let text = text.trim();
    let names: Vec<String> = if text.starts_with('[') {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad sequence `{text}`: {e}")))?
    } else {
        text.split(',').map(|s| s.trim().to_string()).collect()
    };
    Ok(parse_sequence(q, &names)?)
}

fn check_height(alpha: &RootVector, backend: BackendKind) -> Result<()> {
    let cap = match backend {
        BackendKind::Exact => MAX_EXACT_HEIGHT,
        BackendKind::Randomized => MAX_RANDOMIZED_HEIGHT,
    };
    if alpha.height() == 0 {
        return Err(CliError::Usage("alpha must have positive height".into()));
    }
    if alpha.height() > cap {
        return Err(CoreError::HeightCap {
            height: alpha.height(),
            cap,
        }
        .into());
    }
    Ok(())
}

fn show_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn cmd_datum(q: &Quiver) -> Outcome {
    let d = q.derive_datum();
    let mut text = String::new();
    writeln!(text, "vertices: {}", d.vertices.join(", ")).unwrap();
    writeln!(text, "matrix: {}", show_matrix(&d.matrix)).unwrap();
    writeln!(text, "loops: {:?}", d.loop_counts).unwrap();
    writeln!(text, "real: {}", d.real_vertices.join(", ")).unwrap();
    writeln!(text, "imaginary: {}", d.imaginary_vertices.join(", ")).unwrap();
    Outcome::new(&d, text, true)
}

/// One relation instance and how it fared.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    #[serde(flatten)]
    pub label: RelationLabel,
    pub status: &'static str,
    pub backend: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Mismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub relations: usize,
    pub verified: usize,
    pub failed: usize,
    pub cross_check: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub alpha: BTreeMap<String, usize>,
    pub backend: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Largest Schwartz-Zippel failure probability over all instances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_bound: Option<f64>,
    pub max_degree: i64,
    pub trials: usize,
    pub status: &'static str,
    pub summary: VerifySummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<RelationReport>,
    pub cross_check: CrossCheckReport,
    pub relations: Vec<RelationReport>,
}

/// Default degree bound for cross-check inputs.
pub const DEFAULT_SAMPLE_DEGREE: i64 = 4;

/// Every relation instance as a fixed-point matrix identity, then the
/// commutativity of localization with the polynomial action.
pub fn cmd_verify(q: &Quiver, alpha: &RootVector, settings: &Settings) -> Result<Outcome> {
    check_height(alpha, settings.backend)?;
    let backend = settings.backend();
    let model = FixedPointModel::new(q, alpha)?;
    let pres = Presentation::new(q);
    let catalogue = pres.relation_catalogue(alpha, MAX_RANDOMIZED_HEIGHT)?;
    let relations = catalogue
        .par_iter()
        .map(|inst| {
            let cert = model.elements_equal(&inst.lhs, &inst.rhs, backend)?;
            Ok(RelationReport {
                label: inst.label(q),
                status: if cert.equal { "verified" } else { "failed" },
                backend: backend.name(),
                failure_bound: cert.failure_bound,
                counterexample: cert.mismatch,
            })
        })
        .collect::<klr_core::Result<Vec<_>>>()?;

    let max_degree = settings.max_degree.unwrap_or(DEFAULT_SAMPLE_DEGREE);
    if max_degree < 0 {
        return Err(CliError::Usage("--max-degree must be nonnegative".into()));
    }
    let rep = PolynomialRep::new(q, alpha);
    let mut samples = Vec::new();
    let seqs = alpha.sequences(MAX_RANDOMIZED_HEIGHT)?;
    for nu in &seqs {
        for mono in rep.x_monomials(max_degree as u32) {
            samples.push(PolVector::single(nu.clone(), mono));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    for _ in 0..settings.trials {
        let mut v = PolVector::zero(rep.vars());
        for nu in &seqs {
            v = v.add(&PolVector::single(nu.clone(), rep.random_poly(&mut rng, 4, 4)));
        }
        samples.push(v);
    }
    let generators = all_generators(alpha, MAX_RANDOMIZED_HEIGHT)?;
    let cross = model.cross_check_theorem(&rep, &generators, &samples, backend)?;

    let failed = relations.iter().filter(|r| r.status != "verified").count();
    let passed = failed == 0 && cross.passed();
    let failure_bound = relations
        .iter()
        .filter_map(|r| r.failure_bound)
        .fold(None, |acc: Option<f64>, b| Some(acc.map_or(b, |a| a.max(b))));
    let report = VerifyReport {
        alpha: alpha.to_map(q),
        backend: backend.name(),
        seed: settings.seed,
        points: matches!(backend, Backend::Randomized { .. }).then_some(settings.points),
        failure_bound,
        max_degree,
        trials: settings.trials,
        status: if passed { "pass" } else { "fail" },
        summary: VerifySummary {
            relations: relations.len(),
            verified: relations.len() - failed,
            failed,
            cross_check: cross.status,
        },
        first_failure: relations.iter().find(|r| r.status != "verified").cloned(),
        cross_check: cross,
        relations,
    };
    let text = verify_text(&report);
    Ok(Outcome::new(&report, text, passed))
}

fn verify_text(r: &VerifyReport) -> String {
    let mut t = String::new();
    writeln!(t, "alpha: {:?}", r.alpha).unwrap();
    write!(t, "backend: {} (seed {}", r.backend, r.seed).unwrap();
    if let Some(p) = r.points {
        write!(t, ", {p} points").unwrap();
    }
    writeln!(t, ")").unwrap();
    writeln!(
        t,
        "relations: {} verified, {} failed of {}",
        r.summary.verified, r.summary.failed, r.summary.relations
    )
    .unwrap();
    if let Some(b) = r.failure_bound {
        writeln!(t, "false-positive probability per instance at most {b:.3e}").unwrap();
    }
    writeln!(
        t,
        "cross-check: {} ({} generators x {} inputs)",
        r.cross_check.status, r.cross_check.generators, r.cross_check.samples
    )
    .unwrap();
    if let Some(c) = &r.cross_check.counterexample {
        writeln!(t, "  counterexample: {c}").unwrap();
    }
    if let Some(f) = &r.first_failure {
        writeln!(t, "first failure: {}", serde_json::to_string(f).unwrap()).unwrap();
    }
    writeln!(t, "status: {}", r.status).unwrap();
    t
}

#[derive(Debug, Clone, Serialize)]
pub struct GdimReport {
    pub alpha: BTreeMap<String, usize>,
    pub width: i64,
    pub seeds: Vec<u64>,
    pub status: &'static str,
    pub blocks: Vec<SeriesReport>,
}

/// Compare the Poincare series with the rank oracle, for one pair of
/// colors or for all pairs.
pub fn cmd_gdim(
    q: &Quiver,
    alpha: &RootVector,
    nu_out: Option<ColorSequence>,
    nu_in: Option<ColorSequence>,
    settings: &Settings,
) -> Result<Outcome> {
    check_height(alpha, BackendKind::Randomized)?;
    let width = settings.max_degree.unwrap_or(DEFAULT_WINDOW_WIDTH);
    if width < 0 {
        return Err(CliError::Usage("--max-degree must be nonnegative".into()));
    }
    let model = FixedPointModel::new(q, alpha)?;
    let g = GradedDim::new(&model);
    let seqs = alpha.sequences(MAX_RANDOMIZED_HEIGHT)?;
    let outs = match nu_out {
        Some(nu) => vec![nu],
        None => seqs.clone(),
    };
    let ins = match nu_in {
        Some(nu) => vec![nu],
        None => seqs,
    };
    let seeds = settings.seeds();
    let mut blocks = Vec::new();
    for a in &outs {
        for b in &ins {
            blocks.push(g.verify_series(a, b, width, &seeds)?);
        }
    }
    let passed = blocks.iter().all(|b| b.matches);
    let mut text = String::new();
    writeln!(text, "alpha: {:?}  window: {width}  seeds: {seeds:?}", alpha.to_map(q)).unwrap();
    for b in &blocks {
        writeln!(
            text,
            "{} <- {}: {}",
            b.nu_out.0.join(""),
            b.nu_in.0.join(""),
            if b.matches { "match" } else { "MISMATCH" }
        )
        .unwrap();
        for ((d, c), (_, r)) in b.series.iter().zip(&b.oracle) {
            writeln!(text, "  degree {d:>3}: series {c:>4}  rank {r:>4}").unwrap();
        }
    }
    writeln!(text, "status: {}", if passed { "pass" } else { "fail" }).unwrap();
    let report = GdimReport {
        alpha: alpha.to_map(q),
        width,
        seeds,
        status: if passed { "pass" } else { "fail" },
        blocks,
    };
    Ok(Outcome::new(&report, text, passed))
}

/// Truncated graded dimensions of the cyclotomic quotient.
pub fn cmd_cyclo(q: &Quiver, alpha: &RootVector, lambda: &DominantWeight, settings: &Settings) -> Result<Outcome> {
    check_height(alpha, BackendKind::Randomized)?;
    let max_degree = settings.max_degree.unwrap_or(MAX_DEGREE);
    if max_degree > MAX_DEGREE {
        return Err(CliError::Usage(format!("--max-degree is capped at {MAX_DEGREE}")));
    }
    if lambda.levels().len() != q.vertex_count() {
        return Err(CliError::Usage("lambda needs one level per vertex".into()));
    }
    let model = FixedPointModel::new(q, alpha)?;
    let report = cyclotomic_dims(&model, lambda, max_degree, &settings.seeds())?;
    let passed = report.stable && report.contained;
    let text = cyclo_text(&report);
    Ok(Outcome::new(&report, text, passed))
}

fn cyclo_text(r: &CycloReport) -> String {
    let mut t = String::new();
    writeln!(t, "lambda: {:?}  alpha: {:?}", r.lambda, r.alpha).unwrap();
    writeln!(t, "generic-fiber dimensions up to degree {}, seeds {:?}", r.max_degree, r.seeds).unwrap();
    for d in &r.degrees {
        writeln!(
            t,
            "  degree {:>3}: full {:>4}  ideal {:>4}  quotient {:>4}",
            d.degree, d.dim_full, d.dim_ideal, d.dim_quotient
        )
        .unwrap();
    }
    writeln!(t, "total quotient: {} (per seed {:?})", r.total_quotient, r.per_seed_totals).unwrap();
    writeln!(t, "stable: {}  contained: {}  saturated: {}", r.stable, r.contained, r.saturated).unwrap();
    t
}
