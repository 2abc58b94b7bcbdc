//! The verdict pipeline: validation, strong generation, simplicity of both
//! towers, trace data and central capacity, assembled into a report.
//!
//! The criterion is one-directional. When it does not apply the verdict is
//! `Inconclusive`; there is no negative verdict.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bratteli::{
    decide_simplicity, default_horizon, diagram_for_a, diagram_for_by, trace_data, DiagramView,
    Simplicity,
};
use crate::document::ActionDocument;
use crate::error::{Error, Result};
use crate::fusion::{strong_generator, GeneratorOutcome, StrongGeneratorSearch};
use crate::matrix::IntMatrix;
use crate::module_cat::{indecomposable, verify_action, BimoduleAction};
use crate::multimatrix::{embedding_feasible, least_central_level, Block, MultiMatrixShape};
use crate::perron::PfSummary;

pub const NOT_AF_EMBEDDABLE: &str = "not certified — D not AF-embeddable";

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    /// Levels materialized for diagrams and central capacity; defaults to
    /// [`default_horizon`] of the larger rank.
    pub horizon: Option<usize>,
    pub max_m: usize,
    pub tolerance: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            horizon: None,
            max_m: 4,
            tolerance: 1e-10,
        }
    }
}

/// A pipeline stage that either ran or was skipped because an earlier one failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage<T> {
    Computed(T),
    Skipped(String),
}

impl<T> Stage<T> {
    pub fn computed(&self) -> Option<&T> {
        match self {
            Stage::Computed(t) => Some(t),
            Stage::Skipped(_) => None,
        }
    }

    fn from_result(r: Result<T>) -> Self {
        r.map_or_else(|e| Stage::Skipped(e.to_string()), Stage::Computed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub label: String,
    pub multiplicity: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub ring: Vec<String>,
    pub module: Vec<String>,
    pub dual_ring: Vec<String>,
    pub m0: String,
    pub y: Vec<Multiplicity>,
    /// SHA-256 of the canonical explicit document of the action.
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub ring: Vec<String>,
    pub dual_ring: Vec<String>,
    pub action: Vec<String>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.ring.is_empty() && self.dual_ring.is_empty() && self.action.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndecomposabilityView {
    pub indecomposable: bool,
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramSection {
    pub diagram: DiagramView,
    pub simplicity: Simplicity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSection {
    pub pf: PfSummary,
    pub weights: Vec<f64>,
    pub trace_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralRow {
    pub m: usize,
    pub least_n: Option<usize>,
    pub witness_digest: Option<String>,
    pub canonical: Option<bool>,
}

/// Self-contained data for re-checking a positive verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Least `n` with every dual simple a summand of `Y^{⊗n}`.
    pub n: usize,
    /// Least `p` with the `B^Y` adjacency to the `p` entrywise positive.
    pub p: usize,
    pub by_adjacency: Vec<Vec<String>>,
    /// [`adjacency_digest`] of `by_adjacency`.
    pub digest: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InconclusiveCause {
    InvalidInput,
    Decomposable,
    NotStrongGenerator,
    NoPositivePower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    EquivariantlyZStable {
        certificate: Certificate,
    },
    Inconclusive {
        cause: InconclusiveCause,
        reason: String,
    },
}

impl Verdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::EquivariantlyZStable { .. })
    }

    /// 0 stable, 1 invalid input, 10 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::EquivariantlyZStable { .. } => 0,
            Verdict::Inconclusive {
                cause: InconclusiveCause::InvalidInput,
                ..
            } => 1,
            Verdict::Inconclusive { .. } => 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteStatus {
    Certified,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DNote {
    pub algebra: String,
    pub status: NoteStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub input: InputDigest,
    pub horizon: usize,
    pub validation: Validation,
    pub indecomposability: IndecomposabilityView,
    pub strong_generator: Stage<StrongGeneratorSearch>,
    pub by_diagram: Stage<DiagramSection>,
    pub a_diagram: Stage<DiagramSection>,
    pub by_trace: Stage<TraceSection>,
    pub a_trace: Stage<TraceSection>,
    pub central_capacity: Stage<Vec<CentralRow>>,
    pub verdict: Verdict,
    pub justification: String,
    pub notes: Vec<DNote>,
    /// Dual adjacency and unit, kept for [`d_stability_note`].
    #[serde(skip)]
    by_adjacency: Option<(IntMatrix, usize)>,
}

/// SHA-256 (hex) of the rows joined as `a,b;c,d`.
pub fn adjacency_digest(rows: &[Vec<String>]) -> String {
    let text = rows
        .iter()
        .map(|r| r.join(","))
        .collect::<Vec<_>>()
        .join(";");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn input_digest(name: &str, action: &BimoduleAction) -> InputDigest {
    let dual = action.dual_ring();
    InputDigest {
        name: name.to_string(),
        ring: action.ring().labels().to_vec(),
        module: action.module().objects().to_vec(),
        dual_ring: dual.labels().to_vec(),
        m0: action.module().objects()[action.m0()].clone(),
        y: action
            .y()
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Multiplicity {
                label: dual.label(i).to_string(),
                multiplicity: c.to_string(),
            })
            .collect(),
        sha256: hex::encode(Sha256::digest(
            ActionDocument::from_action(name, action).emit().as_bytes(),
        )),
    }
}

fn trace_section(diagram: &crate::bratteli::BratteliDiagram, tol: f64) -> Result<TraceSection> {
    let t = trace_data(diagram, tol)?;
    Ok(TraceSection {
        pf: t.pf.summary(),
        weights: t.weights,
        trace_scale: t.trace_scale,
    })
}

fn central_rows(action: &BimoduleAction, max_m: usize, horizon: usize) -> Result<Vec<CentralRow>> {
    (1..=max_m)
        .map(|m| {
            let found = least_central_level(action, m, horizon)?;
            Ok(CentralRow {
                m,
                least_n: found.as_ref().map(|(n, _)| *n),
                witness_digest: found.as_ref().map(|(_, w)| w.witness.digest()),
                canonical: found.as_ref().map(|(_, w)| w.canonical),
            })
        })
        .collect()
}

/// Runs every check on `action` and assembles the verdict.
///
/// Axiom violations produce an `Inconclusive` report listing them; only
/// option errors are returned as `Err`.
pub fn analyze(
    name: &str,
    action: &BimoduleAction,
    options: &AnalyzeOptions,
) -> Result<StabilityReport> {
    if !(options.tolerance > 0.0 && options.tolerance.is_finite()) {
        return Err(Error::InvalidTolerance(options.tolerance.to_string()));
    }
    let ring = action.ring();
    let dual = action.dual_ring();
    let k = action.module().rank().max(dual.rank());
    let horizon = options
        .horizon
        .unwrap_or_else(|| default_horizon(k))
        .max(options.max_m)
        .max(1);

    let validation = Validation {
        ring: ring.verify().iter().map(|v| v.describe(ring)).collect(),
        dual_ring: dual.verify().iter().map(|v| v.describe(dual)).collect(),
        action: if ring.verify().is_empty() && dual.verify().is_empty() {
            verify_action(action)
                .iter()
                .map(|v| v.describe(action))
                .collect()
        } else {
            Vec::new()
        },
    };
    let valid = validation.passed();
    let objects = action.module().objects();
    let indec = indecomposable(action.module());
    let indecomposability = IndecomposabilityView {
        indecomposable: indec.indecomposable,
        components: indec
            .components
            .iter()
            .map(|c| c.iter().map(|&i| objects[i].clone()).collect())
            .collect(),
    };

    let generator = if valid {
        Stage::from_result(strong_generator(dual, action.y()))
    } else {
        invalid()
    };

    let by = if valid {
        diagram_for_by(dual, action.y(), horizon)
    } else {
        Err(Error::Unsupported("input failed validation".into()))
    };
    let (by_diagram, by_trace, by_adjacency) = match &by {
        Ok(d) => (
            Stage::from_result(decide_simplicity(d).map(|simplicity| DiagramSection {
                diagram: d.view(),
                simplicity,
            })),
            Stage::from_result(trace_section(d, options.tolerance)),
            Some((d.adjacency().clone(), dual.unit())),
        ),
        Err(_) => (invalid(), invalid(), None),
    };

    let (a_diagram, a_trace) = if valid {
        match diagram_for_a(action, horizon) {
            Ok(d) => (
                Stage::from_result(decide_simplicity(&d).map(|simplicity| DiagramSection {
                    diagram: d.view(),
                    simplicity,
                })),
                Stage::from_result(trace_section(&d, options.tolerance)),
            ),
            Err(e) => (Stage::Skipped(e.to_string()), Stage::Skipped(e.to_string())),
        }
    } else {
        (invalid(), invalid())
    };

    let central_capacity = if valid {
        Stage::from_result(central_rows(action, options.max_m, horizon))
    } else {
        invalid()
    };

    let (verdict, justification) = decide(&validation, &indecomposability, &generator, &by_diagram);

    Ok(StabilityReport {
        input: input_digest(name, action),
        horizon,
        validation,
        indecomposability,
        strong_generator: generator,
        by_diagram,
        a_diagram,
        by_trace,
        a_trace,
        central_capacity,
        verdict,
        justification,
        notes: Vec::new(),
        by_adjacency,
    })
}

fn invalid<T>() -> Stage<T> {
    Stage::Skipped("input failed validation".to_string())
}

const UNDECIDED: &str =
    "The sufficient criterion does not apply; this neither certifies nor rules out equivariant Z-stability.";

fn inconclusive(cause: InconclusiveCause, reason: String) -> (Verdict, String) {
    let justification = format!("{reason} {UNDECIDED}");
    (Verdict::Inconclusive { cause, reason }, justification)
}

fn decide(
    validation: &Validation,
    indec: &IndecomposabilityView,
    generator: &Stage<StrongGeneratorSearch>,
    by: &Stage<DiagramSection>,
) -> (Verdict, String) {
    if !validation.passed() {
        let count = validation.ring.len() + validation.dual_ring.len() + validation.action.len();
        return inconclusive(
            InconclusiveCause::InvalidInput,
            format!("The input violates {count} axiom(s) of a fusion ring or bimodule action."),
        );
    }
    if !indec.indecomposable {
        return inconclusive(
            InconclusiveCause::Decomposable,
            format!(
                "The module category is decomposable ({} components).",
                indec.components.len()
            ),
        );
    }
    let search = match generator {
        Stage::Computed(s) => s,
        Stage::Skipped(why) => {
            return inconclusive(
                InconclusiveCause::InvalidInput,
                format!("The strong generator search could not run: {why}."),
            )
        }
    };
    let n = match &search.outcome {
        GeneratorOutcome::Generates { exponent } => *exponent,
        GeneratorOutcome::Periodic { period, .. } => {
            return inconclusive(
                InconclusiveCause::NotStrongGenerator,
                format!(
                    "Y is not a strong tensor generator: its fusion graph is irreducible with period {period}, \
                     so no tensor power contains every simple."
                ),
            )
        }
        GeneratorOutcome::Reducible { from, unreachable } => {
            return inconclusive(
                InconclusiveCause::NotStrongGenerator,
                format!(
                    "Y is not a strong tensor generator: simple #{unreachable} never occurs in \
                     #{from} ⊗ Y^n."
                ),
            )
        }
    };
    let section = match by {
        Stage::Computed(s) => s,
        Stage::Skipped(why) => {
            return inconclusive(
                InconclusiveCause::NoPositivePower,
                format!("The B^Y diagram could not be analyzed: {why}."),
            )
        }
    };
    let Some(p) = section.simplicity.positive_power() else {
        return inconclusive(
            InconclusiveCause::NoPositivePower,
            "The B^Y adjacency has no entrywise positive power.".to_string(),
        );
    };
    let by_adjacency = section.diagram.adjacency.clone();
    let digest = adjacency_digest(&by_adjacency);
    let justification = format!(
        "Y^{{⊗{n}}} contains every simple of the dual category, so Y is a strong tensor generator. \
         The Bratteli diagram of B^Y, built by tensoring with Y at each stage, has an entrywise \
         positive adjacency power (exponent p = {p}); hence B^Y is a simple AF algebra with a unique trace. \
         B^Y embeds unitally into the fixed-point central sequence algebra of the action, and since \
         B^Y admits a unital embedding of the Jiang-Su algebra Z, the action is equivariantly Z-stable."
    );
    (
        Verdict::EquivariantlyZStable {
            certificate: Certificate {
                n,
                p,
                by_adjacency,
                digest,
            },
        },
        justification,
    )
}

/// Parses `M_{q^∞}`, `M_{q^inf}`, `M_q^inf` or `UHF(q)`.
fn uhf_base(name: &str) -> Option<u64> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = if let Some(rest) = compact.strip_prefix("UHF(") {
        rest.strip_suffix(')')?
    } else {
        let rest = compact.strip_prefix("M_")?;
        let rest = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(rest);
        rest.strip_suffix("^∞")
            .or_else(|| rest.strip_suffix("^inf"))?
    };
    inner.parse::<u64>().ok().filter(|&q| q >= 2)
}

/// Least `g ≥ 1` with `N^g ≡ 0 (mod q)` on `support`, if any.
fn nilpotent_mod(n: &IntMatrix, support: &[usize], q: u64) -> Option<usize> {
    let k = support.len();
    let base: Vec<Vec<u64>> = support
        .iter()
        .map(|&i| {
            support
                .iter()
                .map(|&j| (n.get(i, j) % q).try_into().expect("reduced mod q"))
                .collect()
        })
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut power = base.clone();
    for g in 1.. {
        if power.iter().all(|r| r.iter().all(|&x| x == 0)) {
            return Some(g);
        }
        if !seen.insert(power.clone()) {
            return None;
        }
        power = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        (0..k)
                            .map(|l| u128::from(power[i][l]) * u128::from(base[l][j]))
                            .sum::<u128>()
                            .rem_euclid(u128::from(q)) as u64
                    })
                    .collect()
            })
            .collect();
    }
    unreachable!()
}

fn uhf_note(report: &StabilityReport, name: &str, q: u64) -> DNote {
    let not_certified = |detail: String| DNote {
        algebra: name.to_string(),
        status: NoteStatus::NotCertified,
        detail,
    };
    let Some((adj, unit)) = &report.by_adjacency else {
        return not_certified("the B^Y diagram is unavailable".into());
    };
    let support = crate::graph::reachable(&adj.support(), *unit);
    let support: Vec<usize> = (0..support.len()).filter(|&i| support[i]).collect();
    let horizon = report.horizon;

    let mut dims = vec![crate::matrix::basis_vector(adj.rows(), *unit)];
    for _ in 0..horizon {
        let next = adj.mul_vec(dims.last().unwrap());
        dims.push(next);
    }
    let level_shape = |n: usize| -> MultiMatrixShape {
        MultiMatrixShape {
            blocks: dims[n]
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(i, d)| Block {
                    label: i.to_string(),
                    size: u64::try_from(d).unwrap_or(u64::MAX),
                })
                .collect(),
        }
    };
    let power_shape = |j: u32| MultiMatrixShape {
        blocks: vec![Block {
            label: "0".into(),
            size: q.pow(j),
        }],
    };

    match nilpotent_mod(adj, &support, q) {
        Some(g) => {
            let checked: Vec<String> = (1..)
                .map(|j: u32| (j, j as usize * g))
                .take_while(|&(j, level)| level <= horizon && q.checked_pow(j).is_some())
                .map(|(j, level)| {
                    let ok = embedding_feasible(&power_shape(j), &level_shape(level)).is_some();
                    format!(
                        "M_{} into level {level}: {}",
                        q.pow(j),
                        if ok { "ok" } else { "refused" }
                    )
                })
                .collect();
            DNote {
                algebra: name.to_string(),
                status: NoteStatus::Certified,
                detail: format!(
                    "every multiplicity of the {g}-step B^Y inclusion is divisible by {q}, so a copy of M_{q} \
                     commutes with each level {g} steps back and M_{{{q}^∞}} embeds unitally; \
                     supporting embeddings: {}",
                    if checked.is_empty() { "none within horizon".to_string() } else { checked.join(", ") }
                ),
            }
        }
        None => {
            let refusals = (1..=horizon)
                .filter(|&level| embedding_feasible(&power_shape(1), &level_shape(level)).is_none())
                .count();
            not_certified(format!(
                "no power of the B^Y adjacency vanishes mod {q}; M_{q} fails to embed unitally at {refusals} \
                 of {horizon} levels"
            ))
        }
    }
}

/// Appends whether containment of `name` in `B^Y` can be certified.
///
/// Recognized names: `Z`, `O_2`, `O_∞` (or `O_inf`) and the UHF forms
/// `M_{q^∞}`, `M_q^inf`, `UHF(q)`.
pub fn d_stability_note(mut report: StabilityReport, name: &str) -> Result<StabilityReport> {
    let note = match name.trim() {
        "Z" => DNote {
            algebra: "Z".into(),
            status: if report.verdict.is_stable() {
                NoteStatus::Certified
            } else {
                NoteStatus::NotCertified
            },
            detail: if report.verdict.is_stable() {
                "certified by the strong-generator and positive-power chain".into()
            } else {
                "the strong-generator criterion does not apply".into()
            },
        },
        "O_2" | "O_∞" | "O_inf" => DNote {
            algebra: name.trim().to_string(),
            status: NoteStatus::NotCertified,
            detail: NOT_AF_EMBEDDABLE.into(),
        },
        other => match uhf_base(other) {
            Some(q) => uhf_note(&report, other, q),
            None => return Err(Error::UnknownAlgebra(other.to_string())),
        },
    };
    report.notes.push(note);
    Ok(report)
}

fn stage_line<T>(out: &mut String, title: &str, stage: &Stage<T>, f: impl FnOnce(&T) -> String) {
    let body = match stage {
        Stage::Computed(t) => f(t),
        Stage::Skipped(why) => format!("skipped ({why})"),
    };
    let _ = writeln!(out, "- {title}: {body}");
}

fn simplicity_text(s: &DiagramSection) -> String {
    match &s.simplicity {
        Simplicity::Simple { certificate } => match certificate {
            crate::bratteli::SimpleCertificate::PositivePower { exponent, .. } => {
                format!("simple (positive power p = {exponent})")
            }
            crate::bratteli::SimpleCertificate::SupportAutomaton { period, .. } => {
                format!("simple (support cycle of period {period})")
            }
        },
        Simplicity::NotSimple { witness } => format!(
            "not simple (vertex {} at level {} generates a proper ideal)",
            s.diagram.vertices[witness.vertex], witness.level
        ),
    }
}

impl StabilityReport {
    /// Algebra dimensions of `A_0, …, A_horizon`, when the A diagram was built.
    pub fn a_algebra_dims(&self) -> Option<Vec<BigUint>> {
        self.a_diagram.computed().map(|s| {
            s.diagram
                .algebra_dims
                .iter()
                .map(|d| d.parse().expect("decimal"))
                .collect()
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Deterministic human-readable report.
    pub fn render_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}\n", self.input.name);
        let _ = writeln!(out, "## Input\n");
        let _ = writeln!(out, "- ring: {}", self.input.ring.join(", "));
        let _ = writeln!(out, "- module: {}", self.input.module.join(", "));
        let _ = writeln!(out, "- dual ring: {}", self.input.dual_ring.join(", "));
        let _ = writeln!(out, "- m0: {}", self.input.m0);
        let y: Vec<String> = self
            .input
            .y
            .iter()
            .map(|m| format!("{}·{}", m.multiplicity, m.label))
            .collect();
        let _ = writeln!(out, "- Y: {}", y.join(" ⊕ "));
        let _ = writeln!(out, "- sha256: {}", self.input.sha256);
        let _ = writeln!(out, "- horizon: {}\n", self.horizon);

        let _ = writeln!(out, "## Checks\n");
        if self.validation.passed() {
            let _ = writeln!(out, "- validation: passed");
        } else {
            let _ = writeln!(out, "- validation: failed");
            for v in self
                .validation
                .ring
                .iter()
                .chain(&self.validation.dual_ring)
                .chain(&self.validation.action)
            {
                let _ = writeln!(out, "  - {v}");
            }
        }
        let _ = writeln!(
            out,
            "- indecomposable: {}",
            if self.indecomposability.indecomposable {
                "yes"
            } else {
                "no"
            }
        );
        stage_line(
            &mut out,
            "strong tensor generator",
            &self.strong_generator,
            |s| match &s.outcome {
                GeneratorOutcome::Generates { exponent } => format!("n = {exponent}"),
                GeneratorOutcome::Periodic { period, .. } => {
                    format!("none (periodic, period {period}; searched n ≤ {})", s.bound)
                }
                GeneratorOutcome::Reducible { from, unreachable } => format!(
                    "none (reducible, #{unreachable} unreachable from #{from}; searched n ≤ {})",
                    s.bound
                ),
            },
        );
        stage_line(&mut out, "B^Y diagram", &self.by_diagram, simplicity_text);
        stage_line(&mut out, "A diagram", &self.a_diagram, simplicity_text);
        if let Some(a) = self.a_diagram.computed() {
            let _ = writeln!(
                out,
                "- A algebra dimensions: {}",
                a.diagram.algebra_dims.join(", ")
            );
        }
        if let Some(b) = self.by_diagram.computed() {
            let _ = writeln!(
                out,
                "- B^Y algebra dimensions: {}",
                b.diagram.algebra_dims.join(", ")
            );
        }
        let pf = |t: &TraceSection| format!("[{}, {}]", t.pf.lower, t.pf.upper);
        stage_line(&mut out, "FP dimension of Y", &self.by_trace, pf);
        stage_line(&mut out, "A growth rate", &self.a_trace, pf);

        let _ = writeln!(out, "\n## Central capacity\n");
        match &self.central_capacity {
            Stage::Computed(rows) => {
                let _ = writeln!(out, "| m | least n | witness |");
                let _ = writeln!(out, "|---|---|---|");
                for r in rows {
                    let n = r.least_n.map_or("none".to_string(), |n| n.to_string());
                    let w = r.witness_digest.clone().unwrap_or_else(|| "-".into());
                    let _ = writeln!(out, "| {} | {n} | {w} |", r.m);
                }
            }
            Stage::Skipped(why) => {
                let _ = writeln!(out, "skipped ({why})");
            }
        }

        let _ = writeln!(out, "\n## Verdict\n");
        match &self.verdict {
            Verdict::EquivariantlyZStable { certificate } => {
                let _ = writeln!(out, "EquivariantlyZStable");
                let _ = writeln!(
                    out,
                    "\n- certificate: n = {}, p = {}, adjacency sha256 {}",
                    certificate.n, certificate.p, certificate.digest
                );
            }
            Verdict::Inconclusive { reason, .. } => {
                let _ = writeln!(out, "Inconclusive: {reason}");
            }
        }
        let _ = writeln!(out, "\n{}", self.justification);
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\n## Strongly self-absorbing subalgebras\n");
            for n in &self.notes {
                let status = match n.status {
                    NoteStatus::Certified => "certified",
                    NoteStatus::NotCertified => "not certified",
                };
                let _ = writeln!(out, "- {}: {status}; {}", n.algebra, n.detail);
            }
        }
        out
    }
}

/// Digest of a central-capacity witness as it appears in the report.
pub fn witness_digest(assignment: &[Vec<u64>]) -> String {
    crate::multimatrix::EmbeddingWitness {
        assignment: assignment.to_vec(),
    }
    .digest()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    fn run(name: &str) -> StabilityReport {
        let action = registry::actions()
            .into_iter()
            .find(|(n, _)| *n == name)
            .unwrap()
            .1;
        analyze(name, &action, &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn fibonacci_is_stable_with_n2_p2() {
        let r = run("fib_regular");
        match &r.verdict {
            Verdict::EquivariantlyZStable { certificate } => {
                assert_eq!((certificate.n, certificate.p), (2, 2));
                assert_eq!(
                    certificate.by_adjacency,
                    vec![vec!["0", "1"], vec!["1", "1"]]
                );
            }
            v => panic!("{v:?}"),
        }
        let dims: Vec<String> = r.a_algebra_dims().unwrap()[..6]
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(dims, ["1", "1", "2", "5", "13", "34"]);
        assert!(r
            .render_markdown()
            .contains("strong tensor generator: n = 2"));
        assert_eq!(r.verdict.exit_code(), 0);
    }

    #[test]
    fn z2_examples() {
        let r = run("z2_regular_g");
        assert!(matches!(
            r.verdict,
            Verdict::Inconclusive {
                cause: InconclusiveCause::NotStrongGenerator,
                ..
            }
        ));
        assert!(matches!(
            r.strong_generator,
            Stage::Computed(StrongGeneratorSearch {
                outcome: GeneratorOutcome::Periodic { period: 2, .. },
                ..
            })
        ));
        assert_eq!(r.verdict.exit_code(), 10);
        assert!(!r.justification.contains("not Z-stable"));

        let r = run("z2_regular_1g");
        match &r.verdict {
            Verdict::EquivariantlyZStable { certificate } => {
                assert_eq!((certificate.n, certificate.p), (1, 1))
            }
            v => panic!("{v:?}"),
        }
        let r = d_stability_note(r, "M_{2^∞}").unwrap();
        assert_eq!(r.notes[0].status, NoteStatus::Certified);
        let r = d_stability_note(r, "M_{3^∞}").unwrap();
        assert_eq!(r.notes[1].status, NoteStatus::NotCertified);
    }

    #[test]
    fn notes_catalogue() {
        let r = run("fib_regular");
        let r = d_stability_note(r, "M_{2^∞}").unwrap();
        assert_eq!(r.notes[0].status, NoteStatus::NotCertified);
        let r = d_stability_note(r, "Z").unwrap();
        assert_eq!(r.notes[1].status, NoteStatus::Certified);
        let r = d_stability_note(r, "O_∞").unwrap();
        assert_eq!(r.notes[2].detail, NOT_AF_EMBEDDABLE);
        assert_eq!(
            d_stability_note(r, "Cuntz").unwrap_err(),
            Error::UnknownAlgebra("Cuntz".into())
        );
        assert_eq!(uhf_base("UHF(6)"), Some(6));
        assert_eq!(uhf_base("M_3^inf"), Some(3));
        assert_eq!(uhf_base("M_{1^∞}"), None);
    }

    #[test]
    fn invalid_input_is_inconclusive() {
        let bad = registry::fibonacci().with_constant(1, 0, 1, 2);
        let action = crate::document::regular_module_unchecked(&bad).unwrap();
        let r = analyze("bad", &action, &AnalyzeOptions::default()).unwrap();
        assert!(!r.validation.passed());
        assert_eq!(r.verdict.exit_code(), 1);
        assert!(matches!(r.a_diagram, Stage::Skipped(_)));
    }

    #[test]
    fn ising_sigma_is_inconclusive_and_one_sigma_is_stable() {
        assert!(!run("ising_regular").verdict.is_stable());
        assert!(run("ising_regular_1sigma").verdict.is_stable());
    }

    #[test]
    fn rendering_is_deterministic() {
        assert_eq!(
            run("fib_regular").render_markdown(),
            run("fib_regular").render_markdown()
        );
        assert_eq!(
            run("z3_regular_1g").to_json(),
            run("z3_regular_1g").to_json()
        );
    }
}
