//! Stationary Bratteli diagrams of the towers `A = lim A_n` and
//! `B^Y = lim End(Y^{⊗n})`.
//!
//! Dimension vectors are exact; `d(n+1) = adjacency · d(n)`, so the entry in
//! row `w`, column `v` is the multiplicity of block `v` of level `n` inside
//! block `w` of level `n + 1`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result, StructuralError};
use crate::fusion::{fusion_matrix, wielandt_bound, FusionRing, ObjectVec, Side};
use crate::matrix::{basis_vector, sum_of_squares, IntMatrix};
use crate::module_cat::{verify_action, BimoduleAction};
use crate::perron::{fp_dimension, PfEnclosure};

#[cfg(any(test, feature = "oracles"))]
pub mod oracle;

/// `max(8, 2(k−1)² + 2)`: twice the primitivity bound, so positive-power
/// certificates are always materializable.
pub fn default_horizon(k: usize) -> usize {
    (2 * wielandt_bound(k)).max(8)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliDiagram {
    vertices: Vec<String>,
    adjacency: IntMatrix,
    initial: Vec<BigUint>,
    dims: Vec<Vec<BigUint>>,
}

impl BratteliDiagram {
    pub fn new(
        vertices: Vec<String>,
        adjacency: IntMatrix,
        initial: Vec<BigUint>,
        horizon: usize,
    ) -> Result<Self> {
        let k = vertices.len();
        if adjacency.rows() != k || adjacency.cols() != k {
            return Err(StructuralError::ShapeMismatch {
                what: "adjacency".into(),
                rows: k,
                cols: k,
                found_rows: adjacency.rows(),
                found_cols: adjacency.cols(),
            }
            .into());
        }
        if initial.len() != k {
            return Err(StructuralError::LengthMismatch {
                what: "initial dimension vector".into(),
                expected: k,
                found: initial.len(),
            }
            .into());
        }
        let mut dims = Vec::with_capacity(horizon + 1);
        let mut d = initial.clone();
        dims.push(d.clone());
        for _ in 0..horizon {
            d = adjacency.mul_vec(&d);
            dims.push(d.clone());
        }
        Ok(BratteliDiagram {
            vertices,
            adjacency,
            initial,
            dims,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn initial(&self) -> &[BigUint] {
        &self.initial
    }

    pub fn horizon(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[Vec<BigUint>] {
        &self.dims
    }

    pub fn dims_at(&self, n: usize) -> Result<&[BigUint]> {
        self.dims
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::BeyondHorizon {
                level: n,
                horizon: self.horizon(),
            })
    }

    /// `Σ_v d_v(n)²`.
    pub fn algebra_dimension(&self, n: usize) -> Result<BigUint> {
        Ok(sum_of_squares(self.dims_at(n)?))
    }

    pub fn algebra_dimensions(&self) -> Vec<BigUint> {
        self.dims.iter().map(|d| sum_of_squares(d)).collect()
    }

    pub fn view(&self) -> DiagramView {
        DiagramView {
            vertices: self.vertices.clone(),
            adjacency: self.adjacency.to_decimal_rows(),
            dims: self
                .dims
                .iter()
                .map(|d| d.iter().map(ToString::to_string).collect())
                .collect(),
            algebra_dims: self
                .algebra_dimensions()
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

/// Serializable form; integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramView {
    pub vertices: Vec<String>,
    pub adjacency: Vec<Vec<String>>,
    pub dims: Vec<Vec<String>>,
    pub algebra_dims: Vec<String>,
}

/// Diagram of `A_n = End(m₀ ◁ Y^{⊗n})` with connecting maps `x ↦ x ◁ 1_Y`.
pub fn diagram_for_a(action: &BimoduleAction, horizon: usize) -> Result<BratteliDiagram> {
    let violations = verify_action(action);
    if !violations.is_empty() {
        return Err(Error::InvalidAction(violations.len()));
    }
    if horizon == 0 {
        return Err(Error::Unsupported("horizon must be at least 1".into()));
    }
    let module = action.module();
    BratteliDiagram::new(
        module.objects().to_vec(),
        action.right_y(),
        basis_vector(module.rank(), action.m0()),
        horizon,
    )
}

/// Diagram of `B^Y_n = End(Y^{⊗n})` with connecting maps `x ↦ x ⊗ 1_Y`.
///
/// Block `s` of level `n` sits in block `t` of level `n + 1` with multiplicity
/// `N_{sY}^t`, i.e. the right fusion matrix of `Y`.
pub fn diagram_for_by(
    dual_ring: &FusionRing,
    y: &ObjectVec,
    horizon: usize,
) -> Result<BratteliDiagram> {
    if y.is_zero() {
        return Err(Error::ZeroObject);
    }
    let adjacency = fusion_matrix(dual_ring, y, Side::Right)?;
    BratteliDiagram::new(
        dual_ring.labels().to_vec(),
        adjacency,
        basis_vector(dual_ring.rank(), dual_ring.unit()),
        horizon,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimpleCertificate {
    /// The supports are eventually constant and `adjacency^exponent`
    /// restricted to them is entrywise positive.
    PositivePower {
        exponent: usize,
        support: Vec<usize>,
    },
    /// Every surviving vertex of every recurring support class reaches a full
    /// level; `supports` lists the distinct level supports.
    SupportAutomaton {
        supports: Vec<Vec<usize>>,
        period: usize,
    },
}

/// A vertex whose hereditary cone never fills a level, so it generates a
/// proper nonzero ideal of the limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub level: usize,
    pub vertex: usize,
    /// Vertices the cone occupies along its eventual cycle.
    pub vertices: Vec<usize>,
    /// Vertices of the full levels over the same cycle.
    pub level_support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Simplicity {
    Simple { certificate: SimpleCertificate },
    NotSimple { witness: IdealWitness },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }

    pub fn positive_power(&self) -> Option<usize> {
        match self {
            Simplicity::Simple {
                certificate: SimpleCertificate::PositivePower { exponent, .. },
            } => Some(*exponent),
            _ => None,
        }
    }
}

struct SupportGraph {
    succ: Vec<FixedBitSet>,
    k: usize,
}

impl SupportGraph {
    fn new(adj: &IntMatrix) -> Self {
        let k = adj.rows();
        let succ = (0..k)
            .map(|v| {
                let mut s = FixedBitSet::with_capacity(k);
                for w in 0..k {
                    if !adj.get(w, v).is_zero() {
                        s.insert(w);
                    }
                }
                s
            })
            .collect();
        SupportGraph { succ, k }
    }

    fn step(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.k);
        for v in s.ones() {
            out.union_with(&self.succ[v]);
        }
        out
    }
}

/// Least `p ≤ (|U|−1)² + 1` with `adjacency^p` entrywise positive on `U`.
fn positive_power_on(adj: &IntMatrix, support: &[usize]) -> Option<usize> {
    let sub = adj.restrict(support).support();
    let n = support.len();
    let mut power = sub.clone();
    for p in 1..=wielandt_bound(n) {
        if power.iter().all(|row| row.iter().all(|&x| x)) {
            return Some(p);
        }
        let mut next = vec![vec![false; n]; n];
        for (i, row) in next.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n).any(|l| sub[i][l] && power[l][j]);
            }
        }
        power = next;
    }
    None
}

/// Exact simplicity decision for the limit of a stationary diagram.
///
/// Vertex `(n, v)` only matters through the pair `(v, S_n)` where `S_n` is the
/// level support. For each pair, the cone `R_t` and the level support `T_t`
/// are propagated together until the pair state repeats: the vertex is fine if
/// `R_t = T_t` at some point (its ideal contains a full level), or if `R_t`
/// becomes empty (the block dies in the limit).
pub fn decide_simplicity(diagram: &BratteliDiagram) -> Result<Simplicity> {
    if diagram.initial.iter().all(Zero::is_zero) {
        return Err(Error::ZeroInitialVector);
    }
    let g = SupportGraph::new(&diagram.adjacency);
    let mut s = FixedBitSet::with_capacity(g.k);
    for (i, x) in diagram.initial.iter().enumerate() {
        if !x.is_zero() {
            s.insert(i);
        }
    }

    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut supports: Vec<FixedBitSet> = Vec::new();
    while !seen.contains_key(&s) {
        seen.insert(s.clone(), supports.len());
        supports.push(s.clone());
        s = g.step(&s);
    }
    let cycle_start = seen[&s];
    let cycle = &supports[cycle_start..];
    if cycle.iter().all(|c| c.is_clear()) {
        return Err(Error::Unsupported("the limit algebra is zero".into()));
    }

    for (level, support) in supports.iter().enumerate() {
        for v in support.ones() {
            if let Some(witness) = cone_failure(&g, v, support) {
                return Ok(Simplicity::NotSimple {
                    witness: IdealWitness {
                        level,
                        vertex: v,
                        ..witness
                    },
                });
            }
        }
    }

    let certificate = match cycle {
        [eventual] => {
            let u: Vec<usize> = eventual.ones().collect();
            positive_power_on(&diagram.adjacency, &u).map(|exponent| {
                SimpleCertificate::PositivePower {
                    exponent,
                    support: u,
                }
            })
        }
        _ => None,
    }
    .unwrap_or_else(|| SimpleCertificate::SupportAutomaton {
        supports: supports.iter().map(|s| s.ones().collect()).collect(),
        period: cycle.len(),
    });
    Ok(Simplicity::Simple { certificate })
}

fn cone_failure(g: &SupportGraph, v: usize, support: &FixedBitSet) -> Option<IdealWitness> {
    let mut r = FixedBitSet::with_capacity(g.k);
    r.insert(v);
    let mut t = support.clone();
    let mut states: HashMap<(FixedBitSet, FixedBitSet), usize> = HashMap::new();
    let mut trail = Vec::new();
    loop {
        if r.is_clear() || r == t {
            return None;
        }
        if let Some(&start) = states.get(&(r.clone(), t.clone())) {
            let mut vertices = FixedBitSet::with_capacity(g.k);
            let mut level_support = FixedBitSet::with_capacity(g.k);
            for (cr, ct) in &trail[start..] {
                vertices.union_with(cr);
                level_support.union_with(ct);
            }
            return Some(IdealWitness {
                level: 0,
                vertex: v,
                vertices: vertices.ones().collect(),
                level_support: level_support.ones().collect(),
            });
        }
        states.insert((r.clone(), t.clone()), trail.len());
        trail.push((r.clone(), t.clone()));
        r = g.step(&r);
        t = g.step(&t);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceData {
    /// Perron-Frobenius enclosure of the adjacency restricted to the eventual support.
    pub pf: PfEnclosure,
    /// Left Perron vector on the eventual support (zero elsewhere), summing to one.
    pub weights: Vec<f64>,
    /// `1 / (weights · d(0))`: the trace of a minimal projection in block `v`
    /// of level `n` is `trace_scale · weights[v] / λⁿ`.
    pub trace_scale: f64,
}

/// Unique-trace data of a simple stationary limit with a positive-power certificate.
pub fn trace_data(diagram: &BratteliDiagram, tolerance: f64) -> Result<TraceData> {
    let support = match decide_simplicity(diagram)? {
        Simplicity::Simple {
            certificate: SimpleCertificate::PositivePower { support, .. },
        } => support,
        Simplicity::Simple { .. } => {
            return Err(Error::Unsupported(
                "trace data needs a positive-power certificate (periodic supports)".into(),
            ))
        }
        Simplicity::NotSimple { .. } => {
            return Err(Error::Unsupported(
                "trace data of a non-simple limit".into(),
            ))
        }
    };
    let restricted = diagram.adjacency.restrict(&support);
    let pf = fp_dimension(&restricted, tolerance)?;
    let left = fp_dimension(&restricted.transpose(), tolerance)?;
    let mut weights = vec![0.0; diagram.vertices.len()];
    for (i, &v) in support.iter().enumerate() {
        weights[v] = left.eigenvector[i];
    }
    // Level-0 blocks outside the eventual support die and carry no trace.
    let pairing: f64 = diagram
        .initial
        .iter()
        .zip(&weights)
        .map(|(d, w)| num_traits::ToPrimitive::to_f64(d).unwrap_or(f64::INFINITY) * w)
        .sum();
    Ok(TraceData {
        pf,
        weights,
        trace_scale: 1.0 / pairing,
    })
}

/// The diagram of levels `0, m, 2m, …`.
pub fn telescope(diagram: &BratteliDiagram, step: usize) -> Result<BratteliDiagram> {
    if step == 0 {
        return Err(Error::Unsupported(
            "telescoping step must be at least 1".into(),
        ));
    }
    BratteliDiagram::new(
        diagram.vertices.clone(),
        diagram.adjacency.pow(step),
        diagram.initial.clone(),
        diagram.horizon(),
    )
}
