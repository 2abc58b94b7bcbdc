//! Finite levels as explicit multi-matrix algebras `⊕ M_{size}`: inclusions
//! between tower levels, relative commutants, and unital embeddings of
//! `B^Y_m` into the relative commutant of `A_n ⊆ A_{n+m}`.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fusion::tensor_power_decomposition;
use crate::linsolve::{Echelon, SparseRow};
use crate::module_cat::{verify_action, BimoduleAction};

/// Default cap on `Σ q²` for [`brute_force_commutant`].
pub const DEFAULT_ORACLE_BOUND: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub label: String,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiMatrixShape {
    pub blocks: Vec<Block>,
}

impl MultiMatrixShape {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.size == 0) {
            return Err(Error::InvalidInclusion(format!(
                "block {} has size 0",
                b.label
            )));
        }
        Ok(MultiMatrixShape { blocks })
    }

    /// Unlabelled blocks `0, 1, …`.
    pub fn from_sizes(sizes: &[u64]) -> Result<Self> {
        Self::new(
            sizes
                .iter()
                .enumerate()
                .map(|(i, &size)| Block {
                    label: i.to_string(),
                    size,
                })
                .collect(),
        )
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ size²`.
    pub fn total_dimension(&self) -> BigUint {
        self.blocks
            .iter()
            .map(|b| BigUint::from(b.size) * b.size)
            .sum()
    }
}

/// Unital inclusion with multiplicities `Λ` (target blocks × source blocks).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiMatrixInclusion {
    pub source: MultiMatrixShape,
    pub target: MultiMatrixShape,
    pub multiplicity: Vec<Vec<u64>>,
}

impl MultiMatrixInclusion {
    pub fn new(
        source: MultiMatrixShape,
        target: MultiMatrixShape,
        multiplicity: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if multiplicity.len() != target.len()
            || multiplicity.iter().any(|r| r.len() != source.len())
        {
            return Err(Error::InvalidInclusion(format!(
                "multiplicity matrix must be {}x{}",
                target.len(),
                source.len()
            )));
        }
        for (j, row) in multiplicity.iter().enumerate() {
            let image: u128 = row
                .iter()
                .zip(&source.blocks)
                .map(|(&l, b)| u128::from(l) * u128::from(b.size))
                .sum();
            if image != u128::from(target.blocks[j].size) {
                return Err(Error::InvalidInclusion(format!(
                    "not unital at target block {}: {image} != {}",
                    target.blocks[j].label, target.blocks[j].size
                )));
            }
        }
        for (i, b) in source.blocks.iter().enumerate() {
            if multiplicity.iter().all(|r| r[i] == 0) {
                return Err(Error::InvalidInclusion(format!(
                    "not injective: source block {} is not used",
                    b.label
                )));
            }
        }
        Ok(MultiMatrixInclusion {
            source,
            target,
            multiplicity,
        })
    }
}

/// `S` with `Σ_s S_{βs} p_s = q_β` and every source block used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingWitness {
    pub assignment: Vec<Vec<u64>>,
}

impl EmbeddingWitness {
    pub fn validate(&self, source: &MultiMatrixShape, target: &MultiMatrixShape) -> bool {
        if self.assignment.len() != target.len()
            || self.assignment.iter().any(|r| r.len() != source.len())
        {
            return false;
        }
        let unital = self.assignment.iter().zip(&target.blocks).all(|(row, t)| {
            let sum: u128 = row
                .iter()
                .zip(&source.blocks)
                .map(|(&x, s)| u128::from(x) * u128::from(s.size))
                .sum();
            sum == u128::from(t.size)
        });
        let hit = (0..source.len()).all(|s| self.assignment.iter().any(|r| r[s] > 0));
        unital && hit
    }

    /// First 16 hex digits of the SHA-256 of the row-major entries.
    pub fn digest(&self) -> String {
        let text = self
            .assignment
            .iter()
            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";");
        hex::encode(Sha256::digest(text.as_bytes()))[..16].to_string()
    }
}

fn to_u64(x: &BigUint, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("{what} exceeds 64 bits")))
}

fn tower_shape(action: &BimoduleAction, u: &[BigUint]) -> Result<(Vec<usize>, MultiMatrixShape)> {
    let objects = action.module().objects();
    let support: Vec<usize> = (0..u.len()).filter(|&v| !u[v].is_zero()).collect();
    let blocks = support
        .iter()
        .map(|&v| {
            Ok(Block {
                label: objects[v].clone(),
                size: to_u64(&u[v], "block size")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((support, MultiMatrixShape::new(blocks)?))
}

fn check_levels(action: &BimoduleAction, n: usize, m: usize, horizon: usize) -> Result<()> {
    if n + m > horizon {
        return Err(Error::BeyondHorizon {
            level: n + m,
            horizon,
        });
    }
    let violations = verify_action(action);
    if !violations.is_empty() {
        return Err(Error::InvalidAction(violations.len()));
    }
    Ok(())
}

/// `A_n ⊆ A_{n+m}` with `Λ_{w,v} = (R_Y^m)_{w,v}` on the level supports.
pub fn inclusion_between_levels(
    action: &BimoduleAction,
    n: usize,
    m: usize,
    horizon: usize,
) -> Result<MultiMatrixInclusion> {
    Ok(level_inclusion(action, n, m, horizon)?.0)
}

/// Also returns the supports of levels `n` and `n + m`.
fn level_inclusion(
    action: &BimoduleAction,
    n: usize,
    m: usize,
    horizon: usize,
) -> Result<(MultiMatrixInclusion, Vec<usize>, Vec<usize>)> {
    check_levels(action, n, m, horizon)?;
    let u = action.tower_vectors(n + m);
    let (src_sup, source) = tower_shape(action, &u[n])?;
    let (tgt_sup, target) = tower_shape(action, &u[n + m])?;
    let power = action.right_y().pow(m);
    let multiplicity = tgt_sup
        .iter()
        .map(|&w| {
            src_sup
                .iter()
                .map(|&v| to_u64(power.get(w, v), "multiplicity"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let inc = MultiMatrixInclusion::new(source, target, multiplicity)?;
    Ok((inc, src_sup, tgt_sup))
}

/// One block of size `Λ_{w,v}` for each pair `(v, w)` with `Λ_{w,v} > 0`,
/// ordered by source block then target block.
pub fn relative_commutant_shape(inc: &MultiMatrixInclusion) -> MultiMatrixShape {
    let mut blocks = Vec::new();
    for (v, src) in inc.source.blocks.iter().enumerate() {
        for (w, tgt) in inc.target.blocks.iter().enumerate() {
            let l = inc.multiplicity[w][v];
            if l > 0 {
                blocks.push(Block {
                    label: format!("{}|{}", src.label, tgt.label),
                    size: l,
                });
            }
        }
    }
    MultiMatrixShape { blocks }
}

/// Dimension of `{x ∈ target : [ι(a), x] = 0 for all a ∈ source}` by solving the
/// commutation equations over the rationals, one target block at a time.
///
/// Each source block `M_p` is represented by its generators `E_00` and
/// `E_{r,r±1}`. Refuses instances whose target dimension exceeds `bound`.
pub fn brute_force_commutant(inc: &MultiMatrixInclusion, bound: usize) -> Result<u64> {
    let dimension = inc.target.total_dimension();
    if dimension > BigUint::from(bound) {
        return Err(Error::BoundExceeded {
            dimension: dimension.to_usize().unwrap_or(usize::MAX),
            bound,
        });
    }
    let p: Vec<usize> = inc.source.sizes().iter().map(|&x| x as usize).collect();
    let q: Vec<usize> = inc.target.sizes().iter().map(|&x| x as usize).collect();
    let one = BigRational::one();

    let mut nullity = 0u64;
    for (j, &qj) in q.iter().enumerate() {
        // Offsets of the copies of each source block inside target block j.
        let mut copies: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
        let mut offset = 0;
        for (i, &pi) in p.iter().enumerate() {
            for _ in 0..inc.multiplicity[j][i] {
                copies[i].push(offset);
                offset += pi;
            }
        }
        // Unknown x_{ab} has index a·q_j + b.
        let var = |a: usize, b: usize| a * qj + b;
        let mut echelon = Echelon::new();
        for (i, &pi) in p.iter().enumerate() {
            if copies[i].is_empty() {
                continue;
            }
            let mut generators = vec![(0, 0)];
            for r in 0..pi.saturating_sub(1) {
                generators.push((r, r + 1));
                generators.push((r + 1, r));
            }
            for (r, s) in generators {
                // ι(E_rs) = Σ_c E_{α_c β_c}
                let alpha: Vec<usize> = copies[i].iter().map(|o| o + r).collect();
                let beta: Vec<usize> = copies[i].iter().map(|o| o + s).collect();
                for u in 0..qj {
                    for v in 0..qj {
                        let mut row = SparseRow::new();
                        for (&a, &b) in alpha.iter().zip(&beta) {
                            if u == a {
                                *row.entry(var(b, v)).or_insert_with(BigRational::zero) += &one;
                            }
                            if v == b {
                                *row.entry(var(u, a)).or_insert_with(BigRational::zero) -= &one;
                            }
                        }
                        if !row.is_empty() {
                            echelon.insert(row);
                        }
                    }
                }
            }
        }
        nullity += (qj * qj - echelon.rank()) as u64;
    }
    Ok(nullity)
}

type MaskOptions = BTreeMap<FixedBitSet, Vec<u64>>;

/// All ways to write `remaining` as `Σ_{s ≥ start} x_s p_s`, one representative
/// per set of used blocks.
fn block_options(
    p: &[u64],
    start: usize,
    remaining: u64,
    memo: &mut HashMap<(usize, u64), MaskOptions>,
) -> MaskOptions {
    if let Some(hit) = memo.get(&(start, remaining)) {
        return hit.clone();
    }
    let mut out = MaskOptions::new();
    if start == p.len() {
        if remaining == 0 {
            out.insert(FixedBitSet::with_capacity(p.len()), Vec::new());
        }
    } else {
        let mut x = 0u64;
        loop {
            let used = x * p[start];
            if used > remaining {
                break;
            }
            for (mask, rest) in block_options(p, start + 1, remaining - used, memo) {
                let mut mask = mask;
                if x > 0 {
                    mask.insert(start);
                }
                out.entry(mask).or_insert_with(|| {
                    let mut v = Vec::with_capacity(rest.len() + 1);
                    v.push(x);
                    v.extend(rest);
                    v
                });
            }
            x += 1;
        }
    }
    memo.insert((start, remaining), out.clone());
    out
}

/// Searches for a unital embedding `source → target` at the level of block
/// multiplicities. `None` when no such embedding exists.
pub fn embedding_feasible(
    source: &MultiMatrixShape,
    target: &MultiMatrixShape,
) -> Option<EmbeddingWitness> {
    let p = source.sizes();
    let n = p.len();
    let mut memo = HashMap::new();
    let mut reach: BTreeMap<FixedBitSet, Vec<Vec<u64>>> = BTreeMap::new();
    reach.insert(FixedBitSet::with_capacity(n), Vec::new());
    for t in &target.blocks {
        let options = block_options(&p, 0, t.size, &mut memo);
        if options.is_empty() {
            return None;
        }
        let mut next: BTreeMap<FixedBitSet, Vec<Vec<u64>>> = BTreeMap::new();
        for (used, rows) in &reach {
            for (mask, sol) in &options {
                let mut u = used.clone();
                u.union_with(mask);
                next.entry(u).or_insert_with(|| {
                    let mut r = rows.clone();
                    r.push(sol.clone());
                    r
                });
            }
        }
        reach = next;
    }
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    reach
        .remove(&full)
        .map(|assignment| EmbeddingWitness { assignment })
}

/// `B^Y_m = End(Y^{⊗m})` as a multi-matrix shape over the dual simples.
pub fn by_shape(action: &BimoduleAction, m: usize) -> Result<(Vec<usize>, MultiMatrixShape)> {
    let dual = action.dual_ring();
    let c = tensor_power_decomposition(dual, action.y(), m)?;
    let support: Vec<usize> = (0..c.len())
        .filter(|&s| !c.coefficients()[s].is_zero())
        .collect();
    let blocks = support
        .iter()
        .map(|&s| {
            Ok(Block {
                label: dual.label(s).to_string(),
                size: to_u64(&c.coefficients()[s], "block size")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((support, MultiMatrixShape::new(blocks)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralWitness {
    pub source: MultiMatrixShape,
    pub commutant: MultiMatrixShape,
    pub witness: EmbeddingWitness,
    /// True when the witness is `S_{(v,w),s} = (R_{e_s})_{w,v}`.
    pub canonical: bool,
}

/// Unital embedding of `B^Y_m` into the relative commutant of `A_n ⊆ A_{n+m}`.
pub fn central_capacity(
    action: &BimoduleAction,
    m: usize,
    n: usize,
    horizon: usize,
) -> Result<Option<CentralWitness>> {
    let (inc, src_sup, tgt_sup) = level_inclusion(action, n, m, horizon)?;
    let commutant = relative_commutant_shape(&inc);
    let (by_sup, source) = by_shape(action, m)?;

    // Commutant blocks are the pairs (v, w) in the order of relative_commutant_shape.
    let mut assignment = Vec::with_capacity(commutant.len());
    for (vi, &v) in src_sup.iter().enumerate() {
        for (wi, &w) in tgt_sup.iter().enumerate() {
            if inc.multiplicity[wi][vi] > 0 {
                assignment.push(
                    by_sup
                        .iter()
                        .map(|&s| to_u64(action.right(s).get(w, v), "multiplicity"))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
    }
    let canonical = EmbeddingWitness { assignment };
    if canonical.validate(&source, &commutant) {
        return Ok(Some(CentralWitness {
            source,
            commutant,
            witness: canonical,
            canonical: true,
        }));
    }
    Ok(
        embedding_feasible(&source, &commutant).map(|witness| CentralWitness {
            source,
            commutant,
            witness,
            canonical: false,
        }),
    )
}

/// Least `n ≤ horizon − m` at which [`central_capacity`] finds a witness.
pub fn least_central_level(
    action: &BimoduleAction,
    m: usize,
    horizon: usize,
) -> Result<Option<(usize, CentralWitness)>> {
    for n in 0..=horizon.saturating_sub(m) {
        if let Some(w) = central_capacity(action, m, n, horizon)? {
            return Ok(Some((n, w)));
        }
    }
    Ok(None)
}
