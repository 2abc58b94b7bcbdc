//! Fusion rings: the Grothendieck ring of a unitary fusion category, stored as
//! sparse nonnegative structure constants `N_{ab}^c = dim Hom(c, a ⊗ b)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result, StructuralError};
use crate::graph;
use crate::matrix::{basis_vector, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    constants: BTreeMap<(usize, usize, usize), u64>,
}

impl FusionRing {
    /// Checks index ranges and label uniqueness only; the ring axioms are
    /// checked by [`FusionRing::verify`].
    pub fn new<I>(labels: Vec<String>, unit: usize, dual: Vec<usize>, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, u64)>,
    {
        let k = labels.len();
        if k == 0 {
            return Err(StructuralError::Empty("fusion ring labels".into()).into());
        }
        check_unique(&labels)?;
        check_index("unit", unit, k)?;
        if dual.len() != k {
            return Err(StructuralError::LengthMismatch {
                what: "dual".into(),
                expected: k,
                found: dual.len(),
            }
            .into());
        }
        for &d in &dual {
            check_index("dual", d, k)?;
        }
        let mut constants = BTreeMap::new();
        for (a, b, c, mult) in triples {
            for (what, i) in [("tensor.a", a), ("tensor.b", b), ("tensor.c", c)] {
                check_index(what, i, k)?;
            }
            if constants.contains_key(&(a, b, c)) {
                return Err(StructuralError::DuplicateConstant(a, b, c).into());
            }
            if mult > 0 {
                constants.insert((a, b, c), mult);
            }
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            constants,
        })
    }

    /// Builds a ring from label strings, e.g. `("tau", "tau", "1", 1)`.
    pub fn from_labels(
        labels: &[&str],
        unit: &str,
        dual: &[&str],
        table: &[(&str, &str, &str, u64)],
    ) -> Result<Self> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| -> Result<usize> {
            owned.iter().position(|l| l == s).ok_or_else(|| {
                StructuralError::IndexOutOfRange {
                    what: format!("label {s:?}"),
                    index: usize::MAX,
                    len: owned.len(),
                }
                .into()
            })
        };
        let unit = idx(unit)?;
        let dual = dual.iter().map(|d| idx(d)).collect::<Result<Vec<_>>>()?;
        let triples = table
            .iter()
            .map(|&(a, b, c, m)| Ok((idx(a)?, idx(b)?, idx(c)?, m)))
            .collect::<Result<Vec<_>>>()?;
        FusionRing::new(owned, unit, dual, triples)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual_of(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> u64 {
        self.constants.get(&(a, b, c)).copied().unwrap_or(0)
    }

    /// Nonzero structure constants in `(a, b, c)` order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        self.constants.iter().map(|(&(a, b, c), &m)| (a, b, c, m))
    }

    /// Copy with one structure constant replaced (zero removes it).
    pub fn with_constant(&self, a: usize, b: usize, c: usize, value: u64) -> Self {
        let mut out = self.clone();
        if value == 0 {
            out.constants.remove(&(a, b, c));
        } else {
            out.constants.insert((a, b, c), value);
        }
        out
    }

    /// Ring with reversed multiplication, `N'_{ab}^c = N_{ba}^c`.
    pub fn opposite(&self) -> Self {
        FusionRing {
            labels: self.labels.clone(),
            unit: self.unit,
            dual: self.dual.clone(),
            constants: self
                .constants
                .iter()
                .map(|(&(a, b, c), &m)| ((b, a, c), m))
                .collect(),
        }
    }

    /// Relabels simple `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let k = self.rank();
        let mut labels = vec![String::new(); k];
        let mut dual = vec![0; k];
        for i in 0..k {
            labels[perm[i]] = self.labels[i].clone();
            dual[perm[i]] = perm[self.dual[i]];
        }
        FusionRing {
            labels,
            unit: perm[self.unit],
            dual,
            constants: self
                .constants
                .iter()
                .map(|(&(a, b, c), &m)| ((perm[a], perm[b], perm[c]), m))
                .collect(),
        }
    }

    /// Dense table `t[a][b][c]`.
    fn dense(&self) -> Vec<Vec<Vec<u64>>> {
        let k = self.rank();
        let mut t = vec![vec![vec![0u64; k]; k]; k];
        for (&(a, b, c), &m) in &self.constants {
            t[a][b][c] = m;
        }
        t
    }

    /// Every violated ring axiom; empty iff the ring is a valid based fusion ring.
    pub fn verify(&self) -> Vec<RingViolation> {
        let k = self.rank();
        let u = self.unit;
        let t = self.dense();
        let mut out = Vec::new();

        for a in 0..k {
            if self.dual[self.dual[a]] != a {
                out.push(RingViolation::DualNotInvolution { a });
            }
        }
        if self.dual[u] != u {
            out.push(RingViolation::UnitNotSelfDual);
        }

        for b in 0..k {
            for c in 0..k {
                let expected = u64::from(b == c);
                if t[u][b][c] != expected {
                    out.push(RingViolation::LeftUnit {
                        b,
                        c,
                        found: t[u][b][c],
                    });
                }
                if t[b][u][c] != expected {
                    out.push(RingViolation::RightUnit {
                        a: b,
                        c,
                        found: t[b][u][c],
                    });
                }
            }
        }

        for a in 0..k {
            for b in 0..k {
                let expected = u64::from(b == self.dual[a]);
                if t[a][b][u] != expected {
                    out.push(RingViolation::Rigidity {
                        a,
                        b,
                        found: t[a][b][u],
                    });
                }
            }
        }

        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let x = t[a][b][c];
                    let y = t[self.dual[a]][c][b];
                    let z = t[c][self.dual[b]][a];
                    if x != y || x != z {
                        out.push(RingViolation::FrobeniusReciprocity { a, b, c });
                    }
                }
            }
        }

        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        let left: BigUint =
                            (0..k).map(|e| BigUint::from(t[a][b][e]) * t[e][c][d]).sum();
                        let right: BigUint =
                            (0..k).map(|f| BigUint::from(t[b][c][f]) * t[a][f][d]).sum();
                        if left != right {
                            out.push(RingViolation::Associativity {
                                a,
                                b,
                                c,
                                d,
                                left: left.to_string(),
                                right: right.to_string(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Left multiplication matrix of a simple, `(L_a)_{c,b} = N_{ab}^c`.
    pub fn left_matrix(&self, a: usize) -> IntMatrix {
        let k = self.rank();
        let mut m = IntMatrix::zeros(k, k);
        for (&(x, b, c), &n) in &self.constants {
            if x == a {
                m.set(c, b, BigUint::from(n));
            }
        }
        m
    }

    /// Right multiplication matrix of a simple, `(R_a)_{c,b} = N_{ba}^c`.
    pub fn right_matrix(&self, a: usize) -> IntMatrix {
        let k = self.rank();
        let mut m = IntMatrix::zeros(k, k);
        for (&(b, x, c), &n) in &self.constants {
            if x == a {
                m.set(c, b, BigUint::from(n));
            }
        }
        m
    }
}

fn check_index(what: &str, index: usize, len: usize) -> Result<()> {
    if index >= len {
        return Err(StructuralError::IndexOutOfRange {
            what: what.into(),
            index,
            len,
        }
        .into());
    }
    Ok(())
}

pub(crate) fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(StructuralError::DuplicateLabel(l.clone()).into());
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum RingViolation {
    DualNotInvolution {
        a: usize,
    },
    UnitNotSelfDual,
    LeftUnit {
        b: usize,
        c: usize,
        found: u64,
    },
    RightUnit {
        a: usize,
        c: usize,
        found: u64,
    },
    Rigidity {
        a: usize,
        b: usize,
        found: u64,
    },
    FrobeniusReciprocity {
        a: usize,
        b: usize,
        c: usize,
    },
    Associativity {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        left: String,
        right: String,
    },
}

impl RingViolation {
    /// Human-readable form using the ring's labels.
    pub fn describe(&self, ring: &FusionRing) -> String {
        let l = |i: usize| ring.label(i);
        match self {
            RingViolation::DualNotInvolution { a } => {
                format!("dual is not an involution at {}", l(*a))
            }
            RingViolation::UnitNotSelfDual => "unit is not self-dual".into(),
            RingViolation::LeftUnit { b, c, found } => {
                format!("unit law (left): N[1,{},{}] = {found}", l(*b), l(*c))
            }
            RingViolation::RightUnit { a, c, found } => {
                format!("unit law (right): N[{},1,{}] = {found}", l(*a), l(*c))
            }
            RingViolation::Rigidity { a, b, found } => {
                format!("rigidity: N[{},{},1] = {found}", l(*a), l(*b))
            }
            RingViolation::FrobeniusReciprocity { a, b, c } => format!(
                "Frobenius reciprocity fails at ({},{},{})",
                l(*a),
                l(*b),
                l(*c)
            ),
            RingViolation::Associativity {
                a,
                b,
                c,
                d,
                left,
                right,
            } => format!(
                "associativity fails at ({},{},{},{}): {left} != {right}",
                l(*a),
                l(*b),
                l(*c),
                l(*d)
            ),
        }
    }
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A (not necessarily simple) object, as multiplicities of the simples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectVec(pub Vec<BigUint>);

impl ObjectVec {
    pub fn basis(rank: usize, i: usize) -> Self {
        ObjectVec(basis_vector(rank, i))
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        ObjectVec(coeffs.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| !x.is_zero())
    }

    /// Coefficients moved along the duality involution.
    pub fn dual(&self, ring: &FusionRing) -> ObjectVec {
        let mut out = vec![BigUint::zero(); self.len()];
        for (i, x) in self.0.iter().enumerate() {
            out[ring.dual_of(i)] = x.clone();
        }
        ObjectVec(out)
    }

    pub fn permuted(&self, perm: &[usize]) -> ObjectVec {
        let mut out = vec![BigUint::zero(); self.len()];
        for (i, x) in self.0.iter().enumerate() {
            out[perm[i]] = x.clone();
        }
        ObjectVec(out)
    }

    pub fn to_u64_lossy(&self) -> Vec<u64> {
        self.0
            .iter()
            .map(|x| x.to_u64().unwrap_or(u64::MAX))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn check_object(ring: &FusionRing, y: &ObjectVec) -> Result<()> {
    if y.len() != ring.rank() {
        return Err(StructuralError::LengthMismatch {
            what: "object vector".into(),
            expected: ring.rank(),
            found: y.len(),
        }
        .into());
    }
    Ok(())
}

/// Matrix of tensoring by `y`: left gives `M_{c,b} = Σ_a y_a N_{ab}^c`,
/// right gives `M_{c,b} = Σ_a y_a N_{ba}^c`.
pub fn fusion_matrix(ring: &FusionRing, y: &ObjectVec, side: Side) -> Result<IntMatrix> {
    check_object(ring, y)?;
    let k = ring.rank();
    let mut m = IntMatrix::zeros(k, k);
    for (a, b, c, n) in ring.triples() {
        let (factor, col) = match side {
            Side::Left => (a, b),
            Side::Right => (b, a),
        };
        let coeff = &y.0[factor];
        if !coeff.is_zero() {
            *m.entry_mut(c, col) += coeff * BigUint::from(n);
        }
    }
    Ok(m)
}

/// Multiplicity vector `c(m)` of `y^{⊗m}`; `m = 0` gives the unit.
pub fn tensor_power_decomposition(ring: &FusionRing, y: &ObjectVec, m: usize) -> Result<ObjectVec> {
    Ok(tensor_powers(ring, y, m)?.pop().expect("nonempty"))
}

/// `c(0), …, c(max)`.
pub fn tensor_powers(ring: &FusionRing, y: &ObjectVec, max: usize) -> Result<Vec<ObjectVec>> {
    let n_y = fusion_matrix(ring, y, Side::Left)?;
    let mut out = Vec::with_capacity(max + 1);
    let mut c = basis_vector(ring.rank(), ring.unit());
    out.push(ObjectVec(c.clone()));
    for _ in 0..max {
        c = n_y.mul_vec(&c);
        out.push(ObjectVec(c.clone()));
    }
    Ok(out)
}

/// Wielandt's primitivity bound `(k−1)² + 1`.
pub fn wielandt_bound(k: usize) -> usize {
    let k1 = k.saturating_sub(1);
    k1 * k1 + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorOutcome {
    /// Least `n ≥ 1` with every simple a summand of `Y^{⊗n}`.
    Generates { exponent: usize },
    /// Irreducible but imprimitive: `Y^{⊗n}` always lies in one cyclic class.
    Periodic {
        period: usize,
        classes: Vec<Vec<usize>>,
    },
    /// `unreachable` never occurs in `from ⊗ Y^{⊗n}`.
    Reducible { from: usize, unreachable: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongGeneratorSearch {
    pub bound: usize,
    pub outcome: GeneratorOutcome,
}

impl StrongGeneratorSearch {
    pub fn exponent(&self) -> Option<usize> {
        match self.outcome {
            GeneratorOutcome::Generates { exponent } => Some(exponent),
            _ => None,
        }
    }
}

/// Searches `n = 1..=(k−1)²+1` for a tensor power containing every simple.
///
/// A failed search is definitive: the left fusion matrix of `y` is then
/// either reducible (witness pair) or irreducible with period > 1.
pub fn strong_generator(ring: &FusionRing, y: &ObjectVec) -> Result<StrongGeneratorSearch> {
    check_object(ring, y)?;
    if y.is_zero() {
        return Err(Error::ZeroObject);
    }
    let k = ring.rank();
    let bound = wielandt_bound(k);
    let n_y = fusion_matrix(ring, y, Side::Left)?;
    let mut c = basis_vector(k, ring.unit());
    for n in 1..=bound {
        c = n_y.mul_vec(&c);
        if c.iter().all(|x| !x.is_zero()) {
            return Ok(StrongGeneratorSearch {
                bound,
                outcome: GeneratorOutcome::Generates { exponent: n },
            });
        }
    }
    let adj = n_y.support();
    let outcome = match graph::unreachable_pair(&adj, ring.unit()) {
        Some((from, unreachable)) => GeneratorOutcome::Reducible { from, unreachable },
        None => {
            let (period, classes) = graph::period(&adj, ring.unit());
            assert!(
                period > 1,
                "primitive fusion matrix missed by the Wielandt search"
            );
            GeneratorOutcome::Periodic { period, classes }
        }
    };
    Ok(StrongGeneratorSearch { bound, outcome })
}

/// Sum of all simples with multiplicity one.
pub fn regular_object(ring: &FusionRing) -> ObjectVec {
    ObjectVec(vec![BigUint::one(); ring.rank()])
}
