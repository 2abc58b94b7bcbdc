//! Decategorified module and bimodule categories.
//!
//! Conventions: `(L_a)_{m',m} = dim Hom(m', a ▷ m)` and
//! `(R_e)_{m',m} = dim Hom(m', m ◁ e)`, both acting on column vectors indexed
//! by simple module objects. The right action composes contravariantly:
//! `R_e R_f = R_{f ⊗ e}`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result, StructuralError};
use crate::fusion::{check_unique, FusionRing, ObjectVec};
use crate::graph;
use crate::matrix::{basis_vector, dot, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleData {
    objects: Vec<String>,
    left: Vec<IntMatrix>,
}

impl ModuleData {
    /// One action matrix per simple of the acting ring, in ring order.
    pub fn new(objects: Vec<String>, left: Vec<IntMatrix>) -> Result<Self> {
        if objects.is_empty() {
            return Err(StructuralError::Empty("module objects".into()).into());
        }
        check_unique(&objects)?;
        let k = objects.len();
        for (i, m) in left.iter().enumerate() {
            check_square(&format!("module action matrix {i}"), m, k)?;
        }
        Ok(ModuleData { objects, left })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn rank(&self) -> usize {
        self.objects.len()
    }

    pub fn left_matrices(&self) -> &[IntMatrix] {
        &self.left
    }

    pub fn left(&self, a: usize) -> &IntMatrix {
        &self.left[a]
    }

    /// `L_X = Σ_a X_a L_a`.
    pub fn action_of(&self, x: &ObjectVec) -> IntMatrix {
        combine(&self.left, x, self.rank())
    }

    fn reach_graph(&self) -> graph::Support {
        let k = self.rank();
        let mut adj = vec![vec![false; k]; k];
        for l in &self.left {
            for (to, row) in l.support().into_iter().enumerate() {
                for (from, nz) in row.into_iter().enumerate() {
                    adj[to][from] |= nz;
                }
            }
        }
        adj
    }
}

fn check_square(what: &str, m: &IntMatrix, k: usize) -> Result<()> {
    if m.rows() != k || m.cols() != k {
        return Err(StructuralError::ShapeMismatch {
            what: what.into(),
            rows: k,
            cols: k,
            found_rows: m.rows(),
            found_cols: m.cols(),
        }
        .into());
    }
    Ok(())
}

fn combine(mats: &[IntMatrix], x: &ObjectVec, k: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(k, k);
    for (m, c) in mats.iter().zip(x.coefficients()) {
        out.add_scaled(m, c);
    }
    out
}

/// The full input of the stationary construction: `C`, `M`, `E = C*_M`, the
/// right action of `E`, the generating object `m₀` and `Y ∈ E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleAction {
    ring: FusionRing,
    module: ModuleData,
    dual_ring: FusionRing,
    right: Vec<IntMatrix>,
    m0: usize,
    y: ObjectVec,
}

impl BimoduleAction {
    pub fn new(
        ring: FusionRing,
        module: ModuleData,
        dual_ring: FusionRing,
        right: Vec<IntMatrix>,
        m0: usize,
        y: ObjectVec,
    ) -> Result<Self> {
        let k = module.rank();
        if module.left.len() != ring.rank() {
            return Err(StructuralError::LengthMismatch {
                what: "module action matrices".into(),
                expected: ring.rank(),
                found: module.left.len(),
            }
            .into());
        }
        if right.len() != dual_ring.rank() {
            return Err(StructuralError::LengthMismatch {
                what: "dual action matrices".into(),
                expected: dual_ring.rank(),
                found: right.len(),
            }
            .into());
        }
        for (i, m) in right.iter().enumerate() {
            check_square(&format!("dual action matrix {i}"), m, k)?;
        }
        if m0 >= k {
            return Err(StructuralError::IndexOutOfRange {
                what: "m0".into(),
                index: m0,
                len: k,
            }
            .into());
        }
        if y.len() != dual_ring.rank() {
            return Err(StructuralError::LengthMismatch {
                what: "Y".into(),
                expected: dual_ring.rank(),
                found: y.len(),
            }
            .into());
        }
        Ok(BimoduleAction {
            ring,
            module,
            dual_ring,
            right,
            m0,
            y,
        })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn module(&self) -> &ModuleData {
        &self.module
    }

    pub fn dual_ring(&self) -> &FusionRing {
        &self.dual_ring
    }

    pub fn right_matrices(&self) -> &[IntMatrix] {
        &self.right
    }

    pub fn right(&self, e: usize) -> &IntMatrix {
        &self.right[e]
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    pub fn y(&self) -> &ObjectVec {
        &self.y
    }

    pub fn with_y(mut self, y: ObjectVec) -> Result<Self> {
        if y.len() != self.dual_ring.rank() {
            return Err(StructuralError::LengthMismatch {
                what: "Y".into(),
                expected: self.dual_ring.rank(),
                found: y.len(),
            }
            .into());
        }
        self.y = y;
        Ok(self)
    }

    pub fn with_m0(mut self, m0: usize) -> Result<Self> {
        if m0 >= self.module.rank() {
            return Err(StructuralError::IndexOutOfRange {
                what: "m0".into(),
                index: m0,
                len: self.module.rank(),
            }
            .into());
        }
        self.m0 = m0;
        Ok(self)
    }

    /// Mutable access to one action matrix entry, for mutation tests.
    pub fn left_entry_mut(&mut self, a: usize, row: usize, col: usize) -> &mut BigUint {
        self.module.left[a].entry_mut(row, col)
    }

    pub fn right_entry_mut(&mut self, e: usize, row: usize, col: usize) -> &mut BigUint {
        self.right[e].entry_mut(row, col)
    }

    /// `R_Y = Σ_e Y_e R_e`.
    pub fn right_y(&self) -> IntMatrix {
        combine(&self.right, &self.y, self.module.rank())
    }

    /// `u_n = R_Y^n · e_{m₀}`: the decomposition of `m₀ ◁ Y^{⊗n}`.
    pub fn tower_vector(&self, n: usize) -> Vec<BigUint> {
        self.tower_vectors(n).pop().expect("nonempty")
    }

    /// `u_0, …, u_max`.
    pub fn tower_vectors(&self, max: usize) -> Vec<Vec<BigUint>> {
        let r = self.right_y();
        let mut u = basis_vector(self.module.rank(), self.m0);
        let mut out = Vec::with_capacity(max + 1);
        out.push(u.clone());
        for _ in 0..max {
            u = r.mul_vec(&u);
            out.push(u.clone());
        }
        out
    }

    /// Simultaneous relabelling of all three index sets.
    pub fn permuted(
        &self,
        ring_perm: &[usize],
        module_perm: &[usize],
        dual_perm: &[usize],
    ) -> Self {
        let permute_matrix = |m: &IntMatrix| {
            let k = m.rows();
            let mut out = IntMatrix::zeros(k, k);
            for r in 0..k {
                for c in 0..k {
                    out.set(module_perm[r], module_perm[c], m.get(r, c).clone());
                }
            }
            out
        };
        let mut left = vec![IntMatrix::zeros(0, 0); self.ring.rank()];
        for (a, m) in self.module.left.iter().enumerate() {
            left[ring_perm[a]] = permute_matrix(m);
        }
        let mut right = vec![IntMatrix::zeros(0, 0); self.dual_ring.rank()];
        for (e, m) in self.right.iter().enumerate() {
            right[dual_perm[e]] = permute_matrix(m);
        }
        let mut objects = vec![String::new(); self.module.rank()];
        for (i, o) in self.module.objects.iter().enumerate() {
            objects[module_perm[i]] = o.clone();
        }
        BimoduleAction {
            ring: self.ring.permuted(ring_perm),
            module: ModuleData { objects, left },
            dual_ring: self.dual_ring.permuted(dual_perm),
            right,
            m0: module_perm[self.m0],
            y: self.y.permuted(dual_perm),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ActionViolation {
    /// `L_1 ≠ I`.
    LeftUnit,
    /// `R_{1_E} ≠ I`.
    RightUnit,
    /// `L_a L_b ≠ Σ_c N_{ab}^c L_c`.
    LeftAssociativity {
        a: usize,
        b: usize,
    },
    /// `R_e R_f ≠ Σ_g N^E_{fe}^g R_g`.
    RightComposition {
        e: usize,
        f: usize,
    },
    /// `L_a R_e ≠ R_e L_a`.
    Compatibility {
        a: usize,
        e: usize,
    },
    /// `L_ā ≠ L_aᵀ`.
    LeftDuality {
        a: usize,
    },
    /// `R_ē ≠ R_eᵀ`.
    RightDuality {
        e: usize,
    },
    /// Some simple module object is not a summand of any `X ▷ m₀`.
    NotGenerating {
        unreached: usize,
    },
    ZeroY,
}

impl ActionViolation {
    pub fn describe(&self, action: &BimoduleAction) -> String {
        let c = |i: usize| action.ring.label(i).to_string();
        let e = |i: usize| action.dual_ring.label(i).to_string();
        match self {
            ActionViolation::LeftUnit => "unit law (left): L_1 is not the identity".into(),
            ActionViolation::RightUnit => "unit law (right): R_1 is not the identity".into(),
            ActionViolation::LeftAssociativity { a, b } => {
                format!("L_a L_b = Σ N L_c fails at ({},{})", c(*a), c(*b))
            }
            ActionViolation::RightComposition { e: x, f } => {
                format!("R_e R_f = Σ N[f,e,g] R_g fails at ({},{})", e(*x), e(*f))
            }
            ActionViolation::Compatibility { a, e: x } => {
                format!(
                    "bimodule compatibility L_a R_e = R_e L_a fails at ({},{})",
                    c(*a),
                    e(*x)
                )
            }
            ActionViolation::LeftDuality { a } => {
                format!("duality: L of dual({}) is not the transpose", c(*a))
            }
            ActionViolation::RightDuality { e: x } => {
                format!("duality: R of dual({}) is not the transpose", e(*x))
            }
            ActionViolation::NotGenerating { unreached } => format!(
                "m0 = {} is not generating: {} is unreachable",
                action.module.objects[action.m0], action.module.objects[*unreached]
            ),
            ActionViolation::ZeroY => "Y is the zero object".into(),
        }
    }
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Every violated bimodule law. Assumes both rings are individually valid.
pub fn verify_action(action: &BimoduleAction) -> Vec<ActionViolation> {
    let c = &action.ring;
    let e_ring = &action.dual_ring;
    let k = action.module.rank();
    let id = IntMatrix::identity(k);
    let lefts = &action.module.left;
    let rights = &action.right;
    let mut out = Vec::new();

    if lefts[c.unit()] != id {
        out.push(ActionViolation::LeftUnit);
    }
    if rights[e_ring.unit()] != id {
        out.push(ActionViolation::RightUnit);
    }
    for a in 0..c.rank() {
        for b in 0..c.rank() {
            let lhs = lefts[a].mul(&lefts[b]);
            let mut rhs = IntMatrix::zeros(k, k);
            for x in 0..c.rank() {
                rhs.add_scaled(&lefts[x], &BigUint::from(c.n(a, b, x)));
            }
            if lhs != rhs {
                out.push(ActionViolation::LeftAssociativity { a, b });
            }
        }
    }
    for e in 0..e_ring.rank() {
        for f in 0..e_ring.rank() {
            let lhs = rights[e].mul(&rights[f]);
            let mut rhs = IntMatrix::zeros(k, k);
            for g in 0..e_ring.rank() {
                rhs.add_scaled(&rights[g], &BigUint::from(e_ring.n(f, e, g)));
            }
            if lhs != rhs {
                out.push(ActionViolation::RightComposition { e, f });
            }
        }
    }
    for a in 0..c.rank() {
        for e in 0..e_ring.rank() {
            if lefts[a].mul(&rights[e]) != rights[e].mul(&lefts[a]) {
                out.push(ActionViolation::Compatibility { a, e });
            }
        }
    }
    for a in 0..c.rank() {
        if lefts[c.dual_of(a)] != lefts[a].transpose() {
            out.push(ActionViolation::LeftDuality { a });
        }
    }
    for e in 0..e_ring.rank() {
        if rights[e_ring.dual_of(e)] != rights[e].transpose() {
            out.push(ActionViolation::RightDuality { e });
        }
    }
    let reach = graph::reachable(&action.module.reach_graph(), action.m0);
    if let Some(unreached) = reach.iter().position(|&r| !r) {
        out.push(ActionViolation::NotGenerating { unreached });
    }
    if action.y.is_zero() {
        out.push(ActionViolation::ZeroY);
    }
    out
}

/// `C` as a module over itself, with the commuting right action of `E = C`
/// by right multiplication; `m₀ = 1` and `Y = 1` until replaced.
pub fn regular_module(ring: &FusionRing) -> Result<BimoduleAction> {
    let violations = ring.verify();
    if !violations.is_empty() {
        return Err(Error::InvalidRing(violations.len()));
    }
    let k = ring.rank();
    let left = (0..k).map(|a| ring.left_matrix(a)).collect();
    let right = (0..k).map(|e| ring.right_matrix(e)).collect();
    let module = ModuleData::new(ring.labels().to_vec(), left)?;
    BimoduleAction::new(
        ring.clone(),
        module,
        ring.clone(),
        right,
        ring.unit(),
        ObjectVec::basis(k, ring.unit()),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Indecomposability {
    pub indecomposable: bool,
    /// Connected components of the action graph; a single block when indecomposable.
    pub components: Vec<Vec<usize>>,
}

pub fn indecomposable(module: &ModuleData) -> Indecomposability {
    let components = graph::weak_components(&module.reach_graph());
    Indecomposability {
        indecomposable: components.len() == 1,
        components,
    }
}

/// `dim Hom(m₀ ◁ Y^{⊗n}, X ▷ m₀ ◁ Y^{⊗n}) = u_nᵀ L_X u_n`.
pub fn hom_dimension(action: &BimoduleAction, x: &ObjectVec, n: usize) -> Result<BigUint> {
    if x.len() != action.ring.rank() {
        return Err(StructuralError::LengthMismatch {
            what: "X".into(),
            expected: action.ring.rank(),
            found: x.len(),
        }
        .into());
    }
    let u = action.tower_vector(n);
    let lx = action.module.action_of(x);
    Ok(dot(&u, &lx.mul_vec(&u)))
}

/// `R_Y^m − Σ_s c_s(m) R_{e_s}`, which vanishes for every valid action.
pub fn power_decomposition_holds(action: &BimoduleAction, m: usize) -> Result<bool> {
    let lhs = action.right_y().pow(m);
    let c = crate::fusion::tensor_power_decomposition(&action.dual_ring, &action.y, m)?;
    let mut rhs = IntMatrix::zeros(action.module.rank(), action.module.rank());
    for (s, cs) in c.coefficients().iter().enumerate() {
        if !cs.is_zero() {
            rhs.add_scaled(&action.right[s], cs);
        }
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{big, sum_of_squares};
    use crate::registry;

    fn fib_tau() -> BimoduleAction {
        regular_module(&registry::fibonacci())
            .unwrap()
            .with_y(ObjectVec::basis(2, 1))
            .unwrap()
    }

    #[test]
    fn regular_fibonacci_verifies() {
        let a = fib_tau();
        assert_eq!(verify_action(&a), vec![]);
        let tau = IntMatrix::from_u64(&[&[0, 1], &[1, 1]]);
        assert_eq!(a.module().left(1), &tau);
        assert_eq!(a.right(1), &tau);
    }

    #[test]
    fn regular_z3_actions_are_cyclic() {
        let a = regular_module(&registry::cyclic(3)).unwrap();
        assert!(verify_action(&a).is_empty());
        // g ▷ b = g + b and b ◁ g = b + g coincide in an abelian group.
        let shift = IntMatrix::from_u64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(a.module().left(1), &shift);
        assert_eq!(a.right(1), &shift);
        assert_eq!(a.right(2), &shift.transpose());
    }

    #[test]
    fn trivial_regular_is_all_ones() {
        let a = regular_module(&registry::trivial()).unwrap();
        assert_eq!(a.module().left(0), &IntMatrix::identity(1));
        assert_eq!(a.right(0), &IntMatrix::identity(1));
        assert!(verify_action(&a).is_empty());
    }

    #[test]
    fn regular_module_of_nonabelian_group_ring() {
        let s3 = registry::symmetric_group_3();
        assert!(s3.verify().is_empty());
        let a = regular_module(&s3).unwrap();
        assert_eq!(verify_action(&a), vec![]);
        // With the opposite ring the composition law breaks.
        let op = BimoduleAction::new(
            s3.clone(),
            a.module().clone(),
            s3.opposite(),
            a.right_matrices().to_vec(),
            0,
            ObjectVec::basis(6, 0),
        )
        .unwrap();
        assert!(verify_action(&op)
            .iter()
            .any(|v| matches!(v, ActionViolation::RightComposition { .. })));
    }

    #[test]
    fn corrupted_z2_left_action_detected() {
        let mut a = regular_module(&registry::cyclic(2)).unwrap();
        *a.left_entry_mut(1, 0, 0) = 1u32.into();
        let v = verify_action(&a);
        assert!(v.contains(&ActionViolation::LeftAssociativity { a: 1, b: 1 }));
    }

    #[test]
    fn right_unit_violation() {
        let mut a = fib_tau();
        *a.right_entry_mut(0, 0, 1) = 1u32.into();
        assert!(verify_action(&a).contains(&ActionViolation::RightUnit));
    }

    #[test]
    fn indecomposability() {
        assert!(indecomposable(fib_tau().module()).indecomposable);
        for (_, ring) in registry::rings() {
            assert!(indecomposable(regular_module(&ring).unwrap().module()).indecomposable);
        }
        let two_copies =
            ModuleData::new(vec!["x".into(), "y".into()], vec![IntMatrix::identity(2)]).unwrap();
        let r = indecomposable(&two_copies);
        assert!(!r.indecomposable);
        assert_eq!(r.components, vec![vec![0], vec![1]]);
    }

    #[test]
    fn hom_dimension_examples() {
        let a = fib_tau();
        assert_eq!(
            hom_dimension(&a, &ObjectVec::basis(2, 0), 3).unwrap(),
            5u32.into()
        );
        assert_eq!(
            hom_dimension(&a, &ObjectVec::basis(2, 1), 2).unwrap(),
            3u32.into()
        );
        for (_, ring) in registry::rings() {
            let a = regular_module(&ring).unwrap();
            let one = ObjectVec::basis(ring.rank(), ring.unit());
            assert_eq!(hom_dimension(&a, &one, 0).unwrap(), 1u32.into());
        }
        assert!(hom_dimension(&a, &ObjectVec::basis(3, 0), 1).is_err());
    }

    #[test]
    fn tower_vectors_and_dimensions() {
        let a = fib_tau();
        let u = a.tower_vectors(5);
        assert_eq!(u[3], big(&[1, 2]));
        for (n, un) in u.iter().enumerate() {
            let one = ObjectVec::basis(2, 0);
            assert_eq!(hom_dimension(&a, &one, n).unwrap(), sum_of_squares(un));
        }
    }

    #[test]
    fn power_decomposition_on_regular_modules() {
        for (_, ring) in registry::rings() {
            let a = regular_module(&ring).unwrap();
            let k = ring.rank();
            for s in 0..k {
                let a = a.clone().with_y(ObjectVec::basis(k, s)).unwrap();
                for m in 0..=5 {
                    assert!(power_decomposition_holds(&a, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn structural_errors() {
        let fib = registry::fibonacci();
        let module = ModuleData::new(vec!["a".into()], vec![IntMatrix::identity(1)]).unwrap();
        let err = BimoduleAction::new(fib.clone(), module, fib, vec![], 0, ObjectVec::basis(2, 0))
            .unwrap_err();
        assert!(matches!(
            err,
            Error::Structural(StructuralError::LengthMismatch { .. })
        ));
    }
}
