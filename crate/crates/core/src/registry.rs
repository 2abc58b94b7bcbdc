//! Built-in fusion rings and example action documents.
//!
//! All tables here are standard fusion rules; every entry is re-checked by
//! [`FusionRing::verify`] in the test suites.

use crate::document::{ActionDocument, RingSection};
use crate::fusion::{FusionRing, ObjectVec};
use crate::matrix::IntMatrix;
use crate::module_cat::{BimoduleAction, ModuleData};

pub fn trivial() -> FusionRing {
    FusionRing::from_labels(&["1"], "1", &["1"], &[("1", "1", "1", 1)]).unwrap()
}

fn cyclic_label(i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => "g".into(),
        _ => format!("g{i}"),
    }
}

/// Group ring of `Z/n`, simples `1, g, g2, …`.
pub fn cyclic(n: usize) -> FusionRing {
    assert!(n >= 1);
    let labels = (0..n).map(cyclic_label).collect();
    let dual = (0..n).map(|i| (n - i) % n).collect();
    let triples = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, (a + b) % n, 1)));
    FusionRing::new(labels, 0, dual, triples).unwrap()
}

/// `τ ⊗ τ = 1 ⊕ τ`.
pub fn fibonacci() -> FusionRing {
    FusionRing::from_labels(
        &["1", "tau"],
        "1",
        &["1", "tau"],
        &[
            ("1", "1", "1", 1),
            ("1", "tau", "tau", 1),
            ("tau", "1", "tau", 1),
            ("tau", "tau", "1", 1),
            ("tau", "tau", "tau", 1),
        ],
    )
    .unwrap()
}

/// `σ ⊗ σ = 1 ⊕ ψ`, `ψ ⊗ ψ = 1`, `ψ ⊗ σ = σ ⊗ ψ = σ`.
pub fn ising() -> FusionRing {
    FusionRing::from_labels(
        &["1", "sigma", "psi"],
        "1",
        &["1", "sigma", "psi"],
        &[
            ("1", "1", "1", 1),
            ("1", "sigma", "sigma", 1),
            ("1", "psi", "psi", 1),
            ("sigma", "1", "sigma", 1),
            ("psi", "1", "psi", 1),
            ("sigma", "sigma", "1", 1),
            ("sigma", "sigma", "psi", 1),
            ("psi", "psi", "1", 1),
            ("psi", "sigma", "sigma", 1),
            ("sigma", "psi", "sigma", 1),
        ],
    )
    .unwrap()
}

/// Group ring of `S_3` (non-commutative); elements `s^i r^j`.
pub fn symmetric_group_3() -> FusionRing {
    // (i, j) ↦ s^i r^j with s r = r² s.
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    let mul = |(i1, j1): (usize, usize), (i2, j2): (usize, usize)| {
        // s^i1 r^j1 s^i2 r^j2 = s^(i1+i2) r^(j1·(−1)^i2 + j2)
        let j = if i2 == 0 { j1 + j2 } else { 3 - j1 + j2 };
        ((i1 + i2) % 2, j % 3)
    };
    let idx = |e: (usize, usize)| elems.iter().position(|&x| x == e).unwrap();
    let labels = elems
        .iter()
        .map(|&(i, j)| match (i, j) {
            (0, 0) => "e".to_string(),
            (0, j) => format!("r{j}"),
            (1, 0) => "s".to_string(),
            (1, j) => format!("sr{j}"),
            _ => unreachable!(),
        })
        .collect();
    let dual = elems
        .iter()
        .map(|&a| elems.iter().position(|&b| mul(a, b) == (0, 0)).unwrap())
        .collect();
    let mut triples = Vec::new();
    for &a in &elems {
        for &b in &elems {
            triples.push((idx(a), idx(b), idx(mul(a, b)), 1));
        }
    }
    FusionRing::new(labels, 0, dual, triples).unwrap()
}

pub fn rings() -> Vec<(&'static str, FusionRing)> {
    vec![
        ("trivial", trivial()),
        ("z2", cyclic(2)),
        ("z3", cyclic(3)),
        ("z4", cyclic(4)),
        ("z5", cyclic(5)),
        ("fibonacci", fibonacci()),
        ("ising", ising()),
    ]
}

/// `Vec` as a module over `Vec(Z/2)` (g acts trivially); its dual category is
/// `Rep(Z/2)` with simples `triv`, `sign`, both acting as the identity.
pub fn z2_on_vec(y: &[u64]) -> BimoduleAction {
    let ring = cyclic(2);
    let dual_ring = FusionRing::from_labels(
        &["triv", "sign"],
        "triv",
        &["triv", "sign"],
        &[
            ("triv", "triv", "triv", 1),
            ("triv", "sign", "sign", 1),
            ("sign", "triv", "sign", 1),
            ("sign", "sign", "triv", 1),
        ],
    )
    .unwrap();
    let module = ModuleData::new(
        vec!["m".into()],
        vec![IntMatrix::identity(1), IntMatrix::identity(1)],
    )
    .unwrap();
    BimoduleAction::new(
        ring,
        module,
        dual_ring,
        vec![IntMatrix::identity(1), IntMatrix::identity(1)],
        0,
        ObjectVec::from_u64(y),
    )
    .unwrap()
}

#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub document: ActionDocument,
}

fn regular(
    name: &'static str,
    description: &'static str,
    ring: FusionRing,
    y: &[(&str, u64)],
) -> Example {
    Example {
        name,
        description,
        document: ActionDocument::regular(
            name,
            RingSection::from_ring(&ring),
            y.iter().map(|&(l, m)| (l.to_string(), m)).collect(),
        ),
    }
}

pub fn examples() -> Vec<Example> {
    let mut out = vec![
        regular(
            "trivial_regular",
            "trivial ring acting on itself, Y = 1",
            trivial(),
            &[("1", 1)],
        ),
        regular(
            "fib_regular",
            "Fibonacci regular module, Y = tau",
            fibonacci(),
            &[("tau", 1)],
        ),
        regular(
            "ising_regular",
            "Ising regular module, Y = sigma",
            ising(),
            &[("sigma", 1)],
        ),
        regular(
            "ising_regular_1sigma",
            "Ising regular module, Y = 1 + sigma",
            ising(),
            &[("1", 1), ("sigma", 1)],
        ),
    ];
    const CYCLIC: [(&str, &str, &str, &str); 4] = [
        (
            "z2_regular_g",
            "Z/2 regular module, Y = g",
            "z2_regular_1g",
            "Z/2 regular module, Y = 1 + g",
        ),
        (
            "z3_regular_g",
            "Z/3 regular module, Y = g",
            "z3_regular_1g",
            "Z/3 regular module, Y = 1 + g",
        ),
        (
            "z4_regular_g",
            "Z/4 regular module, Y = g",
            "z4_regular_1g",
            "Z/4 regular module, Y = 1 + g",
        ),
        (
            "z5_regular_g",
            "Z/5 regular module, Y = g",
            "z5_regular_1g",
            "Z/5 regular module, Y = 1 + g",
        ),
    ];
    for (i, (g_name, g_desc, one_g_name, one_g_desc)) in CYCLIC.into_iter().enumerate() {
        let n = i + 2;
        out.push(regular(g_name, g_desc, cyclic(n), &[("g", 1)]));
        out.push(regular(
            one_g_name,
            one_g_desc,
            cyclic(n),
            &[("1", 1), ("g", 1)],
        ));
    }
    out.push(Example {
        name: "z2_vec_sign",
        description: "Vec as a Vec(Z/2)-module, dual Rep(Z/2), Y = sign",
        document: ActionDocument::from_action("z2_vec_sign", &z2_on_vec(&[0, 1])),
    });
    out.push(Example {
        name: "z2_vec_regular",
        description: "Vec as a Vec(Z/2)-module, dual Rep(Z/2), Y = triv + sign",
        document: ActionDocument::from_action("z2_vec_regular", &z2_on_vec(&[1, 1])),
    });
    out
}

pub fn example(name: &str) -> Option<Example> {
    examples().into_iter().find(|e| e.name == name)
}

/// Every registry document resolved to an action.
pub fn actions() -> Vec<(&'static str, BimoduleAction)> {
    examples()
        .into_iter()
        .map(|e| {
            (
                e.name,
                e.document.to_action().expect("registry documents resolve"),
            )
        })
        .collect()
}
