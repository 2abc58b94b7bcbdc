//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every quantity is recomputed by an oracle written here against plain
//! integer arithmetic; library results are only compared, never trusted.

#![allow(clippy::needless_range_loop)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use fusionaf::bratteli::oracle::brute_force_simple;
use fusionaf::bratteli::{decide_simplicity, BratteliDiagram};
use fusionaf::fusion::FusionRing;
use fusionaf::module_cat::{power_decomposition_holds, BimoduleAction};
use fusionaf::multimatrix::{
    brute_force_commutant, central_capacity, inclusion_between_levels, relative_commutant_shape,
    MultiMatrixInclusion, MultiMatrixShape,
};
use fusionaf::perron::fp_dimension;
use fusionaf::stability::{analyze, d_stability_note, AnalyzeOptions, NoteStatus, Verdict};
use fusionaf::{registry, verify_action, IntMatrix};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

type Mat = Vec<Vec<u128>>;
type Criterion = (usize, &'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
    /// A failure fully accounted for by [`KNOWN_FAILURES`].
    explained: bool,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
        explained: false,
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
        explained: false,
    }
}

// ---------------------------------------------------------------- oracles

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn to_mat(m: &IntMatrix) -> Mat {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| u128::try_from(x).unwrap()).collect())
        .collect()
}

fn structure(ring: &FusionRing) -> Vec<Vec<Vec<u128>>> {
    let k = ring.rank();
    (0..k)
        .map(|a| {
            (0..k)
                .map(|b| (0..k).map(|c| u128::from(ring.n(a, b, c))).collect())
                .collect()
        })
        .collect()
}

/// Coefficients of `Y^{⊗m}` by expanding one tensor factor at a time.
fn tensor_power(ring: &FusionRing, y: &[u128], m: usize) -> Vec<u128> {
    let n = structure(ring);
    let k = ring.rank();
    let mut c = vec![0u128; k];
    c[ring.unit()] = 1;
    for _ in 0..m {
        let mut next = vec![0u128; k];
        for a in 0..k {
            for b in 0..k {
                for t in 0..k {
                    next[t] += c[a] * y[b] * n[a][b][t];
                }
            }
        }
        c = next;
    }
    c
}

fn y_of(action: &BimoduleAction) -> Vec<u128> {
    action
        .y()
        .coefficients()
        .iter()
        .map(|x| u128::try_from(x).unwrap())
        .collect()
}

/// `R_Y = Σ_e Y_e R_e`.
fn right_y(action: &BimoduleAction) -> Mat {
    let k = action.module().rank();
    let mut out = vec![vec![0u128; k]; k];
    for (e, ye) in y_of(action).into_iter().enumerate() {
        let r = to_mat(action.right(e));
        for i in 0..k {
            for j in 0..k {
                out[i][j] += ye * r[i][j];
            }
        }
    }
    out
}

fn mat_pow(a: &Mat, m: usize) -> Mat {
    let k = a.len();
    let mut out: Mat = (0..k)
        .map(|i| (0..k).map(|j| u128::from(i == j)).collect())
        .collect();
    for _ in 0..m {
        out = mat_mul(&out, a);
    }
    out
}

/// The standalone certificate checker: recomputes the B^Y adjacency from the
/// dual structure constants, then checks the digest, positivity of the
/// `p`-th power and that `Y^{⊗n}` contains every simple.
fn verify_certificate(dual: &FusionRing, y: &[u128], n: usize, p: usize, digest: &str) -> bool {
    let (k, nn) = (dual.rank(), structure(dual));
    // Block s of B^Y_j sits in block t of B^Y_{j+1} with multiplicity Σ_b Y_b N_{sb}^t.
    let adj: Mat = (0..k)
        .map(|t| {
            (0..k)
                .map(|s| (0..k).map(|b| y[b] * nn[s][b][t]).sum())
                .collect()
        })
        .collect();
    let text = adj
        .iter()
        .map(|r| r.iter().map(u128::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";");
    let digest_ok = hex::encode(Sha256::digest(text.as_bytes())) == digest;
    let positive = mat_pow(&adj, p).iter().flatten().all(|&x| x > 0);
    let generates = tensor_power(dual, y, n).iter().all(|&x| x > 0);
    digest_ok && positive && generates
}

fn registry_actions() -> Vec<(&'static str, BimoduleAction)> {
    registry::actions()
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let action = registry::example("fib_regular")
        .unwrap()
        .document
        .to_action()
        .unwrap();
    let report = analyze("fib_regular", &action, &AnalyzeOptions::default()).unwrap();
    let Verdict::EquivariantlyZStable { certificate } = &report.verdict else {
        return fail(format!("verdict {:?}", report.verdict));
    };
    if (certificate.n, certificate.p) != (2, 2) {
        return fail(format!("n = {}, p = {}", certificate.n, certificate.p));
    }
    if !verify_certificate(
        action.dual_ring(),
        &y_of(&action),
        2,
        2,
        &certificate.digest,
    ) {
        return fail("certificate does not re-validate");
    }
    // m₀ ◁ τ^{⊗n} expanded copy by copy with τ⊗τ = 1⊕τ, 1⊗τ = τ.
    let (mut ones, mut taus) = (1u128, 0u128);
    let mut expected = Vec::new();
    for _ in 0..6 {
        expected.push(ones * ones + taus * taus);
        (ones, taus) = (taus, ones + taus);
    }
    let dims: Vec<u128> = report.a_algebra_dims().unwrap()[..6]
        .iter()
        .map(|d| u128::try_from(d).unwrap())
        .collect();
    if dims != expected || expected != [1, 1, 2, 5, 13, 34] {
        return fail(format!("dimensions {dims:?}, oracle {expected:?}"));
    }
    pass("n = 2, p = 2, dimensions 1,1,2,5,13,34")
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (name, action) in registry_actions() {
        let y = y_of(&action);
        let ry = right_y(&action);
        for m in 1..=8 {
            let c = tensor_power(action.dual_ring(), &y, m);
            let k = action.module().rank();
            let mut rhs = vec![vec![0u128; k]; k];
            for (s, cs) in c.iter().enumerate() {
                let r = to_mat(action.right(s));
                for i in 0..k {
                    for j in 0..k {
                        rhs[i][j] += cs * r[i][j];
                    }
                }
            }
            if mat_pow(&ry, m) != rhs || !power_decomposition_holds(&action, m).unwrap() {
                return fail(format!("{name}, m = {m}"));
            }
            checked += 1;
        }
    }
    pass(format!("{checked} (action, m) pairs"))
}

fn random_inclusion(rng: &mut ChaCha8Rng) -> MultiMatrixInclusion {
    loop {
        let ns = rng.gen_range(1..=4);
        let nt = rng.gen_range(1..=4);
        let p: Vec<u64> = (0..ns).map(|_| rng.gen_range(1..=6)).collect();
        let lambda: Vec<Vec<u64>> = (0..nt)
            .map(|_| (0..ns).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        let q: Vec<u64> = lambda
            .iter()
            .map(|r| r.iter().zip(&p).map(|(l, s)| l * s).sum())
            .collect();
        let dim: u64 = q.iter().map(|x| x * x).sum();
        if q.contains(&0) || dim > 2000 {
            continue;
        }
        let (Ok(src), Ok(tgt)) = (
            MultiMatrixShape::from_sizes(&p),
            MultiMatrixShape::from_sizes(&q),
        ) else {
            continue;
        };
        if let Ok(inc) = MultiMatrixInclusion::new(src, tgt, lambda) {
            return inc;
        }
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    for i in 0..100 {
        let inc = random_inclusion(&mut rng);
        let formula: u64 = inc.multiplicity.iter().flatten().map(|l| l * l).sum();
        let shape = relative_commutant_shape(&inc).total_dimension();
        let brute = brute_force_commutant(&inc, 2000).unwrap();
        if BigUint::from(formula) != shape || brute != formula {
            return fail(format!(
                "random inclusion {i}: formula {formula}, brute force {brute}"
            ));
        }
    }
    let mut registry_cases = 0;
    for (name, action) in registry_actions() {
        for total in 0..=6 {
            for n in 0..=total {
                let inc = inclusion_between_levels(&action, n, total - n, 6).unwrap();
                let formula: u64 = inc.multiplicity.iter().flatten().map(|l| l * l).sum();
                let bound = usize::try_from(inc.target.total_dimension()).unwrap();
                let brute = brute_force_commutant(&inc, bound).unwrap();
                if brute != formula {
                    return fail(format!(
                        "{name} n = {n} m = {}: {formula} vs {brute}",
                        total - n
                    ));
                }
                registry_cases += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 5.0 {
        return fail(format!("took {elapsed:.2} s"));
    }
    pass(format!(
        "100 random + {registry_cases} registry inclusions in {elapsed:.2} s"
    ))
}

/// One 0/1 pattern per isomorphism class of `k`-vertex digraphs with loops.
fn canonical_patterns(k: usize) -> Vec<u32> {
    let perms = permutations(k);
    let bits = k * k;
    (0..1u32 << bits)
        .filter(|&code| {
            perms.iter().all(|perm| {
                let mut image = 0u32;
                for i in 0..k {
                    for j in 0..k {
                        if code >> (i * k + j) & 1 == 1 {
                            image |= 1 << (perm[i] * k + perm[j]);
                        }
                    }
                }
                image >= code
            })
        })
        .collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let horizon = 6;
    let (mut cases, mut mismatches, mut zero_limits) = (0usize, Vec::new(), 0usize);
    for k in 1..=4usize {
        for code in canonical_patterns(k) {
            let support: Vec<Vec<bool>> = (0..k)
                .map(|i| (0..k).map(|j| code >> (i * k + j) & 1 == 1).collect())
                .collect();
            // Entries in {1, 2} on the support, two different fillings.
            for variant in 0..2u32 {
                let rows: Vec<Vec<u64>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                if support[i][j] {
                                    1 + u64::from(
                                        (variant + (i * k + j) as u32) % 2 == 1 && variant == 1,
                                    )
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                let adj = IntMatrix::from_rows(&rows).unwrap();
                for init in 1..1u32 << k {
                    let initial: Vec<bool> = (0..k).map(|v| init >> v & 1 == 1).collect();
                    let d0 = initial
                        .iter()
                        .map(|&b| BigUint::from(u8::from(b)))
                        .collect();
                    let diagram = BratteliDiagram::new(
                        (0..k).map(|v| v.to_string()).collect(),
                        adj.clone(),
                        d0,
                        horizon,
                    )
                    .unwrap();
                    let exact = decide_simplicity(&diagram).map(|s| s.is_simple()).ok();
                    let brute = brute_force_simple(&support, &initial, horizon);
                    if brute.is_none() {
                        zero_limits += 1;
                    }
                    if exact != brute {
                        mismatches
                            .push(format!("{rows:?} from {initial:?}: {exact:?} vs {brute:?}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    if mismatches.is_empty() {
        pass(format!(
            "{cases} diagrams ({zero_limits} with zero limit), 0 mismatches"
        ))
    } else {
        fail(format!(
            "{} mismatches, first: {}",
            mismatches.len(),
            mismatches[0]
        ))
    }
}

fn criterion_5() -> Outcome {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid - mid - 1.0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = BigRational::from_float(lo).unwrap();
    let e = fp_dimension(&IntMatrix::from_u64(&[&[0, 1], &[1, 1]]), 1e-10).unwrap();
    let width = e.width();
    let limit = BigRational::from_float(1e-10).unwrap();
    if e.contains(&root) && width <= limit {
        pass(format!(
            "[{}, {}] contains {lo}",
            e.lower_f64(),
            e.upper_f64()
        ))
    } else {
        fail(format!("[{}, {}] vs {lo}", e.lower_f64(), e.upper_f64()))
    }
}

fn criterion_6() -> Outcome {
    let g = registry::example("z2_regular_g")
        .unwrap()
        .document
        .to_action()
        .unwrap();
    let report = analyze("z2_regular_g", &g, &AnalyzeOptions::default()).unwrap();
    let period = match &report.strong_generator {
        fusionaf::stability::Stage::Computed(s) => match &s.outcome {
            fusionaf::fusion::GeneratorOutcome::Periodic { period, .. } => Some(*period),
            _ => None,
        },
        _ => None,
    };
    if report.verdict.is_stable() || period != Some(2) {
        return fail(format!("Y = g: {:?}, period {period:?}", report.verdict));
    }
    // Oracle: g^{⊗n} alternates between 1 and g.
    let dual = g.dual_ring();
    if (1..=4).any(|n| tensor_power(dual, &y_of(&g), n).iter().all(|&x| x > 0)) {
        return fail("oracle: some power of g contains both simples");
    }

    let one_g = registry::example("z2_regular_1g")
        .unwrap()
        .document
        .to_action()
        .unwrap();
    let report = analyze("z2_regular_1g", &one_g, &AnalyzeOptions::default()).unwrap();
    let Verdict::EquivariantlyZStable { certificate } = &report.verdict else {
        return fail(format!("Y = 1+g: {:?}", report.verdict));
    };
    if certificate.n != 1
        || !verify_certificate(
            dual,
            &y_of(&one_g),
            certificate.n,
            certificate.p,
            &certificate.digest,
        )
    {
        return fail(format!("Y = 1+g: n = {}", certificate.n));
    }
    let horizon = report.horizon;
    let report = d_stability_note(report, "M_{2^∞}").unwrap();
    if report.notes[0].status != NoteStatus::Certified {
        return fail(format!("M_2^∞ note: {}", report.notes[0].detail));
    }
    // Divisibility oracle: B^Y block sizes are 2^{n−1}(1, 1).
    for n in 1..=horizon {
        let c = tensor_power(dual, &y_of(&one_g), n);
        if c != vec![1u128 << (n - 1); 2] {
            return fail(format!("B^Y level {n}: {c:?}"));
        }
    }
    pass("Y = g periodic with period 2; Y = 1+g stable with n = 1; M_{2^∞} certified")
}

fn criterion_7() -> Outcome {
    let mut witnesses = 0;
    for (name, action) in registry_actions() {
        let y = y_of(&action);
        let ry = right_y(&action);
        for m in 0..=4 {
            let found = (0..=8).find_map(|n| {
                central_capacity(&action, m, n, n + m)
                    .unwrap()
                    .map(|w| (n, w))
            });
            let Some((n, w)) = found else {
                return fail(format!("{name}: no witness for m = {m}"));
            };
            // Recompute Λ and c(m) from scratch.
            let k = action.module().rank();
            let mut u: Vec<u128> = (0..k).map(|i| u128::from(i == action.m0())).collect();
            for _ in 0..n {
                u = (0..k)
                    .map(|i| (0..k).map(|j| ry[i][j] * u[j]).sum())
                    .collect();
            }
            let lambda = mat_pow(&ry, m);
            let blocks: Vec<u128> = (0..k)
                .flat_map(|v| (0..k).map(move |w| (v, w)))
                .filter(|&(v, _)| u[v] > 0)
                .map(|(v, w)| lambda[w][v])
                .filter(|&l| l > 0)
                .collect();
            let c: Vec<u128> = tensor_power(action.dual_ring(), &y, m)
                .into_iter()
                .filter(|&x| x > 0)
                .collect();
            let s = &w.witness.assignment;
            let unital = s.len() == blocks.len()
                && s.iter().zip(&blocks).all(|(row, &l)| {
                    row.len() == c.len()
                        && row
                            .iter()
                            .zip(&c)
                            .map(|(&x, &cs)| u128::from(x) * cs)
                            .sum::<u128>()
                            == l
                });
            let all_hit = (0..c.len()).all(|t| s.iter().any(|row| row[t] > 0));
            if !unital || !all_hit {
                return fail(format!(
                    "{name}, m = {m}, n = {n}: witness does not re-validate"
                ));
            }
            witnesses += 1;
        }
    }
    pass(format!("{witnesses} witnesses re-validated"))
}

/// Every single-constant mutation of a registry ring that `verify` accepts.
fn undetected_ring_mutations() -> (usize, Vec<String>) {
    let (mut total, mut missed) = (0, Vec::new());
    for (name, ring) in registry::rings() {
        let k = ring.rank();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let v = ring.n(a, b, c);
                    let mut values = vec![v + 1];
                    if v > 0 {
                        values.push(v - 1);
                    }
                    for new in values {
                        total += 1;
                        if ring.with_constant(a, b, c, new).verify().is_empty() {
                            missed.push(format!(
                                "{name}: N_{{{},{}}}^{} {v}->{new}",
                                ring.label(a),
                                ring.label(b),
                                ring.label(c)
                            ));
                        }
                    }
                }
            }
        }
    }
    (total, missed)
}

fn undetected_action_mutations() -> (usize, Vec<String>) {
    let (mut total, mut missed) = (0, Vec::new());
    for (name, action) in registry_actions() {
        let k = action.module().rank();
        let mut sites = Vec::new();
        for a in 0..action.ring().rank() {
            sites.push((true, a));
        }
        for e in 0..action.dual_ring().rank() {
            sites.push((false, e));
        }
        for (left, idx) in sites {
            for i in 0..k {
                for j in 0..k {
                    let base = if left {
                        action.module().left(idx).get(i, j).clone()
                    } else {
                        action.right(idx).get(i, j).clone()
                    };
                    let mut values = vec![&base + 1u32];
                    if base > BigUint::from(0u32) {
                        values.push(&base - 1u32);
                    }
                    for new in values {
                        total += 1;
                        let mut mutated = action.clone();
                        if left {
                            *mutated.left_entry_mut(idx, i, j) = new;
                        } else {
                            *mutated.right_entry_mut(idx, i, j) = new;
                        }
                        let detected = !verify_action(&mutated).is_empty()
                            || (1..=8)
                                .any(|m| !power_decomposition_holds(&mutated, m).unwrap_or(false));
                        if !detected {
                            missed.push(format!(
                                "{name}: {} {idx} ({i},{j})",
                                if left { "L" } else { "R" }
                            ));
                        }
                    }
                }
            }
        }
    }
    (total, missed)
}

/// Oracle: the mutated ring is a genuine fusion ring, checked by the matrix
/// realization `L_a L_b = Σ_c N_{ab}^c L_c` plus unit and rigidity.
fn is_valid_ring_by_matrices(ring: &FusionRing) -> bool {
    let n = structure(ring);
    let k = ring.rank();
    let left = |a: usize| -> Mat {
        (0..k)
            .map(|c| (0..k).map(|b| n[a][b][c]).collect())
            .collect()
    };
    let u = ring.unit();
    let unit_ok = (0..k).all(|b| {
        (0..k).all(|c| n[u][b][c] == u128::from(b == c) && n[b][u][c] == u128::from(b == c))
    });
    let rigid = (0..k).all(|a| (0..k).all(|b| n[a][b][u] == u128::from(b == ring.dual_of(a))));
    let assoc = (0..k).all(|a| {
        (0..k).all(|b| {
            let lhs = mat_mul(&left(a), &left(b));
            let mut rhs = vec![vec![0u128; k]; k];
            for c in 0..k {
                let lc = left(c);
                for i in 0..k {
                    for j in 0..k {
                        rhs[i][j] += n[a][b][c] * lc[i][j];
                    }
                }
            }
            lhs == rhs
        })
    });
    unit_ok && rigid && assoc
}

fn criterion_8() -> Outcome {
    let (ring_total, ring_missed) = undetected_ring_mutations();
    let (action_total, action_missed) = undetected_action_mutations();
    // Each accepted mutation is confirmed to be a genuine fusion ring.
    let mut genuine = 0;
    for (_, ring) in registry::rings() {
        let k = ring.rank();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let v = ring.n(a, b, c);
                    for new in [Some(v + 1), v.checked_sub(1)].into_iter().flatten() {
                        let m = ring.with_constant(a, b, c, new);
                        if m.verify().is_empty() {
                            genuine += usize::from(is_valid_ring_by_matrices(&m));
                        }
                    }
                }
            }
        }
    }
    let detail = format!(
        "rings: {}/{ring_total} detected; actions: {}/{action_total} detected",
        ring_total - ring_missed.len(),
        action_total - action_missed.len()
    );
    if ring_missed.is_empty() && action_missed.is_empty() {
        pass(detail)
    } else {
        let mut out = fail(format!(
            "{detail}; {genuine} of the accepted ring mutations are genuine fusion rings; undetected: {}",
            ring_missed.iter().chain(&action_missed).cloned().collect::<Vec<_>>().join("; ")
        ));
        out.explained = action_missed.is_empty() && genuine == ring_missed.len();
        out
    }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fusionaf")
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("FUSIONAF_HORIZON")
        .output()
        .unwrap()
}

fn criterion_9() -> Outcome {
    let dir = std::env::temp_dir().join(format!("fusionaf-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut problems = Vec::new();
    let mut files: Vec<PathBuf> = Vec::new();
    for e in registry::examples() {
        let path = dir.join(format!("{}.json", e.name));
        let out = run(&["examples", "emit", e.name, path.to_str().unwrap()], &dir);
        if !out.status.success() {
            problems.push(format!("emit {}", e.name));
        }
        files.push(path);
    }
    for (i, path) in files.iter().enumerate() {
        let p = path.to_str().unwrap();
        let runs: Vec<(Output, Vec<u8>, Vec<u8>)> = (0..2)
            .map(|r| {
                let md = dir.join(format!("{i}-{r}.md"));
                let js = dir.join(format!("{i}-{r}.json"));
                let out = run(
                    &[
                        "analyze",
                        p,
                        "--report",
                        md.to_str().unwrap(),
                        "--json",
                        js.to_str().unwrap(),
                    ],
                    &dir,
                );
                (
                    out,
                    std::fs::read(md).unwrap_or_default(),
                    std::fs::read(js).unwrap_or_default(),
                )
            })
            .collect();
        let (a, b) = (&runs[0], &runs[1]);
        if a.0.stdout != b.0.stdout
            || a.1 != b.1
            || a.2 != b.2
            || a.0.status.code() != b.0.status.code()
        {
            problems.push(format!("nondeterministic: {p}"));
        }
        if a.1.is_empty() || a.2.is_empty() {
            problems.push(format!("missing report files: {p}"));
        }
    }

    let code = |args: &[&str]| run(args, &dir).status.code();
    let fib = dir.join("fib_regular.json");
    let z2g = dir.join("z2_regular_g.json");
    let broken = dir.join("broken.json");
    let text = std::fs::read_to_string(&fib).unwrap().replace(
        "\"c\": \"tau\",\n        \"mult\": 1\n      },\n      {\n        \"a\": \"tau\",\n        \"b\": \"1\"",
        "\"c\": \"tau\",\n        \"mult\": 2\n      },\n      {\n        \"a\": \"tau\",\n        \"b\": \"1\"",
    );
    std::fs::write(&broken, text).unwrap();
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{ \"Y\": ").unwrap();
    let expectations: [(&[&str], i32); 7] = [
        (&["analyze", fib.to_str().unwrap()], 0),
        (&["analyze", z2g.to_str().unwrap()], 10),
        (&["analyze", broken.to_str().unwrap()], 1),
        (&["analyze", garbage.to_str().unwrap()], 1),
        (&["check", fib.to_str().unwrap()], 0),
        (&["analyze"], 2),
        (&["analyze", fib.to_str().unwrap(), "--no-such-flag"], 2),
    ];
    for (args, expected) in expectations {
        let got = code(args);
        if got != Some(expected) {
            problems.push(format!("{args:?}: exit {got:?}, expected {expected}"));
        }
    }
    let fib_out = run(&["analyze", fib.to_str().unwrap()], &dir);
    if !String::from_utf8_lossy(&fib_out.stdout).contains("strong tensor generator: n = 2") {
        problems.push("fib report lacks the generator line".into());
    }
    let _ = std::fs::remove_dir_all(&dir);
    if problems.is_empty() {
        pass(format!(
            "{} documents analyzed twice; exit codes 0/10/1/2 as expected",
            files.len()
        ))
    } else {
        fail(problems.join("; "))
    }
}

/// Criteria that cannot pass as stated, with the reason. A listed criterion
/// that starts passing is reported so the entry can be removed.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    8,
    "changing a diagonal constant N_aa^a of a self-dual simple can produce another genuine fusion ring \
     (e.g. Fibonacci with tau x tau = 1 + 2 tau), which no axiom check can reject",
)];

fn main() {
    let criteria: [Criterion; 9] = [
        (
            1,
            "Fibonacci verdict, certificate and tower dimensions",
            criterion_1,
        ),
        (2, "power-decomposition identity", criterion_2),
        (3, "relative commutant formula vs brute force", criterion_3),
        (4, "simplicity decision vs brute-force ideals", criterion_4),
        (5, "Perron-Frobenius enclosure", criterion_5),
        (6, "Z/2 verdicts and UHF note", criterion_6),
        (7, "central-capacity witnesses", criterion_7),
        (8, "axiom mutation detection", criterion_8),
        (9, "CLI determinism and exit codes", criterion_9),
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (id, title, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        let status = match (outcome.passed, known) {
            (true, None) => "PASS",
            (true, Some(_)) => {
                unexpected += 1;
                "PASS (listed as a known failure)"
            }
            (false, Some(_)) if outcome.explained => "FAIL (known)",
            (false, _) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!(
            "criterion {id}: {status} - {title} [{:.2} s] {}",
            t.elapsed().as_secs_f64(),
            outcome.detail
        );
        if let (false, true, Some((_, why))) = (outcome.passed, outcome.explained, known) {
            println!("  reason: {why}");
        }
    }
    println!("total {:.2} s", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
