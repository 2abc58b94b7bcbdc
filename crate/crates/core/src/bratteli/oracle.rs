//! Brute-force ideal search over an explicitly materialized diagram.
//!
//! Independent of [`super::decide_simplicity`]: no support automaton, no
//! matrix powers. Every vertex `(n, v)` with `n ≤ horizon` is expanded into its
//! hereditary cone over `horizon + 2((k−1)² + 1)` levels. The limit is simple
//! iff every cone that survives to the last level covers some full level.

/// `None` when the limit algebra is zero.
pub fn brute_force_simple(
    adjacency: &[Vec<bool>],
    initial: &[bool],
    horizon: usize,
) -> Option<bool> {
    let k = adjacency.len();
    let k1 = k.saturating_sub(1);
    let last = horizon + 2 * (k1 * k1 + 1);

    // levels[n][v]: vertex (n, v) exists.
    let mut levels: Vec<Vec<bool>> = vec![initial.to_vec()];
    for n in 0..last {
        let next = (0..k)
            .map(|w| (0..k).any(|v| levels[n][v] && adjacency[w][v]))
            .collect();
        levels.push(next);
    }
    if levels[last].iter().all(|&x| !x) {
        return None;
    }

    for n in 0..=horizon {
        for v in 0..k {
            if !levels[n][v] {
                continue;
            }
            // Cone of (n, v), level by level.
            let mut cone = vec![false; k];
            cone[v] = true;
            let mut covers = false;
            for m in n..=last {
                if cone == levels[m] {
                    covers = true;
                    break;
                }
                if m < last {
                    cone = (0..k)
                        .map(|w| (0..k).any(|u| cone[u] && adjacency[w][u]))
                        .collect();
                }
            }
            let dies = cone.iter().all(|&x| !x);
            if !covers && !dies {
                return Some(false);
            }
        }
    }
    Some(true)
}
