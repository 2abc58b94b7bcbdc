//! Reachability, strongly connected components and periods of the support
//! digraph of a nonnegative matrix.
//!
//! Edge convention: `adj[to][from]` is true when the matrix entry in row `to`,
//! column `from` is nonzero, matching `d(n+1) = M · d(n)`.

use std::collections::VecDeque;

use num_integer::Integer;

pub type Support = Vec<Vec<bool>>;

pub fn successors(adj: &Support, from: usize) -> impl Iterator<Item = usize> + '_ {
    (0..adj.len()).filter(move |&to| adj[to][from])
}

/// Breadth-first distances from `start`; `None` for unreachable vertices.
pub fn distances(adj: &Support, start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    dist[start] = Some(0);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for w in successors(adj, v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn reachable(adj: &Support, start: usize) -> Vec<bool> {
    distances(adj, start).iter().map(Option::is_some).collect()
}

/// First `(from, to)` pair with no directed path, or `None` when irreducible.
/// Pairs starting at `preferred` are tried first.
pub fn unreachable_pair(adj: &Support, preferred: usize) -> Option<(usize, usize)> {
    let n = adj.len();
    std::iter::once(preferred)
        .chain((0..n).filter(|&v| v != preferred))
        .find_map(|from| {
            let r = reachable(adj, from);
            r.iter().position(|&x| !x).map(|to| (from, to))
        })
}

pub fn is_irreducible(adj: &Support) -> bool {
    !adj.is_empty() && unreachable_pair(adj, 0).is_none()
}

/// Period of an irreducible support digraph, with the cyclic classes ordered
/// so that class 0 contains `start`.
pub fn period(adj: &Support, start: usize) -> (usize, Vec<Vec<usize>>) {
    let dist = distances(adj, start);
    let mut g = 0usize;
    for from in 0..adj.len() {
        let Some(df) = dist[from] else { continue };
        for to in successors(adj, from) {
            let dt = dist[to].expect("period requires an irreducible digraph");
            let diff = (df + 1).abs_diff(dt);
            g = g.gcd(&diff);
        }
    }
    if g == 0 {
        // Only possible for a single vertex without a loop.
        g = 1;
    }
    let mut classes = vec![Vec::new(); g];
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = d {
            classes[d % g].push(v);
        }
    }
    (g, classes)
}

/// Strongly connected components (Tarjan), each sorted, in discovery order.
pub fn sccs(adj: &Support) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a Support,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        let succ: Vec<usize> = successors(s.adj, v).collect();
        for w in succ {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }

    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

/// Connected components of the underlying undirected graph, sorted.
pub fn weak_components(adj: &Support) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for w in 0..n {
                if (adj[w][v] || adj[v][w]) && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
