use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{edge, Edge, Graph, Length};
use crate::Budget;

/// A cycle stored in canonical form: it starts at its minimum vertex and the
/// second vertex is smaller than the last one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Canonicalizes a cyclic vertex sequence. Panics on fewer than three
    /// vertices.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        assert!(vertices.len() >= 3, "a cycle needs at least 3 vertices");
        let start = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .map(|(i, _)| i)
            .unwrap();
        vertices.rotate_left(start);
        if vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    /// Edge between position `i` and `i + 1` (wrapping).
    pub fn edge_at(&self, i: usize) -> Edge {
        let l = self.0.len();
        edge(self.0[i % l], self.0[(i + 1) % l])
    }

    /// Edges in cyclic order, starting with `(v0, v1)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.0.len()).map(move |i| self.edge_at(i))
    }

    /// Checks distinctness and adjacency of consecutive vertices in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.0.len() >= 3
            && self.0.iter().all(|&v| v < g.n() && seen.insert(v))
            && self.edges().all(|(u, v)| g.has_edge(u, v))
    }
}

/// Result of a bounded cycle enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEnumeration {
    pub cycles: Vec<Cycle>,
    /// Set when the budget ran out; `cycles` may then be incomplete.
    pub truncated: bool,
}

/// Enumerates every cycle with at most `max_len` vertices exactly once.
///
/// Rooted DFS from each vertex `r` over paths whose other vertices exceed
/// `r`; a path closing back to `r` is reported only when its second vertex is
/// smaller than its last, which fixes the reflection. The budget counts path
/// extensions.
pub fn enumerate_cycles_up_to(g: &Graph, max_len: usize, mut budget: Budget) -> CycleEnumeration {
    let mut cycles = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(max_len);
    let mut truncated = false;
    for root in 0..g.n() {
        path.clear();
        path.push(root);
        on_path[root] = true;
        let ok = extend_rooted(g, root, max_len, &mut path, &mut on_path, &mut budget, &mut cycles);
        on_path[root] = false;
        if !ok {
            truncated = true;
            break;
        }
    }
    CycleEnumeration { cycles, truncated }
}

fn extend_rooted(
    g: &Graph,
    root: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    budget: &mut Budget,
    out: &mut Vec<Cycle>,
) -> bool {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == root {
            if path.len() >= 3 && path[1] < last {
                out.push(Cycle(path.clone()));
            }
            continue;
        }
        if w < root || on_path[w] || path.len() >= max_len {
            continue;
        }
        if !budget.spend() {
            return false;
        }
        path.push(w);
        on_path[w] = true;
        let ok = extend_rooted(g, root, max_len, path, on_path, budget, out);
        on_path[w] = false;
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// All 4-cycles, canonical and each reported once.
pub fn list_four_cycles(g: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    for r in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(r).iter().copied().filter(|&x| x > r).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                // common neighbours of a and b other than r, all above r
                for &w in g.neighbors(a) {
                    if w > r && w != b && g.has_edge(w, b) {
                        out.push(Cycle(vec![r, a, w, b]));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Two-colouring check.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut colour: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for &w in g.neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Length of a shortest odd cycle.
///
/// From every root a BFS finds the shortest odd closed walk through it (an
/// edge joining two vertices on the same level). Such a walk contains an odd
/// cycle no longer than itself, and a root on a shortest odd cycle realizes
/// its length, so the minimum over roots is the odd girth.
pub fn odd_girth(g: &Graph) -> Length {
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    best = best.min(2 * dist[u] + 1);
                    break 'bfs;
                }
            }
        }
    }
    if best == usize::MAX {
        Length::Infinite
    } else {
        Length::Finite(best)
    }
}

/// Length of a shortest cycle, `Infinite` for forests.
pub fn girth(g: &Graph) -> Length {
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Length::Infinite
    } else {
        Length::Finite(best)
    }
}

/// Outcome of a search for a shortest odd cycle through a fixed edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddCycleSearch {
    Found(Cycle),
    /// No odd cycle through the edge within the length bound.
    NoneWithin,
    Truncated,
}

/// Exact length of a shortest odd cycle containing the edge `uv`.
pub fn shortest_odd_cycle_through_edge(g: &Graph, u: usize, v: usize) -> Length {
    match odd_cycle_through_edge(g, u, v, g.n(), Budget::unlimited()) {
        OddCycleSearch::Found(c) => Length::Finite(c.len()),
        OddCycleSearch::NoneWithin => Length::Infinite,
        OddCycleSearch::Truncated => unreachable!("unlimited budget"),
    }
}

/// Shortest odd cycle through `uv` with at most `max_len` vertices.
///
/// A layered parity BFS from `v` in `g - uv` gives, for every vertex, the
/// shortest walk of each parity to `v`. The shortest even `u`-`v` walk is a
/// lower bound on the path part of the cycle; simple paths of increasing even
/// length are then searched by DFS pruned with the parity distances, so the
/// result is exact even when the shortest walk repeats vertices.
pub fn odd_cycle_through_edge(
    g: &Graph,
    u: usize,
    v: usize,
    max_len: usize,
    mut budget: Budget,
) -> OddCycleSearch {
    assert!(g.has_edge(u, v), "({u}, {v}) is not an edge");
    let n = g.n();
    let skip = edge(u, v);
    // parity_dist[x][p]: shortest walk from x to v in g - uv with length parity p
    let mut parity_dist = vec![[usize::MAX; 2]; n];
    let mut queue = VecDeque::new();
    parity_dist[v][0] = 0;
    queue.push_back((v, 0usize));
    while let Some((x, p)) = queue.pop_front() {
        let d = parity_dist[x][p];
        for &y in g.neighbors(x) {
            if edge(x, y) == skip {
                continue;
            }
            let q = 1 - p;
            if parity_dist[y][q] == usize::MAX {
                parity_dist[y][q] = d + 1;
                queue.push_back((y, q));
            }
        }
    }
    let lower = parity_dist[u][0];
    if lower == usize::MAX {
        return OddCycleSearch::NoneWithin;
    }
    // path with `len` edges closes a cycle of `len + 1` vertices
    let max_edges = max_len.saturating_sub(1).min(n.saturating_sub(1));
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    let mut target = lower;
    while target <= max_edges {
        path.clear();
        path.push(u);
        on_path[u] = true;
        let res = exact_path(g, v, skip, target, &parity_dist, &mut path, &mut on_path, &mut budget);
        on_path[u] = false;
        match res {
            Some(true) => return OddCycleSearch::Found(Cycle::new(path)),
            Some(false) => {}
            None => return OddCycleSearch::Truncated,
        }
        target += 2;
    }
    OddCycleSearch::NoneWithin
}

// Some(true): path found (left in `path`), Some(false): none, None: budget.
#[allow(clippy::too_many_arguments)]
fn exact_path(
    g: &Graph,
    target_vertex: usize,
    skip: Edge,
    remaining_total: usize,
    parity_dist: &[[usize; 2]],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    budget: &mut Budget,
) -> Option<bool> {
    let x = *path.last().unwrap();
    let used = path.len() - 1;
    let remaining = remaining_total - used;
    if remaining == 0 {
        return Some(x == target_vertex);
    }
    for &y in g.neighbors(x) {
        if edge(x, y) == skip || on_path[y] {
            continue;
        }
        let r = remaining - 1;
        if parity_dist[y][r % 2] > r {
            continue;
        }
        if y == target_vertex && r > 0 {
            continue;
        }
        if !budget.spend() {
            return None;
        }
        path.push(y);
        on_path[y] = true;
        let res = exact_path(g, target_vertex, skip, remaining_total, parity_dist, path, on_path, budget);
        if res == Some(true) {
            return res;
        }
        on_path[y] = false;
        path.pop();
        res?;
    }
    Some(false)
}
