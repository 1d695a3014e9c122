//! Exponential ground-truth checkers for small graphs.
//!
//! A graph is *normal* when it has a family of cliques `C` and a family of
//! stable sets `I`, each covering all vertices, such that every clique of `C`
//! meets every stable set of `I`.
//!
//! Replacing a clique (or stable set) by a maximal one containing it keeps
//! both families covering and keeps every intersection, so it suffices to
//! search over maximal cliques and maximal stable sets. Given `C`, the usable
//! stable sets are exactly the maximal stable sets meeting every clique of
//! `C`; shrinking `C` only enlarges that pool. The search therefore builds `C`
//! by always covering the smallest uncovered vertex, and prunes as soon as
//! the usable stable sets stop covering the vertex set. Every valid `C`
//! contains such a branch's result, so `NotNormal` is exhaustive.
//!
//! Vertex sets are `u64` bitmasks, so graphs are limited to 64 vertices; the
//! searches are meant for a dozen or so.

use serde::{Deserialize, Serialize};

use crate::cover::{good_vertices, StarCover};
use crate::graph::{enumerate_cycles_up_to, Cycle, Graph};
use crate::Budget;

/// Largest graph the bitmask searches accept.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("graph has {0} vertices; the exhaustive oracles handle at most 64")]
    TooLarge(usize),
    #[error("graph contains the triangle {0:?}")]
    HasTriangle([usize; 3]),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
}

fn masks(g: &Graph) -> Result<Vec<u64>, OracleError> {
    if g.n() > MAX_VERTICES {
        return Err(OracleError::TooLarge(g.n()));
    }
    Ok((0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect())
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn members(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Maximal cliques of the graph given by neighbourhood masks, by
/// Bron–Kerbosch with Tomita pivoting. Sorted.
fn maximal_cliques_of(adj: &[u64]) -> Vec<u64> {
    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = members(p | x)
            .into_iter()
            .max_by_key(|&u| (p & adj[u]).count_ones())
            .unwrap();
        for v in members(p & !adj[pivot]) {
            bk(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    bk(adj, 0, full(adj.len()), 0, &mut out);
    out.sort_unstable();
    out
}

/// Maximal cliques as sorted vertex lists (isolated vertices are singleton
/// cliques).
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>, OracleError> {
    Ok(maximal_cliques_of(&masks(g)?).into_iter().map(members).collect())
}

/// Maximal stable sets as sorted vertex lists.
pub fn maximal_stable_sets(g: &Graph) -> Result<Vec<Vec<usize>>, OracleError> {
    Ok(maximal_cliques_of(&complement_masks(&masks(g)?)).into_iter().map(members).collect())
}

fn complement_masks(adj: &[u64]) -> Vec<u64> {
    let all = full(adj.len());
    adj.iter().enumerate().map(|(v, &m)| all & !m & !(1 << v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityWitness {
    pub cliques: Vec<Vec<usize>>,
    pub stables: Vec<Vec<usize>>,
}

impl NormalityWitness {
    /// Independent check of the definition: cliques are cliques, stable sets
    /// are stable, both families cover `V`, and every pair meets.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let n = g.n();
        let mut clique_cover = vec![false; n];
        let mut stable_cover = vec![false; n];
        for c in &self.cliques {
            if c.iter().any(|&v| v >= n) || !g.is_clique(c) {
                return Err(format!("{c:?} is not a clique"));
            }
            c.iter().for_each(|&v| clique_cover[v] = true);
        }
        for s in &self.stables {
            if s.iter().any(|&v| v >= n) || !g.is_stable(s) {
                return Err(format!("{s:?} is not a stable set"));
            }
            s.iter().for_each(|&v| stable_cover[v] = true);
        }
        if let Some(v) = (0..n).find(|&v| !clique_cover[v]) {
            return Err(format!("vertex {v} is in no clique"));
        }
        if let Some(v) = (0..n).find(|&v| !stable_cover[v]) {
            return Err(format!("vertex {v} is in no stable set"));
        }
        for c in &self.cliques {
            for s in &self.stables {
                if !c.iter().any(|v| s.contains(v)) {
                    return Err(format!("clique {c:?} misses stable set {s:?}"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalityVerdict {
    Normal(NormalityWitness),
    NotNormal,
    Inconclusive,
}

struct NormalSearch<'a> {
    cliques: &'a [u64],
    stables: &'a [u64],
    /// Maximal cliques through each vertex.
    through: Vec<Vec<usize>>,
    all: u64,
    budget: &'a mut Budget,
    chosen: Vec<usize>,
}

impl NormalSearch<'_> {
    /// `Some(true)` with `chosen` filled on success; `None` on budget.
    fn dfs(&mut self, covered: u64, usable: &[bool], depth_left: usize) -> Option<bool> {
        if covered == self.all {
            return Some(true);
        }
        if depth_left == 0 {
            return Some(false);
        }
        let v = (!covered & self.all).trailing_zeros() as usize;
        for i in 0..self.through[v].len() {
            let ci = self.through[v][i];
            if !self.budget.spend() {
                return None;
            }
            let c = self.cliques[ci];
            let next: Vec<bool> = usable.iter().zip(self.stables).map(|(&u, &s)| u && s & c != 0).collect();
            let reach = next.iter().zip(self.stables).filter(|(&u, _)| u).fold(0, |m, (_, &s)| m | s);
            if reach != self.all {
                continue;
            }
            self.chosen.push(ci);
            if self.dfs(covered | c, &next, depth_left - 1)? {
                return Some(true);
            }
            self.chosen.pop();
        }
        Some(false)
    }
}

/// Decides normality by searching clique covers of increasing size.
pub fn is_normal_bruteforce(g: &Graph, mut budget: Budget) -> Result<NormalityVerdict, OracleError> {
    let adj = masks(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(NormalityVerdict::Normal(NormalityWitness { cliques: vec![], stables: vec![] }));
    }
    let cliques = maximal_cliques_of(&adj);
    let stables = maximal_cliques_of(&complement_masks(&adj));
    let mut through = vec![Vec::new(); n];
    for (i, &c) in cliques.iter().enumerate() {
        for v in members(c) {
            through[v].push(i);
        }
    }
    let usable = vec![true; stables.len()];
    let mut search = NormalSearch {
        cliques: &cliques,
        stables: &stables,
        through,
        all: full(n),
        budget: &mut budget,
        chosen: Vec::new(),
    };
    for depth in 1..=n {
        match search.dfs(0, &usable, depth) {
            None => return Ok(NormalityVerdict::Inconclusive),
            Some(false) => continue,
            Some(true) => {
                let chosen: Vec<u64> = search.chosen.iter().map(|&i| cliques[i]).collect();
                // keep only stable sets that add a new vertex
                let mut covered = 0;
                let mut picked = Vec::new();
                for &s in &stables {
                    if chosen.iter().all(|&c| c & s != 0) && s & !covered != 0 {
                        covered |= s;
                        picked.push(members(s));
                    }
                }
                let witness = NormalityWitness {
                    cliques: chosen.into_iter().map(members).collect(),
                    stables: picked,
                };
                debug_assert_eq!(witness.validate(g), Ok(()));
                return Ok(NormalityVerdict::Normal(witness));
            }
        }
    }
    Ok(NormalityVerdict::NotNormal)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NiceCoverVerdict {
    Yes(StarCover),
    No,
    Inconclusive,
}

fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for (u, v) in g.edges() {
        if let Some(&w) = g.neighbors(u).iter().find(|&&w| w > v && g.has_edge(v, w)) {
            return Some([u, v, w]);
        }
    }
    None
}

/// Searches all star covers of a triangle-free graph for a nice one.
///
/// Edges are decided one at a time in lexicographic order; a branch is cut
/// as soon as two vertices of cover degree at least two are joined by a cover
/// edge (that never heals), or a vertex has all its edges decided without a
/// cover edge. Each complete star cover is tested against every odd cycle.
pub fn has_nice_star_cover_bruteforce(g: &Graph, mut budget: Budget) -> Result<NiceCoverVerdict, OracleError> {
    if let Some(t) = find_triangle(g) {
        return Err(OracleError::HasTriangle(t));
    }
    let enumeration = enumerate_cycles_up_to(g, g.n().max(3), budget);
    if enumeration.truncated {
        return Ok(NiceCoverVerdict::Inconclusive);
    }
    let odd: Vec<Cycle> = enumeration.cycles.into_iter().filter(Cycle::is_odd).collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // index of the last edge at each vertex, to detect uncovered vertices early
    let mut last_edge = vec![None; g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        last_edge[u] = Some(i);
        last_edge[v] = Some(i);
    }

    struct State<'a> {
        edges: &'a [(usize, usize)],
        last_edge: &'a [Option<usize>],
        odd: &'a [Cycle],
        deg: Vec<usize>,
        cover: StarCover,
    }

    fn is_star(s: &State, u: usize, v: usize) -> bool {
        // after adding uv: uv itself and every cover edge at u or v must keep
        // an endpoint of cover degree one
        let ok = |a: usize, b: usize| s.deg[a] == 1 || s.deg[b] == 1;
        ok(u, v)
            && s.cover.edges().filter(|&(a, b)| a == u || b == u || a == v || b == v).all(|(a, b)| ok(a, b))
    }

    fn rec(s: &mut State, i: usize, budget: &mut Budget) -> Option<bool> {
        if !budget.spend() {
            return None;
        }
        if i == s.edges.len() {
            return Some(s.odd.iter().all(|q| good_vertices(q, &s.cover).len() >= 2));
        }
        let (u, v) = s.edges[i];
        let closes = |s: &State, x: usize| s.last_edge[x] == Some(i) && s.deg[x] == 0;
        // take uv
        s.deg[u] += 1;
        s.deg[v] += 1;
        s.cover.insert(u, v);
        if is_star(s, u, v) && rec(s, i + 1, budget)? {
            return Some(true);
        }
        s.cover.remove(u, v);
        s.deg[u] -= 1;
        s.deg[v] -= 1;
        // skip uv
        if !closes(s, u) && !closes(s, v) && rec(s, i + 1, budget)? {
            return Some(true);
        }
        Some(false)
    }

    let mut state = State {
        edges: &edges,
        last_edge: &last_edge,
        odd: &odd,
        deg: vec![0; g.n()],
        cover: StarCover::new(),
    };
    Ok(match rec(&mut state, 0, &mut budget) {
        None => NiceCoverVerdict::Inconclusive,
        Some(true) => NiceCoverVerdict::Yes(state.cover),
        Some(false) => NiceCoverVerdict::No,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConsistencyVerdict {
    /// Both sides agree; `normal` is the common answer.
    Consistent { normal: bool },
    Violation { first: bool, second: bool },
    Inconclusive,
}

fn normal_flag(v: &NormalityVerdict) -> Option<bool> {
    match v {
        NormalityVerdict::Normal(_) => Some(true),
        NormalityVerdict::NotNormal => Some(false),
        NormalityVerdict::Inconclusive => None,
    }
}

fn compare(a: Option<bool>, b: Option<bool>) -> ConsistencyVerdict {
    match (a, b) {
        (Some(a), Some(b)) if a == b => ConsistencyVerdict::Consistent { normal: a },
        (Some(first), Some(second)) => ConsistencyVerdict::Violation { first, second },
        _ => ConsistencyVerdict::Inconclusive,
    }
}

/// Normality of `g` against normality of its complement, each with its own
/// copy of `budget`.
pub fn check_complement_closure(g: &Graph, budget: Budget) -> Result<ConsistencyVerdict, OracleError> {
    let a = is_normal_bruteforce(g, budget)?;
    let b = is_normal_bruteforce(&g.complement(), budget)?;
    Ok(compare(normal_flag(&a), normal_flag(&b)))
}

/// Normality against existence of a nice star cover, for triangle-free
/// graphs without isolated vertices.
pub fn check_nice_cover_equivalence(g: &Graph, budget: Budget) -> Result<ConsistencyVerdict, OracleError> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(OracleError::IsolatedVertex(v));
    }
    let nice = match has_nice_star_cover_bruteforce(g, budget)? {
        NiceCoverVerdict::Yes(_) => Some(true),
        NiceCoverVerdict::No => Some(false),
        NiceCoverVerdict::Inconclusive => None,
    };
    let normal = normal_flag(&is_normal_bruteforce(g, budget)?);
    Ok(compare(normal, nice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn cliques_and_stables() {
        let c5 = cycle(5);
        assert_eq!(maximal_cliques(&c5).unwrap(), vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 4], vec![3, 4]]);
        let st = maximal_stable_sets(&c5).unwrap();
        assert_eq!(st.len(), 5);
        assert!(st.iter().all(|s| s.len() == 2 && c5.is_stable(s)));
        assert_eq!(maximal_cliques(&complete(4)).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(maximal_cliques(&Graph::empty(2)).unwrap(), vec![vec![0], vec![1]]);
    }

    /// Brute force over all subsets: a set is a maximal clique iff it is a
    /// clique and no outside vertex extends it.
    #[test]
    fn bron_kerbosch_matches_subset_oracle() {
        for g in [petersen(), cycle(7).complement(), complete_bipartite(2, 3), path(5)] {
            let n = g.n();
            let mut expected = Vec::new();
            for m in 1u64..1 << n {
                let vs = members(m);
                if g.is_clique(&vs) && (0..n).all(|w| vs.contains(&w) || !vs.iter().all(|&v| g.has_edge(v, w))) {
                    expected.push(vs);
                }
            }
            let mut got = maximal_cliques(&g).unwrap();
            got.sort();
            expected.sort();
            assert_eq!(got, expected);
        }
    }

    fn normal(g: &Graph) -> bool {
        match is_normal_bruteforce(g, Budget::unlimited()).unwrap() {
            NormalityVerdict::Normal(w) => {
                assert_eq!(w.validate(g), Ok(()));
                true
            }
            NormalityVerdict::NotNormal => false,
            NormalityVerdict::Inconclusive => unreachable!(),
        }
    }

    #[test]
    fn normality_examples() {
        assert!(!normal(&cycle(5)));
        assert!(!normal(&cycle(7)));
        assert!(normal(&cycle(9)));
        assert!(normal(&complete_bipartite(3, 3)));
        assert!(normal(&Graph::empty(3)));
        match is_normal_bruteforce(&complete(4), Budget::unlimited()).unwrap() {
            NormalityVerdict::Normal(w) => {
                assert_eq!(w.cliques, vec![vec![0, 1, 2, 3]]);
                assert_eq!(w.stables, vec![vec![0], vec![1], vec![2], vec![3]]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(is_normal_bruteforce(&cycle(9), Budget::new(3)).unwrap(), NormalityVerdict::Inconclusive);
    }

    #[test]
    fn witness_validator_rejects_bad_witnesses() {
        let g = cycle(5);
        let w = NormalityWitness { cliques: vec![vec![0, 2]], stables: vec![vec![0, 1, 2, 3, 4]] };
        assert!(w.validate(&g).unwrap_err().contains("not a clique"));
        let w = NormalityWitness { cliques: vec![vec![0, 1]], stables: vec![vec![0, 2]] };
        assert!(w.validate(&g).unwrap_err().contains("in no clique"));
        let w = NormalityWitness {
            cliques: vec![vec![0, 1], vec![2, 3], vec![3, 4]],
            stables: vec![vec![0, 2], vec![1, 3], vec![1, 4]],
        };
        assert!(w.validate(&g).unwrap_err().contains("misses"));
    }

    #[test]
    fn nice_cover_examples() {
        assert_eq!(has_nice_star_cover_bruteforce(&cycle(5), Budget::unlimited()).unwrap(), NiceCoverVerdict::No);
        match has_nice_star_cover_bruteforce(&cycle(9), Budget::unlimited()).unwrap() {
            NiceCoverVerdict::Yes(c) => assert_eq!(c.validate(&cycle(9)), Ok(())),
            other => panic!("{other:?}"),
        }
        match has_nice_star_cover_bruteforce(&star(4), Budget::unlimited()).unwrap() {
            NiceCoverVerdict::Yes(c) => assert_eq!(c.len(), 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            has_nice_star_cover_bruteforce(&complete(4), Budget::unlimited()),
            Err(OracleError::HasTriangle([0, 1, 2]))
        );
    }

    #[test]
    fn consistency_checks() {
        let b = Budget::unlimited();
        assert_eq!(check_complement_closure(&cycle(5), b), Ok(ConsistencyVerdict::Consistent { normal: false }));
        assert_eq!(check_complement_closure(&complete(4), b), Ok(ConsistencyVerdict::Consistent { normal: true }));
        assert_eq!(check_complement_closure(&cycle(7), b), Ok(ConsistencyVerdict::Consistent { normal: false }));
        assert_eq!(check_nice_cover_equivalence(&cycle(5), b), Ok(ConsistencyVerdict::Consistent { normal: false }));
        assert_eq!(check_nice_cover_equivalence(&cycle(9), b), Ok(ConsistencyVerdict::Consistent { normal: true }));
        assert_eq!(check_nice_cover_equivalence(&cycle(6), b), Ok(ConsistencyVerdict::Consistent { normal: true }));
        assert_eq!(
            check_nice_cover_equivalence(&Graph::from_edges(3, [(0, 1)]).unwrap(), b),
            Err(OracleError::IsolatedVertex(2))
        );
    }
}
