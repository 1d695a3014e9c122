//! Phase-by-phase star cover construction.
//!
//! For `s = Δ(G)` down to `3`:
//!
//! 1. `F_s`: an inclusion-maximal set of vertex-disjoint `s`-stars of the
//!    residual graph `G_s`, never creating a new isolated vertex. Centres are
//!    scanned in increasing index order.
//! 2. `U_s'`: vertices of degree one in `G_s' = G_s - V(F_s)` whose neighbour
//!    has degree `s`, or is adjacent to a vertex of degree `s`. `U_s''` are
//!    their neighbours. The `U_s'`-`U_s''` edges join the cover and
//!    `G_{s-1} = G_s' - U_s`.
//!
//! The residual degree must then be at most `s - 1`; this is asserted after
//! every phase. In a 4-cycle-free graph it always holds: a vertex `v` of
//! degree `s` left in `G_s'` was skipped because its star would isolate some
//! `w`, and without 4-cycles such a `w` has a single neighbour, inside
//! `N(v)`, so `w` lands in `U_s'` and `v` loses that neighbour.
//!
//! What remains, `G_2`, has maximum degree two. Its isolated vertices `V_2`
//! are attached to a `U_s''` neighbour with `s` as small as possible, then a
//! rewrite pass removes every alternating chain `U_s''-V_2 / U_s''-V_2 /
//! U_s''-V_2` at a single phase by moving the middle attachment. Finally the
//! paths and cycles of `G'' = G_2 - V_2` are covered by 2-stars and at most two
//! single edges each.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CoverViolation, StarCover};
use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexLabel {
    FCenter(usize),
    FLeaf(usize),
    UPrime(usize),
    UDoublePrime(usize),
    V2,
    PathCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeStep {
    StarEdge(usize),
    UEdge(usize),
    V2Edge(usize),
    PathCycleEdge,
    /// A `V_2` attachment moved by the rewrite pass.
    RewriteEdge(usize),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::FCenter(s) => write!(f, "FCenter({s})"),
            VertexLabel::FLeaf(s) => write!(f, "FLeaf({s})"),
            VertexLabel::UPrime(s) => write!(f, "UPrime({s})"),
            VertexLabel::UDoublePrime(s) => write!(f, "UDoublePrime({s})"),
            VertexLabel::V2 => f.write_str("V2"),
            VertexLabel::PathCycle => f.write_str("PathCycle"),
        }
    }
}

impl fmt::Display for EdgeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeStep::StarEdge(s) => write!(f, "StarEdge({s})"),
            EdgeStep::UEdge(s) => write!(f, "UEdge({s})"),
            EdgeStep::V2Edge(s) => write!(f, "V2Edge({s})"),
            EdgeStep::PathCycleEdge => f.write_str("PathCycleEdge"),
            EdgeStep::RewriteEdge(s) => write!(f, "RewriteEdge({s})"),
        }
    }
}

/// Sizes of the sets produced in one phase `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSummary {
    pub s: usize,
    pub stars: usize,
    pub u_prime: usize,
    pub u_double_prime: usize,
    /// Maximum degree of `G_{s-1}`; at most `s - 1`.
    pub residual_max_degree: usize,
}

/// Provenance of every covered vertex and every cover edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverTrace {
    /// Maximum degree of the input.
    pub k: usize,
    pub vertex_label: Vec<Option<VertexLabel>>,
    pub edge_step: BTreeMap<Edge, EdgeStep>,
    pub phases: Vec<PhaseSummary>,
    /// Number of attachments moved by the rewrite pass.
    pub rewrites: usize,
}

impl CoverTrace {
    pub fn label(&self, v: usize) -> Option<VertexLabel> {
        self.vertex_label.get(v).copied().flatten()
    }

    pub fn step(&self, u: usize, v: usize) -> Option<EdgeStep> {
        self.edge_step.get(&edge(u, v)).copied()
    }

    /// JSON object `{"k", "vertices": {v: label}, "edges": {"u-v": step}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: serde_json::Map<String, serde_json::Value> = self
            .vertex_label
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.map(|l| (v.to_string(), l.to_string().into())))
            .collect();
        let edges: serde_json::Map<String, serde_json::Value> = self
            .edge_step
            .iter()
            .map(|(&(u, v), s)| (format!("{u}-{v}"), s.to_string().into()))
            .collect();
        serde_json::json!({
            "k": self.k,
            "vertices": vertices,
            "edges": edges,
            "phases": self.phases,
            "rewrites": self.rewrites,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("construction defect: after phase {phase} vertex {vertex} has residual degree {degree} (input has a 4-cycle?)")]
    DegreeDrop { phase: usize, vertex: usize, degree: usize },
    #[error("construction defect: V2 vertex {0} has no U'' neighbour")]
    V2WithoutAttachment(usize),
    #[error("construction defect: V2 rewrite did not settle after {0} moves")]
    RewriteDidNotSettle(usize),
    #[error("construction defect: step-6 component at {0} covered with {1} single edges")]
    TooManySingles(usize, usize),
    #[error("construction defect: {0}")]
    InvalidCover(CoverViolation),
}

struct Residual<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl<'g> Residual<'g> {
    fn new(g: &'g Graph) -> Self {
        Residual {
            g,
            alive: vec![true; g.n()],
            deg: (0..g.n()).map(|v| g.degree(v)).collect(),
        }
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }

    fn live_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).iter().copied().filter(move |&w| self.alive[w])
    }

    fn max_degree(&self) -> (usize, usize) {
        (0..self.g.n())
            .filter(|&v| self.alive[v])
            .map(|v| (self.deg[v], v))
            .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)))
            .unwrap_or((0, 0))
    }
}

struct Builder<'g> {
    g: &'g Graph,
    res: Residual<'g>,
    label: Vec<Option<VertexLabel>>,
    steps: BTreeMap<Edge, EdgeStep>,
    phases: Vec<PhaseSummary>,
}

/// Runs the construction on a graph without isolated vertices.
pub fn build_star_cover(g: &Graph) -> Result<(StarCover, CoverTrace), CoverError> {
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(CoverError::IsolatedVertex(v));
    }
    let k = g.max_degree();
    let mut b = Builder {
        g,
        res: Residual::new(g),
        label: vec![None; g.n()],
        steps: BTreeMap::new(),
        phases: Vec::new(),
    };
    for s in (3..=k).rev() {
        b.phase(s)?;
    }
    let mut attach = b.attach_v2()?;
    let rewrites = b.rewrite_v2(&mut attach)?;
    for (&x, &(a, s, moved)) in &attach {
        let step = if moved { EdgeStep::RewriteEdge(s) } else { EdgeStep::V2Edge(s) };
        b.steps.insert(edge(x, a), step);
    }
    b.cover_paths_and_cycles()?;

    let cover = StarCover {
        edges: b.steps.keys().copied().collect(),
    };
    cover.validate(g).map_err(CoverError::InvalidCover)?;
    let trace = CoverTrace {
        k,
        vertex_label: b.label,
        edge_step: b.steps,
        phases: b.phases,
        rewrites,
    };
    Ok((cover, trace))
}

/// Runs the construction on the subgraph spanned by the vertices of positive
/// degree. Isolated vertices get no label and no cover edge, which is all a
/// star cover asks of them.
pub fn build_star_cover_ignoring_isolated(g: &Graph) -> Result<(StarCover, CoverTrace), CoverError> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    if keep.len() == g.n() {
        return build_star_cover(g);
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let sub = Graph::from_edges(keep.len(), g.edges().map(|(u, v)| (index[u], index[v]))).expect("relabelled subgraph");
    let (cover, trace) = build_star_cover(&sub).map_err(|e| match e {
        CoverError::IsolatedVertex(v) => CoverError::IsolatedVertex(keep[v]),
        CoverError::DegreeDrop { phase, vertex, degree } => CoverError::DegreeDrop { phase, vertex: keep[vertex], degree },
        CoverError::V2WithoutAttachment(v) => CoverError::V2WithoutAttachment(keep[v]),
        CoverError::TooManySingles(v, c) => CoverError::TooManySingles(keep[v], c),
        other => other,
    })?;
    let mut vertex_label = vec![None; g.n()];
    for (i, l) in trace.vertex_label.into_iter().enumerate() {
        vertex_label[keep[i]] = l;
    }
    let edge_step = trace.edge_step.into_iter().map(|((u, v), st)| (edge(keep[u], keep[v]), st)).collect();
    let cover = StarCover::from_edges(cover.edges().map(|(u, v)| (keep[u], keep[v])));
    cover.validate(g).map_err(CoverError::InvalidCover)?;
    Ok((cover, CoverTrace { vertex_label, edge_step, ..trace }))
}

impl Builder<'_> {
    fn phase(&mut self, s: usize) -> Result<(), CoverError> {
        let g = self.g;
        let n = g.n();

        // F_s
        let mut stars = 0;
        for v in 0..n {
            if !self.res.alive[v] || self.res.deg[v] != s {
                continue;
            }
            let leaves: Vec<usize> = self.res.live_neighbors(v).collect();
            let in_star = |x: usize| x == v || leaves.contains(&x);
            let isolates = leaves.iter().any(|&l| {
                self.res.live_neighbors(l).any(|w| !in_star(w) && self.res.live_neighbors(w).all(in_star))
            });
            if isolates {
                continue;
            }
            self.label[v] = Some(VertexLabel::FCenter(s));
            for &l in &leaves {
                self.label[l] = Some(VertexLabel::FLeaf(s));
                self.steps.insert(edge(v, l), EdgeStep::StarEdge(s));
            }
            self.res.remove(v);
            for &l in &leaves {
                self.res.remove(l);
            }
            stars += 1;
        }

        // U_s' and U_s''
        let heavy = |r: &Residual, v: usize| r.alive[v] && r.deg[v] == s;
        let mut pendant = Vec::new();
        for w in 0..n {
            if !self.res.alive[w] || self.res.deg[w] != 1 {
                continue;
            }
            let a = self.res.live_neighbors(w).next().unwrap();
            if heavy(&self.res, a) || self.res.live_neighbors(a).any(|x| heavy(&self.res, x)) {
                pendant.push((w, a));
            }
        }
        let mut centres: Vec<usize> = pendant.iter().map(|&(_, a)| a).collect();
        centres.sort_unstable();
        centres.dedup();
        for &(w, a) in &pendant {
            self.label[w] = Some(VertexLabel::UPrime(s));
            self.label[a] = Some(VertexLabel::UDoublePrime(s));
            self.steps.insert(edge(w, a), EdgeStep::UEdge(s));
        }
        for &(w, _) in &pendant {
            self.res.remove(w);
        }
        for &a in &centres {
            self.res.remove(a);
        }

        let (max_deg, vertex) = self.res.max_degree();
        if max_deg > s - 1 {
            return Err(CoverError::DegreeDrop {
                phase: s,
                vertex,
                degree: max_deg,
            });
        }
        self.phases.push(PhaseSummary {
            s,
            stars,
            u_prime: pendant.len(),
            u_double_prime: centres.len(),
            residual_max_degree: max_deg,
        });
        Ok(())
    }

    fn double_prime_phase(&self, v: usize) -> Option<usize> {
        match self.label[v] {
            Some(VertexLabel::UDoublePrime(s)) => Some(s),
            _ => None,
        }
    }

    /// Attaches each isolated vertex of `G_2` to the `U''` neighbour of the
    /// smallest phase, ties by index. Returns `x -> (a, s, moved)`.
    fn attach_v2(&mut self) -> Result<BTreeMap<usize, (usize, usize, bool)>, CoverError> {
        let mut attach = BTreeMap::new();
        for x in 0..self.g.n() {
            if !self.res.alive[x] || self.res.deg[x] != 0 {
                continue;
            }
            self.label[x] = Some(VertexLabel::V2);
            let best = self
                .g
                .neighbors(x)
                .iter()
                .filter_map(|&a| self.double_prime_phase(a).map(|s| (s, a)))
                .min()
                .ok_or(CoverError::V2WithoutAttachment(x))?;
            attach.insert(x, (best.1, best.0, false));
        }
        for &x in attach.keys() {
            self.res.remove(x);
        }
        Ok(attach)
    }

    /// Finds an alternating chain `a1 -C- x1 - a2 -C- x2 - a3 -C- x3` with all
    /// `a_i` in `U_s''` for one `s` and all `x_i` in `V_2`. Returns `(x2, a3)`.
    fn find_chain(&self, attach: &BTreeMap<usize, (usize, usize, bool)>) -> Option<(usize, usize)> {
        let mut attached_to: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&x, &(a, _, _)) in attach {
            attached_to.entry(a).or_default().push(x);
        }
        for (&x2, &(a2, s, _)) in attach {
            let firsts = self.g.neighbors(a2).iter().filter_map(|&x1| {
                let &(a1, s1, _) = attach.get(&x1)?;
                (x1 != x2 && a1 != a2 && s1 == s).then_some((x1, a1))
            });
            for (x1, a1) in firsts {
                for &a3 in self.g.neighbors(x2) {
                    if a3 == a2 || a3 == a1 || self.double_prime_phase(a3) != Some(s) {
                        continue;
                    }
                    let has_third = attached_to.get(&a3).is_some_and(|xs| xs.iter().any(|&x3| x3 != x1));
                    if has_third {
                        return Some((x2, a3));
                    }
                }
            }
        }
        None
    }

    fn rewrite_v2(&mut self, attach: &mut BTreeMap<usize, (usize, usize, bool)>) -> Result<usize, CoverError> {
        let limit = 4 * attach.len() + 16;
        let mut moves = 0;
        while let Some((x2, a3)) = self.find_chain(attach) {
            if moves == limit {
                return Err(CoverError::RewriteDidNotSettle(moves));
            }
            let entry = attach.get_mut(&x2).unwrap();
            entry.0 = a3;
            entry.2 = true;
            moves += 1;
        }
        Ok(moves)
    }

    /// Covers each path or cycle of `G''` by 2-stars from its lower-index end
    /// (cycles are cut at their minimum vertex) and one or two single edges at
    /// the far end.
    fn cover_paths_and_cycles(&mut self) -> Result<(), CoverError> {
        let n = self.g.n();
        let mut seen = vec![false; n];
        for start in 0..n {
            if !self.res.alive[start] || seen[start] {
                continue;
            }
            // collect the component
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for w in self.res.live_neighbors(v).collect::<Vec<_>>() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            let first = comp
                .iter()
                .copied()
                .filter(|&v| self.res.deg[v] < 2)
                .min()
                .unwrap_or_else(|| *comp.iter().min().unwrap());
            let order = self.walk(first, comp.len());
            let p = order.len();
            let (twos, singles) = match p % 3 {
                0 => (p / 3, 0),
                2 => (p / 3, 1),
                _ => (p / 3 - 1, 2),
            };
            if singles > 2 || 3 * twos + 2 * singles != p {
                return Err(CoverError::TooManySingles(first, singles));
            }
            for t in 0..twos {
                let c = order[3 * t + 1];
                self.steps.insert(edge(order[3 * t], c), EdgeStep::PathCycleEdge);
                self.steps.insert(edge(c, order[3 * t + 2]), EdgeStep::PathCycleEdge);
            }
            for j in 0..singles {
                let at = 3 * twos + 2 * j;
                self.steps.insert(edge(order[at], order[at + 1]), EdgeStep::PathCycleEdge);
            }
            for &v in &order {
                self.label[v] = Some(VertexLabel::PathCycle);
            }
        }
        Ok(())
    }

    /// Walks a path or cycle of the degree-<=2 residual from `first`, moving
    /// first towards the smaller neighbour.
    fn walk(&self, first: usize, size: usize) -> Vec<usize> {
        let mut order = vec![first];
        let mut prev = usize::MAX;
        let mut cur = first;
        while order.len() < size {
            let next = self
                .res
                .live_neighbors(cur)
                .filter(|&w| w != prev && w != first)
                .min()
                .expect("component is a path or cycle");
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn labels_of(t: &CoverTrace) -> Vec<VertexLabel> {
        t.vertex_label.iter().map(|l| l.unwrap()).collect()
    }

    #[test]
    fn single_star() {
        let (c, t) = build_star_cover(&star(3)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(
            labels_of(&t),
            vec![VertexLabel::FCenter(3), VertexLabel::FLeaf(3), VertexLabel::FLeaf(3), VertexLabel::FLeaf(3)]
        );
        assert!(t.edge_step.values().all(|&s| s == EdgeStep::StarEdge(3)));
    }

    #[test]
    fn nine_cycle_gets_three_two_stars() {
        let g = cycle(9);
        let (c, t) = build_star_cover(&g).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]);
        assert!(t.phases.is_empty());
        assert!(labels_of(&t).iter().all(|&l| l == VertexLabel::PathCycle));
    }

    #[test]
    fn path_remainders() {
        for p in 2..12 {
            let g = path(p);
            let (c, _) = build_star_cover(&g).unwrap();
            assert_eq!(c.validate(&g), Ok(()), "P{p}");
            let singles = c.stars(p).values().filter(|l| l.len() == 1).count();
            assert!(singles <= 2);
        }
        let (c, _) = build_star_cover(&path(4)).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn petersen_has_three_stars() {
        let g = petersen();
        let (c, t) = build_star_cover(&g).unwrap();
        assert_eq!(c.validate(&g), Ok(()));
        assert!(t.phases[0].stars > 0);
        assert!(t.phases.iter().all(|p| p.residual_max_degree < p.s));
    }

    #[test]
    fn pendant_blocking_a_heavy_vertex() {
        // the star at 0 would isolate 5, 6 and 7, whose neighbours have
        // degree 2 but sit next to the degree-3 vertex 0
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let (c, t) = build_star_cover(&g).unwrap();
        assert_eq!(t.phases[0].stars, 0);
        assert_eq!(t.phases[0].u_prime, 3);
        assert_eq!(t.label(0), Some(VertexLabel::V2));
        assert_eq!(t.label(1), Some(VertexLabel::UDoublePrime(3)));
        assert_eq!(t.label(4), Some(VertexLabel::UPrime(3)));
        assert_eq!(t.step(0, 1), Some(EdgeStep::V2Edge(3)));
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 4), (2, 5), (3, 6)]);
    }

    #[test]
    fn four_cycle_can_break_degree_drop() {
        // K_{3,3}: every star would isolate the two other vertices of the
        // centre's side, and nothing has degree one
        let g = complete_bipartite(3, 3);
        assert_eq!(
            build_star_cover(&g),
            Err(CoverError::DegreeDrop { phase: 3, vertex: 0, degree: 3 })
        );
    }

    #[test]
    fn isolated_vertices_can_be_skipped() {
        // C9 on 0..9 plus isolated 9, with the cycle relabelled through 10
        let g = Graph::from_edges(11, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 10), (10, 0)]).unwrap();
        assert_eq!(build_star_cover(&g).unwrap_err(), CoverError::IsolatedVertex(9));
        let (c, t) = build_star_cover_ignoring_isolated(&g).unwrap();
        assert_eq!(c.validate(&g), Ok(()));
        assert_eq!(c.len(), 6);
        assert_eq!(t.label(9), None);
        assert_eq!(t.label(10), Some(VertexLabel::PathCycle));
        assert!(c.edges().all(|(u, v)| t.step(u, v) == Some(EdgeStep::PathCycleEdge)));
    }

    #[test]
    fn rejects_isolated_vertex() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(build_star_cover(&g), Err(CoverError::IsolatedVertex(2)));
    }

    #[test]
    fn trace_json_shape() {
        let (_, t) = build_star_cover(&star(3)).unwrap();
        let j = t.to_json();
        assert_eq!(j["vertices"]["0"], "FCenter(3)");
        assert_eq!(j["edges"]["0-2"], "StarEdge(3)");
    }
}
