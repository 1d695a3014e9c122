//! Good vertices, alternating paths and the checks built on them.
//!
//! A path is *alternating* when its consecutive edges alternate between cover
//! and non-cover edges, i.e. none of its internal vertices is good. If an odd
//! cycle `Q` has a single good vertex `w`, then `Q - w` is an alternating path
//! on `|Q| - 1` vertices. So an upper bound `m` on alternating path order
//! settles every odd cycle with more than `m + 1` vertices.

use serde::{Deserialize, Serialize};

use super::{ColoredAdjacency, CoverTrace, EdgeStep, StarCover, VertexLabel};
use crate::graph::{enumerate_cycles_up_to, Cycle, Edge, Graph};
use crate::Budget;

/// Vertices of `q` whose two cycle edges are both in or both out of `c`.
pub fn good_vertices(q: &Cycle, c: &StarCover) -> Vec<usize> {
    let vs = q.vertices();
    let l = vs.len();
    (0..l)
        .filter(|&i| {
            let before = c.contains(vs[(i + l - 1) % l], vs[i]);
            let after = c.contains(vs[i], vs[(i + 1) % l]);
            before == after
        })
        .map(|i| vs[i])
        .collect()
}

/// Number `h` of maximal runs of consecutive cover edges along `q`, so that
/// `q` has `|q| - 2h` good vertices. A cycle entirely inside or entirely
/// outside the cover has `h = 0`.
pub fn count_components_on_cycle(q: &Cycle, c: &StarCover) -> usize {
    let l = q.len();
    let inside: Vec<bool> = q.edges().map(|(u, v)| c.contains(u, v)).collect();
    (0..l).filter(|&i| inside[i] && !inside[(i + l - 1) % l]).count()
}

/// A path whose edges alternate between cover and non-cover edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlternatingPath(pub Vec<usize>);

impl AlternatingPath {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct vertices, consecutive pairs adjacent, colours alternating.
    pub fn is_valid(&self, g: &Graph, c: &StarCover) -> bool {
        let vs = &self.0;
        let mut seen = std::collections::BTreeSet::new();
        vs.iter().all(|&v| seen.insert(v))
            && vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && vs
                .windows(3)
                .all(|w| c.contains(w[0], w[1]) != c.contains(w[1], w[2]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlternatingBound {
    /// Longest alternating path has exactly this many vertices.
    MaxLen(usize),
    /// An alternating path with `cap + 1` vertices.
    Exceeds(AlternatingPath),
    Inconclusive,
}

enum Flow {
    Continue,
    Stop,
    Exceeded,
    OutOfBudget,
}

/// DFS over all alternating paths with at most `cap + 1` vertices. `visit`
/// sees each path (as a vertex slice plus the colour of its first and last
/// edge) and may stop the walk by returning `true`.
struct AltWalker<'a, F> {
    adj: &'a ColoredAdjacency,
    cap: usize,
    budget: &'a mut Budget,
    on_path: Vec<bool>,
    path: Vec<usize>,
    first_colour: bool,
    longest: usize,
    visit: F,
}

impl<F: FnMut(&[usize], bool, bool) -> bool> AltWalker<'_, F> {
    fn run(&mut self, n: usize) -> Flow {
        self.longest = n.min(1);
        for start in 0..n {
            for colour in [true, false] {
                self.first_colour = colour;
                self.path.clear();
                self.path.push(start);
                self.on_path[start] = true;
                let flow = self.extend(colour);
                self.on_path[start] = false;
                if !matches!(flow, Flow::Continue) {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn extend(&mut self, colour: bool) -> Flow {
        let x = *self.path.last().unwrap();
        let adj = self.adj;
        for &y in adj.side(x, colour) {
            if self.on_path[y] {
                continue;
            }
            if !self.budget.spend() {
                return Flow::OutOfBudget;
            }
            self.path.push(y);
            self.on_path[y] = true;
            self.longest = self.longest.max(self.path.len());
            let flow = if self.path.len() > self.cap {
                Flow::Exceeded
            } else if (self.visit)(&self.path, self.first_colour, colour) {
                Flow::Stop
            } else {
                self.extend(!colour)
            };
            if !matches!(flow, Flow::Continue) {
                return flow;
            }
            self.on_path[y] = false;
            self.path.pop();
        }
        Flow::Continue
    }
}

fn walker<'a, F>(adj: &'a ColoredAdjacency, n: usize, cap: usize, budget: &'a mut Budget, visit: F) -> AltWalker<'a, F> {
    AltWalker {
        adj,
        cap,
        budget,
        on_path: vec![false; n],
        path: Vec::new(),
        first_colour: false,
        longest: 0,
        visit,
    }
}

/// Longest alternating path, searched by depth-limited DFS up to `cap`.
pub fn max_alternating_path_bounded(g: &Graph, c: &StarCover, cap: usize, mut budget: Budget) -> AlternatingBound {
    assert!(cap >= 2, "cap must be at least 2");
    alt_bound(g, c, cap, &mut budget)
}

fn alt_bound(g: &Graph, c: &StarCover, cap: usize, budget: &mut Budget) -> AlternatingBound {
    let adj = ColoredAdjacency::new(g, c);
    let mut w = walker(&adj, g.n(), cap, budget, |_: &[usize], _, _| false);
    match w.run(g.n()) {
        Flow::Continue | Flow::Stop => AlternatingBound::MaxLen(w.longest),
        Flow::Exceeded => AlternatingBound::Exceeds(AlternatingPath(w.path.clone())),
        Flow::OutOfBudget => AlternatingBound::Inconclusive,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NiceVerdict {
    Nice,
    /// An odd cycle with at most one good vertex.
    NotNice(Cycle),
    Inconclusive(String),
}

/// Niceness check by odd-cycle enumeration up to `max_len` vertices, closed
/// off by an alternating-path bound of `max_len - 1` vertices, which rules
/// out a single good vertex on every longer odd cycle. Each of the two
/// searches gets its own copy of `budget`.
pub fn is_nice_exhaustive(g: &Graph, c: &StarCover, max_len: usize, budget: Budget) -> NiceVerdict {
    let max_len = max_len.max(3);
    let cycles = enumerate_cycles_up_to(g, max_len, budget);
    for q in cycles.cycles.iter().filter(|q| q.is_odd()) {
        if good_vertices(q, c).len() < 2 {
            return NiceVerdict::NotNice(q.clone());
        }
    }
    if cycles.truncated {
        return NiceVerdict::Inconclusive(format!("cycle enumeration up to {max_len} ran out of budget"));
    }
    let mut rest = budget;
    match alt_bound(g, c, max_len - 1, &mut rest) {
        AlternatingBound::MaxLen(_) => NiceVerdict::Nice,
        AlternatingBound::Exceeds(p) => NiceVerdict::Inconclusive(format!(
            "alternating path on {} vertices; odd cycles longer than {max_len} are not certified",
            p.len()
        )),
        AlternatingBound::Inconclusive => NiceVerdict::Inconclusive("alternating path search ran out of budget".into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureSearch {
    /// No odd cycle has fewer than two good vertices; the longest alternating
    /// path has this many vertices.
    Nice { longest_alternating: usize },
    /// An odd cycle with exactly one good vertex.
    NotNice(Cycle),
    /// The alternating path bound `cap` was exceeded, so the search is not
    /// exhaustive.
    Exceeds(AlternatingPath),
    Inconclusive,
}

/// Exact niceness test through alternating paths.
///
/// Every alternating path `u1 .. u2` whose end edges share a colour is closed
/// through a common neighbour `w` joined to both ends by edges of the other
/// colour; such a closure is precisely an odd cycle whose only good vertex is
/// `w`. When no alternating path exceeds `cap` the enumeration is complete and
/// a negative answer is a proof of niceness.
pub fn find_single_good_cycle(g: &Graph, c: &StarCover, cap: usize, mut budget: Budget) -> ClosureSearch {
    let adj = ColoredAdjacency::new(g, c);
    let mut witness = None;
    let visit = |path: &[usize], first: bool, last: bool| {
        if first != last {
            return false;
        }
        let (u1, u2) = (path[0], path[path.len() - 1]);
        let closing = !first;
        for &w in adj.side(u2, closing) {
            if path.contains(&w) {
                continue;
            }
            if g.has_edge(u1, w) && c.contains(u1, w) == closing {
                let mut vs = path.to_vec();
                vs.push(w);
                witness = Some(Cycle::new(vs));
                return true;
            }
        }
        false
    };
    let mut w = walker(&adj, g.n(), cap, &mut budget, visit);
    let flow = w.run(g.n());
    let longest = w.longest;
    let path = w.path.clone();
    drop(w);
    match flow {
        Flow::Stop => ClosureSearch::NotNice(witness.expect("stop only on a witness")),
        Flow::Continue => ClosureSearch::Nice {
            longest_alternating: longest,
        },
        Flow::Exceeded => ClosureSearch::Exceeds(AlternatingPath(path)),
        Flow::OutOfBudget => ClosureSearch::Inconclusive,
    }
}

/// Membership of a cover edge in the sets `T1(s)` (star edges of `F_s`),
/// `T2(s)` (`U_s''`-`U_s'` edges) and `T3(s)` (`U_s''`-`V_2` edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    T1(usize),
    T2(usize),
    T3(usize),
    Other,
}

impl EdgeClass {
    fn phase(self) -> Option<usize> {
        match self {
            EdgeClass::T1(s) | EdgeClass::T2(s) | EdgeClass::T3(s) => Some(s),
            EdgeClass::Other => None,
        }
    }
}

/// Unoriented classification from the recorded construction step. Attachments
/// moved by the rewrite pass still join `U_s''` to `V_2` and count as `T3(s)`.
pub fn classify_cover_edge(e: Edge, t: &CoverTrace) -> EdgeClass {
    match t.step(e.0, e.1) {
        Some(EdgeStep::StarEdge(s)) => EdgeClass::T1(s),
        Some(EdgeStep::UEdge(s)) => EdgeClass::T2(s),
        Some(EdgeStep::V2Edge(s)) | Some(EdgeStep::RewriteEdge(s)) => EdgeClass::T3(s),
        Some(EdgeStep::PathCycleEdge) | None => EdgeClass::Other,
    }
}

/// Classification of the directed pair `from -> to`: `T1` runs leaf to
/// centre, `T2` and `T3` run from the `U''` end.
fn oriented_class(t: &CoverTrace, c: &StarCover, from: usize, to: usize) -> EdgeClass {
    if !c.contains(from, to) {
        return EdgeClass::Other;
    }
    use VertexLabel::*;
    match (t.label(from), t.label(to)) {
        (Some(FLeaf(s)), Some(FCenter(r))) if s == r => EdgeClass::T1(s),
        (Some(UDoublePrime(s)), Some(UPrime(r))) if s == r => EdgeClass::T2(s),
        (Some(UDoublePrime(s)), Some(V2)) => EdgeClass::T3(s),
        _ => EdgeClass::Other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropagationVerdict {
    Holds { paths_checked: u64 },
    CounterexamplePath(AlternatingPath),
    Inconclusive,
}

/// Checks the propagation property on every alternating path `v0 .. v9`
/// starting with a cover edge `v0 v1` in `T_i(s)`: one of `v2v3`, `v4v5`,
/// `v6v7`, `v8v9` must lie in some `T_j(t)` with `t > s`. Paths are pruned as
/// soon as such an edge appears.
pub fn verify_phase_propagation(g: &Graph, c: &StarCover, t: &CoverTrace, mut budget: Budget) -> PropagationVerdict {
    const ORDER: usize = 10;
    let adj = ColoredAdjacency::new(g, c);
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(ORDER);
    let mut checked = 0u64;

    // Some(true): counterexample left in `path`; Some(false): fine; None: budget
    #[allow(clippy::too_many_arguments)]
    fn extend(
        adj: &ColoredAdjacency,
        t: &CoverTrace,
        c: &StarCover,
        s: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        budget: &mut Budget,
        checked: &mut u64,
    ) -> Option<bool> {
        if path.len() == ORDER {
            *checked += 1;
            return Some(true);
        }
        let x = *path.last().unwrap();
        // edge v_i v_{i+1} with i = path.len() - 1 is a cover edge iff i is even
        let next_in_cover = path.len() % 2 == 1;
        for &y in adj.side(x, next_in_cover) {
            if on_path[y] {
                continue;
            }
            if !budget.spend() {
                return None;
            }
            if next_in_cover && oriented_class(t, c, x, y).phase().is_some_and(|r| r > s) {
                *checked += 1;
                continue;
            }
            path.push(y);
            on_path[y] = true;
            let res = extend(adj, t, c, s, path, on_path, budget, checked)?;
            if res {
                return Some(true);
            }
            on_path[y] = false;
            path.pop();
        }
        Some(false)
    }

    for (a, b) in c.edges() {
        for (v0, v1) in [(a, b), (b, a)] {
            let Some(s) = oriented_class(t, c, v0, v1).phase() else {
                continue;
            };
            path.clear();
            path.extend([v0, v1]);
            on_path[v0] = true;
            on_path[v1] = true;
            let res = extend(&adj, t, c, s, &mut path, &mut on_path, &mut budget, &mut checked);
            on_path[v0] = false;
            on_path[v1] = false;
            match res {
                None => return PropagationVerdict::Inconclusive,
                Some(true) => return PropagationVerdict::CounterexamplePath(AlternatingPath(path)),
                Some(false) => {}
            }
        }
    }
    PropagationVerdict::Holds { paths_checked: checked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_star_cover;
    use crate::graph::families::*;

    fn cyc(n: usize) -> Cycle {
        Cycle::new((0..n).collect())
    }

    #[test]
    fn good_vertex_examples() {
        let q = cyc(5);
        let all = StarCover::from_edges(q.edges());
        assert_eq!(good_vertices(&q, &all).len(), 5);
        assert_eq!(count_components_on_cycle(&q, &all), 0);
        let none = StarCover::new();
        assert_eq!(good_vertices(&q, &none).len(), 5);
        assert_eq!(count_components_on_cycle(&q, &none), 0);

        let q6 = cyc(6);
        let alt = StarCover::from_edges([(0, 1), (2, 3), (4, 5)]);
        assert!(good_vertices(&q6, &alt).is_empty());
        assert_eq!(count_components_on_cycle(&q6, &alt), 3);

        let single = StarCover::from_edges([(0, 1)]);
        assert_eq!(good_vertices(&q, &single).len(), 3);
        assert_eq!(count_components_on_cycle(&q, &single), 1);

        let two_star = StarCover::from_edges([(0, 1), (1, 2)]);
        assert_eq!(good_vertices(&q, &two_star), vec![1, 3, 4]);
        let disjoint = StarCover::from_edges([(0, 1), (2, 3)]);
        assert_eq!(good_vertices(&q, &disjoint), vec![4]);
        assert_eq!(count_components_on_cycle(&q, &disjoint), 2);
    }

    #[test]
    fn alternating_bound_examples() {
        let p4 = path(4);
        let mid = StarCover::from_edges([(1, 2)]);
        assert_eq!(max_alternating_path_bounded(&p4, &mid, 10, Budget::unlimited()), AlternatingBound::MaxLen(4));

        let c6 = cycle(6);
        let alt = StarCover::from_edges([(0, 1), (2, 3), (4, 5)]);
        for cap in 2..6 {
            match max_alternating_path_bounded(&c6, &alt, cap, Budget::unlimited()) {
                AlternatingBound::Exceeds(p) => {
                    assert_eq!(p.len(), cap + 1);
                    assert!(p.is_valid(&c6, &alt));
                }
                other => panic!("cap {cap}: {other:?}"),
            }
        }
        assert_eq!(max_alternating_path_bounded(&c6, &alt, 6, Budget::unlimited()), AlternatingBound::MaxLen(6));
        assert_eq!(max_alternating_path_bounded(&c6, &alt, 6, Budget::new(3)), AlternatingBound::Inconclusive);
    }

    /// Longest alternating path by brute force over vertex sequences.
    fn brute_longest(g: &Graph, c: &StarCover) -> usize {
        fn rec(g: &Graph, c: &StarCover, path: &mut Vec<usize>, best: &mut usize) {
            *best = (*best).max(path.len());
            let last = *path.last().unwrap();
            for w in 0..g.n() {
                if !g.has_edge(last, w) || path.contains(&w) {
                    continue;
                }
                if path.len() >= 2 && c.contains(path[path.len() - 2], last) == c.contains(last, w) {
                    continue;
                }
                path.push(w);
                rec(g, c, path, best);
                path.pop();
            }
        }
        let mut best = 0;
        for s in 0..g.n() {
            rec(g, c, &mut vec![s], &mut best);
        }
        best
    }

    #[test]
    fn matching_cover_on_six_vertices() {
        // prism: triangles 012, 345, rungs 03 14 25; cover = the rungs
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        let c = StarCover::from_edges([(0, 3), (1, 4), (2, 5)]);
        let expected = brute_longest(&g, &c);
        assert_eq!(expected, 6);
        assert_eq!(max_alternating_path_bounded(&g, &c, 6, Budget::unlimited()), AlternatingBound::MaxLen(expected));
        assert!(matches!(max_alternating_path_bounded(&g, &c, 3, Budget::unlimited()), AlternatingBound::Exceeds(_)));
    }

    #[test]
    fn niceness_examples() {
        let g = cycle(9);
        let (c, _) = build_star_cover(&g).unwrap();
        assert_eq!(is_nice_exhaustive(&g, &c, 9, Budget::unlimited()), NiceVerdict::Nice);

        let c5 = cycle(5);
        let bad = StarCover::from_edges([(0, 1), (2, 3)]);
        match is_nice_exhaustive(&c5, &bad, 5, Budget::unlimited()) {
            NiceVerdict::NotNice(q) => assert_eq!(good_vertices(&q, &bad).len(), 1),
            other => panic!("{other:?}"),
        }
        let k33 = complete_bipartite(3, 3);
        let any = StarCover::from_edges([(0, 3), (1, 4), (2, 5)]);
        assert_eq!(is_nice_exhaustive(&k33, &any, 7, Budget::unlimited()), NiceVerdict::Nice);
        assert!(matches!(is_nice_exhaustive(&k33, &any, 5, Budget::unlimited()), NiceVerdict::Inconclusive(_)));
    }

    #[test]
    fn closure_search_agrees_on_small_cases() {
        let c5 = cycle(5);
        let bad = StarCover::from_edges([(0, 1), (2, 3)]);
        match find_single_good_cycle(&c5, &bad, 10, Budget::unlimited()) {
            ClosureSearch::NotNice(q) => assert_eq!(good_vertices(&q, &bad), vec![4]),
            other => panic!("{other:?}"),
        }
        let good = StarCover::from_edges([(0, 1), (1, 2)]);
        assert_eq!(good_vertices(&cyc(5), &good).len(), 3);
        assert!(matches!(find_single_good_cycle(&c5, &good, 10, Budget::unlimited()), ClosureSearch::Nice { .. }));
        // triangle with one cover edge: the opposite vertex is the only good one
        let k3 = cycle(3);
        let one = StarCover::from_edges([(0, 1)]);
        assert!(matches!(find_single_good_cycle(&k3, &one, 10, Budget::unlimited()), ClosureSearch::NotNice(_)));
    }

    #[test]
    fn classification() {
        let (c, t) = build_star_cover(&star(3)).unwrap();
        for e in c.edges() {
            assert_eq!(classify_cover_edge(e, &t), EdgeClass::T1(3));
        }
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let (_, t) = build_star_cover(&g).unwrap();
        assert_eq!(classify_cover_edge((1, 4), &t), EdgeClass::T2(3));
        assert_eq!(classify_cover_edge((0, 1), &t), EdgeClass::T3(3));
        let (c9, t9) = build_star_cover(&cycle(9)).unwrap();
        assert!(c9.edges().all(|e| classify_cover_edge(e, &t9) == EdgeClass::Other));
    }

    /// Hand-made trace on the path 0..10: every even edge is a cover edge.
    fn path_trace(classes: &[(usize, EdgeStep, VertexLabel, VertexLabel)]) -> (Graph, StarCover, CoverTrace) {
        let g = path(10);
        let c = StarCover::from_edges((0..5).map(|i| (2 * i, 2 * i + 1)));
        let mut t = CoverTrace {
            k: 4,
            vertex_label: vec![Some(VertexLabel::PathCycle); 10],
            edge_step: c.edges().map(|e| (e, EdgeStep::PathCycleEdge)).collect(),
            phases: Vec::new(),
            rewrites: 0,
        };
        for &(i, step, from, to) in classes {
            t.edge_step.insert((i, i + 1), step);
            t.vertex_label[i] = Some(from);
            t.vertex_label[i + 1] = Some(to);
        }
        (g, c, t)
    }

    #[test]
    fn propagation_needs_a_later_phase() {
        use VertexLabel::*;
        let first = (0, EdgeStep::StarEdge(3), FLeaf(3), FCenter(3));
        let (g, c, t) = path_trace(&[first]);
        match verify_phase_propagation(&g, &c, &t, Budget::unlimited()) {
            PropagationVerdict::CounterexamplePath(p) => assert_eq!(p.vertices(), &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
            other => panic!("{other:?}"),
        }
        for i in [2, 4, 6, 8] {
            let later = (i, EdgeStep::UEdge(4), UDoublePrime(4), UPrime(4));
            let (g, c, t) = path_trace(&[first, later]);
            assert_eq!(verify_phase_propagation(&g, &c, &t, Budget::unlimited()), PropagationVerdict::Holds { paths_checked: 1 }, "edge {i}");
            // the same phase does not help, nor does the wrong orientation
            let same = (i, EdgeStep::UEdge(3), UDoublePrime(3), UPrime(3));
            let (g, c, t) = path_trace(&[first, same]);
            assert!(matches!(verify_phase_propagation(&g, &c, &t, Budget::unlimited()), PropagationVerdict::CounterexamplePath(_)));
            let reversed = (i, EdgeStep::UEdge(4), UPrime(4), UDoublePrime(4));
            let (g, c, t) = path_trace(&[first, reversed]);
            assert!(matches!(verify_phase_propagation(&g, &c, &t, Budget::unlimited()), PropagationVerdict::CounterexamplePath(_)));
        }
        // a first edge outside T1/T2/T3, or oriented centre to leaf, starts nothing
        let (g, c, t) = path_trace(&[(0, EdgeStep::StarEdge(3), FCenter(3), FLeaf(3))]);
        assert_eq!(verify_phase_propagation(&g, &c, &t, Budget::unlimited()), PropagationVerdict::Holds { paths_checked: 0 });
    }

    #[test]
    fn propagation_on_small_graphs() {
        for g in [star(3), petersen(), cycle(9)] {
            let (c, t) = build_star_cover(&g).unwrap();
            assert!(matches!(verify_phase_propagation(&g, &c, &t, Budget::unlimited()), PropagationVerdict::Holds { .. }));
        }
    }
}
