//! Star covers: construction, provenance and verification.

mod construct;
pub mod io;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{edge, Edge, Graph};

pub use construct::{build_star_cover, build_star_cover_ignoring_isolated, CoverError, CoverTrace, EdgeStep, PhaseSummary, VertexLabel};
pub use verify::{
    classify_cover_edge, count_components_on_cycle, find_single_good_cycle, good_vertices, is_nice_exhaustive,
    max_alternating_path_bounded, verify_phase_propagation, AlternatingBound, AlternatingPath, ClosureSearch,
    EdgeClass, PropagationVerdict, NiceVerdict,
};

/// A set of edges whose components are stars `K_{1,t}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StarCover {
    edges: BTreeSet<Edge>,
}

/// Why an edge set fails to be a star cover of a graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverViolation {
    #[error("cover edge ({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("cover edge ({0}, {1}) joins two vertices of cover degree >= 2")]
    NotAStar(usize, usize),
    #[error("vertex {0} has positive degree but no cover edge")]
    Uncovered(usize),
}

impl StarCover {
    pub fn new() -> Self {
        StarCover::default()
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Self {
        StarCover {
            edges: edges.into_iter().map(|(u, v)| edge(u, v)).collect(),
        }
    }

    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        self.edges.insert(edge(u, v))
    }

    pub fn remove(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&edge(u, v))
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&edge(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Number of cover edges at each vertex.
    pub fn cover_degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Checks that every cover edge lies in `g`, every component is a star,
    /// and every vertex of positive degree is covered.
    ///
    /// A component is a star exactly when each of its edges has an endpoint
    /// of cover degree one.
    pub fn validate(&self, g: &Graph) -> Result<(), CoverViolation> {
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(CoverViolation::NotAnEdge(u, v));
            }
        }
        let deg = self.cover_degrees(g.n());
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| deg[u] > 1 && deg[v] > 1) {
            return Err(CoverViolation::NotAStar(u, v));
        }
        match (0..g.n()).find(|&v| g.degree(v) > 0 && deg[v] == 0) {
            Some(v) => Err(CoverViolation::Uncovered(v)),
            None => Ok(()),
        }
    }

    /// Star components as `centre -> leaves`. A single-edge star is keyed by
    /// its smaller endpoint.
    pub fn stars(&self, n: usize) -> BTreeMap<usize, Vec<usize>> {
        let deg = self.cover_degrees(n);
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(u, v) in &self.edges {
            let (c, l) = if deg[u] > 1 || (deg[u] == 1 && deg[v] == 1) { (u, v) } else { (v, u) };
            out.entry(c).or_default().push(l);
        }
        out
    }
}

/// Per-vertex split of the host graph's neighbours into cover and non-cover
/// neighbours. Used by the path searches.
#[derive(Debug, Clone)]
pub(crate) struct ColoredAdjacency {
    pub(crate) cover: Vec<Vec<usize>>,
    pub(crate) plain: Vec<Vec<usize>>,
}

impl ColoredAdjacency {
    pub(crate) fn new(g: &Graph, c: &StarCover) -> Self {
        let n = g.n();
        let mut cover = vec![Vec::new(); n];
        let mut plain = vec![Vec::new(); n];
        for v in 0..n {
            for &w in g.neighbors(v) {
                if c.contains(v, w) {
                    cover[v].push(w);
                } else {
                    plain[v].push(w);
                }
            }
        }
        ColoredAdjacency { cover, plain }
    }

    #[inline]
    pub(crate) fn side(&self, v: usize, in_cover: bool) -> &[usize] {
        if in_cover {
            &self.cover[v]
        } else {
            &self.plain[v]
        }
    }
}
