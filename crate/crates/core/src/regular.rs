//! Configuration-model sampling of uniform random `d`-regular graphs.
//!
//! Half-edges are the points `W = {0..n} x {0..d}` (0-based). A configuration
//! is a perfect matching on `W`; projecting each point to its vertex gives a
//! `d`-regular multigraph. Every simple `d`-regular graph arises from exactly
//! `(d!)^n` configurations, so conditioning a uniform configuration on a
//! simple projection is uniform over simple `d`-regular graphs.
//!
//! Randomness comes from ChaCha8 seeded with a `u64` (`rand_chacha`), and all
//! range draws are made on `u64`, so samples are identical across platforms.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{edge, Graph};

/// The generator used for every sampling routine in this crate.
pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` in a batch started from `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    master.wrapping_add(index)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegularError {
    #[error("dn must be even (n = {n}, d = {d})")]
    OddDegreeSum { n: usize, d: usize },
    #[error("need d >= 1 and n >= 1 (n = {n}, d = {d})")]
    Degenerate { n: usize, d: usize },
    #[error("a simple {d}-regular graph needs d < n (n = {n})")]
    DegreeTooLarge { n: usize, d: usize },
    #[error("no simple graph after {rejections} rejected configurations")]
    TooManyRejections { rejections: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub vertex: usize,
    pub slot: usize,
}

/// A perfect matching on the `dn` half-edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub n: usize,
    pub d: usize,
    pub pairs: Vec<(HalfEdge, HalfEdge)>,
}

impl Configuration {
    fn point(&self, h: usize) -> HalfEdge {
        HalfEdge {
            vertex: h / self.d,
            slot: h % self.d,
        }
    }
}

/// Loops stored as `(v, v)`; parallel edges repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn to_graph(&self) -> Option<Graph> {
        if is_simple(self) {
            Some(Graph::from_edges(self.n, self.edges.iter().copied()).expect("simple multigraph"))
        } else {
            None
        }
    }
}

fn check_params(n: usize, d: usize) -> Result<(), RegularError> {
    if n == 0 || d == 0 {
        return Err(RegularError::Degenerate { n, d });
    }
    if (n * d) % 2 == 1 {
        return Err(RegularError::OddDegreeSum { n, d });
    }
    Ok(())
}

/// Pairs every half-edge, in index order, with a uniformly chosen other
/// unmatched half-edge. Every perfect matching of `W` is equally likely.
///
/// `on_pair` may abort the pairing early by returning `false`; the partial
/// pairing is then returned as `None`.
fn pair_up<R: Rng>(
    n: usize,
    d: usize,
    rng: &mut R,
    mut on_pair: impl FnMut(usize, usize) -> bool,
) -> Option<Vec<(usize, usize)>> {
    let total = n * d;
    let mut pool: Vec<usize> = (0..total).collect();
    let mut pos: Vec<usize> = (0..total).collect();
    let mut matched = vec![false; total];
    let mut pairs = Vec::with_capacity(total / 2);
    let remove = |pool: &mut Vec<usize>, pos: &mut Vec<usize>, h: usize| {
        let i = pos[h];
        let last = *pool.last().unwrap();
        pool.swap_remove(i);
        if last != h {
            pos[last] = i;
        }
    };
    for h in 0..total {
        if matched[h] {
            continue;
        }
        remove(&mut pool, &mut pos, h);
        let j = rng.gen_range(0..pool.len() as u64) as usize;
        let partner = pool[j];
        remove(&mut pool, &mut pos, partner);
        matched[h] = true;
        matched[partner] = true;
        pairs.push((h, partner));
        if !on_pair(h / d, partner / d) {
            return None;
        }
    }
    Some(pairs)
}

/// Uniformly random configuration on `n` vertices of degree `d`.
pub fn sample_configuration<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Configuration, RegularError> {
    check_params(n, d)?;
    let raw = pair_up(n, d, rng, |_, _| true).expect("never aborted");
    let mut cfg = Configuration { n, d, pairs: Vec::new() };
    cfg.pairs = raw.into_iter().map(|(a, b)| (cfg.point(a), cfg.point(b))).collect();
    Ok(cfg)
}

/// Projects half-edge pairs to vertex pairs.
pub fn project(p: &Configuration) -> MultiGraph {
    MultiGraph {
        n: p.n,
        edges: p.pairs.iter().map(|(x, y)| edge(x.vertex, y.vertex)).collect(),
    }
}

pub fn is_simple(m: &MultiGraph) -> bool {
    let mut seen = BTreeSet::new();
    m.edges.iter().all(|&(a, b)| a != b && seen.insert(edge(a, b)))
}

/// A simple regular graph together with the number of configurations that
/// were rejected before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSample {
    pub graph: Graph,
    pub rejections: u64,
}

/// Rejection sampling of a uniform simple `d`-regular graph.
///
/// A configuration is discarded as soon as its partial projection shows a
/// loop or a repeated edge; this is the same conditioning as projecting the
/// full configuration first. Deterministic in `seed`.
pub fn sample_simple_regular(n: usize, d: usize, seed: u64, max_rejects: u64) -> Result<RegularSample, RegularError> {
    check_params(n, d)?;
    if d >= n {
        return Err(RegularError::DegreeTooLarge { n, d });
    }
    let mut rng = rng_from_seed(seed);
    let mut rejections = 0;
    loop {
        let mut seen = BTreeSet::new();
        let pairs = pair_up(n, d, &mut rng, |a, b| a != b && seen.insert(edge(a, b)));
        if let Some(pairs) = pairs {
            let graph = Graph::from_edges(n, pairs.into_iter().map(|(a, b)| (a / d, b / d)))
                .expect("checked simple while pairing");
            return Ok(RegularSample { graph, rejections });
        }
        rejections += 1;
        if rejections > max_rejects {
            return Err(RegularError::TooManyRejections { rejections });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_pairings() {
        let mut rng = rng_from_seed(3);
        let c = sample_configuration(2, 1, &mut rng).unwrap();
        assert_eq!(c.pairs.len(), 1);
        assert_eq!(project(&c).edges, vec![(0, 1)]);

        let c = sample_configuration(1, 2, &mut rng).unwrap();
        let m = project(&c);
        assert_eq!(m.edges, vec![(0, 0)]);
        assert_eq!(m.degree(0), 2);
        assert!(!is_simple(&m));
    }

    #[test]
    fn matchings_of_four_points_are_uniform() {
        // the three perfect matchings of {0,1,2,3}, keyed by the partner of 0
        let mut rng = rng_from_seed(11);
        let draws = 30_000;
        let mut counts = [0u32; 4];
        for _ in 0..draws {
            let c = sample_configuration(2, 2, &mut rng).unwrap();
            let (a, b) = c.pairs.iter().find(|(x, y)| x.vertex * 2 + x.slot == 0 || y.vertex * 2 + y.slot == 0).unwrap();
            let partner = if a.vertex * 2 + a.slot == 0 { b } else { a };
            counts[partner.vertex * 2 + partner.slot] += 1;
        }
        assert_eq!(counts[0], 0);
        let p = 1.0 / 3.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in &counts[1..] {
            assert!((c as f64 - draws as f64 * p).abs() < 3.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn projection_is_regular() {
        let mut rng = rng_from_seed(5);
        for &(n, d) in &[(10, 3), (7, 4), (12, 5)] {
            let m = project(&sample_configuration(n, d, &mut rng).unwrap());
            assert_eq!(m.edges.len(), n * d / 2);
            assert!((0..n).all(|v| m.degree(v) == d));
        }
    }

    #[test]
    fn simplicity() {
        let doubled = MultiGraph { n: 2, edges: vec![(0, 1), (0, 1)] };
        assert!(!is_simple(&doubled));
        let k4 = MultiGraph { n: 4, edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] };
        assert!(is_simple(&k4));
        assert_eq!(k4.to_graph().unwrap().m(), 6);
    }

    #[test]
    fn simple_regular_examples() {
        let k4 = crate::graph::families::complete(4);
        for seed in 0..20 {
            assert_eq!(sample_simple_regular(4, 3, seed, 10_000).unwrap().graph, k4);
        }
        assert_eq!(sample_simple_regular(5, 3, 0, 10), Err(RegularError::OddDegreeSum { n: 5, d: 3 }));
        assert!(matches!(sample_simple_regular(4, 4, 0, 10), Err(RegularError::DegreeTooLarge { .. })));
        assert_eq!(
            sample_simple_regular(400, 6, 1, 0),
            Err(RegularError::TooManyRejections { rejections: 1 })
        );
    }

    #[test]
    fn deterministic_in_seed() {
        let a = sample_simple_regular(60, 3, 42, 10_000).unwrap();
        let b = sample_simple_regular(60, 3, 42, 10_000).unwrap();
        assert_eq!(a, b);
        let g = &a.graph;
        assert!((0..60).all(|v| g.degree(v) == 3));
        let c = sample_simple_regular(60, 3, 43, 10_000).unwrap();
        assert_ne!(a.graph, c.graph);
    }
}
