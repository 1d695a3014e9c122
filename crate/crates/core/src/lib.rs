//! Star covers and normality certificates for sparse graphs.
//!
//! The crate is organized around five pieces:
//!
//! - [`graph`]: simple graphs, girth and odd girth, bounded cycle enumeration,
//!   induced C5 / C7 / co-C7 detection and the edge-list text format.
//! - [`cover`]: the phase-by-phase star cover construction for graphs of
//!   bounded maximum degree, with full provenance, plus the good-vertex,
//!   alternating-path and propagation verifiers.
//! - [`oracle`]: exponential ground-truth checkers (normality by clique and
//!   stable set covers, existence of a nice star cover).
//! - [`regular`]: configuration-model sampling of uniform random regular
//!   graphs.
//! - [`pipeline`]: per-trial certification of random regular graphs (short
//!   cycle surgery, cover construction, certificate checks) and aggregate
//!   experiments.

pub mod cover;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod regular;

use serde::{Deserialize, Serialize};

/// Explicit work budget for exponential searches, counted in search nodes.
///
/// Budgets are node counts rather than wall-clock limits so that every
/// verdict is reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    remaining: u64,
}

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { remaining: nodes }
    }

    pub fn unlimited() -> Self {
        Budget {
            remaining: u64::MAX,
        }
    }

    /// Consumes one node; returns `false` once the budget is exhausted.
    #[inline]
    pub fn spend(&mut self) -> bool {
        if self.remaining == 0 {
            false
        } else {
            self.remaining -= 1;
            true
        }
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000)
    }
}
