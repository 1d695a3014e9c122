use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{enumerate_cycles_up_to, Graph};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ForbiddenKind {
    C5,
    C7,
    /// Complement of the 7-cycle.
    CoC7,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ForbiddenOccurrence {
    pub kind: ForbiddenKind,
    /// Sorted vertex set.
    pub vertices: Vec<usize>,
}

/// All induced copies of C5, C7 and the complement of C7, one entry per
/// vertex set.
///
/// The complement of C7 is the square of a 7-cycle (vertices `v_{2i}` in the
/// order `i = 0..7` are adjacent exactly when cyclically 1 or 2 apart), so
/// every occurrence carries a Hamiltonian 7-cycle and is found among the
/// 7-cycles of `g`. Intended for graphs up to a few hundred sparse vertices.
pub fn find_induced_forbidden(g: &Graph) -> Vec<ForbiddenOccurrence> {
    let cycles = enumerate_cycles_up_to(g, 7, Budget::unlimited()).cycles;
    let mut found = BTreeSet::new();
    for c in cycles.iter().filter(|c| c.len() == 5 || c.len() == 7) {
        let vs = c.vertices();
        let l = vs.len();
        let mut plain = true;
        let mut squared = l == 7;
        for i in 0..l {
            for j in i + 1..l {
                let gap = (j - i).min(l - (j - i));
                let adjacent = g.has_edge(vs[i], vs[j]);
                plain &= adjacent == (gap == 1);
                squared &= adjacent == (gap <= 2);
            }
        }
        let kind = match (plain, squared, l) {
            (true, _, 5) => ForbiddenKind::C5,
            (true, _, 7) => ForbiddenKind::C7,
            (_, true, _) => ForbiddenKind::CoC7,
            _ => continue,
        };
        let mut vertices = vs.to_vec();
        vertices.sort_unstable();
        found.insert(ForbiddenOccurrence { kind, vertices });
    }
    found.into_iter().collect()
}
