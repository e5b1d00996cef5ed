use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{degrevlex_block, revlex, Monomial};

/// Term orders over the ranked variables of a ring.
///
/// Variables are ranked by position; position 0 is the largest. For a jet ring
/// the ranking is: higher jet level first, then row-major `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic order on the ring ranking.
    DegRevLex,
    /// Block order: degrevlex on the first `block` variables decides, ties
    /// broken by degrevlex on the rest. Eliminates the first block.
    Elimination { block: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(a.exponents(), b.exponents())),
            MonomialOrder::Elimination { block } => {
                let (a1, a2) = a.exponents().split_at(block);
                let (b1, b2) = b.exponents().split_at(block);
                degrevlex_block(a1, b1).then_with(|| degrevlex_block(a2, b2))
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "paper",
            MonomialOrder::Elimination { .. } => "elim",
        }
    }
}
