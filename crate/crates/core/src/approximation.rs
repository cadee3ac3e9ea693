//! Lower and upper approximations with respect to each neighborhood kind.
//!
//! An element whose neighborhood is empty lies in every lower approximation
//! and in no upper approximation. As a consequence the lower approximation
//! can strictly contain the upper one when the relation is not serial.

use serde::Serialize;

use crate::neighborhood::{neighborhood_at, NeighborhoodKind};
use crate::relation::BinaryRelation;
use crate::set::ElementSet;

/// `{x ∈ U | R_kind(x) ⊆ X}`
pub fn lower_approx(r: &BinaryRelation, kind: NeighborhoodKind, x: ElementSet) -> ElementSet {
    lower_from(&neighborhoods(r, kind), x)
}

/// `{x ∈ U | R_kind(x) ∩ X ≠ ∅}`
pub fn upper_approx(r: &BinaryRelation, kind: NeighborhoodKind, x: ElementSet) -> ElementSet {
    upper_from(&neighborhoods(r, kind), x)
}

fn neighborhoods(r: &BinaryRelation, kind: NeighborhoodKind) -> Vec<ElementSet> {
    (0..r.len()).map(|x| neighborhood_at(r, kind, x)).collect()
}

#[inline]
fn lower_from(hoods: &[ElementSet], x: ElementSet) -> ElementSet {
    let bits = hoods
        .iter()
        .enumerate()
        .filter(|(_, h)| h.is_subset(x))
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    ElementSet::from_bits(x.universe_size(), bits)
}

#[inline]
fn upper_from(hoods: &[ElementSet], x: ElementSet) -> ElementSet {
    let bits = hoods
        .iter()
        .enumerate()
        .filter(|(_, h)| h.intersects(x))
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    ElementSet::from_bits(x.universe_size(), bits)
}

/// Neighborhoods of all four kinds computed once, for repeated approximation
/// queries against the same relation.
#[derive(Debug, Clone)]
pub struct ApproximationSpace {
    size: usize,
    hoods: [Vec<ElementSet>; 4],
}

impl ApproximationSpace {
    pub fn new(r: &BinaryRelation) -> Self {
        ApproximationSpace {
            size: r.len(),
            hoods: NeighborhoodKind::ALL.map(|k| neighborhoods(r, k)),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn neighborhoods(&self, kind: NeighborhoodKind) -> &[ElementSet] {
        &self.hoods[kind.index()]
    }

    pub fn lower(&self, kind: NeighborhoodKind, x: ElementSet) -> ElementSet {
        lower_from(&self.hoods[kind.index()], x)
    }

    pub fn upper(&self, kind: NeighborhoodKind, x: ElementSet) -> ElementSet {
        upper_from(&self.hoods[kind.index()], x)
    }

    pub fn pair(&self, kind: NeighborhoodKind, x: ElementSet) -> ApproximationPair {
        ApproximationPair {
            kind,
            lower: self.lower(kind, x),
            upper: self.upper(kind, x),
        }
    }

    pub fn table(&self, x: ElementSet) -> ApproximationTable {
        let table = ApproximationTable {
            set: x,
            pairs: NeighborhoodKind::ALL.map(|k| self.pair(k, x)),
        };
        debug_assert!(
            table.chains_hold(),
            "approximation chains violated for {x:?}"
        );
        table
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApproximationPair {
    pub kind: NeighborhoodKind,
    pub lower: ElementSet,
    pub upper: ElementSet,
}

/// The eight approximations of one set, one pair per neighborhood kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproximationTable {
    pub set: ElementSet,
    pub pairs: [ApproximationPair; 4],
}

impl ApproximationTable {
    pub fn get(&self, kind: NeighborhoodKind) -> ApproximationPair {
        self.pairs[kind.index()]
    }

    pub fn lower(&self, kind: NeighborhoodKind) -> ElementSet {
        self.get(kind).lower
    }

    pub fn upper(&self, kind: NeighborhoodKind) -> ElementSet {
        self.get(kind).upper
    }

    /// Inclusions forced by `R_{s∧p} ⊆ R_s, R_p ⊆ R_{s∨p}`:
    /// lower shrinks and upper grows as neighborhoods grow.
    pub fn chains_hold(&self) -> bool {
        use NeighborhoodKind::*;
        let (lo, up) = (|k| self.lower(k), |k| self.upper(k));
        [Successor, Predecessor].into_iter().all(|mid| {
            lo(SuccOrPred).is_subset(lo(mid))
                && lo(mid).is_subset(lo(SuccAndPred))
                && up(SuccAndPred).is_subset(up(mid))
                && up(mid).is_subset(up(SuccOrPred))
        })
    }
}

/// All eight approximations of `x`.
pub fn approximation_table(r: &BinaryRelation, x: ElementSet) -> ApproximationTable {
    ApproximationSpace::new(r).table(x)
}
