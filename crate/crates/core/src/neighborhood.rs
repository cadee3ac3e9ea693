//! Neighborhood operators and the set families they induce.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::relation::BinaryRelation;
use crate::set::ElementSet;
use crate::universe::{same_universe, Universe};

/// The four ways of reading a relation as a neighborhood operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeighborhoodKind {
    /// `{y | (x,y) ∈ R}`
    Successor,
    /// `{y | (y,x) ∈ R}`
    Predecessor,
    /// successor ∩ predecessor
    SuccAndPred,
    /// successor ∪ predecessor
    SuccOrPred,
}

impl NeighborhoodKind {
    pub const ALL: [NeighborhoodKind; 4] = [
        NeighborhoodKind::Successor,
        NeighborhoodKind::Predecessor,
        NeighborhoodKind::SuccAndPred,
        NeighborhoodKind::SuccOrPred,
    ];

    /// Short symbol used in reports and on the command line.
    pub fn symbol(self) -> &'static str {
        match self {
            NeighborhoodKind::Successor => "s",
            NeighborhoodKind::Predecessor => "p",
            NeighborhoodKind::SuccAndPred => "s∧p",
            NeighborhoodKind::SuccOrPred => "s∨p",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NeighborhoodKind::Successor => "successor",
            NeighborhoodKind::Predecessor => "predecessor",
            NeighborhoodKind::SuccAndPred => "successor-and-predecessor",
            NeighborhoodKind::SuccOrPred => "successor-or-predecessor",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for NeighborhoodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Serialize for NeighborhoodKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl FromStr for NeighborhoodKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "succ" | "successor" => Ok(NeighborhoodKind::Successor),
            "p" | "pred" | "predecessor" => Ok(NeighborhoodKind::Predecessor),
            "and" | "s&p" | "s^p" | "s∧p" | "sp-and" | "succ-and-pred" => {
                Ok(NeighborhoodKind::SuccAndPred)
            }
            "or" | "s|p" | "svp" | "s∨p" | "sp-or" | "succ-or-pred" => {
                Ok(NeighborhoodKind::SuccOrPred)
            }
            other => Err(format!(
                "unknown neighborhood kind {other:?} (expected s, p, and, or)"
            )),
        }
    }
}

/// `R_kind(x)` for an element index.
#[inline]
pub fn neighborhood_at(r: &BinaryRelation, kind: NeighborhoodKind, x: usize) -> ElementSet {
    match kind {
        NeighborhoodKind::Successor => r.successors(x),
        NeighborhoodKind::Predecessor => r.predecessors(x),
        NeighborhoodKind::SuccAndPred => r.successors(x) & r.predecessors(x),
        NeighborhoodKind::SuccOrPred => r.successors(x) | r.predecessors(x),
    }
}

/// `R_kind(x)` for a labelled element.
pub fn neighborhood(r: &BinaryRelation, kind: NeighborhoodKind, x: &str) -> Result<ElementSet> {
    Ok(neighborhood_at(r, kind, r.universe().index_of(x)?))
}

/// All neighborhoods of one kind, indexed by element.
pub fn neighborhood_table(r: &BinaryRelation, kind: NeighborhoodKind) -> Vec<ElementSet> {
    (0..r.len()).map(|x| neighborhood_at(r, kind, x)).collect()
}

/// The family `{R_kind(x) : x ∈ U}`, deduplicated; empty neighborhoods are kept.
pub fn neighborhood_family(r: &BinaryRelation, kind: NeighborhoodKind) -> SetFamily {
    SetFamily::new(Arc::clone(r.universe()), neighborhood_table(r, kind))
}

/// Checks `R_{s∧p}(x) ⊆ R_s(x), R_p(x) ⊆ R_{s∨p}(x)` at every element.
pub fn check_neighborhood_sandwich(r: &BinaryRelation) -> bool {
    (0..r.len()).all(|x| {
        let s = neighborhood_at(r, NeighborhoodKind::Successor, x);
        let p = neighborhood_at(r, NeighborhoodKind::Predecessor, x);
        let and = neighborhood_at(r, NeighborhoodKind::SuccAndPred, x);
        let or = neighborhood_at(r, NeighborhoodKind::SuccOrPred, x);
        and.is_subset(s) && s.is_subset(or) && and.is_subset(p) && p.is_subset(or)
    })
}

/// A canonical, duplicate-free collection of subsets of one universe.
///
/// Members are sorted by cardinality and then by their sorted member lists.
#[derive(Clone)]
pub struct SetFamily {
    universe: Arc<Universe>,
    members: Vec<ElementSet>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = ElementSet>>(universe: Arc<Universe>, sets: I) -> Self {
        let n = universe.len();
        let mut members: Vec<ElementSet> = sets
            .into_iter()
            .inspect(|s| assert_eq!(s.universe_size(), n, "set from another universe"))
            .collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { universe, members }
    }

    /// Builds a family from label lists.
    pub fn from_labels<I, J, S>(universe: Arc<Universe>, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let sets = sets
            .into_iter()
            .map(|s| universe.set_of(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFamily::new(universe, sets))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.members.iter().copied()
    }

    /// Union of all members.
    pub fn union(&self) -> ElementSet {
        self.iter()
            .fold(self.universe.empty_set(), |acc, s| acc | s)
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub(crate) fn check_same_universe(&self, other: &SetFamily) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Members rendered with labels, e.g. `["∅", "{a}", "{a,c}"]`.
    pub fn rendered(&self) -> Vec<String> {
        self.iter().map(|s| self.universe.render(s)).collect()
    }

    /// Members as label lists, in canonical order.
    pub fn label_lists(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|s| self.universe.member_labels(s))
            .collect()
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.universe.labels() == other.universe.labels() && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.rendered()).finish()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.rendered().join(", "))
    }
}
