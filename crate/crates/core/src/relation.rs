use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::set::ElementSet;
use crate::universe::Universe;

/// A binary relation on a finite universe, held as an n×n boolean matrix.
///
/// Rows and columns are both kept as membership words so that successor and
/// predecessor neighborhoods are single lookups.
#[derive(Clone)]
pub struct BinaryRelation {
    universe: Arc<Universe>,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        BinaryRelation {
            universe,
            rows: vec![0; n],
            cols: vec![0; n],
        }
    }

    pub fn identity(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        Self::from_index_pairs(universe, (0..n).map(|i| (i, i)))
    }

    /// The full relation `U × U`.
    pub fn full(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        let all = ElementSet::full(n).bits();
        BinaryRelation {
            universe,
            rows: vec![all; n],
            cols: vec![all; n],
        }
    }

    /// Builds a relation from index pairs. Indices must be inside the universe.
    pub fn from_index_pairs<I>(universe: Arc<Universe>, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Self::empty(universe);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    /// Builds a relation from labelled pairs. Duplicate pairs are idempotent.
    pub fn from_pairs<I, S>(universe: Arc<Universe>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut r = Self::empty(universe);
        for (x, y) in pairs {
            let x = r.universe.index_of(x.as_ref())?;
            let y = r.universe.index_of(y.as_ref())?;
            r.insert(x, y);
        }
        Ok(r)
    }

    /// Decodes the row-major bit encoding: entry `(x, y)` is bit `x * n + y`.
    /// Requires `n * n <= 64`.
    pub fn from_code(universe: Arc<Universe>, code: u64) -> Self {
        let n = universe.len();
        assert!(n * n <= 64, "universe of size {n} has no 64-bit encoding");
        let mut r = Self::empty(universe);
        let row_mask = ElementSet::full(n).bits();
        for x in 0..n {
            let row = (code >> (x * n)) & row_mask;
            r.rows[x] = row;
            for y in ElementSet::from_bits(n, row) {
                r.cols[y] |= 1 << x;
            }
        }
        r
    }

    /// Inverse of [`BinaryRelation::from_code`].
    pub fn code(&self) -> u64 {
        let n = self.len();
        assert!(n * n <= 64, "universe of size {n} has no 64-bit encoding");
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (x, &row)| acc | (row << (x * n)))
    }

    fn insert(&mut self, x: usize, y: usize) {
        let n = self.len();
        assert!(
            x < n && y < n,
            "pair ({x},{y}) outside universe of size {n}"
        );
        self.rows[x] |= 1 << y;
        self.cols[y] |= 1 << x;
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Size of the underlying universe.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// True when no pair is related.
    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] & (1 << y) != 0
    }

    /// `{y | (x, y) ∈ R}`.
    #[inline]
    pub fn successors(&self, x: usize) -> ElementSet {
        ElementSet::from_bits(self.len(), self.rows[x])
    }

    /// `{y | (y, x) ∈ R}`.
    #[inline]
    pub fn predecessors(&self, x: usize) -> ElementSet {
        ElementSet::from_bits(self.len(), self.cols[x])
    }

    pub fn transpose(&self) -> Self {
        BinaryRelation {
            universe: Arc::clone(&self.universe),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Index pairs in row-major order.
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| self.successors(x).iter().map(move |y| (x, y)))
            .collect()
    }

    /// Labelled pairs in row-major order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.index_pairs()
            .into_iter()
            .map(|(x, y)| {
                (
                    self.universe.label(x).to_string(),
                    self.universe.label(y).to_string(),
                )
            })
            .collect()
    }

    pub fn profile(&self) -> RelationProfile {
        RelationProfile::of(self)
    }
}

impl PartialEq for BinaryRelation {
    fn eq(&self, other: &Self) -> bool {
        self.universe.labels() == other.universe.labels() && self.rows == other.rows
    }
}

impl Eq for BinaryRelation {}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Which of the classical relation properties hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RelationProfile {
    pub serial: bool,
    pub inverse_serial: bool,
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub preorder: bool,
    pub tolerance: bool,
    pub equivalence: bool,
}

impl RelationProfile {
    pub fn of(r: &BinaryRelation) -> Self {
        let n = r.len();
        let serial = r.rows.iter().all(|&row| row != 0);
        let inverse_serial = r.cols.iter().all(|&col| col != 0);
        let reflexive = (0..n).all(|x| r.contains(x, x));
        let symmetric = r.rows == r.cols;
        // R∘R ⊆ R: every successor of a successor of x is a successor of x.
        let transitive = (0..n).all(|x| {
            let row = r.rows[x];
            ElementSet::from_bits(n, row)
                .iter()
                .all(|y| r.rows[y] & !row == 0)
        });
        RelationProfile {
            serial,
            inverse_serial,
            reflexive,
            symmetric,
            transitive,
            preorder: reflexive && transitive,
            tolerance: reflexive && symmetric,
            equivalence: reflexive && symmetric && transitive,
        }
    }
}

/// `complement` on an element set, exposed as a free function for callers
/// that think in terms of `X^c`.
pub fn complement(x: ElementSet) -> ElementSet {
    x.complement()
}
