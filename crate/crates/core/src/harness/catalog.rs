//! The proposition catalog and the per-relation checks behind it.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::approximation::ApproximationSpace;
use crate::error::{Error, Result};
use crate::neighborhood::{neighborhood_family, NeighborhoodKind, SetFamily};
use crate::relation::{BinaryRelation, RelationProfile};
use crate::set::ElementSet;
use crate::topology::{
    base_conditions, generate_topology, is_base, is_cover, refines, relation_subbase_condition,
    Topology,
};

use NeighborhoodKind::{Predecessor, SuccAndPred, SuccOrPred, Successor};

const KINDS: [NeighborhoodKind; 4] = NeighborhoodKind::ALL;

macro_rules! propositions {
    ($($id:ident => $anchor:literal, $text:literal;)*) => {
        /// Identifier of a catalogued proposition.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PropositionId { $($id),* }

        impl PropositionId {
            pub const ALL: &'static [PropositionId] = &[$(PropositionId::$id),*];

            pub fn code(self) -> &'static str {
                match self { $(PropositionId::$id => stringify!($id)),* }
            }

            /// Label of the claim being checked.
            pub fn anchor(self) -> &'static str {
                match self { $(PropositionId::$id => $anchor),* }
            }

            pub fn description(self) -> &'static str {
                match self { $(PropositionId::$id => $text),* }
            }
        }
    };
}

propositions! {
    P01 => "L0/U0", "duality: lower(X) = (upper(X^c))^c and upper(X) = (lower(X^c))^c";
    P02 => "L1/U1", "lower(U) = U and upper(∅) = ∅";
    P03 => "L2/U2", "lower(X∩Y) = lower(X)∩lower(Y) and upper(X∪Y) = upper(X)∪upper(Y)";
    P04 => "L3/U3", "reflexive ⇒ lower(X) ⊆ X ⊆ upper(X)";
    P05 => "L4/U4", "symmetric ⇒ X ⊆ lower(upper(X)) and upper(lower(X)) ⊆ X";
    P06 => "L5/U5", "transitive ⇒ lower(X) ⊆ lower(lower(X)) and upper(upper(X)) ⊆ upper(X) for s, p, s∧p";
    P07 => "neighborhood sandwich", "R_{s∧p}(x) ⊆ R_s(x), R_p(x) ⊆ R_{s∨p}(x), with ∧/∨ the pointwise ∩/∪";
    P08 => "S0 for S_s", "S_s covers U ⇔ R is inverse serial";
    P09 => "S0 for S_p", "S_p covers U ⇔ R is serial";
    P10 => "S0 for S_{s∧p}", "symmetric ∧ (serial ∨ inverse serial) ⇒ S_{s∧p} covers U; converse searched";
    P11 => "S0 for S_{s∨p}", "serial ∨ inverse serial ⇒ S_{s∨p} covers U; converse searched";
    P12 => "symmetric seriality", "symmetric ⇒ (serial ⇔ inverse serial)";
    P13 => "symmetric collapse", "symmetric ∧ serial ⇒ S_{s∧p} = S_s = S_p = S_{s∨p} and T_{s∧p} = T_s = T_p = T_{s∨p}; equivalence ⇒ opens are unions of classes and clopen";
    P14 => "refinement ⪯", "reflexive ⇒ S_{s∧p} ⪯ S_s, S_p ⪯ S_{s∨p}; serial ⇒ S_p ⪯ S_{s∨p}; inverse serial ⇒ S_s ⪯ S_{s∨p}; topology orderings reported per reading";
    P15 => "approximation chains", "lower_{s∨p} ⊆ lower_s, lower_p ⊆ lower_{s∧p} and upper_{s∧p} ⊆ upper_s, upper_p ⊆ upper_{s∨p}";
    P16 => "serial chain", "serial ⇒ lower_{s∨p}(X) ⊆ lower_s(X) ⊆ upper_s(X) ⊆ upper_{s∨p}(X)";
    P17 => "inverse serial chain", "inverse serial ⇒ lower_{s∨p}(X) ⊆ lower_p(X) ⊆ upper_p(X) ⊆ upper_{s∨p}(X)";
    P18 => "symmetric serial s∧p", "symmetric ∧ (serial ∨ inverse serial) ⇒ lower_{s∧p}(X) ⊆ upper_{s∧p}(X)";
    P19 => "reflexive chains", "reflexive ⇒ lower_i ⊆ X ⊆ upper_i for every kind, and the two seven-term chains through s and p";
    P20 => "tolerance collapse", "tolerance ⇒ the four lower approximations coincide, the four upper coincide, lower ⊆ X ⊆ upper";
    P21 => "pointwise vs ⪯", "R_i(x) ⊆ R_j(x) for all x ⇒ S_i ⪯ S_j; converse searched";
    P22 => "preorder base", "preorder ⇒ S_s, S_p, S_{s∧p} satisfy B1/B2 and are bases of their topologies; S_{s∨p} reported";
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for PropositionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let upper = s.to_ascii_uppercase();
        // accept P1 as well as P01
        let normalized = match upper.strip_prefix('P').and_then(|d| d.parse::<u8>().ok()) {
            Some(num) => format!("P{num:02}"),
            None => upper,
        };
        PropositionId::ALL
            .iter()
            .copied()
            .find(|p| p.code() == normalized)
            .ok_or_else(|| Error::UnknownProposition(s.to_string()))
    }
}

impl Serialize for PropositionId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

/// Which part of a proposition a finding refutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The direction the argument establishes; acceptance-gating.
    Forward,
    /// The unproven half of an "if and only if"; exploratory.
    Converse,
    /// An alternative reading of an ambiguous claim; exploratory.
    Reading(&'static str),
}

impl Direction {
    pub fn gating(self) -> bool {
        matches!(self, Direction::Forward)
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Converse => "converse",
            Direction::Reading(name) => name,
        }
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One refutation found on one relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub direction: Direction,
    pub kinds: Vec<NeighborhoodKind>,
    pub witness: Vec<ElementSet>,
    pub observed: String,
    pub expected: String,
}

/// Everything learned about one relation for one proposition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Evaluation {
    /// False when the proposition's hypothesis fails and the check is vacuous.
    pub hypothesis: bool,
    pub subsets_checked: u64,
    /// At most one finding per direction, in direction order.
    pub findings: Vec<Finding>,
}

impl Evaluation {
    fn vacuous() -> Self {
        Evaluation::default()
    }

    fn checked(subsets: u64) -> Self {
        Evaluation {
            hypothesis: true,
            subsets_checked: subsets,
            findings: Vec::new(),
        }
    }

    fn record(&mut self, finding: Option<Finding>) {
        if let Some(f) = finding {
            if !self.findings.iter().any(|g| g.direction == f.direction) {
                self.findings.push(f);
            }
        }
    }
}

/// A relation prepared for repeated checks: approximation tables over the
/// whole powerset plus lazily built families and topologies.
pub struct Subject<'a> {
    pub relation: &'a BinaryRelation,
    pub profile: RelationProfile,
    space: ApproximationSpace,
    subsets: Arc<[ElementSet]>,
    lower: [Vec<ElementSet>; 4],
    upper: [Vec<ElementSet>; 4],
    families: OnceCell<[SetFamily; 4]>,
    topologies: OnceCell<[Option<Topology>; 4]>,
}

/// Every subset of an `n`-element universe in canonical order.
pub fn canonical_subsets(n: usize) -> Arc<[ElementSet]> {
    let mut all: Vec<ElementSet> = ElementSet::all_subsets(n).collect();
    all.sort_unstable();
    all.into()
}

impl<'a> Subject<'a> {
    pub fn new(relation: &'a BinaryRelation) -> Self {
        Self::with_subsets(relation, canonical_subsets(relation.len()))
    }

    /// `subsets` must be [`canonical_subsets`] for the relation's size.
    pub fn with_subsets(relation: &'a BinaryRelation, subsets: Arc<[ElementSet]>) -> Self {
        let n = relation.len();
        let space = ApproximationSpace::new(relation);
        let table = |f: &dyn Fn(NeighborhoodKind, ElementSet) -> ElementSet| {
            KINDS.map(|k| {
                ElementSet::all_subsets(n)
                    .map(|x| f(k, x))
                    .collect::<Vec<_>>()
            })
        };
        let lower = table(&|k, x| space.lower(k, x));
        let upper = table(&|k, x| space.upper(k, x));
        Subject {
            relation,
            profile: relation.profile(),
            space,
            subsets,
            lower,
            upper,
            families: OnceCell::new(),
            topologies: OnceCell::new(),
        }
    }

    fn n(&self) -> usize {
        self.relation.len()
    }

    #[inline]
    fn lo(&self, k: NeighborhoodKind, x: ElementSet) -> ElementSet {
        self.lower[k.index()][x.bits() as usize]
    }

    #[inline]
    fn up(&self, k: NeighborhoodKind, x: ElementSet) -> ElementSet {
        self.upper[k.index()][x.bits() as usize]
    }

    fn family(&self, k: NeighborhoodKind) -> &SetFamily {
        &self
            .families
            .get_or_init(|| KINDS.map(|k| neighborhood_family(self.relation, k)))[k.index()]
    }

    fn topology(&self, k: NeighborhoodKind) -> Option<&Topology> {
        self.topologies
            .get_or_init(|| KINDS.map(|k| generate_topology(self.family(k)).ok()))[k.index()]
        .as_ref()
    }

    fn render(&self, x: ElementSet) -> String {
        self.relation.universe().render(x)
    }

    fn render_family(&self, f: &SetFamily) -> String {
        f.to_string()
    }

    /// First subset `X` (canonical order) and kind where `check` reports a
    /// violation as `(observed, expected)`.
    fn first_subset<F>(
        &self,
        direction: Direction,
        kinds: &[NeighborhoodKind],
        check: F,
    ) -> Option<Finding>
    where
        F: Fn(NeighborhoodKind, ElementSet) -> Option<(String, String)>,
    {
        for &x in self.subsets.iter() {
            for &k in kinds {
                if let Some((observed, expected)) = check(k, x) {
                    return Some(Finding {
                        direction,
                        kinds: vec![k],
                        witness: vec![x],
                        observed,
                        expected,
                    });
                }
            }
        }
        None
    }

    fn first_pair<F>(&self, direction: Direction, check: F) -> Option<Finding>
    where
        F: Fn(NeighborhoodKind, ElementSet, ElementSet) -> Option<(String, String)>,
    {
        for &x in self.subsets.iter() {
            for &y in self.subsets.iter() {
                for k in KINDS {
                    if let Some((observed, expected)) = check(k, x, y) {
                        return Some(Finding {
                            direction,
                            kinds: vec![k],
                            witness: vec![x, y],
                            observed,
                            expected,
                        });
                    }
                }
            }
        }
        None
    }

    fn powerset_size(&self) -> u64 {
        1 << self.n()
    }

    /// Checks a chain `a_0 ⊆ a_1 ⊆ …`, reporting the first broken link.
    fn chain(&self, names: &[&str], sets: &[ElementSet]) -> Option<(String, String)> {
        sets.windows(2).zip(names.windows(2)).find_map(|(w, nm)| {
            (!w[0].is_subset(w[1])).then(|| {
                (
                    format!(
                        "{} = {} ⊄ {} = {}",
                        nm[0],
                        self.render(w[0]),
                        nm[1],
                        self.render(w[1])
                    ),
                    format!("{} ⊆ {}", nm[0], nm[1]),
                )
            })
        })
    }

    fn equal(&self, what: &str, got: ElementSet, want: ElementSet) -> Option<(String, String)> {
        (got != want).then(|| (format!("{what} = {}", self.render(got)), self.render(want)))
    }
}

fn implication(hyp: bool, concl: bool) -> bool {
    !hyp || concl
}

/// Evaluates one proposition on one prepared relation.
pub fn evaluate(id: PropositionId, s: &Subject<'_>) -> Evaluation {
    use Direction::*;
    let p = s.profile;
    let full = ElementSet::full(s.n());
    let empty = ElementSet::empty(s.n());
    let subsets = s.powerset_size();

    match id {
        PropositionId::P01 => {
            let mut e = Evaluation::checked(subsets);
            e.record(s.first_subset(Forward, &KINDS, |k, x| {
                s.equal("lower(X)", s.lo(k, x), s.up(k, !x).complement())
                    .or_else(|| s.equal("upper(X)", s.up(k, x), s.lo(k, !x).complement()))
            }));
            e
        }
        PropositionId::P02 => {
            let mut e = Evaluation::checked(2);
            for k in KINDS {
                let bad = s
                    .equal("lower(U)", s.lo(k, full), full)
                    .map(|v| (v, full))
                    .or_else(|| {
                        s.equal("upper(∅)", s.up(k, empty), empty)
                            .map(|v| (v, empty))
                    });
                if let Some(((observed, expected), w)) = bad {
                    e.record(Some(Finding {
                        direction: Forward,
                        kinds: vec![k],
                        witness: vec![w],
                        observed,
                        expected,
                    }));
                    break;
                }
            }
            e
        }
        PropositionId::P03 => {
            let mut e = Evaluation::checked(subsets * subsets);
            e.record(s.first_pair(Forward, |k, x, y| {
                s.equal("lower(X∩Y)", s.lo(k, x & y), s.lo(k, x) & s.lo(k, y))
                    .or_else(|| s.equal("upper(X∪Y)", s.up(k, x | y), s.up(k, x) | s.up(k, y)))
            }));
            e
        }
        PropositionId::P04 => {
            if !p.reflexive {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(subsets);
            e.record(s.first_subset(Forward, &KINDS, |k, x| {
                s.chain(&["lower(X)", "X", "upper(X)"], &[s.lo(k, x), x, s.up(k, x)])
            }));
            e
        }
        PropositionId::P05 => {
            if !p.symmetric {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(subsets);
            e.record(s.first_subset(Forward, &KINDS, |k, x| {
                s.chain(&["X", "lower(upper(X))"], &[x, s.lo(k, s.up(k, x))])
                    .or_else(|| s.chain(&["upper(lower(X))", "X"], &[s.up(k, s.lo(k, x)), x]))
            }));
            e
        }
        PropositionId::P06 => {
            if !p.transitive {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(subsets);
            // R ∪ R⁻¹ need not be transitive, so s∨p is outside the claim.
            e.record(
                s.first_subset(Forward, &[Successor, Predecessor, SuccAndPred], |k, x| {
                    s.chain(
                        &["lower(X)", "lower(lower(X))"],
                        &[s.lo(k, x), s.lo(k, s.lo(k, x))],
                    )
                    .or_else(|| {
                        s.chain(
                            &["upper(upper(X))", "upper(X)"],
                            &[s.up(k, s.up(k, x)), s.up(k, x)],
                        )
                    })
                }),
            );
            e
        }
        PropositionId::P07 => {
            let mut e = Evaluation::checked(0);
            let hood = |k: NeighborhoodKind, x: usize| s.space.neighborhoods(k)[x];
            for x in 0..s.n() {
                let (sc, pr, and, or) = (
                    hood(Successor, x),
                    hood(Predecessor, x),
                    hood(SuccAndPred, x),
                    hood(SuccOrPred, x),
                );
                let bad = s
                    .chain(&["R_{s∧p}(x)", "R_s(x)", "R_{s∨p}(x)"], &[and, sc, or])
                    .or_else(|| s.chain(&["R_{s∧p}(x)", "R_p(x)", "R_{s∨p}(x)"], &[and, pr, or]))
                    .or_else(|| s.equal("R_{s∧p}(x)", and, sc & pr))
                    .or_else(|| s.equal("R_{s∨p}(x)", or, sc | pr));
                if let Some((observed, expected)) = bad {
                    let label = s.relation.universe().label(x);
                    e.record(Some(Finding {
                        direction: Forward,
                        kinds: Vec::new(),
                        witness: vec![ElementSet::from_indices(s.n(), [x])],
                        observed: format!("at {label}: {observed}"),
                        expected,
                    }));
                    break;
                }
            }
            e
        }
        PropositionId::P08 => cover_iff(s, Successor, p.inverse_serial, "inverse serial", Forward),
        PropositionId::P09 => cover_iff(s, Predecessor, p.serial, "serial", Forward),
        PropositionId::P10 => cover_iff(
            s,
            SuccAndPred,
            relation_subbase_condition(s.relation, SuccAndPred),
            "symmetric and (serial or inverse serial)",
            Converse,
        ),
        PropositionId::P11 => cover_iff(
            s,
            SuccOrPred,
            relation_subbase_condition(s.relation, SuccOrPred),
            "serial or inverse serial",
            Converse,
        ),
        PropositionId::P12 => {
            if !p.symmetric {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(0);
            if p.serial != p.inverse_serial {
                e.record(Some(Finding {
                    direction: Forward,
                    kinds: Vec::new(),
                    witness: Vec::new(),
                    observed: format!(
                        "serial = {}, inverse serial = {}",
                        p.serial, p.inverse_serial
                    ),
                    expected: "serial = inverse serial".into(),
                }));
            }
            e
        }
        PropositionId::P13 => collapse(s),
        PropositionId::P14 => refinements(s),
        PropositionId::P15 => {
            let mut e = Evaluation::checked(subsets);
            e.record(
                s.first_subset(Forward, &[Successor, Predecessor], |mid, x| {
                    s.chain(
                        &["lower_{s∨p}(X)", "lower_mid(X)", "lower_{s∧p}(X)"],
                        &[s.lo(SuccOrPred, x), s.lo(mid, x), s.lo(SuccAndPred, x)],
                    )
                    .or_else(|| {
                        s.chain(
                            &["upper_{s∧p}(X)", "upper_mid(X)", "upper_{s∨p}(X)"],
                            &[s.up(SuccAndPred, x), s.up(mid, x), s.up(SuccOrPred, x)],
                        )
                    })
                }),
            );
            e
        }
        PropositionId::P16 => serial_chain(s, p.serial, Successor),
        PropositionId::P17 => serial_chain(s, p.inverse_serial, Predecessor),
        PropositionId::P18 => {
            if !(p.symmetric && (p.serial || p.inverse_serial)) {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(subsets);
            e.record(s.first_subset(Forward, &[SuccAndPred], |k, x| {
                s.chain(&["lower(X)", "upper(X)"], &[s.lo(k, x), s.up(k, x)])
            }));
            e
        }
        PropositionId::P19 => {
            if !p.reflexive {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(subsets);
            e.record(
                s.first_subset(Forward, &[Successor, Predecessor], |mid, x| {
                    s.chain(
                        &[
                            "lower_{s∨p}(X)",
                            "lower_mid(X)",
                            "lower_{s∧p}(X)",
                            "X",
                            "upper_{s∧p}(X)",
                            "upper_mid(X)",
                            "upper_{s∨p}(X)",
                        ],
                        &[
                            s.lo(SuccOrPred, x),
                            s.lo(mid, x),
                            s.lo(SuccAndPred, x),
                            x,
                            s.up(SuccAndPred, x),
                            s.up(mid, x),
                            s.up(SuccOrPred, x),
                        ],
                    )
                    .or_else(|| {
                        // every kind, not only the chain ends
                        KINDS.iter().find_map(|&k| {
                            s.chain(&["lower(X)", "X", "upper(X)"], &[s.lo(k, x), x, s.up(k, x)])
                        })
                    })
                }),
            );
            e
        }
        PropositionId::P20 => {
            if !p.tolerance {
                return Evaluation::vacuous();
            }
            let mut e = Evaluation::checked(subsets);
            e.record(
                s.first_subset(Forward, &[Predecessor, SuccAndPred, SuccOrPred], |k, x| {
                    s.equal("lower_k(X)", s.lo(k, x), s.lo(Successor, x))
                        .or_else(|| s.equal("upper_k(X)", s.up(k, x), s.up(Successor, x)))
                        .or_else(|| {
                            s.chain(&["lower(X)", "X", "upper(X)"], &[s.lo(k, x), x, s.up(k, x)])
                        })
                }),
            );
            e
        }
        PropositionId::P21 => pointwise_vs_refinement(s),
        PropositionId::P22 => preorder_base(s),
    }
}

fn cover_iff(
    s: &Subject<'_>,
    kind: NeighborhoodKind,
    condition: bool,
    condition_name: &str,
    converse: Direction,
) -> Evaluation {
    let mut e = Evaluation::checked(0);
    let family = s.family(kind);
    let covers = is_cover(family);
    let uncovered = family.union().complement();
    if !implication(condition, covers) {
        e.record(Some(Finding {
            direction: Direction::Forward,
            kinds: vec![kind],
            witness: vec![uncovered],
            observed: format!(
                "{condition_name} but S_{kind} leaves {} uncovered",
                s.render(uncovered)
            ),
            expected: format!("S_{kind} covers U"),
        }));
    }
    if !implication(covers, condition) {
        e.record(Some(Finding {
            direction: converse,
            kinds: vec![kind],
            witness: Vec::new(),
            observed: format!("S_{kind} = {} covers U", s.render_family(family)),
            expected: format!("R is {condition_name}"),
        }));
    }
    e
}

fn serial_chain(s: &Subject<'_>, hypothesis: bool, mid: NeighborhoodKind) -> Evaluation {
    if !hypothesis {
        return Evaluation::vacuous();
    }
    let mut e = Evaluation::checked(s.powerset_size());
    e.record(s.first_subset(Direction::Forward, &[mid], |k, x| {
        s.chain(
            &["lower_{s∨p}(X)", "lower(X)", "upper(X)", "upper_{s∨p}(X)"],
            &[
                s.lo(SuccOrPred, x),
                s.lo(k, x),
                s.up(k, x),
                s.up(SuccOrPred, x),
            ],
        )
    }));
    e
}

fn family_mismatch(
    s: &Subject<'_>,
    a: NeighborhoodKind,
    b: NeighborhoodKind,
    what: &str,
) -> Finding {
    let (fa, fb) = match what {
        "T" => (
            s.topology(a)
                .map(|t| t.opens().to_string())
                .unwrap_or_default(),
            s.topology(b)
                .map(|t| t.opens().to_string())
                .unwrap_or_default(),
        ),
        _ => (s.family(a).to_string(), s.family(b).to_string()),
    };
    Finding {
        direction: Direction::Forward,
        kinds: vec![a, b],
        witness: Vec::new(),
        observed: format!("{what}_{a} = {fa}, {what}_{b} = {fb}"),
        expected: format!("{what}_{a} = {what}_{b}"),
    }
}

fn collapse(s: &Subject<'_>) -> Evaluation {
    let p = s.profile;
    if !(p.symmetric && p.serial) {
        return Evaluation::vacuous();
    }
    let mut e = Evaluation::checked(0);
    let anchor = SuccAndPred;
    for k in [Successor, Predecessor, SuccOrPred] {
        if s.family(k) != s.family(anchor) {
            e.record(Some(family_mismatch(s, anchor, k, "S")));
            return e;
        }
    }
    for k in [Successor, Predecessor, SuccOrPred] {
        if s.topology(k) != s.topology(anchor) || s.topology(k).is_none() {
            e.record(Some(family_mismatch(s, anchor, k, "T")));
            return e;
        }
    }
    if p.equivalence {
        let t = s
            .topology(Successor)
            .expect("equivalence relations are serial");
        let classes = s.family(Successor);
        let unions = SetFamily::new(
            Arc::clone(classes.universe()),
            (0..1u64 << classes.len()).map(|pick| {
                classes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .fold(ElementSet::empty(s.n()), |acc, (_, c)| acc | c)
            }),
        );
        if t.opens() != &unions {
            e.record(Some(Finding {
                direction: Direction::Forward,
                kinds: vec![Successor],
                witness: Vec::new(),
                observed: format!("T = {}", t.opens()),
                expected: format!("unions of classes {unions}"),
            }));
        } else if let Some(open) = t.opens().iter().find(|&o| !t.is_closed(o)) {
            e.record(Some(Finding {
                direction: Direction::Forward,
                kinds: vec![Successor],
                witness: vec![open],
                observed: format!("{} is open but not closed", s.render(open)),
                expected: "every open set is closed".into(),
            }));
        }
    }
    e
}

fn refinements(s: &Subject<'_>) -> Evaluation {
    let p = s.profile;
    if !(p.reflexive || p.serial || p.inverse_serial) {
        return Evaluation::vacuous();
    }
    let mut claims: Vec<(NeighborhoodKind, NeighborhoodKind)> = Vec::new();
    if p.reflexive {
        claims.extend([
            (SuccAndPred, Successor),
            (SuccAndPred, Predecessor),
            (Successor, SuccOrPred),
            (Predecessor, SuccOrPred),
        ]);
    }
    if p.serial && !claims.contains(&(Predecessor, SuccOrPred)) {
        claims.push((Predecessor, SuccOrPred));
    }
    if p.inverse_serial && !claims.contains(&(Successor, SuccOrPred)) {
        claims.push((Successor, SuccOrPred));
    }

    let mut e = Evaluation::checked(0);
    for &(a, b) in &claims {
        if !refines(s.family(a), s.family(b)).expect("same universe") {
            e.record(Some(Finding {
                direction: Direction::Forward,
                kinds: vec![a, b],
                witness: Vec::new(),
                observed: format!("S_{a} = {} is not ⪯ S_{b} = {}", s.family(a), s.family(b)),
                expected: format!("S_{a} ⪯ S_{b}"),
            }));
        }
    }
    // The ordering between topologies is checked under both inclusion readings.
    for &(a, b) in &claims {
        let (Some(ta), Some(tb)) = (s.topology(a), s.topology(b)) else {
            continue;
        };
        let sub = ta.opens().is_subfamily_of(tb.opens());
        let sup = tb.opens().is_subfamily_of(ta.opens());
        for (ok, reading, rel) in [
            (sub, "topology-subset", "⊆"),
            (sup, "topology-superset", "⊇"),
        ] {
            if !ok {
                e.record(Some(Finding {
                    direction: Direction::Reading(reading),
                    kinds: vec![a, b],
                    witness: Vec::new(),
                    observed: format!("T_{a} = {}, T_{b} = {}", ta.opens(), tb.opens()),
                    expected: format!("T_{a} {rel} T_{b}"),
                }));
            }
        }
    }
    e
}

fn pointwise_vs_refinement(s: &Subject<'_>) -> Evaluation {
    let mut e = Evaluation::checked(0);
    for i in KINDS {
        for j in KINDS {
            if i == j {
                continue;
            }
            let (hi, hj) = (s.space.neighborhoods(i), s.space.neighborhoods(j));
            let pointwise = hi.iter().zip(hj).all(|(a, b)| a.is_subset(*b));
            let refined = refines(s.family(i), s.family(j)).expect("same universe");
            if pointwise && !refined {
                e.record(Some(Finding {
                    direction: Direction::Forward,
                    kinds: vec![i, j],
                    witness: Vec::new(),
                    observed: format!("R_{i}(x) ⊆ R_{j}(x) everywhere but S_{i} is not ⪯ S_{j}"),
                    expected: format!("S_{i} ⪯ S_{j}"),
                }));
            }
            if refined && !pointwise {
                let x = hi
                    .iter()
                    .zip(hj)
                    .position(|(a, b)| !a.is_subset(*b))
                    .unwrap();
                e.record(Some(Finding {
                    direction: Direction::Converse,
                    kinds: vec![i, j],
                    witness: vec![ElementSet::from_indices(s.n(), [x])],
                    observed: format!(
                        "S_{i} ⪯ S_{j} but R_{i}({0}) = {1} ⊄ R_{j}({0}) = {2}",
                        s.relation.universe().label(x),
                        s.render(hi[x]),
                        s.render(hj[x])
                    ),
                    expected: format!("R_{i}(x) ⊆ R_{j}(x) for all x"),
                }));
            }
        }
    }
    e
}

fn preorder_base(s: &Subject<'_>) -> Evaluation {
    if !s.profile.preorder {
        return Evaluation::vacuous();
    }
    let mut e = Evaluation::checked(0);
    for k in KINDS {
        let family = s.family(k);
        let direction = if k == SuccOrPred {
            Direction::Reading("succ-or-pred")
        } else {
            Direction::Forward
        };
        let ok = base_conditions(family)
            && s.topology(k)
                .is_some_and(|t| is_base(family, t).unwrap_or(false));
        if !ok {
            e.record(Some(Finding {
                direction,
                kinds: vec![k],
                witness: Vec::new(),
                observed: format!("S_{k} = {family} fails B1/B2"),
                expected: format!("S_{k} is a base"),
            }));
        }
    }
    e
}

/// Evaluates `id` on `r` from scratch.
pub fn evaluate_relation(id: PropositionId, r: &BinaryRelation) -> Evaluation {
    evaluate(id, &Subject::new(r))
}

/// The first refutation of `id` on `r`, forward direction first.
pub fn check_proposition(id: PropositionId, r: &BinaryRelation) -> Option<Finding> {
    evaluate_relation(id, r)
        .findings
        .into_iter()
        .min_by_key(|f| f.direction)
}
