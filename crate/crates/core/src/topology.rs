//! Finite topologies generated from relation-induced subbases.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::neighborhood::{neighborhood_family, NeighborhoodKind, SetFamily};
use crate::relation::BinaryRelation;
use crate::set::ElementSet;
use crate::universe::Universe;

/// A family of open sets containing `∅` and `U` and closed under union and
/// intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    opens: SetFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TopologyOrder {
    Equal,
    StrictlySuperset,
    StrictlySubset,
    Incomparable,
}

impl Topology {
    /// Wraps a family that is already known to satisfy the axioms.
    pub fn from_opens(opens: SetFamily) -> Option<Self> {
        is_topology(&opens).then_some(Topology { opens })
    }

    pub fn discrete(universe: Arc<Universe>) -> Self {
        let n = universe.len();
        Topology {
            opens: SetFamily::new(universe, ElementSet::all_subsets(n)),
        }
    }

    pub fn indiscrete(universe: Arc<Universe>) -> Self {
        let sets = [universe.empty_set(), universe.full_set()];
        Topology {
            opens: SetFamily::new(universe, sets),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.opens.universe()
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    /// Never true: `∅` is always open.
    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, x: ElementSet) -> bool {
        self.opens.contains(x)
    }

    pub fn is_closed(&self, x: ElementSet) -> bool {
        self.opens.contains(x.complement())
    }

    /// Closed sets in canonical order.
    pub fn closed_sets(&self) -> SetFamily {
        SetFamily::new(
            Arc::clone(self.universe()),
            self.opens.iter().map(ElementSet::complement),
        )
    }
}

/// S0: the members of `f` cover the universe.
pub fn is_cover(f: &SetFamily) -> bool {
    f.union().is_full()
}

/// The relation-property side of the subbase characterizations:
///
/// | kind | condition |
/// |------|-----------|
/// | s    | inverse serial |
/// | p    | serial |
/// | s∧p  | symmetric and (serial or inverse serial) |
/// | s∨p  | serial or inverse serial |
pub fn relation_subbase_condition(r: &BinaryRelation, kind: NeighborhoodKind) -> bool {
    let p = r.profile();
    match kind {
        NeighborhoodKind::Successor => p.inverse_serial,
        NeighborhoodKind::Predecessor => p.serial,
        NeighborhoodKind::SuccAndPred => p.symmetric && (p.serial || p.inverse_serial),
        NeighborhoodKind::SuccOrPred => p.serial || p.inverse_serial,
    }
}

fn uncovered(f: &SetFamily) -> Error {
    let missing = f.union().complement();
    Error::NotACover {
        uncovered: f.universe().member_labels(missing),
    }
}

/// Topology generated by a subbase: the closure of `S ∪ {∅, U}` under pairwise
/// union and intersection. On a finite universe this is the family of unions
/// of finite intersections of members.
pub fn generate_topology(subbase: &SetFamily) -> Result<Topology> {
    if !is_cover(subbase) {
        return Err(uncovered(subbase));
    }
    let u = subbase.universe();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut opens: Vec<ElementSet> = Vec::new();
    let mut queue: Vec<ElementSet> = Vec::new();
    for s in subbase.iter().chain([u.empty_set(), u.full_set()]) {
        if seen.insert(s) {
            queue.push(s);
        }
    }
    while let Some(a) = queue.pop() {
        for &b in &opens {
            for c in [a | b, a & b] {
                if seen.insert(c) {
                    queue.push(c);
                }
            }
        }
        opens.push(a);
    }
    Ok(Topology {
        opens: SetFamily::new(Arc::clone(u), opens),
    })
}

/// Topology generated by `{R_kind(x) : x ∈ U}`.
pub fn induced_topology(r: &BinaryRelation, kind: NeighborhoodKind) -> Result<Topology> {
    generate_topology(&neighborhood_family(r, kind))
}

/// A1–A3 on a finite family: contains `∅` and `U` and is closed under pairwise
/// union and intersection.
pub fn is_topology(f: &SetFamily) -> bool {
    let u = f.universe();
    if !f.contains(u.empty_set()) || !f.contains(u.full_set()) {
        return false;
    }
    let members = f.members();
    members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&b| f.contains(a | b) && f.contains(a & b))
    })
}

/// True when every open set of `t` is a union of members of `base`.
/// Fails with `NotSubfamily` if some member of `base` is not open.
pub fn is_base(base: &SetFamily, t: &Topology) -> Result<bool> {
    base.check_same_universe(t.opens())?;
    if !base.is_subfamily_of(t.opens()) {
        return Err(Error::NotSubfamily);
    }
    Ok(t.opens().iter().all(|open| {
        let covered = base
            .iter()
            .filter(|b| b.is_subset(open))
            .fold(t.universe().empty_set(), |acc, b| acc | b);
        covered == open
    }))
}

/// B1 and B2: the members cover `U`, and every point of a pairwise
/// intersection lies in some member inside that intersection.
pub fn base_conditions(base: &SetFamily) -> bool {
    if !is_cover(base) {
        return false;
    }
    let members = base.members();
    members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..].iter().all(|&b| {
            let meet = a & b;
            // the union of members inside the intersection must fill it
            let inner = members
                .iter()
                .filter(|z| z.is_subset(meet))
                .fold(ElementSet::empty(meet.universe_size()), |acc, &z| acc | z);
            inner == meet
        })
    })
}

/// Union of all open sets contained in `x`.
pub fn interior(t: &Topology, x: ElementSet) -> ElementSet {
    t.opens()
        .iter()
        .filter(|o| o.is_subset(x))
        .fold(t.universe().empty_set(), |acc, o| acc | o)
}

/// Intersection of all closed sets containing `x`.
pub fn closure(t: &Topology, x: ElementSet) -> ElementSet {
    t.opens()
        .iter()
        .map(ElementSet::complement)
        .filter(|c| x.is_subset(*c))
        .fold(t.universe().full_set(), |acc, c| acc & c)
}

/// Cover refinement: every member of `finer` lies inside some member of
/// `coarser`.
pub fn refines(finer: &SetFamily, coarser: &SetFamily) -> Result<bool> {
    finer.check_same_universe(coarser)?;
    Ok(finer.iter().all(|a| coarser.iter().any(|b| a.is_subset(b))))
}

/// Compares two topologies as families of open sets.
pub fn compare_topologies(a: &Topology, b: &Topology) -> Result<TopologyOrder> {
    a.opens().check_same_universe(b.opens())?;
    let a_in_b = a.opens().is_subfamily_of(b.opens());
    let b_in_a = b.opens().is_subfamily_of(a.opens());
    Ok(match (a_in_b, b_in_a) {
        (true, true) => TopologyOrder::Equal,
        (true, false) => TopologyOrder::StrictlySubset,
        (false, true) => TopologyOrder::StrictlySuperset,
        (false, false) => TopologyOrder::Incomparable,
    })
}

/// Covering pairs `(i, j)` of the inclusion order on the opens: `opens[i] ⊂
/// opens[j]` with nothing open strictly between.
pub fn hasse_edges(t: &Topology) -> Vec<(usize, usize)> {
    let opens = t.opens().members();
    let mut edges = Vec::new();
    for (i, &a) in opens.iter().enumerate() {
        for (j, &b) in opens.iter().enumerate() {
            if a.is_strict_subset(b)
                && !opens
                    .iter()
                    .any(|&c| a.is_strict_subset(c) && c.is_strict_subset(b))
            {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Graphviz rendering of the inclusion Hasse diagram, one node per open set.
pub fn to_dot(t: &Topology) -> String {
    let u = t.universe();
    let mut out = String::from("digraph topology {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, open) in t.opens().iter().enumerate() {
        let _ = writeln!(out, "  o{i} [label=\"{}\"];", u.render(open));
    }
    for (i, j) in hasse_edges(t) {
        let _ = writeln!(out, "  o{i} -> o{j};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::example_relation;
    use NeighborhoodKind::*;

    fn u(n: usize) -> Arc<Universe> {
        Universe::numbered(n).unwrap().shared()
    }

    fn fam(u: &Arc<Universe>, sets: &[&[&str]]) -> SetFamily {
        SetFamily::from_labels(u.clone(), sets.iter().map(|s| s.iter())).unwrap()
    }

    #[test]
    fn cover_examples() {
        let r = example_relation();
        let s = neighborhood_family(&r, Successor);
        assert!(!is_cover(&s));
        assert_eq!(
            generate_topology(&s).unwrap_err(),
            Error::NotACover {
                uncovered: vec!["b".into()]
            }
        );
        let u3 = u(3);
        assert!(is_cover(&fam(&u3, &[&["1", "2"], &["2", "3"]])));
        assert!(is_cover(&fam(&u3, &[&["1", "2", "3"]])));
    }

    #[test]
    fn subbase_condition_examples() {
        let r = example_relation();
        assert!(!relation_subbase_condition(&r, Predecessor));
        let id = BinaryRelation::identity(u(3));
        for k in NeighborhoodKind::ALL {
            assert!(relation_subbase_condition(&id, k));
        }
        let one_two = BinaryRelation::from_pairs(u(2), [("1", "2")]).unwrap();
        assert!(!relation_subbase_condition(&one_two, SuccOrPred));
        assert!(is_cover(&neighborhood_family(&one_two, SuccOrPred)));
    }

    #[test]
    fn generation_examples() {
        let u3 = u(3);
        let t = generate_topology(&fam(&u3, &[&["1", "2"], &["2", "3"]])).unwrap();
        assert_eq!(
            t.opens().rendered(),
            ["∅", "{2}", "{1,2}", "{2,3}", "{1,2,3}"]
        );

        let t = generate_topology(&fam(&u3, &[&["1", "2"], &["3"]])).unwrap();
        assert_eq!(t.opens().rendered(), ["∅", "{3}", "{1,2}", "{1,2,3}"]);

        let t = generate_topology(&fam(&u3, &[&["1"], &["2"], &["3"]])).unwrap();
        assert_eq!(t, Topology::discrete(u3));
    }

    #[test]
    fn induced_examples() {
        let u2 = u(2);
        let r = BinaryRelation::from_pairs(u2.clone(), [("1", "1"), ("2", "1")]).unwrap();
        assert_eq!(
            induced_topology(&r, Predecessor)
                .unwrap()
                .opens()
                .rendered(),
            ["∅", "{1,2}"]
        );
        assert_eq!(
            induced_topology(&r, SuccOrPred).unwrap().opens().rendered(),
            ["∅", "{1}", "{1,2}"]
        );

        let u3 = u(3);
        let eq = BinaryRelation::from_pairs(
            u3,
            [("1", "1"), ("1", "2"), ("2", "1"), ("2", "2"), ("3", "3")],
        )
        .unwrap();
        for k in NeighborhoodKind::ALL {
            assert_eq!(
                induced_topology(&eq, k).unwrap().opens().rendered(),
                ["∅", "{3}", "{1,2}", "{1,2,3}"]
            );
        }
    }

    #[test]
    fn axiom_checks() {
        let u3 = u(3);
        assert!(is_topology(&fam(
            &u3,
            &[&[], &["2"], &["1", "2"], &["2", "3"], &["1", "2", "3"]]
        )));
        assert!(!is_topology(&fam(
            &u3,
            &[&[], &["1"], &["2"], &["1", "2", "3"]]
        )));
        assert!(is_topology(&fam(&u3, &[&[], &["1", "2", "3"]])));
        assert!(!is_topology(&fam(&u3, &[&["1", "2", "3"]])));
    }

    #[test]
    fn base_examples() {
        let u3 = u(3);
        let t = generate_topology(&fam(&u3, &[&["1", "2"], &["2", "3"]])).unwrap();
        assert!(is_base(t.opens(), &t).unwrap());
        assert!(!is_base(&fam(&u3, &[&["1", "2"], &["2", "3"]]), &t).unwrap());
        assert!(is_base(&fam(&u3, &[&["2"], &["1", "2"], &["2", "3"]]), &t).unwrap());
        assert_eq!(
            is_base(&fam(&u3, &[&["1"]]), &t).unwrap_err(),
            Error::NotSubfamily
        );
    }

    #[test]
    fn base_condition_examples() {
        let u3 = u(3);
        assert!(base_conditions(&fam(&u3, &[&["1", "2"], &["3"]])));
        assert!(!base_conditions(&fam(&u3, &[&["1", "2"], &["2", "3"]])));
        assert!(base_conditions(&fam(&u3, &[&["1"], &["2"], &["3"]])));
        assert!(!base_conditions(&fam(&u3, &[&["1"], &["2"]])));
    }

    #[test]
    fn interior_and_closure_examples() {
        let u3 = u(3);
        let t = generate_topology(&fam(&u3, &[&["1", "2"], &["2", "3"]])).unwrap();
        assert!(interior(&t, u3.set_of(["1", "3"]).unwrap()).is_empty());
        assert_eq!(interior(&t, u3.full_set()), u3.full_set());
        assert_eq!(closure(&t, u3.set_of(["2"]).unwrap()), u3.full_set());
        assert!(closure(&t, u3.empty_set()).is_empty());
        assert_eq!(
            t.closed_sets().rendered(),
            ["∅", "{1}", "{3}", "{1,3}", "{1,2,3}"]
        );

        let discrete = Topology::discrete(u3.clone());
        let indiscrete = Topology::indiscrete(u3.clone());
        for x in ElementSet::all_subsets(3) {
            assert_eq!(interior(&discrete, x), x);
            if !x.is_empty() {
                assert_eq!(closure(&indiscrete, x), u3.full_set());
            }
        }
    }

    #[test]
    fn interior_closure_laws_on_generated_topologies() {
        let u4 = u(4);
        for code in (0u64..1 << 16).step_by(97) {
            let r = BinaryRelation::from_code(u4.clone(), code);
            for k in NeighborhoodKind::ALL {
                let Ok(t) = induced_topology(&r, k) else {
                    continue;
                };
                for x in ElementSet::all_subsets(4) {
                    let i = interior(&t, x);
                    let c = closure(&t, x);
                    assert!(i.is_subset(x) && x.is_subset(c));
                    assert_eq!(interior(&t, i), i);
                    assert_eq!(closure(&t, c), c);
                    assert!(t.is_open(i) && t.is_closed(c));
                    assert_eq!(c, interior(&t, x.complement()).complement());
                    for y in ElementSet::all_subsets(4) {
                        assert_eq!(interior(&t, x & y), i & interior(&t, y));
                        assert_eq!(closure(&t, x | y), c | closure(&t, y));
                    }
                }
            }
        }
    }

    #[test]
    fn refinement_examples() {
        let u2 = u(2);
        let singletons = fam(&u2, &[&["1"], &["2"]]);
        let whole = fam(&u2, &[&["1", "2"]]);
        assert!(refines(&singletons, &whole).unwrap());
        assert!(!refines(&whole, &singletons).unwrap());

        let r = example_relation();
        let and = neighborhood_family(&r, SuccAndPred);
        let succ = neighborhood_family(&r, Successor);
        assert_eq!(and.rendered(), ["∅", "{a}", "{a,c}"]);
        assert!(refines(&and, &succ).unwrap());

        let other = Universe::new(["x", "y"]).unwrap().shared();
        let foreign = SetFamily::new(other.clone(), [other.full_set()]);
        assert_eq!(
            refines(&whole, &foreign).unwrap_err(),
            Error::UniverseMismatch
        );
    }

    #[test]
    fn comparison_examples() {
        let u3 = u(3);
        let d = Topology::discrete(u3.clone());
        let i = Topology::indiscrete(u3);
        assert_eq!(
            compare_topologies(&i, &d).unwrap(),
            TopologyOrder::StrictlySubset
        );
        assert_eq!(
            compare_topologies(&d, &i).unwrap(),
            TopologyOrder::StrictlySuperset
        );
        assert_eq!(compare_topologies(&d, &d).unwrap(), TopologyOrder::Equal);

        let u2 = u(2);
        let r = BinaryRelation::from_pairs(u2, [("1", "1"), ("2", "1")]).unwrap();
        let tp = induced_topology(&r, Predecessor).unwrap();
        let tor = induced_topology(&r, SuccOrPred).unwrap();
        assert_eq!(
            compare_topologies(&tp, &tor).unwrap(),
            TopologyOrder::StrictlySubset
        );

        let u3 = u(3);
        let a = generate_topology(&fam(&u3, &[&["1"], &["2", "3"]])).unwrap();
        let b = generate_topology(&fam(&u3, &[&["2"], &["1", "3"]])).unwrap();
        assert_eq!(
            compare_topologies(&a, &b).unwrap(),
            TopologyOrder::Incomparable
        );
    }

    #[test]
    fn dot_output() {
        let u3 = u(3);
        let t = generate_topology(&fam(&u3, &[&["1", "2"], &["2", "3"]])).unwrap();
        let dot = to_dot(&t);
        assert!(dot.starts_with("digraph topology {"));
        // ∅ ⊂ {2} ⊂ {1,2},{2,3} ⊂ U
        assert_eq!(
            hasse_edges(&t),
            vec![(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]
        );
        assert_eq!(dot.matches("->").count(), 5);
    }
}
