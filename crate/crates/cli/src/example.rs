//! The built-in worked example: `R = {(a,a),(a,c),(b,c),(c,a),(c,d)}` on
//! `U = {a,b,c,d}` with `X = {a,c,d}`.
//!
//! The reference values are fixed here and every run recomputes the sixteen
//! neighborhoods and eight approximations from scratch.

use std::fmt::Write as _;

use serde::Serialize;

use roughspace::testing::example_relation;
use roughspace::{
    neighborhood_at, ApproximationSpace, BinaryRelation, ElementSet, NeighborhoodKind,
};

use crate::{Outcome, OutputFormat, EXIT_MISMATCH, EXIT_OK};

use NeighborhoodKind::{Predecessor, SuccAndPred, SuccOrPred, Successor};

pub const EXAMPLE_SET: [&str; 3] = ["a", "c", "d"];

/// Reference neighborhoods per kind, for a, b, c, d in order.
const NEIGHBORHOODS: [(NeighborhoodKind, [&[&str]; 4]); 4] = [
    (Successor, [&["a", "c"], &["c"], &["a", "d"], &[]]),
    (Predecessor, [&["a", "c"], &[], &["a", "b"], &["c"]]),
    (SuccAndPred, [&["a", "c"], &[], &["a"], &[]]),
    (SuccOrPred, [&["a", "c"], &["c"], &["a", "b", "d"], &["c"]]),
];

/// Reference (lower, upper) approximations of `{a,c,d}` per kind.
const APPROXIMATIONS: [(NeighborhoodKind, &[&str], &[&str]); 4] = [
    (Successor, &["a", "b", "c", "d"], &["a", "b", "c"]),
    (Predecessor, &["a", "b", "d"], &["a", "c", "d"]),
    (SuccAndPred, &["a", "b", "c", "d"], &["a", "c"]),
    (SuccOrPred, &["a", "b", "d"], &["a", "b", "c", "d"]),
];

/// Values computed for the example; separated from the comparison so that
/// alternative semantics can be compared against the reference.
#[derive(Debug, Clone)]
pub struct ComputedExample {
    pub relation: BinaryRelation,
    pub set: ElementSet,
    /// `neighborhoods[kind][element]`
    pub neighborhoods: [Vec<ElementSet>; 4],
    pub lower: [ElementSet; 4],
    pub upper: [ElementSet; 4],
}

impl ComputedExample {
    pub fn compute() -> Self {
        let relation = example_relation();
        let set = relation
            .universe()
            .set_of(EXAMPLE_SET)
            .expect("labels exist");
        let space = ApproximationSpace::new(&relation);
        let neighborhoods = NeighborhoodKind::ALL.map(|k| {
            (0..relation.len())
                .map(|x| neighborhood_at(&relation, k, x))
                .collect()
        });
        let table = space.table(set);
        ComputedExample {
            lower: NeighborhoodKind::ALL.map(|k| table.lower(k)),
            upper: NeighborhoodKind::ALL.map(|k| table.upper(k)),
            relation,
            set,
            neighborhoods,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    pub computed: Vec<String>,
    pub expected: Vec<String>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub entries: Vec<Entry>,
    pub all_match: bool,
    /// `lower_s(X) ⊋ upper_s(X)` was observed.
    pub lower_exceeds_upper: bool,
}

impl Comparison {
    pub fn mismatches(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.matches)
    }
}

fn labels(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub fn compare(computed: &ComputedExample) -> Comparison {
    let u = computed.relation.universe();
    let mut entries = Vec::with_capacity(24);
    let mut push = |name: String, got: ElementSet, want: &[&str]| {
        let computed = u.member_labels(got);
        let expected = labels(want);
        entries.push(Entry {
            matches: computed == expected,
            name,
            computed,
            expected,
        });
    };
    for (kind, per_element) in NEIGHBORHOODS {
        for (x, want) in per_element.iter().enumerate() {
            let got = computed.neighborhoods[kind.index()][x];
            push(format!("R_{kind}({})", u.label(x)), got, want);
        }
    }
    for (kind, lower, upper) in APPROXIMATIONS {
        push(
            format!("lower_{kind}(X)"),
            computed.lower[kind.index()],
            lower,
        );
        push(
            format!("upper_{kind}(X)"),
            computed.upper[kind.index()],
            upper,
        );
    }
    let s = Successor.index();
    Comparison {
        all_match: entries.iter().all(|e| e.matches),
        lower_exceeds_upper: computed.upper[s].is_strict_subset(computed.lower[s]),
        entries,
    }
}

fn braces(list: &[String]) -> String {
    if list.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", list.join(","))
    }
}

pub fn render(cmp: &Comparison, computed: &ComputedExample, format: OutputFormat) -> Outcome {
    let code = if cmp.all_match {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let stdout = match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(cmp).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let u = computed.relation.universe();
            let mut out = String::new();
            let pairs: Vec<String> = computed
                .relation
                .pairs()
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            let _ = writeln!(out, "U = {}", u.render(u.full_set()));
            let _ = writeln!(out, "R = {{{}}}", pairs.join(","));
            let _ = writeln!(out, "X = {}\n", u.render(computed.set));
            let mut rows = vec![vec![
                "set".to_string(),
                "computed".into(),
                "expected".into(),
                String::new(),
            ]];
            for e in &cmp.entries {
                rows.push(vec![
                    e.name.clone(),
                    braces(&e.computed),
                    braces(&e.expected),
                    if e.matches {
                        "ok".into()
                    } else {
                        "MISMATCH".into()
                    },
                ]);
            }
            out.push_str(&crate::table(&rows));
            let matched = cmp.entries.iter().filter(|e| e.matches).count();
            let _ = writeln!(out, "\n{matched}/{} sets match", cmp.entries.len());
            if cmp.lower_exceeds_upper {
                let s = Successor.index();
                let _ = writeln!(
                    out,
                    "note: lower_s(X) = {} ⊋ upper_s(X) = {} (d has no successors)",
                    u.render(computed.lower[s]),
                    u.render(computed.upper[s])
                );
            }
            out
        }
    };
    let stderr = if cmp.all_match {
        String::new()
    } else {
        let names: Vec<&str> = cmp.mismatches().map(|e| e.name.as_str()).collect();
        format!("error: mismatch in {}\n", names.join(", "))
    };
    Outcome {
        stdout,
        stderr,
        code,
    }
}

pub fn cmd_example(format: OutputFormat) -> Outcome {
    let computed = ComputedExample::compute();
    let cmp = compare(&computed);
    render(&cmp, &computed, format)
}
