//! Relation files.
//!
//! JSON form:
//!
//! ```json
//! {"universe": ["a","b"], "pairs": [["a","b"]]}
//! ```
//!
//! Text form: the first non-empty line lists the universe labels separated by
//! whitespace; every following non-empty line is a pair `x y`. Lines starting
//! with `#` are ignored.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::BinaryRelation;
use crate::universe::Universe;

/// Serialized shape of a relation. Also embedded in harness reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDocument {
    pub universe: Vec<String>,
    pub pairs: Vec<[String; 2]>,
}

impl RelationDocument {
    pub fn of(r: &BinaryRelation) -> Self {
        RelationDocument {
            universe: r.universe().labels().to_vec(),
            pairs: r.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }

    pub fn to_relation(&self) -> Result<BinaryRelation> {
        let u = Universe::new(self.universe.iter().cloned())?.shared();
        BinaryRelation::from_pairs(u, self.pairs.iter().map(|[x, y]| (x, y)))
    }
}

pub fn to_json(r: &BinaryRelation) -> String {
    serde_json::to_string(&RelationDocument::of(r)).expect("relation documents always serialize")
}

pub fn from_json(text: &str) -> Result<BinaryRelation> {
    let doc: RelationDocument =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    doc.to_relation()
}

pub fn to_text(r: &BinaryRelation) -> String {
    let mut out = r.universe().labels().join(" ");
    out.push('\n');
    for (x, y) in r.pairs() {
        out.push_str(&x);
        out.push(' ');
        out.push_str(&y);
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<BinaryRelation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing universe line".into(),
    })?;
    let universe = Universe::new(header.split_whitespace())
        .map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })?
        .shared();

    let mut pairs = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [x, y] = fields[..] else {
            return Err(Error::Parse {
                line,
                message: format!("expected a pair `x y`, found {content:?}"),
            });
        };
        for label in [x, y] {
            universe.index_of(label).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        pairs.push((x, y));
    }
    BinaryRelation::from_pairs(universe, pairs)
}

/// Accepts either form; a document whose first non-blank character is `{` is
/// read as JSON.
pub fn parse_relation(text: &str) -> Result<BinaryRelation> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}
