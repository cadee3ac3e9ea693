use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::MAX_UNIVERSE;

/// A finite, non-empty, ordered collection of distinctly labelled elements.
///
/// Element indices follow declaration order and every rendered set lists its
/// members in that order.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if labels.len() > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe { labels, index })
    }

    /// Universe labelled `1..=n`, used by the enumeration harness.
    pub fn numbered(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.len())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn singleton(&self, label: &str) -> Result<ElementSet> {
        Ok(ElementSet::from_indices(
            self.len(),
            [self.index_of(label)?],
        ))
    }

    /// Builds a set from member labels. Repeated labels are idempotent.
    pub fn set_of<I, S>(&self, labels: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = self.empty_set();
        for label in labels {
            set.insert(self.index_of(label.as_ref())?);
        }
        Ok(set)
    }

    /// Parses the command-line set syntax: comma separated labels, the empty
    /// string denoting the empty set.
    pub fn parse_set(&self, spec: &str) -> Result<ElementSet> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self.empty_set());
        }
        self.set_of(spec.split(',').map(str::trim))
    }

    pub fn member_labels(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Renders `{a,b,c}` with members in universe order; `∅` for the empty set.
    pub fn render(&self, set: ElementSet) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        let members: Vec<&str> = set.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", members.join(","))
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.labels).finish()
    }
}

/// Two handles denote the same universe when they share storage or carry the
/// same labels in the same order.
pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a.labels == b.labels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_universe() {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(u.index_of("c").unwrap(), 2);
    }

    #[test]
    fn minimal_universe() {
        assert_eq!(Universe::new(["x"]).unwrap().len(), 1);
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(
            Universe::new(["a", "a"]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            Universe::new(Vec::<String>::new()).unwrap_err(),
            Error::EmptyUniverse
        );
    }

    #[test]
    fn rejects_oversized() {
        assert_eq!(
            Universe::numbered(65).unwrap_err(),
            Error::UniverseTooLarge(65)
        );
        assert_eq!(Universe::numbered(64).unwrap().len(), 64);
    }

    #[test]
    fn index_is_a_bijection() {
        let u = Universe::new(["q", "w", "e", "r", "t"]).unwrap();
        for (i, l) in u.labels().iter().enumerate() {
            assert_eq!(u.index_of(l).unwrap(), i);
            assert_eq!(u.label(i), l);
        }
    }

    #[test]
    fn set_syntax() {
        let u = Universe::new(["a", "b", "c", "d"]).unwrap();
        let x = u.parse_set("a,c,d").unwrap();
        assert_eq!(u.render(x), "{a,c,d}");
        assert!(u.parse_set("").unwrap().is_empty());
        assert_eq!(
            u.parse_set("a,z").unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert_eq!(u.render(u.empty_set()), "∅");
    }
}
