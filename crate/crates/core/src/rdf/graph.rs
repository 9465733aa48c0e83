use std::collections::{BTreeMap, HashMap};

use indexmap::IndexSet;

use super::{Iri, Term, Triple};

/// A deduplicated set of triples with subject, predicate and object indexes.
///
/// Iteration follows insertion order. Equality is set equality and ignores
/// the prefix map.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: IndexSet<Triple>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Iri, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
    prefixes: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` when the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let (idx, inserted) = self.triples.insert_full(triple);
        if inserted {
            let t = &self.triples[idx];
            self.by_subject.entry(t.subject().clone()).or_default().push(idx);
            self.by_predicate.entry(t.predicate().clone()).or_default().push(idx);
            self.by_object.entry(t.object().clone()).or_default().push(idx);
        }
        inserted
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn with_subject<'a>(&'a self, subject: &Term) -> impl Iterator<Item = &'a Triple> + 'a {
        self.lookup(self.by_subject.get(subject))
    }

    pub fn with_predicate<'a>(&'a self, predicate: &Iri) -> impl Iterator<Item = &'a Triple> + 'a {
        self.lookup(self.by_predicate.get(predicate))
    }

    pub fn with_object<'a>(&'a self, object: &Term) -> impl Iterator<Item = &'a Triple> + 'a {
        self.lookup(self.by_object.get(object))
    }

    pub(crate) fn subject_count(&self, subject: &Term) -> usize {
        self.by_subject.get(subject).map_or(0, Vec::len)
    }

    pub(crate) fn predicate_count(&self, predicate: &Iri) -> usize {
        self.by_predicate.get(predicate).map_or(0, Vec::len)
    }

    pub(crate) fn object_count(&self, object: &Term) -> usize {
        self.by_object.get(object).map_or(0, Vec::len)
    }

    pub fn distinct_subjects(&self) -> usize {
        self.by_subject.len()
    }

    fn lookup<'a>(&'a self, ids: Option<&'a Vec<usize>>) -> impl Iterator<Item = &'a Triple> + 'a {
        ids.into_iter().flatten().map(move |&i| &self.triples[i])
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(prefix.into(), namespace.into());
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(t))
    }
}

impl Eq for Graph {}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = indexmap::set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}
