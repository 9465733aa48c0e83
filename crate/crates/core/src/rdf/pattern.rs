use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{quote, Graph, RdfError, Term, Triple};

/// One position of a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
    /// A quoted-triple pattern, e.g. `<< ?s ?p ?o >>`.
    Quoted(Box<TriplePattern>),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            PatternTerm::Term(_) => {}
            PatternTerm::Var(v) => {
                out.insert(v);
            }
            PatternTerm::Quoted(p) => p.collect_vars(out),
        }
    }

    /// The concrete term this position denotes under `binding`, if fully bound.
    /// An error means the substitution can never denote a valid term.
    fn ground(&self, binding: &Binding) -> Result<Option<Term>, RdfError> {
        match self {
            PatternTerm::Term(t) => Ok(Some(t.clone())),
            PatternTerm::Var(v) => Ok(binding.get(v).cloned()),
            PatternTerm::Quoted(p) => match p.apply(binding) {
                Some(t) => quote(t?).map(Some),
                None => Ok(None),
            },
        }
    }

    fn unify(&self, term: &Term, binding: &mut Binding) -> bool {
        match self {
            PatternTerm::Term(t) => t == term,
            PatternTerm::Var(v) => match binding.get(v) {
                Some(bound) => bound == term,
                None => {
                    binding.0.insert(v.clone(), term.clone());
                    true
                }
            },
            PatternTerm::Quoted(p) => match term.as_quoted() {
                Some(inner) => p.unify(inner, binding),
                None => false,
            },
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => t.fmt(f),
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Quoted(p) => write!(f, "<< {} {} {} >>", p.subject, p.predicate, p.object),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        self.subject.collect_vars(out);
        self.predicate.collect_vars(out);
        self.object.collect_vars(out);
    }

    /// Substitutes `binding` into the pattern. `None` when a variable is
    /// unbound; `Some(Err)` when the result is not a valid triple (literal
    /// subject, non-IRI predicate, nesting too deep).
    pub fn apply(&self, binding: &Binding) -> Option<Result<Triple, RdfError>> {
        let ground = |p: &PatternTerm| p.ground(binding);
        let (s, p, o) = match (ground(&self.subject), ground(&self.predicate), ground(&self.object)) {
            (Ok(Some(s)), Ok(Some(p)), Ok(Some(o))) => (s, p, o),
            (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => return Some(Err(e)),
            _ => return None,
        };
        let Term::Iri(p) = p else {
            return Some(Err(RdfError::NonIriPredicate));
        };
        Some(Triple::new(s, p, o))
    }

    fn unify(&self, triple: &Triple, binding: &mut Binding) -> bool {
        self.subject.unify(triple.subject(), binding)
            && self.predicate.unify(&Term::Iri(triple.predicate().clone()), binding)
            && self.object.unify(triple.object(), binding)
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// Variable name to term.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binding(BTreeMap<String, Term>);

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: impl Into<String>, term: Term) -> Option<Term> {
        self.0.insert(var.into(), term)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl FromIterator<(String, Term)> for Binding {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Binding(iter.into_iter().collect())
    }
}

pub type Solutions = BTreeSet<Binding>;

impl Graph {
    /// Conjunctive basic-graph-pattern evaluation with set semantics.
    pub fn match_patterns(&self, patterns: &[TriplePattern]) -> Result<Solutions, RdfError> {
        self.match_filtered(patterns, |_| true)
    }

    pub fn match_filtered(
        &self,
        patterns: &[TriplePattern],
        filter: impl Fn(&Binding) -> bool,
    ) -> Result<Solutions, RdfError> {
        if patterns.is_empty() {
            return Err(RdfError::EmptyPatternList);
        }
        let empty = Binding::new();
        let seed = (0..patterns.len())
            .min_by_key(|&i| self.estimate(&patterns[i], &empty))
            .unwrap_or(0);
        let mut order: Vec<&TriplePattern> = vec![&patterns[seed]];
        order.extend(patterns.iter().enumerate().filter(|(i, _)| *i != seed).map(|(_, p)| p));

        let mut out = Solutions::new();
        self.join(&order, Binding::new(), &mut out, &filter);
        Ok(out)
    }

    fn join(
        &self,
        order: &[&TriplePattern],
        binding: Binding,
        out: &mut Solutions,
        filter: &impl Fn(&Binding) -> bool,
    ) {
        let Some((pattern, rest)) = order.split_first() else {
            if filter(&binding) {
                out.insert(binding);
            }
            return;
        };
        let Some(candidates) = self.candidates(pattern, &binding) else {
            return;
        };
        for triple in candidates {
            let mut next = binding.clone();
            if pattern.unify(triple, &mut next) {
                self.join(rest, next, out, filter);
            }
        }
    }

    fn estimate(&self, pattern: &TriplePattern, binding: &Binding) -> usize {
        let ground = |p: &PatternTerm| p.ground(binding).ok().flatten();
        let mut best = self.len();
        if let Some(s) = ground(&pattern.subject) {
            best = best.min(self.subject_count(&s));
        }
        if let Some(Term::Iri(p)) = ground(&pattern.predicate) {
            best = best.min(self.predicate_count(&p));
        }
        if let Some(o) = ground(&pattern.object) {
            best = best.min(self.object_count(&o));
        }
        best
    }

    /// Triples that could match `pattern` under `binding`, taken from the
    /// narrowest applicable index. `None` when nothing can match.
    fn candidates<'a>(
        &'a self,
        pattern: &TriplePattern,
        binding: &Binding,
    ) -> Option<Box<dyn Iterator<Item = &'a Triple> + 'a>> {
        let s = pattern.subject.ground(binding).ok()?;
        let p = pattern.predicate.ground(binding).ok()?;
        let o = pattern.object.ground(binding).ok()?;
        let p = match p {
            Some(Term::Iri(p)) => Some(p),
            Some(_) => return None,
            None => None,
        };

        let mut options: Vec<(usize, Box<dyn Iterator<Item = &'a Triple> + 'a>)> = Vec::new();
        if let Some(s) = s {
            options.push((self.subject_count(&s), Box::new(self.with_subject(&s))));
        }
        if let Some(p) = p {
            options.push((self.predicate_count(&p), Box::new(self.with_predicate(&p))));
        }
        if let Some(o) = o {
            options.push((self.object_count(&o), Box::new(self.with_object(&o))));
        }
        Some(
            options
                .into_iter()
                .min_by_key(|(n, _)| *n)
                .map(|(_, it)| it)
                .unwrap_or_else(|| Box::new(self.iter())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{Iri, Literal};

    fn iri(s: &str) -> Term {
        Term::Iri(Iri::new(format!("http://example.org/{s}")).unwrap())
    }

    fn p(s: &str) -> Iri {
        Iri::new(format!("http://example.org/{s}")).unwrap()
    }

    fn var(v: &str) -> PatternTerm {
        PatternTerm::var(v)
    }

    fn graph(triples: &[(&str, &str, &str)]) -> Graph {
        triples
            .iter()
            .map(|(s, pr, o)| Triple::new(iri(s), p(pr), iri(o)).unwrap())
            .collect()
    }

    #[test]
    fn single_triple_match() {
        let g = graph(&[("a", "p", "b")]);
        let res = g.match_patterns(&[TriplePattern::new(var("x"), iri("p"), var("y"))]).unwrap();
        let expected: Binding = [("x".to_string(), iri("a")), ("y".to_string(), iri("b"))]
            .into_iter()
            .collect();
        assert_eq!(res, Solutions::from([expected]));
    }

    #[test]
    fn failed_join_is_empty() {
        let g = graph(&[("a", "p", "b")]);
        let res = g
            .match_patterns(&[
                TriplePattern::new(var("x"), iri("p"), var("y")),
                TriplePattern::new(var("y"), iri("p"), var("z")),
            ])
            .unwrap();
        assert!(res.is_empty());
    }

    #[test]
    fn empty_pattern_list() {
        assert_eq!(Graph::new().match_patterns(&[]), Err(RdfError::EmptyPatternList));
    }

    #[test]
    fn repeated_variable_in_one_pattern() {
        let g = graph(&[("a", "p", "a"), ("a", "p", "b")]);
        let res = g.match_patterns(&[TriplePattern::new(var("x"), iri("p"), var("x"))]).unwrap();
        assert_eq!(res.len(), 1);
    }

    #[test]
    fn predicate_variable_and_set_semantics() {
        let g = graph(&[("a", "p", "b"), ("a", "q", "b")]);
        let res = g.match_patterns(&[TriplePattern::new(var("s"), var("pr"), iri("b"))]).unwrap();
        assert_eq!(res.len(), 2);
        let res = g.match_patterns(&[TriplePattern::new(var("s"), var("pr"), var("o"))]);
        let projected: BTreeSet<_> = res.unwrap().iter().map(|b| b.get("s").cloned()).collect();
        assert_eq!(projected.len(), 1);
    }

    #[test]
    fn quoted_pattern_matches_annotation() {
        let base = Triple::new(iri("a"), p("p"), iri("b")).unwrap();
        let ann = Triple::new(quote(base).unwrap(), p("hasReference"), iri("r")).unwrap();
        let g: Graph = [ann].into_iter().collect();
        let pat = TriplePattern::new(
            PatternTerm::Quoted(Box::new(TriplePattern::new(var("s"), var("p"), var("o")))),
            iri("hasReference"),
            var("r"),
        );
        let res = g.match_patterns(&[pat]).unwrap();
        assert_eq!(res.len(), 1);
        let b = res.iter().next().unwrap();
        assert_eq!(b.get("s"), Some(&iri("a")));
        assert_eq!(b.get("r"), Some(&iri("r")));

        // the base triple is not asserted
        let res = g.match_patterns(&[TriplePattern::new(iri("a"), iri("p"), var("o"))]).unwrap();
        assert!(res.is_empty());
    }

    #[test]
    fn filters() {
        let mut g = Graph::new();
        g.insert(Triple::new(iri("a"), p("name"), Literal::new("Bowie", None, Some("en")).unwrap()).unwrap());
        g.insert(Triple::new(iri("b"), p("name"), Literal::new("Bovi", None, Some("it")).unwrap()).unwrap());
        let pats = [TriplePattern::new(var("x"), iri("name"), var("n"))];
        let all = g.match_patterns(&pats).unwrap();
        assert_eq!(g.match_filtered(&pats, |_| true).unwrap(), all);
        assert!(g.match_filtered(&pats, |_| false).unwrap().is_empty());
        let en = g
            .match_filtered(&pats, |b| {
                b.get("n").and_then(Term::as_literal).and_then(Literal::language) == Some("en")
            })
            .unwrap();
        let oracle: Solutions = all
            .into_iter()
            .filter(|b| b.get("n").and_then(Term::as_literal).and_then(|l| l.language()) == Some("en"))
            .collect();
        assert_eq!(en, oracle);
        assert_eq!(en.len(), 1);
    }

    #[test]
    fn apply_covering_binding_yields_triple() {
        let pat = TriplePattern::new(var("x"), iri("p"), var("y"));
        let b: Binding = [("x".to_string(), iri("a")), ("y".to_string(), iri("b"))].into_iter().collect();
        assert_eq!(pat.apply(&b), Some(Ok(Triple::new(iri("a"), p("p"), iri("b")).unwrap())));
        assert_eq!(pat.apply(&Binding::new()), None);
    }
}
