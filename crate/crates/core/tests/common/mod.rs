#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use musicmeta::lift::{lift_dataset, LiftConfig};
use musicmeta::model::{prepare, Dataset};
use musicmeta::rdf::{quote, BlankNode, Binding, Graph, Iri, Literal, PatternTerm, Solutions, Term, Triple, TriplePattern};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FIXTURE: &str = include_str!("../../fixtures/acceptance.json");

pub fn fixture() -> Dataset {
    Dataset::from_json(FIXTURE).expect("fixture parses")
}

pub fn lift_fixture(config: &LiftConfig) -> Graph {
    lift_dataset(config, &prepare(fixture()).expect("fixture resolves")).expect("fixture lifts")
}

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

/// Term pools for random graphs. Small pools make joins and duplicates likely.
pub struct Pools {
    pub nodes: Vec<Term>,
    pub predicates: Vec<Iri>,
    pub literals: Vec<Term>,
    pub blanks: Vec<Term>,
}

impl Pools {
    /// Includes literals that need escaping and non-ASCII text.
    pub fn rich() -> Self {
        let xsd = |local: &str| iri(&format!("http://www.w3.org/2001/XMLSchema#{local}"));
        Pools {
            nodes: ["http://example.org/a", "http://example.org/b", "https://example.org/caf\u{e9}#x", "urn:isbn:0451450523"]
                .iter()
                .map(|s| Term::Iri(iri(s)))
                .collect(),
            predicates: ["http://example.org/p", "http://example.org/q", "http://example.org/r"]
                .iter()
                .map(|s| iri(s))
                .collect(),
            literals: vec![
                Literal::string("plain").into(),
                Literal::string("").into(),
                Literal::string("say \"hi\"\nthen\ttab \\ slash").into(),
                Literal::string("Beyonc\u{e9} \u{1F3B5} \u{7}").into(),
                Literal::new("Heroes", None, Some("en")).unwrap().into(),
                Literal::new("Helden", None, Some("de-AT")).unwrap().into(),
                Literal::typed("42", xsd("integer")).unwrap().into(),
                Literal::typed("1977", xsd("gYear")).unwrap().into(),
            ],
            blanks: ["x", "y2", "node_3"].iter().map(|l| Term::BlankNode(BlankNode::new(*l).unwrap())).collect(),
        }
    }

    /// Fewer distinct terms, for the exhaustive oracle.
    pub fn small() -> Self {
        let rich = Pools::rich();
        Pools {
            nodes: rich.nodes[..3].to_vec(),
            predicates: rich.predicates.clone(),
            literals: vec![rich.literals[0].clone(), rich.literals[4].clone(), rich.literals[6].clone()],
            blanks: rich.blanks[..2].to_vec(),
        }
    }
}

pub struct GraphGen<'a> {
    pub rng: &'a mut ChaCha8Rng,
    pub pools: &'a Pools,
}

impl GraphGen<'_> {
    fn pick(&mut self, items: &[Term]) -> Term {
        items.choose(self.rng).unwrap().clone()
    }

    fn predicate(&mut self) -> Iri {
        self.pools.predicates.choose(self.rng).unwrap().clone()
    }

    /// `depth` is how many more quoting levels are allowed below this term.
    fn subject(&mut self, depth: usize) -> Term {
        match self.rng.gen_range(0..10) {
            0..=5 => self.pick(&self.pools.nodes.clone()),
            6..=7 => self.pick(&self.pools.blanks.clone()),
            _ if depth > 0 => self.quoted(depth),
            _ => self.pick(&self.pools.nodes.clone()),
        }
    }

    fn object(&mut self, depth: usize) -> Term {
        match self.rng.gen_range(0..10) {
            0..=3 => self.pick(&self.pools.nodes.clone()),
            4..=6 => self.pick(&self.pools.literals.clone()),
            7..=8 => self.pick(&self.pools.blanks.clone()),
            _ if depth > 0 => self.quoted(depth),
            _ => self.pick(&self.pools.literals.clone()),
        }
    }

    pub fn quoted(&mut self, depth: usize) -> Term {
        let t = self.triple(depth - 1);
        quote(t).expect("depth stays within bound")
    }

    pub fn triple(&mut self, depth: usize) -> Triple {
        let s = self.subject(depth);
        let p = self.predicate();
        let o = self.object(depth);
        Triple::new(s, p, o).expect("generated subject is never a literal")
    }

    /// Up to `max` triples. With `quoted`, the first triple is an annotation
    /// on a quoted triple and later ones may nest up to the bound.
    pub fn graph(&mut self, max: usize, quoted: bool) -> Graph {
        let depth = if quoted { musicmeta::rdf::MAX_NESTING } else { 0 };
        let n = self.rng.gen_range(0..=max);
        let mut g = Graph::new();
        if quoted && n > 0 {
            let s = self.quoted(depth);
            let p = self.predicate();
            let o = self.object(depth);
            g.insert(Triple::new(s, p, o).unwrap());
        }
        while g.len() < n {
            let t = self.triple(depth);
            if !g.insert(t) && self.rng.gen_bool(0.3) {
                break;
            }
        }
        g
    }
}

pub fn has_quoted(g: &Graph) -> bool {
    g.iter().any(|t| t.subject().as_quoted().is_some() || t.object().as_quoted().is_some())
}

/// Every term occurring anywhere in the graph, nested ones included.
pub fn universe(g: &Graph) -> BTreeSet<Term> {
    fn visit(t: &Triple, out: &mut BTreeSet<Term>) {
        for term in [t.subject(), t.object()] {
            out.insert(term.clone());
            if let Some(inner) = term.as_quoted() {
                visit(inner, out);
            }
        }
        out.insert(Term::Iri(t.predicate().clone()));
    }
    let mut out = BTreeSet::new();
    for t in g.iter() {
        visit(t, &mut out);
    }
    out
}

fn pattern_vars(p: &TriplePattern, out: &mut BTreeSet<String>) {
    for pos in [&p.subject, &p.predicate, &p.object] {
        match pos {
            PatternTerm::Var(v) => {
                out.insert(v.clone());
            }
            PatternTerm::Quoted(inner) => pattern_vars(inner, out),
            PatternTerm::Term(_) => {}
        }
    }
}

/// Substitutes an assignment into one pattern position. `None` when the
/// result is not a term (unbound, or an ill-formed quoted triple).
fn substitute(pos: &PatternTerm, assignment: &BTreeMap<String, Term>) -> Option<Term> {
    match pos {
        PatternTerm::Term(t) => Some(t.clone()),
        PatternTerm::Var(v) => assignment.get(v).cloned(),
        PatternTerm::Quoted(p) => quote(substitute_triple(p, assignment)?).ok(),
    }
}

fn substitute_triple(p: &TriplePattern, assignment: &BTreeMap<String, Term>) -> Option<Triple> {
    let s = substitute(&p.subject, assignment)?;
    let Term::Iri(pred) = substitute(&p.predicate, assignment)? else {
        return None;
    };
    let o = substitute(&p.object, assignment)?;
    Triple::new(s, pred, o).ok()
}

/// Brute force: try every assignment of graph terms to the pattern
/// variables and keep those under which every pattern is an asserted triple.
/// Patterns are checked as soon as their variables are all assigned.
pub fn oracle_match(g: &Graph, patterns: &[TriplePattern]) -> Solutions {
    let mut vars = BTreeSet::new();
    for p in patterns {
        pattern_vars(p, &mut vars);
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let terms: Vec<Term> = universe(g).into_iter().collect();
    // patterns become checkable once the variable at this index is assigned
    let mut ready: Vec<Vec<&TriplePattern>> = vec![Vec::new(); vars.len() + 1];
    for p in patterns {
        let mut pv = BTreeSet::new();
        pattern_vars(p, &mut pv);
        let last = pv.iter().map(|v| vars.iter().position(|x| x == v).unwrap() + 1).max().unwrap_or(0);
        ready[last].push(p);
    }

    fn holds(g: &Graph, ps: &[&TriplePattern], a: &BTreeMap<String, Term>) -> bool {
        ps.iter().all(|p| substitute_triple(p, a).is_some_and(|t| g.contains(&t)))
    }

    fn walk(
        g: &Graph,
        vars: &[String],
        terms: &[Term],
        ready: &[Vec<&TriplePattern>],
        i: usize,
        a: &mut BTreeMap<String, Term>,
        out: &mut Solutions,
    ) {
        if !holds(g, &ready[i], a) {
            return;
        }
        if i == vars.len() {
            out.insert(Binding::from_iter(a.iter().map(|(k, v)| (k.clone(), v.clone()))));
            return;
        }
        for t in terms {
            a.insert(vars[i].clone(), t.clone());
            walk(g, vars, terms, ready, i + 1, a, out);
        }
        a.remove(&vars[i]);
    }

    let mut out = Solutions::new();
    walk(g, &vars, &terms, &ready, 0, &mut BTreeMap::new(), &mut out);
    out
}

/// Random pattern list over `x`, `y`, `z`. Most patterns are asserted
/// triples with some positions replaced by variables, so joins often succeed.
pub fn random_patterns(rng: &mut ChaCha8Rng, g: &Graph, pools: &Pools) -> Vec<TriplePattern> {
    let consts: Vec<Term> = universe(g).into_iter().collect();
    let triples: Vec<&Triple> = g.iter().collect();
    let var = |rng: &mut ChaCha8Rng| PatternTerm::var(["x", "y", "z"][rng.gen_range(0..3)]);
    let maybe_var = |rng: &mut ChaCha8Rng, t: &Term, p: f64| -> PatternTerm {
        if rng.gen_bool(p) {
            var(rng)
        } else {
            PatternTerm::Term(t.clone())
        }
    };
    let random_term = |rng: &mut ChaCha8Rng| -> PatternTerm {
        if rng.gen_bool(0.6) {
            var(rng)
        } else {
            PatternTerm::Term(consts.choose(rng).unwrap_or(&pools.nodes[0]).clone())
        }
    };
    let random_predicate = |rng: &mut ChaCha8Rng| -> PatternTerm {
        if rng.gen_bool(0.3) {
            var(rng)
        } else {
            PatternTerm::Term(Term::Iri(pools.predicates.choose(rng).unwrap().clone()))
        }
    };

    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| match triples.choose(rng) {
            Some(t) if rng.gen_bool(0.75) => {
                let subject = match t.subject().as_quoted() {
                    Some(inner) if rng.gen_bool(0.5) => PatternTerm::Quoted(Box::new(TriplePattern {
                        subject: maybe_var(rng, inner.subject(), 0.5),
                        predicate: maybe_var(rng, &Term::Iri(inner.predicate().clone()), 0.2),
                        object: maybe_var(rng, inner.object(), 0.5),
                    })),
                    _ => maybe_var(rng, t.subject(), 0.5),
                };
                TriplePattern {
                    subject,
                    predicate: maybe_var(rng, &Term::Iri(t.predicate().clone()), 0.2),
                    object: maybe_var(rng, t.object(), 0.5),
                }
            }
            _ => {
                let subject = if rng.gen_bool(0.15) {
                    PatternTerm::Quoted(Box::new(TriplePattern {
                        subject: random_term(rng),
                        predicate: random_predicate(rng),
                        object: random_term(rng),
                    }))
                } else {
                    random_term(rng)
                };
                TriplePattern {
                    subject,
                    predicate: random_predicate(rng),
                    object: random_term(rng),
                }
            }
        })
        .collect()
}
