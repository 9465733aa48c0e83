use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::rdf::{write_escaped, Graph, Iri, Literal, Term, XSD_STRING};
use crate::vocab::rdf;

struct Compactor<'a> {
    prefixes: &'a BTreeMap<String, String>,
    used: BTreeSet<&'a str>,
}

fn simple_local(local: &str) -> bool {
    let mut chars = local.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl<'a> Compactor<'a> {
    fn iri(&mut self, iri: &Iri) -> String {
        // longest matching namespace wins
        let best = self
            .prefixes
            .iter()
            .filter_map(|(p, ns)| iri.as_str().strip_prefix(ns.as_str()).map(|local| (p, ns, local)))
            .filter(|(_, _, local)| simple_local(local))
            .max_by_key(|(_, ns, _)| ns.len());
        match best {
            Some((prefix, _, local)) => {
                self.used.insert(prefix.as_str());
                format!("{prefix}:{local}")
            }
            None => iri.to_string(),
        }
    }

    fn literal(&mut self, lit: &Literal) -> String {
        let mut out = String::from("\"");
        write_escaped(&mut out, lit.lexical()).expect("writing to a String");
        out.push('"');
        if let Some(lang) = lit.language() {
            out.push('@');
            out.push_str(lang);
        } else if lit.datatype().as_str() != XSD_STRING {
            out.push_str("^^");
            out.push_str(&self.iri(lit.datatype()));
        }
        out
    }

    fn term(&mut self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Literal(lit) => self.literal(lit),
            Term::BlankNode(b) => b.to_string(),
            Term::Quoted(q) => {
                let t = q.triple();
                format!(
                    "<< {} {} {} >>",
                    self.term(t.subject()),
                    self.predicate(t.predicate()),
                    self.term(t.object())
                )
            }
        }
    }

    fn predicate(&mut self, p: &Iri) -> String {
        if *p == rdf::TYPE.iri() {
            "a".to_string()
        } else {
            self.iri(p)
        }
    }
}

/// Turtle-star with the graph's prefixes. Subjects appear in canonical
/// N-Triples order, `a` leads each predicate list, objects are sorted.
pub fn write_turtle(graph: &Graph) -> String {
    let rdf_type = rdf::TYPE.iri();
    // subject -> predicate -> objects, keyed by their N-Triples form
    let mut grouped: BTreeMap<String, (Term, BTreeMap<(bool, String), (Iri, BTreeMap<String, Term>)>)> =
        BTreeMap::new();
    for t in graph.iter() {
        let entry = grouped
            .entry(t.subject().to_string())
            .or_insert_with(|| (t.subject().clone(), BTreeMap::new()));
        let pred_key = (*t.predicate() != rdf_type, t.predicate().to_string());
        entry
            .1
            .entry(pred_key)
            .or_insert_with(|| (t.predicate().clone(), BTreeMap::new()))
            .1
            .insert(t.object().to_string(), t.object().clone());
    }

    let mut c = Compactor {
        prefixes: graph.prefixes(),
        used: BTreeSet::new(),
    };
    let mut body = String::new();
    for (subject, predicates) in grouped.values() {
        if !body.is_empty() {
            body.push('\n');
        }
        body.push_str(&c.term(subject));
        let count = predicates.len();
        for (i, (predicate, objects)) in predicates.values().enumerate() {
            let objects: Vec<String> = objects.values().map(|o| c.term(o)).collect();
            let sep = if i == 0 { " " } else { "    " };
            let end = if i + 1 == count { " ." } else { " ;" };
            let _ = writeln!(body, "{sep}{} {}{end}", c.predicate(predicate), objects.join(" , "));
        }
    }

    let mut out = String::new();
    for prefix in &c.used {
        let _ = writeln!(out, "@prefix {prefix}: <{}> .", c.prefixes[*prefix]);
    }
    if !out.is_empty() && !body.is_empty() {
        out.push('\n');
    }
    out.push_str(&body);
    out
}
