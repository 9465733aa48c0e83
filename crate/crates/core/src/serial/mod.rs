//! Canonical N-Triples-star and Turtle-star output, and an N-Triples-star
//! reader for round trips.

mod ntriples;
mod turtle;

use std::collections::HashMap;

pub use ntriples::{parse_ntriples, write_ntriples};
pub use turtle::write_turtle;

use crate::rdf::{quote, BlankNode, Graph, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: quoted triples nest too deep")]
    NestingTooDeep { line: usize, column: usize },
}

/// Renames blank nodes to `c0`, `c1`, ... in order of first appearance in
/// canonical output with labels masked. Enough to compare graphs whose
/// blank nodes are told apart by their neighbourhood.
pub fn relabel_blank_nodes(graph: &Graph) -> Graph {
    fn masked(term: &Term) -> String {
        match term {
            Term::BlankNode(_) => "_:".to_string(),
            Term::Quoted(q) => {
                let t = q.triple();
                format!("<< {} {} {} >>", masked(t.subject()), t.predicate(), masked(t.object()))
            }
            other => other.to_string(),
        }
    }
    fn rename(term: &Term, names: &mut HashMap<BlankNode, BlankNode>) -> Term {
        match term {
            Term::BlankNode(b) => {
                let next = names.len();
                Term::BlankNode(
                    names
                        .entry(b.clone())
                        .or_insert_with(|| BlankNode::new(format!("c{next}")).expect("valid label"))
                        .clone(),
                )
            }
            Term::Quoted(q) => {
                let t = q.triple();
                let inner = Triple::new(rename(t.subject(), names), t.predicate().clone(), rename(t.object(), names))
                    .expect("subject kind is preserved");
                quote(inner).expect("depth is preserved")
            }
            other => other.clone(),
        }
    }

    let mut triples: Vec<&Triple> = graph.iter().collect();
    triples.sort_by_cached_key(|t| (masked(t.subject()), t.predicate().to_string(), masked(t.object()), t.to_string()));
    let mut names = HashMap::new();
    let mut out = Graph::new();
    for (p, ns) in graph.prefixes() {
        out.set_prefix(p.clone(), ns.clone());
    }
    for t in triples {
        let s = rename(t.subject(), &mut names);
        let o = rename(t.object(), &mut names);
        out.insert(Triple::new(s, t.predicate().clone(), o).expect("subject kind is preserved"));
    }
    out
}
