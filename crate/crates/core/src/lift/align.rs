use std::collections::HashSet;

use super::LiftConfig;
use crate::rdf::{Graph, Term, Triple};
use crate::vocab::{alignments_for, rdf};

/// Extra triples mirroring `graph` in the enabled external vocabularies.
///
/// Class alignments add an `rdf:type` to the aligned class; property
/// alignments repeat the triple with the aligned property. `RelatedMatch`
/// entries are informational and emit nothing. Triples already in `graph`
/// are skipped, so adding the result is idempotent.
pub fn emit_alignments(graph: &Graph, config: &LiftConfig) -> Vec<Triple> {
    let rdf_type = rdf::TYPE.iri();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in graph.iter() {
        let (source, is_type) = if *t.predicate() == rdf_type {
            (t.object().clone(), true)
        } else {
            (Term::Iri(t.predicate().clone()), false)
        };
        for entry in alignments_for(&source) {
            if !config.scheme_enabled(entry.scheme) {
                continue;
            }
            let aligned = match (is_type, entry.relation) {
                (true, r) if r.is_class_relation() => {
                    Triple::new(t.subject().clone(), rdf_type.clone(), entry.target_iri())
                }
                (false, r) if r.is_property_relation() => {
                    Triple::new(t.subject().clone(), entry.target_iri(), t.object().clone())
                }
                _ => continue,
            }
            .expect("subject comes from a valid triple");
            if !graph.contains(&aligned) && seen.insert(aligned.clone()) {
                out.push(aligned);
            }
        }
    }
    out
}
