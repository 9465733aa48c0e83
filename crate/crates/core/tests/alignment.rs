mod common;

use std::collections::BTreeSet;

use musicmeta::lift::{emit_alignments, LiftConfig};
use musicmeta::rdf::{Iri, Term, Triple};
use musicmeta::vocab::{rdf, AlignmentScheme, ALIGNMENTS};

use common::lift_fixture;

fn config(schemes: &[AlignmentScheme]) -> LiftConfig {
    LiftConfig {
        alignment_schemes: schemes.iter().copied().collect(),
        ..LiftConfig::default()
    }
}

/// Join of the unaligned graph with the alignment table, done by hand.
fn expected_alignments(schemes: &[AlignmentScheme]) -> BTreeSet<Triple> {
    let base = lift_fixture(&LiftConfig::default());
    let rdf_type = rdf::TYPE.iri();
    let mut out = BTreeSet::new();
    for t in base.iter() {
        for entry in ALIGNMENTS.iter().filter(|e| schemes.contains(&e.scheme)) {
            let source = entry.source.iri();
            let target = Iri::new(entry.target).unwrap();
            let candidate = if entry.relation.is_class_relation() && t.predicate() == &rdf_type && t.object() == &Term::Iri(source.clone()) {
                Triple::new(t.subject().clone(), rdf_type.clone(), target).ok()
            } else if entry.relation.is_property_relation() && t.predicate() == &source {
                Triple::new(t.subject().clone(), target, t.object().clone()).ok()
            } else {
                None
            };
            if let Some(c) = candidate.filter(|c| !base.contains(c)) {
                out.insert(c);
            }
        }
    }
    out
}

#[test]
fn alignment_triples_match_table_join() {
    let base = lift_fixture(&LiftConfig::default());
    let subsets: [&[AlignmentScheme]; 5] = [
        &[],
        &[AlignmentScheme::MusicOntology],
        &[AlignmentScheme::Doremus],
        &[AlignmentScheme::Wikidata],
        &AlignmentScheme::ALL,
    ];
    for schemes in subsets {
        let aligned = lift_fixture(&config(schemes));
        let added: BTreeSet<Triple> = aligned.iter().filter(|t| !base.contains(t)).cloned().collect();
        assert_eq!(added, expected_alignments(schemes), "{schemes:?}");
        assert!(base.iter().all(|t| aligned.contains(t)), "enabling {schemes:?} removed triples");
    }
    assert!(expected_alignments(&[]).is_empty());
    assert!(!expected_alignments(&AlignmentScheme::ALL).is_empty());
}

#[test]
fn alignment_is_idempotent() {
    let all = config(&AlignmentScheme::ALL);
    let g = lift_fixture(&all);
    assert!(emit_alignments(&g, &all).is_empty());
}

#[test]
fn more_schemes_never_remove_triples() {
    let mo = lift_fixture(&config(&[AlignmentScheme::MusicOntology]));
    let mo_wd = lift_fixture(&config(&[AlignmentScheme::MusicOntology, AlignmentScheme::Wikidata]));
    let all = lift_fixture(&config(&AlignmentScheme::ALL));
    assert!(mo.iter().all(|t| mo_wd.contains(t)));
    assert!(mo_wd.iter().all(|t| all.contains(t)));
}

#[test]
fn no_self_derivation_in_output() {
    let g = lift_fixture(&config(&AlignmentScheme::ALL));
    let derived = musicmeta::vocab::mm::IS_DERIVED_FROM.iri();
    assert!(g.with_predicate(&derived).count() >= 2);
    assert!(g.with_predicate(&derived).all(|t| t.subject() != t.object()));
}
