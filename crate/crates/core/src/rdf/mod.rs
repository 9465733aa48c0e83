//! RDF-star terms, an indexed in-memory triple set, and a conjunctive
//! basic-graph-pattern matcher.

mod graph;
mod pattern;
mod term;

pub use graph::Graph;
pub use pattern::{Binding, PatternTerm, Solutions, TriplePattern};
pub use term::{
    is_absolute_iri, is_language_tag, make_iri, make_literal, quote, BlankNode, BlankNodeGen, Iri,
    Literal, QuotedTriple, Term, Triple, MAX_NESTING, RDF_LANG_STRING, RDF_NS, XSD_NS, XSD_STRING,
};
pub(crate) use term::write_escaped;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RdfError {
    #[error("invalid IRI: {0:?}")]
    InvalidIri(String),
    #[error("invalid language tag: {0:?}")]
    InvalidLanguageTag(String),
    #[error("datatype and language tag are mutually exclusive")]
    ConflictingArguments,
    #[error("invalid blank node label: {0:?}")]
    InvalidBlankNode(String),
    #[error("literal in subject position")]
    LiteralSubject,
    #[error("predicate must be an IRI")]
    NonIriPredicate,
    #[error("quoted triples nest deeper than {MAX_NESTING}")]
    NestingTooDeep,
    #[error("pattern list is empty")]
    EmptyPatternList,
}
