//! Record to RDF-star lifting.
//!
//! Every function here is pure: the same config and dataset always yield the
//! same triples in the same order, whatever order the records arrived in.

mod align;
mod mint;
mod records;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{PartialDate, DatePrecision, Reference, ResolvedDataset, Violation};
use crate::rdf::{quote, Graph, Iri, Literal, RdfError, Term, Triple};
use crate::vocab::{self, core, rdf, rdfs, xsd, AlignmentScheme, VocabTerm};

pub use align::emit_alignments;
pub use mint::{slug, Minter, NodeKind, UriPlan};
pub use records::{lift_artist, lift_entity, lift_link, lift_process, lift_release};

pub const DEFAULT_BASE_IRI: &str = "https://w3id.org/polifonia/resource/";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("base IRI {0:?} must be absolute and end with '/' or '#'")]
    InvalidBaseIri(String),
    #[error("natural key must not be empty")]
    EmptyKey,
    #[error("no {segment} with key {key:?} in this dataset")]
    UnknownKey { segment: &'static str, key: String },
    #[error(transparent)]
    Rdf(#[from] RdfError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct LiftConfig {
    pub base_iri: String,
    /// Alignment schemes to emit; empty means no alignment triples.
    pub alignment_schemes: BTreeSet<AlignmentScheme>,
    pub emit_provenance: bool,
    /// When set, process IRIs are namespaced by it.
    pub session_label: String,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig {
            base_iri: DEFAULT_BASE_IRI.to_string(),
            alignment_schemes: BTreeSet::new(),
            emit_provenance: true,
            session_label: String::new(),
        }
    }
}

impl LiftConfig {
    pub fn with_base_iri(base_iri: impl Into<String>) -> Result<Self, LiftError> {
        let config = LiftConfig {
            base_iri: base_iri.into(),
            ..LiftConfig::default()
        };
        config.check()?;
        Ok(config)
    }

    pub fn check(&self) -> Result<(), LiftError> {
        let ok = crate::rdf::is_absolute_iri(&self.base_iri)
            && (self.base_iri.ends_with('/') || self.base_iri.ends_with('#'));
        if ok {
            Ok(())
        } else {
            Err(LiftError::InvalidBaseIri(self.base_iri.clone()))
        }
    }

    pub(crate) fn iri_for(&self, kind: NodeKind, local: &str) -> Result<Iri, LiftError> {
        let session = slug(&self.session_label);
        let iri = if kind == NodeKind::Process && !session.is_empty() {
            format!("{}{}/{session}/{local}", self.base_iri, kind.segment())
        } else {
            format!("{}{}/{local}", self.base_iri, kind.segment())
        };
        Iri::new(iri).map_err(|_| LiftError::InvalidBaseIri(self.base_iri.clone()))
    }

    /// A node owned by another: `base ⊕ segment ⊕ "/" ⊕ owner path ⊕ tail`.
    /// Slugs never contain `/`, so these never collide with keyed IRIs.
    pub(crate) fn sub_iri(&self, kind: NodeKind, owner: &Iri, tail: &[&str]) -> Iri {
        let rel = owner.as_str().strip_prefix(&self.base_iri).unwrap_or(owner.as_str());
        let mut iri = format!("{}{}/{rel}", self.base_iri, kind.segment());
        for part in tail {
            iri.push('/');
            iri.push_str(part);
        }
        Iri::new(iri).expect("derived from a valid IRI")
    }

    pub fn scheme_enabled(&self, scheme: AlignmentScheme) -> bool {
        self.alignment_schemes.contains(&scheme)
    }
}

/// A resolved dataset plus its precomputed IRIs.
#[derive(Debug)]
pub struct LiftContext<'a> {
    pub config: &'a LiftConfig,
    pub data: &'a ResolvedDataset,
    plan: UriPlan,
}

impl<'a> LiftContext<'a> {
    pub fn new(config: &'a LiftConfig, data: &'a ResolvedDataset) -> Result<Self, LiftError> {
        config.check()?;
        let plan = UriPlan::build(config, data)?;
        Ok(LiftContext { config, data, plan })
    }

    pub fn node(&self, kind: NodeKind, key: &str) -> Result<Iri, LiftError> {
        self.plan.get(kind, key).cloned().ok_or_else(|| LiftError::UnknownKey {
            segment: kind.segment(),
            key: key.to_string(),
        })
    }
}

/// Triple buffer; subjects are always IRIs or quoted triples.
#[derive(Debug, Default)]
pub(crate) struct Out(pub Vec<Triple>);

impl Out {
    pub fn add(&mut self, s: impl Into<Term>, p: VocabTerm, o: impl Into<Term>) {
        self.0.push(Triple::new(s, p.iri(), o).expect("lifted subjects are never literals"));
    }

    pub fn typed(&mut self, s: &Iri, class: VocabTerm) {
        self.add(s.clone(), rdf::TYPE, class.iri());
    }

    pub fn label(&mut self, s: &Iri, label: &str) {
        self.add(s.clone(), rdfs::LABEL, Literal::string(label));
    }

    /// Adds `triple` and returns it for later annotation.
    pub fn assert(&mut self, s: impl Into<Term>, p: VocabTerm, o: impl Into<Term>) -> Triple {
        let t = Triple::new(s, p.iri(), o).expect("lifted subjects are never literals");
        self.0.push(t.clone());
        t
    }
}

pub(crate) fn text(value: &str, language: Option<&str>) -> Result<Literal, LiftError> {
    Ok(Literal::new(value, None, language)?)
}

pub(crate) fn integer(value: i64) -> Literal {
    Literal::typed(value.to_string(), xsd::INTEGER.iri()).expect("xsd:integer is a datatype")
}

pub(crate) fn date(value: &PartialDate) -> Literal {
    let datatype = match value.precision() {
        DatePrecision::Year => xsd::G_YEAR,
        DatePrecision::YearMonth => xsd::G_YEAR_MONTH,
        DatePrecision::Day => xsd::DATE,
    };
    Literal::typed(value.to_string(), datatype.iri()).expect("xsd date types are datatypes")
}

/// xsd:decimal lexical form; always has a fractional part.
pub(crate) fn decimal(value: f64) -> Literal {
    let mut lexical = value.to_string();
    if !lexical.contains('.') {
        lexical.push_str(".0");
    }
    Literal::typed(lexical, xsd::DECIMAL.iri()).expect("xsd:decimal is a datatype")
}

/// Hangs a provenance reference off `triple` with
/// `<< triple >> core:hasReference R` and describes R.
pub fn annotate(ctx: &LiftContext, triple: &Triple, reference: &Reference) -> Result<Vec<Triple>, LiftError> {
    let r = match &reference.key {
        Some(key) => ctx.node(NodeKind::Reference, key)?,
        None => {
            let content = serde_json::to_string(reference).expect("references serialize");
            let digest = mint::stable_hash(&format!("{triple}\n{content}"), 16);
            Iri::new(format!("{}{}/auto/{digest}", ctx.config.base_iri, NodeKind::Reference.segment()))
                .expect("hex digest is IRI-safe")
        }
    };
    let mut out = Out::default();
    out.add(quote(triple.clone())?, core::HAS_REFERENCE, r.clone());
    out.typed(&r, core::REFERENCE);

    let source = ctx.node(NodeKind::Source, &reference.source_label)?;
    out.add(r.clone(), core::SOURCE, source.clone());
    out.typed(&source, core::SOURCE_CLASS);
    out.label(&source, &reference.source_label);
    if let Some(url) = &reference.source_url {
        out.add(source.clone(), rdfs::SEE_ALSO, Iri::new(url.as_str())?);
    }
    if let Some(method) = &reference.method {
        let m = ctx.node(NodeKind::Method, method)?;
        out.add(r.clone(), core::SOURCE_METHOD, m.clone());
        out.typed(&m, core::SOURCE_METHOD_CLASS);
        out.label(&m, method);
    }
    if let Some(c) = reference.confidence {
        out.add(r.clone(), core::CONFIDENCE, decimal(c));
    }
    if let Some(d) = &reference.retrieved_on {
        out.add(r.clone(), core::RETRIEVED_ON, date(d));
    }
    Ok(out.0)
}

/// Lifted triples of one record, or the violation that stopped it.
type RecordResult = Result<Vec<Triple>, Violation>;

fn record_jobs<'c>(ctx: &'c LiftContext<'c>) -> Vec<Box<dyn Fn() -> RecordResult + Send + Sync + 'c>> {
    fn wrap<'c, R: Sync>(
        ctx: &'c LiftContext<'c>,
        section: &'static str,
        key: &'c str,
        record: &'c R,
        lift: fn(&LiftContext, &R) -> Result<Vec<Triple>, LiftError>,
    ) -> Box<dyn Fn() -> RecordResult + Send + Sync + 'c> {
        Box::new(move || lift(ctx, record).map_err(|e| Violation::new(format!("{section}[key={key:?}]"), e.to_string())))
    }

    let ds = ctx.data.dataset();
    let mut jobs: Vec<Box<dyn Fn() -> RecordResult + Send + Sync + 'c>> = Vec::new();

    let mut artists: Vec<_> = ds.artists.iter().collect();
    artists.sort_by(|a, b| a.key.cmp(&b.key));
    jobs.extend(artists.into_iter().map(|r| wrap(ctx, "artists", &r.key, r, lift_artist)));

    let mut entities: Vec<_> = ds.entities.iter().collect();
    entities.sort_by(|a, b| a.key.cmp(&b.key));
    jobs.extend(entities.into_iter().map(|r| wrap(ctx, "entities", &r.key, r, lift_entity)));

    let mut processes: Vec<_> = ds.processes.iter().collect();
    processes.sort_by(|a, b| a.key.cmp(&b.key));
    jobs.extend(processes.into_iter().map(|r| wrap(ctx, "processes", &r.key, r, lift_process)));

    let mut releases: Vec<_> = ds.releases.iter().collect();
    releases.sort_by(|a, b| a.key.cmp(&b.key));
    jobs.extend(releases.into_iter().map(|r| wrap(ctx, "releases", &r.key, r, lift_release)));

    // duplicate links are rejected during resolution, so this order is total
    let mut links: Vec<_> = ds.links.iter().collect();
    links.sort_by(|a, b| {
        (&a.subject_key, &a.link_kind, &a.value).cmp(&(&b.subject_key, &b.link_kind, &b.value))
    });
    jobs.extend(links.into_iter().map(|r| wrap(ctx, "links", &r.subject_key, r, lift_link)));
    jobs
}

fn assemble(ctx: &LiftContext, results: Vec<RecordResult>) -> Result<Graph, Vec<Violation>> {
    let mut graph = Graph::new();
    for (prefix, ns) in vocab::prefix_map() {
        graph.set_prefix(prefix, ns);
    }
    let mut violations = Vec::new();
    for result in results {
        match result {
            Ok(triples) => graph.extend(triples),
            Err(v) => violations.push(v),
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let aligned = emit_alignments(&graph, ctx.config);
    graph.extend(aligned);
    Ok(graph)
}

fn context<'a>(config: &'a LiftConfig, data: &'a ResolvedDataset) -> Result<LiftContext<'a>, Vec<Violation>> {
    LiftContext::new(config, data).map_err(|e| vec![Violation::new("config", e.to_string())])
}

/// Lifts every record, then adds alignment triples for the enabled schemes.
pub fn lift_dataset(config: &LiftConfig, data: &ResolvedDataset) -> Result<Graph, Vec<Violation>> {
    let ctx = context(config, data)?;
    let results = record_jobs(&ctx).iter().map(|job| job()).collect();
    assemble(&ctx, results)
}

/// Same output as [`lift_dataset`], with records lifted on the rayon pool.
pub fn lift_dataset_parallel(config: &LiftConfig, data: &ResolvedDataset) -> Result<Graph, Vec<Violation>> {
    let ctx = context(config, data)?;
    let results = record_jobs(&ctx).par_iter().map(|job| job()).collect();
    assemble(&ctx, results)
}
