//! Closed registry of the Music Meta and CORE terms the toolkit emits, and
//! the hand-curated alignment table towards Music Ontology, DOREMUS
//! (Erlangen CRM) and Wikidata.
//!
//! Every IRI the lifting engine writes in predicate or class position comes
//! from here, so a typo is a compile error rather than a stray IRI.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::rdf::{Iri, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VocabError {
    #[error("unknown vocabulary term {0:?}")]
    UnknownTerm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    Mm,
    Core,
    Rdf,
    Rdfs,
    Xsd,
}

impl Namespace {
    pub const fn prefix(self) -> &'static str {
        match self {
            Namespace::Mm => "mm",
            Namespace::Core => "core",
            Namespace::Rdf => "rdf",
            Namespace::Rdfs => "rdfs",
            Namespace::Xsd => "xsd",
        }
    }

    pub const fn iri(self) -> &'static str {
        match self {
            Namespace::Mm => "https://w3id.org/polifonia/ontology/music-meta/",
            Namespace::Core => "https://w3id.org/polifonia/ontology/core/",
            Namespace::Rdf => "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
            Namespace::Rdfs => "http://www.w3.org/2000/01/rdf-schema#",
            Namespace::Xsd => "http://www.w3.org/2001/XMLSchema#",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TermKind {
    Class,
    ObjectProperty,
    DatatypeProperty,
    Individual,
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VocabTerm {
    pub namespace: Namespace,
    pub local_name: &'static str,
    pub kind: TermKind,
    /// Minted by this toolkit rather than taken from the published ontology.
    pub invented: bool,
}

impl VocabTerm {
    pub fn qname(&self) -> String {
        format!("{}:{}", self.namespace.prefix(), self.local_name)
    }

    pub fn iri_string(&self) -> String {
        format!("{}{}", self.namespace.iri(), self.local_name)
    }

    pub fn iri(&self) -> Iri {
        Iri::new(self.iri_string()).expect("registry IRIs are absolute")
    }

    pub fn term(&self) -> Term {
        Term::Iri(self.iri())
    }
}

macro_rules! terms {
    ($ns:ident; $($name:ident = $local:literal, $kind:ident $(, $invented:ident)?;)*) => {
        use super::{Namespace, TermKind, VocabTerm};
        $(
            pub const $name: VocabTerm = VocabTerm {
                namespace: Namespace::$ns,
                local_name: $local,
                kind: TermKind::$kind,
                invented: terms!(@invented $($invented)?),
            };
        )*
        pub static TERMS: &[VocabTerm] = &[$($name),*];
    };
    (@invented invented) => { true };
    (@invented) => { false };
}

pub mod mm {
    terms! { Mm;
        MUSIC_ARTIST = "MusicArtist", Class;
        MUSICIAN = "Musician", Class;
        MUSIC_ENSEMBLE = "MusicEnsemble", Class;
        MUSIC_ALGORITHM = "MusicAlgorithm", Class;
        MUSIC_ENSEMBLE_MEMBERSHIP = "MusicEnsembleMembership", Class;
        MUSIC_GENRE = "MusicGenre", Class;
        MEDIUM_OF_PERFORMANCE = "MediumOfPerformance", Class;
        MUSIC_GROUP = "MusicGroup", Class;
        ORCHESTRA = "Orchestra", Class;
        CHOIR = "Choir", Class;
        MUSIC_ENTITY = "MusicEntity", Class;
        TEXT = "Text", Class;
        LYRICS = "Lyrics", Class;
        LIBRETTO = "Libretto", Class;
        ABSTRACT_SCORE = "AbstractScore", Class;
        INSTRUMENTATION = "Instrumentation", Class;
        SCORE = "Score", Class;
        FORM_TYPE = "FormType", Class;
        KEY = "Key", Class;
        MOVEMENT = "Movement", Class;
        SECTION = "Section", Class;
        COLLECTION = "Collection", Class;
        COLLECTION_CONCEPT = "CollectionConcept", Class;
        CREATIVE_PROCESS = "CreativeProcess", Class;
        MUSICAL_PERFORMANCE = "MusicalPerformance", Class;
        LIVE_PERFORMANCE = "LivePerformance", Class;
        STUDIO_PERFORMANCE = "StudioPerformance", Class;
        RECORDING_PROCESS = "RecordingProcess", Class;
        RECORDING = "Recording", Class;
        RELEASE = "Release", Class;
        BROADCASTING_SITUATION = "BroadcastingSituation", Class;
        BROADCASTER = "Broadcaster", Class;
        PUBLICATION_SITUATION = "PublicationSituation", Class;
        PUBLISHER = "Publisher", Class;
        LICENSE = "License", Class;

        HAS_PART = "hasPart", ObjectProperty;
        IS_DERIVED_FROM = "isDerivedFrom", ObjectProperty;
        TEMPO = "tempo", DatatypeProperty;
        ORDER_NUMBER = "orderNumber", DatatypeProperty;
        IS_SINGER_OF = "isSingerOf", ObjectProperty;

        HAS_INSTRUMENTATION = "hasInstrumentation", ObjectProperty, invented;
        HAS_TEXT = "hasText", ObjectProperty, invented;
        HAS_ABSTRACT_SCORE = "hasAbstractScore", ObjectProperty, invented;
        INVOLVES_ARTIST = "involvesArtist", ObjectProperty, invented;
        HAS_ROLE = "hasRole", DatatypeProperty, invented;
        AT_PLACE = "atPlace", ObjectProperty, invented;
        DURING = "during", ObjectProperty, invented;
        PRODUCES_RECORDING = "producesRecording", ObjectProperty, invented;
        CONTAINS_RECORDING = "containsRecording", ObjectProperty, invented;
        BROADCAST_BY = "broadcastBy", ObjectProperty, invented;
        PUBLISHED_BY = "publishedBy", ObjectProperty, invented;
        HAS_LICENSE = "hasLicense", ObjectProperty, invented;
        HAS_GENRE = "hasGenre", ObjectProperty, invented;
        HAS_MEDIUM_OF_PERFORMANCE = "hasMediumOfPerformance", ObjectProperty, invented;
        MEDIUM_CARDINALITY = "mediumCardinality", DatatypeProperty, invented;
        HAS_FORM_TYPE = "hasFormType", ObjectProperty, invented;
        HAS_KEY = "hasKey", ObjectProperty, invented;
        MEMBER_OF_MEMBERSHIP = "memberOfMembership", ObjectProperty, invented;
        MEMBERSHIP_ENSEMBLE = "membershipEnsemble", ObjectProperty, invented;
        ACTIVITY_START_DATE = "activityStartDate", DatatypeProperty, invented;
        ACTIVITY_END_DATE = "activityEndDate", DatatypeProperty, invented;
        DERIVATION_TYPE = "derivationType", DatatypeProperty, invented;
        HAS_COLLECTION_CONCEPT = "hasCollectionConcept", ObjectProperty, invented;
        HAS_MEMBER = "hasMember", ObjectProperty, invented;

        NAME = "name", DatatypeProperty, invented;
        ALIAS = "alias", DatatypeProperty, invented;
        TITLE = "title", DatatypeProperty, invented;
        INFLUENCED_BY = "influencedBy", ObjectProperty, invented;
        COLLABORATED_WITH = "collaboratedWith", ObjectProperty, invented;
        CREATES_ENTITY = "createsEntity", ObjectProperty, invented;
        REALISES = "realises", ObjectProperty, invented;
        RECORDS = "records", ObjectProperty, invented;
        HAS_PARTICIPATION = "hasParticipation", ObjectProperty, invented;
        TECHNICAL_DETAIL = "technicalDetail", DatatypeProperty, invented;
        TEXT_LANGUAGE = "textLanguage", DatatypeProperty, invented;
        BODY = "body", DatatypeProperty, invented;
        COORDINATES = "coordinates", DatatypeProperty, invented;
        DATE = "date", DatatypeProperty, invented;
        HAS_SITUATION = "hasSituation", ObjectProperty, invented;
        OFFICIAL_WEBSITE = "officialWebsite", ObjectProperty, invented;
        FAN_PAGE = "fanPage", ObjectProperty, invented;
        FORUM = "forum", ObjectProperty, invented;
        REVIEW = "review", ObjectProperty, invented;
        SHOP = "shop", ObjectProperty, invented;
        DATABASE_ID = "databaseId", DatatypeProperty, invented;
        STREAMING_ID = "streamingId", DatatypeProperty, invented;
        AUTHORITY_ID = "authorityId", DatatypeProperty, invented;
        IDENTIFIER_SCHEME = "identifierScheme", DatatypeProperty, invented;
    }
}

pub mod core {
    terms! { Core;
        PERSON = "Person", Class;
        PLACE = "Place", Class;
        TIME_INTERVAL = "TimeInterval", Class;
        REFERENCE = "Reference", Class;
        SOURCE_CLASS = "Source", Class;
        SOURCE_METHOD_CLASS = "SourceMethod", Class;
        IS_MEMBER_OF = "isMemberOf", ObjectProperty;
        CONFIDENCE = "confidence", DatatypeProperty;
        RETRIEVED_ON = "retrievedOn", DatatypeProperty;
        HAS_REFERENCE = "hasReference", ObjectProperty, invented;
        SOURCE = "source", ObjectProperty, invented;
        SOURCE_METHOD = "sourceMethod", ObjectProperty, invented;
        START_DATE = "startDate", DatatypeProperty, invented;
        END_DATE = "endDate", DatatypeProperty, invented;
    }
}

pub mod rdf {
    terms! { Rdf;
        TYPE = "type", ObjectProperty;
        LANG_STRING = "langString", Class;
    }
}

pub mod rdfs {
    terms! { Rdfs;
        LABEL = "label", DatatypeProperty;
        SEE_ALSO = "seeAlso", ObjectProperty;
    }
}

pub mod xsd {
    terms! { Xsd;
        STRING = "string", Class;
        INTEGER = "integer", Class;
        DECIMAL = "decimal", Class;
        DATE = "date", Class;
        G_YEAR = "gYear", Class;
        G_YEAR_MONTH = "gYearMonth", Class;
    }
}

pub fn registry() -> impl Iterator<Item = &'static VocabTerm> {
    mm::TERMS
        .iter()
        .chain(core::TERMS)
        .chain(rdf::TERMS)
        .chain(rdfs::TERMS)
        .chain(xsd::TERMS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AlignmentScheme {
    MusicOntology,
    Doremus,
    Wikidata,
}

impl AlignmentScheme {
    pub const ALL: [AlignmentScheme; 3] =
        [AlignmentScheme::MusicOntology, AlignmentScheme::Doremus, AlignmentScheme::Wikidata];

    /// Namespaces a target of this scheme may start with.
    pub fn namespaces(self) -> &'static [&'static str] {
        match self {
            AlignmentScheme::MusicOntology => &[MO],
            AlignmentScheme::Doremus => &[ECRM],
            AlignmentScheme::Wikidata => &[WD, WIKI_PAGE],
        }
    }

    /// Short command-line name: `mo`, `doremus`, `wikidata`.
    pub fn cli_name(self) -> &'static str {
        match self {
            AlignmentScheme::MusicOntology => "mo",
            AlignmentScheme::Doremus => "doremus",
            AlignmentScheme::Wikidata => "wikidata",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.cli_name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Relation {
    EquivalentClass,
    SubClassOf,
    EquivalentProperty,
    SubPropertyOf,
    RelatedMatch,
}

impl Relation {
    pub fn is_class_relation(self) -> bool {
        matches!(self, Relation::EquivalentClass | Relation::SubClassOf)
    }

    pub fn is_property_relation(self) -> bool {
        matches!(self, Relation::EquivalentProperty | Relation::SubPropertyOf)
    }
}

pub const MO: &str = "http://purl.org/ontology/mo/";
pub const ECRM: &str = "http://erlangen-crm.org/";
pub const WD: &str = "http://www.wikidata.org/entity/";
pub const WIKI_PAGE: &str = "https://www.wikidata.org/wiki/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlignmentEntry {
    pub source: VocabTerm,
    pub scheme: AlignmentScheme,
    pub target: &'static str,
    pub relation: Relation,
}

impl AlignmentEntry {
    pub fn target_iri(&self) -> Iri {
        Iri::new(self.target).expect("alignment targets are absolute")
    }
}

const fn align(
    source: VocabTerm,
    scheme: AlignmentScheme,
    target: &'static str,
    relation: Relation,
) -> AlignmentEntry {
    AlignmentEntry {
        source,
        scheme,
        target,
        relation,
    }
}

use AlignmentScheme::{Doremus, MusicOntology, Wikidata};
use Relation::{EquivalentClass, EquivalentProperty, RelatedMatch, SubClassOf, SubPropertyOf};

pub static ALIGNMENTS: &[AlignmentEntry] = &[
    // Music Ontology
    align(mm::MUSIC_ARTIST, MusicOntology, "http://purl.org/ontology/mo/MusicArtist", EquivalentClass),
    align(mm::MUSICIAN, MusicOntology, "http://purl.org/ontology/mo/MusicArtist", SubClassOf),
    align(mm::MUSIC_ENSEMBLE, MusicOntology, "http://purl.org/ontology/mo/MusicGroup", EquivalentClass),
    align(mm::MUSIC_GROUP, MusicOntology, "http://purl.org/ontology/mo/MusicGroup", SubClassOf),
    align(mm::MUSIC_GENRE, MusicOntology, "http://purl.org/ontology/mo/Genre", EquivalentClass),
    align(mm::MUSIC_ENTITY, MusicOntology, "http://purl.org/ontology/mo/MusicalExpression", SubClassOf),
    align(mm::LYRICS, MusicOntology, "http://purl.org/ontology/mo/Lyrics", EquivalentClass),
    align(mm::LIBRETTO, MusicOntology, "http://purl.org/ontology/mo/Libretto", EquivalentClass),
    align(mm::SCORE, MusicOntology, "http://purl.org/ontology/mo/Score", EquivalentClass),
    align(mm::MOVEMENT, MusicOntology, "http://purl.org/ontology/mo/Movement", EquivalentClass),
    align(mm::MUSICAL_PERFORMANCE, MusicOntology, "http://purl.org/ontology/mo/Performance", EquivalentClass),
    align(mm::LIVE_PERFORMANCE, MusicOntology, "http://purl.org/ontology/mo/Performance", SubClassOf),
    align(mm::STUDIO_PERFORMANCE, MusicOntology, "http://purl.org/ontology/mo/Performance", SubClassOf),
    align(mm::RECORDING_PROCESS, MusicOntology, "http://purl.org/ontology/mo/Recording", EquivalentClass),
    align(mm::RECORDING, MusicOntology, "http://purl.org/ontology/mo/Signal", EquivalentClass),
    align(mm::RELEASE, MusicOntology, "http://purl.org/ontology/mo/Release", EquivalentClass),
    align(mm::MEDIUM_OF_PERFORMANCE, MusicOntology, "http://purl.org/ontology/mo/Instrument", RelatedMatch),
    align(mm::PUBLISHER, MusicOntology, "http://purl.org/ontology/mo/Label", RelatedMatch),
    align(core::IS_MEMBER_OF, MusicOntology, "http://purl.org/ontology/mo/member_of", EquivalentProperty),
    align(mm::HAS_GENRE, MusicOntology, "http://purl.org/ontology/mo/genre", EquivalentProperty),
    align(mm::PRODUCES_RECORDING, MusicOntology, "http://purl.org/ontology/mo/produced_signal", EquivalentProperty),
    // DOREMUS, via Erlangen CRM
    align(mm::MUSIC_ARTIST, Doremus, "http://erlangen-crm.org/E39_Actor", SubClassOf),
    align(mm::MUSICIAN, Doremus, "http://erlangen-crm.org/E21_Person", SubClassOf),
    align(mm::MUSIC_ENSEMBLE, Doremus, "http://erlangen-crm.org/E74_Group", SubClassOf),
    align(mm::MUSIC_ENTITY, Doremus, "http://erlangen-crm.org/E73_Information_Object", SubClassOf),
    align(mm::CREATIVE_PROCESS, Doremus, "http://erlangen-crm.org/E65_Creation", SubClassOf),
    align(mm::RECORDING_PROCESS, Doremus, "http://erlangen-crm.org/E65_Creation", SubClassOf),
    align(mm::MUSICAL_PERFORMANCE, Doremus, "http://erlangen-crm.org/E7_Activity", SubClassOf),
    align(mm::LIVE_PERFORMANCE, Doremus, "http://erlangen-crm.org/E7_Activity", SubClassOf),
    align(mm::STUDIO_PERFORMANCE, Doremus, "http://erlangen-crm.org/E7_Activity", SubClassOf),
    align(mm::PUBLISHER, Doremus, "http://erlangen-crm.org/E39_Actor", SubClassOf),
    align(mm::BROADCASTER, Doremus, "http://erlangen-crm.org/E39_Actor", SubClassOf),
    align(core::PERSON, Doremus, "http://erlangen-crm.org/E21_Person", EquivalentClass),
    align(core::PLACE, Doremus, "http://erlangen-crm.org/E53_Place", EquivalentClass),
    align(core::TIME_INTERVAL, Doremus, "http://erlangen-crm.org/E52_Time-Span", EquivalentClass),
    align(core::IS_MEMBER_OF, Doremus, "http://erlangen-crm.org/P107i_is_current_or_former_member_of", EquivalentProperty),
    align(mm::HAS_PART, Doremus, "http://erlangen-crm.org/P148_has_component", SubPropertyOf),
    align(mm::AT_PLACE, Doremus, "http://erlangen-crm.org/P7_took_place_at", SubPropertyOf),
    align(mm::DURING, Doremus, "http://erlangen-crm.org/P4_has_time-span", SubPropertyOf),
    // Wikidata
    align(mm::MUSICIAN, Wikidata, "http://www.wikidata.org/entity/Q639669", SubClassOf),
    align(mm::MUSICIAN, Wikidata, "https://www.wikidata.org/wiki/Q639669", RelatedMatch),
    align(mm::MUSIC_GENRE, Wikidata, "http://www.wikidata.org/entity/Q188451", EquivalentClass),
    align(mm::MUSIC_GROUP, Wikidata, "http://www.wikidata.org/entity/Q215380", EquivalentClass),
    align(mm::ORCHESTRA, Wikidata, "http://www.wikidata.org/entity/Q42998", EquivalentClass),
    align(mm::CHOIR, Wikidata, "http://www.wikidata.org/entity/Q131186", EquivalentClass),
    align(core::PERSON, Wikidata, "http://www.wikidata.org/entity/Q5", EquivalentClass),
    align(mm::LIVE_PERFORMANCE, Wikidata, "http://www.wikidata.org/entity/Q182832", RelatedMatch),
];

/// Prefixes used by the Turtle writer and by QName resolution.
pub fn prefix_map() -> BTreeMap<String, String> {
    [
        ("mm", Namespace::Mm.iri()),
        ("core", Namespace::Core.iri()),
        ("mo", MO),
        ("ecrm", ECRM),
        ("wd", WD),
        ("rdf", Namespace::Rdf.iri()),
        ("rdfs", Namespace::Rdfs.iri()),
        ("xsd", Namespace::Xsd.iri()),
    ]
    .into_iter()
    .map(|(p, ns)| (p.to_string(), ns.to_string()))
    .collect()
}

struct Index {
    by_qname: HashMap<String, &'static VocabTerm>,
    by_iri: HashMap<String, &'static VocabTerm>,
    alignment_targets: HashMap<String, &'static str>,
    by_source: HashMap<String, Vec<&'static AlignmentEntry>>,
}

fn index() -> &'static Index {
    static INDEX: OnceLock<Index> = OnceLock::new();
    INDEX.get_or_init(|| {
        let prefixes = prefix_map();
        let mut alignment_targets = HashMap::new();
        let mut by_source: HashMap<String, Vec<&'static AlignmentEntry>> = HashMap::new();
        for entry in ALIGNMENTS {
            by_source.entry(entry.source.iri_string()).or_default().push(entry);
            alignment_targets.insert(entry.target.to_string(), entry.target);
            for (prefix, ns) in &prefixes {
                if let Some(local) = entry.target.strip_prefix(ns.as_str()) {
                    alignment_targets.insert(format!("{prefix}:{local}"), entry.target);
                }
            }
        }
        Index {
            by_qname: registry().map(|t| (t.qname(), t)).collect(),
            by_iri: registry().map(|t| (t.iri_string(), t)).collect(),
            alignment_targets,
            by_source,
        }
    })
}

/// Resolves a registered QName (`mm:Musician`) or a prefixed alignment
/// target (`mo:MusicArtist`) to its IRI term.
pub fn term(qname: &str) -> Result<Term, VocabError> {
    let idx = index();
    if let Some(t) = idx.by_qname.get(qname) {
        return Ok(t.term());
    }
    match idx.alignment_targets.get(qname) {
        Some(target) if qname.contains(':') && !target.eq(&qname) => {
            Ok(Term::Iri(Iri::new(*target).expect("alignment targets are absolute")))
        }
        _ => Err(VocabError::UnknownTerm(qname.to_string())),
    }
}

pub fn lookup_iri(iri: &str) -> Option<&'static VocabTerm> {
    index().by_iri.get(iri).copied()
}

/// True for registry IRIs and alignment targets.
pub fn is_known_iri(iri: &str) -> bool {
    let idx = index();
    idx.by_iri.contains_key(iri) || idx.alignment_targets.contains_key(iri)
}

pub fn alignments_for(source: &Term) -> Vec<&'static AlignmentEntry> {
    let Some(iri) = source.as_iri() else {
        return Vec::new();
    };
    index().by_source.get(iri.as_str()).cloned().unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportRow {
    pub qname: String,
    pub kind: TermKind,
    pub alignment_count: usize,
    pub invented: bool,
}

/// One row per registered term, sorted by QName.
pub fn registry_report() -> Vec<ReportRow> {
    let mut rows: Vec<ReportRow> = registry()
        .map(|t| ReportRow {
            qname: t.qname(),
            kind: t.kind,
            alignment_count: alignments_for(&t.term()).len(),
            invented: t.invented,
        })
        .collect();
    rows.sort_by(|a, b| a.qname.cmp(&b.qname));
    rows
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::rdf::make_iri;

    #[test]
    fn resolves_registered_qnames() {
        assert_eq!(
            term("mm:Musician").unwrap(),
            make_iri("https://w3id.org/polifonia/ontology/music-meta/Musician").unwrap()
        );
        assert_eq!(
            term("core:isMemberOf").unwrap(),
            make_iri("https://w3id.org/polifonia/ontology/core/isMemberOf").unwrap()
        );
        assert_eq!(term("mm:Banjo"), Err(VocabError::UnknownTerm("mm:Banjo".into())));
        assert!(term("Musician").is_err());
    }

    #[test]
    fn resolves_alignment_targets() {
        assert_eq!(
            term("mo:MusicArtist").unwrap(),
            make_iri("http://purl.org/ontology/mo/MusicArtist").unwrap()
        );
        assert_eq!(
            term("wd:Q639669").unwrap(),
            make_iri("http://www.wikidata.org/entity/Q639669").unwrap()
        );
        assert!(term("mo:Banjo").is_err());
    }

    #[test]
    fn minimum_registry_contents() {
        let classes = [
            "MusicArtist", "Musician", "MusicEnsemble", "MusicAlgorithm", "MusicEnsembleMembership",
            "MusicGenre", "MediumOfPerformance", "MusicEntity", "Text", "Lyrics", "Libretto",
            "AbstractScore", "Instrumentation", "Score", "FormType", "Key", "Movement", "Section",
            "Collection", "CollectionConcept", "CreativeProcess", "MusicalPerformance",
            "LivePerformance", "StudioPerformance", "RecordingProcess", "Recording", "Release",
            "BroadcastingSituation", "Broadcaster", "PublicationSituation", "Publisher", "License",
        ];
        for c in classes {
            let qn = format!("mm:{c}");
            let t = index().by_qname.get(&qn).unwrap_or_else(|| panic!("missing {qn}"));
            assert_eq!(t.kind, TermKind::Class, "{qn}");
            assert!(!t.invented, "{qn}");
        }
        for c in ["Person", "Place", "TimeInterval", "Reference", "Source", "SourceMethod"] {
            assert_eq!(index().by_qname[&format!("core:{c}")].kind, TermKind::Class);
        }
        for p in [
            "mm:hasPart", "mm:isDerivedFrom", "mm:tempo", "mm:orderNumber", "mm:isSingerOf",
            "core:isMemberOf", "core:confidence", "core:retrievedOn",
        ] {
            let t = index().by_qname.get(p).unwrap_or_else(|| panic!("missing {p}"));
            assert!(matches!(t.kind, TermKind::ObjectProperty | TermKind::DatatypeProperty));
            assert!(!t.invented);
        }
    }

    #[test]
    fn registry_iris_are_unique() {
        let mut seen = HashSet::new();
        for t in registry() {
            assert!(seen.insert(t.iri_string()), "duplicate {}", t.qname());
        }
    }

    #[test]
    fn alignment_table_is_well_formed() {
        let mut seen = HashSet::new();
        for e in ALIGNMENTS {
            assert!(make_iri(e.target).is_ok(), "{}", e.target);
            assert!(
                e.scheme.namespaces().iter().any(|ns| e.target.starts_with(ns)),
                "{} outside {:?}",
                e.target,
                e.scheme
            );
            assert!(seen.insert((e.source.qname(), e.scheme, e.target)), "duplicate {:?}", e);
            let class_source = e.source.kind == TermKind::Class;
            if e.relation != Relation::RelatedMatch {
                assert_eq!(class_source, e.relation.is_class_relation(), "{:?}", e);
            }
        }
    }

    #[test]
    fn musician_alignments_match_published_targets() {
        let entries = alignments_for(&term("mm:Musician").unwrap());
        let targets: Vec<_> = entries.iter().map(|e| (e.scheme, e.target)).collect();
        assert!(targets.contains(&(MusicOntology, "http://purl.org/ontology/mo/MusicArtist")));
        assert!(targets.contains(&(Doremus, "http://erlangen-crm.org/E21_Person")));
        assert!(targets.contains(&(Wikidata, "http://www.wikidata.org/entity/Q639669")));
        assert!(targets.contains(&(Wikidata, "https://www.wikidata.org/wiki/Q639669")));
    }

    #[test]
    fn unaligned_term_gives_empty_list() {
        assert!(alignments_for(&term("mm:BroadcastingSituation").unwrap()).is_empty());
        assert!(alignments_for(&Term::Literal(crate::rdf::Literal::string("x"))).is_empty());
    }

    #[test]
    fn report_is_sorted_and_complete() {
        let report = registry_report();
        assert_eq!(report.len(), registry().count());
        assert!(report.windows(2).all(|w| w[0].qname <= w[1].qname));
        let entity = report.iter().find(|r| r.qname == "mm:MusicEntity").unwrap();
        assert_eq!(entity.kind, TermKind::Class);
        let musician = report.iter().find(|r| r.qname == "mm:Musician").unwrap();
        assert_eq!(musician.alignment_count, 4);
    }

    #[test]
    fn report_size_matches_source_declarations() {
        let declared = include_str!("vocab.rs")
            .lines()
            .filter(|l| {
                let l = l.trim_start();
                l.split_once(" = \"").is_some_and(|(name, _)| {
                    !name.is_empty() && name.chars().all(|c| c.is_ascii_uppercase() || c == '_')
                })
            })
            .count();
        assert_eq!(registry_report().len(), declared);
    }
}
