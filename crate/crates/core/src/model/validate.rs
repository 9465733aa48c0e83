use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::*;
use crate::rdf::{is_absolute_iri, is_language_tag};

/// A broken invariant on one field of one record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn prefixed(mut self, prefix: &str) -> Self {
        self.path = if self.path.is_empty() {
            prefix.to_string()
        } else {
            format!("{prefix}.{}", self.path)
        };
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

pub trait Validate {
    /// Empty iff every invariant of the record holds. Never mutates.
    fn violations(&self) -> Vec<Violation>;
}

#[derive(Debug, Clone, Copy)]
pub enum MetadataRecord<'a> {
    Artist(&'a ArtistRecord),
    Entity(&'a EntityRecord),
    Process(&'a ProcessRecord),
    Release(&'a ReleaseRecord),
    Link(&'a LinkRecord),
}

pub fn validate_record(record: MetadataRecord<'_>) -> Vec<Violation> {
    match record {
        MetadataRecord::Artist(r) => r.violations(),
        MetadataRecord::Entity(r) => r.violations(),
        MetadataRecord::Process(r) => r.violations(),
        MetadataRecord::Release(r) => r.violations(),
        MetadataRecord::Link(r) => r.violations(),
    }
}

#[derive(Default)]
struct Checker(Vec<Violation>);

impl Checker {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation::new(path, message));
    }

    fn non_empty(&mut self, path: &str, value: &str) {
        if value.trim().is_empty() {
            self.push(path, "must not be empty");
        }
    }

    fn language(&mut self, path: &str, tag: Option<&str>) {
        if let Some(tag) = tag {
            if !is_language_tag(tag) {
                self.push(path, format!("{tag:?} is not a BCP-47 language tag"));
            }
        }
    }

    fn iri(&mut self, path: &str, value: Option<&str>) {
        if let Some(v) = value {
            if !is_absolute_iri(v) {
                self.push(path, format!("{v:?} is not an absolute IRI"));
            }
        }
    }

    fn period(&mut self, path: &str, start: Option<&PartialDate>, end: Option<&PartialDate>) {
        if let (Some(s), Some(e)) = (start, end) {
            if s.earliest_cmp(e) == Ordering::Greater {
                self.push(path, format!("end {e} precedes start {s}"));
            }
        }
    }

    fn labels(&mut self, path: &str, values: &[String]) {
        for (i, v) in values.iter().enumerate() {
            self.non_empty(&format!("{path}[{i}]"), v);
        }
    }

    fn nested(&mut self, prefix: &str, inner: Vec<Violation>) {
        self.0.extend(inner.into_iter().map(|v| v.prefixed(prefix)));
    }
}

impl Validate for ArtistRecord {
    fn violations(&self) -> Vec<Violation> {
        let mut c = Checker::default();
        c.non_empty("key", &self.key);
        c.non_empty("name", &self.name);
        c.language("nameLanguage", self.name_language.as_deref());
        for (i, alias) in self.aliases.iter().enumerate() {
            c.non_empty(&format!("aliases[{i}].value"), &alias.value);
            c.language(&format!("aliases[{i}].language"), alias.language.as_deref());
        }
        c.labels("genres", &self.genres);
        c.labels("mediums", &self.mediums);
        if self.kind != ArtistKind::Musician && !self.mediums.is_empty() {
            c.push("mediums", format!("{:?} artists cannot have mediums of performance", self.kind));
        }
        if self.kind != ArtistKind::Ensemble && self.ensemble_kind.is_some() {
            c.push("ensembleKind", "only ensembles have an ensemble kind");
        }
        c.period("activityEnd", self.activity_start.as_ref(), self.activity_end.as_ref());
        for (i, m) in self.memberships.iter().enumerate() {
            c.non_empty(&format!("memberships[{i}].ensembleKey"), &m.ensemble_key);
            if m.ensemble_key == self.key {
                c.push(format!("memberships[{i}].ensembleKey"), "an artist cannot be a member of itself");
            }
            if let Some(role) = &m.role {
                c.non_empty(&format!("memberships[{i}].role"), role);
            }
            c.period(
                &format!("memberships[{i}].periodEnd"),
                m.period_start.as_ref(),
                m.period_end.as_ref(),
            );
        }
        c.labels("influences", &self.influences);
        c.labels("collaborations", &self.collaborations);
        c.0
    }
}

impl Validate for EntityRecord {
    fn violations(&self) -> Vec<Violation> {
        let mut c = Checker::default();
        c.non_empty("key", &self.key);
        c.non_empty("title", &self.title);
        c.language("titleLanguage", self.title_language.as_deref());
        if let Some(text) = &self.text {
            c.language("text.language", text.language.as_deref());
        }
        if let Some(score) = &self.score {
            if score.order_number.is_some_and(|n| n < 1) {
                c.push("score.orderNumber", "must be at least 1");
            }
            for (i, part) in score.parts.iter().enumerate() {
                c.non_empty(&format!("score.parts[{i}].label"), &part.label);
                if part.order_number < 1 {
                    c.push(format!("score.parts[{i}].orderNumber"), "must be at least 1");
                }
            }
            for (field, value) in [("score.formType", &score.form_type), ("score.key", &score.key)] {
                if let Some(v) = value {
                    c.non_empty(field, v);
                }
            }
        }
        for (i, entry) in self.instrumentation.iter().enumerate() {
            c.non_empty(&format!("instrumentation[{i}].medium"), &entry.medium);
            if entry.cardinality < 1 {
                c.push(format!("instrumentation[{i}].cardinality"), "must be at least 1");
            }
        }
        for (i, d) in self.derivations.iter().enumerate() {
            c.non_empty(&format!("derivations[{i}].targetKey"), &d.target_key);
            if d.target_key == self.key {
                c.push(format!("derivations[{i}].targetKey"), "an entity cannot derive from itself");
            }
            if let Some(kind) = &d.derivation_type {
                c.non_empty(&format!("derivations[{i}].derivationType"), kind);
            }
        }
        for (i, part) in self.parts.iter().enumerate() {
            c.non_empty(&format!("parts[{i}]"), part);
            if *part == self.key {
                c.push(format!("parts[{i}]"), "an entity cannot be part of itself");
            }
        }
        for (i, col) in self.collections.iter().enumerate() {
            c.non_empty(&format!("collections[{i}].collectionKey"), &col.collection_key);
            c.non_empty(&format!("collections[{i}].conceptLabel"), &col.concept_label);
        }
        c.0
    }
}

impl Validate for ProcessRecord {
    fn violations(&self) -> Vec<Violation> {
        let mut c = Checker::default();
        c.non_empty("key", &self.key);
        c.non_empty("entityKey", &self.entity_key);
        for (i, p) in self.participants.iter().enumerate() {
            c.non_empty(&format!("participants[{i}].artistKey"), &p.artist_key);
            if let Some(role) = &p.role {
                c.non_empty(&format!("participants[{i}].role"), role);
            }
        }
        if let Some(place) = &self.place {
            c.non_empty("place.label", &place.label);
        }
        c.period("timeEnd", self.time_start.as_ref(), self.time_end.as_ref());
        if self.creates_new_entity_key.is_some() && !self.kind.is_performance() {
            c.push("createsNewEntityKey", "only performances may create a new entity");
        }
        if let Some(k) = &self.creates_new_entity_key {
            c.non_empty("createsNewEntityKey", k);
        }
        match (self.kind, &self.recording_key) {
            (ProcessKind::RecordingProcess, None) => {
                c.push("recordingKey", "required for a RecordingProcess")
            }
            (ProcessKind::RecordingProcess, Some(k)) => c.non_empty("recordingKey", k),
            (_, Some(_)) => c.push("recordingKey", "only a RecordingProcess produces a recording"),
            (_, None) => {}
        }
        c.0
    }
}

impl Validate for ReleaseRecord {
    fn violations(&self) -> Vec<Violation> {
        let mut c = Checker::default();
        c.non_empty("key", &self.key);
        c.non_empty("title", &self.title);
        if self.recording_keys.is_empty() {
            c.push("recordingKeys", "a release contains at least one recording");
        }
        c.labels("recordingKeys", &self.recording_keys);
        if let Some(p) = &self.publication {
            c.non_empty("publication.publisherName", &p.publisher_name);
            if let Some(place) = &p.place_label {
                c.non_empty("publication.placeLabel", place);
            }
        }
        if let Some(l) = &self.license {
            c.non_empty("license.name", &l.name);
            c.iri("license.url", l.url.as_deref());
        }
        for (i, b) in self.broadcasts.iter().enumerate() {
            c.non_empty(&format!("broadcasts[{i}].broadcasterName"), &b.broadcaster_name);
            if let Some(place) = &b.place_label {
                c.non_empty(&format!("broadcasts[{i}].placeLabel"), place);
            }
        }
        c.0
    }
}

impl Validate for LinkRecord {
    fn violations(&self) -> Vec<Violation> {
        let mut c = Checker::default();
        c.non_empty("subjectKey", &self.subject_key);
        c.non_empty("value", &self.value);
        if let Some(scheme) = self.link_kind.scheme() {
            c.non_empty("linkKind", scheme);
        }
        c.nested("provenance", self.provenance.violations());
        c.0
    }
}

impl Validate for Reference {
    fn violations(&self) -> Vec<Violation> {
        let mut c = Checker::default();
        c.non_empty("sourceLabel", &self.source_label);
        c.iri("sourceUrl", self.source_url.as_deref());
        if let Some(m) = &self.method {
            c.non_empty("method", m);
        }
        if let Some(k) = &self.key {
            c.non_empty("key", k);
        }
        if let Some(conf) = self.confidence {
            if !(0.0..=1.0).contains(&conf) {
                c.push("confidence", format!("{conf} is outside [0, 1]"));
            }
        }
        c.0
    }
}

impl Validate for Dataset {
    fn violations(&self) -> Vec<Violation> {
        fn section<T: Validate>(out: &mut Checker, name: &str, records: &[T]) {
            for (i, r) in records.iter().enumerate() {
                out.nested(&format!("{name}[{i}]"), r.violations());
            }
        }
        let mut c = Checker::default();
        section(&mut c, "artists", &self.artists);
        section(&mut c, "entities", &self.entities);
        section(&mut c, "processes", &self.processes);
        section(&mut c, "releases", &self.releases);
        section(&mut c, "links", &self.links);
        c.0
    }
}
