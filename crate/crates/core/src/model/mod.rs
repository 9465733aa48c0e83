//! Plain input records. Nothing here knows about RDF; the lifting engine
//! turns a [`ResolvedDataset`] into triples.
//!
//! The on-disk form is a single JSON document with top-level arrays
//! `artists`, `entities`, `processes`, `releases` and `links`, field names
//! in lowerCamelCase.

mod date;
mod resolve;
mod validate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use date::{DateError, DatePrecision, PartialDate};
pub use resolve::{prepare, resolve_references, KeyIndex, ResolvedDataset, SubjectKind};
pub use validate::{validate_record, MetadataRecord, Validate, Violation};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("malformed dataset JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Dataset {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub artists: Vec<ArtistRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entities: Vec<EntityRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub processes: Vec<ProcessRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub releases: Vec<ReleaseRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkRecord>,
}

impl Dataset {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serialization is infallible")
    }

    pub fn record_count(&self) -> usize {
        self.artists.len() + self.entities.len() + self.processes.len() + self.releases.len() + self.links.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArtistKind {
    Musician,
    Ensemble,
    Algorithm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnsembleKind {
    MusicGroup,
    Orchestra,
    Choir,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ArtistRecord {
    pub key: String,
    pub kind: ArtistKind,
    /// Only meaningful for `kind: Ensemble`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble_kind: Option<EnsembleKind>,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name_language: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<Alias>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub genres: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mediums: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub activity_start: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub activity_end: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub memberships: Vec<Membership>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub influences: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collaborations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Alias {
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Membership {
    pub ensemble_key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period_start: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period_end: Option<PartialDate>,
}

impl Membership {
    pub fn has_period(&self) -> bool {
        self.period_start.is_some() || self.period_end.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EntityRecord {
    pub key: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title_language: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<TextRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<AbstractScoreRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instrumentation: Vec<InstrumentationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivations: Vec<Derivation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collections: Vec<CollectionMembership>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TextKind {
    Lyrics,
    Libretto,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TextRecord {
    pub kind: TextKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AbstractScoreRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_type: Option<String>,
    /// Musical key label, e.g. "D minor".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tempo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_number: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<ScorePart>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScorePartKind {
    Movement,
    Section,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ScorePart {
    pub kind: ScorePartKind,
    pub label: String,
    pub order_number: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InstrumentationEntry {
    pub medium: String,
    pub cardinality: i64,
}

/// Open vocabulary; these are the common values.
pub const KNOWN_DERIVATION_TYPES: [&str; 5] =
    ["revision", "transposition", "cover", "reconstruction", "reduction"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Derivation {
    pub target_key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation_type: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CollectionMembership {
    pub collection_key: String,
    pub concept_label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProcessKind {
    CreativeProcess,
    LivePerformance,
    StudioPerformance,
    RecordingProcess,
}

impl ProcessKind {
    pub fn is_performance(self) -> bool {
        matches!(self, ProcessKind::LivePerformance | ProcessKind::StudioPerformance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProcessRecord {
    pub key: String,
    pub kind: ProcessKind,
    pub entity_key: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub participants: Vec<Participant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<PlaceRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_start: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_end: Option<PartialDate>,
    /// A performance that yields a new music entity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub creates_new_entity_key: Option<String>,
    /// Required for, and only for, recording processes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recording_key: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub technical: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Participant {
    pub artist_key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PlaceRecord {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geo: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReleaseRecord {
    pub key: String,
    pub title: String,
    pub recording_keys: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub publication: Option<Publication>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub license: Option<LicenseRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub broadcasts: Vec<Broadcast>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Publication {
    pub publisher_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub date: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LicenseRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Broadcast {
    pub broadcaster_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub date: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all_fields = "camelCase")]
pub enum LinkKind {
    OfficialWebsite,
    FanPage,
    Forum,
    Review,
    Shop,
    DatabaseId { database: String },
    StreamingId { platform: String },
    AuthorityId { authority: String },
}

impl LinkKind {
    /// Database, platform or authority name for identifier links.
    pub fn scheme(&self) -> Option<&str> {
        match self {
            LinkKind::DatabaseId { database } => Some(database),
            LinkKind::StreamingId { platform } => Some(platform),
            LinkKind::AuthorityId { authority } => Some(authority),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LinkRecord {
    /// Key of the artist, entity, process, recording or release the link is about.
    pub subject_key: String,
    pub link_kind: LinkKind,
    /// A URL or a bare identifier.
    pub value: String,
    pub provenance: Reference,
}

/// Provenance payload for a claim or link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Reference {
    /// Explicit identity; references sharing a key share one node.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub source_label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_url: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retrieved_on: Option<PartialDate>,
}

impl Reference {
    pub fn from_source(label: impl Into<String>) -> Self {
        Reference {
            key: None,
            source_label: label.into(),
            source_url: None,
            method: None,
            confidence: None,
            retrieved_on: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn link_without_provenance_is_rejected_at_parse() {
        let json = r#"{"links": [{"subjectKey": "a", "linkKind": "OfficialWebsite", "value": "https://x.org"}]}"#;
        let err = Dataset::from_json(json).unwrap_err();
        assert!(err.to_string().contains("provenance"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let json = r#"{"artists": [{"key": "a", "kind": "Musician", "name": "A", "nickname": "x"}]}"#;
        assert!(Dataset::from_json(json).is_err());
        assert!(Dataset::from_json(r#"{"albums": []}"#).is_err());
    }

    #[test]
    fn link_kind_forms() {
        let json = r#"{"links": [
            {"subjectKey": "a", "linkKind": {"DatabaseId": {"database": "MusicBrainz"}},
             "value": "5441c29d", "provenance": {"sourceLabel": "MusicBrainz"}}]}"#;
        let ds = Dataset::from_json(json).unwrap();
        assert_eq!(ds.links[0].link_kind.scheme(), Some("MusicBrainz"));
    }

    #[test]
    fn empty_document() {
        let ds = Dataset::from_json("{}").unwrap();
        assert_eq!(ds.record_count(), 0);
        assert_eq!(ds.to_json(), "{}");
    }
}
