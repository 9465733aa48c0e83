use std::collections::{BTreeMap, BTreeSet, HashMap};

use sha2::{Digest, Sha256};
use unicode_normalization::UnicodeNormalization;

use super::{LiftConfig, LiftError};
use crate::model::ResolvedDataset;
use crate::rdf::Iri;

/// What a minted IRI names; each kind has its own path segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Artist,
    Entity,
    Process,
    Recording,
    Release,
    Membership,
    Score,
    Instrumentation,
    Situation,
    Reference,
    Collection,
    Concept,
    Genre,
    Medium,
    FormType,
    MusicalKey,
    Place,
    Time,
    Agent,
    License,
    Source,
    Method,
    Text,
    Participation,
}

impl NodeKind {
    pub fn segment(self) -> &'static str {
        match self {
            NodeKind::Artist => "artist",
            NodeKind::Entity => "entity",
            NodeKind::Process => "process",
            NodeKind::Recording => "recording",
            NodeKind::Release => "release",
            NodeKind::Membership => "membership",
            NodeKind::Score => "score",
            NodeKind::Instrumentation => "instrumentation",
            NodeKind::Situation => "situation",
            NodeKind::Reference => "reference",
            NodeKind::Collection => "collection",
            NodeKind::Concept => "concept",
            NodeKind::Genre => "genre",
            NodeKind::Medium => "medium",
            NodeKind::FormType => "form",
            NodeKind::MusicalKey => "key",
            NodeKind::Place => "place",
            NodeKind::Time => "time",
            NodeKind::Agent => "agent",
            NodeKind::License => "license",
            NodeKind::Source => "source",
            NodeKind::Method => "method",
            NodeKind::Text => "text",
            NodeKind::Participation => "participation",
        }
    }
}

/// Lowercase, NFC, runs outside `[a-z0-9]` collapsed to one `-`, hyphens
/// trimmed. May return an empty string.
pub fn slug(key: &str) -> String {
    let mut out = String::with_capacity(key.len());
    let mut pending_dash = false;
    for c in key.nfc().flat_map(char::to_lowercase) {
        if c.is_ascii_lowercase() || c.is_ascii_digit() {
            if pending_dash && !out.is_empty() {
                out.push('-');
            }
            pending_dash = false;
            out.push(c);
        } else {
            pending_dash = true;
        }
    }
    out
}

/// First `len` hex characters of the SHA-256 of `data`.
pub(crate) fn stable_hash(data: &str, len: usize) -> String {
    let digest = Sha256::digest(data.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex.truncate(len);
    hex
}

/// Mints `base ⊕ segment ⊕ "/" ⊕ slug(key)`. When two distinct keys share a
/// slug within a kind, the one minted later gets `-` plus 8 hex digits of
/// its key hash.
#[derive(Debug)]
pub struct Minter<'c> {
    config: &'c LiftConfig,
    owners: HashMap<(NodeKind, String), String>,
    minted: HashMap<(NodeKind, String), Iri>,
}

impl<'c> Minter<'c> {
    pub fn new(config: &'c LiftConfig) -> Self {
        Minter {
            config,
            owners: HashMap::new(),
            minted: HashMap::new(),
        }
    }

    pub fn mint(&mut self, kind: NodeKind, key: &str) -> Result<Iri, LiftError> {
        if key.is_empty() {
            return Err(LiftError::EmptyKey);
        }
        if let Some(iri) = self.minted.get(&(kind, key.to_string())) {
            return Ok(iri.clone());
        }
        let mut local = slug(key);
        if local.is_empty() {
            local = stable_hash(key, 8);
        }
        let owner = self.owners.entry((kind, local.clone())).or_insert_with(|| key.to_string());
        if owner != key {
            local = format!("{local}-{}", stable_hash(key, 8));
        }
        let iri = self.config.iri_for(kind, &local)?;
        self.minted.insert((kind, key.to_string()), iri.clone());
        Ok(iri)
    }
}

/// Precomputed IRIs for every natural key and label in a dataset.
///
/// Keys are minted kind by kind in sorted order, so collision suffixes do
/// not depend on input order and per-record lifting can run in parallel.
#[derive(Debug, Clone)]
pub struct UriPlan {
    iris: HashMap<(NodeKind, String), Iri>,
}

impl UriPlan {
    pub fn build<'a>(config: &LiftConfig, data: &'a ResolvedDataset) -> Result<Self, LiftError> {
        let mut keys: BTreeMap<NodeKind, BTreeSet<&'a str>> = BTreeMap::new();
        let mut add = |kind: NodeKind, key: &'a str| {
            keys.entry(kind).or_default().insert(key);
        };
        let ds = data.dataset();
        for a in &ds.artists {
            add(NodeKind::Artist, &a.key);
            a.genres.iter().for_each(|g| add(NodeKind::Genre, g));
            a.mediums.iter().for_each(|m| add(NodeKind::Medium, m));
        }
        for e in &ds.entities {
            add(NodeKind::Entity, &e.key);
            if let Some(score) = &e.score {
                if let Some(f) = &score.form_type {
                    add(NodeKind::FormType, f);
                }
                if let Some(k) = &score.key {
                    add(NodeKind::MusicalKey, k);
                }
            }
            for c in &e.collections {
                add(NodeKind::Collection, &c.collection_key);
                add(NodeKind::Concept, &c.concept_label);
            }
        }
        for p in &ds.processes {
            add(NodeKind::Process, &p.key);
            if let Some(r) = &p.recording_key {
                add(NodeKind::Recording, r);
            }
            if let Some(place) = &p.place {
                add(NodeKind::Place, &place.label);
            }
        }
        for r in &ds.releases {
            add(NodeKind::Release, &r.key);
            if let Some(p) = &r.publication {
                add(NodeKind::Agent, &p.publisher_name);
                if let Some(place) = &p.place_label {
                    add(NodeKind::Place, place);
                }
            }
            if let Some(l) = &r.license {
                add(NodeKind::License, &l.name);
            }
            for b in &r.broadcasts {
                add(NodeKind::Agent, &b.broadcaster_name);
                if let Some(place) = &b.place_label {
                    add(NodeKind::Place, place);
                }
            }
        }
        for l in &ds.links {
            let prov = &l.provenance;
            add(NodeKind::Source, &prov.source_label);
            if let Some(m) = &prov.method {
                add(NodeKind::Method, m);
            }
            if let Some(k) = &prov.key {
                add(NodeKind::Reference, k);
            }
        }

        let mut minter = Minter::new(config);
        let mut iris = HashMap::new();
        for (kind, set) in keys {
            for key in set {
                iris.insert((kind, key.to_string()), minter.mint(kind, key)?);
            }
        }
        Ok(UriPlan { iris })
    }

    pub fn get(&self, kind: NodeKind, key: &str) -> Option<&Iri> {
        self.iris.get(&(kind, key.to_string()))
    }
}
