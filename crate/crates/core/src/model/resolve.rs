use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubjectKind {
    Artist,
    Entity,
    Process,
    Recording,
    Release,
}

/// Natural key lookups for one dataset.
#[derive(Debug, Clone, Default)]
pub struct KeyIndex {
    artists: HashMap<String, usize>,
    entities: HashMap<String, usize>,
    processes: HashMap<String, usize>,
    releases: HashMap<String, usize>,
    recordings: BTreeSet<String>,
    collections: BTreeMap<String, String>,
}

impl KeyIndex {
    fn kinds_of(&self, key: &str) -> Vec<SubjectKind> {
        let mut kinds = Vec::new();
        if self.artists.contains_key(key) {
            kinds.push(SubjectKind::Artist);
        }
        if self.entities.contains_key(key) {
            kinds.push(SubjectKind::Entity);
        }
        if self.processes.contains_key(key) {
            kinds.push(SubjectKind::Process);
        }
        if self.recordings.contains(key) {
            kinds.push(SubjectKind::Recording);
        }
        if self.releases.contains_key(key) {
            kinds.push(SubjectKind::Release);
        }
        kinds
    }
}

/// A dataset whose cross-record keys all resolve.
#[derive(Debug, Clone)]
pub struct ResolvedDataset {
    dataset: Dataset,
    index: KeyIndex,
}

impl ResolvedDataset {
    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn into_dataset(self) -> Dataset {
        self.dataset
    }

    pub fn artist(&self, key: &str) -> Option<&ArtistRecord> {
        self.index.artists.get(key).map(|&i| &self.dataset.artists[i])
    }

    pub fn entity(&self, key: &str) -> Option<&EntityRecord> {
        self.index.entities.get(key).map(|&i| &self.dataset.entities[i])
    }

    pub fn process(&self, key: &str) -> Option<&ProcessRecord> {
        self.index.processes.get(key).map(|&i| &self.dataset.processes[i])
    }

    pub fn release(&self, key: &str) -> Option<&ReleaseRecord> {
        self.index.releases.get(key).map(|&i| &self.dataset.releases[i])
    }

    pub fn recording_keys(&self) -> impl Iterator<Item = &str> {
        self.index.recordings.iter().map(String::as_str)
    }

    /// Collection key to concept label.
    pub fn collections(&self) -> &BTreeMap<String, String> {
        &self.index.collections
    }

    /// The record kind a link subject key refers to. Unique after resolution.
    pub fn subject_kind(&self, key: &str) -> Option<SubjectKind> {
        self.index.kinds_of(key).first().copied()
    }
}

fn index_keys<'a>(
    section: &str,
    keys: impl Iterator<Item = &'a str>,
    out: &mut Vec<Violation>,
) -> HashMap<String, usize> {
    let mut map = HashMap::new();
    for (i, key) in keys.enumerate() {
        if map.insert(key.to_string(), i).is_some() {
            out.push(Violation::new(format!("{section}[{i}].key"), format!("duplicate key {key:?}")));
        }
    }
    map
}

/// Checks that every cross-record key points at a record of the right kind.
pub fn resolve_references(dataset: Dataset) -> Result<ResolvedDataset, Vec<Violation>> {
    let mut out = Vec::new();
    let ds = &dataset;
    let mut index = KeyIndex {
        artists: index_keys("artists", ds.artists.iter().map(|r| r.key.as_str()), &mut out),
        entities: index_keys("entities", ds.entities.iter().map(|r| r.key.as_str()), &mut out),
        processes: index_keys("processes", ds.processes.iter().map(|r| r.key.as_str()), &mut out),
        releases: index_keys("releases", ds.releases.iter().map(|r| r.key.as_str()), &mut out),
        recordings: ds.processes.iter().filter_map(|p| p.recording_key.clone()).collect(),
        collections: BTreeMap::new(),
    };

    for (i, e) in ds.entities.iter().enumerate() {
        for (j, c) in e.collections.iter().enumerate() {
            let existing = index
                .collections
                .entry(c.collection_key.clone())
                .or_insert_with(|| c.concept_label.clone());
            if *existing != c.concept_label {
                out.push(Violation::new(
                    format!("entities[{i}].collections[{j}].conceptLabel"),
                    format!("collection {:?} already has concept {:?}", c.collection_key, existing),
                ));
            }
        }
    }

    let artist_kind = |key: &str| index.artists.get(key).map(|&i| ds.artists[i].kind);
    fn dangling(out: &mut Vec<Violation>, path: String, what: &str, key: &str) {
        out.push(Violation::new(path, format!("{what} {key:?} does not exist")));
    }

    for (i, a) in ds.artists.iter().enumerate() {
        for (j, m) in a.memberships.iter().enumerate() {
            let path = format!("artists[{i}].memberships[{j}].ensembleKey");
            match artist_kind(&m.ensemble_key) {
                None => dangling(&mut out, path, "artist", &m.ensemble_key),
                Some(ArtistKind::Ensemble) => {}
                Some(_) => out.push(Violation::new(path, "ensembleKey must reference an Ensemble")),
            }
        }
        for (field, keys) in [("influences", &a.influences), ("collaborations", &a.collaborations)] {
            for (j, k) in keys.iter().enumerate() {
                if artist_kind(k).is_none() {
                    dangling(&mut out, format!("artists[{i}].{field}[{j}]"), "artist", k);
                }
            }
        }
    }

    for (i, e) in ds.entities.iter().enumerate() {
        for (j, d) in e.derivations.iter().enumerate() {
            if !index.entities.contains_key(&d.target_key) {
                dangling(&mut out, format!("entities[{i}].derivations[{j}].targetKey"), "entity", &d.target_key);
            }
        }
        for (j, p) in e.parts.iter().enumerate() {
            if !index.entities.contains_key(p) {
                dangling(&mut out, format!("entities[{i}].parts[{j}]"), "entity", p);
            }
        }
    }

    for (i, p) in ds.processes.iter().enumerate() {
        if !index.entities.contains_key(&p.entity_key) {
            dangling(&mut out, format!("processes[{i}].entityKey"), "entity", &p.entity_key);
        }
        if let Some(k) = &p.creates_new_entity_key {
            if !index.entities.contains_key(k) {
                dangling(&mut out, format!("processes[{i}].createsNewEntityKey"), "entity", k);
            }
        }
        for (j, part) in p.participants.iter().enumerate() {
            if artist_kind(&part.artist_key).is_none() {
                dangling(&mut out, format!("processes[{i}].participants[{j}].artistKey"), "artist", &part.artist_key);
            }
        }
    }

    for (i, r) in ds.releases.iter().enumerate() {
        for (j, k) in r.recording_keys.iter().enumerate() {
            if !index.recordings.contains(k) {
                dangling(&mut out, format!("releases[{i}].recordingKeys[{j}]"), "recording", k);
            }
        }
    }

    let mut seen_links = HashMap::new();
    for (i, l) in ds.links.iter().enumerate() {
        let path = format!("links[{i}].subjectKey");
        match index.kinds_of(&l.subject_key).len() {
            0 => dangling(&mut out, path, "record", &l.subject_key),
            1 => {}
            _ => out.push(Violation::new(
                path,
                format!("key {:?} is ambiguous across record kinds", l.subject_key),
            )),
        }
        let identity = (&l.subject_key, std::mem::discriminant(&l.link_kind), &l.value);
        if let Some(first) = seen_links.insert(identity, i) {
            out.push(Violation::new(
                format!("links[{i}]"),
                format!("duplicates links[{first}]; a link is asserted once with one provenance"),
            ));
        }
    }

    if out.is_empty() {
        Ok(ResolvedDataset { dataset, index })
    } else {
        Err(out)
    }
}

/// Record-level validation followed by reference resolution.
pub fn prepare(dataset: Dataset) -> Result<ResolvedDataset, Vec<Violation>> {
    let violations = dataset.violations();
    if !violations.is_empty() {
        return Err(violations);
    }
    resolve_references(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(json: &str) -> Dataset {
        Dataset::from_json(json).unwrap()
    }

    #[test]
    fn empty_dataset_resolves() {
        assert!(resolve_references(Dataset::default()).is_ok());
    }

    #[test]
    fn membership_must_point_at_ensemble() {
        let d = ds(r#"{"artists": [
            {"key": "a", "kind": "Musician", "name": "A", "memberships": [{"ensembleKey": "b"}]},
            {"key": "b", "kind": "Musician", "name": "B"}]}"#);
        let v = resolve_references(d).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].path, "artists[0].memberships[0].ensembleKey");
        assert_eq!(v[0].message, "ensembleKey must reference an Ensemble");
    }

    #[test]
    fn dangling_keys_are_listed() {
        let d = ds(r#"{
            "entities": [{"key": "e", "title": "E", "derivations": [{"targetKey": "ghost"}]}],
            "processes": [{"key": "p", "kind": "LivePerformance", "entityKey": "nope",
                           "participants": [{"artistKey": "nobody"}]}],
            "releases": [{"key": "r", "title": "R", "recordingKeys": ["rec"]}]}"#);
        let v = resolve_references(d).unwrap_err();
        let paths: Vec<_> = v.iter().map(|v| v.path.as_str()).collect();
        assert_eq!(
            paths,
            [
                "entities[0].derivations[0].targetKey",
                "processes[0].entityKey",
                "processes[0].participants[0].artistKey",
                "releases[0].recordingKeys[0]",
            ]
        );
        assert!(v[0].message.contains("\"ghost\""));
    }

    #[test]
    fn duplicate_keys_and_links() {
        let d = ds(r#"{
            "artists": [{"key": "a", "kind": "Musician", "name": "A"},
                        {"key": "a", "kind": "Musician", "name": "A2"}],
            "links": [
              {"subjectKey": "a", "linkKind": "OfficialWebsite", "value": "https://a.org",
               "provenance": {"sourceLabel": "x"}},
              {"subjectKey": "a", "linkKind": "OfficialWebsite", "value": "https://a.org",
               "provenance": {"sourceLabel": "y"}}]}"#);
        let v = resolve_references(d).unwrap_err();
        let paths: Vec<_> = v.iter().map(|v| v.path.as_str()).collect();
        assert_eq!(paths, ["artists[1].key", "links[1]"]);
    }

    #[test]
    fn ambiguous_link_subject() {
        let d = ds(r#"{
            "artists": [{"key": "x", "kind": "Musician", "name": "A"}],
            "entities": [{"key": "x", "title": "E"}],
            "links": [{"subjectKey": "x", "linkKind": "Review", "value": "https://r.org",
                       "provenance": {"sourceLabel": "s"}}]}"#);
        let v = resolve_references(d).unwrap_err();
        assert!(v[0].message.contains("ambiguous"));
    }

    #[test]
    fn recordings_and_links_resolve() {
        let d = ds(r#"{
            "entities": [{"key": "e", "title": "E"}],
            "processes": [{"key": "p", "kind": "RecordingProcess", "entityKey": "e", "recordingKey": "rec"}],
            "releases": [{"key": "r", "title": "R", "recordingKeys": ["rec"]}],
            "links": [{"subjectKey": "rec", "linkKind": {"StreamingId": {"platform": "Deezer"}},
                       "value": "123", "provenance": {"sourceLabel": "Deezer"}}]}"#);
        let r = resolve_references(d).unwrap();
        assert_eq!(r.subject_kind("rec"), Some(SubjectKind::Recording));
        assert_eq!(r.subject_kind("e"), Some(SubjectKind::Entity));
        assert_eq!(r.release("r").unwrap().title, "R");
    }

    #[test]
    fn prepare_reports_record_violations_first() {
        let d = ds(r#"{"entities": [{"key": "e", "title": "E", "derivations": [{"targetKey": "e"}]}]}"#);
        let v = prepare(d).unwrap_err();
        assert_eq!(v[0].path, "entities[0].derivations[0].targetKey");
    }
}
