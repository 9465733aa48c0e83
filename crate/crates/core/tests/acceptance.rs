//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Built with `harness = false` so the lines always print.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use musicmeta::lift::{lift_dataset, lift_dataset_parallel, LiftConfig, DEFAULT_BASE_IRI};
use musicmeta::model::{
    prepare, validate_record, ArtistKind, Dataset, Derivation, EntityRecord, LinkKind, LinkRecord, MetadataRecord,
    ProcessKind, Reference,
};
use musicmeta::rdf::{Graph, PatternTerm, Term, Triple, TriplePattern};
use musicmeta::serial::{parse_ntriples, relabel_blank_nodes, write_ntriples};
use musicmeta::validation::{run_suite, Expectation, Suite};
use musicmeta::vocab::{self, core, mm, rdf, AlignmentScheme, ALIGNMENTS};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{fixture, has_quoted, lift_fixture, oracle_match, random_patterns, GraphGen, Pools};

const ALIGNMENT_LIMIT: Duration = Duration::from_secs(1);
const SUITE_LIMIT: Duration = Duration::from_secs(5);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(30);
const MATCHER_LIMIT: Duration = Duration::from_secs(60);

const ROUND_TRIP_CASES: usize = 500;
const ROUND_TRIP_MAX_TRIPLES: usize = 50;
const MIN_QUOTED_SHARE: f64 = 0.20;
const MATCHER_CASES: usize = 500;
const MATCHER_MAX_TRIPLES: usize = 20;
const SHUFFLE_ROUNDS: usize = 20;
const SEED: u64 = 0x4d75_7369_634d_6574;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_schemes() -> LiftConfig {
    LiftConfig {
        alignment_schemes: AlignmentScheme::ALL.into_iter().collect(),
        ..LiftConfig::default()
    }
}

fn alignment_fidelity() -> Outcome {
    let nt = write_ntriples(&lift_fixture(&all_schemes()), true);
    let subject = format!("<{DEFAULT_BASE_IRI}artist/david-bowie>");
    let expected = [
        "https://w3id.org/polifonia/ontology/music-meta/Musician",
        "http://purl.org/ontology/mo/MusicArtist",
        "http://erlangen-crm.org/E21_Person",
        "http://www.wikidata.org/entity/Q639669",
    ];
    for class in expected {
        let line = format!("{subject} <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{class}> .");
        ensure(nt.lines().any(|l| l == line), || format!("missing line {line}"))?;
    }
    let types = nt.lines().filter(|l| l.starts_with(&subject) && l.contains("22-rdf-syntax-ns#type")).count();
    ensure(types == 4, || format!("{types} type lines for the subject, expected 4"))?;
    Ok("4/4 type lines".into())
}

fn cq_suite() -> Outcome {
    let data = fixture();
    let artists = |k: ArtistKind| data.artists.iter().filter(|a| a.kind == k).count();
    ensure(data.artists.len() >= 5 && artists(ArtistKind::Ensemble) >= 1 && artists(ArtistKind::Algorithm) >= 1, || {
        "fixture lacks artists of every kind".into()
    })?;
    let chain = data.entities.iter().any(|e| {
        e.derivations.iter().any(|d| {
            data.entities
                .iter()
                .any(|t| t.key == d.target_key && !t.derivations.is_empty())
        })
    });
    ensure(data.entities.len() >= 4 && chain, || "fixture lacks a derivation chain".into())?;
    ensure(data.entities.iter().any(|e| !e.collections.is_empty()), || "fixture lacks a collection".into())?;
    let performances = data.processes.iter().filter(|p| p.kind.is_performance()).count();
    let recordings = data.processes.iter().filter(|p| p.kind == ProcessKind::RecordingProcess).count();
    ensure(performances >= 2 && recordings == 1, || "fixture process mix is off".into())?;
    ensure(
        data.releases.len() == 1
            && data.releases[0].publication.is_some()
            && data.releases[0].license.is_some()
            && !data.releases[0].broadcasts.is_empty(),
        || "fixture release is incomplete".into(),
    )?;
    ensure(data.links.len() >= 3, || "fixture has fewer than 3 links".into())?;

    let suite = Suite::bundled();
    ensure(suite.len() >= 12, || format!("suite has {} CQs", suite.len()))?;
    let verbatim = suite.iter().filter(|c| !c.reconstructed).count();
    ensure(verbatim == 2, || format!("{verbatim} verbatim CQs"))?;

    let report = run_suite(&lift_fixture(&LiftConfig::default()), &suite);
    let failed: Vec<&str> = report.per_cq.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed on fixture: {failed:?}"))?;

    let empty = run_suite(&Graph::new(), &suite);
    let non_empty: BTreeSet<&str> = suite
        .iter()
        .filter(|c| c.expectation == Expectation::NonEmpty)
        .map(|c| c.id.as_str())
        .collect();
    let passed_empty: Vec<&str> = empty
        .per_cq
        .iter()
        .filter(|r| r.passed && non_empty.contains(r.id.as_str()))
        .map(|r| r.id.as_str())
        .collect();
    ensure(passed_empty.is_empty(), || format!("passed on the empty graph: {passed_empty:?}"))?;
    Ok(format!("{}/{} on fixture, {}/{} NonEmpty fail on empty graph", report.passed, report.total, non_empty.len(), non_empty.len()))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pools = Pools::rich();
    let mut quoted = 0;
    for case in 0..ROUND_TRIP_CASES {
        let want_quoted = rng.gen_bool(0.4);
        let g = GraphGen { rng: &mut rng, pools: &pools }.graph(ROUND_TRIP_MAX_TRIPLES, want_quoted);
        if has_quoted(&g) {
            quoted += 1;
        }
        let text = write_ntriples(&g, true);
        let back = parse_ntriples(&text).map_err(|e| format!("case {case}: {e}\n{text}"))?;
        ensure(relabel_blank_nodes(&back) == relabel_blank_nodes(&g), || format!("case {case} differs\n{text}"))?;
        ensure(write_ntriples(&back, true) == text, || format!("case {case}: rewrite not identical"))?;
    }
    let share = quoted as f64 / ROUND_TRIP_CASES as f64;
    ensure(share >= MIN_QUOTED_SHARE, || format!("only {:.0}% of graphs had quoted triples", share * 100.0))?;
    Ok(format!("{ROUND_TRIP_CASES} graphs, {:.0}% with quoted triples", share * 100.0))
}

fn matcher_vs_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let pools = Pools::small();
    let mut non_empty = 0;
    for case in 0..MATCHER_CASES {
        let quoted = rng.gen_bool(0.3);
        let g = GraphGen { rng: &mut rng, pools: &pools }.graph(MATCHER_MAX_TRIPLES, quoted);
        let patterns = random_patterns(&mut rng, &g, &pools);
        let got = g.match_patterns(&patterns).map_err(|e| format!("case {case}: {e}"))?;
        let want = oracle_match(&g, &patterns);
        ensure(got == want, || {
            let shown: Vec<String> = patterns.iter().map(|p| format!("{} {} {}", p.subject, p.predicate, p.object)).collect();
            format!("case {case}: {} vs oracle {} for {shown:?}", got.len(), want.len())
        })?;
        if !want.is_empty() {
            non_empty += 1;
        }
    }
    Ok(format!("{MATCHER_CASES} cases, {non_empty} with solutions"))
}

fn provenance_totality() -> Outcome {
    let links = fixture().links.len();
    let pattern = TriplePattern::new(
        PatternTerm::Quoted(Box::new(TriplePattern::new(
            PatternTerm::var("s"),
            PatternTerm::var("p"),
            PatternTerm::var("o"),
        ))),
        Term::Iri(core::HAS_REFERENCE.iri()),
        PatternTerm::var("r"),
    );
    let with = lift_fixture(&LiftConfig::default());
    let annotated = with.match_patterns(std::slice::from_ref(&pattern)).map_err(|e| e.to_string())?;
    ensure(annotated.len() == links, || format!("{} bindings for {links} links", annotated.len()))?;

    let without = lift_fixture(&LiftConfig {
        emit_provenance: false,
        ..LiftConfig::default()
    });
    let none = without.match_patterns(&[pattern]).map_err(|e| e.to_string())?;
    ensure(none.is_empty(), || format!("{} bindings without provenance", none.len()))?;
    for b in &annotated {
        let t = Triple::new(
            b.get("s").unwrap().clone(),
            b.get("p").unwrap().as_iri().unwrap().clone(),
            b.get("o").unwrap().clone(),
        )
        .map_err(|e| e.to_string())?;
        ensure(without.contains(&t), || format!("link triple dropped: {t}"))?;
    }
    Ok(format!("{links} bindings with provenance, 0 without, link triples kept"))
}

fn shuffled(data: &Dataset, rng: &mut ChaCha8Rng) -> Dataset {
    let mut d = data.clone();
    d.artists.shuffle(rng);
    d.entities.shuffle(rng);
    d.processes.shuffle(rng);
    d.releases.shuffle(rng);
    d.links.shuffle(rng);
    for a in &mut d.artists {
        a.aliases.shuffle(rng);
        a.genres.shuffle(rng);
        a.mediums.shuffle(rng);
        a.memberships.shuffle(rng);
        a.influences.shuffle(rng);
        a.collaborations.shuffle(rng);
    }
    for e in &mut d.entities {
        e.instrumentation.shuffle(rng);
        e.derivations.shuffle(rng);
        e.parts.shuffle(rng);
        e.collections.shuffle(rng);
        if let Some(score) = &mut e.score {
            score.parts.shuffle(rng);
        }
    }
    for p in &mut d.processes {
        p.participants.shuffle(rng);
    }
    for r in &mut d.releases {
        r.recording_keys.shuffle(rng);
        r.broadcasts.shuffle(rng);
    }
    d
}

fn determinism() -> Outcome {
    let config = all_schemes();
    let convert = |d: Dataset, parallel: bool| -> Result<String, String> {
        let resolved = prepare(d).map_err(|v| format!("{v:?}"))?;
        let g = if parallel { lift_dataset_parallel(&config, &resolved) } else { lift_dataset(&config, &resolved) };
        Ok(write_ntriples(&g.map_err(|v| format!("{v:?}"))?, true))
    };
    let first = convert(fixture(), false)?;
    let second = convert(fixture(), false)?;
    ensure(first == second, || "two sequential conversions differ".into())?;
    ensure(convert(fixture(), true)? == first, || "parallel conversion differs".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let base = fixture();
    for round in 0..SHUFFLE_ROUNDS {
        let d = shuffled(&base, &mut rng);
        ensure(convert(d, round % 2 == 1)? == first, || format!("shuffle round {round} differs"))?;
    }
    Ok(format!("{} bytes, identical across 3 runs and {SHUFFLE_ROUNDS} shuffles", first.len()))
}

fn vocabulary_closure() -> Outcome {
    let g = lift_fixture(&all_schemes());
    let targets: BTreeSet<&str> = ALIGNMENTS.iter().map(|a| a.target).collect();
    let known = |iri: &str| vocab::is_known_iri(iri) || targets.contains(iri);
    let rdf_type = rdf::TYPE.iri();
    let mut outside = BTreeSet::new();
    let mut checked = 0;

    fn walk<'a>(t: &'a Triple, out: &mut Vec<&'a Triple>) {
        out.push(t);
        for term in [t.subject(), t.object()] {
            if let Some(inner) = term.as_quoted() {
                walk(inner, out);
            }
        }
    }
    let mut all = Vec::new();
    for t in g.iter() {
        walk(t, &mut all);
    }
    for t in all {
        checked += 1;
        if !known(t.predicate().as_str()) {
            outside.insert(t.predicate().to_string());
        }
        if t.predicate() == &rdf_type {
            match t.object() {
                Term::Iri(class) if known(class.as_str()) => {}
                other => {
                    outside.insert(other.to_string());
                }
            }
        }
    }
    ensure(outside.is_empty(), || format!("outside the vocabulary: {outside:?}"))?;
    Ok(format!("{checked} triples checked, 0 unknown terms"))
}

fn invariants() -> Outcome {
    // idempotent insert
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let pools = Pools::rich();
    for _ in 0..50 {
        let g = GraphGen { rng: &mut rng, pools: &pools }.graph(30, true);
        let mut again = g.clone();
        for t in g.iter() {
            ensure(!again.insert(t.clone()), || format!("re-insert of {t} reported new"))?;
        }
        ensure(again.len() == g.len() && again == g, || "re-insert changed the graph".into())?;
    }

    // derivation irreflexivity
    let entity = EntityRecord {
        derivations: vec![Derivation { target_key: "loop".into(), derivation_type: None }],
        ..serde_json::from_str::<EntityRecord>(r#"{"key": "loop", "title": "Loop"}"#).map_err(|e| e.to_string())?
    };
    let v = validate_record(MetadataRecord::Entity(&entity));
    ensure(v.iter().any(|v| v.path == "derivations[0].targetKey"), || format!("self-derivation accepted: {v:?}"))?;

    // membership tier exclusivity
    let data = Dataset::from_json(
        r#"{"artists": [
            {"key": "band", "kind": "Ensemble", "name": "Band"},
            {"key": "a", "kind": "Musician", "name": "A", "memberships": [{"ensembleKey": "band"}]},
            {"key": "b", "kind": "Musician", "name": "B", "memberships": [{"ensembleKey": "band", "role": "vocalist"}]},
            {"key": "c", "kind": "Musician", "name": "C", "memberships": [{"ensembleKey": "band", "role": "bass"}]},
            {"key": "d", "kind": "Musician", "name": "D",
             "memberships": [{"ensembleKey": "band", "role": "keys", "periodStart": "1990"}]}]}"#,
    )
    .map_err(|e| e.to_string())?;
    let g = lift_dataset(&LiftConfig::default(), &prepare(data).map_err(|v| format!("{v:?}"))?)
        .map_err(|v| format!("{v:?}"))?;
    let res = |p: &str| Term::Iri(musicmeta::rdf::Iri::new(format!("{DEFAULT_BASE_IRI}{p}")).unwrap());
    let band = res("artist/band");
    for member in ["a", "b", "c", "d"] {
        let who = res(&format!("artist/{member}"));
        let tiers = [
            g.contains(&Triple::new(who.clone(), core::IS_MEMBER_OF.iri(), band.clone()).unwrap()),
            g.contains(&Triple::new(who.clone(), mm::IS_SINGER_OF.iri(), band.clone()).unwrap()),
            g.with_object(&who).any(|t| t.predicate() == &mm::MEMBER_OF_MEMBERSHIP.iri()),
        ];
        let n = tiers.iter().filter(|t| **t).count();
        ensure(n == 1, || format!("artist {member} appears in {n} membership tiers"))?;
    }

    // confidence range
    let link = |c: f64| LinkRecord {
        subject_key: "a".into(),
        link_kind: LinkKind::FanPage,
        value: "https://example.org".into(),
        provenance: Reference { confidence: Some(c), ..Reference::from_source("src") },
    };
    for bad in [-0.01, 1.01, f64::NAN, f64::INFINITY] {
        ensure(!validate_record(MetadataRecord::Link(&link(bad))).is_empty(), || format!("confidence {bad} accepted"))?;
    }
    for good in [0.0, 0.5, 1.0] {
        ensure(validate_record(MetadataRecord::Link(&link(good))).is_empty(), || format!("confidence {good} rejected"))?;
    }
    Ok("insert idempotence, derivation irreflexivity, tier exclusivity, confidence range".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        ("alignment fidelity", alignment_fidelity, Some(ALIGNMENT_LIMIT)),
        ("competency question suite", cq_suite, Some(SUITE_LIMIT)),
        ("n-triples-star round trip", round_trip, Some(ROUND_TRIP_LIMIT)),
        ("matcher vs exhaustive oracle", matcher_vs_oracle, Some(MATCHER_LIMIT)),
        ("provenance totality", provenance_totality, None),
        ("determinism", determinism, None),
        ("vocabulary closure", vocabulary_closure, None),
        ("invariant suite", invariants, None),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, limit) {
            if elapsed > limit {
                outcome = Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{}/8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
