use super::{annotate, date, integer, text, LiftContext, LiftError, NodeKind, Out};
use crate::model::*;
use crate::rdf::{is_absolute_iri, quote, Iri, Literal, Term, Triple};
use crate::vocab::{core, mm, rdfs, VocabTerm};

const SINGER_ROLES: [&str; 2] = ["singer", "vocalist"];

fn is_singer_role(role: &str) -> bool {
    SINGER_ROLES.iter().any(|r| role.trim().eq_ignore_ascii_case(r))
}

/// A shared, labelled individual such as a genre or a place.
fn labelled(
    ctx: &LiftContext,
    out: &mut Out,
    kind: NodeKind,
    class: VocabTerm,
    label: &str,
) -> Result<Iri, LiftError> {
    let node = ctx.node(kind, label)?;
    out.typed(&node, class);
    out.label(&node, label);
    Ok(node)
}

fn place(ctx: &LiftContext, out: &mut Out, label: &str, geo: Option<&str>) -> Result<Iri, LiftError> {
    let node = labelled(ctx, out, NodeKind::Place, core::PLACE, label)?;
    if let Some(geo) = geo {
        out.add(node.clone(), mm::COORDINATES, Literal::string(geo));
    }
    Ok(node)
}

fn interval(out: &mut Out, node: &Iri, start: Option<&PartialDate>, end: Option<&PartialDate>) {
    out.typed(node, core::TIME_INTERVAL);
    if let Some(d) = start {
        out.add(node.clone(), core::START_DATE, date(d));
    }
    if let Some(d) = end {
        out.add(node.clone(), core::END_DATE, date(d));
    }
}

pub fn lift_artist(ctx: &LiftContext, a: &ArtistRecord) -> Result<Vec<Triple>, LiftError> {
    let s = ctx.node(NodeKind::Artist, &a.key)?;
    let mut out = Out::default();
    out.typed(
        &s,
        match a.kind {
            ArtistKind::Musician => mm::MUSICIAN,
            ArtistKind::Ensemble => mm::MUSIC_ENSEMBLE,
            ArtistKind::Algorithm => mm::MUSIC_ALGORITHM,
        },
    );
    if let Some(kind) = a.ensemble_kind {
        out.typed(
            &s,
            match kind {
                EnsembleKind::MusicGroup => mm::MUSIC_GROUP,
                EnsembleKind::Orchestra => mm::ORCHESTRA,
                EnsembleKind::Choir => mm::CHOIR,
            },
        );
    }
    out.add(s.clone(), mm::NAME, text(&a.name, a.name_language.as_deref())?);
    for alias in &a.aliases {
        out.add(s.clone(), mm::ALIAS, text(&alias.value, alias.language.as_deref())?);
    }
    for genre in &a.genres {
        let g = labelled(ctx, &mut out, NodeKind::Genre, mm::MUSIC_GENRE, genre)?;
        out.add(s.clone(), mm::HAS_GENRE, g);
    }
    for medium in &a.mediums {
        let m = labelled(ctx, &mut out, NodeKind::Medium, mm::MEDIUM_OF_PERFORMANCE, medium)?;
        out.add(s.clone(), mm::HAS_MEDIUM_OF_PERFORMANCE, m);
    }
    if let Some(d) = &a.activity_start {
        out.add(s.clone(), mm::ACTIVITY_START_DATE, date(d));
    }
    if let Some(d) = &a.activity_end {
        out.add(s.clone(), mm::ACTIVITY_END_DATE, date(d));
    }
    for key in &a.influences {
        out.add(s.clone(), mm::INFLUENCED_BY, ctx.node(NodeKind::Artist, key)?);
    }
    for key in &a.collaborations {
        out.add(s.clone(), mm::COLLABORATED_WITH, ctx.node(NodeKind::Artist, key)?);
    }

    let mut memberships: Vec<&Membership> = a.memberships.iter().collect();
    memberships.sort_by_key(|m| {
        (
            &m.ensemble_key,
            &m.role,
            m.period_start.map(|d| d.to_string()),
            m.period_end.map(|d| d.to_string()),
        )
    });
    for (i, m) in memberships.into_iter().enumerate() {
        let ensemble = ctx.node(NodeKind::Artist, &m.ensemble_key)?;
        if m.has_period() {
            let node = ctx.config.sub_iri(NodeKind::Membership, &s, &[&(i + 1).to_string()]);
            out.typed(&node, mm::MUSIC_ENSEMBLE_MEMBERSHIP);
            out.add(node.clone(), mm::MEMBER_OF_MEMBERSHIP, s.clone());
            out.add(node.clone(), mm::MEMBERSHIP_ENSEMBLE, ensemble);
            if let Some(role) = &m.role {
                out.add(node.clone(), mm::HAS_ROLE, Literal::string(role));
            }
            let time = ctx.config.sub_iri(NodeKind::Time, &node, &[]);
            out.add(node.clone(), mm::DURING, time.clone());
            interval(&mut out, &time, m.period_start.as_ref(), m.period_end.as_ref());
        } else {
            match &m.role {
                None => out.add(s.clone(), core::IS_MEMBER_OF, ensemble),
                Some(role) if is_singer_role(role) => out.add(s.clone(), mm::IS_SINGER_OF, ensemble),
                Some(role) => {
                    let t = out.assert(s.clone(), core::IS_MEMBER_OF, ensemble);
                    out.add(quote(t)?, mm::HAS_ROLE, Literal::string(role));
                }
            }
        }
    }
    Ok(out.0)
}

pub fn lift_entity(ctx: &LiftContext, e: &EntityRecord) -> Result<Vec<Triple>, LiftError> {
    let s = ctx.node(NodeKind::Entity, &e.key)?;
    let mut out = Out::default();
    out.typed(&s, mm::MUSIC_ENTITY);
    out.add(s.clone(), mm::TITLE, text(&e.title, e.title_language.as_deref())?);

    if let Some(t) = &e.text {
        let node = ctx.config.sub_iri(NodeKind::Text, &s, &[]);
        out.add(s.clone(), mm::HAS_TEXT, node.clone());
        out.typed(
            &node,
            match t.kind {
                TextKind::Lyrics => mm::LYRICS,
                TextKind::Libretto => mm::LIBRETTO,
                TextKind::Text => mm::TEXT,
            },
        );
        if let Some(lang) = &t.language {
            out.add(node.clone(), mm::TEXT_LANGUAGE, Literal::string(lang));
        }
        if let Some(body) = &t.body {
            out.add(node.clone(), mm::BODY, text(body, t.language.as_deref())?);
        }
    }

    if let Some(score) = &e.score {
        let node = ctx.config.sub_iri(NodeKind::Score, &s, &[]);
        out.add(s.clone(), mm::HAS_ABSTRACT_SCORE, node.clone());
        out.typed(&node, mm::ABSTRACT_SCORE);
        if let Some(form) = &score.form_type {
            let f = labelled(ctx, &mut out, NodeKind::FormType, mm::FORM_TYPE, form)?;
            out.add(node.clone(), mm::HAS_FORM_TYPE, f);
        }
        if let Some(key) = &score.key {
            let k = labelled(ctx, &mut out, NodeKind::MusicalKey, mm::KEY, key)?;
            out.add(node.clone(), mm::HAS_KEY, k);
        }
        if let Some(tempo) = &score.tempo {
            out.add(node.clone(), mm::TEMPO, Literal::string(tempo));
        }
        if let Some(n) = score.order_number {
            out.add(node.clone(), mm::ORDER_NUMBER, integer(n));
        }
        let mut parts: Vec<&ScorePart> = score.parts.iter().collect();
        parts.sort_by_key(|p| (p.order_number, p.kind, &p.label));
        for (i, part) in parts.into_iter().enumerate() {
            let p = ctx.config.sub_iri(NodeKind::Score, &s, &["part", &(i + 1).to_string()]);
            out.add(node.clone(), mm::HAS_PART, p.clone());
            out.typed(
                &p,
                match part.kind {
                    ScorePartKind::Movement => mm::MOVEMENT,
                    ScorePartKind::Section => mm::SECTION,
                },
            );
            out.label(&p, &part.label);
            out.add(p.clone(), mm::ORDER_NUMBER, integer(part.order_number));
        }
    }

    if !e.instrumentation.is_empty() {
        let node = ctx.config.sub_iri(NodeKind::Instrumentation, &s, &[]);
        out.add(s.clone(), mm::HAS_INSTRUMENTATION, node.clone());
        out.typed(&node, mm::INSTRUMENTATION);
        let mut entries: Vec<&InstrumentationEntry> = e.instrumentation.iter().collect();
        entries.sort_by_key(|i| (&i.medium, i.cardinality));
        for (i, entry) in entries.into_iter().enumerate() {
            let m = ctx.config.sub_iri(NodeKind::Instrumentation, &s, &[&(i + 1).to_string()]);
            out.add(node.clone(), mm::HAS_MEDIUM_OF_PERFORMANCE, m.clone());
            out.typed(&m, mm::MEDIUM_OF_PERFORMANCE);
            out.label(&m, &entry.medium);
            out.add(m.clone(), mm::MEDIUM_CARDINALITY, integer(entry.cardinality));
        }
    }

    for part in &e.parts {
        out.add(s.clone(), mm::HAS_PART, ctx.node(NodeKind::Entity, part)?);
    }
    for d in &e.derivations {
        let t = out.assert(s.clone(), mm::IS_DERIVED_FROM, ctx.node(NodeKind::Entity, &d.target_key)?);
        if let Some(kind) = &d.derivation_type {
            out.add(quote(t)?, mm::DERIVATION_TYPE, Literal::string(kind));
        }
    }
    for c in &e.collections {
        let coll = ctx.node(NodeKind::Collection, &c.collection_key)?;
        out.typed(&coll, mm::COLLECTION);
        out.add(coll.clone(), mm::HAS_MEMBER, s.clone());
        let concept = labelled(ctx, &mut out, NodeKind::Concept, mm::COLLECTION_CONCEPT, &c.concept_label)?;
        out.add(coll, mm::HAS_COLLECTION_CONCEPT, concept);
    }
    Ok(out.0)
}

pub fn lift_process(ctx: &LiftContext, p: &ProcessRecord) -> Result<Vec<Triple>, LiftError> {
    let s = ctx.node(NodeKind::Process, &p.key)?;
    let entity = ctx.node(NodeKind::Entity, &p.entity_key)?;
    let mut out = Out::default();
    let link = match p.kind {
        ProcessKind::CreativeProcess => {
            out.typed(&s, mm::CREATIVE_PROCESS);
            mm::CREATES_ENTITY
        }
        ProcessKind::LivePerformance => {
            out.typed(&s, mm::LIVE_PERFORMANCE);
            mm::REALISES
        }
        ProcessKind::StudioPerformance => {
            out.typed(&s, mm::STUDIO_PERFORMANCE);
            mm::REALISES
        }
        ProcessKind::RecordingProcess => {
            out.typed(&s, mm::RECORDING_PROCESS);
            out.typed(&s, mm::CREATIVE_PROCESS);
            mm::RECORDS
        }
    };
    out.add(s.clone(), link, entity);

    let mut with_role = Vec::new();
    for part in &p.participants {
        let artist = ctx.node(NodeKind::Artist, &part.artist_key)?;
        match &part.role {
            None => out.add(s.clone(), mm::INVOLVES_ARTIST, artist),
            Some(role) => with_role.push((&part.artist_key, role, artist)),
        }
    }
    with_role.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    for (i, (_, role, artist)) in with_role.into_iter().enumerate() {
        let node = ctx.config.sub_iri(NodeKind::Participation, &s, &[&(i + 1).to_string()]);
        out.add(s.clone(), mm::HAS_PARTICIPATION, node.clone());
        out.add(node.clone(), mm::INVOLVES_ARTIST, artist);
        out.add(node, mm::HAS_ROLE, Literal::string(role));
    }

    if let Some(pl) = &p.place {
        let node = place(ctx, &mut out, &pl.label, pl.geo.as_deref())?;
        out.add(s.clone(), mm::AT_PLACE, node);
    }
    if p.time_start.is_some() || p.time_end.is_some() {
        let time = ctx.config.sub_iri(NodeKind::Time, &s, &[]);
        out.add(s.clone(), mm::DURING, time.clone());
        interval(&mut out, &time, p.time_start.as_ref(), p.time_end.as_ref());
    }
    if let Some(key) = &p.creates_new_entity_key {
        out.add(s.clone(), mm::CREATES_ENTITY, ctx.node(NodeKind::Entity, key)?);
    }
    if let Some(key) = &p.recording_key {
        let rec = ctx.node(NodeKind::Recording, key)?;
        out.add(s.clone(), mm::PRODUCES_RECORDING, rec.clone());
        out.typed(&rec, mm::RECORDING);
    }
    for (k, v) in &p.technical {
        out.add(s.clone(), mm::TECHNICAL_DETAIL, Literal::string(format!("{k}: {v}")));
    }
    Ok(out.0)
}

pub fn lift_release(ctx: &LiftContext, r: &ReleaseRecord) -> Result<Vec<Triple>, LiftError> {
    let s = ctx.node(NodeKind::Release, &r.key)?;
    let mut out = Out::default();
    out.typed(&s, mm::RELEASE);
    out.add(s.clone(), mm::TITLE, Literal::string(&r.title));
    for key in &r.recording_keys {
        out.add(s.clone(), mm::CONTAINS_RECORDING, ctx.node(NodeKind::Recording, key)?);
    }

    if let Some(publ) = &r.publication {
        let node = ctx.config.sub_iri(NodeKind::Situation, &s, &["publication"]);
        out.add(s.clone(), mm::HAS_SITUATION, node.clone());
        out.typed(&node, mm::PUBLICATION_SITUATION);
        let publisher = labelled(ctx, &mut out, NodeKind::Agent, mm::PUBLISHER, &publ.publisher_name)?;
        out.add(node.clone(), mm::PUBLISHED_BY, publisher);
        if let Some(d) = &publ.date {
            out.add(node.clone(), mm::DATE, date(d));
        }
        if let Some(label) = &publ.place_label {
            let pl = place(ctx, &mut out, label, None)?;
            out.add(node, mm::AT_PLACE, pl);
        }
    }

    if let Some(license) = &r.license {
        let node = labelled(ctx, &mut out, NodeKind::License, mm::LICENSE, &license.name)?;
        out.add(s.clone(), mm::HAS_LICENSE, node.clone());
        if let Some(url) = &license.url {
            out.add(node, rdfs::SEE_ALSO, Iri::new(url.as_str())?);
        }
    }

    let mut broadcasts: Vec<&Broadcast> = r.broadcasts.iter().collect();
    broadcasts.sort_by_key(|b| (&b.broadcaster_name, b.date.map(|d| d.to_string()), &b.place_label));
    for (i, b) in broadcasts.into_iter().enumerate() {
        let node = ctx.config.sub_iri(NodeKind::Situation, &s, &["broadcast", &(i + 1).to_string()]);
        out.add(s.clone(), mm::HAS_SITUATION, node.clone());
        out.typed(&node, mm::BROADCASTING_SITUATION);
        let broadcaster = labelled(ctx, &mut out, NodeKind::Agent, mm::BROADCASTER, &b.broadcaster_name)?;
        out.add(node.clone(), mm::BROADCAST_BY, broadcaster);
        if let Some(d) = &b.date {
            out.add(node.clone(), mm::DATE, date(d));
        }
        if let Some(label) = &b.place_label {
            let pl = place(ctx, &mut out, label, None)?;
            out.add(node, mm::AT_PLACE, pl);
        }
    }
    Ok(out.0)
}

fn link_property(kind: &LinkKind) -> VocabTerm {
    match kind {
        LinkKind::OfficialWebsite => mm::OFFICIAL_WEBSITE,
        LinkKind::FanPage => mm::FAN_PAGE,
        LinkKind::Forum => mm::FORUM,
        LinkKind::Review => mm::REVIEW,
        LinkKind::Shop => mm::SHOP,
        LinkKind::DatabaseId { .. } => mm::DATABASE_ID,
        LinkKind::StreamingId { .. } => mm::STREAMING_ID,
        LinkKind::AuthorityId { .. } => mm::AUTHORITY_ID,
    }
}

fn link_value(value: &str) -> Term {
    let web = value.starts_with("http://") || value.starts_with("https://");
    match Iri::new(value) {
        Ok(iri) if web && is_absolute_iri(value) => iri.into(),
        _ => Literal::string(value).into(),
    }
}

/// The link triple, its identifier scheme if any, and its provenance.
pub fn lift_link(ctx: &LiftContext, l: &LinkRecord) -> Result<Vec<Triple>, LiftError> {
    let kind = match ctx.data.subject_kind(&l.subject_key) {
        Some(SubjectKind::Artist) => NodeKind::Artist,
        Some(SubjectKind::Entity) => NodeKind::Entity,
        Some(SubjectKind::Process) => NodeKind::Process,
        Some(SubjectKind::Recording) => NodeKind::Recording,
        Some(SubjectKind::Release) => NodeKind::Release,
        None => {
            return Err(LiftError::UnknownKey {
                segment: "record",
                key: l.subject_key.clone(),
            })
        }
    };
    let s = ctx.node(kind, &l.subject_key)?;
    let mut out = Out::default();
    let t = out.assert(s, link_property(&l.link_kind), link_value(&l.value));
    if let Some(scheme) = l.link_kind.scheme() {
        out.add(quote(t.clone())?, mm::IDENTIFIER_SCHEME, Literal::string(scheme));
    }
    if ctx.config.emit_provenance {
        out.0.extend(annotate(ctx, &t, &l.provenance)?);
    }
    Ok(out.0)
}
