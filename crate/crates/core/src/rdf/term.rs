use std::fmt;

use super::RdfError;

pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

/// Deepest quoted-triple nesting a term may carry.
pub const MAX_NESTING: usize = 2;

/// An absolute IRI, stored verbatim.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if is_absolute_iri(&value) {
            Ok(Iri(value))
        } else {
            Err(RdfError::InvalidIri(value))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

/// Checks the IRI shape we accept: a scheme, a non-empty remainder, and no
/// characters that N-Triples forbids inside `<...>`.
pub fn is_absolute_iri(value: &str) -> bool {
    let Some((scheme, rest)) = value.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
        return false;
    }
    !rest.is_empty()
        && !value.chars().any(|c| {
            c.is_whitespace()
                || c.is_control()
                || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
        })
}

/// A literal with lexical form, datatype and optional language tag.
///
/// Equality is structural: `"1"^^xsd:integer` and `"01"^^xsd:integer` differ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    pub fn new(
        lexical: impl Into<String>,
        datatype: Option<Iri>,
        language: Option<&str>,
    ) -> Result<Self, RdfError> {
        let lexical = lexical.into();
        match (datatype, language) {
            (Some(_), Some(_)) => Err(RdfError::ConflictingArguments),
            (None, Some(tag)) => {
                if !is_language_tag(tag) {
                    return Err(RdfError::InvalidLanguageTag(tag.to_string()));
                }
                Ok(Literal {
                    lexical,
                    datatype: Iri(RDF_LANG_STRING.to_string()),
                    language: Some(tag.to_ascii_lowercase()),
                })
            }
            (Some(datatype), None) => {
                if datatype.as_str() == RDF_LANG_STRING {
                    return Err(RdfError::InvalidLanguageTag(String::new()));
                }
                Ok(Literal {
                    lexical,
                    datatype,
                    language: None,
                })
            }
            (None, None) => Ok(Literal {
                lexical,
                datatype: Iri(XSD_STRING.to_string()),
                language: None,
            }),
        }
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Iri(XSD_STRING.to_string()),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self, RdfError> {
        Literal::new(lexical, Some(datatype), None)
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        write_escaped(f, &self.lexical)?;
        f.write_str("\"")?;
        if let Some(lang) = &self.language {
            write!(f, "@{lang}")
        } else if self.datatype.as_str() == XSD_STRING {
            Ok(())
        } else {
            write!(f, "^^{}", self.datatype)
        }
    }
}

/// Escapes a string body the way canonical N-Triples does.
pub(crate) fn write_escaped(out: &mut impl fmt::Write, value: &str) -> fmt::Result {
    for c in value.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            '\u{8}' => out.write_str("\\b")?,
            '\u{c}' => out.write_str("\\f")?,
            c if (c as u32) < 0x20 || c as u32 == 0x7f => write!(out, "\\u{:04X}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

/// BCP-47 shaped: `alpha{1,8}(-alphanum{1,8})*`.
pub fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let primary = parts.next().unwrap_or_default();
    let primary_ok =
        (1..=8).contains(&primary.len()) && primary.chars().all(|c| c.is_ascii_alphabetic());
    primary_ok
        && parts.all(|p| (1..=8).contains(&p.len()) && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    /// Labels must match `[A-Za-z][A-Za-z0-9_]*`.
    pub fn new(label: impl Into<String>) -> Result<Self, RdfError> {
        let label = label.into();
        let mut chars = label.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(BlankNode(label))
        } else {
            Err(RdfError::InvalidBlankNode(label))
        }
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// Hands out `b0`, `b1`, ... for one graph-building session.
#[derive(Debug, Default)]
pub struct BlankNodeGen {
    next: u64,
}

impl BlankNodeGen {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> BlankNode {
        let node = BlankNode(format!("b{}", self.next));
        self.next += 1;
        node
    }
}

/// An embedded (quoted) triple. Only obtainable through [`quote`], which
/// enforces the nesting bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotedTriple(Box<Triple>);

impl QuotedTriple {
    pub fn triple(&self) -> &Triple {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
    BlankNode(BlankNode),
    Quoted(QuotedTriple),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn as_quoted(&self) -> Option<&Triple> {
        match self {
            Term::Quoted(q) => Some(q.triple()),
            _ => None,
        }
    }

    /// 0 for plain terms, 1 + inner depth for quoted triples.
    pub fn nesting_depth(&self) -> usize {
        match self {
            Term::Quoted(q) => 1 + q.triple().nesting_depth(),
            _ => 0,
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl From<BlankNode> for Term {
    fn from(node: BlankNode) -> Self {
        Term::BlankNode(node)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => iri.fmt(f),
            Term::Literal(lit) => lit.fmt(f),
            Term::BlankNode(node) => node.fmt(f),
            Term::Quoted(q) => {
                let t = q.triple();
                write!(f, "<< {} {} {} >>", t.subject, t.predicate, t.object)
            }
        }
    }
}

/// A subject-predicate-object assertion. Literal subjects are rejected at
/// construction; the predicate is an [`Iri`] by type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, RdfError> {
        let subject = subject.into();
        if matches!(subject, Term::Literal(_)) {
            return Err(RdfError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn nesting_depth(&self) -> usize {
        self.subject.nesting_depth().max(self.object.nesting_depth())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

pub fn make_iri(value: &str) -> Result<Term, RdfError> {
    Iri::new(value).map(Term::Iri)
}

pub fn make_literal(
    lexical: &str,
    datatype: Option<Iri>,
    language: Option<&str>,
) -> Result<Term, RdfError> {
    Literal::new(lexical, datatype, language).map(Term::Literal)
}

/// Wraps a triple as a term without asserting it anywhere.
pub fn quote(triple: Triple) -> Result<Term, RdfError> {
    if triple.nesting_depth() >= MAX_NESTING {
        return Err(RdfError::NestingTooDeep);
    }
    Ok(Term::Quoted(QuotedTriple(Box::new(triple))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn iri_validation() {
        assert!(make_iri("https://w3id.org/polifonia/ontology/music-meta/Musician").is_ok());
        assert!(make_iri("urn:isbn:123").is_ok());
        assert_eq!(make_iri(""), Err(RdfError::InvalidIri(String::new())));
        assert!(matches!(make_iri("artist/bowie"), Err(RdfError::InvalidIri(_))));
        assert!(make_iri("http://a.org/x y").is_err());
        assert!(make_iri("http://a.org/x\n").is_err());
        assert!(make_iri("1http://a.org").is_err());
        assert!(make_iri("http:").is_err());
    }

    #[test]
    fn iri_stored_verbatim() {
        let t = make_iri("HTTP://Example.org/A/../b").unwrap();
        assert_eq!(t.as_iri().unwrap().as_str(), "HTTP://Example.org/A/../b");
    }

    #[test]
    fn literal_defaults_and_language() {
        let plain = Literal::new("x", None, None).unwrap();
        assert_eq!(plain.datatype().as_str(), XSD_STRING);

        let heroes = Literal::new("Heroes", None, Some("EN-gb")).unwrap();
        assert_eq!(heroes.datatype().as_str(), RDF_LANG_STRING);
        assert_eq!(heroes.language(), Some("en-gb"));

        let int = Literal::new("120", Some(iri("http://www.w3.org/2001/XMLSchema#integer")), None)
            .unwrap();
        assert_eq!(int.to_string(), "\"120\"^^<http://www.w3.org/2001/XMLSchema#integer>");
    }

    #[test]
    fn literal_errors() {
        assert_eq!(
            Literal::new("x", Some(iri("http://e.org/dt")), Some("en")),
            Err(RdfError::ConflictingArguments)
        );
        assert!(matches!(
            Literal::new("x", None, Some("not a tag")),
            Err(RdfError::InvalidLanguageTag(_))
        ));
        assert!(Literal::new("x", None, Some("")).is_err());
        assert!(Literal::new("x", None, Some("toolongtag")).is_err());
    }

    #[test]
    fn structural_literal_equality() {
        let dt = iri("http://www.w3.org/2001/XMLSchema#integer");
        let one = Literal::typed("1", dt.clone()).unwrap();
        let zero_one = Literal::typed("01", dt).unwrap();
        assert_ne!(one, zero_one);
    }

    #[test]
    fn blank_nodes() {
        assert!(BlankNode::new("b0").is_ok());
        assert!(BlankNode::new("node_1").is_ok());
        assert!(BlankNode::new("0b").is_err());
        assert!(BlankNode::new("a-b").is_err());
        let mut gen = BlankNodeGen::new();
        assert_eq!(gen.fresh().label(), "b0");
        assert_eq!(gen.fresh().label(), "b1");
    }

    #[test]
    fn literal_subject_rejected() {
        let r = Triple::new(Literal::string("x"), iri("http://e.org/p"), iri("http://e.org/o"));
        assert_eq!(r, Err(RdfError::LiteralSubject));
    }

    #[test]
    fn quote_depth_bounds() {
        let p = iri("http://e.org/p");
        let base = Triple::new(iri("http://e.org/a"), p.clone(), iri("http://e.org/b")).unwrap();
        let q1 = quote(base).unwrap();
        assert_eq!(q1.nesting_depth(), 1);

        let depth1 = Triple::new(q1, p.clone(), iri("http://e.org/r")).unwrap();
        let q2 = quote(depth1).unwrap();
        assert_eq!(q2.nesting_depth(), 2);

        let depth2 = Triple::new(q2, p, iri("http://e.org/r")).unwrap();
        assert_eq!(quote(depth2), Err(RdfError::NestingTooDeep));
    }

    #[test]
    fn escaping() {
        let lit = Literal::string("a\"b\\c\nd\te\u{1}");
        assert_eq!(lit.to_string(), r#""a\"b\\c\nd\te\u0001""#);
    }
}
