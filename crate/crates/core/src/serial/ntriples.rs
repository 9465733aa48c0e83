use super::ParseError;
use crate::rdf::{quote, BlankNode, Graph, Iri, Literal, RdfError, Term, Triple};

/// One `s p o .` line per triple. With `canonical`, lines are ordered by
/// the serialized (subject, predicate, object) tuple; otherwise they follow
/// insertion order. The empty graph is the empty string.
pub fn write_ntriples(graph: &Graph, canonical: bool) -> String {
    let mut rows: Vec<(String, String, String)> = graph
        .iter()
        .map(|t| (t.subject().to_string(), t.predicate().to_string(), t.object().to_string()))
        .collect();
    if canonical {
        rows.sort();
    }
    let mut out = String::new();
    for (s, p, o) in rows {
        out.push_str(&s);
        out.push(' ');
        out.push_str(&p);
        out.push(' ');
        out.push_str(&o);
        out.push_str(" .\n");
    }
    out
}

pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut graph = Graph::new();
    for (i, line) in text.lines().enumerate() {
        let mut cur = Cursor {
            chars: line.chars().collect(),
            pos: 0,
            line: i + 1,
        };
        cur.skip_ws();
        if cur.at_end() || cur.peek() == Some('#') {
            continue;
        }
        let triple = cur.triple()?;
        cur.skip_ws();
        cur.expect('.')?;
        cur.skip_ws();
        match cur.peek() {
            None | Some('#') => {}
            Some(c) => return Err(cur.error(format!("unexpected {c:?} after '.'"))),
        }
        graph.insert(triple);
    }
    Ok(graph)
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: pos + 1,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.chars.get(self.pos + i) == Some(&c))
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected {c:?}, found {found:?}"))),
            None => Err(self.error(format!("expected {c:?}, found end of line"))),
        }
    }

    fn triple(&mut self) -> Result<Triple, ParseError> {
        let subject = self.term(false)?;
        self.skip_ws();
        let start = self.pos;
        let predicate = match self.peek() {
            Some('<') if !self.starts_with("<<") => self.iri()?,
            _ => return Err(self.error_at(start, "predicate must be an IRI")),
        };
        self.skip_ws();
        let object = self.term(true)?;
        Triple::new(subject, predicate, object).map_err(|e| self.error_at(start, e.to_string()))
    }

    fn term(&mut self, literal_ok: bool) -> Result<Term, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some('<') if self.starts_with("<<") => {
                self.pos += 2;
                self.skip_ws();
                let inner = self.triple()?;
                self.skip_ws();
                if !self.starts_with(">>") {
                    return Err(self.error("expected '>>' closing a quoted triple"));
                }
                self.pos += 2;
                quote(inner).map_err(|e| match e {
                    RdfError::NestingTooDeep => ParseError::NestingTooDeep {
                        line: self.line,
                        column: start + 1,
                    },
                    other => self.error_at(start, other.to_string()),
                })
            }
            Some('<') => Ok(Term::Iri(self.iri()?)),
            Some('_') => self.blank(),
            Some('"') if literal_ok => self.literal(),
            Some('"') => Err(self.error("literal in subject position")),
            Some(c) => Err(self.error(format!("unexpected {c:?} where a term was expected"))),
            None => Err(self.error("unexpected end of line where a term was expected")),
        }
    }

    fn iri(&mut self) -> Result<Iri, ParseError> {
        let start = self.pos;
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => value.push(self.uchar()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error_at(self.pos - 1, format!("character {c:?} not allowed in an IRI")));
                }
                Some(c) => value.push(c),
                None => return Err(self.error("unterminated IRI")),
            }
        }
        Iri::new(value).map_err(|e| self.error_at(start, e.to_string()))
    }

    fn blank(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        if !self.starts_with("_:") {
            return Err(self.error("expected '_:' starting a blank node"));
        }
        self.pos += 2;
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '.' || c == '>' {
                break;
            }
            label.push(c);
            self.pos += 1;
        }
        BlankNode::new(label)
            .map(Term::BlankNode)
            .map_err(|e| self.error_at(start, e.to_string()))
    }

    /// After a backslash inside an IRI: only `\u` and `\U` are legal.
    fn uchar(&mut self) -> Result<char, ParseError> {
        let at = self.pos - 1;
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error_at(at, "invalid escape")),
        };
        self.hex(at, len)
    }

    fn hex(&mut self, at: usize, len: usize) -> Result<char, ParseError> {
        let digits: String = (0..len).filter_map(|_| self.bump()).collect();
        if digits.chars().count() != len || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(self.error_at(at, "malformed unicode escape"));
        }
        u32::from_str_radix(&digits, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error_at(at, "unicode escape is not a scalar value"))
    }

    fn literal(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        self.expect('"')?;
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => {
                    let at = self.pos - 1;
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex(at, 4)?,
                        Some('U') => self.hex(at, 8)?,
                        _ => return Err(self.error_at(at, "invalid escape")),
                    };
                    lexical.push(c);
                }
                Some(c) => lexical.push(c),
                None => return Err(self.error_at(start, "unterminated literal")),
            }
        }
        let lit = if self.peek() == Some('@') {
            self.pos += 1;
            let tag_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                self.pos += 1;
            }
            let tag: String = self.chars[tag_start..self.pos].iter().collect();
            Literal::new(lexical, None, Some(&tag)).map_err(|e| self.error_at(tag_start, e.to_string()))?
        } else if self.starts_with("^^") {
            self.pos += 2;
            let dt_start = self.pos;
            let datatype = self.iri()?;
            Literal::new(lexical, Some(datatype), None).map_err(|e| self.error_at(dt_start, e.to_string()))?
        } else {
            Literal::string(lexical)
        };
        Ok(Term::Literal(lit))
    }
}
