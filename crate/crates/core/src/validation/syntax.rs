//! Text forms used by suite files: pattern terms and filter expressions.
//!
//! Pattern terms: `?var`, `a`, `prefix:local`, `<iri>`, `"lit"`, `"lit"@en`,
//! `"lit"^^xsd:gYear`, bare numbers, and `<< s p o >>`.
//!
//! Filters: `||`, `&&`, `!`, parentheses, and comparisons
//! (`=`, `!=`, `<`, `<=`, `>`, `>=`) between `?var`, `lang(?var)`,
//! `str(?var)` and constants.

use std::cmp::Ordering;
use std::fmt;

use crate::model::PartialDate;
use crate::rdf::{Binding, Iri, Literal, PatternTerm, Term, TriplePattern, XSD_NS, XSD_STRING};
use crate::vocab::{self, rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    source: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(source: &'a str) -> Self {
        Lexer {
            chars: source.chars().collect(),
            pos: 0,
            source,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        self.err_at(self.pos, message)
    }

    fn err_at<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            column: pos + 1,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.chars.get(self.pos + i) == Some(&c))
    }

    fn eat(&mut self, s: &str) -> bool {
        let hit = self.starts_with(s);
        if hit {
            self.pos += s.chars().count();
        }
        hit
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected {c:?} in {:?}", self.source)),
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.')) {
            self.pos += 1;
        }
        // a trailing '.' belongs to the surrounding text
        while self.pos > start && self.chars[self.pos - 1] == '.' {
            self.pos -= 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn var(&mut self) -> Result<String, SyntaxError> {
        let start = self.pos;
        if !self.eat("?") {
            return self.err("expected a variable");
        }
        let name: String = self.word();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return self.err_at(start, "variable names are letters, digits and '_'");
        }
        Ok(name)
    }

    fn iri(&mut self) -> Result<Iri, SyntaxError> {
        let start = self.pos;
        self.pos += 1;
        let body_start = self.pos;
        while matches!(self.peek(), Some(c) if c != '>') {
            self.pos += 1;
        }
        if self.peek().is_none() {
            return self.err_at(start, "unterminated IRI");
        }
        let body: String = self.chars[body_start..self.pos].iter().collect();
        self.pos += 1;
        Iri::new(body).or_else(|e| self.err_at(start, e.to_string()))
    }

    fn qname(&mut self) -> Result<Iri, SyntaxError> {
        let start = self.pos;
        let word = self.word();
        if !word.contains(':') {
            return self.err_at(start, format!("expected a term, found {word:?}"));
        }
        match vocab::term(&word) {
            Ok(Term::Iri(iri)) => Ok(iri),
            _ => self.err_at(start, format!("unknown vocabulary term {word}")),
        }
    }

    fn literal(&mut self) -> Result<Literal, SyntaxError> {
        let start = self.pos;
        self.pos += 1;
        let mut lexical = String::new();
        loop {
            match self.peek() {
                None => return self.err_at(start, "unterminated literal"),
                Some('"') => {
                    self.pos += 1;
                    break;
                }
                Some('\\') => {
                    self.pos += 1;
                    let c = match self.peek() {
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some(u @ ('u' | 'U')) => {
                            let len = if u == 'u' { 4 } else { 8 };
                            let digits: String = self.chars.iter().skip(self.pos + 1).take(len).collect();
                            let c = u32::from_str_radix(&digits, 16).ok().filter(|_| digits.len() == len);
                            match c.and_then(char::from_u32) {
                                Some(c) => {
                                    self.pos += len;
                                    c
                                }
                                None => return self.err("malformed unicode escape"),
                            }
                        }
                        _ => return self.err("invalid escape"),
                    };
                    lexical.push(c);
                    self.pos += 1;
                }
                Some(c) => {
                    lexical.push(c);
                    self.pos += 1;
                }
            }
        }
        if self.eat("@") {
            let tag_start = self.pos;
            let tag = self.word();
            return Literal::new(lexical, None, Some(&tag)).or_else(|e| self.err_at(tag_start, e.to_string()));
        }
        if self.eat("^^") {
            let dt = if self.peek() == Some('<') { self.iri()? } else { self.qname()? };
            return Literal::new(lexical, Some(dt), None).or_else(|e| self.err_at(start, e.to_string()));
        }
        Ok(Literal::string(lexical))
    }

    fn number(&mut self) -> Result<Literal, SyntaxError> {
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let datatype = if text.contains('.') { xsd::DECIMAL } else { xsd::INTEGER };
        if text.parse::<f64>().is_err() {
            return self.err_at(start, format!("malformed number {text:?}"));
        }
        Ok(Literal::typed(text, datatype.iri()).expect("xsd numeric types are datatypes"))
    }

    /// A term with no variables.
    fn constant(&mut self) -> Result<Term, SyntaxError> {
        match self.pattern_term()? {
            PatternTerm::Term(t) => Ok(t),
            _ => self.err("variables are not allowed here"),
        }
    }

    fn pattern_term(&mut self) -> Result<PatternTerm, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('?') => Ok(PatternTerm::Var(self.var()?)),
            Some('<') if self.starts_with("<<") => {
                self.pos += 2;
                let inner = self.triple_pattern()?;
                self.skip_ws();
                if !self.eat(">>") {
                    return self.err("expected '>>'");
                }
                if let Some(Ok(t)) = inner.apply(&Binding::new()) {
                    return crate::rdf::quote(t).map(PatternTerm::Term).or_else(|e| self.err_at(start, e.to_string()));
                }
                Ok(PatternTerm::Quoted(Box::new(inner)))
            }
            Some('<') => Ok(PatternTerm::Term(self.iri()?.into())),
            Some('"') => Ok(PatternTerm::Term(self.literal()?.into())),
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => Ok(PatternTerm::Term(self.number()?.into())),
            Some('a') if !matches!(self.chars.get(self.pos + 1), Some(c) if c.is_alphanumeric() || *c == ':') => {
                self.pos += 1;
                Ok(PatternTerm::Term(rdf::TYPE.term()))
            }
            Some(_) => Ok(PatternTerm::Term(self.qname()?.into())),
            None => self.err("expected a term"),
        }
    }

    fn triple_pattern(&mut self) -> Result<TriplePattern, SyntaxError> {
        let s = self.pattern_term()?;
        let p = self.pattern_term()?;
        let o = self.pattern_term()?;
        Ok(TriplePattern::new(s, p, o))
    }
}

pub fn parse_pattern_term(text: &str) -> Result<PatternTerm, SyntaxError> {
    let mut lx = Lexer::new(text);
    let t = lx.pattern_term()?;
    lx.finish()?;
    Ok(t)
}

pub fn parse_constant(text: &str) -> Result<Term, SyntaxError> {
    let mut lx = Lexer::new(text);
    let t = lx.constant()?;
    lx.finish()?;
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Var(String),
    Lang(String),
    Str(String),
    Const(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Or(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Cmp(Operand, CmpOp, Operand),
}

/// A parsed filter expression; keeps its source text for display and
/// serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    source: String,
    expr: Expr,
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Filter {
    pub fn parse(source: &str) -> Result<Filter, SyntaxError> {
        let mut lx = Lexer::new(source);
        let expr = or_expr(&mut lx)?;
        lx.finish()?;
        Ok(Filter {
            source: source.to_string(),
            expr,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Variables the expression reads.
    pub fn variables(&self) -> Vec<&str> {
        fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a str>) {
            match e {
                Expr::Or(a, b) | Expr::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expr::Not(a) => walk(a, out),
                Expr::Cmp(l, _, r) => {
                    for op in [l, r] {
                        if let Operand::Var(v) | Operand::Lang(v) | Operand::Str(v) = op {
                            out.push(v);
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.expr, &mut out);
        out
    }

    /// Unbound variables and type mismatches make a comparison false.
    pub fn eval(&self, binding: &Binding) -> bool {
        eval(&self.expr, binding)
    }
}

fn or_expr(lx: &mut Lexer) -> Result<Expr, SyntaxError> {
    let mut left = and_expr(lx)?;
    loop {
        lx.skip_ws();
        if !lx.eat("||") {
            return Ok(left);
        }
        left = Expr::Or(Box::new(left), Box::new(and_expr(lx)?));
    }
}

fn and_expr(lx: &mut Lexer) -> Result<Expr, SyntaxError> {
    let mut left = unary(lx)?;
    loop {
        lx.skip_ws();
        if !lx.eat("&&") {
            return Ok(left);
        }
        left = Expr::And(Box::new(left), Box::new(unary(lx)?));
    }
}

fn unary(lx: &mut Lexer) -> Result<Expr, SyntaxError> {
    lx.skip_ws();
    if lx.starts_with("!=") {
        return lx.err("expected an expression");
    }
    if lx.eat("!") {
        return Ok(Expr::Not(Box::new(unary(lx)?)));
    }
    if lx.eat("(") {
        let inner = or_expr(lx)?;
        lx.skip_ws();
        if !lx.eat(")") {
            return lx.err("expected ')'");
        }
        return Ok(inner);
    }
    let left = operand(lx)?;
    lx.skip_ws();
    let op = if lx.eat("<=") {
        CmpOp::Le
    } else if lx.eat(">=") {
        CmpOp::Ge
    } else if lx.eat("!=") {
        CmpOp::Ne
    } else if lx.eat("=") {
        CmpOp::Eq
    } else if lx.eat("<") {
        CmpOp::Lt
    } else if lx.eat(">") {
        CmpOp::Gt
    } else {
        return lx.err("expected a comparison operator");
    };
    let right = operand(lx)?;
    Ok(Expr::Cmp(left, op, right))
}

fn operand(lx: &mut Lexer) -> Result<Operand, SyntaxError> {
    lx.skip_ws();
    for (name, wrap) in [("lang(", Operand::Lang as fn(String) -> Operand), ("str(", Operand::Str)] {
        if lx.eat(name) {
            lx.skip_ws();
            let v = lx.var()?;
            lx.skip_ws();
            if !lx.eat(")") {
                return lx.err("expected ')'");
            }
            return Ok(wrap(v));
        }
    }
    if lx.peek() == Some('?') {
        return Ok(Operand::Var(lx.var()?));
    }
    Ok(Operand::Const(lx.constant()?))
}

fn value(op: &Operand, binding: &Binding) -> Option<Term> {
    match op {
        Operand::Var(v) => binding.get(v).cloned(),
        Operand::Const(t) => Some(t.clone()),
        Operand::Lang(v) => match binding.get(v)? {
            Term::Literal(l) => Some(Literal::string(l.language().unwrap_or_default()).into()),
            _ => None,
        },
        Operand::Str(v) => match binding.get(v)? {
            Term::Literal(l) => Some(Literal::string(l.lexical()).into()),
            Term::Iri(i) => Some(Literal::string(i.as_str()).into()),
            _ => None,
        },
    }
}

fn numeric(l: &Literal) -> Option<f64> {
    let local = l.datatype().as_str().strip_prefix(XSD_NS)?;
    matches!(local, "integer" | "decimal" | "double" | "float" | "int" | "long")
        .then(|| l.lexical().parse().ok())
        .flatten()
}

fn temporal(l: &Literal) -> Option<PartialDate> {
    let local = l.datatype().as_str().strip_prefix(XSD_NS)?;
    matches!(local, "gYear" | "gYearMonth" | "date")
        .then(|| l.lexical().parse().ok())
        .flatten()
}

/// Value ordering where one is defined: numbers, dates (earliest instant)
/// and plain strings.
fn order(a: &Term, b: &Term) -> Option<Ordering> {
    let (Term::Literal(a), Term::Literal(b)) = (a, b) else {
        return None;
    };
    if let (Some(x), Some(y)) = (numeric(a), numeric(b)) {
        return x.partial_cmp(&y);
    }
    if let (Some(x), Some(y)) = (temporal(a), temporal(b)) {
        return Some(x.earliest_cmp(&y));
    }
    let plain = |l: &Literal| l.datatype().as_str() == XSD_STRING;
    (plain(a) && plain(b)).then(|| a.lexical().cmp(b.lexical()))
}

fn eval(e: &Expr, binding: &Binding) -> bool {
    match e {
        Expr::Or(a, b) => eval(a, binding) || eval(b, binding),
        Expr::And(a, b) => eval(a, binding) && eval(b, binding),
        Expr::Not(a) => !eval(a, binding),
        Expr::Cmp(l, op, r) => {
            let (Some(a), Some(b)) = (value(l, binding), value(r, binding)) else {
                return false;
            };
            let ord = order(&a, &b);
            match op {
                CmpOp::Eq => ord.map_or(a == b, |o| o == Ordering::Equal),
                CmpOp::Ne => ord.map_or(a != b, |o| o != Ordering::Equal),
                CmpOp::Lt => ord == Some(Ordering::Less),
                CmpOp::Le => matches!(ord, Some(Ordering::Less | Ordering::Equal)),
                CmpOp::Gt => ord == Some(Ordering::Greater),
                CmpOp::Ge => matches!(ord, Some(Ordering::Greater | Ordering::Equal)),
            }
        }
    }
}
