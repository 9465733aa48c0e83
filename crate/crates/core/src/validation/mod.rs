//! Competency questions as basic graph patterns, and a harness that runs a
//! suite of them against a graph.

mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use syntax::{parse_constant, parse_pattern_term, CmpOp, Expr, Filter, Operand, SyntaxError};

use crate::rdf::{Binding, Graph, PatternTerm, Solutions, Term, TriplePattern};
use crate::vocab::{self, rdf};

/// The suite shipped with the crate.
pub const BUNDLED_SUITE: &str = include_str!("../../suites/music_meta_cqs.json");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("competency question {0:?} is already registered")]
    DuplicateId(String),
    #[error("{id}: {message}")]
    Invalid { id: String, message: String },
    #[error("malformed suite JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    NonEmpty,
    ExactBindings(BTreeSet<Binding>),
    MinCount(usize),
}

impl Expectation {
    pub fn satisfied_by(&self, solutions: &Solutions) -> bool {
        match self {
            Expectation::NonEmpty => !solutions.is_empty(),
            Expectation::ExactBindings(expected) => solutions == expected,
            Expectation::MinCount(n) => solutions.len() >= *n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompetencyQuestion {
    pub id: String,
    pub question: String,
    pub patterns: Vec<TriplePattern>,
    /// Further pattern lists whose solutions are unioned with `patterns`.
    pub alternatives: Vec<Vec<TriplePattern>>,
    /// Variables kept in the answer; all of them when empty.
    pub select: Vec<String>,
    pub filter: Option<Filter>,
    pub expectation: Expectation,
    /// Written for this suite rather than quoted from the published list.
    pub reconstructed: bool,
}

impl CompetencyQuestion {
    pub fn new(id: impl Into<String>, question: impl Into<String>, patterns: Vec<TriplePattern>) -> Self {
        CompetencyQuestion {
            id: id.into(),
            question: question.into(),
            patterns,
            alternatives: Vec::new(),
            select: Vec::new(),
            filter: None,
            expectation: Expectation::NonEmpty,
            reconstructed: true,
        }
    }

    fn branches(&self) -> impl Iterator<Item = &Vec<TriplePattern>> {
        std::iter::once(&self.patterns).chain(&self.alternatives)
    }

    /// Registry membership of every vocabulary IRI in predicate or class
    /// position, and shape checks on the patterns.
    pub fn check(&self) -> Result<(), SuiteError> {
        let invalid = |message: String| SuiteError::Invalid {
            id: self.id.clone(),
            message,
        };
        if self.id.trim().is_empty() {
            return Err(invalid("id must not be empty".into()));
        }
        for branch in self.branches() {
            if branch.is_empty() {
                return Err(invalid("pattern list must not be empty".into()));
            }
            for p in branch {
                check_pattern(p).map_err(invalid)?;
            }
        }
        let bound: BTreeSet<&str> = self.branches().flatten().flat_map(|p| p.variables()).collect();
        for v in self.select.iter().map(String::as_str).chain(self.filter.iter().flat_map(|f| f.variables())) {
            if !bound.contains(v) {
                return Err(invalid(format!("variable ?{v} does not occur in any pattern")));
            }
        }
        Ok(())
    }

    pub fn solve(&self, graph: &Graph) -> Solutions {
        let keep = |b: &Binding| self.filter.as_ref().map_or(true, |f| f.eval(b));
        let mut out = Solutions::new();
        for branch in self.branches() {
            let found = graph.match_filtered(branch, keep).expect("patterns are checked non-empty");
            out.extend(found.into_iter().map(|b| self.project(b)));
        }
        out
    }

    fn project(&self, b: Binding) -> Binding {
        if self.select.is_empty() {
            return b;
        }
        b.iter()
            .filter(|(k, _)| self.select.iter().any(|s| s == k))
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }
}

fn check_pattern(p: &TriplePattern) -> Result<(), String> {
    let known = |t: &PatternTerm, role: &str| -> Result<(), String> {
        match t {
            PatternTerm::Term(Term::Iri(iri)) if !vocab::is_known_iri(iri.as_str()) => {
                Err(format!("{role} {iri} is not in the vocabulary registry or alignment table"))
            }
            PatternTerm::Term(Term::Iri(_)) | PatternTerm::Var(_) => Ok(()),
            _ => Err(format!("{role} must be an IRI or a variable")),
        }
    };
    known(&p.predicate, "predicate")?;
    if p.predicate == PatternTerm::Term(rdf::TYPE.term()) {
        known(&p.object, "class")?;
    }
    for t in [&p.subject, &p.object] {
        if let PatternTerm::Quoted(inner) = t {
            check_pattern(inner)?;
        }
    }
    if matches!(p.subject, PatternTerm::Term(Term::Literal(_))) {
        return Err("subject must not be a literal".into());
    }
    Ok(())
}

/// On-disk form of one question.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CqFile {
    id: String,
    question: String,
    patterns: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    alternatives: Vec<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    select: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    filter: Option<String>,
    #[serde(default)]
    expectation: ExpectationFile,
    #[serde(default)]
    reconstructed: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
enum ExpectationFile {
    #[default]
    NonEmpty,
    MinCount(usize),
    /// Each binding maps variable names (without `?`) to term text.
    ExactBindings(Vec<BTreeMap<String, String>>),
}

fn patterns_from(id: &str, rows: &[[String; 3]]) -> Result<Vec<TriplePattern>, SuiteError> {
    rows.iter()
        .map(|[s, p, o]| {
            let term = |text: &str| {
                parse_pattern_term(text).map_err(|e| SuiteError::Invalid {
                    id: id.to_string(),
                    message: format!("{text:?}: {e}"),
                })
            };
            Ok(TriplePattern::new(term(s)?, term(p)?, term(o)?))
        })
        .collect()
}

fn patterns_to(patterns: &[TriplePattern]) -> Vec<[String; 3]> {
    patterns
        .iter()
        .map(|p| [p.subject.to_string(), p.predicate.to_string(), p.object.to_string()])
        .collect()
}

impl TryFrom<CqFile> for CompetencyQuestion {
    type Error = SuiteError;

    fn try_from(f: CqFile) -> Result<Self, SuiteError> {
        let invalid = |message: String| SuiteError::Invalid {
            id: f.id.clone(),
            message,
        };
        let expectation = match &f.expectation {
            ExpectationFile::NonEmpty => Expectation::NonEmpty,
            ExpectationFile::MinCount(n) => Expectation::MinCount(*n),
            ExpectationFile::ExactBindings(rows) => {
                let mut set = BTreeSet::new();
                for row in rows {
                    let mut b = Binding::new();
                    for (var, text) in row {
                        let t = parse_constant(text).map_err(|e| invalid(format!("{text:?}: {e}")))?;
                        b.insert(var.trim_start_matches('?'), t);
                    }
                    set.insert(b);
                }
                Expectation::ExactBindings(set)
            }
        };
        let cq = CompetencyQuestion {
            patterns: patterns_from(&f.id, &f.patterns)?,
            alternatives: f
                .alternatives
                .iter()
                .map(|rows| patterns_from(&f.id, rows))
                .collect::<Result<_, _>>()?,
            select: f.select.iter().map(|v| v.trim_start_matches('?').to_string()).collect(),
            filter: f
                .filter
                .as_deref()
                .map(Filter::parse)
                .transpose()
                .map_err(|e| invalid(format!("filter: {e}")))?,
            expectation,
            reconstructed: f.reconstructed,
            id: f.id,
            question: f.question,
        };
        cq.check()?;
        Ok(cq)
    }
}

impl From<&CompetencyQuestion> for CqFile {
    fn from(cq: &CompetencyQuestion) -> Self {
        CqFile {
            id: cq.id.clone(),
            question: cq.question.clone(),
            patterns: patterns_to(&cq.patterns),
            alternatives: cq.alternatives.iter().map(|b| patterns_to(b)).collect(),
            select: cq.select.iter().map(|v| format!("?{v}")).collect(),
            filter: cq.filter.as_ref().map(|f| f.source().to_string()),
            expectation: match &cq.expectation {
                Expectation::NonEmpty => ExpectationFile::NonEmpty,
                Expectation::MinCount(n) => ExpectationFile::MinCount(*n),
                Expectation::ExactBindings(set) => ExpectationFile::ExactBindings(
                    set.iter()
                        .map(|b| b.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
                        .collect(),
                ),
            },
            reconstructed: cq.reconstructed,
        }
    }
}

/// Questions keyed by id; always run in id order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Suite {
    cqs: BTreeMap<String, CompetencyQuestion>,
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, cq: CompetencyQuestion) -> Result<(), SuiteError> {
        cq.check()?;
        if self.cqs.contains_key(&cq.id) {
            return Err(SuiteError::DuplicateId(cq.id));
        }
        self.cqs.insert(cq.id.clone(), cq);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cqs.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CompetencyQuestion> {
        self.cqs.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CompetencyQuestion> {
        self.cqs.values()
    }

    /// A JSON array of question objects.
    pub fn from_json(text: &str) -> Result<Suite, SuiteError> {
        let files: Vec<CqFile> = serde_json::from_str(text).map_err(|e| SuiteError::Json(e.to_string()))?;
        let mut suite = Suite::new();
        for f in files {
            suite.register(f.try_into()?)?;
        }
        Ok(suite)
    }

    pub fn to_json(&self) -> String {
        let files: Vec<CqFile> = self.iter().map(CqFile::from).collect();
        serde_json::to_string_pretty(&files).expect("suite serialization is infallible")
    }

    pub fn bundled() -> Suite {
        Suite::from_json(BUNDLED_SUITE).expect("bundled suite is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CqResult {
    pub id: String,
    pub question: String,
    pub passed: bool,
    pub binding_count: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub per_cq: Vec<CqResult>,
    pub passed: usize,
    pub total: usize,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn to_table(&self) -> String {
        let id_width = self.per_cq.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        let mut out = String::new();
        let _ = writeln!(out, "{:<id_width$}  {:<6}  {:>8}  {:>10}  QUESTION", "ID", "RESULT", "BINDINGS", "MS");
        for r in &self.per_cq {
            let _ = writeln!(
                out,
                "{:<id_width$}  {:<6}  {:>8}  {:>10.3}  {}",
                r.id,
                if r.passed { "pass" } else { "FAIL" },
                r.binding_count,
                r.elapsed_ms,
                r.question
            );
        }
        let _ = writeln!(out, "{}/{} passed", self.passed, self.total);
        out
    }
}

pub fn run_cq(graph: &Graph, cq: &CompetencyQuestion) -> (bool, Solutions) {
    let solutions = cq.solve(graph);
    (cq.expectation.satisfied_by(&solutions), solutions)
}

pub fn run_suite(graph: &Graph, suite: &Suite) -> ValidationReport {
    let per_cq: Vec<CqResult> = suite
        .iter()
        .map(|cq| {
            let start = Instant::now();
            let (passed, solutions) = run_cq(graph, cq);
            CqResult {
                id: cq.id.clone(),
                question: cq.question.clone(),
                passed,
                binding_count: solutions.len(),
                elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
            }
        })
        .collect();
    ValidationReport {
        passed: per_cq.iter().filter(|r| r.passed).count(),
        total: per_cq.len(),
        per_cq,
    }
}
