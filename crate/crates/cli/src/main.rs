use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use musicmeta::lift::{lift_dataset_parallel, LiftConfig};
use musicmeta::model::{prepare, Dataset, Violation};
use musicmeta::rdf::{Graph, Term};
use musicmeta::serial::{parse_ntriples, write_ntriples, write_turtle};
use musicmeta::validation::{run_suite, Suite};
use musicmeta::vocab::{self, registry_report, AlignmentScheme};

/// Music metadata to Music Meta RDF-star graphs.
#[derive(Debug, Parser)]
#[command(name = "mmeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lift a JSON metadata file into RDF-star.
    Convert(ConvertArgs),
    /// Run competency questions against an N-Triples-star graph.
    Validate {
        graph: PathBuf,
        /// Suite file; the bundled suite when omitted.
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        report: ReportFormat,
    },
    /// Counts for an N-Triples-star graph.
    Stats {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        report: ReportFormat,
    },
    /// List the vocabulary registry.
    Vocab {
        /// Keep rows whose QName contains this substring.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        report: ReportFormat,
    },
}

#[derive(Debug, clap::Args)]
struct ConvertArgs {
    input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Comma-separated alignment schemes: mo, doremus, wikidata.
    #[arg(long, value_delimiter = ',')]
    align: Option<Vec<String>>,
    #[arg(long)]
    no_provenance: bool,
    #[arg(long)]
    base_iri: Option<String>,
    /// Sort N-Triples output canonically.
    #[arg(long)]
    canonical: bool,
    #[arg(long)]
    session_label: Option<String>,
    /// Print violations as JSON on standard output.
    #[arg(long, value_enum)]
    report: Option<ViolationReport>,
    /// JSON file with defaults for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Nt,
    Ttl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ViolationReport {
    Json,
}

/// `--config` file contents; every field mirrors a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ConvertConfig {
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
    align: Option<Vec<String>>,
    no_provenance: Option<bool>,
    base_iri: Option<String>,
    canonical: Option<bool>,
    session_label: Option<String>,
}

/// A failure that ends the command with the given exit code.
struct Failure {
    code: u8,
    message: String,
}

fn io_failure(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {err}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_ntriples(&read(path)?).map_err(|e| io_failure(path, e))
}

fn report_violations(violations: &[Violation], json: bool) -> Failure {
    if json {
        let text = serde_json::to_string_pretty(violations).expect("violations serialize");
        println!("{text}");
    }
    let mut message = format!("{} violation(s)", violations.len());
    for v in violations {
        message.push_str(&format!("\n  {v}"));
    }
    Failure { code: 1, message }
}

fn convert(args: ConvertArgs) -> Result<(), Failure> {
    let file: ConvertConfig = match &args.config {
        Some(path) => serde_json::from_str(&read(path)?).map_err(|e| io_failure(path, e))?,
        None => ConvertConfig::default(),
    };
    let out = args.out.or(file.out);
    let format = args.format.or(file.format).unwrap_or(OutputFormat::Nt);
    let canonical = args.canonical || file.canonical.unwrap_or(false);

    let mut config = LiftConfig::default();
    if let Some(base) = args.base_iri.or(file.base_iri) {
        config.base_iri = base;
    }
    config.emit_provenance = !(args.no_provenance || file.no_provenance.unwrap_or(false));
    if let Some(label) = args.session_label.or(file.session_label) {
        config.session_label = label;
    }
    for name in args.align.or(file.align).unwrap_or_default() {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        let scheme = AlignmentScheme::from_cli_name(name).ok_or_else(|| Failure {
            code: 2,
            message: format!("unknown alignment scheme {name:?}; expected mo, doremus or wikidata"),
        })?;
        config.alignment_schemes.insert(scheme);
    }
    config.check().map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })?;

    let json_report = args.report == Some(ViolationReport::Json);
    let dataset = Dataset::from_json(&read(&args.input)?).map_err(|e| io_failure(&args.input, e))?;
    let counts = [
        ("artists", dataset.artists.len()),
        ("entities", dataset.entities.len()),
        ("processes", dataset.processes.len()),
        ("releases", dataset.releases.len()),
        ("links", dataset.links.len()),
    ];
    let resolved = prepare(dataset).map_err(|v| report_violations(&v, json_report))?;
    let graph = lift_dataset_parallel(&config, &resolved).map_err(|v| report_violations(&v, json_report))?;

    let text = match format {
        OutputFormat::Nt => write_ntriples(&graph, canonical),
        OutputFormat::Ttl => write_turtle(&graph),
    };
    emit(out.as_deref(), &text)?;
    let sections: Vec<String> = counts.iter().map(|(name, n)| format!("{name}: {n}")).collect();
    eprintln!("{} triples from {}", graph.len(), sections.join(", "));
    Ok(())
}

fn validate(graph: &Path, suite: Option<&Path>, report: ReportFormat) -> Result<(), Failure> {
    let graph = load_graph(graph)?;
    let suite = match suite {
        Some(path) => Suite::from_json(&read(path)?).map_err(|e| io_failure(path, e))?,
        None => Suite::bundled(),
    };
    let result = run_suite(&graph, &suite);
    let text = match report {
        ReportFormat::Json => result.to_json() + "\n",
        ReportFormat::Table => result.to_table(),
    };
    emit(None, &text)?;
    if result.all_passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = result.per_cq.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
        Err(Failure {
            code: 1,
            message: format!("failed: {}", failed.join(", ")),
        })
    }
}

fn compact(term: &Term) -> String {
    if let Term::Iri(iri) = term {
        for (prefix, ns) in vocab::prefix_map() {
            if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
                return format!("{prefix}:{local}");
            }
        }
    }
    term.to_string()
}

fn stats(path: &Path, report: ReportFormat) -> Result<(), Failure> {
    let graph = load_graph(path)?;
    let rdf_type = vocab::rdf::TYPE.iri();
    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for t in graph.with_predicate(&rdf_type) {
        *classes.entry(compact(t.object())).or_default() += 1;
    }
    let annotations = graph.iter().filter(|t| t.subject().as_quoted().is_some()).count();
    let text = match report {
        ReportFormat::Json => {
            let value = serde_json::json!({
                "triples": graph.len(),
                "distinctSubjects": graph.distinct_subjects(),
                "quotedAnnotations": annotations,
                "classes": classes,
            });
            serde_json::to_string_pretty(&value).expect("stats serialize") + "\n"
        }
        ReportFormat::Table => {
            let mut s = format!(
                "triples\t{}\ndistinct subjects\t{}\nquoted annotations\t{}\n",
                graph.len(),
                graph.distinct_subjects(),
                annotations
            );
            for (class, n) in &classes {
                s.push_str(&format!("{class}\t{n}\n"));
            }
            s
        }
    };
    emit(None, &text)
}

fn vocab_listing(filter: Option<&str>, report: ReportFormat) -> Result<(), Failure> {
    let rows: Vec<_> = registry_report()
        .into_iter()
        .filter(|r| filter.map_or(true, |f| r.qname.contains(f)))
        .collect();
    let text = match report {
        ReportFormat::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        ReportFormat::Table => {
            let width = rows.iter().map(|r| r.qname.len()).max().unwrap_or(5).max(5);
            let mut s = format!("{:<width$}  {:<16}  {:>10}  INVENTED\n", "QNAME", "KIND", "ALIGNMENTS");
            for r in &rows {
                s.push_str(&format!(
                    "{:<width$}  {:<16}  {:>10}  {}\n",
                    r.qname,
                    format!("{:?}", r.kind),
                    r.alignment_count,
                    if r.invented { "yes" } else { "no" }
                ));
            }
            s
        }
    };
    emit(None, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Convert(args) => convert(args),
        Command::Validate { graph, suite, report } => validate(&graph, suite.as_deref(), report),
        Command::Stats { graph, report } => stats(&graph, report),
        Command::Vocab { filter, report } => vocab_listing(filter.as_deref(), report),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mmeta: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
