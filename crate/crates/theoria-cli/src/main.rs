//! Command-line front end: validate theory files, decide entailment,
//! compute closures and canonical reductions, minimize hypothesis sets,
//! and export DOT, knowledge-base, and JSON artifacts.
//!
//! Exit codes: 0 for success (or "yes" on query commands), 1 for a negative
//! verdict (`entail`/`oracle`: not entailed, `check`: invalid file), 2 for
//! any error, with diagnostics on stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};
use theoria::clausal::{
    brute_force_entails, entails, minimal_theory_with_order, DpConfig, EngineError,
};
use theoria::dsl::{
    document_json, export_dot, export_horn_kb, parse_formula, parse_theory, Diagnostic,
    TheoryDocument,
};
use theoria::graph::{
    as_implication_theory, build_graph, canonical_set, self_refuting_nodes, CanonicalSet,
    ClosureMethod, GraphError,
};
use theoria::lang::Formula;

#[derive(Parser)]
#[command(
    name = "theoria",
    version,
    about = "Typed theories: parse, deduce, and synthesize canonical hypothesis sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a JSON run report on stdout instead of prose.
    #[arg(long, global = true)]
    json: bool,

    /// Omit timing, so identical runs produce identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Abort resolution once this many clauses have been recorded.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_clauses: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and typecheck a theory file.
    Check { file: PathBuf },

    /// Decide whether the theory entails a query formula.
    Entail {
        file: PathBuf,
        /// Query in the same formula syntax as the file's propositions.
        #[arg(long)]
        query: String,
    },

    /// List the implications the theory derives beyond those it states.
    Closure {
        file: PathBuf,
        /// Closure algorithm to run.
        #[arg(long, value_enum, default_value_t = Method::Matrix)]
        method: Method,
        /// Also write the closed graph to this DOT file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },

    /// Compute the canonical reduced hypothesis set.
    Reduce {
        file: PathBuf,
        /// Also write the reduced graph to this DOT file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },

    /// Drop hypotheses that follow from the ones kept.
    Minimize {
        file: PathBuf,
        /// Comma-separated 0-based hypothesis indices fixing the order to try.
        #[arg(long)]
        order: Option<String>,
    },

    /// Write an artifact derived from the theory file.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },

    /// Answer an entailment query by exhaustive valuation (a test aid).
    Oracle {
        file: PathBuf,
        #[arg(long)]
        query: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Sum of adjacency-matrix powers.
    Matrix,
    /// Floyd-Warshall reachability.
    Fw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// DOT drawing of the implication graph.
    Dot,
    /// Prolog-style knowledge base (definite clauses only).
    Kb,
    /// JSON dump of the parsed document.
    Json,
}

/// A run that ends on stderr with exit code 2.
struct Failure(Vec<String>);

impl Failure {
    fn message(text: impl Into<String>) -> Failure {
        Failure(vec![text.into()])
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        Failure::message(format!("error: {e}"))
    }
}

/// What a finished subcommand reports.
struct Outcome {
    /// The `input` field of the JSON report: path and content digest.
    input: Json,
    /// Human-readable stdout lines.
    lines: Vec<String>,
    /// Diagnostics for stderr (used by `check` on invalid files).
    errors: Vec<String>,
    /// The `result` field of the JSON report.
    result: Json,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(out) => {
            for line in &out.errors {
                eprintln!("{line}");
            }
            if cli.json {
                let mut report = json!({
                    "command": command_name(&cli.command),
                    "version": env!("CARGO_PKG_VERSION"),
                    "input": out.input,
                    "result": out.result,
                });
                if !cli.no_timing {
                    report["time_ms"] = json!(started.elapsed().as_millis() as u64);
                }
                println!("{report}");
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
                if !cli.no_timing {
                    println!("time: {} ms", started.elapsed().as_millis());
                }
            }
            ExitCode::from(out.exit)
        }
        Err(Failure(lines)) => {
            for line in lines {
                eprintln!("{line}");
            }
            ExitCode::from(2)
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Check { .. } => "check",
        Command::Entail { .. } => "entail",
        Command::Closure { .. } => "closure",
        Command::Reduce { .. } => "reduce",
        Command::Minimize { .. } => "minimize",
        Command::Export { .. } => "export",
        Command::Oracle { .. } => "oracle",
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let config = DpConfig {
        max_clauses: cli.max_clauses,
        use_subsumption: true,
    };
    match &cli.command {
        Command::Check { file } => check_cmd(file),
        Command::Entail { file, query } => entail_cmd(file, query, &config),
        Command::Closure { file, method, dot } => closure_cmd(file, *method, dot.as_deref()),
        Command::Reduce { file, dot } => reduce_cmd(file, dot.as_deref()),
        Command::Minimize { file, order } => minimize_cmd(file, order.as_deref(), &config),
        Command::Export { file, format, out } => export_cmd(file, *format, out),
        Command::Oracle { file, query } => oracle_cmd(file, query),
    }
}

// ----------------------------------------------------------------------
// Input plumbing
// ----------------------------------------------------------------------

fn read_input(path: &Path) -> Result<(String, Json), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::message(format!("error: {}: {e}", path.display())))?;
    let digest = Sha256::digest(text.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let input = json!({"path": path.display().to_string(), "sha256": hex});
    Ok((text, input))
}

fn format_diagnostics(path: &Path, diags: &[Diagnostic]) -> Vec<String> {
    diags
        .iter()
        .map(|d| format!("{}:{d}", path.display()))
        .collect()
}

fn load(path: &Path) -> Result<(TheoryDocument, Json), Failure> {
    let (text, input) = read_input(path)?;
    match parse_theory(&text) {
        Ok(doc) => Ok((doc, input)),
        Err(diags) => Err(Failure(format_diagnostics(path, &diags))),
    }
}

fn parse_query(query: &str, doc: &TheoryDocument) -> Result<Formula, Failure> {
    parse_formula(query, &doc.language)
        .map_err(|diags| Failure(diags.iter().map(|d| format!("query:{d}")).collect()))
}

/// Maps a graph-side error onto the hypothesis that caused it.
fn graph_failure(doc: &TheoryDocument, error: GraphError) -> Failure {
    match error {
        GraphError::NotImplicational { index, formula } => Failure::message(format!(
            "error: hypothesis {} ({formula}) is not an implication between literals",
            doc.hypotheses[index].id
        )),
        other => Failure::message(format!("error: {other}")),
    }
}

fn synthesize(doc: &TheoryDocument, method: ClosureMethod) -> Result<CanonicalSet, Failure> {
    canonical_set(&doc.theory(), method).map_err(|e| graph_failure(doc, e))
}

/// Literals whose closure path reaches their own negation are false in every
/// model; the graph pipeline cannot see that, so flag them for the user.
fn refutation_report(set: &CanonicalSet) -> (Vec<String>, Vec<String>) {
    let literals: Vec<String> = self_refuting_nodes(&set.closure)
        .into_iter()
        .map(|n| set.closure.node_text(n))
        .collect();
    let warnings = literals
        .iter()
        .map(|l| format!("warning: {l} implies its own negation"))
        .collect();
    (literals, warnings)
}

fn write_file(path: &Path, payload: &str) -> Result<(), Failure> {
    fs::write(path, payload)
        .map_err(|e| Failure::message(format!("error: {}: {e}", path.display())))
}

// ----------------------------------------------------------------------
// Subcommands
// ----------------------------------------------------------------------

fn check_cmd(path: &Path) -> Result<Outcome, Failure> {
    let (text, input) = read_input(path)?;
    match parse_theory(&text) {
        Ok(doc) => Ok(Outcome {
            input,
            lines: vec![format!(
                "ok: {} type(s), {} variable(s), {} construct(s), {} hypothesis(es)",
                doc.language.universes.len(),
                doc.language.variables.len(),
                doc.constructs.len(),
                doc.hypotheses.len()
            )],
            errors: Vec::new(),
            result: json!({
                "valid": true,
                "types": doc.language.universes.len(),
                "variables": doc.language.variables.len(),
                "constructs": doc.constructs.len(),
                "hypotheses": doc.hypotheses.len(),
            }),
            exit: 0,
        }),
        Err(diags) => {
            let formatted = format_diagnostics(path, &diags);
            Ok(Outcome {
                input,
                lines: vec![format!("invalid: {} error(s)", formatted.len())],
                errors: formatted.clone(),
                result: json!({"valid": false, "errors": formatted}),
                exit: 1,
            })
        }
    }
}

fn entail_cmd(path: &Path, query: &str, config: &DpConfig) -> Result<Outcome, Failure> {
    let (doc, input) = load(path)?;
    let formula = parse_query(query, &doc)?;
    let (yes, saturation) = entails(&doc.theory(), &formula, config)?;
    let mut lines = vec![format!("entailed: {}", if yes { "yes" } else { "no" })];
    lines.extend(saturation.trace_lines());
    Ok(Outcome {
        input,
        lines,
        errors: Vec::new(),
        result: json!({
            "entailed": yes,
            "query": formula.to_string(),
            "saturation": saturation.to_json(),
        }),
        exit: u8::from(!yes),
    })
}

fn closure_cmd(path: &Path, method: Method, dot: Option<&Path>) -> Result<Outcome, Failure> {
    let (doc, input) = load(path)?;
    let chosen = match method {
        Method::Matrix => ClosureMethod::MatrixPower,
        Method::Fw => ClosureMethod::FloydWarshall,
    };
    let set = synthesize(&doc, chosen)?;
    let derived = set.derived_theory();
    let (refuting, warnings) = refutation_report(&set);
    let mut lines = vec![format!("derived: {} implication(s)", derived.len())];
    lines.extend(derived.iter().map(|f| format!("  {f}")));
    let mut result = json!({
        "method": match method { Method::Matrix => "matrix", Method::Fw => "fw" },
        "derived": derived.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "closure_edges": set.closure.edge_count(),
        "self_refuting": refuting,
    });
    if let Some(out) = dot {
        write_file(out, &export_dot(&set.closure))?;
        lines.push(format!("wrote {}", out.display()));
        result["dot"] = json!(out.display().to_string());
    }
    Ok(Outcome {
        input,
        lines,
        errors: warnings,
        result,
        exit: 0,
    })
}

fn reduce_cmd(path: &Path, dot: Option<&Path>) -> Result<Outcome, Failure> {
    let (doc, input) = load(path)?;
    let set = synthesize(&doc, ClosureMethod::MatrixPower)?;
    let (refuting, warnings) = refutation_report(&set);
    let id = |i: usize| doc.hypotheses[i].id.clone();
    let kept: Vec<String> = set.kept_hypotheses().into_iter().map(id).collect();
    let removed: Vec<String> = set.removed_hypotheses().into_iter().map(id).collect();
    let mut lines = vec!["canonical:".to_string()];
    lines.extend(set.reduced_theory.iter().map(|f| format!("  {f}")));
    lines.push(if kept.is_empty() {
        "kept: (none)".to_string()
    } else {
        format!("kept: {}", kept.join(", "))
    });
    for hypothesis in &removed {
        lines.push(format!("removed: {hypothesis} (derivable)"));
    }
    let mut result = json!({
        "canonical": set.reduced_theory.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "kept": kept,
        "removed": removed
            .iter()
            .map(|h| json!({"id": h, "reason": "derivable"}))
            .collect::<Vec<_>>(),
        "self_refuting": refuting,
    });
    if let Some(out) = dot {
        write_file(out, &export_dot(&set.reduction))?;
        lines.push(format!("wrote {}", out.display()));
        result["dot"] = json!(out.display().to_string());
    }
    Ok(Outcome {
        input,
        lines,
        errors: warnings,
        result,
        exit: 0,
    })
}

fn minimize_cmd(path: &Path, order: Option<&str>, config: &DpConfig) -> Result<Outcome, Failure> {
    let (doc, input) = load(path)?;
    let theory = doc.theory();
    let order_vec: Vec<usize> = match order {
        Some(text) => text
            .split(',')
            .map(|part| {
                part.trim().parse::<usize>().map_err(|_| {
                    Failure::message(format!("error: --order: `{}` is not an index", part.trim()))
                })
            })
            .collect::<Result<_, _>>()?,
        None => (0..theory.len()).collect(),
    };
    let kept = minimal_theory_with_order(&theory, &order_vec, config)?;
    // Attribute each kept formula back to its hypothesis id.
    let mut used = vec![false; theory.len()];
    let mut kept_ids: Vec<String> = Vec::new();
    for formula in &kept {
        let i = (0..theory.len())
            .find(|&i| !used[i] && &theory[i] == formula)
            .expect("every kept formula comes from the theory");
        used[i] = true;
        kept_ids.push(doc.hypotheses[i].id.clone());
    }
    let dropped: Vec<String> = (0..theory.len())
        .filter(|&i| !used[i])
        .map(|i| doc.hypotheses[i].id.clone())
        .collect();
    let mut lines = vec![format!(
        "minimal theory: {} of {} hypothesis(es)",
        kept.len(),
        theory.len()
    )];
    for (hypothesis, formula) in kept_ids.iter().zip(&kept) {
        lines.push(format!("  {hypothesis}: {formula}"));
    }
    lines.push(if dropped.is_empty() {
        "dropped: (none)".to_string()
    } else {
        format!("dropped: {}", dropped.join(", "))
    });
    Ok(Outcome {
        input,
        lines,
        errors: Vec::new(),
        result: json!({
            "kept": kept_ids
                .iter()
                .zip(&kept)
                .map(|(id, f)| json!({"id": id, "formula": f.to_string()}))
                .collect::<Vec<_>>(),
            "dropped": dropped,
            "order": order_vec,
        }),
        exit: 0,
    })
}

fn export_cmd(path: &Path, format: Format, out: &Path) -> Result<Outcome, Failure> {
    let (doc, input) = load(path)?;
    let (name, payload) = match format {
        Format::Dot => {
            let implications =
                as_implication_theory(&doc.theory()).map_err(|e| graph_failure(&doc, e))?;
            ("dot", export_dot(&build_graph(&implications)))
        }
        Format::Kb => (
            "kb",
            export_horn_kb(&doc.theory())
                .map_err(|e| Failure::message(format!("error: {e}")))?,
        ),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&document_json(&doc))
                .expect("document dumps are serializable");
            text.push('\n');
            ("json", text)
        }
    };
    write_file(out, &payload)?;
    Ok(Outcome {
        input,
        lines: vec![format!("wrote {} ({} bytes)", out.display(), payload.len())],
        errors: Vec::new(),
        result: json!({
            "format": name,
            "out": out.display().to_string(),
            "bytes": payload.len(),
        }),
        exit: 0,
    })
}

fn oracle_cmd(path: &Path, query: &str) -> Result<Outcome, Failure> {
    let (doc, input) = load(path)?;
    let formula = parse_query(query, &doc)?;
    let yes = brute_force_entails(&doc.theory(), &formula)?;
    Ok(Outcome {
        input,
        lines: vec![format!("entailed: {}", if yes { "yes" } else { "no" })],
        errors: Vec::new(),
        result: json!({
            "entailed": yes,
            "query": formula.to_string(),
            "method": "truth-table",
        }),
        exit: u8::from(!yes),
    })
}
