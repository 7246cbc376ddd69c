//! Exporters: DOT drawings of implication graphs, Horn knowledge bases,
//! and a JSON dump of a parsed document.

use std::collections::BTreeSet;

use serde_json::json;
use thiserror::Error;

use super::TheoryDocument;
use crate::clausal::to_clausal;
use crate::graph::ImplicationGraph;
use crate::lang::{Carrier, DimensionSource, Formula, Shape};

/// Why a theory cannot become a knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error(
        "clause {clause} has {positives} positive literals; \
         a knowledge base needs exactly one per clause"
    )]
    NotHorn { clause: String, positives: usize },
}

/// Renders a graph in DOT format. Node names are the literal texts, with
/// a `not_` prefix marking negated literals; nodes come out in index
/// order and edges in (source, target) order, so the output is stable.
pub fn export_dot(graph: &ImplicationGraph) -> String {
    let name = |node: usize| -> String {
        let literal = graph.literal(node);
        let atom = graph.table().resolve(literal.atom).to_string();
        let raw = if literal.positive {
            atom
        } else {
            format!("not_{atom}")
        };
        raw.replace('\\', "\\\\").replace('"', "\\\"")
    };
    let mut out = String::from("digraph implications {\n");
    for node in 0..graph.node_count() {
        out.push_str(&format!("  \"{}\";\n", name(node)));
    }
    for (from, to) in graph.edges() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", name(from), name(to)));
    }
    out.push_str("}\n");
    out
}

/// Lowercases a literal's text into an identifier: non-alphanumerics map
/// to `_`, and a leading character that is not a lowercase letter gets a
/// `p` prefix.
fn mangle(text: &str) -> String {
    let mut out = String::new();
    for c in text.to_lowercase().chars() {
        out.push(if c.is_ascii_alphanumeric() { c } else { '_' });
    }
    if !out.chars().next().is_some_and(|c| c.is_ascii_lowercase()) {
        out.insert(0, 'p');
    }
    out
}

/// Writes a theory as a Prolog-style knowledge base, one definite clause
/// per line: `q :- p1, p2.` for rules, `q.` for facts. Atom names go
/// through [`mangle`]; colliding names get `_2`, `_3`, ... suffixes in
/// atom order. Any clause without exactly one positive literal is refused.
pub fn export_horn_kb(theory: &[Formula]) -> Result<String, ExportError> {
    let clausal = to_clausal(theory);
    let mut taken: BTreeSet<String> = BTreeSet::new();
    let mut names: Vec<String> = Vec::new();
    for (_, atom) in clausal.table.iter() {
        let base = mangle(&atom.to_string());
        let mut candidate = base.clone();
        let mut k = 2;
        while taken.contains(&candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        taken.insert(candidate.clone());
        names.push(candidate);
    }

    let mut lines: Vec<String> = Vec::new();
    for clause in clausal.clauses() {
        let positives: Vec<_> = clause.literals().filter(|l| l.positive).collect();
        if positives.len() != 1 {
            return Err(ExportError::NotHorn {
                clause: clause.display(&clausal.table),
                positives: positives.len(),
            });
        }
        let head = names[positives[0].atom.index()].as_str();
        let body: Vec<&str> = clause
            .literals()
            .filter(|l| !l.positive)
            .map(|l| names[l.atom.index()].as_str())
            .collect();
        if body.is_empty() {
            lines.push(format!("{head}."));
        } else {
            lines.push(format!("{head} :- {}.", body.join(", ")));
        }
    }
    if lines.is_empty() {
        Ok(String::new())
    } else {
        Ok(lines.join("\n") + "\n")
    }
}

/// Dumps a document as JSON with deterministic (sorted) keys: the
/// language, the construct records, and the hypotheses with their
/// formulas in canonical text form.
pub fn document_json(doc: &TheoryDocument) -> serde_json::Value {
    let universes: Vec<serde_json::Value> = doc
        .language
        .universes
        .iter()
        .map(|u| {
            let carrier = match &u.carrier {
                Carrier::Real { lo, hi } => {
                    json!({"kind": "real", "lo": lo.get(), "hi": hi.get()})
                }
                Carrier::Bool => json!({"kind": "bool"}),
                Carrier::Enum(values) => json!({
                    "kind": "enum",
                    "values": values.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
            };
            json!({
                "name": u.name,
                "carrier": carrier,
                "order": u
                    .order
                    .iter()
                    .map(|(a, b)| json!([a.to_string(), b.to_string()]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let variables: Vec<serde_json::Value> = doc
        .language
        .variables
        .iter()
        .map(|v| json!({"name": v.name, "type": doc.language.universes[v.universe].name}))
        .collect();
    let constructs: Vec<serde_json::Value> = doc
        .constructs
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "derives": c.derives,
                "def": c.definition,
                "dimensions": c
                    .dimensions
                    .iter()
                    .map(|d| {
                        json!({
                            "variable": d.variable,
                            "source": match d.source {
                                DimensionSource::Data => "data",
                                DimensionSource::Abductive => "abductive",
                            },
                            "shape": match d.shape {
                                Shape::Scalar => "scalar",
                                Shape::Collection => "collection",
                            },
                        })
                    })
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let hypotheses: Vec<serde_json::Value> = doc
        .hypotheses
        .iter()
        .map(|h| json!({"id": h.id, "formula": h.formula.to_string()}))
        .collect();
    json!({
        "language": {"universes": universes, "variables": variables},
        "constructs": constructs,
        "hypotheses": hypotheses,
    })
}
