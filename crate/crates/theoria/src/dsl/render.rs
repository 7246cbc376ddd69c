//! Canonical text form of a theory document.
//!
//! The renderer always produces the same layout: types, variables,
//! constructs, then propositions, with declarations grouped and formulas
//! printed with minimal parentheses. Parsing the output reproduces the
//! document structure exactly, and rendering is deterministic, so the
//! canonical text doubles as a normal form.

use crate::lang::Carrier;

use super::TheoryDocument;

/// Pretty-prints a document in canonical form.
pub fn render_theory(doc: &TheoryDocument) -> String {
    let mut blocks: Vec<String> = vec!["# theory".to_string()];

    let mut type_lines: Vec<String> = Vec::new();
    for universe in &doc.language.universes {
        match &universe.carrier {
            Carrier::Real { lo, hi } => type_lines.push(format!(
                "type {} = real[{}, {}]",
                universe.name,
                lo.get(),
                hi.get()
            )),
            Carrier::Bool => type_lines.push(format!("type {} = bool", universe.name)),
            Carrier::Enum(values) => {
                let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                let head = format!("type {} = {{ {} }}", universe.name, list.join(", "));
                if universe.order.is_empty() {
                    type_lines.push(head);
                } else {
                    type_lines.push(format!("{head} order {{"));
                    for (a, b) in &universe.order {
                        type_lines.push(format!("  {a} > {b};"));
                    }
                    type_lines.push("}".to_string());
                }
            }
        }
    }
    if !type_lines.is_empty() {
        blocks.push(type_lines.join("\n"));
    }

    let var_lines: Vec<String> = doc
        .language
        .variables
        .iter()
        .map(|v| format!("var {} : {}", v.name, doc.language.universes[v.universe].name))
        .collect();
    if !var_lines.is_empty() {
        blocks.push(var_lines.join("\n"));
    }

    for construct in &doc.constructs {
        let mut lines = vec![format!("construct {} {{", construct.name)];
        if !construct.derives.is_empty() {
            let list: Vec<String> = construct
                .derives
                .iter()
                .map(|d| format!("\"{d}\""))
                .collect();
            lines.push(format!("  derives {};", list.join(", ")));
        }
        if !construct.definition.is_empty() {
            lines.push(format!("  def \"{}\";", construct.definition));
        }
        for dim in &construct.dimensions {
            let source = match dim.source {
                crate::lang::DimensionSource::Data => "data",
                crate::lang::DimensionSource::Abductive => "abductive",
            };
            let shape = match dim.shape {
                crate::lang::Shape::Scalar => "scalar",
                crate::lang::Shape::Collection => "collection",
            };
            lines.push(format!("  dim {} from {source} shape {shape};", dim.variable));
        }
        lines.push("}".to_string());
        blocks.push(lines.join("\n"));
    }

    let prop_lines: Vec<String> = doc
        .hypotheses
        .iter()
        .map(|h| format!("prop {}: {}", h.id, h.formula))
        .collect();
    if !prop_lines.is_empty() {
        blocks.push(prop_lines.join("\n"));
    }

    let mut text = blocks.join("\n\n");
    text.push('\n');
    text
}
