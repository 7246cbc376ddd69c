//! The textual front end: a small declaration language for theory files.
//!
//! A theory file declares, in any order but with every name introduced
//! before its first use:
//!
//! ```text
//! # comments run to the end of the line
//! type Scale = real[0, 10]
//! type Flag = bool
//! type Collab = { (Daily, High), (Eventual, Low) } order {
//!   (Daily, High) > (Eventual, Low);
//! }
//! var OS : Scale
//! construct Team {
//!   derives "shared ownership";
//!   def "the unit that builds and runs the system";
//!   dim OS from data shape scalar;
//! }
//! prop P1: OS > 5 -> CL > (Eventual, Low)
//! ```
//!
//! Formulas use `!`, `&`, `|`, `->`, `<->` (loosest last: `<->`, then
//! `->`, `|`, `&`, `!`), comparisons `= > < >= <=`, arithmetic
//! `+ - * /` on real-typed terms, and tuple constants `(A, B)`.
//! [`parse_theory`] returns either the document or a list of located
//! diagnostics; it never panics, whatever the input. [`render_theory`]
//! prints the canonical form, and parsing that text reproduces the
//! document exactly.

mod export;
mod lexer;
mod parser;
mod render;

pub use export::{document_json, export_dot, export_horn_kb, ExportError};
pub use parser::{parse_formula, parse_theory};
pub use render::render_theory;

use crate::lang::{ConstructRecord, Formula, Language};

/// How bad a diagnostic is. Parsing fails only when at least one
/// [`Severity::Error`] is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A located message about the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    /// 1-based source line.
    pub line: u32,
    /// 1-based column, counted in characters.
    pub col: u32,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, line: u32, col: u32) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            line,
            col,
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {}: {}", self.line, self.col, severity, self.message)
    }
}

/// A named hypothesis: an identifier and its formula.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub id: String,
    pub formula: Formula,
}

/// A parsed theory file: the language its formulas live in, the construct
/// records, and the named hypotheses.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TheoryDocument {
    pub language: Language,
    pub constructs: Vec<ConstructRecord>,
    pub hypotheses: Vec<Hypothesis>,
}

impl TheoryDocument {
    /// The hypothesis formulas, in declaration order.
    pub fn theory(&self) -> Vec<Formula> {
        self.hypotheses.iter().map(|h| h.formula.clone()).collect()
    }

    pub fn hypothesis(&self, id: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.id == id)
    }
}
