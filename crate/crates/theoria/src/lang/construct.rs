//! Construct records: named bundles of measured or inferred dimensions.
//!
//! A construct documents how an abstract concept is operationalized: which
//! variables measure it, where each measurement comes from, and what shape
//! it takes. Records are metadata — they carry no semantics of their own,
//! but the variables they name must exist in the language.

use super::{Language, LanguageIssue};

/// Where a dimension's values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionSource {
    /// Measured directly from data.
    Data,
    /// Posited to explain observations.
    Abductive,
}

/// The shape of one dimension of a construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Scalar,
    Collection,
}

/// One dimension of a construct: a variable together with its provenance
/// and shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimension {
    pub variable: String,
    pub source: DimensionSource,
    pub shape: Shape,
}

/// A named construct with the concepts it derives from, a free-text
/// definition, and its dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructRecord {
    pub name: String,
    pub derives: Vec<String>,
    pub definition: String,
    pub dimensions: Vec<Dimension>,
}

impl ConstructRecord {
    /// A construct is multidimensional when it bundles several dimensions.
    pub fn is_multidimensional(&self) -> bool {
        self.dimensions.len() >= 2
    }
}

/// Checks a construct against a language: every dimension must name a
/// declared variable, and no variable may appear twice.
pub fn check_construct(lang: &Language, construct: &ConstructRecord) -> Vec<LanguageIssue> {
    let mut issues = Vec::new();
    let element = format!("construct {}", construct.name);
    let mut seen = std::collections::BTreeSet::new();
    for dim in &construct.dimensions {
        if lang.variable(&dim.variable).is_none() {
            issues.push(LanguageIssue {
                element: element.clone(),
                message: format!("dimension references unknown variable {}", dim.variable),
            });
        }
        if !seen.insert(&dim.variable) {
            issues.push(LanguageIssue {
                element: element.clone(),
                message: format!("variable {} appears in two dimensions", dim.variable),
            });
        }
    }
    issues
}
