//! A toolkit for working with typed propositional theories.
//!
//! A *theory* here is a finite set of formulas over a typed language:
//! variables range over declared universes (bounded reals, booleans, or
//! finite enumerations with an optional partial order), atoms compare terms
//! with the relations a universe supports, and formulas combine atoms with
//! the usual connectives.
//!
//! The crate is organized in four layers:
//!
//! - [`lang`] — languages, terms, formulas, models, and evaluation;
//! - [`clausal`] — clausal form, resolution, entailment, and minimal theories;
//! - [`graph`] — implication graphs, transitive closure/reduction, and
//!   canonical theory sets;
//! - [`dsl`] — a small text format for theories, with a parser, a canonical
//!   renderer, and DOT/knowledge-base/JSON exporters.

pub mod clausal;
pub mod dsl;
pub mod graph;
pub mod lang;
