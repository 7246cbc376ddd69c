//! Languages, terms, formulas, and their evaluation in a model.
//!
//! A [`Language`] declares universes (types), typed variables, and the
//! functions and relations each universe supports. Most of the function and
//! relation stock is derived from a universe's carrier: every universe gets
//! equality, bounded real universes get arithmetic and the numeric orders,
//! and enumerations with a declared partial order get the order relations.

mod construct;
mod display;
mod formula;
mod term;

pub use construct::{check_construct, ConstructRecord, Dimension, DimensionSource, Shape};
pub use formula::{theory_atoms, Atom, Formula, Model};
pub use term::{EvalError, Term, TermError};

use std::collections::BTreeSet;
use std::fmt;

/// A finite real constant.
///
/// Wraps an `f64` that is guaranteed finite, with negative zero normalized
/// to zero, so values have a total order and can live in sets and maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(f64);

impl Real {
    /// Wraps a float, returning `None` for NaN or infinities.
    pub fn new(value: f64) -> Option<Real> {
        if value.is_finite() {
            Some(Real(if value == 0.0 { 0.0 } else { value }))
        } else {
            None
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for Real {}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Finite by construction, so the partial order is total.
        self.0.partial_cmp(&other.0).expect("Real is finite")
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for Real {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Finite and sign-normalized, so bit equality matches value equality.
        state.write_u64(self.0.to_bits());
    }
}

/// A symbolic constant of an enumeration universe: a bare word such as
/// `Daily`, or a tuple of words such as `(Daily, High)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Word(String),
    Tuple(Vec<String>),
}

impl Symbol {
    pub fn word(name: &str) -> Symbol {
        Symbol::Word(name.to_string())
    }

    pub fn tuple(parts: &[&str]) -> Symbol {
        Symbol::Tuple(parts.iter().map(|p| p.to_string()).collect())
    }
}

/// The set of values a universe ranges over.
#[derive(Debug, Clone, PartialEq)]
pub enum Carrier {
    /// A closed real interval `[lo, hi]`.
    Real { lo: Real, hi: Real },
    /// The two truth values.
    Bool,
    /// A finite set of symbolic constants.
    Enum(Vec<Symbol>),
}

/// A declared type: a named carrier, plus an optional strict partial order
/// over an enumeration carrier given as `(greater, lesser)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    pub name: String,
    pub carrier: Carrier,
    pub order: Vec<(Symbol, Symbol)>,
}

impl Universe {
    /// A bounded real universe `[lo, hi]`.
    ///
    /// # Panics
    ///
    /// Panics if a bound is NaN or infinite.
    pub fn real(name: &str, lo: f64, hi: f64) -> Universe {
        Universe {
            name: name.to_string(),
            carrier: Carrier::Real {
                lo: Real::new(lo).expect("finite lower bound"),
                hi: Real::new(hi).expect("finite upper bound"),
            },
            order: Vec::new(),
        }
    }

    pub fn boolean(name: &str) -> Universe {
        Universe {
            name: name.to_string(),
            carrier: Carrier::Bool,
            order: Vec::new(),
        }
    }

    pub fn enumeration(name: &str, values: Vec<Symbol>) -> Universe {
        Universe {
            name: name.to_string(),
            carrier: Carrier::Enum(values),
            order: Vec::new(),
        }
    }

    /// Declares strict-order pairs `(greater, lesser)` over an enumeration.
    pub fn with_order(mut self, pairs: Vec<(Symbol, Symbol)>) -> Universe {
        self.order = pairs;
        self
    }

    /// Whether `value` is the right kind of value for this carrier. For
    /// enumerations this includes membership; for reals the interval bounds
    /// are deliberately not enforced, so constants like `120` can appear in
    /// formulas over narrower universes.
    pub fn admits(&self, value: &Value) -> bool {
        match (&self.carrier, value) {
            (Carrier::Real { .. }, Value::Real(_)) => true,
            (Carrier::Bool, Value::Bool(_)) => true,
            (Carrier::Enum(values), Value::Symbol(s)) => values.contains(s),
            _ => false,
        }
    }

    /// Whether the universe supports the order relations `>` `<` `>=` `<=`.
    pub fn is_ordered(&self) -> bool {
        match self.carrier {
            Carrier::Real { .. } => true,
            Carrier::Bool => false,
            Carrier::Enum(_) => !self.order.is_empty(),
        }
    }

    /// Strict comparison under the universe's order. For enumerations this
    /// is the transitive closure of the declared pairs; incomparable pairs
    /// compare as `false`.
    pub fn strictly_greater(&self, a: &Value, b: &Value) -> bool {
        match (&self.carrier, a, b) {
            (Carrier::Real { .. }, Value::Real(x), Value::Real(y)) => x > y,
            (Carrier::Enum(_), Value::Symbol(x), Value::Symbol(y)) => self.enum_greater(x, y),
            _ => false,
        }
    }

    fn enum_greater(&self, a: &Symbol, b: &Symbol) -> bool {
        // Depth-first search over the declared pairs; carriers are small.
        let mut stack = vec![a];
        let mut seen: BTreeSet<&Symbol> = BTreeSet::new();
        while let Some(x) = stack.pop() {
            for (gt, lt) in &self.order {
                if gt == x && seen.insert(lt) {
                    if lt == b {
                        return true;
                    }
                    stack.push(lt);
                }
            }
        }
        false
    }
}

/// A constant value: a real number, a truth value, or an enumeration symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Real(Real),
    Bool(bool),
    Symbol(Symbol),
}

impl Value {
    /// A real constant.
    ///
    /// # Panics
    ///
    /// Panics if `v` is NaN or infinite.
    pub fn real(v: f64) -> Value {
        Value::Real(Real::new(v).expect("finite real constant"))
    }

    pub fn word(name: &str) -> Value {
        Value::Symbol(Symbol::word(name))
    }

    pub fn tuple(parts: &[&str]) -> Value {
        Value::Symbol(Symbol::tuple(parts))
    }
}

/// A typed variable.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableDecl {
    pub name: String,
    pub universe: usize,
}

/// The interpretation of a declared function symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

impl FunctionKind {
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Add => "+",
            FunctionKind::Sub => "-",
            FunctionKind::Mul => "*",
            FunctionKind::Div => "/",
            FunctionKind::Neg => "neg",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            FunctionKind::Neg => 1,
            _ => 2,
        }
    }
}

/// A function symbol attached to a universe.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDecl {
    pub name: String,
    pub universe: usize,
    pub kind: FunctionKind,
}

/// The interpretation of a declared relation symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Equal,
    Greater,
    Less,
    GreaterEq,
    LessEq,
    /// A nullary proposition symbol whose truth comes from the model.
    Proposition,
}

impl RelationKind {
    pub fn arity(self) -> usize {
        match self {
            RelationKind::Proposition => 0,
            _ => 2,
        }
    }
}

/// A relation symbol attached to a universe.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationDecl {
    pub name: String,
    pub universe: usize,
    pub kind: RelationKind,
}

/// A well-formedness problem found by [`Language::validate`], naming the
/// offending element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageIssue {
    pub element: String,
    pub message: String,
}

impl fmt::Display for LanguageIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.element, self.message)
    }
}

/// A typed language: universes, variables, functions, and relations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Language {
    pub universes: Vec<Universe>,
    pub variables: Vec<VariableDecl>,
    pub functions: Vec<FunctionDecl>,
    pub relations: Vec<RelationDecl>,
}

impl Language {
    pub fn new() -> Language {
        Language::default()
    }

    /// Adds a universe and stocks it with the symbols its carrier supports:
    /// equality always; arithmetic and the numeric orders for reals; the
    /// order relations for enumerations with a declared order. Returns the
    /// universe's index.
    pub fn add_universe(&mut self, universe: Universe) -> usize {
        let index = self.universes.len();
        let ordered = universe.is_ordered();
        let real = matches!(universe.carrier, Carrier::Real { .. });
        self.universes.push(universe);

        self.relations.push(RelationDecl {
            name: "=".to_string(),
            universe: index,
            kind: RelationKind::Equal,
        });
        if ordered {
            for (name, kind) in [
                (">", RelationKind::Greater),
                ("<", RelationKind::Less),
                (">=", RelationKind::GreaterEq),
                ("<=", RelationKind::LessEq),
            ] {
                self.relations.push(RelationDecl {
                    name: name.to_string(),
                    universe: index,
                    kind,
                });
            }
        }
        if real {
            for kind in [
                FunctionKind::Add,
                FunctionKind::Sub,
                FunctionKind::Mul,
                FunctionKind::Div,
                FunctionKind::Neg,
            ] {
                self.functions.push(FunctionDecl {
                    name: kind.name().to_string(),
                    universe: index,
                    kind,
                });
            }
        }
        index
    }

    pub fn add_variable(&mut self, name: &str, universe: usize) {
        self.variables.push(VariableDecl {
            name: name.to_string(),
            universe,
        });
    }

    /// Adds a nullary proposition symbol to a universe.
    pub fn add_proposition(&mut self, name: &str, universe: usize) {
        self.relations.push(RelationDecl {
            name: name.to_string(),
            universe,
            kind: RelationKind::Proposition,
        });
    }

    /// A one-universe language whose only atoms are the named propositions.
    /// Returns the language together with the proposition atoms, in order.
    pub fn propositional(names: &[&str]) -> (Language, Vec<Atom>) {
        let mut lang = Language::new();
        let u = lang.add_universe(Universe::boolean("Prop"));
        let mut atoms = Vec::new();
        for name in names {
            lang.add_proposition(name, u);
            atoms.push(Atom {
                relation: name.to_string(),
                universe: u,
                args: Vec::new(),
            });
        }
        (lang, atoms)
    }

    pub fn universe_index(&self, name: &str) -> Option<usize> {
        self.universes.iter().position(|u| u.name == name)
    }

    pub fn variable(&self, name: &str) -> Option<&VariableDecl> {
        self.variables.iter().find(|v| v.name == name)
    }

    pub fn function(&self, universe: usize, name: &str) -> Option<&FunctionDecl> {
        self.functions
            .iter()
            .find(|f| f.universe == universe && f.name == name)
    }

    pub fn relation(&self, universe: usize, name: &str) -> Option<&RelationDecl> {
        self.relations
            .iter()
            .find(|r| r.universe == universe && r.name == name)
    }

    /// Checks the language for well-formedness and returns one issue per
    /// problem found. A valid language returns an empty list.
    pub fn validate(&self) -> Vec<LanguageIssue> {
        let mut issues = Vec::new();
        let issue = |element: String, message: String| LanguageIssue { element, message };

        let mut seen_universes = BTreeSet::new();
        for u in &self.universes {
            let element = format!("universe {}", u.name);
            if !seen_universes.insert(&u.name) {
                issues.push(issue(element.clone(), "duplicate universe name".into()));
            }
            match &u.carrier {
                Carrier::Real { lo, hi } => {
                    if lo > hi {
                        issues.push(issue(
                            element.clone(),
                            format!("empty interval [{}, {}]", lo.get(), hi.get()),
                        ));
                    }
                }
                Carrier::Bool => {}
                Carrier::Enum(values) => {
                    if values.is_empty() {
                        issues.push(issue(element.clone(), "empty enumeration".into()));
                    }
                    let mut seen = BTreeSet::new();
                    for v in values {
                        if !seen.insert(v) {
                            issues.push(issue(
                                element.clone(),
                                format!("duplicate value {}", Value::Symbol(v.clone())),
                            ));
                        }
                    }
                }
            }
            if !u.order.is_empty() {
                if let Carrier::Enum(values) = &u.carrier {
                    for (a, b) in &u.order {
                        for end in [a, b] {
                            if !values.contains(end) {
                                issues.push(issue(
                                    element.clone(),
                                    format!(
                                        "order mentions {} which is not a value of the type",
                                        Value::Symbol(end.clone())
                                    ),
                                ));
                            }
                        }
                        if a == b {
                            issues.push(issue(
                                element.clone(),
                                format!("reflexive order pair on {}", Value::Symbol(a.clone())),
                            ));
                        }
                    }
                    // A strict order must not close into a cycle.
                    for v in values {
                        let sv = Value::Symbol(v.clone());
                        if u.enum_greater(v, v) {
                            issues.push(issue(
                                element.clone(),
                                format!("declared order cycles through {sv}"),
                            ));
                        }
                    }
                } else {
                    issues.push(issue(
                        element.clone(),
                        "order declared on a non-enumeration type".into(),
                    ));
                }
            }
        }

        let mut seen_vars = BTreeSet::new();
        for v in &self.variables {
            let element = format!("variable {}", v.name);
            if !seen_vars.insert(&v.name) {
                issues.push(issue(element.clone(), "duplicate variable name".into()));
            }
            if v.universe >= self.universes.len() {
                issues.push(issue(
                    element,
                    format!("references missing universe #{}", v.universe),
                ));
            }
        }

        let mut seen_fns = BTreeSet::new();
        for f in &self.functions {
            let element = format!("function {}.{}", f.universe, f.name);
            if !seen_fns.insert((f.universe, &f.name)) {
                issues.push(issue(element.clone(), "duplicate function symbol".into()));
            }
            match self.universes.get(f.universe) {
                None => issues.push(issue(
                    element,
                    format!("references missing universe #{}", f.universe),
                )),
                Some(u) => {
                    if !matches!(u.carrier, Carrier::Real { .. }) {
                        issues.push(issue(
                            element,
                            format!("arithmetic on non-numeric universe {}", u.name),
                        ));
                    }
                }
            }
        }

        let mut seen_rels = BTreeSet::new();
        for r in &self.relations {
            let element = format!("relation {}.{}", r.universe, r.name);
            if !seen_rels.insert((r.universe, &r.name)) {
                issues.push(issue(element.clone(), "duplicate relation symbol".into()));
            }
            match self.universes.get(r.universe) {
                None => issues.push(issue(
                    element,
                    format!("references missing universe #{}", r.universe),
                )),
                Some(u) => {
                    let needs_order = matches!(
                        r.kind,
                        RelationKind::Greater
                            | RelationKind::Less
                            | RelationKind::GreaterEq
                            | RelationKind::LessEq
                    );
                    if needs_order && !u.is_ordered() {
                        issues.push(issue(
                            element,
                            format!("order relation on unordered universe {}", u.name),
                        ));
                    }
                }
            }
        }

        // Every universe must carry equality.
        for (i, u) in self.universes.iter().enumerate() {
            if self.relation(i, "=").is_none() {
                issues.push(issue(
                    format!("universe {}", u.name),
                    "missing equality relation".into(),
                ));
            }
        }

        issues
    }
}
