//! Clausal form and resolution-based reasoning.
//!
//! Formulas become sets of clauses over interned atoms; the engine treats
//! atoms as opaque, so two atoms are the same proposition exactly when they
//! are syntactically identical. On top of clauses sit saturation
//! ([`davis_putnam`]), entailment ([`entails`]), a truth-table oracle
//! ([`brute_force_entails`]), minimal subtheories, and Horn-specific
//! reasoning.

mod horn;
mod minimal;
mod oracle;
mod resolution;

pub use horn::{horn_class, horn_satisfiable, is_horn_theory, HornClass};
pub use minimal::{minimal_theory, minimal_theory_with_order};
pub use oracle::{brute_force_entails, brute_force_satisfiable, BRUTE_FORCE_ATOM_CAP};
pub use resolution::{
    davis_putnam, entails, resolve_step, saturate, DpConfig, ResolutionStep, Saturation, Verdict,
};

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::lang::{Atom, Formula};

/// Errors from the clausal engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("clause limit exceeded: {clauses} clauses (cap {cap})")]
    ResourceLimit { clauses: usize, cap: usize },
    #[error("too many atoms for the truth-table oracle: {0} (cap {cap})", cap = BRUTE_FORCE_ATOM_CAP)]
    TooManyAtoms(usize),
    #[error("pivot does not occur positively in the left clause and negatively in the right")]
    PivotAbsent,
    #[error("not a Horn theory: clause {clause} has {positives} positive literals")]
    NotHorn { clause: String, positives: usize },
    #[error("order is not a permutation of the theory's indices")]
    InvalidOrder,
}

/// An interned atom, used as the engine's proposition identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An interning table mapping atoms to dense ids in first-seen order.
#[derive(Debug, Clone, Default)]
pub struct AtomTable {
    atoms: Vec<Atom>,
    ids: HashMap<Atom, AtomId>,
}

impl AtomTable {
    pub fn new() -> AtomTable {
        AtomTable::default()
    }

    /// Returns the atom's id, interning it if it is new.
    pub fn intern(&mut self, atom: &Atom) -> AtomId {
        if let Some(&id) = self.ids.get(atom) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(atom.clone());
        self.ids.insert(atom.clone(), id);
        id
    }

    pub fn id_of(&self, atom: &Atom) -> Option<AtomId> {
        self.ids.get(atom).copied()
    }

    /// The id at a table index, if the index is in range.
    pub fn id_at(&self, index: usize) -> Option<AtomId> {
        (index < self.atoms.len()).then(|| AtomId(index as u32))
    }

    pub fn resolve(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, &Atom)> {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (AtomId(i as u32), a))
    }
}

/// A literal: an atom with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedAtom {
    pub atom: AtomId,
    pub positive: bool,
}

impl SignedAtom {
    pub fn positive(atom: AtomId) -> SignedAtom {
        SignedAtom {
            atom,
            positive: true,
        }
    }

    pub fn negative(atom: AtomId) -> SignedAtom {
        SignedAtom {
            atom,
            positive: false,
        }
    }

    pub fn negated(self) -> SignedAtom {
        SignedAtom {
            atom: self.atom,
            positive: !self.positive,
        }
    }

    /// Renders the literal against a table, e.g. `OS > 5` or `!(SI = True)`.
    pub fn display(&self, table: &AtomTable) -> String {
        let atom = table.resolve(self.atom);
        if self.positive {
            atom.to_string()
        } else if atom.args.is_empty() {
            format!("!{atom}")
        } else {
            format!("!({atom})")
        }
    }
}

/// A clause: a disjunction of literals, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    literals: BTreeSet<SignedAtom>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = SignedAtom>) -> Clause {
        Clause {
            literals: literals.into_iter().collect(),
        }
    }

    /// The empty clause — the canonical contradiction.
    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn contains(&self, literal: SignedAtom) -> bool {
        self.literals.contains(&literal)
    }

    pub fn literals(&self) -> impl Iterator<Item = SignedAtom> + '_ {
        self.literals.iter().copied()
    }

    /// A clause mentioning some atom with both signs is a tautology.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| l.positive && self.literals.contains(&l.negated()))
    }

    /// Whether this clause's literals are a subset of `other`'s, making
    /// `other` logically redundant.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.literals.is_subset(&other.literals)
    }

    /// Renders the clause against a table, e.g. `{!(OS > 5), SI = True}`.
    pub fn display(&self, table: &AtomTable) -> String {
        let inner: Vec<String> = self.literals.iter().map(|l| l.display(table)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

impl FromIterator<SignedAtom> for Clause {
    fn from_iter<I: IntoIterator<Item = SignedAtom>>(iter: I) -> Clause {
        Clause::new(iter)
    }
}

/// A theory in clausal form: the atom table plus the clauses of each input
/// formula, deduplicated across the theory but otherwise kept faithful
/// (tautological clauses included).
#[derive(Debug, Clone, Default)]
pub struct ClausalTheory {
    pub table: AtomTable,
    clauses: Vec<Clause>,
    /// Index of the input formula each clause came from.
    origins: Vec<usize>,
}

impl ClausalTheory {
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn origin(&self, clause_index: usize) -> usize {
        self.origins[clause_index]
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

// Negation-normal form over signed atoms, the midpoint of conversion.
enum Nnf {
    Lit(SignedAtom),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(formula: &Formula, positive: bool, table: &mut AtomTable) -> Nnf {
    match formula {
        Formula::Atom(a) => {
            let id = table.intern(a);
            Nnf::Lit(SignedAtom {
                atom: id,
                positive,
            })
        }
        Formula::Not(x) => nnf(x, !positive, table),
        Formula::And(a, b) => {
            let parts = vec![nnf(a, positive, table), nnf(b, positive, table)];
            if positive {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
        Formula::Or(a, b) => {
            let parts = vec![nnf(a, positive, table), nnf(b, positive, table)];
            if positive {
                Nnf::Or(parts)
            } else {
                Nnf::And(parts)
            }
        }
        Formula::Implies(a, b) => {
            if positive {
                Nnf::Or(vec![nnf(a, false, table), nnf(b, true, table)])
            } else {
                Nnf::And(vec![nnf(a, true, table), nnf(b, false, table)])
            }
        }
        Formula::Iff(a, b) => {
            if positive {
                Nnf::And(vec![
                    Nnf::Or(vec![nnf(a, false, table), nnf(b, true, table)]),
                    Nnf::Or(vec![nnf(b, false, table), nnf(a, true, table)]),
                ])
            } else {
                Nnf::Or(vec![
                    Nnf::And(vec![nnf(a, true, table), nnf(b, false, table)]),
                    Nnf::And(vec![nnf(b, true, table), nnf(a, false, table)]),
                ])
            }
        }
    }
}

fn distribute(tree: &Nnf) -> Vec<BTreeSet<SignedAtom>> {
    match tree {
        Nnf::Lit(l) => vec![BTreeSet::from([*l])],
        Nnf::And(parts) => parts.iter().flat_map(distribute).collect(),
        Nnf::Or(parts) => {
            let mut acc: Vec<BTreeSet<SignedAtom>> = vec![BTreeSet::new()];
            for part in parts {
                let rhs = distribute(part);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for left in &acc {
                    for right in &rhs {
                        let mut clause = left.clone();
                        clause.extend(right.iter().copied());
                        next.push(clause);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

/// Converts a theory to clausal (conjunctive normal) form. Atoms are
/// interned in first-occurrence order; duplicate clauses are dropped, the
/// first occurrence deciding the clause's recorded origin.
pub fn to_clausal(theory: &[Formula]) -> ClausalTheory {
    let mut table = AtomTable::new();
    let mut clauses = Vec::new();
    let mut origins = Vec::new();
    let mut seen = BTreeSet::new();
    for (index, formula) in theory.iter().enumerate() {
        let tree = nnf(formula, true, &mut table);
        for literals in distribute(&tree) {
            let clause = Clause { literals };
            if seen.insert(clause.clone()) {
                clauses.push(clause);
                origins.push(index);
            }
        }
    }
    ClausalTheory {
        table,
        clauses,
        origins,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Language;

    fn props(names: &[&str]) -> Vec<Formula> {
        let (_, atoms) = Language::propositional(names);
        atoms.into_iter().map(Formula::atom).collect()
    }

    #[test]
    fn implication_becomes_a_single_clause() {
        let mut ps = props(&["P", "Q", "R"]);
        let r = ps.pop().unwrap();
        let q = ps.pop().unwrap();
        let p = ps.pop().unwrap();
        // P -> (Q | R) has exactly one clause: {!P, Q, R}.
        let ct = to_clausal(&[p.implies(q.or(r))]);
        assert_eq!(ct.len(), 1);
        assert_eq!(ct.clauses()[0].display(&ct.table), "{!P, Q, R}");
    }

    #[test]
    fn implication_into_a_conjunction_splits() {
        let mut ps = props(&["P", "Q", "R"]);
        let r = ps.pop().unwrap();
        let q = ps.pop().unwrap();
        let p = ps.pop().unwrap();
        // P -> (Q & R) distributes into {!P, Q} and {!P, R}.
        let ct = to_clausal(&[p.implies(q.and(r))]);
        let shown: Vec<String> = ct.clauses().iter().map(|c| c.display(&ct.table)).collect();
        assert_eq!(shown, vec!["{!P, Q}", "{!P, R}"]);
    }

    #[test]
    fn iff_yields_both_directions() {
        let mut ps = props(&["P", "Q"]);
        let q = ps.pop().unwrap();
        let p = ps.pop().unwrap();
        let ct = to_clausal(&[p.iff(q)]);
        let shown: Vec<String> = ct.clauses().iter().map(|c| c.display(&ct.table)).collect();
        assert_eq!(shown, vec!["{!P, Q}", "{P, !Q}"]);
    }

    #[test]
    fn duplicates_collapse_but_tautologies_survive() {
        let mut ps = props(&["P", "Q"]);
        let q = ps.pop().unwrap();
        let p = ps.pop().unwrap();
        let theory = vec![
            p.clone().implies(q.clone()),
            p.clone().implies(q.clone()),
            p.clone().or(p.clone().not()),
        ];
        let ct = to_clausal(&theory);
        assert_eq!(ct.len(), 2);
        assert_eq!(ct.origin(0), 0);
        assert!(ct.clauses()[1].is_tautology());
        let _ = q;
    }

    #[test]
    fn negation_normal_form_handles_nested_negations() {
        let mut ps = props(&["P", "Q"]);
        let q = ps.pop().unwrap();
        let p = ps.pop().unwrap();
        // !(P -> Q) = P & !Q.
        let ct = to_clausal(&[p.implies(q).not()]);
        let shown: Vec<String> = ct.clauses().iter().map(|c| c.display(&ct.table)).collect();
        assert_eq!(shown, vec!["{P}", "{!Q}"]);
    }

    #[test]
    fn clause_order_and_display_are_stable() {
        let mut ps = props(&["P", "Q"]);
        let q = ps.pop().unwrap();
        let p = ps.pop().unwrap();
        let ct = to_clausal(&[q.clone().or(p.clone()), p.or(q)]);
        // Literals sort by atom id (first occurrence), so both formulas
        // produce the same clause and the second is dropped.
        assert_eq!(ct.len(), 1);
        assert_eq!(ct.clauses()[0].display(&ct.table), "{Q, P}");
    }

    #[test]
    fn subsumption_is_subset_inclusion() {
        let a = AtomId(0);
        let b = AtomId(1);
        let small = Clause::new([SignedAtom::positive(a)]);
        let large = Clause::new([SignedAtom::positive(a), SignedAtom::negative(b)]);
        assert!(small.subsumes(&large));
        assert!(!large.subsumes(&small));
        assert!(Clause::empty().subsumes(&small));
    }
}
