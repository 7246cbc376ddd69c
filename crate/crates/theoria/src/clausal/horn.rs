//! Horn clauses and satisfiability by forward chaining.
//!
//! A Horn clause has at most one positive literal: *definite* clauses have
//! exactly one (rules and facts), *goal* clauses have none. Satisfiability
//! of a Horn set needs no search — forward chaining from the facts derives
//! every forced atom, and the set is unsatisfiable exactly when a goal
//! clause (or the empty clause) has its whole body forced.

use std::collections::BTreeSet;

use super::{AtomId, ClausalTheory, Clause, EngineError, Verdict};

/// The two kinds of Horn clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HornClass {
    /// Exactly one positive literal: a fact or a rule.
    Definite,
    /// No positive literal, the empty clause included.
    Goal,
}

/// Classifies a clause, returning `None` when it is not Horn.
pub fn horn_class(clause: &Clause) -> Option<HornClass> {
    match clause.literals().filter(|l| l.positive).count() {
        0 => Some(HornClass::Goal),
        1 => Some(HornClass::Definite),
        _ => None,
    }
}

/// Whether every clause of the theory is Horn.
pub fn is_horn_theory(theory: &ClausalTheory) -> bool {
    theory.clauses().iter().all(|c| horn_class(c).is_some())
}

/// Decides satisfiability of a Horn theory by forward chaining. Returns
/// [`EngineError::NotHorn`] when some clause has two or more positive
/// literals.
pub fn horn_satisfiable(theory: &ClausalTheory) -> Result<Verdict, EngineError> {
    let mut rules: Vec<(Vec<AtomId>, AtomId)> = Vec::new();
    let mut goals: Vec<Vec<AtomId>> = Vec::new();
    for clause in theory.clauses() {
        if clause.is_tautology() {
            continue;
        }
        let body: Vec<AtomId> = clause
            .literals()
            .filter(|l| !l.positive)
            .map(|l| l.atom)
            .collect();
        let heads: Vec<AtomId> = clause
            .literals()
            .filter(|l| l.positive)
            .map(|l| l.atom)
            .collect();
        match heads.as_slice() {
            [] => goals.push(body),
            [head] => rules.push((body, *head)),
            _ => {
                return Err(EngineError::NotHorn {
                    clause: clause.display(&theory.table),
                    positives: heads.len(),
                })
            }
        }
    }

    // Forward chaining to the least fixpoint of the definite rules.
    let mut forced: BTreeSet<AtomId> = BTreeSet::new();
    loop {
        let before = forced.len();
        for (body, head) in &rules {
            if body.iter().all(|a| forced.contains(a)) {
                forced.insert(*head);
            }
        }
        if forced.len() == before {
            break;
        }
    }

    let violated = goals
        .iter()
        .any(|body| body.iter().all(|a| forced.contains(a)));
    Ok(if violated {
        Verdict::Unsatisfiable
    } else {
        Verdict::Satisfiable
    })
}
