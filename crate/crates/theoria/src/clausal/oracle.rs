//! A truth-table oracle, independent of the clausal machinery.
//!
//! The oracle enumerates every assignment to the distinct atoms of the
//! input and evaluates formulas directly, so it shares no code path with
//! conversion or resolution. It is exponential and capped accordingly; its
//! role is to cross-check the engine on small inputs.

use std::collections::HashMap;

use crate::lang::{theory_atoms, Atom, Formula};

use super::EngineError;

/// The oracle refuses inputs with more distinct atoms than this.
pub const BRUTE_FORCE_ATOM_CAP: usize = 20;

fn assignments<'a>(
    formulas: &[&'a Formula],
) -> Result<(Vec<&'a Atom>, HashMap<&'a Atom, usize>), EngineError> {
    let atoms = theory_atoms(formulas.iter().copied());
    if atoms.len() > BRUTE_FORCE_ATOM_CAP {
        return Err(EngineError::TooManyAtoms(atoms.len()));
    }
    let index: HashMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    Ok((atoms, index))
}

/// Whether some assignment to the atoms satisfies every formula.
pub fn brute_force_satisfiable(theory: &[Formula]) -> Result<bool, EngineError> {
    let refs: Vec<&Formula> = theory.iter().collect();
    let (atoms, index) = assignments(&refs)?;
    for mask in 0u64..(1u64 << atoms.len()) {
        let assign = |a: &Atom| mask >> index[a] & 1 == 1;
        if theory.iter().all(|f| f.valuate(&assign)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether every assignment satisfying the theory also satisfies the query.
pub fn brute_force_entails(theory: &[Formula], query: &Formula) -> Result<bool, EngineError> {
    let refs: Vec<&Formula> = theory.iter().chain([query]).collect();
    let (atoms, index) = assignments(&refs)?;
    for mask in 0u64..(1u64 << atoms.len()) {
        let assign = |a: &Atom| mask >> index[a] & 1 == 1;
        if theory.iter().all(|f| f.valuate(&assign)) && !query.valuate(&assign) {
            return Ok(false);
        }
    }
    Ok(true)
}
