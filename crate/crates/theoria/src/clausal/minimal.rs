//! Minimal subtheories: drop every formula the rest already entails.
//!
//! The sweep is a single pass: formulas are tried in the given order, and a
//! formula is removed when the currently kept remainder entails it. The
//! result is equivalent to the input and irredundant, but which minimal
//! subtheory comes out depends on the order in which formulas are tried.

use crate::lang::Formula;

use super::{entails, DpConfig, EngineError};

/// Minimizes `theory`, trying formulas in input order. The result keeps the
/// surviving formulas in their original positions.
pub fn minimal_theory(theory: &[Formula], config: &DpConfig) -> Result<Vec<Formula>, EngineError> {
    let order: Vec<usize> = (0..theory.len()).collect();
    minimal_theory_with_order(theory, &order, config)
}

/// Minimizes `theory`, trying formulas in the order given by `order`, which
/// must be a permutation of `0..theory.len()`.
pub fn minimal_theory_with_order(
    theory: &[Formula],
    order: &[usize],
    config: &DpConfig,
) -> Result<Vec<Formula>, EngineError> {
    let mut seen = vec![false; theory.len()];
    if order.len() != theory.len() {
        return Err(EngineError::InvalidOrder);
    }
    for &i in order {
        if i >= theory.len() || seen[i] {
            return Err(EngineError::InvalidOrder);
        }
        seen[i] = true;
    }

    let mut kept = vec![true; theory.len()];
    for &i in order {
        kept[i] = false;
        let rest: Vec<Formula> = theory
            .iter()
            .enumerate()
            .filter(|&(j, _)| kept[j])
            .map(|(_, f)| f.clone())
            .collect();
        let (redundant, _) = entails(&rest, &theory[i], config)?;
        if !redundant {
            kept[i] = true;
        }
    }
    Ok(theory
        .iter()
        .enumerate()
        .filter(|&(j, _)| kept[j])
        .map(|(_, f)| f.clone())
        .collect())
}
