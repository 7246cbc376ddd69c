//! Resolution saturation in the Davis–Putnam style.
//!
//! Saturation repeatedly adds resolvents to the clause set until nothing
//! new appears or the empty clause is derived. The empty clause means the
//! set is unsatisfiable; a saturated set without it is satisfiable.

use std::collections::HashMap;

use serde_json::{json, Value as Json};

use crate::lang::Formula;

use super::{to_clausal, AtomId, AtomTable, ClausalTheory, Clause, EngineError, SignedAtom};

/// Tuning for saturation.
#[derive(Debug, Clone)]
pub struct DpConfig {
    /// Hard cap on the total number of clauses ever recorded; exceeding it
    /// aborts with [`EngineError::ResourceLimit`].
    pub max_clauses: usize,
    /// Discard clauses that are supersets of an already-known clause. This
    /// prunes the search without changing any verdict.
    pub use_subsumption: bool,
}

impl Default for DpConfig {
    fn default() -> DpConfig {
        DpConfig {
            max_clauses: 100_000,
            use_subsumption: true,
        }
    }
}

/// The outcome of saturation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfiable,
    Unsatisfiable,
}

/// One resolution inference: `clauses[left]` and `clauses[right]` resolved
/// on `pivot` (positive in the left parent) produced `clauses[resolvent]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolutionStep {
    pub left: usize,
    pub right: usize,
    pub pivot: AtomId,
    pub resolvent: usize,
}

/// A finished saturation: the verdict plus the full derivation.
///
/// `clauses[..initial_len]` are the (deduplicated, non-tautological) input
/// clauses; every later clause is produced by the correspondingly indexed
/// entry of `steps`.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub verdict: Verdict,
    pub table: AtomTable,
    pub clauses: Vec<Clause>,
    pub initial_len: usize,
    pub steps: Vec<ResolutionStep>,
}

impl Saturation {
    pub fn unsatisfiable(&self) -> bool {
        self.verdict == Verdict::Unsatisfiable
    }

    /// Human-readable derivation, one line per clause.
    pub fn trace_lines(&self) -> Vec<String> {
        let mut lines = Vec::with_capacity(self.clauses.len());
        for (i, clause) in self.clauses.iter().enumerate() {
            let shown = clause.display(&self.table);
            if i < self.initial_len {
                lines.push(format!("[{i}] {shown}   given"));
            } else {
                let step = &self.steps[i - self.initial_len];
                lines.push(format!(
                    "[{i}] {shown}   from [{}] x [{}] on {}",
                    step.left,
                    step.right,
                    self.table.resolve(step.pivot)
                ));
            }
        }
        lines
    }

    /// The derivation as JSON: verdict, clauses (as literal lists), and one
    /// step record per derived clause.
    pub fn to_json(&self) -> Json {
        let clauses: Vec<Json> = self
            .clauses
            .iter()
            .map(|c| {
                Json::Array(
                    c.literals()
                        .map(|l| Json::String(l.display(&self.table)))
                        .collect(),
                )
            })
            .collect();
        let steps: Vec<Json> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "left": s.left,
                    "right": s.right,
                    "pivot": self.table.resolve(s.pivot).to_string(),
                    "resolvent": s.resolvent,
                })
            })
            .collect();
        json!({
            "verdict": match self.verdict {
                Verdict::Satisfiable => "satisfiable",
                Verdict::Unsatisfiable => "unsatisfiable",
            },
            "initial": self.initial_len,
            "clauses": clauses,
            "steps": steps,
        })
    }
}

/// Resolves two clauses on `pivot`, which must occur positively in `left`
/// and negatively in `right`. The resolvent is the union of the remaining
/// literals.
pub fn resolve_step(left: &Clause, right: &Clause, pivot: AtomId) -> Result<Clause, EngineError> {
    let pos = SignedAtom::positive(pivot);
    let neg = SignedAtom::negative(pivot);
    if !left.contains(pos) || !right.contains(neg) {
        return Err(EngineError::PivotAbsent);
    }
    Ok(left
        .literals()
        .filter(|&l| l != pos)
        .chain(right.literals().filter(|&l| l != neg))
        .collect())
}

/// Saturates a clausal theory under resolution.
///
/// Tautological input clauses are skipped (they resolve to nothing useful);
/// duplicate clauses — including re-derivations of known clauses — are
/// never recorded twice, which is what guarantees termination. The verdict
/// does not depend on clause order or on the subsumption switch.
pub fn saturate(theory: &ClausalTheory, config: &DpConfig) -> Result<Saturation, EngineError> {
    let mut clauses: Vec<Clause> = Vec::new();
    let mut known: HashMap<Clause, usize> = HashMap::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut steps: Vec<ResolutionStep> = Vec::new();

    for clause in theory.clauses() {
        if clause.is_tautology() || known.contains_key(clause) {
            continue;
        }
        known.insert(clause.clone(), clauses.len());
        clauses.push(clause.clone());
        alive.push(true);
    }
    let initial_len = clauses.len();

    let finish = |verdict, clauses: Vec<Clause>, steps| Saturation {
        verdict,
        table: theory.table.clone(),
        clauses,
        initial_len,
        steps,
    };

    if clauses.iter().any(|c| c.is_empty()) {
        return Ok(finish(Verdict::Unsatisfiable, clauses, steps));
    }

    // Given-clause loop: every pair of retained clauses is considered
    // exactly once.
    let mut queue: std::collections::VecDeque<usize> = (0..clauses.len()).collect();
    let mut processed: Vec<usize> = Vec::new();
    while let Some(given) = queue.pop_front() {
        if !alive[given] {
            continue;
        }
        processed.retain(|&p| alive[p]);
        let mut fresh: Vec<(usize, usize, AtomId)> = Vec::new();
        for &other in processed.iter().chain([given].iter()) {
            for (left, right) in [(given, other), (other, given)] {
                for literal in clauses[left].literals().filter(|l| l.positive) {
                    if clauses[right].contains(literal.negated()) {
                        fresh.push((left, right, literal.atom));
                    }
                }
            }
        }
        processed.push(given);

        for (left, right, pivot) in fresh {
            let resolvent = resolve_step(&clauses[left], &clauses[right], pivot)
                .expect("pivot chosen from the parents");
            if resolvent.is_tautology() || known.contains_key(&resolvent) {
                continue;
            }
            if config.use_subsumption
                && clauses
                    .iter()
                    .zip(alive.iter())
                    .any(|(c, &live)| live && c.subsumes(&resolvent))
            {
                continue;
            }
            let id = clauses.len();
            known.insert(resolvent.clone(), id);
            clauses.push(resolvent);
            alive.push(true);
            steps.push(ResolutionStep {
                left,
                right,
                pivot,
                resolvent: id,
            });
            if clauses[id].is_empty() {
                return Ok(finish(Verdict::Unsatisfiable, clauses, steps));
            }
            if clauses.len() > config.max_clauses {
                return Err(EngineError::ResourceLimit {
                    clauses: clauses.len(),
                    cap: config.max_clauses,
                });
            }
            if config.use_subsumption {
                for i in 0..id {
                    if alive[i] && clauses[id].subsumes(&clauses[i]) && clauses[id] != clauses[i] {
                        alive[i] = false;
                    }
                }
            }
            queue.push_back(id);
        }
    }

    Ok(finish(Verdict::Satisfiable, clauses, steps))
}

/// Converts a theory to clauses and saturates it.
pub fn davis_putnam(theory: &[Formula], config: &DpConfig) -> Result<Saturation, EngineError> {
    saturate(&to_clausal(theory), config)
}

/// Decides whether `theory` entails `query` by refutation: the entailment
/// holds exactly when `theory + !query` saturates to the empty clause. The
/// returned saturation is the derivation over the extended clause set.
pub fn entails(
    theory: &[Formula],
    query: &Formula,
    config: &DpConfig,
) -> Result<(bool, Saturation), EngineError> {
    let mut extended: Vec<Formula> = theory.to_vec();
    extended.push(query.clone().not());
    let saturation = davis_putnam(&extended, config)?;
    Ok((saturation.unsatisfiable(), saturation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Language;

    fn props(names: &[&str]) -> Vec<Formula> {
        let (_, atoms) = Language::propositional(names);
        atoms.into_iter().map(Formula::atom).collect()
    }

    fn find_atom(table: &AtomTable, name: &str) -> AtomId {
        table
            .iter()
            .find(|(_, a)| a.relation == name)
            .map(|(id, _)| id)
            .expect("atom present")
    }

    #[test]
    fn resolve_step_removes_exactly_the_pivot() {
        let (_, atoms) = Language::propositional(&["P", "Q", "R"]);
        let mut table = AtomTable::new();
        let ids: Vec<AtomId> = atoms.iter().map(|a| table.intern(a)).collect();
        let left = Clause::new([SignedAtom::negative(ids[0]), SignedAtom::positive(ids[1])]);
        let right = Clause::new([SignedAtom::negative(ids[1]), SignedAtom::negative(ids[2])]);
        let resolvent = resolve_step(&left, &right, ids[1]).unwrap();
        assert_eq!(resolvent.display(&table), "{!P, !R}");
        assert_eq!(
            resolve_step(&left, &right, ids[2]),
            Err(EngineError::PivotAbsent)
        );
        // The pivot must be positive in the left parent specifically.
        assert_eq!(
            resolve_step(&right, &left, ids[1]),
            Err(EngineError::PivotAbsent)
        );
    }

    #[test]
    fn resolving_unit_clauses_yields_the_empty_clause() {
        let (_, atoms) = Language::propositional(&["P"]);
        let mut table = AtomTable::new();
        let p = table.intern(&atoms[0]);
        let pos = Clause::new([SignedAtom::positive(p)]);
        let neg = Clause::new([SignedAtom::negative(p)]);
        assert_eq!(resolve_step(&pos, &neg, p).unwrap(), Clause::empty());
    }

    #[test]
    fn a_contradictory_theory_saturates_to_unsat() {
        let ps = props(&["P", "Q"]);
        let theory = vec![
            ps[0].clone().implies(ps[1].clone()),
            ps[0].clone(),
            ps[1].clone().not(),
        ];
        let sat = davis_putnam(&theory, &DpConfig::default()).unwrap();
        assert_eq!(sat.verdict, Verdict::Unsatisfiable);
        assert!(sat.clauses.last().unwrap().is_empty());
        // Every derived clause is justified by a recorded step.
        assert_eq!(sat.clauses.len() - sat.initial_len, sat.steps.len());
    }

    #[test]
    fn a_satisfiable_theory_saturates_without_the_empty_clause() {
        let ps = props(&["P", "Q", "R"]);
        let theory = vec![
            ps[0].clone().implies(ps[1].clone()),
            ps[1].clone().implies(ps[2].clone()),
        ];
        let sat = davis_putnam(&theory, &DpConfig::default()).unwrap();
        assert_eq!(sat.verdict, Verdict::Satisfiable);
        assert!(sat.clauses.iter().all(|c| !c.is_empty()));
    }

    #[test]
    fn verdicts_ignore_clause_order_and_subsumption() {
        let ps = props(&["P", "Q", "R"]);
        let mut theory = vec![
            ps[0].clone().or(ps[1].clone()),
            ps[0].clone().not().or(ps[2].clone()),
            ps[1].clone().not().or(ps[2].clone()),
            ps[2].clone().not(),
        ];
        let forward = davis_putnam(&theory, &DpConfig::default()).unwrap();
        theory.reverse();
        let backward = davis_putnam(&theory, &DpConfig::default()).unwrap();
        let plain = davis_putnam(
            &theory,
            &DpConfig {
                use_subsumption: false,
                ..DpConfig::default()
            },
        )
        .unwrap();
        assert_eq!(forward.verdict, Verdict::Unsatisfiable);
        assert_eq!(backward.verdict, Verdict::Unsatisfiable);
        assert_eq!(plain.verdict, Verdict::Unsatisfiable);
    }

    #[test]
    fn entails_confirms_a_derived_implication() {
        // From P -> Q and R -> !Q it follows that P -> !R.
        let ps = props(&["P", "Q", "R"]);
        let theory = vec![
            ps[0].clone().implies(ps[1].clone()),
            ps[2].clone().implies(ps[1].clone().not()),
        ];
        let query = ps[0].clone().implies(ps[2].clone().not());
        let (yes, sat) = entails(&theory, &query, &DpConfig::default()).unwrap();
        assert!(yes);
        assert!(sat.unsatisfiable());
        let non_query = ps[2].clone().implies(ps[0].clone());
        let (no, _) = entails(&theory, &non_query, &DpConfig::default()).unwrap();
        assert!(!no);
    }

    #[test]
    fn the_clause_cap_aborts_runaway_saturation() {
        let ps = props(&["P", "Q", "R", "S"]);
        let theory = vec![
            ps[0].clone().implies(ps[1].clone()),
            ps[1].clone().implies(ps[2].clone()),
            ps[2].clone().implies(ps[3].clone()),
            ps[3].clone().implies(ps[0].clone()),
        ];
        let tiny = DpConfig {
            max_clauses: 4,
            use_subsumption: false,
        };
        assert!(matches!(
            davis_putnam(&theory, &tiny),
            Err(EngineError::ResourceLimit { cap: 4, .. })
        ));
    }

    #[test]
    fn traces_replay_the_derivation() {
        let ps = props(&["P", "Q"]);
        let theory = vec![ps[0].clone(), ps[0].clone().implies(ps[1].clone())];
        let (yes, sat) = entails(&theory, &ps[1].clone(), &DpConfig::default()).unwrap();
        assert!(yes);
        for step in &sat.steps {
            let replayed =
                resolve_step(&sat.clauses[step.left], &sat.clauses[step.right], step.pivot)
                    .unwrap();
            assert_eq!(replayed, sat.clauses[step.resolvent]);
        }
        let lines = sat.trace_lines();
        assert_eq!(lines.len(), sat.clauses.len());
        assert!(lines[0].ends_with("given"));
        let q = find_atom(&sat.table, "Q");
        assert!(sat
            .steps
            .iter()
            .any(|s| s.pivot == q || sat.clauses[s.resolvent].is_empty()));
        // Fixed input, fixed trace: the JSON form is byte-stable.
        assert_eq!(sat.to_json().to_string(), sat.to_json().to_string());
    }
}
