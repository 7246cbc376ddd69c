//! Atoms, formulas, models, and formula evaluation.

use std::collections::{BTreeMap, HashSet};

use super::term::{EvalError, Term};
use super::{Language, RelationKind, Value};

/// An atomic formula: a relation applied to terms. Nullary relations act as
/// opaque proposition symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub relation: String,
    pub universe: usize,
    pub args: Vec<Term>,
}

impl Atom {
    /// A binary relational atom `lhs rel rhs` in the given universe.
    pub fn binary(relation: &str, universe: usize, lhs: Term, rhs: Term) -> Atom {
        Atom {
            relation: relation.to_string(),
            universe,
            args: vec![lhs, rhs],
        }
    }
}

/// A formula over atoms and the usual connectives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    /// The distinct atoms of the formula, in first-occurrence order.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect_atoms(&mut out, &mut seen);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>, seen: &mut HashSet<&'a Atom>) {
        match self {
            Formula::Atom(a) => {
                if seen.insert(a) {
                    out.push(a);
                }
            }
            Formula::Not(x) => x.collect_atoms(out, seen),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_atoms(out, seen);
                b.collect_atoms(out, seen);
            }
        }
    }

    /// The truth value of the formula when each atom's truth is given by
    /// `assign`. Conjunction takes the minimum of its arguments' truth
    /// values, disjunction the maximum, `a -> b` is `max(1 - a, b)`, and
    /// `a <-> b` holds exactly when both sides agree.
    pub fn valuate(&self, assign: &impl Fn(&Atom) -> bool) -> bool {
        match self {
            Formula::Atom(a) => assign(a),
            Formula::Not(x) => !x.valuate(assign),
            Formula::And(a, b) => a.valuate(assign) & b.valuate(assign),
            Formula::Or(a, b) => a.valuate(assign) | b.valuate(assign),
            Formula::Implies(a, b) => !a.valuate(assign) | b.valuate(assign),
            Formula::Iff(a, b) => a.valuate(assign) == b.valuate(assign),
        }
    }
}

/// The distinct atoms of a theory, in first-occurrence order.
pub fn theory_atoms<'a>(theory: impl IntoIterator<Item = &'a Formula>) -> Vec<&'a Atom> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for formula in theory {
        formula.collect_atoms(&mut out, &mut seen);
    }
    out
}

/// An interpretation: values for variables and truth for proposition
/// symbols. Values are expected to lie in the declared carriers; evaluation
/// reports anything it cannot make sense of.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Model {
    pub values: BTreeMap<String, Value>,
    pub facts: BTreeMap<String, bool>,
}

impl Model {
    pub fn new() -> Model {
        Model::default()
    }

    pub fn with_value(mut self, name: &str, value: Value) -> Model {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with_fact(mut self, name: &str, truth: bool) -> Model {
        self.facts.insert(name.to_string(), truth);
        self
    }
}

impl Language {
    /// Evaluates a formula in a model. Equality is exact — no tolerance is
    /// applied to real comparisons — and order atoms over an enumeration use
    /// the declared partial order, with incomparable pairs evaluating to
    /// `false`.
    pub fn eval(&self, model: &Model, formula: &Formula) -> Result<bool, EvalError> {
        match formula {
            Formula::Atom(atom) => self.eval_atom(model, atom),
            Formula::Not(x) => Ok(!self.eval(model, x)?),
            Formula::And(a, b) => Ok(self.eval(model, a)? & self.eval(model, b)?),
            Formula::Or(a, b) => Ok(self.eval(model, a)? | self.eval(model, b)?),
            Formula::Implies(a, b) => Ok(!self.eval(model, a)? | self.eval(model, b)?),
            Formula::Iff(a, b) => Ok(self.eval(model, a)? == self.eval(model, b)?),
        }
    }

    fn eval_atom(&self, model: &Model, atom: &Atom) -> Result<bool, EvalError> {
        let decl = self.relation(atom.universe, &atom.relation).ok_or_else(|| {
            EvalError::Domain(format!("unknown relation `{}`", atom.relation))
        })?;
        if decl.kind.arity() != atom.args.len() {
            return Err(EvalError::Domain(format!(
                "relation `{}` expects {} arguments, got {}",
                atom.relation,
                decl.kind.arity(),
                atom.args.len()
            )));
        }
        if decl.kind == RelationKind::Proposition {
            return model
                .facts
                .get(&atom.relation)
                .copied()
                .ok_or_else(|| EvalError::Unbound(atom.relation.clone()));
        }
        let lhs = self.eval_term(model, &atom.args[0])?;
        let rhs = self.eval_term(model, &atom.args[1])?;
        let universe = &self.universes[atom.universe];
        let gt = |a: &Value, b: &Value| universe.strictly_greater(a, b);
        Ok(match decl.kind {
            RelationKind::Equal => lhs == rhs,
            RelationKind::Greater => gt(&lhs, &rhs),
            RelationKind::Less => gt(&rhs, &lhs),
            RelationKind::GreaterEq => lhs == rhs || gt(&lhs, &rhs),
            RelationKind::LessEq => lhs == rhs || gt(&rhs, &lhs),
            RelationKind::Proposition => unreachable!("handled above"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::team_language;
    use super::*;

    fn os_gt_5(lang: &Language) -> Formula {
        let u = lang.universe_index("Scale").unwrap();
        Formula::atom(Atom::binary(">", u, Term::var("OS"), Term::real(5.0)))
    }

    fn cl_gt_el(lang: &Language) -> Formula {
        let u = lang.universe_index("Collab").unwrap();
        Formula::atom(Atom::binary(
            ">",
            u,
            Term::var("CL"),
            Value::tuple(&["Eventual", "Low"]).into(),
        ))
    }

    fn si_is_true(lang: &Language) -> Formula {
        let u = lang.universe_index("Flag").unwrap();
        Formula::atom(Atom::binary(
            "=",
            u,
            Term::var("SI"),
            Value::Bool(true).into(),
        ))
    }

    fn busy_team() -> Model {
        Model::new()
            .with_value("OS", Value::real(7.0))
            .with_value("RD", Value::Bool(false))
            .with_value("SI", Value::Bool(false))
            .with_value("CM", Value::Bool(true))
            .with_value("CL", Value::tuple(&["Daily", "High"]))
    }

    #[test]
    fn atoms_are_collected_in_first_occurrence_order() {
        let lang = team_language();
        let f = os_gt_5(&lang)
            .implies(cl_gt_el(&lang))
            .and(os_gt_5(&lang).implies(si_is_true(&lang).not()));
        let atoms = f.atoms();
        assert_eq!(atoms.len(), 3);
        assert_eq!(atoms[0].args[0], Term::var("OS"));
        assert_eq!(atoms[1].args[0], Term::var("CL"));
        assert_eq!(atoms[2].args[0], Term::var("SI"));
    }

    #[test]
    fn theory_atoms_deduplicates_across_formulas() {
        let lang = team_language();
        let t = vec![
            os_gt_5(&lang).implies(cl_gt_el(&lang)),
            cl_gt_el(&lang).implies(si_is_true(&lang).not()),
        ];
        assert_eq!(theory_atoms(&t).len(), 3);
    }

    #[test]
    fn evaluation_follows_the_declared_order() {
        let lang = team_language();
        let model = busy_team();
        // (Daily, High) > (Eventual, Low) by transitivity.
        assert_eq!(lang.eval(&model, &cl_gt_el(&lang)), Ok(true));
        assert_eq!(lang.eval(&model, &os_gt_5(&lang)), Ok(true));
        assert_eq!(lang.eval(&model, &si_is_true(&lang)), Ok(false));
    }

    #[test]
    fn connectives_evaluate_pointwise() {
        let lang = team_language();
        let model = busy_team();
        let t = os_gt_5(&lang);
        let f = si_is_true(&lang);
        assert_eq!(lang.eval(&model, &t.clone().and(f.clone())), Ok(false));
        assert_eq!(lang.eval(&model, &t.clone().or(f.clone())), Ok(true));
        assert_eq!(lang.eval(&model, &t.clone().implies(f.clone())), Ok(false));
        assert_eq!(lang.eval(&model, &f.clone().implies(t.clone())), Ok(true));
        assert_eq!(lang.eval(&model, &t.clone().iff(f.clone())), Ok(false));
        assert_eq!(lang.eval(&model, &t.clone().iff(t.clone())), Ok(true));
        assert_eq!(lang.eval(&model, &f.clone().not()), Ok(true));
    }

    #[test]
    fn incomparable_modes_compare_false_both_ways() {
        let lang = team_language();
        let u = lang.universe_index("Collab").unwrap();
        let model = busy_team().with_value("CL", Value::tuple(&["Daily", "Low"]));
        let eh: Term = Value::tuple(&["Eventual", "High"]).into();
        let gt = Formula::atom(Atom::binary(">", u, Term::var("CL"), eh.clone()));
        let lt = Formula::atom(Atom::binary("<", u, Term::var("CL"), eh.clone()));
        let ge = Formula::atom(Atom::binary(">=", u, Term::var("CL"), eh));
        assert_eq!(lang.eval(&model, &gt), Ok(false));
        assert_eq!(lang.eval(&model, &lt), Ok(false));
        assert_eq!(lang.eval(&model, &ge), Ok(false));
    }

    #[test]
    fn equality_is_exact() {
        let mut lang = Language::new();
        let u = lang.add_universe(super::super::Universe::real("Wide", 0.0, 200.0));
        lang.add_variable("x", u);
        let close = Formula::atom(Atom::binary(
            "=",
            u,
            Term::var("x"),
            Term::real(100.0 + 1e-9),
        ));
        let exact = Formula::atom(Atom::binary("=", u, Term::var("x"), Term::real(100.0)));
        let model = Model::new().with_value("x", Value::real(100.0));
        assert_eq!(lang.eval(&model, &close), Ok(false));
        assert_eq!(lang.eval(&model, &exact), Ok(true));
    }

    #[test]
    fn propositions_read_their_truth_from_the_model() {
        let (lang, atoms) = Language::propositional(&["P", "Q"]);
        let p = Formula::atom(atoms[0].clone());
        let q = Formula::atom(atoms[1].clone());
        let model = Model::new().with_fact("P", true).with_fact("Q", false);
        assert_eq!(lang.eval(&model, &p.clone().implies(q.clone())), Ok(false));
        assert_eq!(
            lang.eval(&Model::new(), &p),
            Err(EvalError::Unbound("P".into()))
        );
        let _ = q;
    }

    #[test]
    fn valuate_matches_model_evaluation_on_opaque_atoms() {
        let (lang, atoms) = Language::propositional(&["P", "Q"]);
        let f = Formula::atom(atoms[0].clone())
            .implies(Formula::atom(atoms[1].clone()))
            .iff(Formula::atom(atoms[0].clone()).not().or(Formula::atom(atoms[1].clone())));
        for bits in 0..4u32 {
            let model = Model::new()
                .with_fact("P", bits & 1 != 0)
                .with_fact("Q", bits & 2 != 0);
            let by_model = lang.eval(&model, &f).unwrap();
            let by_assign = f.valuate(&|a: &Atom| model.facts[&a.relation]);
            assert_eq!(by_model, by_assign);
            assert!(by_model, "an instance of a tautology must hold");
        }
    }
}
