//! Terms, type checking, and term evaluation.

use thiserror::Error;

use super::{Carrier, FunctionKind, Language, Model, Real, Value};

/// A term: a variable, a constant, or a function application. Applications
/// carry the universe they were resolved against, which keeps type checking
/// deterministic when several universes share a function symbol like `+`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Variable(String),
    Constant(Value),
    Apply {
        function: String,
        universe: usize,
        args: Vec<Term>,
    },
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Variable(name.to_string())
    }

    pub fn real(v: f64) -> Term {
        Term::Constant(Value::real(v))
    }
}

impl From<Value> for Term {
    fn from(v: Value) -> Term {
        Term::Constant(v)
    }
}

/// A static (pre-evaluation) problem with a term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("function `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

/// A runtime problem while evaluating in a model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value bound for `{0}`")]
    Unbound(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Language {
    /// Returns the universe a well-formed term belongs to.
    pub fn typecheck(&self, term: &Term) -> Result<usize, TermError> {
        self.check_term(term, None)
    }

    fn check_term(&self, term: &Term, expected: Option<usize>) -> Result<usize, TermError> {
        let fit = |found: usize| -> Result<usize, TermError> {
            match expected {
                Some(want) if want != found => Err(TermError::TypeMismatch(format!(
                    "expected {}, found {}",
                    self.universe_name(want),
                    self.universe_name(found)
                ))),
                _ => Ok(found),
            }
        };
        match term {
            Term::Variable(name) => {
                let decl = self
                    .variable(name)
                    .ok_or_else(|| TermError::UnknownName(name.clone()))?;
                fit(decl.universe)
            }
            Term::Constant(value) => match expected {
                Some(want) => {
                    let u = self
                        .universes
                        .get(want)
                        .ok_or_else(|| TermError::TypeMismatch(format!("no universe #{want}")))?;
                    if u.admits(value) {
                        Ok(want)
                    } else {
                        Err(TermError::TypeMismatch(format!(
                            "constant {value} does not belong to {}",
                            u.name
                        )))
                    }
                }
                None => {
                    let homes: Vec<usize> = (0..self.universes.len())
                        .filter(|&i| self.universes[i].admits(value))
                        .collect();
                    match homes.as_slice() {
                        [] => Err(TermError::TypeMismatch(format!(
                            "constant {value} belongs to no declared universe"
                        ))),
                        [one] => Ok(*one),
                        many => Err(TermError::TypeMismatch(format!(
                            "constant {value} is ambiguous between {}",
                            many.iter()
                                .map(|&i| self.universe_name(i))
                                .collect::<Vec<_>>()
                                .join(" and ")
                        ))),
                    }
                }
            },
            Term::Apply {
                function,
                universe,
                args,
            } => {
                let decl = self
                    .function(*universe, function)
                    .ok_or_else(|| TermError::UnknownName(function.clone()))?;
                if decl.kind.arity() != args.len() {
                    return Err(TermError::ArityMismatch {
                        name: function.clone(),
                        expected: decl.kind.arity(),
                        got: args.len(),
                    });
                }
                for arg in args {
                    self.check_term(arg, Some(*universe))?;
                }
                fit(*universe)
            }
        }
    }

    fn universe_name(&self, index: usize) -> String {
        self.universes
            .get(index)
            .map(|u| u.name.clone())
            .unwrap_or_else(|| format!("#{index}"))
    }

    /// Evaluates a term in a model. Arithmetic results must stay finite and
    /// inside the universe's interval; violations are reported, not clamped.
    pub fn eval_term(&self, model: &Model, term: &Term) -> Result<Value, EvalError> {
        match term {
            Term::Variable(name) => model
                .values
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::Unbound(name.clone())),
            Term::Constant(value) => Ok(value.clone()),
            Term::Apply {
                function,
                universe,
                args,
            } => {
                let decl = self.function(*universe, function).ok_or_else(|| {
                    EvalError::Domain(format!("unknown function `{function}`"))
                })?;
                let mut nums = Vec::with_capacity(args.len());
                for arg in args {
                    match self.eval_term(model, arg)? {
                        Value::Real(r) => nums.push(r.get()),
                        other => {
                            return Err(EvalError::Domain(format!(
                                "arithmetic on non-numeric value {other}"
                            )))
                        }
                    }
                }
                let raw = match decl.kind {
                    FunctionKind::Add => nums[0] + nums[1],
                    FunctionKind::Sub => nums[0] - nums[1],
                    FunctionKind::Mul => nums[0] * nums[1],
                    FunctionKind::Div => nums[0] / nums[1],
                    FunctionKind::Neg => -nums[0],
                };
                if !raw.is_finite() {
                    return Err(EvalError::Domain(format!(
                        "`{function}` produced a non-finite result"
                    )));
                }
                let (lo, hi) = match &self.universes[*universe].carrier {
                    Carrier::Real { lo, hi } => (lo.get(), hi.get()),
                    _ => {
                        return Err(EvalError::Domain(format!(
                            "arithmetic in non-numeric universe {}",
                            self.universe_name(*universe)
                        )))
                    }
                };
                if raw < lo || raw > hi {
                    return Err(EvalError::Domain(format!(
                        "result {raw} leaves the interval [{lo}, {hi}] of {}",
                        self.universe_name(*universe)
                    )));
                }
                Ok(Value::Real(Real::new(raw).expect("finite checked above")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::team_language;
    use super::*;

    fn apply(lang: &Language, f: &str, args: Vec<Term>) -> Term {
        let u = lang.universe_index("Scale").unwrap();
        Term::Apply {
            function: f.to_string(),
            universe: u,
            args,
        }
    }

    #[test]
    fn typecheck_resolves_variables_and_constants() {
        let lang = team_language();
        assert_eq!(lang.typecheck(&Term::var("OS")), Ok(0));
        assert_eq!(lang.typecheck(&Term::var("CL")), Ok(2));
        // `True` belongs to the unique boolean universe.
        assert_eq!(lang.typecheck(&Term::Constant(Value::Bool(true))), Ok(1));
        assert_eq!(
            lang.typecheck(&Term::Constant(Value::tuple(&["Daily", "High"]))),
            Ok(2)
        );
    }

    #[test]
    fn typecheck_rejects_unknown_and_misplaced_names() {
        let lang = team_language();
        assert_eq!(
            lang.typecheck(&Term::var("XY")),
            Err(TermError::UnknownName("XY".into()))
        );
        // A tuple that is not a declared value of any enumeration.
        let stray = Term::Constant(Value::tuple(&["Weekly", "High"]));
        assert!(matches!(
            lang.typecheck(&stray),
            Err(TermError::TypeMismatch(_))
        ));
        // Booleans cannot feed arithmetic.
        let bad = apply(&lang, "+", vec![Term::var("OS"), Term::var("SI")]);
        assert!(matches!(
            lang.typecheck(&bad),
            Err(TermError::TypeMismatch(_))
        ));
    }

    #[test]
    fn typecheck_checks_arity() {
        let lang = team_language();
        let bad = apply(&lang, "+", vec![Term::var("OS")]);
        assert_eq!(
            lang.typecheck(&bad),
            Err(TermError::ArityMismatch {
                name: "+".into(),
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn eval_term_computes_arithmetic() {
        let lang = team_language();
        let model = Model::new().with_value("OS", Value::real(6.0));
        let t = apply(
            &lang,
            "-",
            vec![Term::real(10.0), Term::var("OS")],
        );
        assert_eq!(lang.eval_term(&model, &t), Ok(Value::real(4.0)));
    }

    #[test]
    fn eval_term_reports_unbound_variables() {
        let lang = team_language();
        let model = Model::new();
        assert_eq!(
            lang.eval_term(&model, &Term::var("OS")),
            Err(EvalError::Unbound("OS".into()))
        );
    }

    #[test]
    fn eval_term_reports_interval_escapes_and_division_by_zero() {
        let lang = team_language();
        let model = Model::new().with_value("OS", Value::real(6.0));
        // 6 * 6 = 36 leaves [0, 10]; the result is reported, not clamped.
        let big = apply(&lang, "*", vec![Term::var("OS"), Term::var("OS")]);
        assert!(matches!(
            lang.eval_term(&model, &big),
            Err(EvalError::Domain(_))
        ));
        let div = apply(&lang, "/", vec![Term::var("OS"), Term::real(0.0)]);
        assert!(matches!(
            lang.eval_term(&model, &div),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn constants_outside_the_interval_still_typecheck() {
        // Formulas may mention numerals beyond a universe's bounds (e.g. a
        // law `pro = 120 - 20 * com` over narrower measurement scales), so
        // bounds are checked only on computed results.
        let lang = team_language();
        assert_eq!(lang.typecheck(&Term::real(120.0)), Ok(0));
    }
}
