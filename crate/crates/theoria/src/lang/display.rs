//! Canonical text for values, terms, atoms, and formulas.
//!
//! The printed forms parse back to the same structures, so they double as
//! the canonical notation used in reports and exports: `!` always wraps a
//! parenthesized operand unless the atom is a bare proposition symbol, `->`
//! associates to the right, and parentheses appear exactly where precedence
//! requires them.

use std::fmt;

use super::formula::{Atom, Formula};
use super::term::Term;
use super::{Symbol, Value};

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Word(w) => f.write_str(w),
            Symbol::Tuple(parts) => write!(f, "({})", parts.join(", ")),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(r) => write!(f, "{}", r.get()),
            Value::Bool(true) => f.write_str("True"),
            Value::Bool(false) => f.write_str("False"),
            Value::Symbol(s) => write!(f, "{s}"),
        }
    }
}

// Term precedence levels: additive 1, multiplicative 2, atomic 3.
fn term_prec(term: &Term) -> u8 {
    match term {
        Term::Apply { function, .. } => match function.as_str() {
            "+" | "-" => 1,
            "*" | "/" => 2,
            _ => 3,
        },
        _ => 3,
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, term: &Term, required: u8) -> fmt::Result {
    let prec = term_prec(term);
    if prec < required {
        f.write_str("(")?;
        write_term(f, term, 0)?;
        return f.write_str(")");
    }
    match term {
        Term::Variable(name) => f.write_str(name),
        Term::Constant(value) => write!(f, "{value}"),
        Term::Apply { function, args, .. } => match function.as_str() {
            "+" | "-" | "*" | "/" => {
                let (left, right) = (prec, prec + 1);
                write_term(f, &args[0], left)?;
                write!(f, " {function} ")?;
                write_term(f, &args[1], right)
            }
            "neg" => {
                // `-5` would re-read as a negative literal, so a negated
                // constant keeps explicit parentheses.
                if matches!(args[0], Term::Constant(Value::Real(_))) {
                    f.write_str("-(")?;
                    write_term(f, &args[0], 0)?;
                    f.write_str(")")
                } else {
                    f.write_str("-")?;
                    write_term(f, &args[0], 3)
                }
            }
            other => {
                f.write_str(other)?;
                f.write_str("(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write_term(f, arg, 0)?;
                }
                f.write_str(")")
            }
        },
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.args.as_slice() {
            [] => f.write_str(&self.relation),
            [lhs, rhs] => {
                write_term(f, lhs, 1)?;
                write!(f, " {} ", self.relation)?;
                write_term(f, rhs, 1)
            }
            args => {
                f.write_str(&self.relation)?;
                f.write_str("(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write_term(f, arg, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

// Formula precedence levels: iff 1, implication 2, or 3, and 4, not 5,
// atom 6.
fn formula_prec(formula: &Formula) -> u8 {
    match formula {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) => 5,
        Formula::Atom(..) => 6,
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, formula: &Formula, required: u8) -> fmt::Result {
    let prec = formula_prec(formula);
    if prec < required {
        f.write_str("(")?;
        write_formula(f, formula, 0)?;
        return f.write_str(")");
    }
    match formula {
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::Not(x) => {
            // Bare proposition symbols read fine as `!P`; anything else gets
            // explicit parentheses: `!(SI = True)`.
            if let Formula::Atom(a) = x.as_ref() {
                if a.args.is_empty() {
                    return write!(f, "!{a}");
                }
            }
            f.write_str("!(")?;
            write_formula(f, x, 0)?;
            f.write_str(")")
        }
        Formula::And(a, b) => {
            write_formula(f, a, 4)?;
            f.write_str(" & ")?;
            write_formula(f, b, 5)
        }
        Formula::Or(a, b) => {
            write_formula(f, a, 3)?;
            f.write_str(" | ")?;
            write_formula(f, b, 4)
        }
        Formula::Implies(a, b) => {
            write_formula(f, a, 3)?;
            f.write_str(" -> ")?;
            write_formula(f, b, 2)
        }
        Formula::Iff(a, b) => {
            write_formula(f, a, 1)?;
            f.write_str(" <-> ")?;
            write_formula(f, b, 2)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}
