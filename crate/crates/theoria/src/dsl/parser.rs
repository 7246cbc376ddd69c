//! Recursive-descent parser for theory files.
//!
//! The parser builds the [`Language`] as declarations arrive, so every
//! name must be declared before its first use. Errors never abort the
//! whole parse: each bad declaration is reported and skipped, and parsing
//! resumes at the next `type`/`var`/`construct`/`prop` keyword.

use std::collections::BTreeSet;

use super::lexer::{lex, Tok, Token};
use super::{Diagnostic, Hypothesis, Severity, TheoryDocument};
use crate::lang::{
    Atom, ConstructRecord, Dimension, DimensionSource, Formula, Language, RelationKind, Shape,
    Symbol, Term, Universe, Value,
};

/// Hard cap on formula/term nesting; beyond it the parser reports one
/// diagnostic instead of overflowing the stack.
const MAX_DEPTH: usize = 200;

/// Placeholder universe index inside freshly parsed applications, replaced
/// once the atom's universe is known.
const UNRESOLVED: usize = usize::MAX;

/// Parses a full theory file. Returns the document, or every diagnostic
/// found (sorted by source position) when anything is wrong.
pub fn parse_theory(text: &str) -> Result<TheoryDocument, Vec<Diagnostic>> {
    let (tokens, mut diags) = lex(text);
    let mut parser = Parser::new(tokens, Language::new());
    let doc = parser.document();
    diags.extend(parser.diags);
    diags.sort_by_key(|d| (d.line, d.col));
    if diags.iter().any(|d| d.severity == Severity::Error) {
        Err(diags)
    } else {
        Ok(doc)
    }
}

/// Parses a single formula against an existing language (for queries
/// supplied outside any theory file). The whole text must be one formula.
pub fn parse_formula(text: &str, language: &Language) -> Result<Formula, Vec<Diagnostic>> {
    let (tokens, mut diags) = lex(text);
    let mut parser = Parser::new(tokens, language.clone());
    let parsed = parser.formula(0);
    if parsed.is_ok() && parser.peek() != &Tok::Eof {
        let found = parser.peek().describe();
        parser.error_here(format!("unexpected {found} after the formula"));
    }
    diags.extend(parser.diags);
    diags.sort_by_key(|d| (d.line, d.col));
    match parsed {
        Ok(formula) if diags.is_empty() => Ok(formula),
        _ => {
            if diags.is_empty() {
                diags.push(Diagnostic::error("empty formula", 1, 1));
            }
            Err(diags)
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    depth_reported: bool,
    lang: Language,
    constructs: Vec<ConstructRecord>,
    hypotheses: Vec<Hypothesis>,
}

impl Parser {
    fn new(tokens: Vec<Token>, lang: Language) -> Parser {
        Parser {
            tokens,
            pos: 0,
            diags: Vec::new(),
            depth_reported: false,
            lang,
            constructs: Vec::new(),
            hypotheses: Vec::new(),
        }
    }

    fn token(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek(&self) -> &Tok {
        &self.token().kind
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        &self.tokens[(self.pos + ahead).min(self.tokens.len() - 1)].kind
    }

    fn loc(&self) -> (u32, u32) {
        let t = self.token();
        (t.line, t.col)
    }

    fn bump(&mut self) -> Token {
        let t = self.token().clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&mut self, line: u32, col: u32, message: impl Into<String>) {
        self.diags.push(Diagnostic::error(message, line, col));
    }

    fn error_here(&mut self, message: impl Into<String>) {
        let (line, col) = self.loc();
        self.error_at(line, col, message);
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<Token, ()> {
        if self.peek() == &kind {
            Ok(self.bump())
        } else {
            let found = self.peek().describe();
            self.error_here(format!("expected {what}, found {found}"));
            Err(())
        }
    }

    fn expect_word(&mut self, what: &str) -> Result<(String, u32, u32), ()> {
        if let Tok::Word(w) = self.peek() {
            let w = w.clone();
            let (line, col) = self.loc();
            self.bump();
            Ok((w, line, col))
        } else {
            let found = self.peek().describe();
            self.error_here(format!("expected {what}, found {found}"));
            Err(())
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ()> {
        if matches!(self.peek(), Tok::Word(w) if w == word) {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().describe();
            self.error_here(format!("expected `{word}`, found {found}"));
            Err(())
        }
    }

    fn expect_string(&mut self, what: &str) -> Result<String, ()> {
        if let Tok::Str(s) = self.peek() {
            let s = s.clone();
            self.bump();
            Ok(s)
        } else {
            let found = self.peek().describe();
            self.error_here(format!("expected {what}, found {found}"));
            Err(())
        }
    }

    fn at_decl_start(&self) -> bool {
        matches!(
            self.peek(),
            Tok::KwType | Tok::KwVar | Tok::KwConstruct | Tok::KwProp | Tok::Eof
        )
    }

    /// Skips ahead to the next declaration keyword (or end of input).
    fn sync(&mut self) {
        while !self.at_decl_start() {
            self.bump();
        }
    }

    fn check_depth(&mut self, depth: usize) -> Result<(), ()> {
        if depth > MAX_DEPTH {
            if !self.depth_reported {
                self.depth_reported = true;
                self.error_here("formula is nested too deeply");
            }
            Err(())
        } else {
            Ok(())
        }
    }

    // ------------------------------------------------------------------
    // Declarations
    // ------------------------------------------------------------------

    fn document(&mut self) -> TheoryDocument {
        loop {
            let outcome = match self.peek() {
                Tok::Eof => break,
                Tok::KwType => self.decl_type(),
                Tok::KwVar => self.decl_var(),
                Tok::KwConstruct => self.decl_construct(),
                Tok::KwProp => self.decl_prop(),
                _ => {
                    let found = self.peek().describe();
                    self.error_here(format!(
                        "expected a declaration (`type`, `var`, `construct`, or `prop`), \
                         found {found}"
                    ));
                    Err(())
                }
            };
            if outcome.is_err() {
                self.sync();
            }
        }
        TheoryDocument {
            language: std::mem::take(&mut self.lang),
            constructs: std::mem::take(&mut self.constructs),
            hypotheses: std::mem::take(&mut self.hypotheses),
        }
    }

    fn decl_type(&mut self) -> Result<(), ()> {
        self.bump(); // `type`
        let (name, nline, ncol) = self.expect_word("a type name")?;
        let duplicate = self.lang.universe_index(&name).is_some();
        if duplicate {
            self.error_at(nline, ncol, format!("type `{name}` is already declared"));
        }
        self.expect(Tok::Eq, "`=`")?;
        let universe = match self.peek().clone() {
            Tok::Word(w) if w == "real" => {
                self.bump();
                self.expect(Tok::LBracket, "`[`")?;
                let (lo, lline, lcol) = self.number_literal()?;
                self.expect(Tok::Comma, "`,`")?;
                let (hi, _, _) = self.number_literal()?;
                self.expect(Tok::RBracket, "`]`")?;
                if lo > hi {
                    self.error_at(
                        lline,
                        lcol,
                        format!("empty interval: {lo} is greater than {hi}"),
                    );
                }
                Universe::real(&name, lo.min(hi), hi.max(lo))
            }
            Tok::Word(w) if w == "bool" => {
                self.bump();
                Universe::boolean(&name)
            }
            Tok::LBrace => self.enum_body(&name)?,
            _ => {
                let found = self.peek().describe();
                self.error_here(format!(
                    "expected `real`, `bool`, or `{{` after `=`, found {found}"
                ));
                return Err(());
            }
        };
        if !duplicate {
            self.lang.add_universe(universe);
        }
        Ok(())
    }

    fn enum_body(&mut self, type_name: &str) -> Result<Universe, ()> {
        self.bump(); // `{`
        let mut values: Vec<Symbol> = Vec::new();
        loop {
            let (value, vline, vcol) = self.enum_value()?;
            if values.contains(&value) {
                self.error_at(
                    vline,
                    vcol,
                    format!("duplicate value `{value}` in type `{type_name}`"),
                );
            } else {
                values.push(value);
            }
            if self.peek() == &Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBrace, "`}`")?;
        let mut universe = Universe::enumeration(type_name, values.clone());

        if matches!(self.peek(), Tok::Word(w) if w == "order") {
            self.bump();
            self.expect(Tok::LBrace, "`{`")?;
            let mut pairs: Vec<(Symbol, Symbol)> = Vec::new();
            while self.peek() != &Tok::RBrace {
                if self.at_decl_start() {
                    self.error_here("unclosed order block");
                    return Err(());
                }
                let (a, aline, acol) = self.enum_value()?;
                self.expect(Tok::Gt, "`>`")?;
                let (b, _, _) = self.enum_value()?;
                self.expect(Tok::Semi, "`;`")?;
                for v in [&a, &b] {
                    if !values.contains(v) {
                        self.error_at(
                            aline,
                            acol,
                            format!("`{v}` is not a value of type `{type_name}`"),
                        );
                    }
                }
                if a == b {
                    self.error_at(aline, acol, format!("order relates `{a}` to itself"));
                } else if pairs.contains(&(a.clone(), b.clone())) {
                    self.error_at(aline, acol, format!("order pair `{a} > {b}` repeats"));
                } else {
                    pairs.push((a, b));
                }
            }
            self.bump(); // `}`
            universe = universe.with_order(pairs);
            // A cycle would make the "strictly greater" check inconsistent;
            // any cycle must close over at least one declared pair.
            for (a, b) in universe.order.clone() {
                let (av, bv) = (Value::Symbol(a), Value::Symbol(b));
                if universe.strictly_greater(&bv, &av) {
                    self.error_here(format!(
                        "the order of type `{type_name}` is cyclic (`{bv}` and `{av}` \
                         are each above the other)"
                    ));
                    break;
                }
            }
        }
        Ok(universe)
    }

    fn enum_value(&mut self) -> Result<(Symbol, u32, u32), ()> {
        let (line, col) = self.loc();
        match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                Ok((Symbol::Word(w), line, col))
            }
            Tok::LParen => {
                self.bump();
                let mut parts = vec![self.expect_word("a word inside the tuple")?.0];
                self.expect(Tok::Comma, "`,` (tuples need at least two parts)")?;
                parts.push(self.expect_word("a word inside the tuple")?.0);
                while self.peek() == &Tok::Comma {
                    self.bump();
                    parts.push(self.expect_word("a word inside the tuple")?.0);
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok((Symbol::Tuple(parts), line, col))
            }
            other => {
                self.error_here(format!(
                    "expected a value name or tuple, found {}",
                    other.describe()
                ));
                Err(())
            }
        }
    }

    fn number_literal(&mut self) -> Result<(f64, u32, u32), ()> {
        let (line, col) = self.loc();
        let negative = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        if let Tok::Num(n) = self.peek() {
            let n = *n;
            self.bump();
            Ok((if negative { -n } else { n }, line, col))
        } else {
            let found = self.peek().describe();
            self.error_here(format!("expected a number, found {found}"));
            Err(())
        }
    }

    fn decl_var(&mut self) -> Result<(), ()> {
        self.bump(); // `var`
        let (name, nline, ncol) = self.expect_word("a variable name")?;
        let duplicate = self.lang.variable(&name).is_some();
        if duplicate {
            self.error_at(nline, ncol, format!("variable `{name}` is already declared"));
        }
        self.expect(Tok::Colon, "`:`")?;
        let (type_name, tline, tcol) = self.expect_word("a type name")?;
        match self.lang.universe_index(&type_name) {
            Some(universe) => {
                if !duplicate {
                    self.lang.add_variable(&name, universe);
                }
            }
            None => self.error_at(tline, tcol, format!("unknown type `{type_name}`")),
        }
        Ok(())
    }

    fn decl_construct(&mut self) -> Result<(), ()> {
        self.bump(); // `construct`
        let (name, nline, ncol) = self.expect_word("a construct name")?;
        if self.constructs.iter().any(|c| c.name == name) {
            self.error_at(nline, ncol, format!("construct `{name}` is already declared"));
        }
        self.expect(Tok::LBrace, "`{`")?;
        let mut record = ConstructRecord {
            name,
            derives: Vec::new(),
            definition: String::new(),
            dimensions: Vec::new(),
        };
        let mut have_def = false;
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof | Tok::KwType | Tok::KwVar | Tok::KwConstruct | Tok::KwProp => {
                    self.error_here(format!(
                        "unclosed construct block for `{}`",
                        record.name
                    ));
                    return Err(());
                }
                _ => {
                    if self.construct_item(&mut record, &mut have_def).is_err() {
                        // Resume at the next `;` inside the block.
                        while !matches!(self.peek(), Tok::Semi | Tok::RBrace | Tok::Eof)
                            && !self.at_decl_start()
                        {
                            self.bump();
                        }
                        if self.peek() == &Tok::Semi {
                            self.bump();
                        }
                    }
                }
            }
        }
        self.constructs.push(record);
        Ok(())
    }

    fn construct_item(&mut self, record: &mut ConstructRecord, have_def: &mut bool) -> Result<(), ()> {
        let (word, line, col) = self.expect_word("`derives`, `def`, or `dim`")?;
        match word.as_str() {
            "derives" => {
                loop {
                    record.derives.push(self.expect_string("a quoted concept name")?);
                    if self.peek() == &Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi, "`;`")?;
            }
            "def" => {
                let text = self.expect_string("a quoted definition")?;
                if *have_def {
                    self.error_at(
                        line,
                        col,
                        format!("construct `{}` already has a def", record.name),
                    );
                } else {
                    record.definition = text;
                    *have_def = true;
                }
                self.expect(Tok::Semi, "`;`")?;
            }
            "dim" => {
                let (var, vline, vcol) = self.expect_word("a variable name")?;
                if self.lang.variable(&var).is_none() {
                    self.error_at(vline, vcol, format!("unknown variable `{var}`"));
                }
                if record.dimensions.iter().any(|d| d.variable == var) {
                    self.error_at(
                        vline,
                        vcol,
                        format!("construct `{}` already has dimension `{var}`", record.name),
                    );
                }
                self.expect_keyword("from")?;
                let (source_word, sline, scol) = self.expect_word("`data` or `abductive`")?;
                let source = match source_word.as_str() {
                    "data" => DimensionSource::Data,
                    "abductive" => DimensionSource::Abductive,
                    other => {
                        self.error_at(
                            sline,
                            scol,
                            format!("expected `data` or `abductive`, found `{other}`"),
                        );
                        return Err(());
                    }
                };
                self.expect_keyword("shape")?;
                let (shape_word, hline, hcol) = self.expect_word("`scalar` or `collection`")?;
                let shape = match shape_word.as_str() {
                    "scalar" => Shape::Scalar,
                    "collection" => Shape::Collection,
                    other => {
                        self.error_at(
                            hline,
                            hcol,
                            format!("expected `scalar` or `collection`, found `{other}`"),
                        );
                        return Err(());
                    }
                };
                self.expect(Tok::Semi, "`;`")?;
                record.dimensions.push(Dimension {
                    variable: var,
                    source,
                    shape,
                });
            }
            other => {
                self.error_at(
                    line,
                    col,
                    format!("expected `derives`, `def`, or `dim`, found `{other}`"),
                );
                return Err(());
            }
        }
        Ok(())
    }

    fn decl_prop(&mut self) -> Result<(), ()> {
        self.bump(); // `prop`
        let (id, iline, icol) = self.expect_word("a proposition identifier")?;
        let duplicate = self.hypotheses.iter().any(|h| h.id == id);
        if duplicate {
            self.error_at(iline, icol, format!("proposition `{id}` is already declared"));
        }
        self.expect(Tok::Colon, "`:`")?;
        let formula = self.formula(0)?;
        if !self.at_decl_start() {
            let found = self.peek().describe();
            self.error_here(format!("unexpected {found} after the formula"));
            return Err(());
        }
        if !duplicate {
            self.hypotheses.push(Hypothesis { id, formula });
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Formulas
    // ------------------------------------------------------------------

    fn formula(&mut self, depth: usize) -> Result<Formula, ()> {
        self.check_depth(depth)?;
        let mut f = self.implication(depth + 1)?;
        while self.peek() == &Tok::DArrow {
            self.bump();
            let rhs = self.implication(depth + 1)?;
            f = f.iff(rhs);
        }
        Ok(f)
    }

    fn implication(&mut self, depth: usize) -> Result<Formula, ()> {
        self.check_depth(depth)?;
        let lhs = self.disjunction(depth + 1)?;
        if self.peek() == &Tok::Arrow {
            self.bump();
            let rhs = self.implication(depth + 1)?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self, depth: usize) -> Result<Formula, ()> {
        self.check_depth(depth)?;
        let mut f = self.conjunction(depth + 1)?;
        while self.peek() == &Tok::Pipe {
            self.bump();
            let rhs = self.conjunction(depth + 1)?;
            f = f.or(rhs);
        }
        Ok(f)
    }

    fn conjunction(&mut self, depth: usize) -> Result<Formula, ()> {
        self.check_depth(depth)?;
        let mut f = self.negation(depth + 1)?;
        while self.peek() == &Tok::Amp {
            self.bump();
            let rhs = self.negation(depth + 1)?;
            f = f.and(rhs);
        }
        Ok(f)
    }

    fn negation(&mut self, depth: usize) -> Result<Formula, ()> {
        self.check_depth(depth)?;
        if self.peek() == &Tok::Bang {
            self.bump();
            Ok(self.negation(depth + 1)?.not())
        } else {
            self.primary(depth + 1)
        }
    }

    fn primary(&mut self, depth: usize) -> Result<Formula, ()> {
        self.check_depth(depth)?;
        match self.peek().clone() {
            Tok::LParen => {
                if self.paren_opens_term() {
                    self.comparison(depth)
                } else {
                    self.bump();
                    let f = self.formula(depth + 1)?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(f)
                }
            }
            Tok::Word(name) => {
                if matches!(
                    self.peek_at(1),
                    Tok::Eq
                        | Tok::Gt
                        | Tok::Lt
                        | Tok::Ge
                        | Tok::Le
                        | Tok::Plus
                        | Tok::Minus
                        | Tok::Star
                        | Tok::Slash
                ) {
                    return self.comparison(depth);
                }
                // A lone word can only be a declared nullary proposition.
                let (line, col) = self.loc();
                self.bump();
                let relation = self
                    .lang
                    .relations
                    .iter()
                    .find(|r| r.kind == RelationKind::Proposition && r.name == name);
                match relation {
                    Some(decl) => Ok(Formula::Atom(Atom {
                        relation: name,
                        universe: decl.universe,
                        args: Vec::new(),
                    })),
                    None => {
                        if self.lang.variable(&name).is_some() {
                            self.error_at(
                                line,
                                col,
                                format!(
                                    "variable `{name}` needs a comparison (`=`, `>`, ...) \
                                     to form a formula"
                                ),
                            );
                        } else {
                            self.error_at(line, col, format!("unknown proposition `{name}`"));
                        }
                        Err(())
                    }
                }
            }
            Tok::Num(_) | Tok::True | Tok::False | Tok::Minus => self.comparison(depth),
            other => {
                self.error_here(format!("expected a formula, found {}", other.describe()));
                Err(())
            }
        }
    }

    /// Decides whether the `(` at the cursor starts a term (tuple constant
    /// or arithmetic grouping) rather than a parenthesized formula: true
    /// when the parenthesized run is tuple-shaped (words and commas only)
    /// or is followed by a comparison or arithmetic operator.
    fn paren_opens_term(&self) -> bool {
        let mut depth = 0usize;
        let mut tuple_shaped = true;
        let mut saw_comma = false;
        let mut k = self.pos;
        loop {
            let kind = &self.tokens[k.min(self.tokens.len() - 1)].kind;
            match kind {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                Tok::Eof => return false, // unbalanced; let the formula path report it
                Tok::Word(_) => {}
                Tok::Comma => saw_comma = true,
                _ => tuple_shaped = false,
            }
            k += 1;
        }
        if tuple_shaped && saw_comma {
            return true;
        }
        matches!(
            self.tokens[(k + 1).min(self.tokens.len() - 1)].kind,
            Tok::Eq
                | Tok::Gt
                | Tok::Lt
                | Tok::Ge
                | Tok::Le
                | Tok::Plus
                | Tok::Minus
                | Tok::Star
                | Tok::Slash
        )
    }

    /// `term RELOP term`, with the universe inferred from both sides.
    fn comparison(&mut self, depth: usize) -> Result<Formula, ()> {
        let (lhs_line, lhs_col) = self.loc();
        let lhs = self.term(depth + 1)?;
        let (op_line, op_col) = self.loc();
        let op = match self.peek() {
            Tok::Eq => "=",
            Tok::Gt => ">",
            Tok::Lt => "<",
            Tok::Ge => ">=",
            Tok::Le => "<=",
            other => {
                let found = other.describe();
                self.error_here(format!(
                    "expected a comparison (`=`, `>`, `<`, `>=`, `<=`), found {found}"
                ));
                return Err(());
            }
        };
        self.bump();
        let (rhs_line, rhs_col) = self.loc();
        let rhs = self.term(depth + 1)?;

        let left = self.term_universes(&lhs, lhs_line, lhs_col)?;
        let right = self.term_universes(&rhs, rhs_line, rhs_col)?;
        let common: Vec<usize> = left.intersection(&right).copied().collect();
        let usable: Vec<usize> = common
            .iter()
            .copied()
            .filter(|&u| self.lang.relation(u, op).is_some())
            .collect();
        match usable.as_slice() {
            [universe] => {
                let mut lhs = lhs;
                let mut rhs = rhs;
                stamp_universe(&mut lhs, *universe);
                stamp_universe(&mut rhs, *universe);
                Ok(Formula::Atom(Atom {
                    relation: op.to_string(),
                    universe: *universe,
                    args: vec![lhs, rhs],
                }))
            }
            [] => {
                if common.is_empty() {
                    self.error_at(
                        op_line,
                        op_col,
                        format!("type mismatch: the sides of `{op}` share no type"),
                    );
                } else {
                    let name = &self.lang.universes[common[0]].name;
                    self.error_at(
                        op_line,
                        op_col,
                        format!("type `{name}` has no order, so `{op}` does not apply"),
                    );
                }
                Err(())
            }
            more => {
                let names: Vec<&str> = more
                    .iter()
                    .map(|&u| self.lang.universes[u].name.as_str())
                    .collect();
                self.error_at(
                    op_line,
                    op_col,
                    format!(
                        "ambiguous comparison: types {} all fit; involve a variable \
                         to pin one down",
                        names.join(", ")
                    ),
                );
                Err(())
            }
        }
    }

    /// The universes a term can live in. Applications are restricted to
    /// universes that carry their function symbol.
    fn term_universes(
        &mut self,
        term: &Term,
        line: u32,
        col: u32,
    ) -> Result<BTreeSet<usize>, ()> {
        match term {
            Term::Variable(name) => match self.lang.variable(name) {
                Some(decl) => Ok([decl.universe].into()),
                None => {
                    self.error_at(line, col, format!("unknown name `{name}`"));
                    Err(())
                }
            },
            Term::Constant(value) => {
                let set: BTreeSet<usize> = self
                    .lang
                    .universes
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| u.admits(value))
                    .map(|(i, _)| i)
                    .collect();
                if set.is_empty() {
                    self.error_at(line, col, format!("no declared type admits `{value}`"));
                    Err(())
                } else {
                    Ok(set)
                }
            }
            Term::Apply { function, args, .. } => {
                let mut set: Option<BTreeSet<usize>> = None;
                for arg in args {
                    let arg_set = self.term_universes(arg, line, col)?;
                    set = Some(match set {
                        None => arg_set,
                        Some(s) => s.intersection(&arg_set).copied().collect(),
                    });
                }
                let set: BTreeSet<usize> = set
                    .unwrap_or_default()
                    .into_iter()
                    .filter(|&u| self.lang.function(u, function).is_some())
                    .collect();
                if set.is_empty() {
                    self.error_at(
                        line,
                        col,
                        format!("`{function}` needs operands of one shared real type"),
                    );
                    Err(())
                } else {
                    Ok(set)
                }
            }
        }
    }

    // ------------------------------------------------------------------
    // Terms
    // ------------------------------------------------------------------

    fn term(&mut self, depth: usize) -> Result<Term, ()> {
        self.check_depth(depth)?;
        let mut t = self.product(depth + 1)?;
        loop {
            let function = match self.peek() {
                Tok::Plus => "+",
                Tok::Minus => "-",
                _ => break,
            };
            self.bump();
            let rhs = self.product(depth + 1)?;
            t = Term::Apply {
                function: function.to_string(),
                universe: UNRESOLVED,
                args: vec![t, rhs],
            };
        }
        Ok(t)
    }

    fn product(&mut self, depth: usize) -> Result<Term, ()> {
        self.check_depth(depth)?;
        let mut t = self.factor(depth + 1)?;
        loop {
            let function = match self.peek() {
                Tok::Star => "*",
                Tok::Slash => "/",
                _ => break,
            };
            self.bump();
            let rhs = self.factor(depth + 1)?;
            t = Term::Apply {
                function: function.to_string(),
                universe: UNRESOLVED,
                args: vec![t, rhs],
            };
        }
        Ok(t)
    }

    fn factor(&mut self, depth: usize) -> Result<Term, ()> {
        self.check_depth(depth)?;
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Term::Constant(Value::real(n)))
            }
            Tok::True => {
                self.bump();
                Ok(Term::Constant(Value::Bool(true)))
            }
            Tok::False => {
                self.bump();
                Ok(Term::Constant(Value::Bool(false)))
            }
            Tok::Minus => {
                self.bump();
                let inner = self.factor(depth + 1)?;
                if let Term::Constant(Value::Real(r)) = inner {
                    Ok(Term::Constant(Value::real(-r.get())))
                } else {
                    Ok(Term::Apply {
                        function: "neg".to_string(),
                        universe: UNRESOLVED,
                        args: vec![inner],
                    })
                }
            }
            Tok::Word(name) => {
                let (line, col) = self.loc();
                self.bump();
                // Variables shadow enum values of the same name.
                if self.lang.variable(&name).is_some() {
                    return Ok(Term::Variable(name));
                }
                let value = Value::word(&name);
                if self.lang.universes.iter().any(|u| u.admits(&value)) {
                    return Ok(Term::Constant(value));
                }
                self.error_at(line, col, format!("unknown variable `{name}`"));
                Err(())
            }
            Tok::LParen => {
                if self.paren_is_tuple() {
                    let (symbol, _, _) = self.enum_value()?;
                    Ok(Term::Constant(Value::Symbol(symbol)))
                } else {
                    self.bump();
                    let t = self.term(depth + 1)?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(t)
                }
            }
            other => {
                self.error_here(format!(
                    "expected a number, value, variable, or `(`, found {}",
                    other.describe()
                ));
                Err(())
            }
        }
    }

    /// True when the `(` at the cursor opens a tuple constant: only words
    /// and commas up to the matching `)`, with at least one comma.
    fn paren_is_tuple(&self) -> bool {
        let mut depth = 0usize;
        let mut saw_comma = false;
        let mut k = self.pos;
        loop {
            match &self.tokens[k.min(self.tokens.len() - 1)].kind {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return saw_comma;
                    }
                }
                Tok::Word(_) => {}
                Tok::Comma => saw_comma = true,
                _ => return false,
            }
            k += 1;
        }
    }
}

/// Replaces the placeholder universe of every application in the term.
fn stamp_universe(term: &mut Term, universe: usize) {
    if let Term::Apply {
        universe: slot,
        args,
        ..
    } = term
    {
        *slot = universe;
        for arg in args {
            stamp_universe(arg, universe);
        }
    }
}
