//! Tokenizer for theory files. Tracks 1-based line/column positions and
//! reports problems as diagnostics instead of failing.

use super::Diagnostic;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Word(String),
    Num(f64),
    Str(String),
    True,
    False,
    KwType,
    KwVar,
    KwConstruct,
    KwProp,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Eq,
    Gt,
    Lt,
    Ge,
    Le,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl Tok {
    /// How the token reads in an error message.
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Str(_) => "a quoted string".to_string(),
            Tok::True => "`True`".to_string(),
            Tok::False => "`False`".to_string(),
            Tok::KwType => "`type`".to_string(),
            Tok::KwVar => "`var`".to_string(),
            Tok::KwConstruct => "`construct`".to_string(),
            Tok::KwProp => "`prop`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::LBrace => "`{`".to_string(),
            Tok::RBrace => "`}`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Colon => "`:`".to_string(),
            Tok::Semi => "`;`".to_string(),
            Tok::Eq => "`=`".to_string(),
            Tok::Gt => "`>`".to_string(),
            Tok::Lt => "`<`".to_string(),
            Tok::Ge => "`>=`".to_string(),
            Tok::Le => "`<=`".to_string(),
            Tok::Bang => "`!`".to_string(),
            Tok::Amp => "`&`".to_string(),
            Tok::Pipe => "`|`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::DArrow => "`<->`".to_string(),
            Tok::Plus => "`+`".to_string(),
            Tok::Minus => "`-`".to_string(),
            Tok::Star => "`*`".to_string(),
            Tok::Slash => "`/`".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: Tok,
    pub line: u32,
    pub col: u32,
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: u32,
    col: u32,
    tokens: Vec<Token>,
    diags: Vec<Diagnostic>,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.i + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn push(&mut self, kind: Tok, line: u32, col: u32) {
        self.tokens.push(Token { kind, line, col });
    }

    fn word(&mut self, line: u32, col: u32) {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        let text: String = self.chars[start..self.i].iter().collect();
        let kind = match text.as_str() {
            "type" => Tok::KwType,
            "var" => Tok::KwVar,
            "construct" => Tok::KwConstruct,
            "prop" => Tok::KwProp,
            "True" => Tok::True,
            "False" => Tok::False,
            _ => Tok::Word(text),
        };
        self.push(kind, line, col);
    }

    fn number(&mut self, line: u32, col: u32) {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            self.bump();
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mut k = 1;
            if matches!(self.peek_at(1), Some('+' | '-')) {
                k = 2;
            }
            if matches!(self.peek_at(k), Some(c) if c.is_ascii_digit()) {
                for _ in 0..=k {
                    self.bump();
                }
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.bump();
                }
            }
        }
        let text: String = self.chars[start..self.i].iter().collect();
        let value: f64 = text.parse().unwrap_or(f64::INFINITY);
        if value.is_finite() {
            self.push(Tok::Num(value), line, col);
        } else {
            self.diags.push(Diagnostic::error(
                format!("number `{text}` is out of range"),
                line,
                col,
            ));
            self.push(Tok::Num(0.0), line, col);
        }
    }

    fn string(&mut self, line: u32, col: u32) {
        self.bump(); // opening quote
        let start = self.i;
        loop {
            match self.peek() {
                Some('"') => {
                    let text: String = self.chars[start..self.i].iter().collect();
                    self.bump();
                    self.push(Tok::Str(text), line, col);
                    return;
                }
                Some('\n') | None => {
                    let text: String = self.chars[start..self.i].iter().collect();
                    self.diags
                        .push(Diagnostic::error("unterminated string", line, col));
                    self.push(Tok::Str(text), line, col);
                    return;
                }
                _ => {
                    self.bump();
                }
            }
        }
    }
}

/// Splits source text into tokens. The token stream always ends with
/// [`Tok::Eof`]; problems (stray characters, unterminated strings,
/// out-of-range numbers) are reported as diagnostics and skipped over.
pub fn lex(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut lx = Lexer {
        chars: text.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
        tokens: Vec::new(),
        diags: Vec::new(),
    };
    while let Some(c) = lx.peek() {
        let (line, col) = (lx.line, lx.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                lx.bump();
            }
            '#' => {
                while !matches!(lx.peek(), Some('\n') | None) {
                    lx.bump();
                }
            }
            '"' => lx.string(line, col),
            c if c.is_ascii_alphabetic() || c == '_' => lx.word(line, col),
            c if c.is_ascii_digit() => lx.number(line, col),
            '(' => {
                lx.bump();
                lx.push(Tok::LParen, line, col);
            }
            ')' => {
                lx.bump();
                lx.push(Tok::RParen, line, col);
            }
            '{' => {
                lx.bump();
                lx.push(Tok::LBrace, line, col);
            }
            '}' => {
                lx.bump();
                lx.push(Tok::RBrace, line, col);
            }
            '[' => {
                lx.bump();
                lx.push(Tok::LBracket, line, col);
            }
            ']' => {
                lx.bump();
                lx.push(Tok::RBracket, line, col);
            }
            ',' => {
                lx.bump();
                lx.push(Tok::Comma, line, col);
            }
            ':' => {
                lx.bump();
                lx.push(Tok::Colon, line, col);
            }
            ';' => {
                lx.bump();
                lx.push(Tok::Semi, line, col);
            }
            '=' => {
                lx.bump();
                lx.push(Tok::Eq, line, col);
            }
            '!' => {
                lx.bump();
                lx.push(Tok::Bang, line, col);
            }
            '&' => {
                lx.bump();
                lx.push(Tok::Amp, line, col);
            }
            '|' => {
                lx.bump();
                lx.push(Tok::Pipe, line, col);
            }
            '+' => {
                lx.bump();
                lx.push(Tok::Plus, line, col);
            }
            '*' => {
                lx.bump();
                lx.push(Tok::Star, line, col);
            }
            '/' => {
                lx.bump();
                lx.push(Tok::Slash, line, col);
            }
            '-' => {
                lx.bump();
                if lx.peek() == Some('>') {
                    lx.bump();
                    lx.push(Tok::Arrow, line, col);
                } else {
                    lx.push(Tok::Minus, line, col);
                }
            }
            '>' => {
                lx.bump();
                if lx.peek() == Some('=') {
                    lx.bump();
                    lx.push(Tok::Ge, line, col);
                } else {
                    lx.push(Tok::Gt, line, col);
                }
            }
            '<' => {
                lx.bump();
                if lx.peek() == Some('-') && lx.peek_at(1) == Some('>') {
                    lx.bump();
                    lx.bump();
                    lx.push(Tok::DArrow, line, col);
                } else if lx.peek() == Some('=') {
                    lx.bump();
                    lx.push(Tok::Le, line, col);
                } else {
                    lx.push(Tok::Lt, line, col);
                }
            }
            other => {
                lx.diags.push(Diagnostic::error(
                    format!("unexpected character `{other}`"),
                    line,
                    col,
                ));
                lx.bump();
            }
        }
    }
    let (line, col) = (lx.line, lx.col);
    lx.push(Tok::Eof, line, col);
    (lx.tokens, lx.diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Tok> {
        let (tokens, diags) = lex(text);
        assert!(diags.is_empty(), "unexpected diagnostics: {diags:?}");
        tokens.into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn operators_lex_greedily() {
        assert_eq!(
            kinds("a <-> b <= c < -d -> e"),
            vec![
                Tok::Word("a".into()),
                Tok::DArrow,
                Tok::Word("b".into()),
                Tok::Le,
                Tok::Word("c".into()),
                Tok::Lt,
                Tok::Minus,
                Tok::Word("d".into()),
                Tok::Arrow,
                Tok::Word("e".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn numbers_words_and_keywords() {
        assert_eq!(
            kinds("type T2 = real[0, 1.5e2]"),
            vec![
                Tok::KwType,
                Tok::Word("T2".into()),
                Tok::Eq,
                Tok::Word("real".into()),
                Tok::LBracket,
                Tok::Num(0.0),
                Tok::Comma,
                Tok::Num(150.0),
                Tok::RBracket,
                Tok::Eof,
            ]
        );
        assert_eq!(
            kinds("True False truthy"),
            vec![Tok::True, Tok::False, Tok::Word("truthy".into()), Tok::Eof]
        );
    }

    #[test]
    fn comments_and_positions() {
        let (tokens, diags) = lex("# heading\nvar X : T # trailing\n");
        assert!(diags.is_empty());
        assert_eq!(tokens[0].kind, Tok::KwVar);
        assert_eq!((tokens[0].line, tokens[0].col), (2, 1));
        assert_eq!((tokens[1].line, tokens[1].col), (2, 5));
        assert_eq!(tokens.last().unwrap().kind, Tok::Eof);
        assert_eq!(tokens.last().unwrap().line, 3);
    }

    #[test]
    fn problems_become_diagnostics_not_panics() {
        let (tokens, diags) = lex("a $ b");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].to_string(), "1:3: error: unexpected character `$`");
        assert_eq!(tokens.len(), 3); // a, b, Eof

        let (_, diags) = lex("\"no closing quote");
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("unterminated"));

        let (tokens, diags) = lex("x = 1e999");
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("out of range"));
        assert_eq!(tokens[2].kind, Tok::Num(0.0));
    }

    #[test]
    fn dots_outside_numbers_are_rejected() {
        let (_, diags) = lex("5.");
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("unexpected character `.`"));
    }
}
