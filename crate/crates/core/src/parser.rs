//! Surface syntax for programs and interpretations.
//!
//! ```text
//! program   ::= rule*
//! rule      ::= head? (":-" body)? "."
//! head      ::= literal ("|" literal)*
//! body      ::= elem ("," elem)*
//! elem      ::= "not" literal | literal | arith cmp arith
//! literal   ::= "-"? ident ("(" arg ("," arg)* ")")?
//! arg       ::= Variable | constant | number
//! arith     ::= product ("+" product)*
//! product   ::= primary ("*" primary)*
//! primary   ::= Variable | constant | number | "(" arith ")"
//! cmp       ::= "=" | "!=" | "<=" | "<" | ">=" | ">"
//! ```
//!
//! Variables start with an uppercase letter, constants with a lowercase one,
//! and `%` starts a comment that runs to the end of the line. Interpretations
//! are written either as `{ l1, l2, ... }` or as ground literals separated by
//! commas, periods or line breaks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    ArithOp, BodyAtom, Builtin, CmpOp, Constant, Interpretation, Literal, Program, Rule, Span,
    Symbol, Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    Syntax,
    BuiltinInHead,
    BuiltinInNegativeBody,
    InconsistentInterpretation,
    BuiltinInInterpretation,
    ArityClashWarning,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::BuiltinInHead => "builtin in rule head",
            ParseErrorKind::BuiltinInNegativeBody => "builtin under default negation",
            ParseErrorKind::InconsistentInterpretation => "inconsistent interpretation",
            ParseErrorKind::BuiltinInInterpretation => "builtin in interpretation",
            ParseErrorKind::ArityClashWarning => "arity clash",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Num(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Pipe,
    If,
    Minus,
    Plus,
    Star,
    Cmp(CmpOp),
    Not,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Var(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Cmp(op) => write!(f, "`{}`", op.symbol()),
            Tok::Not => f.write_str("`not`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn error(&self, offset: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
        ParseError {
            line,
            column,
            offset,
            kind,
            message: message.into(),
        }
    }
}

fn lex(src: &Source<'_>) -> Result<Vec<Token>, ParseError> {
    let bytes = src.text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'%' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let two = |b: u8| bytes.get(i + 1) == Some(&b);
        let (tok, len) = match c {
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b'{' => (Tok::LBrace, 1),
            b'}' => (Tok::RBrace, 1),
            b',' => (Tok::Comma, 1),
            b'.' => (Tok::Dot, 1),
            b'|' => (Tok::Pipe, 1),
            b'-' => (Tok::Minus, 1),
            b'+' => (Tok::Plus, 1),
            b'*' => (Tok::Star, 1),
            b':' if two(b'-') => (Tok::If, 2),
            b'!' if two(b'=') => (Tok::Cmp(CmpOp::Neq), 2),
            b'<' if two(b'=') => (Tok::Cmp(CmpOp::Leq), 2),
            b'>' if two(b'=') => (Tok::Cmp(CmpOp::Geq), 2),
            b'<' => (Tok::Cmp(CmpOp::Lt), 1),
            b'>' => (Tok::Cmp(CmpOp::Gt), 1),
            b'=' => (Tok::Cmp(CmpOp::Eq), 1),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src.text[start..i];
                let n = digits.parse().map_err(|_| {
                    src.error(start, ParseErrorKind::Syntax, format!("number {digits} is too large"))
                })?;
                out.push(Token {
                    tok: Tok::Num(n),
                    start,
                    end: i,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &src.text[start..i];
                let tok = if c == b'_' {
                    return Err(src.error(
                        start,
                        ParseErrorKind::Syntax,
                        format!("identifier `{word}` must start with a letter"),
                    ));
                } else if word == "not" {
                    Tok::Not
                } else if c.is_ascii_uppercase() {
                    Tok::Var(word.to_string())
                } else {
                    Tok::Ident(word.to_string())
                };
                out.push(Token { tok, start, end: i });
                continue;
            }
            _ => {
                let ch = src.text[start..].chars().next().unwrap_or('?');
                return Err(src.error(
                    start,
                    ParseErrorKind::Syntax,
                    format!("unexpected character `{ch}`"),
                ));
            }
        };
        i += len;
        out.push(Token {
            tok,
            start,
            end: i,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        start: bytes.len(),
        end: bytes.len(),
    });
    Ok(out)
}

enum Elem {
    Lit(Literal),
    Builtin(Builtin),
}

struct Parser<'a> {
    src: Source<'a>,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let src = Source { text };
        let toks = lex(&src)?;
        Ok(Parser { src, toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].start
    }

    fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        self.src.error(self.offset(), ParseErrorKind::Syntax, message)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.syntax(format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<usize, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().end)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut rules = Vec::new();
        while *self.peek() != Tok::Eof {
            rules.push(self.rule()?);
        }
        Ok(Program::new(rules))
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let start = self.offset();
        let mut head = Vec::new();
        if *self.peek() != Tok::If {
            loop {
                let at = self.offset();
                match self.elem()? {
                    Elem::Lit(l) => head.push(l),
                    Elem::Builtin(b) => {
                        return Err(self.src.error(
                            at,
                            ParseErrorKind::BuiltinInHead,
                            format!("comparison `{b}` may only appear in a positive body"),
                        ))
                    }
                }
                if *self.peek() == Tok::Pipe {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if *self.peek() == Tok::If {
            self.bump();
            loop {
                if *self.peek() == Tok::Not {
                    self.bump();
                    let at = self.offset();
                    match self.elem()? {
                        Elem::Lit(l) => neg.push(l),
                        Elem::Builtin(b) => {
                            return Err(self.src.error(
                                at,
                                ParseErrorKind::BuiltinInNegativeBody,
                                format!("comparison `{b}` may not appear under `not`"),
                            ))
                        }
                    }
                } else {
                    match self.elem()? {
                        Elem::Lit(l) => pos.push(BodyAtom::Lit(l)),
                        Elem::Builtin(b) => pos.push(BodyAtom::Builtin(b)),
                    }
                }
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        let end = self.expect(Tok::Dot, "`.` at the end of the rule")?;
        let rule = Rule::new(head, pos, neg).map_err(|e| self.src.error(start, ParseErrorKind::Syntax, e.to_string()))?;
        Ok(rule.with_span(Span { start, end }))
    }

    /// A literal or a comparison.
    fn elem(&mut self) -> Result<Elem, ParseError> {
        match (self.peek().clone(), self.peek2().clone()) {
            (Tok::Minus, Tok::Ident(name)) => {
                self.bump();
                self.bump();
                let lit = self.literal_rest(&name, true)?;
                self.no_comparison_after_literal()?;
                Ok(Elem::Lit(lit))
            }
            (Tok::Ident(name), Tok::LParen) => {
                self.bump();
                let lit = self.literal_rest(&name, false)?;
                self.no_comparison_after_literal()?;
                Ok(Elem::Lit(lit))
            }
            (Tok::Ident(_) | Tok::Var(_) | Tok::Num(_) | Tok::LParen, _) => {
                let lhs = self.arith()?;
                if let Tok::Cmp(op) = *self.peek() {
                    self.bump();
                    let rhs = self.arith()?;
                    return Ok(Elem::Builtin(Builtin::new(lhs, op, rhs)));
                }
                match lhs {
                    Term::Const(Constant::Sym(name)) => Ok(Elem::Lit(
                        Literal::new(&name, false, vec![]).expect("nullary literal"),
                    )),
                    _ => Err(self.unexpected("a comparison operator")),
                }
            }
            _ => Err(self.unexpected("a literal")),
        }
    }

    fn no_comparison_after_literal(&self) -> Result<(), ParseError> {
        if matches!(self.peek(), Tok::Cmp(_) | Tok::Plus | Tok::Star) {
            Err(self.syntax("literals cannot be used as terms"))
        } else {
            Ok(())
        }
    }

    fn literal_rest(&mut self, name: &str, negated: bool) -> Result<Literal, ParseError> {
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            loop {
                args.push(self.arg()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen, "`)` or `,`")?;
        }
        Ok(Literal::new(name, negated, args).expect("literal arguments are simple terms"))
    }

    fn arg(&mut self) -> Result<Term, ParseError> {
        let t = match self.peek().clone() {
            Tok::Var(v) => Term::Var(Arc::from(v.as_str())),
            Tok::Ident(c) => Term::sym(&c),
            Tok::Num(n) => Term::num(n),
            _ => return Err(self.unexpected("a variable or a constant")),
        };
        self.bump();
        if matches!(self.peek(), Tok::Plus | Tok::Star | Tok::LParen) {
            return Err(self.syntax(
                "literal arguments must be variables or constants; arithmetic is only allowed in comparisons",
            ));
        }
        Ok(t)
    }

    fn arith(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.product()?;
            lhs = Term::Arith(ArithOp::Add, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.primary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.primary()?;
            lhs = Term::Arith(ArithOp::Mul, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let t = match self.peek().clone() {
            Tok::Var(v) => Term::Var(Arc::from(v.as_str())),
            Tok::Ident(c) => {
                if *self.peek2() == Tok::LParen {
                    return Err(self.syntax("literals cannot be used as terms"));
                }
                Term::sym(&c)
            }
            Tok::Num(n) => Term::num(n),
            Tok::LParen => {
                self.bump();
                let t = self.arith()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(t);
            }
            _ => return Err(self.unexpected("a term")),
        };
        self.bump();
        Ok(t)
    }

    fn interpretation(&mut self) -> Result<Interpretation, ParseError> {
        let braced = *self.peek() == Tok::LBrace;
        if braced {
            self.bump();
        }
        let mut seen: BTreeMap<Literal, usize> = BTreeMap::new();
        loop {
            match self.peek() {
                Tok::RBrace if braced => {
                    self.bump();
                    break;
                }
                Tok::Eof if !braced => break,
                Tok::Comma | Tok::Dot => {
                    self.bump();
                    continue;
                }
                _ => {}
            }
            let at = self.offset();
            let lit = match self.elem()? {
                Elem::Lit(l) => l,
                Elem::Builtin(b) => {
                    return Err(self.src.error(
                        at,
                        ParseErrorKind::BuiltinInInterpretation,
                        format!("comparison `{b}` cannot be part of an interpretation"),
                    ))
                }
            };
            if !lit.is_ground() {
                return Err(self.src.error(
                    at,
                    ParseErrorKind::Syntax,
                    format!("interpretation literal `{lit}` must be ground"),
                ));
            }
            if seen.contains_key(&lit.complement()) {
                return Err(self.src.error(
                    at,
                    ParseErrorKind::InconsistentInterpretation,
                    format!("`{lit}` conflicts with `{}`", lit.complement()),
                ));
            }
            seen.entry(lit).or_insert(at);
        }
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("end of input"));
        }
        Ok(Interpretation::new(seen.into_keys()).expect("checked ground and consistent"))
    }
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    Parser::new(text)?.program()
}

/// Parses a program and also reports predicates used with several arities.
/// These remain distinct predicate symbols; the warnings are informational.
pub fn parse_program_with_warnings(text: &str) -> Result<(Program, Vec<ParseError>), ParseError> {
    let program = parse_program(text)?;
    let src = Source { text };
    let mut first_arity: BTreeMap<(Symbol, bool), usize> = BTreeMap::new();
    let mut reported: BTreeSet<(Symbol, bool, usize)> = BTreeSet::new();
    let mut warnings = Vec::new();
    for rule in &program.rules {
        for lit in rule.literals() {
            let key = (lit.eps.name.clone(), lit.eps.negated);
            let arity = *first_arity.entry(key.clone()).or_insert(lit.eps.arity);
            if arity != lit.eps.arity && reported.insert((key.0, key.1, lit.eps.arity)) {
                warnings.push(src.error(
                    rule.span.map_or(0, |s| s.start),
                    ParseErrorKind::ArityClashWarning,
                    format!(
                        "predicate `{}` is used with arities {} and {}; they are treated as different predicates",
                        lit.eps.name, arity, lit.eps.arity
                    ),
                ));
            }
        }
    }
    Ok((program, warnings))
}

pub fn parse_interpretation(text: &str) -> Result<Interpretation, ParseError> {
    Parser::new(text)?.interpretation()
}

/// Parses a single literal, ground or not.
pub fn parse_literal(text: &str) -> Result<Literal, ParseError> {
    let mut p = Parser::new(text)?;
    let at = p.offset();
    let lit = match p.elem()? {
        Elem::Lit(l) => l,
        Elem::Builtin(b) => {
            return Err(p.src.error(
                at,
                ParseErrorKind::BuiltinInInterpretation,
                format!("`{b}` is a comparison, not a literal"),
            ))
        }
    };
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(lit)
}
