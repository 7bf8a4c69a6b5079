use std::fmt::Write as _;

use crate::ast::{Atom, ComparisonOp, Formula, Judgment, QuantBlock, QuantKind, Term};

use super::lexer::{tokenize, Token, TokenKind};
use super::{ParseError, SourceSpan};

/// Token cursor shared by both grammars.
pub(super) struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
    /// Require `f(` with no whitespace for applications; the linear format
    /// needs this to tell `(cond A (not B))` apart from an application.
    glued_applications: bool,
}

impl Cursor {
    pub(super) fn new(input: &str, glued_applications: bool) -> Result<Self, ParseError> {
        Ok(Cursor { tokens: tokenize(input)?, pos: 0, glued_applications })
    }

    pub(super) fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    pub(super) fn peek_at(&self, offset: usize) -> &Token {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx]
    }

    pub(super) fn span(&self) -> SourceSpan {
        self.tokens[self.pos].span
    }

    pub(super) fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    pub(super) fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(super) fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::syntax(self.span(), expected.iter().map(|s| s.to_string()).collect(), self.peek().to_string())
    }

    pub(super) fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek() == kind {
            Ok(self.bump())
        } else {
            Err(self.error(&[what]))
        }
    }

    pub(super) fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    pub(super) fn expect_eof(&mut self) -> Result<(), ParseError> {
        self.expect(&TokenKind::Eof, "end of input").map(|_| ())
    }

    fn application_follows(&self) -> bool {
        let next = self.peek_at(1);
        next.kind == TokenKind::LParen && (!self.glued_applications || next.glued)
    }

    pub(super) fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            TokenKind::Ident(name) => {
                if self.application_follows() {
                    self.bump();
                    self.bump();
                    let args = self.term_list()?;
                    Ok(Term::Application(name, args))
                } else {
                    self.bump();
                    Ok(Term::Variable(name))
                }
            }
            TokenKind::Number(n) => {
                self.bump();
                Ok(Term::Constant(n))
            }
            _ => Err(self.error(&["term"])),
        }
    }

    /// Comma-separated terms after an opening parenthesis, through `)`.
    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                TokenKind::Comma => {
                    self.bump();
                    args.push(self.term()?);
                }
                TokenKind::RParen => {
                    self.bump();
                    return Ok(args);
                }
                _ => return Err(self.error(&["`,`", "`)`"])),
            }
        }
    }

    /// `ident(terms)`, `ident`, or `term cmp term`.
    pub(super) fn atom(&mut self) -> Result<Atom, ParseError> {
        let is_number = matches!(self.peek(), TokenKind::Number(_));
        let left = match self.peek() {
            TokenKind::Ident(_) | TokenKind::Number(_) => self.term()?,
            _ => return Err(self.error(&["atom"])),
        };
        if let TokenKind::Cmp(op) = *self.peek() {
            self.bump();
            let right = self.compare_rhs(op)?;
            return Ok(Atom::Compare(left, op, right));
        }
        if is_number {
            return Err(self.error(&["comparison operator"]));
        }
        Ok(match left {
            Term::Variable(name) => Atom::Prop(name),
            Term::Application(name, args) => Atom::Pred(name, args),
            Term::Constant(_) => unreachable!("identifiers parse as variables"),
        })
    }

    fn compare_rhs(&mut self, op: ComparisonOp) -> Result<Term, ParseError> {
        match op {
            ComparisonOp::In | ComparisonOp::NotIn => match self.peek().clone() {
                TokenKind::Ident(name) if !self.application_follows() => {
                    self.bump();
                    Ok(Term::Constant(name))
                }
                _ => Err(self.error(&["set name"])),
            },
            _ => self.term(),
        }
    }
}

struct ModernParser {
    cur: Cursor,
}

impl ModernParser {
    fn judgment(&mut self) -> Result<Judgment, ParseError> {
        let asserted = self.cur.eat(&TokenKind::Turnstile);
        let body = self.formula()?;
        self.cur.expect_eof()?;
        Ok(Judgment { asserted, body })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.cur.peek() {
            TokenKind::Forall | TokenKind::Exists => self.quant(),
            _ => self.implies(),
        }
    }

    fn quant(&mut self) -> Result<Formula, ParseError> {
        let kind = match self.cur.bump().kind {
            TokenKind::Forall => QuantKind::Forall,
            _ => QuantKind::Exists,
        };
        let mut vars = Vec::new();
        loop {
            let span = self.cur.span();
            let name = self.cur.expect_ident()?;
            if vars.contains(&name) {
                return Err(ParseError::syntax(
                    span,
                    vec!["a variable not already bound by this block".to_string()],
                    format!("repeated variable `{name}`"),
                ));
            }
            vars.push(name);
            if !self.cur.eat(&TokenKind::Comma) {
                break;
            }
        }
        let guard = if self.cur.eat(&TokenKind::LBracket) {
            let g = self.formula()?;
            self.cur.expect(&TokenKind::RBracket, "`]`")?;
            Some(g)
        } else {
            None
        };
        if !self.cur.eat(&TokenKind::Dot) {
            let expected: &[&str] = if guard.is_some() { &["`.`"] } else { &["`,`", "`[`", "`.`"] };
            return Err(self.cur.error(expected));
        }
        let body = self.formula()?;
        Ok(Formula::quant(QuantBlock::new(kind, vars, guard), body))
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.cur.eat(&TokenKind::Arrow) {
            let right = self.implies()?;
            Ok(Formula::cond(left, right))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.cur.eat(&TokenKind::Bar) {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.cur.eat(&TokenKind::Amp) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.cur.peek() {
            TokenKind::Tilde => {
                self.cur.bump();
                Ok(Formula::not(self.unary()?))
            }
            TokenKind::LParen => {
                self.cur.bump();
                let inner = self.formula()?;
                self.cur.expect(&TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(_) | TokenKind::Number(_) => Ok(Formula::Atom(self.cur.atom()?)),
            TokenKind::Forall | TokenKind::Exists => Err(self.cur.error(&["`(` around a quantified subformula"])),
            _ => Err(self.cur.error(&["`~`", "`(`", "atom"])),
        }
    }
}

/// Parses modern notation; a leading `|-` marks an asserted judgment.
pub fn parse_modern(input: &str) -> Result<Judgment, ParseError> {
    ModernParser { cur: Cursor::new(input, false)? }.judgment()
}

const PREC_QUANT: u8 = 0;
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Quant(..) => PREC_QUANT,
        Formula::Cond(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(_) | Formula::Atom(_) => PREC_UNARY,
    }
}

fn write_formula(out: &mut String, f: &Formula, min_prec: u8) {
    if precedence(f) < min_prec {
        out.push('(');
        write_formula(out, f, PREC_QUANT);
        out.push(')');
        return;
    }
    match f {
        Formula::Atom(a) => {
            let _ = write!(out, "{a}");
        }
        Formula::Not(body) => {
            out.push('~');
            write_formula(out, body, PREC_UNARY);
        }
        Formula::Cond(c, a) => {
            write_formula(out, c, PREC_OR);
            out.push_str(" -> ");
            write_formula(out, a, PREC_IMPLIES);
        }
        Formula::Or(l, r) => {
            write_formula(out, l, PREC_OR);
            out.push_str(" | ");
            write_formula(out, r, PREC_AND);
        }
        Formula::And(l, r) => {
            write_formula(out, l, PREC_AND);
            out.push_str(" & ");
            write_formula(out, r, PREC_UNARY);
        }
        Formula::Quant(block, body) => {
            out.push_str(block.kind.keyword());
            out.push(' ');
            out.push_str(&block.vars.join(", "));
            if let Some(g) = &block.guard {
                out.push_str(" [");
                write_formula(out, g, PREC_QUANT);
                out.push(']');
            }
            out.push_str(" . ");
            write_formula(out, body, PREC_QUANT);
        }
    }
}

/// Prints a formula with the fewest parentheses the grammar allows.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, PREC_QUANT);
    out
}

pub fn print_modern(j: &Judgment) -> String {
    let body = print_formula(&j.body);
    if j.asserted {
        format!("|- {body}")
    } else {
        body
    }
}
