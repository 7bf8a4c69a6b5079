use crate::ast::{Formula, Judgment, QuantBlock, QuantKind};
use crate::kernel::KernelError;

use super::lexer::TokenKind;
use super::modern::Cursor;
use super::{ParseError, ParseErrorKind};

const SURFACE_WORDS: [&str; 6] = ["and", "or", "exists", "some", "implies", "iff"];

struct LbsParser {
    cur: Cursor,
}

impl LbsParser {
    fn judgment(&mut self) -> Result<Judgment, ParseError> {
        self.cur.expect(&TokenKind::LParen, "`(`")?;
        let asserted = match self.cur.peek() {
            TokenKind::Ident(w) if w == "judge" => true,
            TokenKind::Ident(w) if w == "content" => false,
            _ => return Err(self.cur.error(&["`judge`", "`content`"])),
        };
        self.cur.bump();
        let body = self.formula()?;
        self.cur.expect(&TokenKind::RParen, "`)`")?;
        self.cur.expect_eof()?;
        Ok(Judgment { asserted, body })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        if !self.cur.eat(&TokenKind::LParen) {
            return Ok(Formula::Atom(self.cur.atom()?));
        }
        let head = self.cur.peek().clone();
        let word = match &head {
            TokenKind::Ident(w) => w.as_str(),
            TokenKind::Exists | TokenKind::Forall => "",
            _ => return Err(self.cur.error(&["`not`", "`cond`", "`all`"])),
        };
        let f = match word {
            "not" => {
                self.cur.bump();
                Formula::not(self.formula()?)
            }
            "cond" => {
                self.cur.bump();
                let condition = self.formula()?;
                let consequent = self.formula()?;
                Formula::cond(condition, consequent)
            }
            "all" => {
                self.cur.bump();
                self.forall()?
            }
            w if w.is_empty() || SURFACE_WORDS.contains(&w) => {
                return Err(ParseError {
                    kind: ParseErrorKind::NonKernel,
                    span: self.cur.span(),
                    expected: vec!["`not`".into(), "`cond`".into(), "`all`".into()],
                    found: head.to_string(),
                });
            }
            _ => return Err(self.cur.error(&["`not`", "`cond`", "`all`"])),
        };
        self.cur.expect(&TokenKind::RParen, "`)`")?;
        Ok(f)
    }

    fn forall(&mut self) -> Result<Formula, ParseError> {
        let mut vars = vec![self.cur.expect_ident()?];
        while let TokenKind::Ident(name) = self.cur.peek().clone() {
            if vars.contains(&name) {
                return Err(self.cur.error(&["a variable not already bound by this block"]));
            }
            self.cur.bump();
            vars.push(name);
        }
        if !self.cur.eat(&TokenKind::Colon) {
            return Err(self.cur.error(&["identifier", "`:`"]));
        }
        let guard = if self.cur.eat(&TokenKind::FatArrow) {
            None
        } else {
            let g = self.formula()?;
            self.cur.expect(&TokenKind::FatArrow, "`=>`")?;
            Some(g)
        };
        let body = self.formula()?;
        Ok(Formula::quant(QuantBlock::new(QuantKind::Forall, vars, guard), body))
    }
}

/// Parses the linear serialization; surface connectives are rejected with a
/// [`ParseErrorKind::NonKernel`] error.
pub fn parse_lbs(input: &str) -> Result<Judgment, ParseError> {
    LbsParser { cur: Cursor::new(input, true)? }.judgment()
}

fn write_lbs(out: &mut String, f: &Formula) -> Result<(), KernelError> {
    match f {
        Formula::Atom(a) => out.push_str(&a.to_string()),
        Formula::Not(body) => {
            out.push_str("(not ");
            write_lbs(out, body)?;
            out.push(')');
        }
        Formula::Cond(c, a) => {
            out.push_str("(cond ");
            write_lbs(out, c)?;
            out.push(' ');
            write_lbs(out, a)?;
            out.push(')');
        }
        Formula::Quant(block, body) if block.kind == QuantKind::Forall => {
            out.push_str("(all ");
            out.push_str(&block.vars.join(" "));
            out.push_str(" : ");
            if let Some(g) = &block.guard {
                write_lbs(out, g)?;
                out.push(' ');
            }
            out.push_str("=> ");
            write_lbs(out, body)?;
            out.push(')');
        }
        Formula::Quant(..) => return Err(KernelError::new("exists block", f)),
        Formula::And(..) => return Err(KernelError::new("conjunction", f)),
        Formula::Or(..) => return Err(KernelError::new("disjunction", f)),
    }
    Ok(())
}

/// Canonical linear serialization. Multi-variable and guarded universal
/// blocks are written as-is; conjunction, disjunction and existential
/// blocks are refused.
pub fn print_lbs(j: &Judgment) -> Result<String, KernelError> {
    let mut out = String::from(if j.asserted { "(judge " } else { "(content " });
    write_lbs(&mut out, &j.body)?;
    out.push(')');
    Ok(out)
}
