//! Text formats: modern notation and the linear Begriffsschrift serialization.
//!
//! Modern grammar (ASCII spellings; `∀ ∃ ¬ ∧ ∨ → ≤ ≥ ∈` are accepted as aliases):
//!
//! ```text
//! judgment := ("|-")? formula
//! formula  := quant | implies
//! quant    := ("forall" | "exists") ident ("," ident)* ("[" formula "]")? "." formula
//! implies  := or ("->" implies)?
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "~" unary | "(" formula ")" | atom
//! atom     := ident "(" terms ")" | ident | term cmp term
//! ```
//!
//! The linear serialization only admits kernel nodes:
//!
//! ```text
//! lbs := "(judge" f ")" | "(content" f ")"
//! f   := "(not" f ")" | "(cond" f f ")" | "(all" ident+ ":" f? "=>" f ")" | atom
//! ```

mod lbs;
mod lexer;
mod modern;

use std::fmt;

pub use lbs::{parse_lbs, print_lbs};
pub use lexer::{tokenize, Token, TokenKind};
pub use modern::{parse_modern, print_formula, print_modern};

/// Byte range `[start, end)` into the parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    /// 1-based line and column (in characters) of `start`.
    pub fn line_col(&self, input: &str) -> (usize, usize) {
        let before = &input[..self.start.min(input.len())];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
        let col = before[line_start..].chars().count() + 1;
        (line, col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// A surface connective showed up where only kernel nodes are allowed.
    NonKernel,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub(crate) fn syntax(span: SourceSpan, expected: Vec<String>, found: String) -> Self {
        debug_assert!(!expected.is_empty());
        ParseError { kind: ParseErrorKind::Syntax, span, expected, found }
    }

    /// Multi-line diagnostic with a caret under the offending span.
    pub fn render(&self, input: &str) -> String {
        let (line, col) = self.span.line_col(input);
        let text = input.lines().nth(line - 1).unwrap_or("");
        let width = input[self.span.start.min(input.len())..self.span.end.min(input.len())].chars().count().max(1);
        format!("error at {line}:{col}: {self}\n  {text}\n  {}{}\n", " ".repeat(col - 1), "^".repeat(width))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == ParseErrorKind::NonKernel {
            return write!(f, "{} is not a kernel connective; only not, cond and all may appear here", self.found);
        }
        match self.expected.as_slice() {
            [one] => write!(f, "expected {one}, found {}", self.found),
            many => write!(f, "expected one of {}, found {}", many.join(", "), self.found),
        }
    }
}
