use std::fmt;

use crate::ast::ComparisonOp;

use super::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    FatArrow,
    Arrow,
    Turnstile,
    Bar,
    Amp,
    Tilde,
    Cmp(ComparisonOp),
    Forall,
    Exists,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Number(n) => write!(f, "number `{n}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::FatArrow => f.write_str("`=>`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Turnstile => f.write_str("`|-`"),
            TokenKind::Bar => f.write_str("`|`"),
            TokenKind::Amp => f.write_str("`&`"),
            TokenKind::Tilde => f.write_str("`~`"),
            TokenKind::Cmp(op) => write!(f, "`{op}`"),
            TokenKind::Forall => f.write_str("`forall`"),
            TokenKind::Exists => f.write_str("`exists`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
    /// No whitespace separates this token from the previous one.
    pub glued: bool,
}

fn single_char_token(c: char) -> Option<TokenKind> {
    Some(match c {
        '(' => TokenKind::LParen,
        ')' => TokenKind::RParen,
        '[' => TokenKind::LBracket,
        ']' => TokenKind::RBracket,
        ',' => TokenKind::Comma,
        '.' => TokenKind::Dot,
        ':' => TokenKind::Colon,
        '&' | '∧' => TokenKind::Amp,
        '~' | '¬' => TokenKind::Tilde,
        '∨' => TokenKind::Bar,
        '→' | '⇒' => TokenKind::Arrow,
        '⊢' => TokenKind::Turnstile,
        '∀' => TokenKind::Forall,
        '∃' => TokenKind::Exists,
        '≤' => TokenKind::Cmp(ComparisonOp::Le),
        '≥' => TokenKind::Cmp(ComparisonOp::Ge),
        '≠' => TokenKind::Cmp(ComparisonOp::Ne),
        '∈' => TokenKind::Cmp(ComparisonOp::In),
        '∉' => TokenKind::Cmp(ComparisonOp::NotIn),
        'ℕ' => TokenKind::Ident("Nat".to_string()),
        _ => return None,
    })
}

const TWO_CHAR_TOKENS: [(&str, TokenKind); 6] = [
    ("|-", TokenKind::Turnstile),
    ("->", TokenKind::Arrow),
    ("=>", TokenKind::FatArrow),
    ("<=", TokenKind::Cmp(ComparisonOp::Le)),
    (">=", TokenKind::Cmp(ComparisonOp::Ge)),
    ("!=", TokenKind::Cmp(ComparisonOp::Ne)),
];

pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    let mut glued = false;
    while pos < input.len() {
        let rest = &input[pos..];
        let c = rest.chars().next().expect("non-empty");
        if c.is_whitespace() {
            pos += c.len_utf8();
            glued = false;
            continue;
        }
        let start = pos;
        let kind = if let Some((text, kind)) = TWO_CHAR_TOKENS.iter().find(|(t, _)| rest.starts_with(t)) {
            pos += text.len();
            kind.clone()
        } else if c.is_ascii_alphabetic() {
            let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
            pos += len;
            match &rest[..len] {
                "forall" => TokenKind::Forall,
                "exists" => TokenKind::Exists,
                "in" => TokenKind::Cmp(ComparisonOp::In),
                "notin" => TokenKind::Cmp(ComparisonOp::NotIn),
                word => TokenKind::Ident(word.to_string()),
            }
        } else if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            pos += len;
            TokenKind::Number(rest[..len].to_string())
        } else {
            pos += c.len_utf8();
            match c {
                '<' => TokenKind::Cmp(ComparisonOp::Lt),
                '>' => TokenKind::Cmp(ComparisonOp::Gt),
                '=' => TokenKind::Cmp(ComparisonOp::Eq),
                '|' => TokenKind::Bar,
                other => match single_char_token(other) {
                    Some(kind) => kind,
                    None => {
                        return Err(ParseError::syntax(
                            SourceSpan::new(start, pos),
                            vec!["a token".to_string()],
                            format!("character `{other}`"),
                        ))
                    }
                },
            }
        };
        tokens.push(Token { kind, span: SourceSpan::new(start, pos), glued });
        glued = true;
    }
    tokens.push(Token { kind: TokenKind::Eof, span: SourceSpan::new(input.len(), input.len()), glued });
    Ok(tokens)
}
