//! Frege's Begriffsschrift and modern first-order notation.
//!
//! Formulas parse from modern text or from a linear serialization of the
//! two-dimensional diagrams, translate to and from the kernel connectives
//! `{not, cond, all}`, evaluate over truth tables and finite models, and
//! render as text or SVG diagrams.

pub mod ast;
pub mod cli;
pub mod kernel;
pub mod layout;
pub mod semantics;
pub mod syntax;

pub use ast::{Atom, ComparisonOp, Formula, Judgment, QuantBlock, QuantKind, Term};
pub use kernel::{
    desugar, desugar_with, is_kernel, negate, resugar, resugar_with, DesugarOptions, EncodingMode, KernelError,
};
pub use syntax::{parse_lbs, parse_modern, print_lbs, print_modern, ParseError, SourceSpan};
