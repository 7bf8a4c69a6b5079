//! Rewrites between the surface connectives and the kernel `{not, cond, all}`.
//!
//! Disjunction becomes `cond (not B) A`, conjunction `not (cond B (not A))`,
//! and an existential block `not (all (not ..))`. Guarded universal blocks
//! turn their guard into the condition of a conditional stroke.

use std::collections::BTreeSet;
use std::fmt;

use crate::ast::{Atom, Formula, QuantBlock, QuantKind};
use crate::syntax::print_formula;

/// How a guarded existential block is encoded.
///
/// `Faithful` writes `exists x [G] . P` as `not (all x (not (cond G P)))`,
/// the shape of the classic continuity diagram. This is *not*
/// classically equivalent to `exists x . G & P`. `Classical` encodes the
/// conjunction. Conjunctive guards are curried into stacked conditions in
/// `Faithful` mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EncodingMode {
    Faithful,
    #[default]
    Classical,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{construct} is outside the kernel: {formula}")]
pub struct KernelError {
    pub construct: &'static str,
    pub formula: String,
}

impl KernelError {
    pub(crate) fn new(construct: &'static str, f: &Formula) -> Self {
        KernelError { construct, formula: print_formula(f) }
    }
}

/// Options for [`desugar_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesugarOptions {
    pub mode: EncodingMode,
    /// Keep `forall m, k` as one block (one concavity carrying several
    /// letters) instead of nesting single-variable blocks.
    pub group_blocks: bool,
}

impl DesugarOptions {
    pub fn new(mode: EncodingMode) -> Self {
        DesugarOptions { mode, group_blocks: false }
    }

    pub fn grouped(mode: EncodingMode) -> Self {
        DesugarOptions { mode, group_blocks: true }
    }
}

/// Rewrites into the kernel with single-variable, guardless universal blocks.
pub fn desugar(f: &Formula, mode: EncodingMode) -> Formula {
    desugar_with(f, DesugarOptions::new(mode))
}

pub fn desugar_with(f: &Formula, opts: DesugarOptions) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(body) => Formula::not(desugar_with(body, opts)),
        Formula::Cond(c, a) => Formula::cond(desugar_with(c, opts), desugar_with(a, opts)),
        Formula::Or(a, b) => Formula::cond(Formula::not(desugar_with(b, opts)), desugar_with(a, opts)),
        Formula::And(a, b) => Formula::not(Formula::cond(desugar_with(b, opts), Formula::not(desugar_with(a, opts)))),
        Formula::Quant(block, body) => {
            let matrix = match (&block.guard, block.kind, opts.mode) {
                (None, _, _) => desugar_with(body, opts),
                (Some(g), QuantKind::Exists, EncodingMode::Classical) => {
                    desugar_with(&Formula::and((**g).clone(), (**body).clone()), opts)
                }
                (Some(g), QuantKind::Forall, EncodingMode::Classical) => {
                    Formula::cond(desugar_with(g, opts), desugar_with(body, opts))
                }
                (Some(g), _, EncodingMode::Faithful) => conjuncts(g)
                    .into_iter()
                    .rev()
                    .fold(desugar_with(body, opts), |acc, c| Formula::cond(desugar_with(c, opts), acc)),
            };
            match block.kind {
                QuantKind::Forall => wrap_forall(&block.vars, matrix, opts.group_blocks),
                QuantKind::Exists => Formula::not(wrap_forall(&block.vars, Formula::not(matrix), opts.group_blocks)),
            }
        }
    }
}

/// Leaves of the `And` tree, left to right.
fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(l, r) => {
            let mut out = conjuncts(l);
            out.extend(conjuncts(r));
            out
        }
        other => vec![other],
    }
}

fn wrap_forall(vars: &[String], body: Formula, grouped: bool) -> Formula {
    if grouped {
        Formula::quant(QuantBlock::new(QuantKind::Forall, vars.to_vec(), None), body)
    } else {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::quant(QuantBlock::new(QuantKind::Forall, vec![v.clone()], None), acc))
    }
}

/// Only atoms, negations, conditionals and guardless single-variable
/// universal blocks.
pub fn is_kernel(f: &Formula) -> bool {
    check_kernel(f, false).is_ok()
}

/// Like [`is_kernel`], but a universal block may bind several variables.
pub fn is_grouped_kernel(f: &Formula) -> bool {
    check_kernel(f, true).is_ok()
}

pub fn check_kernel(f: &Formula, allow_groups: bool) -> Result<(), KernelError> {
    for sub in f.subformulas() {
        match sub {
            Formula::And(..) => return Err(KernelError::new("conjunction", sub)),
            Formula::Or(..) => return Err(KernelError::new("disjunction", sub)),
            Formula::Quant(b, _) if b.kind == QuantKind::Exists => return Err(KernelError::new("exists block", sub)),
            Formula::Quant(b, _) if b.guard.is_some() => return Err(KernelError::new("guarded block", sub)),
            Formula::Quant(b, _) if b.vars.len() != 1 && !allow_groups => {
                return Err(KernelError::new("multi-variable block", sub))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Reads a kernel formula back with surface connectives ([`EncodingMode::Classical`]).
pub fn resugar(f: &Formula) -> Formula {
    resugar_with(f, EncodingMode::Classical)
}

/// Inverse patterns, outermost first, in priority order:
///
/// 1. `not (all x.. (not P))` becomes `exists x.. P`
/// 2. `not (cond B (not A))` becomes `A & B`; `not (cond B A)` becomes `B & ~A`
/// 3. `cond (not B) A` becomes `A | B`
/// 4. `not (not P)` becomes `P`
///
/// A condition that is itself a negated conditional or a negated universal
/// block stays a condition, so `cond (not (cond C (not B))) A` reads as
/// `B & C -> A` rather than a disjunction. Nested universal blocks merge,
/// and a leading condition that mentions a block variable is read back as
/// the block's guard. In `Faithful` mode, guards of existential blocks are
/// recovered from conditions and chained conditions fold into one
/// conjunctive guard.
pub fn resugar_with(f: &Formula, mode: EncodingMode) -> Formula {
    Resugar { mode }.apply(f)
}

struct Resugar {
    mode: EncodingMode,
}

impl Resugar {
    fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(_) => f.clone(),
            Formula::Not(inner) => {
                if let Some((groups, body)) = negated_forall_chain(inner) {
                    return self.exists_blocks(groups, body);
                }
                match &**inner {
                    Formula::Cond(b, a) => match &**a {
                        Formula::Not(a) => Formula::and(self.apply(a), self.apply(b)),
                        _ => Formula::and(self.apply(b), self.apply(&Formula::not((**a).clone()))),
                    },
                    Formula::Not(x) => self.apply(x),
                    _ => Formula::not(self.apply(inner)),
                }
            }
            Formula::Cond(c, a) => match &**c {
                Formula::Not(b) if !reads_as_compound(b) => Formula::or(self.apply(a), self.apply(b)),
                _ => Formula::cond(self.apply(c), self.apply(a)),
            },
            Formula::Quant(block, body) if block.kind == QuantKind::Forall && block.guard.is_none() => {
                let (groups, body) = forall_chain(f);
                self.forall_blocks(groups, body)
            }
            Formula::Quant(block, body) => {
                let guard = block.guard.as_ref().map(|g| self.apply(g));
                Formula::quant(QuantBlock::new(block.kind, block.vars.clone(), guard), self.apply(body))
            }
            Formula::And(l, r) => Formula::and(self.apply(l), self.apply(r)),
            Formula::Or(l, r) => Formula::or(self.apply(l), self.apply(r)),
        }
    }

    fn forall_blocks(&self, groups: Vec<Vec<String>>, body: &Formula) -> Formula {
        let read = self.apply(body);
        let innermost = groups.last().expect("at least one block");
        let (guard, matrix) = match self.mode {
            EncodingMode::Classical => match read {
                Formula::Cond(g, m) if mentions_any(&g, innermost) => (Some(*g), *m),
                other => (None, other),
            },
            EncodingMode::Faithful => fold_guards(read, innermost),
        };
        build_blocks(QuantKind::Forall, groups, guard, matrix)
    }

    fn exists_blocks(&self, groups: Vec<Vec<String>>, body: &Formula) -> Formula {
        let innermost = groups.last().expect("at least one block");
        let (guard, matrix) = match self.mode {
            EncodingMode::Classical => match self.apply(body) {
                Formula::And(g, m) if mentions_any(&g, innermost) => (Some(*g), *m),
                other => (None, other),
            },
            EncodingMode::Faithful => match body {
                Formula::Cond(c, a) if mentions_any(c, innermost) => {
                    fold_guards(Formula::cond(self.apply(c), self.apply(a)), innermost)
                }
                _ => (None, self.apply(body)),
            },
        };
        build_blocks(QuantKind::Exists, groups, guard, matrix)
    }
}

/// Folds leading conditions that mention a block variable into one guard.
fn fold_guards(read: Formula, vars: &[String]) -> (Option<Formula>, Formula) {
    let mut guard: Option<Formula> = None;
    let mut rest = read;
    loop {
        match rest {
            Formula::Cond(c, a) if mentions_any(&c, vars) => {
                guard = Some(match guard {
                    None => *c,
                    Some(g) => Formula::and(g, *c),
                });
                rest = *a;
            }
            other => return (guard, other),
        }
    }
}

fn build_blocks(kind: QuantKind, groups: Vec<Vec<String>>, guard: Option<Formula>, matrix: Formula) -> Formula {
    let last = groups.len() - 1;
    let mut guard = guard;
    groups.into_iter().enumerate().rev().fold(matrix, |acc, (i, vars)| {
        let g = if i == last { guard.take() } else { None };
        Formula::quant(QuantBlock::new(kind, vars, g), acc)
    })
}

fn mentions_any(f: &Formula, vars: &[String]) -> bool {
    let free = f.free_variables();
    vars.iter().any(|v| free.contains(v))
}

/// Whether `not b`, as a condition, resugars into a conjunction or an
/// existential block rather than a plain negation.
fn reads_as_compound(b: &Formula) -> bool {
    matches!(b, Formula::Cond(..)) || negated_forall_chain(b).is_some()
}

/// Collects a run of nested guardless universal blocks. Variables are
/// grouped so that no group repeats a name.
fn forall_chain(f: &Formula) -> (Vec<Vec<String>>, &Formula) {
    let mut groups: Vec<Vec<String>> = vec![Vec::new()];
    let mut cur = f;
    while let Formula::Quant(block, body) = cur {
        if block.kind != QuantKind::Forall || block.guard.is_some() {
            break;
        }
        for v in &block.vars {
            let group = groups.last_mut().expect("non-empty");
            if group.contains(v) {
                groups.push(vec![v.clone()]);
            } else {
                group.push(v.clone());
            }
        }
        cur = body;
    }
    (groups, cur)
}

/// Matches `all x.. (not P)` and returns the variable groups and `P`.
fn negated_forall_chain(f: &Formula) -> Option<(Vec<Vec<String>>, &Formula)> {
    if !matches!(f, Formula::Quant(b, _) if b.kind == QuantKind::Forall && b.guard.is_none()) {
        return None;
    }
    match forall_chain(f) {
        (groups, Formula::Not(p)) => Some((groups, p)),
        _ => None,
    }
}

/// Pushes a negation inward.
///
/// Quantifier kinds flip and guards stay as they are; conditionals become
/// `B & not A`; comparisons flip to their complement (`<` and `>=`, `<=`
/// and `>`, `=` and `!=`, `in` and `notin`). Outside guards, the result
/// has negations only directly above propositional letters and
/// predicate applications.
pub fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Atom(Atom::Compare(l, op, r)) => Formula::compare(l.clone(), op.complement(), r.clone()),
        Formula::Atom(_) => Formula::not(f.clone()),
        Formula::Not(body) => positive(body),
        Formula::Cond(b, a) => Formula::and(positive(b), negate(a)),
        Formula::And(l, r) => Formula::or(negate(l), negate(r)),
        Formula::Or(l, r) => Formula::and(negate(l), negate(r)),
        Formula::Quant(block, body) => Formula::quant(
            QuantBlock { kind: block.kind.flip(), vars: block.vars.clone(), guard: block.guard.clone() },
            negate(body),
        ),
    }
}

/// Negation normal form of `f` itself (the dual of [`negate`]).
pub fn positive(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(body) => negate(body),
        Formula::Cond(b, a) => Formula::cond(positive(b), positive(a)),
        Formula::And(l, r) => Formula::and(positive(l), positive(r)),
        Formula::Or(l, r) => Formula::or(positive(l), positive(r)),
        Formula::Quant(block, body) => Formula::quant(block.clone(), positive(body)),
    }
}

/// True if no `Not` sits above anything but a propositional letter or a
/// predicate application, guards excepted.
pub fn is_negation_normal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Not(body) => matches!(&**body, Formula::Atom(Atom::Prop(_) | Atom::Pred(..))),
        Formula::Cond(l, r) | Formula::And(l, r) | Formula::Or(l, r) => is_negation_normal(l) && is_negation_normal(r),
        Formula::Quant(_, body) => is_negation_normal(body),
    }
}

/// Kernel patterns left in a resugared formula, by name. Empty when
/// [`resugar`] did its job.
pub fn residual_patterns(f: &Formula) -> BTreeSet<&'static str> {
    let mut found = BTreeSet::new();
    for sub in f.subformulas() {
        match sub {
            Formula::Not(inner) => {
                if negated_forall_chain(inner).is_some() {
                    found.insert("exists");
                }
                match &**inner {
                    Formula::Cond(..) => {
                        found.insert("and");
                    }
                    Formula::Not(_) => {
                        found.insert("double negation");
                    }
                    _ => {}
                }
            }
            Formula::Cond(c, _) => {
                if let Formula::Not(b) = &**c {
                    if !reads_as_compound(b) {
                        found.insert("or");
                    }
                }
            }
            _ => {}
        }
    }
    found
}

impl fmt::Display for EncodingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingMode::Faithful => "faithful",
            EncodingMode::Classical => "classical",
        })
    }
}
