//! Formula AST shared by the modern notation and the Begriffsschrift.
//!
//! One tree type serves both notations. The surface connectives `And`, `Or`,
//! existential and guarded blocks live next to the kernel constructors
//! (`Not`, `Cond`, guardless single-variable `Forall`); see [`crate::kernel`]
//! for the rewrites between the two layers.

use std::collections::BTreeSet;
use std::fmt;

/// Words the modern grammar reserves; they can never be identifiers.
pub const KEYWORDS: [&str; 4] = ["forall", "exists", "in", "notin"];

/// Returns true if `name` matches `[A-Za-z][A-Za-z0-9_]*` and is not a keyword.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&name)
}

/// Returns true if `text` is a non-empty run of ASCII digits.
pub fn is_numeral(text: &str) -> bool {
    !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Variable(String),
    /// Named constant (`Nat`, `X`) or decimal literal (`0`).
    Constant(String),
    /// `f(t1, ..., tn)` with n >= 1. Indexed families such as `v_{m,l}(x)`
    /// are flattened to `v(m, l, x)`.
    Application(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Constant(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Application(name.into(), args)
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Variable(name) => {
                out.insert(name.clone());
            }
            Term::Constant(_) => {}
            Term::Application(_, args) => args.iter().for_each(|t| t.collect_variables(out)),
        }
    }

    /// Checks the naming and arity invariants recursively.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Term::Variable(name) => is_identifier(name),
            Term::Constant(name) => is_identifier(name) || is_numeral(name),
            Term::Application(name, args) => {
                is_identifier(name) && !args.is_empty() && args.iter().all(Term::is_well_formed)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Variable(name) | Term::Constant(name) => f.write_str(name),
            Term::Application(name, args) => {
                write!(f, "{name}(")?;
                write_comma_list(f, args)?;
                f.write_str(")")
            }
        }
    }
}

fn write_comma_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComparisonOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    In,
    NotIn,
}

impl ComparisonOp {
    pub const ALL: [ComparisonOp; 8] = [
        ComparisonOp::Lt,
        ComparisonOp::Le,
        ComparisonOp::Gt,
        ComparisonOp::Ge,
        ComparisonOp::Eq,
        ComparisonOp::Ne,
        ComparisonOp::In,
        ComparisonOp::NotIn,
    ];

    /// ASCII spelling used by both printers.
    pub fn symbol(self) -> &'static str {
        match self {
            ComparisonOp::Lt => "<",
            ComparisonOp::Le => "<=",
            ComparisonOp::Gt => ">",
            ComparisonOp::Ge => ">=",
            ComparisonOp::Eq => "=",
            ComparisonOp::Ne => "!=",
            ComparisonOp::In => "in",
            ComparisonOp::NotIn => "notin",
        }
    }

    /// The operator whose relation is the complement of this one.
    pub fn complement(self) -> Self {
        match self {
            ComparisonOp::Lt => ComparisonOp::Ge,
            ComparisonOp::Ge => ComparisonOp::Lt,
            ComparisonOp::Le => ComparisonOp::Gt,
            ComparisonOp::Gt => ComparisonOp::Le,
            ComparisonOp::Eq => ComparisonOp::Ne,
            ComparisonOp::Ne => ComparisonOp::Eq,
            ComparisonOp::In => ComparisonOp::NotIn,
            ComparisonOp::NotIn => ComparisonOp::In,
        }
    }

    /// `(base, positive)`: every operator is either a base relation
    /// (`<`, `<=`, `=`, `in`) or the complement of one.
    pub fn base(self) -> (ComparisonOp, bool) {
        match self {
            ComparisonOp::Lt | ComparisonOp::Le | ComparisonOp::Eq | ComparisonOp::In => (self, true),
            other => (other.complement(), false),
        }
    }
}

impl fmt::Display for ComparisonOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Propositional letter, the arity-0 predicate.
    Prop(String),
    Pred(String, Vec<Term>),
    Compare(Term, ComparisonOp, Term),
}

impl Atom {
    pub fn prop(name: impl Into<String>) -> Self {
        Atom::Prop(name.into())
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Atom::Pred(name.into(), args)
    }

    pub fn compare(left: Term, op: ComparisonOp, right: Term) -> Self {
        Atom::Compare(left, op, right)
    }

    pub fn terms(&self) -> &[Term] {
        match self {
            Atom::Prop(_) => &[],
            Atom::Pred(_, args) => args,
            Atom::Compare(..) => &[],
        }
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Atom::Prop(_) => {}
            Atom::Pred(_, args) => args.iter().for_each(|t| t.collect_variables(out)),
            Atom::Compare(l, _, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    pub fn is_well_formed(&self) -> bool {
        match self {
            Atom::Prop(name) => is_identifier(name),
            Atom::Pred(name, args) => is_identifier(name) && !args.is_empty() && args.iter().all(Term::is_well_formed),
            Atom::Compare(l, op, r) => {
                let set_ok = match op {
                    ComparisonOp::In | ComparisonOp::NotIn => matches!(r, Term::Constant(_)),
                    _ => true,
                };
                set_ok && l.is_well_formed() && r.is_well_formed()
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Prop(name) => f.write_str(name),
            Atom::Pred(name, args) => {
                write!(f, "{name}(")?;
                write_comma_list(f, args)?;
                f.write_str(")")
            }
            Atom::Compare(l, op, r) => write!(f, "{l} {op} {r}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantKind {
    Forall,
    Exists,
}

impl QuantKind {
    pub fn flip(self) -> Self {
        match self {
            QuantKind::Forall => QuantKind::Exists,
            QuantKind::Exists => QuantKind::Forall,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            QuantKind::Forall => "forall",
            QuantKind::Exists => "exists",
        }
    }
}

/// A quantifier prefix such as `exists m, k [m >= n]`.
///
/// Several constraints on one block are stored as a single `And` guard.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantBlock {
    pub kind: QuantKind,
    pub vars: Vec<String>,
    pub guard: Option<Box<Formula>>,
}

impl QuantBlock {
    pub fn new(kind: QuantKind, vars: Vec<String>, guard: Option<Formula>) -> Self {
        QuantBlock { kind, vars, guard: guard.map(Box::new) }
    }

    pub fn forall(vars: &[&str]) -> Self {
        Self::new(QuantKind::Forall, vars.iter().map(|v| v.to_string()).collect(), None)
    }

    pub fn exists(vars: &[&str]) -> Self {
        Self::new(QuantKind::Exists, vars.iter().map(|v| v.to_string()).collect(), None)
    }

    pub fn with_guard(mut self, guard: Formula) -> Self {
        self.guard = Some(Box::new(guard));
        self
    }

    pub fn has_distinct_vars(&self) -> bool {
        let set: BTreeSet<&String> = self.vars.iter().collect();
        set.len() == self.vars.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    /// `Cond(condition, consequent)` reads "condition implies consequent".
    Cond(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Quant(QuantBlock, Box<Formula>),
}

/// The node type of a [`Formula`], without its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Atom(Atom),
    Not,
    Cond,
    And,
    Or,
    Quant(QuantKind, Vec<String>, bool),
}

impl Formula {
    pub fn atom(atom: Atom) -> Self {
        Formula::Atom(atom)
    }

    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Atom(Atom::prop(name))
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::pred(name, args))
    }

    pub fn compare(left: Term, op: ComparisonOp, right: Term) -> Self {
        Formula::Atom(Atom::compare(left, op, right))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(body: Formula) -> Self {
        Formula::Not(Box::new(body))
    }

    pub fn cond(condition: Formula, consequent: Formula) -> Self {
        Formula::Cond(Box::new(condition), Box::new(consequent))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn quant(block: QuantBlock, body: Formula) -> Self {
        Formula::Quant(block, Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Self {
        Formula::quant(QuantBlock::forall(&[var]), body)
    }

    pub fn exists(var: &str, body: Formula) -> Self {
        Formula::quant(QuantBlock::exists(&[var]), body)
    }

    /// Direct subformulas in a fixed order: guard before body, condition
    /// before consequent, left before right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Not(body) => vec![body],
            Formula::Cond(c, a) | Formula::And(c, a) | Formula::Or(c, a) => vec![c, a],
            Formula::Quant(block, body) => match &block.guard {
                Some(g) => vec![g, body],
                None => vec![body],
            },
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Formula::Atom(a) => Shape::Atom(a.clone()),
            Formula::Not(_) => Shape::Not,
            Formula::Cond(..) => Shape::Cond,
            Formula::And(..) => Shape::And,
            Formula::Or(..) => Shape::Or,
            Formula::Quant(b, _) => Shape::Quant(b.kind, b.vars.clone(), b.guard.is_some()),
        }
    }

    /// Inverse of [`Formula::shape`] + [`Formula::children`]. Returns `None`
    /// if the child count does not fit the shape.
    pub fn rebuild(shape: Shape, mut children: Vec<Formula>) -> Option<Formula> {
        let pop2 = |mut c: Vec<Formula>| -> Option<(Formula, Formula)> {
            if c.len() != 2 {
                return None;
            }
            let second = c.pop()?;
            let first = c.pop()?;
            Some((first, second))
        };
        match shape {
            Shape::Atom(a) => children.is_empty().then_some(Formula::Atom(a)),
            Shape::Not => (children.len() == 1).then(|| Formula::not(children.remove(0))),
            Shape::Cond => pop2(children).map(|(c, a)| Formula::cond(c, a)),
            Shape::And => pop2(children).map(|(l, r)| Formula::and(l, r)),
            Shape::Or => pop2(children).map(|(l, r)| Formula::or(l, r)),
            Shape::Quant(kind, vars, guarded) => {
                if guarded {
                    let (g, body) = pop2(children)?;
                    Some(Formula::quant(QuantBlock::new(kind, vars, Some(g)), body))
                } else {
                    (children.len() == 1).then(|| Formula::quant(QuantBlock::new(kind, vars, None), children.remove(0)))
                }
            }
        }
    }

    /// Variables occurring outside every block that binds them.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(atom) => {
                let mut vars = BTreeSet::new();
                atom.collect_variables(&mut vars);
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(body) => body.collect_free(bound, out),
            Formula::Cond(l, r) | Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Quant(block, body) => {
                let depth = bound.len();
                bound.extend(block.vars.iter().cloned());
                if let Some(guard) = &block.guard {
                    guard.collect_free(bound, out);
                }
                body.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    /// Node-for-node identity: no renaming of bound variables, no
    /// commutativity, no double-negation elimination.
    pub fn structurally_equal(&self, other: &Formula) -> bool {
        self == other
    }

    /// Pre-order iterator over all subformulas, guards included.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            stack.extend(f.children().into_iter().rev());
        }
        out
    }

    pub fn count_nodes(&self, pred: impl Fn(&Formula) -> bool) -> usize {
        self.subformulas().into_iter().filter(|f| pred(f)).count()
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.subformulas().iter().all(|f| !matches!(f, Formula::Quant(..)))
    }

    /// Quantifier-free with only propositional letters as atoms.
    pub fn is_propositional(&self) -> bool {
        self.subformulas().iter().all(|f| match f {
            Formula::Quant(..) => false,
            Formula::Atom(a) => matches!(a, Atom::Prop(_)),
            _ => true,
        })
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Checks identifier syntax, arities, and distinct block variables.
    pub fn is_well_formed(&self) -> bool {
        self.subformulas().iter().all(|f| match f {
            Formula::Atom(a) => a.is_well_formed(),
            Formula::Quant(b, _) => {
                !b.vars.is_empty() && b.has_distinct_vars() && b.vars.iter().all(|v| is_identifier(v))
            }
            _ => true,
        })
    }
}

impl From<Atom> for Formula {
    fn from(atom: Atom) -> Self {
        Formula::Atom(atom)
    }
}

/// A formula under the content stroke (`asserted == false`) or under the
/// judgment stroke (`asserted == true`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub asserted: bool,
    pub body: Formula,
}

impl Judgment {
    pub fn content(body: Formula) -> Self {
        Judgment { asserted: false, body }
    }

    pub fn judge(body: Formula) -> Self {
        Judgment { asserted: true, body }
    }

    pub fn map(self, f: impl FnOnce(Formula) -> Formula) -> Self {
        Judgment { asserted: self.asserted, body: f(self.body) }
    }

    pub fn structurally_equal(&self, other: &Judgment) -> bool {
        self.asserted == other.asserted && self.body.structurally_equal(&other.body)
    }
}
