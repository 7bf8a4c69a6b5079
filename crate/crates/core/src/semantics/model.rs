use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::ast::{Atom, ComparisonOp, Formula, QuantKind, Term};

use super::SemanticsError;

/// Variable environment: variable name to domain element.
pub type Env = BTreeMap<String, usize>;

/// A finite structure over the domain `{0, .., domain_size - 1}`.
///
/// Comparison atoms are uninterpreted: `<`, `<=`, `=` and `in` each have a
/// relation table, and `>=`, `>`, `!=`, `notin` are read as their
/// complements. Propositional letters are predicates of arity 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub domain_size: usize,
    pub predicates: BTreeMap<(String, usize), BTreeSet<Vec<usize>>>,
    /// Keyed by the base operator (see [`ComparisonOp::base`]).
    pub relations: BTreeMap<ComparisonOp, BTreeSet<(usize, usize)>>,
    pub constants: BTreeMap<String, usize>,
    /// Row-major value tables: the entry for `(a0, .., ak)` sits at index
    /// `a0 * n^k + .. + ak`.
    pub functions: BTreeMap<(String, usize), Vec<usize>>,
}

impl Interpretation {
    pub fn new(domain_size: usize) -> Self {
        assert!(domain_size >= 1, "domain must be non-empty");
        Interpretation {
            domain_size,
            predicates: BTreeMap::new(),
            relations: BTreeMap::new(),
            constants: BTreeMap::new(),
            functions: BTreeMap::new(),
        }
    }

    pub fn with_predicate(mut self, name: &str, tuples: &[&[usize]]) -> Self {
        let arity = tuples.first().map(|t| t.len()).unwrap_or(1);
        self.set_predicate(name, arity, tuples.iter().map(|t| t.to_vec()).collect());
        self
    }

    pub fn set_predicate(&mut self, name: &str, arity: usize, tuples: BTreeSet<Vec<usize>>) {
        debug_assert!(tuples.iter().all(|t| t.len() == arity && t.iter().all(|&e| e < self.domain_size)));
        self.predicates.insert((name.to_string(), arity), tuples);
    }

    pub fn with_prop(mut self, name: &str, value: bool) -> Self {
        let tuples = if value { BTreeSet::from([vec![]]) } else { BTreeSet::new() };
        self.predicates.insert((name.to_string(), 0), tuples);
        self
    }

    fn term(&self, t: &Term, env: &Env) -> Result<usize, SemanticsError> {
        match t {
            Term::Variable(name) => env.get(name).copied().ok_or_else(|| SemanticsError::UnboundVariable(name.clone())),
            Term::Constant(name) => {
                self.constants.get(name).copied().ok_or_else(|| SemanticsError::MissingSymbol(name.clone()))
            }
            Term::Application(name, args) => {
                let table = self
                    .functions
                    .get(&(name.clone(), args.len()))
                    .ok_or_else(|| SemanticsError::MissingSymbol(format!("{name}/{}", args.len())))?;
                let mut index = 0;
                for arg in args {
                    index = index * self.domain_size + self.term(arg, env)?;
                }
                Ok(table[index])
            }
        }
    }

    fn atom(&self, atom: &Atom, env: &Env) -> Result<bool, SemanticsError> {
        match atom {
            Atom::Prop(name) => self.holds(name, Vec::new()),
            Atom::Pred(name, args) => {
                let tuple = args.iter().map(|t| self.term(t, env)).collect::<Result<Vec<_>, _>>()?;
                self.holds(name, tuple)
            }
            Atom::Compare(l, op, r) => {
                let pair = (self.term(l, env)?, self.term(r, env)?);
                let (base, positive) = op.base();
                let table = self
                    .relations
                    .get(&base)
                    .ok_or_else(|| SemanticsError::MissingSymbol(format!("({})", base.symbol())))?;
                Ok(table.contains(&pair) == positive)
            }
        }
    }

    fn holds(&self, name: &str, tuple: Vec<usize>) -> Result<bool, SemanticsError> {
        let table = self
            .predicates
            .get(&(name.to_string(), tuple.len()))
            .ok_or_else(|| SemanticsError::MissingSymbol(format!("{name}/{}", tuple.len())))?;
        Ok(table.contains(&tuple))
    }

    /// `domain=2 F={0}` style listing of every symbol.
    pub fn describe(&self, env: &Env) -> String {
        let mut out = format!("domain={}", self.domain_size);
        for ((name, arity), tuples) in &self.predicates {
            match arity {
                0 => {
                    let _ = write!(out, " {name}={}", if tuples.is_empty() { "f" } else { "w" });
                }
                1 => {
                    let items: Vec<String> = tuples.iter().map(|t| t[0].to_string()).collect();
                    let _ = write!(out, " {name}={{{}}}", items.join(","));
                }
                _ => {
                    let items: Vec<String> = tuples.iter().map(|t| format_tuple(t)).collect();
                    let _ = write!(out, " {name}={{{}}}", items.join(","));
                }
            }
        }
        for (op, pairs) in &self.relations {
            let items: Vec<String> = pairs.iter().map(|&(a, b)| format_tuple(&[a, b])).collect();
            let _ = write!(out, " ({})={{{}}}", op.symbol(), items.join(","));
        }
        for (name, value) in &self.constants {
            let _ = write!(out, " {name}={value}");
        }
        for ((name, _), table) in &self.functions {
            let items: Vec<String> = table.iter().map(|v| v.to_string()).collect();
            let _ = write!(out, " {name}=[{}]", items.join(","));
        }
        for (name, value) in env {
            let _ = write!(out, " {name}={value}");
        }
        out
    }
}

fn format_tuple(t: &[usize]) -> String {
    let items: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", items.join(","))
}

/// Tarskian evaluation. Guarded blocks read as `forall x (G -> P)` and
/// `exists x (G & P)`.
pub fn eval(f: &Formula, interp: &Interpretation, env: &Env) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::Atom(a) => interp.atom(a, env)?,
        Formula::Not(body) => !eval(body, interp, env)?,
        Formula::Cond(b, a) => !eval(b, interp, env)? || eval(a, interp, env)?,
        Formula::And(l, r) => eval(l, interp, env)? && eval(r, interp, env)?,
        Formula::Or(l, r) => eval(l, interp, env)? || eval(r, interp, env)?,
        Formula::Quant(block, body) => {
            let n = interp.domain_size;
            let k = block.vars.len();
            let mut local = env.clone();
            let want_all = block.kind == QuantKind::Forall;
            for index in 0..n.pow(k as u32) {
                let mut rest = index;
                for v in block.vars.iter().rev() {
                    local.insert(v.clone(), rest % n);
                    rest /= n;
                }
                let guard = match &block.guard {
                    Some(g) => eval(g, interp, &local)?,
                    None => true,
                };
                let witness = match block.kind {
                    QuantKind::Forall => !guard || eval(body, interp, &local)?,
                    QuantKind::Exists => guard && eval(body, interp, &local)?,
                };
                if witness != want_all {
                    return Ok(!want_all);
                }
            }
            want_all
        }
    })
}

/// Every symbol two formulas need an interpretation for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeSet<(String, usize)>,
    pub relations: BTreeSet<ComparisonOp>,
    pub constants: BTreeSet<String>,
    pub functions: BTreeSet<(String, usize)>,
    pub free_variables: BTreeSet<String>,
}

impl Signature {
    pub fn of(formulas: &[&Formula]) -> Self {
        let mut sig = Signature::default();
        for f in formulas {
            sig.free_variables.extend(f.free_variables());
            for sub in f.subformulas() {
                if let Formula::Atom(atom) = sub {
                    match atom {
                        Atom::Prop(name) => {
                            sig.predicates.insert((name.clone(), 0));
                        }
                        Atom::Pred(name, args) => {
                            sig.predicates.insert((name.clone(), args.len()));
                            args.iter().for_each(|t| sig.add_term(t));
                        }
                        Atom::Compare(l, op, r) => {
                            sig.relations.insert(op.base().0);
                            sig.add_term(l);
                            sig.add_term(r);
                        }
                    }
                }
            }
        }
        sig
    }

    fn add_term(&mut self, t: &Term) {
        match t {
            Term::Variable(_) => {}
            Term::Constant(name) => {
                self.constants.insert(name.clone());
            }
            Term::Application(name, args) => {
                self.functions.insert((name.clone(), args.len()));
                args.iter().for_each(|a| self.add_term(a));
            }
        }
    }

    /// Digit radices of the enumeration counter on a domain of size `n`,
    /// least significant first.
    fn radices(&self, n: usize) -> Vec<usize> {
        let mut radices = Vec::new();
        for (_, arity) in &self.predicates {
            radices.extend(std::iter::repeat_n(2, n.pow(*arity as u32)));
        }
        radices.extend(std::iter::repeat_n(2, self.relations.len() * n * n));
        radices.extend(std::iter::repeat_n(n, self.constants.len()));
        for (_, arity) in &self.functions {
            radices.extend(std::iter::repeat_n(n, n.pow(*arity as u32)));
        }
        radices.extend(std::iter::repeat_n(n, self.free_variables.len()));
        radices
    }

    /// Number of (interpretation, environment) pairs on a domain of size
    /// `n`, or `None` past `u128`.
    pub fn space_size(&self, n: usize) -> Option<u128> {
        self.radices(n).into_iter().try_fold(1u128, |acc, r| acc.checked_mul(r as u128))
    }

    fn decode(&self, n: usize, digits: &[usize]) -> (Interpretation, Env) {
        let mut interp = Interpretation::new(n);
        let mut digits = digits.iter().copied();
        for (name, arity) in &self.predicates {
            let tuples = all_tuples(n, *arity).into_iter().filter(|_| digits.next() == Some(1)).collect();
            interp.predicates.insert((name.clone(), *arity), tuples);
        }
        for op in &self.relations {
            let pairs =
                all_tuples(n, 2).into_iter().filter(|_| digits.next() == Some(1)).map(|t| (t[0], t[1])).collect();
            interp.relations.insert(*op, pairs);
        }
        for name in &self.constants {
            interp.constants.insert(name.clone(), digits.next().expect("digit"));
        }
        for (name, arity) in &self.functions {
            let table = (0..n.pow(*arity as u32)).map(|_| digits.next().expect("digit")).collect();
            interp.functions.insert((name.clone(), *arity), table);
        }
        let env = self.free_variables.iter().map(|v| (v.clone(), digits.next().expect("digit"))).collect();
        (interp, env)
    }
}

/// All tuples of the given arity in lexicographic order.
fn all_tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    (0..n.pow(arity as u32))
        .map(|mut index| {
            let mut t = vec![0; arity];
            for slot in t.iter_mut().rev() {
                *slot = index % n;
                index /= n;
            }
            t
        })
        .collect()
}

/// Enumerates every interpretation (with an environment for the free
/// variables) of a signature, by ascending domain size. Predicate tables
/// count as binary numbers whose lowest digit is the lexicographically
/// first tuple.
pub struct ModelEnumerator {
    signature: Signature,
    max_domain: usize,
    domain: usize,
    radices: Vec<usize>,
    digits: Option<Vec<usize>>,
}

impl ModelEnumerator {
    pub fn new(signature: Signature, max_domain: usize) -> Self {
        let radices = signature.radices(1);
        ModelEnumerator { signature, max_domain, domain: 1, digits: Some(vec![0; radices.len()]), radices }
    }
}

impl Iterator for ModelEnumerator {
    type Item = (Interpretation, Env);

    fn next(&mut self) -> Option<Self::Item> {
        if self.domain > self.max_domain {
            return None;
        }
        let digits = self.digits.as_mut()?;
        let item = self.signature.decode(self.domain, digits);
        let mut carry = true;
        for (d, r) in digits.iter_mut().zip(&self.radices) {
            *d += 1;
            if *d < *r {
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            self.domain += 1;
            self.radices = self.signature.radices(self.domain);
            self.digits = Some(vec![0; self.radices.len()]);
        }
        Some(item)
    }
}

/// Largest enumeration [`find_bounded_counterexample`] accepts per domain size.
pub const MAX_INTERPRETATIONS: u128 = 1 << 24;

/// A domain, interpretation and environment where two formulas disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub interpretation: Interpretation,
    pub env: Env,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.interpretation.describe(&self.env))
    }
}

/// Searches every interpretation on domains `1..=max_domain`. `Ok(None)`
/// means no counterexample exists up to that bound.
pub fn find_bounded_counterexample(
    f1: &Formula,
    f2: &Formula,
    max_domain: usize,
) -> Result<Option<Counterexample>, SemanticsError> {
    let signature = Signature::of(&[f1, f2]);
    for n in 1..=max_domain {
        match signature.space_size(n) {
            Some(size) if size <= MAX_INTERPRETATIONS => {}
            size => return Err(SemanticsError::SignatureTooLarge { domain: n, interpretations: size }),
        }
    }
    for (interpretation, env) in ModelEnumerator::new(signature, max_domain) {
        if eval(f1, &interpretation, &env)? != eval(f2, &interpretation, &env)? {
            return Ok(Some(Counterexample { interpretation, env }));
        }
    }
    Ok(None)
}

pub fn equivalent_bounded(f1: &Formula, f2: &Formula, max_domain: usize) -> Result<bool, SemanticsError> {
    Ok(find_bounded_counterexample(f1, f2, max_domain)?.is_none())
}
