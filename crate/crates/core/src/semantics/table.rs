use std::fmt;

use crate::ast::{Atom, Formula};
use crate::syntax::print_formula;

use super::SemanticsError;

/// How truth values are printed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ValueStyle {
    /// `w` / `f` (wahr / falsch)
    #[default]
    WF,
    /// `T` / `F`
    TF,
}

impl ValueStyle {
    pub fn symbol(self, value: bool) -> &'static str {
        match (self, value) {
            (ValueStyle::WF, true) => "w",
            (ValueStyle::WF, false) => "f",
            (ValueStyle::TF, true) => "T",
            (ValueStyle::TF, false) => "F",
        }
    }
}

/// Truth values for propositional letters, in a fixed variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<(String, bool)>,
}

impl Assignment {
    pub fn new(values: Vec<(String, bool)>) -> Self {
        Assignment { values }
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(n, v)| (n.as_str(), *v))
    }

    /// `A=w B=f`
    pub fn display(&self, style: ValueStyle) -> String {
        self.values.iter().map(|(n, v)| format!("{n}={}", style.symbol(*v))).collect::<Vec<_>>().join(" ")
    }

    /// All assignments over `vars`: first variable most significant, `w`
    /// before `f`.
    pub fn enumerate(vars: &[String]) -> impl Iterator<Item = Assignment> + '_ {
        let n = vars.len();
        (0..1usize << n).map(move |row| {
            let values = vars.iter().enumerate().map(|(i, v)| (v.clone(), row >> (n - 1 - i) & 1 == 0)).collect();
            Assignment { values }
        })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(ValueStyle::WF))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthRow {
    pub assignment: Assignment,
    /// One value per entry of [`TruthTable::columns`].
    pub cells: Vec<bool>,
    pub output: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    pub variables: Vec<String>,
    /// Compound subformulas, innermost first; the last one is the formula
    /// itself unless it is a single letter.
    pub columns: Vec<Formula>,
    pub rows: Vec<TruthRow>,
}

impl TruthTable {
    pub fn outputs(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.output).collect()
    }

    /// Aligned grid with ` | ` between columns and right-trimmed lines.
    pub fn render(&self, style: ValueStyle) -> String {
        let headers: Vec<String> =
            self.variables.iter().cloned().chain(self.columns.iter().map(print_formula)).collect();
        let widths: Vec<usize> = headers.iter().map(|h| h.chars().count().max(1)).collect();
        let mut out = String::new();
        let mut push_line = |cells: Vec<String>| {
            let line = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join(" | ");
            out.push_str(line.trim_end());
            out.push('\n');
        };
        push_line(headers.clone());
        for row in &self.rows {
            let cells = row
                .assignment
                .iter()
                .map(|(_, v)| v)
                .chain(row.cells.iter().copied())
                .map(|v| style.symbol(v).to_string())
                .collect();
            push_line(cells);
        }
        out
    }
}

/// Propositional letters in diagram reading order: a conditional's
/// consequent is read before its condition, everything else left to right.
pub fn variables(f: &Formula) -> Result<Vec<String>, SemanticsError> {
    let mut out = Vec::new();
    collect_letters(f, &mut out)?;
    Ok(out)
}

fn collect_letters(f: &Formula, out: &mut Vec<String>) -> Result<(), SemanticsError> {
    match f {
        Formula::Atom(Atom::Prop(name)) => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        Formula::Atom(_) | Formula::Quant(..) => {
            return Err(SemanticsError::QuantifiedInput(print_formula(f)));
        }
        Formula::Not(body) => collect_letters(body, out)?,
        Formula::Cond(condition, consequent) => {
            collect_letters(consequent, out)?;
            collect_letters(condition, out)?;
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            collect_letters(l, out)?;
            collect_letters(r, out)?;
        }
    }
    Ok(())
}

fn collect_columns(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Atom(_) => return,
        Formula::Not(body) => collect_columns(body, out),
        Formula::Cond(condition, consequent) => {
            collect_columns(consequent, out);
            collect_columns(condition, out);
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            collect_columns(l, out);
            collect_columns(r, out);
        }
        Formula::Quant(_, body) => collect_columns(body, out),
    }
    if !out.contains(f) {
        out.push(f.clone());
    }
}

/// Classical value of a quantifier-free propositional formula.
pub fn eval_propositional(f: &Formula, assignment: &Assignment) -> Result<bool, SemanticsError> {
    Ok(match f {
        Formula::Atom(Atom::Prop(name)) => {
            assignment.get(name).ok_or_else(|| SemanticsError::MissingSymbol(name.clone()))?
        }
        Formula::Atom(_) | Formula::Quant(..) => return Err(SemanticsError::QuantifiedInput(print_formula(f))),
        Formula::Not(body) => !eval_propositional(body, assignment)?,
        Formula::Cond(b, a) => !eval_propositional(b, assignment)? || eval_propositional(a, assignment)?,
        Formula::And(l, r) => eval_propositional(l, assignment)? && eval_propositional(r, assignment)?,
        Formula::Or(l, r) => eval_propositional(l, assignment)? || eval_propositional(r, assignment)?,
    })
}

pub fn truth_table(f: &Formula) -> Result<TruthTable, SemanticsError> {
    let variables = variables(f)?;
    let mut columns = Vec::new();
    collect_columns(f, &mut columns);
    let rows = Assignment::enumerate(&variables)
        .map(|assignment| {
            let cells = columns.iter().map(|c| eval_propositional(c, &assignment)).collect::<Result<Vec<_>, _>>()?;
            let output = eval_propositional(f, &assignment)?;
            Ok(TruthRow { assignment, cells, output })
        })
        .collect::<Result<Vec<_>, SemanticsError>>()?;
    Ok(TruthTable { variables, columns, rows })
}

/// First assignment (in table order over the union of both variable lists)
/// on which the two formulas differ.
pub fn propositional_counterexample(f1: &Formula, f2: &Formula) -> Result<Option<Assignment>, SemanticsError> {
    let mut vars = variables(f1)?;
    for v in variables(f2)? {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    for assignment in Assignment::enumerate(&vars) {
        if eval_propositional(f1, &assignment)? != eval_propositional(f2, &assignment)? {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

pub fn equivalent_propositional(f1: &Formula, f2: &Formula) -> Result<bool, SemanticsError> {
    Ok(propositional_counterexample(f1, f2)?.is_none())
}
