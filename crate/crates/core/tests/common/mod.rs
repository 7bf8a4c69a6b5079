#![allow(dead_code)]

use std::collections::BTreeMap;

use begriff::ast::{Atom, ComparisonOp, Formula, Judgment, QuantBlock, QuantKind, Term};
use begriff::layout::{Diagram, Glyph};
use begriff::parse_modern;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];
const LETTERS: [&str; 4] = ["A", "B", "C", "D"];

pub fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        3 => prop::sample::select(&VARS[..]).prop_map(Term::var),
        1 => prop::sample::select(&["0", "1"][..]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

pub fn atom() -> impl Strategy<Value = Atom> {
    let ordered = prop::sample::select(
        ComparisonOp::ALL
            .iter()
            .copied()
            .filter(|op| !matches!(op, ComparisonOp::In | ComparisonOp::NotIn))
            .collect::<Vec<_>>(),
    );
    let membership = prop::sample::select(vec![ComparisonOp::In, ComparisonOp::NotIn]);
    prop_oneof![
        3 => prop::sample::select(&LETTERS[..]).prop_map(Atom::prop),
        2 => term().prop_map(|t| Atom::pred("F", vec![t])),
        2 => (term(), term()).prop_map(|(a, b)| Atom::pred("R", vec![a, b])),
        1 => (term(), ordered, term()).prop_map(|(a, op, b)| Atom::compare(a, op, b)),
        1 => (term(), membership, prop::sample::select(&["X", "Nat"][..]))
            .prop_map(|(a, op, set)| Atom::compare(a, op, Term::constant(set))),
    ]
}

fn block_vars() -> impl Strategy<Value = Vec<String>> {
    prop::sample::subsequence(&VARS[..], 1..=2).prop_map(|vs| vs.into_iter().map(String::from).collect())
}

fn kind() -> impl Strategy<Value = QuantKind> {
    prop_oneof![Just(QuantKind::Forall), Just(QuantKind::Exists)]
}

/// Any well-formed formula, depth at most 8.
pub fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_map(Formula::atom).prop_recursive(7, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(b, a)| Formula::cond(b, a)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (kind(), block_vars(), prop::option::of(inner.clone()), inner)
                .prop_map(|(k, vars, guard, body)| Formula::quant(QuantBlock::new(k, vars, guard), body)),
        ]
    })
}

/// Kernel formulas: negation, conditional and universal blocks (possibly
/// guarded, possibly with several letters).
pub fn kernel_formula() -> impl Strategy<Value = Formula> {
    atom().prop_map(Formula::atom).prop_recursive(7, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(b, a)| Formula::cond(b, a)),
            (block_vars(), prop::option::of(inner.clone()), inner).prop_map(|(vars, guard, body)| {
                Formula::quant(QuantBlock::new(QuantKind::Forall, vars, guard), body)
            }),
        ]
    })
}

/// Quantifier-free formulas over at most four letters, depth at most 8.
pub fn propositional() -> impl Strategy<Value = Formula> {
    prop::sample::select(&LETTERS[..]).prop_map(Formula::prop).prop_recursive(7, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(b, a)| Formula::cond(b, a)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::or(l, r)),
        ]
    })
}

fn small_atom() -> impl Strategy<Value = Formula> {
    let v = || prop::sample::select(&["x", "y"][..]).prop_map(Term::var);
    prop_oneof![
        v().prop_map(|t| Formula::pred("F", vec![t])),
        (v(), v()).prop_map(|(a, b)| Formula::pred("R", vec![a, b])),
    ]
}

fn small_qf() -> impl Strategy<Value = Formula> {
    small_atom().prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(b, a)| Formula::cond(b, a)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::or(l, r)),
        ]
    })
}

fn connect(op: u8, l: Formula, r: Formula) -> Formula {
    match op % 4 {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        2 => Formula::cond(l, r),
        _ => Formula::cond(r, Formula::not(l)),
    }
}

fn small_block() -> impl Strategy<Value = (QuantKind, Vec<String>, Option<Formula>)> {
    let vars = prop::sample::subsequence(&["x", "y"][..], 1..=2)
        .prop_map(|vs| vs.into_iter().map(String::from).collect::<Vec<_>>());
    (kind(), vars, prop::option::of(small_atom()))
}

/// First-order formulas with at most two quantifier blocks over the
/// predicates `F/1` and `R/2`.
pub fn small_first_order() -> impl Strategy<Value = Formula> {
    (small_block(), small_block(), small_qf(), small_qf(), small_qf(), any::<(u8, u8, bool)>()).prop_map(
        |((k1, v1, g1), (k2, v2, g2), a, b, c, (op1, op2, nested))| {
            let q = |k, vars, guard, body| Formula::quant(QuantBlock::new(k, vars, guard), body);
            if nested {
                let inner = q(k2, v2, g2, c);
                q(k1, v1, g1, connect(op1, connect(op2, a, inner), b))
            } else {
                connect(op1, q(k1, v1, g1, a), connect(op2, b, q(k2, v2, g2, c)))
            }
        },
    )
}

pub fn judgment(body: impl Strategy<Value = Formula>) -> impl Strategy<Value = Judgment> {
    (any::<bool>(), body).prop_map(|(asserted, body)| Judgment { asserted, body })
}

/// Reads a kernel judgment back off the placed glyphs and labels alone.
pub fn decode(d: &Diagram) -> Judgment {
    let cells: BTreeMap<(usize, usize), Glyph> =
        d.glyphs().into_iter().map(|g| ((g.row, g.col), g.glyph.clone())).collect();
    let labels: BTreeMap<(usize, usize), String> =
        d.labels().into_iter().map(|(r, c, t)| ((r, c), t.to_string())).collect();
    let asserted = cells.get(&(0, 0)) == Some(&Glyph::JudgeBar);
    let start = if asserted { 1 } else { 0 };
    assert_eq!(cells.get(&(0, start)), Some(&Glyph::Stroke), "content stroke");
    Judgment { asserted, body: decode_at(&cells, &labels, 0, start + 1) }
}

fn decode_at(
    cells: &BTreeMap<(usize, usize), Glyph>,
    labels: &BTreeMap<(usize, usize), String>,
    row: usize,
    col: usize,
) -> Formula {
    assert_eq!(cells.get(&(row, col)), Some(&Glyph::Stroke), "stroke at {row},{col}");
    match cells.get(&(row, col + 1)) {
        Some(Glyph::NegTick) => Formula::not(decode_at(cells, labels, row, col + 2)),
        Some(g @ Glyph::Concavity(vars)) => Formula::quant(
            QuantBlock::new(QuantKind::Forall, vars.clone(), None),
            decode_at(cells, labels, row, col + 1 + g.width()),
        ),
        Some(Glyph::Vertical { to_row }) => {
            assert_eq!(cells.get(&(*to_row, col + 1)), Some(&Glyph::BranchCorner));
            Formula::cond(decode_at(cells, labels, *to_row, col + 2), decode_at(cells, labels, row, col + 3))
        }
        None => {
            let text = &labels[&(row, col + 2)];
            parse_modern(text).expect("label parses").body
        }
        Some(other) => panic!("unexpected {other:?} at {row},{}", col + 1),
    }
}

pub const CONTINUITY_LBS: &str = "(content (all eps : => (cond eps > 0 (not (all delta : => (not (cond delta > 0 (all x : => (cond abs(sub(x, x0)) < delta abs(sub(f(x), f(x0))) < eps)))))))))";

pub const NESTED_BLOCKS: &str = "forall n [n in Nat] . exists m, k [m >= n] . forall mu, l, eps [mu >= m & eps > 0] . exists L, S [S > 0] . forall x [x in X] . v(m, l, x) <= max(mul(eps, v(n, k, x)), mul(S, v(mu, L, x)))";

pub const NESTED_BLOCKS_NEGATION: &str = "exists n [n in Nat] . forall m, k [m >= n] . exists mu, l, eps [mu >= m & eps > 0] . forall L, S [S > 0] . exists x [x in X] . v(m, l, x) > max(mul(eps, v(n, k, x)), mul(S, v(mu, L, x)))";

/// Runs the command line in-process: `(exit code, stdout, stderr)`.
pub fn cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("begriff").chain(args.iter().copied());
    let code = begriff::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
