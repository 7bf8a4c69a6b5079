//! One line per acceptance criterion; the test fails if any line says FAIL.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use begriff::ast::{ComparisonOp, Formula, QuantBlock, QuantKind, Term};
use begriff::kernel::{desugar_with, DesugarOptions};
use begriff::layout::layout;
use begriff::semantics::{equivalent_bounded, truth_table};
use begriff::{desugar, negate, parse_lbs, parse_modern, print_lbs, print_modern, EncodingMode};
use common::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn record(&mut self, n: usize, started: Instant, limit: Option<Duration>, outcome: Result<String, String>) {
        let elapsed = started.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) => match limit {
                Some(limit) if elapsed >= limit => (false, format!("{detail}; took {elapsed:?}, limit {limit:?}")),
                _ => (true, detail),
            },
            Err(detail) => (false, detail),
        };
        let line = format!("criterion {n}: {} ({detail}; {elapsed:.2?})", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((ok, line));
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn truth_tables() -> Result<String, String> {
    for (input, column) in [("~B -> A", ["w", "w", "w", "f"]), ("~(B -> ~A)", ["w", "f", "f", "f"])] {
        let (code, out, err) = cli(&["table", input], "");
        ensure(code == 0, || format!("{input}: exit {code}: {err}"))?;
        let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(" | ").map(str::trim).collect()).collect();
        let order: Vec<(&str, &str)> = rows.iter().map(|r| (r[0], r[1])).collect();
        ensure(order == [("w", "w"), ("w", "f"), ("f", "w"), ("f", "f")], || format!("{input}: row order {order:?}"))?;
        let outputs: Vec<&str> = rows.iter().map(|r| *r.last().unwrap()).collect();
        ensure(outputs == column, || format!("{input}: output column {outputs:?}"))?;
        ensure(out.starts_with("A | B | "), || format!("{input}: header {out:?}"))?;
    }
    Ok("disjunction and conjunction output columns wwwf and wfff, rows ww wf fw ff".into())
}

fn equivalences() -> Result<String, String> {
    let cases = [
        ("~B -> A", "A | B", "EQUIVALENT"),
        ("~(B -> ~A)", "A & B", "EQUIVALENT"),
        ("~(B -> A)", "B & ~A", "EQUIVALENT"),
        ("~(forall x . ~F(x))", "exists x . F(x)", "EQUIVALENT UP TO DOMAIN 3"),
    ];
    for (f1, f2, verdict) in cases {
        let (code, out, err) = cli(&["equiv", f1, f2], "");
        ensure(code == 0 && out == format!("{verdict}\n"), || format!("{f1} vs {f2}: exit {code}, {out:?} {err}"))?;
    }
    Ok("4 of 4 pairs equivalent".into())
}

fn golden(file: &str) -> Result<String, String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))
}

fn diagrams() -> Result<String, String> {
    // (name, format, input, condition branches, negation ticks, concavities)
    let diagrams = [
        ("disjunction", "lbs", "(content (cond (not B) A))", 1, 1, 0),
        ("conjunction", "lbs", "(content (not (cond B (not A))))", 1, 2, 0),
        ("existential", "lbs", "(content (not (all x : => (not F(x)))))", 0, 2, 1),
        ("two_variables", "lbs", "(judge (all x : => (cond F(x) (not (all y : => (not R(x, y)))))))", 1, 2, 2),
        ("continuity", "lbs", CONTINUITY_LBS, 3, 2, 3),
        // the reference diagram draws the guard "mu >= m, eps > 0" on one branch; the
        // faithful encoding curries it into two
        ("nested_blocks", "modern", NESTED_BLOCKS, 6, 4, 5),
        ("nested_blocks_negation", "modern", NESTED_BLOCKS_NEGATION, 6, 6, 5),
    ];
    for (name, from, input, branches, ticks, cups) in diagrams {
        for (backend, ext) in [("unicode", "txt"), ("svg", "svg")] {
            let (code, out, err) = cli(&["render", "--from", from, "--backend", backend, input], "");
            ensure(code == 0, || format!("{name}: exit {code}: {err}"))?;
            ensure(out == golden(&format!("{name}.{ext}"))?, || format!("{name}.{ext} differs from golden"))?;
        }
        let j = match from {
            "lbs" => parse_lbs(input),
            _ => parse_modern(input),
        }
        .map_err(|e| e.to_string())?;
        let d = layout(&j.map(|f| desugar_with(&f, DesugarOptions::grouped(EncodingMode::Faithful))))
            .map_err(|e| e.to_string())?;
        let got = (d.condition_branches(), d.negation_ticks(), d.concavities());
        ensure(got == (branches, ticks, cups), || format!("{name}: (branches, ticks, concavities) = {got:?}"))?;
    }
    let original = layout(
        &parse_modern(NESTED_BLOCKS)
            .unwrap()
            .map(|f| desugar_with(&f, DesugarOptions::grouped(EncodingMode::Faithful))),
    )
    .unwrap();
    let pattern = tick_pattern(&original);
    ensure(pattern == "(n) ~(m,k)~ (mu,l,eps) ~(L,S)~ (x)", || format!("nested_blocks tick pattern {pattern}"))?;
    let negated = layout(
        &parse_modern(NESTED_BLOCKS_NEGATION)
            .unwrap()
            .map(|f| desugar_with(&f, DesugarOptions::grouped(EncodingMode::Faithful))),
    )
    .unwrap();
    let flipped = tick_pattern(&negated);
    ensure(flipped == "~(n)~ (m,k) ~(mu,l,eps)~ (L,S) ~(x)~", || format!("negation tick pattern {flipped}"))?;
    Ok(format!(
        "7 diagrams byte-exact in text and SVG; nested_blocks branches=6 ticks=4 concavities=5, {pattern}; negation {flipped}"
    ))
}

/// Main-row concavities with `~` for every adjacent negation tick.
fn tick_pattern(d: &begriff::layout::Diagram) -> String {
    use begriff::layout::Glyph;
    let mut row0: Vec<_> = d.glyphs().into_iter().filter(|g| g.row == 0).collect();
    row0.sort_by_key(|g| g.col);
    let mut out = String::new();
    for g in row0 {
        match &g.glyph {
            Glyph::NegTick => out.push('~'),
            Glyph::Concavity(vars) => out.push_str(&Glyph::concavity_text(vars)),
            Glyph::Vertical { .. } => out.push(' '),
            _ => {}
        }
    }
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn negation() -> Result<String, String> {
    let v = Term::var;
    let app = |f: &str, args: Vec<Term>| Term::app(f, args);
    let block =
        |kind, vars: &[&str], guard| QuantBlock::new(kind, vars.iter().map(|s| s.to_string()).collect(), Some(guard));
    let cmp = |l, op, r| Formula::compare(l, op, r);
    let matrix = cmp(
        app("v", vec![v("m"), v("l"), v("x")]),
        ComparisonOp::Gt,
        app(
            "max",
            vec![
                app("mul", vec![v("eps"), app("v", vec![v("n"), v("k"), v("x")])]),
                app("mul", vec![v("S"), app("v", vec![v("mu"), v("L"), v("x")])]),
            ],
        ),
    );
    let expected = Formula::quant(
        block(QuantKind::Exists, &["n"], cmp(v("n"), ComparisonOp::In, Term::constant("Nat"))),
        Formula::quant(
            block(QuantKind::Forall, &["m", "k"], cmp(v("m"), ComparisonOp::Ge, v("n"))),
            Formula::quant(
                block(
                    QuantKind::Exists,
                    &["mu", "l", "eps"],
                    Formula::and(
                        cmp(v("mu"), ComparisonOp::Ge, v("m")),
                        cmp(v("eps"), ComparisonOp::Gt, Term::constant("0")),
                    ),
                ),
                Formula::quant(
                    block(QuantKind::Forall, &["L", "S"], cmp(v("S"), ComparisonOp::Gt, Term::constant("0"))),
                    Formula::quant(
                        block(QuantKind::Exists, &["x"], cmp(v("x"), ComparisonOp::In, Term::constant("X"))),
                        matrix,
                    ),
                ),
            ),
        ),
    );
    let original = parse_modern(NESTED_BLOCKS).map_err(|e| e.to_string())?.body;
    let negated = negate(&original);
    ensure(negated.structurally_equal(&expected), || format!("got {}", begriff::syntax::print_formula(&negated)))?;
    Ok("negated nested-block statement equals the hand-built AST".into())
}

fn properties() -> Result<String, String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&propositional(), |f| {
            let expected = truth_table(&f).unwrap();
            for mode in [EncodingMode::Faithful, EncodingMode::Classical] {
                let t = truth_table(&desugar(&f, mode)).unwrap();
                if t.variables != expected.variables || t.outputs() != expected.outputs() {
                    return Err(TestCaseError::fail(format!("{mode}: {}", begriff::syntax::print_formula(&f))));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    runner
        .run(&small_first_order(), |f| {
            let d = desugar(&f, EncodingMode::Classical);
            if !equivalent_bounded(&f, &d, 2).unwrap() {
                return Err(TestCaseError::fail("desugar changed the meaning"));
            }
            if !equivalent_bounded(&f, &negate(&negate(&f)), 2).unwrap() {
                return Err(TestCaseError::fail("double negation changed the meaning"));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("1000 propositional formulas, both modes; 256 first-order formulas on domains 1-2".into())
}

fn round_trips() -> Result<String, String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&judgment(formula()), |j| {
            let text = print_modern(&j);
            match parse_modern(&text) {
                Ok(back) if back.structurally_equal(&j) => Ok(()),
                _ => Err(TestCaseError::fail(format!("modern: {text}"))),
            }
        })
        .map_err(|e| e.to_string())?;
    runner
        .run(&judgment(kernel_formula()), |j| {
            let text = print_lbs(&j).unwrap();
            match parse_lbs(&text).map(|back| print_lbs(&back)) {
                Ok(Ok(again)) if again == text => Ok(()),
                _ => Err(TestCaseError::fail(format!("lbs: {text}"))),
            }
        })
        .map_err(|e| e.to_string())?;
    Ok("1000 modern and 1000 linear round trips, zero failures".into())
}

fn main() {
    let mut report = Report { lines: Vec::new() };
    let t = Instant::now();
    let r = truth_tables();
    report.record(1, t, Some(Duration::from_secs(1)), r);
    let t = Instant::now();
    let r = equivalences();
    report.record(2, t, Some(Duration::from_secs(5)), r);
    let t = Instant::now();
    let r = diagrams();
    report.record(3, t, None, r);
    let t = Instant::now();
    let r = negation();
    report.record(4, t, None, r);
    let t = Instant::now();
    let r = properties();
    report.record(5, t, Some(Duration::from_secs(60)), r);
    let t = Instant::now();
    let r = round_trips();
    report.record(6, t, None, r);
    let failed: Vec<&str> = report.lines.iter().filter(|(ok, _)| !ok).map(|(_, l)| l.as_str()).collect();
    if !failed.is_empty() {
        eprintln!("{} of {} criteria failed", failed.len(), report.lines.len());
        std::process::exit(1);
    }
}
