//! Two-dimensional layout of kernel judgments.
//!
//! The grid model: every node starts with one stroke cell, then its own
//! glyph, then its children.
//!
//! ```text
//! atom      ─ A                 stroke, blank, label
//! not       ─┬ ...              stroke, tick, body
//! all x     ─(x) ...            stroke, concavity, body
//! cond B A  ─┬─ ...A            stroke, anchor, stroke, consequent
//!            └ ...B             condition below the consequent's last row
//! ```
//!
//! The consequent of a conditional stays on its parent's row. The condition
//! starts on the row right after the last row the consequent subtree uses,
//! so a diagram has exactly one row per conditional plus one.

mod svg;
mod text;

pub use svg::render_svg;
pub use text::render_text;

use crate::ast::{Atom, Formula, Judgment};
use crate::kernel::{check_kernel, KernelError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Glyph {
    Stroke,
    NegTick,
    /// One concavity carrying one or more variable letters.
    Concavity(Vec<String>),
    JudgeBar,
    BranchCorner,
    /// Conditional stroke from its anchor on the parent row down to the
    /// row of the matching [`Glyph::BranchCorner`].
    Vertical {
        to_row: usize,
    },
}

impl Glyph {
    /// Text used for a concavity in the text backends: `(x)`, `(m,k)`.
    pub fn concavity_text(vars: &[String]) -> String {
        format!("({})", vars.join(","))
    }

    /// Grid cells taken on the glyph's own row.
    pub fn width(&self) -> usize {
        match self {
            Glyph::Concavity(vars) => Glyph::concavity_text(vars).chars().count(),
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedGlyph {
    pub row: usize,
    pub col: usize,
    pub glyph: Glyph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Atom(Atom),
    Not,
    Cond,
    Forall(Vec<String>),
}

/// A kernel node with its grid placement. `col_end` is exclusive and covers
/// the whole subtree, labels included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramNode {
    pub kind: NodeKind,
    pub row: usize,
    pub col_start: usize,
    pub col_end: usize,
    pub glyph_run: Vec<PlacedGlyph>,
    /// Atoms only: the label text and the column it starts at.
    pub leaf_label: Option<(usize, String)>,
    /// `[condition, consequent]` for conditionals, `[body]` for negations
    /// and blocks.
    pub children: Vec<DiagramNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub asserted: bool,
    /// Judgment bar (if asserted) and the content stroke.
    pub root_run: Vec<PlacedGlyph>,
    pub body: DiagramNode,
    pub rows: usize,
    pub width: usize,
}

impl Diagram {
    /// Every placed glyph, root run first, then the tree in pre-order.
    pub fn glyphs(&self) -> Vec<&PlacedGlyph> {
        let mut out: Vec<&PlacedGlyph> = self.root_run.iter().collect();
        let mut stack = vec![&self.body];
        while let Some(node) = stack.pop() {
            out.extend(node.glyph_run.iter());
            stack.extend(node.children.iter().rev());
        }
        out
    }

    pub fn labels(&self) -> Vec<(usize, usize, &str)> {
        let mut out = Vec::new();
        let mut stack = vec![&self.body];
        while let Some(node) = stack.pop() {
            if let Some((col, text)) = &node.leaf_label {
                out.push((node.row, *col, text.as_str()));
            }
            stack.extend(node.children.iter().rev());
        }
        out
    }

    pub fn count(&self, pred: impl Fn(&Glyph) -> bool) -> usize {
        self.glyphs().into_iter().filter(|g| pred(&g.glyph)).count()
    }

    pub fn negation_ticks(&self) -> usize {
        self.count(|g| matches!(g, Glyph::NegTick))
    }

    pub fn concavities(&self) -> usize {
        self.count(|g| matches!(g, Glyph::Concavity(_)))
    }

    pub fn condition_branches(&self) -> usize {
        self.count(|g| matches!(g, Glyph::BranchCorner))
    }
}

/// Lays out a judgment whose body is in kernel form; universal blocks may
/// carry several letters.
pub fn layout(j: &Judgment) -> Result<Diagram, KernelError> {
    check_kernel(&j.body, true)?;
    let mut root_run = Vec::new();
    let mut col = 0;
    if j.asserted {
        root_run.push(PlacedGlyph { row: 0, col, glyph: Glyph::JudgeBar });
        col += 1;
    }
    root_run.push(PlacedGlyph { row: 0, col, glyph: Glyph::Stroke });
    let (body, last_row) = place(&j.body, 0, col + 1);
    Ok(Diagram { asserted: j.asserted, root_run, rows: last_row + 1, width: body.col_end, body })
}

/// Places `f` with its first stroke at `(row, col)`; returns the node and
/// the last row its subtree occupies.
fn place(f: &Formula, row: usize, col: usize) -> (DiagramNode, usize) {
    let stroke = PlacedGlyph { row, col, glyph: Glyph::Stroke };
    match f {
        Formula::Atom(atom) => {
            let label = atom.to_string();
            let label_col = col + 2;
            let node = DiagramNode {
                kind: NodeKind::Atom(atom.clone()),
                row,
                col_start: col,
                col_end: label_col + label.chars().count(),
                glyph_run: vec![stroke],
                leaf_label: Some((label_col, label)),
                children: vec![],
            };
            (node, row)
        }
        Formula::Not(body) => {
            let tick = PlacedGlyph { row, col: col + 1, glyph: Glyph::NegTick };
            let (child, last) = place(body, row, col + 2);
            let node = DiagramNode {
                kind: NodeKind::Not,
                row,
                col_start: col,
                col_end: child.col_end,
                glyph_run: vec![stroke, tick],
                leaf_label: None,
                children: vec![child],
            };
            (node, last)
        }
        Formula::Quant(block, body) => {
            let glyph = Glyph::Concavity(block.vars.clone());
            let width = glyph.width();
            let cup = PlacedGlyph { row, col: col + 1, glyph };
            let (child, last) = place(body, row, col + 1 + width);
            let node = DiagramNode {
                kind: NodeKind::Forall(block.vars.clone()),
                row,
                col_start: col,
                col_end: child.col_end,
                glyph_run: vec![stroke, cup],
                leaf_label: None,
                children: vec![child],
            };
            (node, last)
        }
        Formula::Cond(condition, consequent) => {
            let anchor = col + 1;
            let (then_node, then_last) = place(consequent, row, col + 3);
            let corner_row = then_last + 1;
            let (cond_node, last) = place(condition, corner_row, anchor + 1);
            let node = DiagramNode {
                kind: NodeKind::Cond,
                row,
                col_start: col,
                col_end: then_node.col_end.max(cond_node.col_end),
                glyph_run: vec![
                    stroke,
                    PlacedGlyph { row, col: anchor, glyph: Glyph::Vertical { to_row: corner_row } },
                    PlacedGlyph { row, col: col + 2, glyph: Glyph::Stroke },
                    PlacedGlyph { row: corner_row, col: anchor, glyph: Glyph::BranchCorner },
                ],
                leaf_label: None,
                children: vec![cond_node, then_node],
            };
            (node, last)
        }
        Formula::And(..) | Formula::Or(..) => unreachable!("checked by check_kernel"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Unicode,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub backend: Backend,
    pub cell_width_px: u32,
    pub row_height_px: u32,
    pub stroke_width_px: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { backend: Backend::Unicode, cell_width_px: 12, row_height_px: 24, stroke_width_px: 1.5 }
    }
}

impl RenderOptions {
    pub fn with_backend(backend: Backend) -> Self {
        RenderOptions { backend, ..Self::default() }
    }
}

/// Renders with whichever backend `opts` names.
pub fn render(d: &Diagram, opts: &RenderOptions) -> String {
    match opts.backend {
        Backend::Svg => render_svg(d, opts),
        Backend::Unicode | Backend::Ascii => render_text(d, opts),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::ast::{QuantBlock, QuantKind};
    use crate::syntax::parse_lbs;

    fn lbs(input: &str) -> Judgment {
        parse_lbs(input).unwrap()
    }

    fn run_kinds(glyphs: &[PlacedGlyph], row: usize) -> Vec<&Glyph> {
        let mut on_row: Vec<&PlacedGlyph> = glyphs.iter().filter(|g| g.row == row).collect();
        on_row.sort_by_key(|g| g.col);
        on_row.into_iter().map(|g| &g.glyph).collect()
    }

    #[test]
    fn judged_letter() {
        let d = layout(&lbs("(judge A)")).unwrap();
        assert_eq!(d.rows, 1);
        let glyphs: Vec<PlacedGlyph> = d.glyphs().into_iter().cloned().collect();
        assert_eq!(run_kinds(&glyphs, 0), vec![&Glyph::JudgeBar, &Glyph::Stroke, &Glyph::Stroke]);
        assert_eq!(d.labels(), vec![(0, 4, "A")]);
    }

    #[test]
    fn disjunction_rows() {
        let d = layout(&lbs("(content (cond (not B) A))")).unwrap();
        assert_eq!(d.rows, 2);
        let glyphs: Vec<PlacedGlyph> = d.glyphs().into_iter().cloned().collect();
        assert_eq!(
            run_kinds(&glyphs, 0),
            vec![&Glyph::Stroke, &Glyph::Stroke, &Glyph::Vertical { to_row: 1 }, &Glyph::Stroke, &Glyph::Stroke]
        );
        assert_eq!(run_kinds(&glyphs, 1), vec![&Glyph::BranchCorner, &Glyph::Stroke, &Glyph::NegTick, &Glyph::Stroke]);
        assert_eq!(d.labels(), vec![(1, 7, "B"), (0, 6, "A")]);
    }

    #[test]
    fn two_variable_example() {
        // all x (cond F(x) (not (all y (not R(x, y)))))
        let d = layout(&lbs("(content (all x : => (cond F(x) (not (all y : => (not R(x, y)))))))")).unwrap();
        assert_eq!(d.rows, 2);
        let glyphs: Vec<PlacedGlyph> = d.glyphs().into_iter().cloned().collect();
        let row0 = run_kinds(&glyphs, 0);
        assert_eq!(row0[2], &Glyph::Concavity(vec!["x".into()]));
        assert!(matches!(row0[4], Glyph::Vertical { .. }));
        let features: Vec<&Glyph> = row0.into_iter().skip(5).filter(|g| !matches!(g, Glyph::Stroke)).collect();
        assert_eq!(features, vec![&Glyph::NegTick, &Glyph::Concavity(vec!["y".into()]), &Glyph::NegTick]);
        let labels: Vec<(usize, &str)> = d.labels().into_iter().map(|(r, _, t)| (r, t)).collect();
        assert_eq!(labels, vec![(1, "F(x)"), (0, "R(x, y)")]);
    }

    #[test]
    fn rejects_surface_connectives() {
        let j = Judgment::content(Formula::or(Formula::prop("A"), Formula::prop("B")));
        assert!(layout(&j).is_err());
        let j = Judgment::content(Formula::quant(
            QuantBlock::new(QuantKind::Forall, vec!["x".into()], Some(Formula::prop("G"))),
            Formula::prop("A"),
        ));
        assert!(layout(&j).is_err());
    }

    #[test]
    fn conditions_stack_below_consequent_subtree() {
        // cond C (cond B A): consequent (cond B A) uses rows 0-1, so C is on row 2
        let d = layout(&lbs("(content (cond C (cond B A)))")).unwrap();
        assert_eq!(d.rows, 3);
        let labels: BTreeMap<&str, usize> = d.labels().into_iter().map(|(r, _, t)| (t, r)).collect();
        assert_eq!(labels["A"], 0);
        assert_eq!(labels["B"], 1);
        assert_eq!(labels["C"], 2);
        // a condition's own conditions hang directly beneath it
        let d = layout(&lbs("(content (cond (cond C B) A))")).unwrap();
        let labels: BTreeMap<&str, usize> = d.labels().into_iter().map(|(r, _, t)| (t, r)).collect();
        assert_eq!((labels["A"], labels["B"], labels["C"]), (0, 1, 2));
    }
}
