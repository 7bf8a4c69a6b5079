use std::fmt::Write;

use super::{Diagram, Glyph, PlacedGlyph, RenderOptions};

/// Numbers with at most two decimals and no trailing zeros.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

struct Geometry {
    cw: f64,
    rh: f64,
}

impl Geometry {
    fn x(&self, col: usize) -> f64 {
        self.cw + col as f64 * self.cw
    }

    /// Baseline of the strokes on `row`; one spare row height on top for
    /// concavity letters.
    fn y(&self, row: usize) -> f64 {
        self.rh / 2.0 + row as f64 * self.rh + self.rh / 2.0
    }
}

/// Standalone SVG document: strokes are `<path>` elements, labels and
/// concavity letters are `<text>` elements.
pub fn render_svg(d: &Diagram, opts: &RenderOptions) -> String {
    let g = Geometry { cw: opts.cell_width_px as f64, rh: opts.row_height_px as f64 };
    let width = g.x(d.width) + g.cw;
    let height = g.y(d.rows - 1) + g.rh;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-width="{}" stroke-linecap="square">"#,
        num(opts.stroke_width_px)
    );
    let glyphs = d.glyphs();
    for (row, start, end) in horizontal_runs(&glyphs) {
        let y = g.y(row);
        let _ = writeln!(out, r#"<path d="M{} {}H{}"/>"#, num(g.x(start)), num(y), num(g.x(end)));
    }
    for p in &glyphs {
        let (x, y) = (g.x(p.col), g.y(p.row));
        match &p.glyph {
            Glyph::JudgeBar => {
                let _ = writeln!(out, r#"<path d="M{} {}V{}"/>"#, num(x), num(y - g.rh / 3.0), num(y + g.rh / 3.0));
            }
            Glyph::NegTick => {
                let cx = x + g.cw / 2.0;
                let _ = writeln!(out, r#"<path d="M{} {}V{}"/>"#, num(cx), num(y), num(y + g.rh / 3.0));
            }
            Glyph::Vertical { to_row } => {
                let cx = x + g.cw / 2.0;
                let _ = writeln!(out, r#"<path d="M{} {}V{}"/>"#, num(cx), num(y), num(g.y(*to_row)));
            }
            Glyph::BranchCorner => {
                let cx = x + g.cw / 2.0;
                let _ = writeln!(out, r#"<path d="M{} {}H{}"/>"#, num(cx), num(y), num(x + g.cw));
            }
            Glyph::Concavity(_) => {
                let w = p.glyph.width() as f64 * g.cw;
                let _ = writeln!(
                    out,
                    r#"<path d="M{} {}Q{} {} {} {}"/>"#,
                    num(x),
                    num(y),
                    num(x + w / 2.0),
                    num(y + g.rh / 2.0),
                    num(x + w),
                    num(y)
                );
            }
            Glyph::Stroke => {}
        }
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g font-family="serif" font-size="{}">"#, num(g.rh * 0.6));
    for p in &glyphs {
        if let Glyph::Concavity(vars) = &p.glyph {
            let w = p.glyph.width() as f64 * g.cw;
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                num(g.x(p.col) + w / 2.0),
                num(g.y(p.row) - g.rh / 4.0),
                escape(&vars.join(", "))
            );
        }
    }
    for (row, col, text) in d.labels() {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" dominant-baseline="central">{}</text>"#,
            num(g.x(col)),
            num(g.y(row)),
            escape(text)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Maximal horizontal segments `(row, start_col, end_col)` over cells that
/// carry a stroke: plain strokes, ticks, anchors and the judge bar.
fn horizontal_runs(glyphs: &[&PlacedGlyph]) -> Vec<(usize, usize, usize)> {
    let mut cells: Vec<(usize, usize)> = glyphs
        .iter()
        .filter(|p| matches!(p.glyph, Glyph::Stroke | Glyph::NegTick | Glyph::JudgeBar | Glyph::Vertical { .. }))
        .map(|p| (p.row, p.col))
        .collect();
    cells.sort();
    let mut runs: Vec<(usize, usize, usize)> = Vec::new();
    for (row, col) in cells {
        match runs.last_mut() {
            Some(last) if last.0 == row && last.2 == col => last.2 = col + 1,
            _ => runs.push((row, col, col + 1)),
        }
    }
    runs
}
