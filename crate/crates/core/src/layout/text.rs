use super::{Backend, Diagram, Glyph, RenderOptions};

struct Charset {
    stroke: char,
    tick: char,
    anchor: char,
    vertical: char,
    corner: char,
    judge: char,
}

const UNICODE: Charset =
    Charset { stroke: '─', tick: '┬', anchor: '┬', vertical: '│', corner: '└', judge: '├' };
const ASCII: Charset = Charset { stroke: '-', tick: '!', anchor: '+', vertical: '|', corner: '+', judge: '|' };

/// Character-grid rendering. Every line is right-trimmed and ends in `\n`.
pub fn render_text(d: &Diagram, opts: &RenderOptions) -> String {
    let cs = match opts.backend {
        Backend::Ascii => &ASCII,
        _ => &UNICODE,
    };
    let mut grid = vec![vec![' '; d.width]; d.rows];
    let put = |grid: &mut Vec<Vec<char>>, row: usize, col: usize, text: &str| {
        for (i, ch) in text.chars().enumerate() {
            let line = &mut grid[row];
            if line.len() <= col + i {
                line.resize(col + i + 1, ' ');
            }
            line[col + i] = ch;
        }
    };
    for g in d.glyphs() {
        match &g.glyph {
            Glyph::Stroke => put(&mut grid, g.row, g.col, &cs.stroke.to_string()),
            Glyph::NegTick => put(&mut grid, g.row, g.col, &cs.tick.to_string()),
            Glyph::JudgeBar => put(&mut grid, g.row, g.col, &cs.judge.to_string()),
            Glyph::BranchCorner => put(&mut grid, g.row, g.col, &cs.corner.to_string()),
            Glyph::Concavity(vars) => put(&mut grid, g.row, g.col, &Glyph::concavity_text(vars)),
            Glyph::Vertical { to_row } => {
                put(&mut grid, g.row, g.col, &cs.anchor.to_string());
                for row in g.row + 1..*to_row {
                    put(&mut grid, row, g.col, &cs.vertical.to_string());
                }
            }
        }
    }
    for (row, col, text) in d.labels() {
        put(&mut grid, row, col, text);
    }
    let mut out = String::new();
    for line in grid {
        let line: String = line.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
