//! Deterministic drawings of dotted-grid trees: ASCII (round-trippable) and
//! SVG with dots plus orthogonal parent-child connectors.

use std::fmt::Write as _;

use crate::cnat::{Cnat, CnatError, Dot, DotGrid};

const CELL: char = '\u{00b7}'; // ·
const DOT: char = '\u{25cf}'; // ●
const HBAR: char = '\u{2500}'; // ─
const VBAR: char = '\u{2502}'; // │
const CROSS: char = '\u{253c}'; // ┼

/// Tree edges of a valid grid tree: every pair of consecutive dots in a row or
/// a column is a parent-child link.
fn segments(t: &Cnat) -> (Vec<(u32, u32, u32)>, Vec<(u32, u32, u32)>) {
    let mut by_row = t.dots().to_vec(); // already (row, col)-sorted
    let mut horizontal = Vec::new(); // (row, col_from, col_to)
    for w in by_row.windows(2) {
        if w[0].row == w[1].row {
            horizontal.push((w[0].row, w[0].col, w[1].col));
        }
    }
    by_row.sort_unstable_by_key(|d| (d.col, d.row));
    let mut vertical = Vec::new(); // (col, row_from, row_to)
    for w in by_row.windows(2) {
        if w[0].col == w[1].col {
            vertical.push((w[0].col, w[0].row, w[1].row));
        }
    }
    (horizontal, vertical)
}

/// Character grid: cells at even positions, connectors in between. Lines run
/// straight through the empty cells they cross.
pub fn ascii(t: &Cnat) -> String {
    let n = t.size() as usize;
    let w = 2 * n - 1;
    let mut canvas = vec![vec![' '; w]; w];
    for y in 0..n {
        for x in 0..n {
            canvas[2 * y][2 * x] = CELL;
        }
    }
    let (horizontal, vertical) = segments(t);
    for (row, from, to) in horizontal {
        let y = 2 * (row as usize - 1);
        for x in 2 * from as usize - 1..=2 * to as usize - 3 {
            canvas[y][x] = HBAR;
        }
    }
    for (col, from, to) in vertical {
        let x = 2 * (col as usize - 1);
        for y in 2 * from as usize - 1..=2 * to as usize - 3 {
            canvas[y][x] = if canvas[y][x] == HBAR { CROSS } else { VBAR };
        }
    }
    for d in t.dots() {
        canvas[2 * (d.row as usize - 1)][2 * (d.col as usize - 1)] = DOT;
    }
    let mut out = String::new();
    for line in canvas {
        out.extend(line);
        out.push('\n');
    }
    out
}

/// Recovers the dot set from an [`ascii`] drawing.
pub fn parse_ascii(text: &str) -> Result<DotGrid, CnatError> {
    let lines: Vec<&str> = text.lines().collect();
    let height = lines.len();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    if height == 0 || width == 0 {
        return Err(CnatError::BadFormat("empty drawing".into()));
    }
    let rows = (height + 1) / 2;
    let cols = (width + 1) / 2;
    let mut dots = Vec::new();
    for (y, line) in lines.iter().enumerate() {
        for (x, ch) in line.chars().enumerate() {
            if ch == DOT {
                if y % 2 != 0 || x % 2 != 0 {
                    return Err(CnatError::BadFormat(format!(
                        "dot off the cell lattice at text position ({x}, {y})"
                    )));
                }
                dots.push(Dot::new(x as u32 / 2 + 1, y as u32 / 2 + 1));
            }
        }
    }
    DotGrid::new(cols as u32, rows as u32, dots)
}

const SVG_CELL: u32 = 24;
const SVG_MARGIN: u32 = 12;

/// One SVG document: grid lattice, orthogonal connectors, then dots.
pub fn svg(t: &Cnat) -> String {
    let mut body = String::new();
    svg_tree(&mut body, t, 0);
    let side = t.size() * SVG_CELL + 2 * SVG_MARGIN;
    svg_document(side, side, &body)
}

/// Several trees laid out left to right in a single document.
pub fn svg_row(trees: &[Cnat]) -> String {
    let mut body = String::new();
    let mut x = 0;
    let mut height = 0;
    for t in trees {
        svg_tree(&mut body, t, x);
        x += t.size() * SVG_CELL + 2 * SVG_MARGIN;
        height = height.max(t.size() * SVG_CELL + 2 * SVG_MARGIN);
    }
    svg_document(x.max(1), height.max(1), &body)
}

fn svg_document(width: u32, height: u32, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n{body}</svg>\n"
    )
}

fn svg_tree(out: &mut String, t: &Cnat, x_offset: u32) {
    let n = t.size();
    let origin_x = x_offset + SVG_MARGIN;
    let origin_y = SVG_MARGIN;
    let cx = |col: u32| origin_x + (col - 1) * SVG_CELL + SVG_CELL / 2;
    let cy = |row: u32| origin_y + (row - 1) * SVG_CELL + SVG_CELL / 2;

    for i in 0..=n {
        let x = origin_x + i * SVG_CELL;
        let _ = writeln!(
            out,
            "  <line x1=\"{x}\" y1=\"{origin_y}\" x2=\"{x}\" y2=\"{}\" stroke=\"#ccc\" stroke-width=\"1\"/>",
            origin_y + n * SVG_CELL
        );
        let y = origin_y + i * SVG_CELL;
        let _ = writeln!(
            out,
            "  <line x1=\"{origin_x}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#ccc\" stroke-width=\"1\"/>",
            origin_x + n * SVG_CELL
        );
    }
    let (horizontal, vertical) = segments(t);
    for (row, from, to) in horizontal {
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\" stroke-width=\"2\"/>",
            cx(from),
            cy(row),
            cx(to),
            cy(row)
        );
    }
    for (col, from, to) in vertical {
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\" stroke-width=\"2\"/>",
            cx(col),
            cy(from),
            cx(col),
            cy(to)
        );
    }
    for d in t.dots() {
        let fill = if t.is_leaf(*d) { "#1f6fd0" } else { "#000" };
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{fill}\"/>",
            cx(d.col),
            cy(d.row)
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnat::enumerate_cnats;

    #[test]
    fn single_dot_ascii() {
        let t = Cnat::single_dot();
        assert_eq!(ascii(&t), "\u{25cf}\n");
    }

    #[test]
    fn worked_example_ascii_layout() {
        let t = Cnat::from_dots(
            5,
            vec![
                Dot::new(1, 1),
                Dot::new(3, 1),
                Dot::new(1, 2),
                Dot::new(2, 2),
                Dot::new(1, 4),
                Dot::new(2, 5),
                Dot::new(3, 3),
                Dot::new(4, 1),
                Dot::new(5, 2),
            ],
        )
        .unwrap();
        let drawing = ascii(&t);
        assert_eq!(drawing.lines().count(), 9);
        assert_eq!(drawing.chars().filter(|&c| c == '\u{25cf}').count(), 9);
        // Row 1 runs from the root through column 3 to the leaf in column 4,
        // the connector passing through the empty cell in column 2.
        assert_eq!(
            drawing.lines().next().unwrap(),
            "\u{25cf}\u{2500}\u{2500}\u{2500}\u{25cf}\u{2500}\u{25cf} \u{00b7}"
        );
    }

    #[test]
    fn ascii_round_trip() {
        for p in ["45312", "321", "3412", "563412", "1"] {
            for t in enumerate_cnats(&p.parse().unwrap()) {
                let grid = parse_ascii(&ascii(&t)).unwrap();
                assert_eq!(&grid, t.grid());
            }
        }
    }

    #[test]
    fn svg_contains_dots_and_lines() {
        let t = Cnat::single_dot();
        let doc = svg(&t);
        assert!(doc.starts_with("<svg"));
        assert!(doc.contains("<circle"));
        assert!(doc.trim_end().ends_with("</svg>"));
        let trees = enumerate_cnats(&"321".parse().unwrap());
        let row = svg_row(&trees);
        assert_eq!(row.matches("<circle").count(), 10); // two trees of 5 dots
    }
}
