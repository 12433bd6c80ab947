//! Plain-text and SVG drawings of pin diagrams.

use std::fmt::Write;

use crate::cperm::CentredPerm;
use crate::pimap::PinDiagram;

const CELL: usize = 24;
const MARGIN: usize = 20;

fn label(k: usize) -> char {
    std::char::from_digit((k % 36) as u32, 36).expect("radix 36 digit")
}

/// A grid with `o` for the origin and the point index (base 36) for each
/// pin, top row highest.
pub fn ascii(diagram: &PinDiagram) -> String {
    let coords = diagram.coordinates();
    let size = coords.len();
    let mut grid = vec![vec!['.'; size]; size];
    for (k, &(x, y)) in coords.iter().enumerate() {
        grid[size - 1 - y][x] = if k == 0 { 'o' } else { label(k) };
    }
    let mut out = String::new();
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    out
}

/// A grid drawing of a centred permutation, `o` marking the origin.
pub fn ascii_perm(p: &CentredPerm) -> String {
    let size = p.filled().len();
    let mut grid = vec![vec!['.'; size]; size];
    for (x, &y) in p.filled().iter().enumerate() {
        grid[size - 1 - y as usize][x] = if x == p.origin_index() { 'o' } else { '*' };
    }
    let mut out = String::new();
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    out
}

/// An SVG drawing: axes through the origin, the pin path `p_0 p_1 .. p_n`,
/// and labelled points.
pub fn svg(diagram: &PinDiagram) -> String {
    let coords = diagram.coordinates();
    let size = coords.len();
    let extent = 2 * MARGIN + (size - 1) * CELL;
    let px = |x: usize| MARGIN + x * CELL;
    let py = |y: usize| MARGIN + (size - 1 - y) * CELL;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{extent}" height="{extent}" viewBox="0 0 {extent} {extent}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", diagram.word());
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (ox, oy) = coords[0];
    let _ = writeln!(
        s,
        r##"<g stroke="#bbb" stroke-dasharray="3,3"><line x1="{}" y1="0" x2="{}" y2="{extent}"/><line x1="0" y1="{}" x2="{extent}" y2="{}"/></g>"##,
        px(ox),
        px(ox),
        py(oy),
        py(oy)
    );
    let path: Vec<String> = coords.iter().map(|&(x, y)| format!("{},{}", px(x), py(y))).collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#4477aa" stroke-width="1"/>"##,
        path.join(" ")
    );
    for (k, &(x, y)) in coords.iter().enumerate() {
        if k == 0 {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="5" fill="white" stroke="black" stroke-width="1.5"/>"#,
                px(x),
                py(y)
            );
        } else {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, px(x), py(y));
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="10" font-family="sans-serif">{k}</text>"#,
                px(x) + 5,
                py(y) - 5
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
