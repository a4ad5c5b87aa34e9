//! Lattice diagrams of Pauli operators, x to the right and y up.
//!
//! Each edge is labelled with its Pauli; violated vertices are marked
//! (`@` in text, a filled orange disc in SVG).

use std::collections::BTreeMap;
use std::fmt::Write;

use fermicode_core::{EdgeKind, Monomial, Pauli, PauliVec};

/// Pixels per lattice spacing in SVG output.
pub const CELL: i32 = 60;
const MARGIN: i32 = 40;

struct Layout {
    x0: i32,
    x1: i32,
    y0: i32,
    y1: i32,
    edges: BTreeMap<(i32, i32, EdgeKind), Pauli>,
    marks: Vec<Monomial>,
}

impl Layout {
    fn new(v: &PauliVec, marks: &[Monomial]) -> Self {
        let edges: BTreeMap<_, _> = v.sites().into_iter().map(|s| ((s.at.i, s.at.j, s.edge), s.pauli)).collect();
        // the unit cell at the origin is always drawn
        let (mut x0, mut x1, mut y0, mut y1) = (0, 1, 0, 1);
        for &(i, j, e) in edges.keys() {
            let (di, dj) = if e == EdgeKind::Horizontal { (1, 0) } else { (0, 1) };
            x0 = x0.min(i);
            y0 = y0.min(j);
            x1 = x1.max(i + di);
            y1 = y1.max(j + dj);
        }
        for m in marks {
            x0 = x0.min(m.i);
            x1 = x1.max(m.i);
            y0 = y0.min(m.j);
            y1 = y1.max(m.j);
        }
        Layout { x0, x1, y0, y1, edges, marks: marks.to_vec() }
    }

    fn edge(&self, x: i32, y: i32, e: EdgeKind) -> Option<Pauli> {
        self.edges.get(&(x, y, e)).copied()
    }

    fn marked(&self, x: i32, y: i32) -> bool {
        self.marks.contains(&Monomial::new(x, y))
    }
}

pub fn ascii(v: &PauliVec, marks: &[Monomial]) -> String {
    let l = Layout::new(v, marks);
    let mut out = String::new();
    for y in (l.y0..=l.y1).rev() {
        if y < l.y1 {
            out.push_str("     ");
            for x in l.x0..=l.x1 {
                out.push(l.edge(x, y, EdgeKind::Vertical).map_or('|', Pauli::symbol));
                if x < l.x1 {
                    out.push_str("   ");
                }
            }
            out.push('\n');
        }
        write!(out, "{y:>4} ").unwrap();
        for x in l.x0..=l.x1 {
            out.push(if l.marked(x, y) { '@' } else { '+' });
            if x < l.x1 {
                match l.edge(x, y, EdgeKind::Horizontal) {
                    Some(p) => write!(out, "-{}-", p.symbol()).unwrap(),
                    None => out.push_str("---"),
                }
            }
        }
        out.push('\n');
    }
    out.push_str("     ");
    for x in l.x0..=l.x1 {
        write!(out, "{:<4}", x).unwrap();
    }
    let trimmed = out.trim_end().len();
    out.truncate(trimmed);
    out.push('\n');
    out
}

fn colour(p: Pauli) -> &'static str {
    match p {
        Pauli::X => "#d62728",
        Pauli::Y => "#2ca02c",
        Pauli::Z => "#1f77b4",
    }
}

pub fn svg(v: &PauliVec, marks: &[Monomial]) -> String {
    let l = Layout::new(v, marks);
    let width = (l.x1 - l.x0) * CELL + 2 * MARGIN;
    let height = (l.y1 - l.y0) * CELL + 2 * MARGIN;
    let px = |x: i32| MARGIN + (x - l.x0) * CELL;
    let py = |y: i32| MARGIN + (l.y1 - y) * CELL;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="14">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    for y in l.y0..=l.y1 {
        for x in l.x0..=l.x1 {
            for e in EdgeKind::ALL {
                let (x2, y2) = if e == EdgeKind::Horizontal { (x + 1, y) } else { (x, y + 1) };
                if x2 > l.x1 || y2 > l.y1 {
                    continue;
                }
                let (ax, ay, bx, by) = (px(x), py(y), px(x2), py(y2));
                match l.edge(x, y, e) {
                    None => {
                        writeln!(s, r##"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#cccccc" stroke-width="1"/>"##).unwrap()
                    }
                    Some(p) => {
                        let c = colour(p);
                        writeln!(s, r#"<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{c}" stroke-width="4"/>"#).unwrap();
                        let (tx, ty) = ((ax + bx) / 2 + 5, (ay + by) / 2 - 5);
                        writeln!(s, r#"<text x="{tx}" y="{ty}" fill="{c}">{}</text>"#, p.symbol()).unwrap();
                    }
                }
            }
        }
    }
    for y in l.y0..=l.y1 {
        for x in l.x0..=l.x1 {
            let (cx, cy) = (px(x), py(y));
            if l.marked(x, y) {
                writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="8" fill="#ff7f0e"/>"##).unwrap();
            } else {
                writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>"#).unwrap();
            }
        }
    }
    for x in l.x0..=l.x1 {
        writeln!(s, r##"<text x="{}" y="{}" fill="#666666" text-anchor="middle">{x}</text>"##, px(x), height - 10).unwrap();
    }
    for y in l.y0..=l.y1 {
        writeln!(s, r##"<text x="10" y="{}" fill="#666666">{y}</text>"##, py(y) + 5).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_vector_is_an_empty_cell() {
        let text = ascii(&PauliVec::zero(), &[]);
        assert_eq!(text, "   1 +---+\n     |   |\n   0 +---+\n     0   1\n");
        assert!(!svg(&PauliVec::zero(), &[]).contains("stroke-width=\"4\""));
    }

    #[test]
    fn labels_and_marks() {
        let v = PauliVec::single(EdgeKind::Horizontal, Pauli::X, 0, 0).add(&PauliVec::single(
            EdgeKind::Vertical,
            Pauli::Z,
            1,
            0,
        ));
        let text = ascii(&v, &[Monomial::new(0, 1)]);
        assert_eq!(text, "   1 @---+\n     |   Z\n   0 +-X-+\n     0   1\n");
        let pic = svg(&v, &[Monomial::new(0, 1)]);
        assert_eq!(pic.matches("stroke-width=\"4\"").count(), 2);
        assert_eq!(pic.matches("r=\"8\"").count(), 1);
    }
}
