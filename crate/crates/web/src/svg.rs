//! A small SVG drawing of a functor: domain objects on the top row,
//! codomain objects on the bottom row, the object assignment dashed between
//! them. Morphisms are arcs, endomorphisms are loops.

use std::fmt::Write;

use comprehend::{FinCategory, Functor};

const GAP: f64 = 110.0;
const MARGIN: f64 = 60.0;
const TOP: f64 = 70.0;
const BOTTOM: f64 = 250.0;
const HIGHLIGHT: &str = "#c0392b";

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn x_of(i: usize) -> f64 {
    MARGIN + GAP * i as f64
}

/// Arcs between objects of one row bow away from the other row; parallel
/// morphisms get increasing bows.
fn row(out: &mut String, c: &FinCategory, y: f64, up: bool, highlight: &dyn Fn(usize) -> bool) {
    let dir = if up { -1.0 } else { 1.0 };
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let (s, t) = (c.src(f), c.tgt(f));
        let k = seen.iter().filter(|&&p| p == (s, t)).count() as f64;
        seen.push((s, t));
        let colour = if highlight(f) { HIGHLIGHT } else { "#555" };
        let label = escape(c.mor_name(f));
        if s == t {
            let (cx, r) = (x_of(s), 12.0 + 7.0 * k);
            let cy = y + dir * (18.0 + r);
            let _ = writeln!(
                out,
                r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="{colour}"/>"#
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="10">{label}</text>"#,
                cx + r + 2.0,
                cy
            );
            continue;
        }
        let (x1, x2) = (x_of(s), x_of(t));
        let bow = dir * (24.0 + 14.0 * k + 0.15 * (x2 - x1).abs());
        let (mx, my) = ((x1 + x2) / 2.0, y + bow);
        let _ = writeln!(
            out,
            r#"<path d="M{x1},{y} Q{mx},{my} {x2},{y}" fill="none" stroke="{colour}" marker-end="url(#arrow)"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{mx}" y="{}" font-size="10" text-anchor="middle">{label}</text>"#,
            y + bow * 0.55
        );
    }
    for a in c.objects() {
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{y}" r="14" fill="#fff" stroke="#222"/><text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"##,
            x_of(a),
            x_of(a),
            y + 4.0,
            escape(c.obj_name(a))
        );
    }
}

/// `highlight[φ]` marks codomain morphisms drawn in red.
pub fn functor(p: &Functor, highlight: &[bool]) -> String {
    let (e, b) = (p.dom(), p.cod());
    let width = MARGIN * 2.0 + GAP * (e.num_objects().max(b.num_objects()).max(1) - 1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="320" viewBox="0 0 {width} 320">"#
    );
    out.push_str(
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="24" refY="5" markerWidth="8" markerHeight="8" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#555"/></marker></defs>
"##,
    );
    for a in e.objects() {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#aaa" stroke-dasharray="4 3"/>"##,
            x_of(a),
            TOP + 14.0,
            x_of(p.obj(a)),
            BOTTOM - 14.0
        );
    }
    row(&mut out, e, TOP, true, &|_| false);
    row(&mut out, b, BOTTOM, false, &|f| {
        highlight.get(f).copied().unwrap_or(false)
    });
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use comprehend::zoo;

    use super::*;

    #[test]
    fn draws_every_object_and_non_identity_morphism() {
        let b: comprehend::Cat = Arc::new(zoo::parallel_pair());
        let p = Functor::identity(b.clone());
        let svg = functor(&p, &[false; 4]);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("r=\"14\"").count(), 2 * b.num_objects());
        assert_eq!(svg.matches(" Q").count(), 2 * 2);
        assert!(!svg.contains(HIGHLIGHT));
    }
}
