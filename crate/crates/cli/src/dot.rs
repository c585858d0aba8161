//! Graphviz export: objects as nodes, non-identity morphisms as edges.

use std::fmt::Write;

use comprehend::{FinCategory, Functor};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn cluster(
    out: &mut String,
    c: &FinCategory,
    prefix: &str,
    label: &str,
    highlight: &dyn Fn(usize) -> bool,
) {
    let _ = writeln!(out, "  subgraph cluster_{prefix} {{");
    let _ = writeln!(out, "    label={};", quote(label));
    for a in c.objects() {
        let _ = writeln!(out, "    {}{a} [label={}];", prefix, quote(c.obj_name(a)));
    }
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let style = if highlight(f) {
            ", color=\"#c0392b\", penwidth=2"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "    {p}{} -> {p}{} [label={}{style}];",
            c.src(f),
            c.tgt(f),
            quote(c.mor_name(f)),
            p = prefix
        );
    }
    let _ = writeln!(out, "  }}");
}

pub fn category(c: &FinCategory) -> String {
    let mut out = String::from("digraph category {\n  rankdir=LR;\n");
    cluster(&mut out, c, "o", "", &|_| false);
    out.push_str("}\n");
    out
}

/// Domain and codomain of `p` side by side, with the object assignment as
/// dotted edges; morphisms with a unique lift through `p` (the covering
/// part) are highlighted in the codomain.
pub fn functor(p: &Functor, covering_part: &[bool]) -> String {
    let (e, b) = (p.dom(), p.cod());
    let mut out = String::from("digraph functor {\n  rankdir=LR;\n  compound=true;\n");
    cluster(&mut out, e, "e", "domain", &|_| false);
    cluster(&mut out, b, "b", "codomain", &|f| {
        covering_part.get(f).copied().unwrap_or(false)
    });
    for a in e.objects() {
        let _ = writeln!(
            out,
            "  e{a} -> b{} [style=dotted, arrowhead=none];",
            p.obj(a)
        );
    }
    out.push_str("}\n");
    out
}

/// Morphisms `φ: b → b'` of the codomain such that every object over `b`
/// has exactly one lift of `φ` starting at it.
pub fn unique_lifts(p: &Functor) -> Vec<bool> {
    let (e, b) = (p.dom(), p.cod());
    b.morphisms()
        .map(|phi| {
            e.objects()
                .filter(|&x| p.obj(x) == b.src(phi))
                .all(|x| e.out_of(x).filter(|&g| p.mor(g) == phi).count() == 1)
        })
        .collect()
}
