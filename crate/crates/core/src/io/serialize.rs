use std::fmt::Write;

use super::{Body, DocSpace, Document, FORMAT_TAG};
use crate::szlam::Coloring;

/// Canonical text of a document: reduced rationals, normalized sets,
/// canonical translaters.
pub fn serialize(doc: &Document) -> String {
    match doc {
        Document::Line(b) => body_text(b),
        Document::Hex(b) => body_text(b),
    }
}

fn classes_text<S: DocSpace>(out: &mut String, c: &Coloring<S>) {
    for (label, class) in c.labels().iter().zip(c.classes()) {
        let _ = writeln!(out, "class {label} = {}", c.space().format_set(class));
    }
}

fn body_text<S: DocSpace>(body: &Body<S>) -> String {
    let space = body.space();
    let mut out = format!("{FORMAT_TAG} {}\nspace {}\n", body.kind(), space.space_line());
    match body {
        Body::Coloring(c) => classes_text(&mut out, c),
        Body::Szlam(d) => {
            let _ = writeln!(out, "set B = {}", space.format_set(d.b()));
            for f in d.f() {
                let _ = writeln!(out, "f {}", space.format_shift(f));
            }
        }
        Body::Certificate(c) => {
            classes_text(&mut out, &c.coloring);
            let _ = writeln!(out, "ordering {}", c.certificate.ordering.join(", "));
            if !c.certificate.translaters.is_empty() {
                let ts: Vec<String> =
                    c.certificate.translaters.iter().map(|t| space.format_shift(&space.canonical(t))).collect();
                out.push_str("t ");
                out.push_str(&ts.join(", "));
                if let Some(g) = &c.given {
                    let _ = write!(out, "  # given {g}");
                }
                out.push('\n');
            }
        }
    }
    out
}
