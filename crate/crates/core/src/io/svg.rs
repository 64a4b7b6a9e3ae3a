use std::fmt::Write;

use super::{Body, Document};
use crate::cellular::{CellSet, HexSpace};
use crate::exactnum::{int, to_f64, Rational};
use crate::periodic1d::PeriodicSet;
use crate::space::{PeriodicLine, SetSpace};
use crate::szlam::{build_ordered_coloring, Coloring};

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn open(out: &mut String, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(WIDTH),
        h = num(height)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn legend<S: SetSpace>(out: &mut String, phi: &Coloring<S>, top: f64) {
    for (i, (label, class)) in phi.labels().iter().zip(phi.classes()).enumerate() {
        let y = top + 18.0 * i as f64;
        let _ = writeln!(
            out,
            r##"<rect x="{x}" y="{y}" width="12" height="12" fill="{c}" stroke="#333"/>"##,
            x = num(MARGIN),
            y = num(y),
            c = color(i)
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="12">{t}</text>"#,
            x = num(MARGIN + 18.0),
            y = num(y + 10.0),
            t = escape(&format!("{label} = {class}"))
        );
    }
}

/// Deterministic SVG of a document: bands over two periods for the line,
/// a patch of hexagons for the cellular model. The set `B` of Szlam data
/// (or the central tile of a cellular coloring) is outlined.
pub fn render_svg(doc: &Document) -> crate::Result<String> {
    match doc {
        Document::Line(body) => {
            let (phi, outline) = resolve(body)?;
            Ok(line_svg(&phi, outline.as_ref()))
        }
        Document::Hex(body) => {
            let (phi, outline) = resolve(body)?;
            Ok(hex_svg(&phi, outline.as_ref()))
        }
    }
}

fn resolve<S: SetSpace>(body: &Body<S>) -> crate::Result<(Coloring<S>, Option<S::Set>)> {
    Ok(match body {
        Body::Coloring(c) => (c.clone(), None),
        Body::Certificate(c) => (c.coloring.clone(), None),
        Body::Szlam(d) => (build_ordered_coloring(d)?, Some(d.b().clone())),
    })
}

fn line_svg(phi: &Coloring<PeriodicLine>, b: Option<&PeriodicSet>) -> String {
    let p = phi.space().period().clone();
    let scale = (WIDTH - 2.0 * MARGIN) / (2.0 * to_f64(&p));
    let x_of = |v: &Rational| MARGIN + to_f64(v) * scale;
    let (band_top, band_h) = (40.0, 40.0);
    let height = band_top + band_h + 60.0 + 18.0 * phi.len() as f64;
    let mut out = String::new();
    open(&mut out, height);

    for rep in 0..2 {
        let shift = &p * int(rep);
        for (i, class) in phi.classes().iter().enumerate() {
            for a in class.atoms() {
                let x0 = x_of(&(&a.lo + &shift));
                if a.is_point() {
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="{c}" stroke-width="3"/>"#,
                        x = num(x0),
                        y0 = num(band_top),
                        y1 = num(band_top + band_h),
                        c = color(i)
                    );
                } else {
                    let _ = writeln!(
                        out,
                        r#"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{c}"/>"#,
                        x = num(x0),
                        y = num(band_top),
                        w = num(to_f64(&a.length()) * scale),
                        h = num(band_h),
                        c = color(i)
                    );
                }
            }
        }
        if let Some(b) = b {
            for a in b.atoms() {
                let _ = writeln!(
                    out,
                    r#"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="none" stroke="black" stroke-width="2"/>"#,
                    x = num(x_of(&(&a.lo + &shift))),
                    y = num(band_top - 4.0),
                    w = num(to_f64(&a.length()) * scale),
                    h = num(band_h + 8.0)
                );
            }
        }
    }

    let mut ticks: Vec<Rational> = vec![int(0), p.clone()];
    for class in phi.classes() {
        ticks.extend(class.endpoints());
    }
    let mut all: Vec<Rational> = ticks.iter().flat_map(|t| [t.clone(), t + &p]).collect();
    all.sort();
    all.dedup();
    let tick_top = band_top + band_h;
    for t in all.iter().filter(|t| **t <= &p * int(2)) {
        let x = num(x_of(t));
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="black"/>"#,
            y0 = num(tick_top),
            y1 = num(tick_top + 6.0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="10" text-anchor="middle">{t}</text>"#,
            y = num(tick_top + 18.0)
        );
    }
    legend(&mut out, phi, tick_top + 32.0);
    out.push_str("</svg>\n");
    out
}

fn hex_svg(phi: &Coloring<HexSpace>, b: Option<&CellSet>) -> String {
    let space = phi.space();
    let q = space.quotient();
    let cells = space.patch();
    let polys: Vec<Vec<(f64, f64)>> =
        cells.iter().map(|c| space.cell_polygon(*c).iter().map(|v| v.to_f64()).collect()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in polys.iter().flatten() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let side = WIDTH - 2.0 * MARGIN;
    let scale = side / (x1 - x0).max(y1 - y0);
    let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, MARGIN + (y1 - y) * scale);
    let patch_h = (y1 - y0) * scale;
    let height = 2.0 * MARGIN + patch_h + 18.0 * phi.len() as f64 + 10.0;
    let mut out = String::new();
    open(&mut out, height);

    let points = |poly: &[(f64, f64)]| {
        poly.iter()
            .map(|&v| {
                let (x, y) = map(v);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut outlined = Vec::new();
    for (idx, (c, poly)) in cells.iter().zip(&polys).enumerate() {
        let e = q.element_of(&c[0].into(), &c[1].into());
        let class = phi.classes().iter().position(|s| s.contains(e)).unwrap_or(0);
        let _ = writeln!(
            out,
            r##"<polygon points="{p}" fill="{c}" stroke="#333" stroke-width="1"/>"##,
            p = points(poly),
            c = color(class)
        );
        let (cx, cy) = map(q.point(*c).to_f64());
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="monospace" font-size="11" text-anchor="middle">{t}</text>"#,
            x = num(cx),
            y = num(cy + 4.0),
            t = escape(&phi.labels()[class])
        );
        let mark = match b {
            Some(b) => b.contains(e),
            None => idx < q.order(),
        };
        if mark {
            outlined.push(points(poly));
        }
    }
    for p in outlined {
        let _ = writeln!(out, r#"<polygon points="{p}" fill="none" stroke="black" stroke-width="3"/>"#);
    }
    legend(&mut out, phi, MARGIN + patch_h + 20.0);
    out.push_str("</svg>\n");
    out
}
