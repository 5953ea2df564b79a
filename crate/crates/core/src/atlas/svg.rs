use std::fmt::Write;

use super::{AtlasDocument, ChartScene, Glyph, Marker, MarkerOrigin};

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Side of each disc's square, in px.
    pub disc_size: f64,
    pub gutter: f64,
    pub curve_color: String,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { disc_size: 400.0, gutter: 40.0, curve_color: "#2a5599".into() }
    }
}

fn f(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Frame {
    cx: f64,
    cy: f64,
    r: f64,
}

impl Frame {
    fn at(&self, p: (f64, f64)) -> (f64, f64) {
        (self.cx + self.r * p.0, self.cy - self.r * p.1)
    }
}

const GLYPH: f64 = 5.0;
const TITLE_ROOM: f64 = 16.0;

fn glyph_class(m: &Marker) -> String {
    let kind = match m.glyph {
        Glyph::Saddle => "saddle",
        Glyph::Node => "node",
        Glyph::Focus => "focus",
        Glyph::CenterOrFocus => "center-or-focus",
        Glyph::Degenerate => "degenerate",
        Glyph::Contact { .. } => "contact",
    };
    let origin = match m.origin {
        MarkerOrigin::FiniteEquilibrium => "eq finite",
        MarkerOrigin::InfiniteEquilibrium => "eq infinite",
        MarkerOrigin::AxisContact => "axis",
        MarkerOrigin::EquatorialContact => "equatorial",
    };
    let place = if m.on_boundary { " boundary" } else { "" };
    format!("marker {kind} {origin}{place}")
}

fn spiral(c: (f64, f64)) -> String {
    let mut d = String::new();
    for k in 0..=24 {
        let t = k as f64 / 24.0 * 3.0 * std::f64::consts::PI;
        let r = GLYPH * (0.15 + 0.85 * k as f64 / 24.0);
        let p = (c.0 + r * t.cos(), c.1 - r * t.sin());
        let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, f(p.0), f(p.1));
    }
    d
}

fn marker_svg(out: &mut String, fr: &Frame, m: &Marker) {
    let c = fr.at(m.pos);
    let class = glyph_class(m);
    let (x, y, g) = (c.0, c.1, GLYPH);
    let _ = match m.glyph {
        Glyph::Saddle => writeln!(
            out,
            r#"<path class="{class}" d="M{} {} L{} {} M{} {} L{} {}" stroke="black" stroke-width="2"/>"#,
            f(x - g), f(y - g), f(x + g), f(y + g), f(x - g), f(y + g), f(x + g), f(y - g)
        ),
        Glyph::Node => writeln!(out, r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="black"/>"#, f(x), f(y), f(g)),
        Glyph::Focus | Glyph::CenterOrFocus => {
            writeln!(out, r#"<path class="{class}" d="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, spiral(c))
        }
        Glyph::Degenerate => writeln!(
            out,
            r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}" fill="black"/>"#,
            f(x - g), f(y - g), f(2.0 * g), f(2.0 * g)
        ),
        Glyph::Contact { toward: Some(t), .. } => {
            // half-disc bulging toward t (given in disc coordinates)
            let (tx, ty) = (t.0, -t.1);
            let a = (x - g * ty, y + g * tx);
            let b = (x + g * ty, y - g * tx);
            let sweep = 1;
            writeln!(
                out,
                r##"<path class="{class}" d="M{} {} A{} {} 0 0 {sweep} {} {} Z" fill="#c0392b"/>"##,
                f(b.0), f(b.1), f(g), f(g), f(a.0), f(a.1)
            )
        }
        Glyph::Contact { toward: None, certain } => {
            let fill = if certain { "#c0392b" } else { "none" };
            writeln!(
                out,
                r##"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}" stroke="#c0392b"/>"##,
                f(x), f(y), f(g)
            )
        }
    };
}

fn scene_svg(out: &mut String, fr: &Frame, scene: &ChartScene, opts: &SvgOptions) {
    let [u, v] = scene.chart.var_names();
    let _ = writeln!(out, r#"<g class="scene" id="scene-{}">"#, scene.chart.label());
    let _ = writeln!(
        out,
        r##"<circle class="boundary" cx="{}" cy="{}" r="{}" fill="#fbfbf8" stroke="black" stroke-width="1.5"/>"##,
        f(fr.cx), f(fr.cy), f(fr.r)
    );
    let _ = writeln!(
        out,
        r##"<path class="axes" d="M{} {} L{} {} M{} {} L{} {}" stroke="#999999" stroke-width="0.5"/>"##,
        f(fr.cx - fr.r), f(fr.cy), f(fr.cx + fr.r), f(fr.cy), f(fr.cx), f(fr.cy - fr.r), f(fr.cx), f(fr.cy + fr.r)
    );
    // antipodal identification ticks: each pair shares a label
    for k in 0..8 {
        let t = k as f64 * std::f64::consts::PI / 4.0;
        let a = fr.at((t.cos(), t.sin()));
        let b = fr.at((1.04 * t.cos(), 1.04 * t.sin()));
        let l = fr.at((1.07 * t.cos(), 1.07 * t.sin()));
        let _ = writeln!(
            out,
            r#"<path class="tick" d="M{} {} L{} {}" stroke="black"/><text class="tick-label" x="{}" y="{}" font-size="9" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            f(a.0), f(a.1), f(b.0), f(b.1), f(l.0), f(l.1), k % 4 + 1
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="title" x="{}" y="{}" font-size="14" text-anchor="middle">({u}, {v})</text>"#,
        f(fr.cx), f(fr.cy + fr.r + 34.0)
    );
    let _ = writeln!(
        out,
        r#"<g class="curves" fill="none" stroke="{}" stroke-width="0.8">"#,
        opts.curve_color
    );
    for c in &scene.curves {
        let mut d = String::new();
        for (k, &p) in c.iter().enumerate() {
            let q = fr.at(p);
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, f(q.0), f(q.1));
        }
        let _ = writeln!(out, r#"<path d="{d}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    for m in &scene.markers {
        marker_svg(out, fr, m);
    }
    let _ = writeln!(out, "</g>");
}

/// Standalone SVG: three discs side by side with gutters, in scene order.
pub fn render_svg(doc: &AtlasDocument, opts: &SvgOptions) -> String {
    render_scenes(&doc.scenes, opts)
}

pub(crate) fn render_scenes(scenes: &[ChartScene], opts: &SvgOptions) -> String {
    let n = scenes.len().max(1) as f64;
    let w = n * opts.disc_size + (n + 1.0) * opts.gutter;
    let h = opts.disc_size + 2.0 * opts.gutter + TITLE_ROOM;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(w), f(h), f(w), f(h)
    );
    let _ = writeln!(out, r#"<rect class="background" width="{}" height="{}" fill="white"/>"#, f(w), f(h));
    for (i, scene) in scenes.iter().enumerate() {
        let fr = Frame {
            cx: opts.gutter + opts.disc_size / 2.0 + i as f64 * (opts.disc_size + opts.gutter),
            cy: opts.gutter + opts.disc_size / 2.0,
            r: opts.disc_size / 2.0,
        };
        scene_svg(&mut out, &fr, scene, opts);
    }
    let _ = writeln!(out, "</svg>");
    out
}
