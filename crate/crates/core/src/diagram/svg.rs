use std::fmt::Write;

use crate::persistence::PersistenceDiagram;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    /// Axis range shared by birth and death; computed from the data if unset.
    pub bounds: Option<(f64, f64)>,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 400,
            height: 400,
            bounds: None,
            title: None,
        }
    }
}

const MARGIN_LEFT: f64 = 55.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 45.0;
// gap between the top of the data range and the line for infinite deaths
const INFINITY_GAP: f64 = 18.0;

const H0_COLOR: &str = "#1f77b4";
const H1_COLOR: &str = "#ff7f0e";

/// Axis range covering every finite coordinate, padded when it collapses to
/// a single value.
fn auto_bounds(diagram: &PersistenceDiagram) -> (f64, f64) {
    let values = diagram
        .pairs
        .iter()
        .flat_map(|p| [p.birth, p.death])
        .filter(|v| v.is_finite());
    let (lo, hi) = values.fold((0.0f64, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi == f64::NEG_INFINITY {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

fn padded((lo, hi): (f64, f64)) -> (f64, f64) {
    if hi > lo && (hi - lo).is_finite() {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Scatter plot of (birth, death) with the diagonal, one marker shape per
/// homology degree, and essential classes on a dashed line above the data.
/// Output bytes depend only on the diagram and options.
pub fn render_svg(diagram: &PersistenceDiagram, options: &SvgOptions) -> String {
    let (lo, hi) = padded(options.bounds.unwrap_or_else(|| auto_bounds(diagram)));
    let width = f64::from(options.width.max(100));
    let height = f64::from(options.height.max(100));
    let plot_w = width - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = height - MARGIN_TOP - MARGIN_BOTTOM - INFINITY_GAP;
    let x_of = |v: f64| MARGIN_LEFT + (v - lo) / (hi - lo) * plot_w;
    let y_of = |v: f64| MARGIN_TOP + INFINITY_GAP + (hi - v) / (hi - lo) * plot_h;
    let y_inf = MARGIN_TOP;
    let bottom = MARGIN_TOP + INFINITY_GAP + plot_h;
    let right = MARGIN_LEFT + plot_w;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#,
        w = options.width.max(100),
        h = options.height.max(100)
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
    if let Some(title) = &options.title {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
            width / 2.0,
            escape(title)
        );
    }

    s.push_str("<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n");
    let _ = writeln!(s, r#"<line x1="{MARGIN_LEFT:.2}" y1="{bottom:.2}" x2="{right:.2}" y2="{bottom:.2}"/>"#);
    let _ = writeln!(s, r#"<line x1="{MARGIN_LEFT:.2}" y1="{bottom:.2}" x2="{MARGIN_LEFT:.2}" y2="{y_inf:.2}"/>"#);
    s.push_str("</g>\n<g class=\"ticks\" fill=\"black\">\n");
    for k in 0..=4 {
        let v = lo + (hi - lo) * f64::from(k) / 4.0;
        let (x, y) = (x_of(v), y_of(v));
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{bottom:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{v:.2}</text>"#,
            bottom + 4.0,
            bottom + 16.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_LEFT:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.2}</text>"#,
            MARGIN_LEFT - 4.0,
            MARGIN_LEFT - 6.0,
            y + 4.0
        );
    }
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">birth</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        height - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">death</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let _ = writeln!(
        s,
        r#"<line class="diagonal" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-width="1"/>"#,
        x_of(lo),
        y_of(lo),
        x_of(hi),
        y_of(hi)
    );

    if diagram.pairs.iter().any(|p| p.is_essential()) {
        let _ = writeln!(
            s,
            r#"<line class="infinity" x1="{MARGIN_LEFT:.2}" y1="{y_inf:.2}" x2="{right:.2}" y2="{y_inf:.2}" stroke="gray" stroke-dasharray="4 3"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">&#8734;</text>"#,
            MARGIN_LEFT - 6.0,
            y_inf + 4.0
        );
    }

    let mut pairs = diagram.pairs.clone();
    pairs.sort_by(|a, b| a.canonical_cmp(b));
    s.push_str("<g class=\"points\">\n");
    for p in &pairs {
        let x = x_of(p.birth);
        let color = if p.homology_dimension == 0 { H0_COLOR } else { H1_COLOR };
        let death_attr = if p.is_essential() {
            "inf".to_string()
        } else {
            p.death.to_string()
        };
        let data = format!(
            r#"data-dim="{}" data-birth="{}" data-death="{}""#,
            p.homology_dimension, p.birth, death_attr
        );
        if p.is_essential() {
            let y = y_inf;
            let _ = writeln!(
                s,
                r#"<path class="essential" {data} d="M{x:.2} {:.2} L{:.2} {y:.2} L{x:.2} {:.2} L{:.2} {y:.2} Z" fill="{color}" stroke="black" stroke-width="0.5"/>"#,
                y - 5.0,
                x + 5.0,
                y + 5.0,
                x - 5.0
            );
        } else if p.homology_dimension == 0 {
            let _ = writeln!(
                s,
                r#"<circle class="h0" {data} cx="{x:.2}" cy="{:.2}" r="3.5" fill="{color}" fill-opacity="0.8"/>"#,
                y_of(p.death)
            );
        } else {
            let y = y_of(p.death);
            let _ = writeln!(
                s,
                r#"<path class="h1" {data} d="M{x:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2} Z" fill="{color}" fill-opacity="0.8"/>"#,
                y - 4.5,
                x + 4.0,
                y + 3.0,
                x - 4.0,
                y + 3.0
            );
        }
    }
    s.push_str("</g>\n");

    let lx = right - 60.0;
    let ly = bottom - 30.0;
    let _ = writeln!(
        s,
        r#"<g class="legend"><circle cx="{lx:.2}" cy="{ly:.2}" r="3.5" fill="{H0_COLOR}"/><text x="{:.2}" y="{:.2}">H0</text><path d="M{lx:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2} Z" fill="{H1_COLOR}"/><text x="{:.2}" y="{:.2}">H1</text></g>"#,
        lx + 8.0,
        ly + 4.0,
        ly + 11.5,
        lx + 4.0,
        ly + 19.0,
        lx - 4.0,
        ly + 19.0,
        lx + 8.0,
        ly + 20.0
    );
    s.push_str("</svg>\n");
    s
}
