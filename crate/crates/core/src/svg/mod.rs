//! SVG output.
//!
//! The document layout is fixed so output can be compared byte for byte:
//! XML declaration, `svg` root, a `defs` block holding the arrowhead marker,
//! every edge as a `line`, then every node as a `g` with a `circle` and a
//! centered `text` label. All numbers are written with two decimals.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::layout::{LayoutResult, Vec2};
use crate::void::DiagramModel;
use crate::Warning;

pub const SVG_NS: &str = "http://www.w3.org/2000/svg";

/// Perpendicular shift applied to each line of an A→B / B→A pair.
pub const BIDIRECTIONAL_OFFSET: f64 = 4.0;

pub const DEFAULT_PALETTE: [&str; 12] = [
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c", "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3fa2",
    "#ffff99", "#b15928",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub palette: Vec<String>,
    pub stroke: String,
    pub stroke_width: f64,
    pub edge_width: f64,
    pub arrow_length: f64,
    pub arrow_half_width: f64,
    /// Space left between a circle's rim and the end of an edge.
    pub rim_gap: f64,
    pub font_family: String,
    pub label_color: String,
    pub show_labels: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            palette: DEFAULT_PALETTE.iter().map(|c| c.to_string()).collect(),
            stroke: "#333333".into(),
            stroke_width: 1.0,
            edge_width: 1.5,
            arrow_length: 8.0,
            arrow_half_width: 3.0,
            rim_gap: 2.0,
            font_family: "sans-serif".into(),
            label_color: "#000000".into(),
            show_labels: true,
        }
    }
}

/// A complete SVG document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub document: SvgDocument,
    pub warnings: Vec<Warning>,
}

/// Endpoints of the visible shaft of an edge between two circles, leaving
/// `gap` before each rim and `arrow_len` in front of the target for the
/// arrowhead. `None` when nothing of positive length would remain.
pub fn trim_edge(c1: Vec2, r1: f64, c2: Vec2, r2: f64, gap: f64, arrow_len: f64) -> Option<(Vec2, Vec2)> {
    let delta = c2 - c1;
    let d = delta.length();
    if d == 0.0 || d <= r1 + r2 + 2.0 * gap + arrow_len {
        return None;
    }
    let u = delta * (1.0 / d);
    Some((c1 + u * (r1 + gap), c2 - u * (r2 + gap + arrow_len)))
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Fill color for a node, chosen by hashing its IRI.
///
/// # Panics
///
/// If `palette` is empty.
pub fn color_for<'a, S: AsRef<str>>(iri: &str, palette: &'a [S]) -> &'a str {
    let index = fnv1a64(iri.as_bytes()) % palette.len() as u64;
    palette[index as usize].as_ref()
}

pub fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

/// Replace characters XML 1.0 cannot carry at all, even escaped.
fn xml_chars_only(text: &str) -> String {
    text.chars()
        .map(|c| match c {
            '\t' | '\n' | '\r' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'.. => c,
            _ => char::REPLACEMENT_CHARACTER,
        })
        .collect()
}

/// Two fraction digits, halves rounded away from zero, never `-0.00`.
pub fn format_coord(value: f64) -> String {
    let hundredths = libm::round(value * 100.0) as i64;
    if hundredths == 0 {
        return "0.00".into();
    }
    let sign = if hundredths < 0 { "-" } else { "" };
    let abs = hundredths.unsigned_abs();
    format!("{sign}{}.{:02}", abs / 100, abs % 100)
}

/// Font size for a circle's label.
pub fn font_size(radius: f64) -> f64 {
    (0.35 * radius).clamp(8.0, 16.0)
}

/// Serialize `model` as laid out by `layout`.
///
/// Every model node must have a placement in `layout`; edges between
/// circles too close to fit a shaft are left out and counted in a warning.
pub fn emit_svg(model: &DiagramModel, layout: &LayoutResult, style: &Style) -> Emitted {
    let origin = layout.bounds.min;
    let width = format_coord(layout.bounds.width());
    let height = format_coord(layout.bounds.height());
    let f = format_coord;
    let mut out = String::new();
    let mut warnings = Vec::new();

    // Writing into a String is infallible; results are ignored below.
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="{SVG_NS}" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let len = f(style.arrow_length);
    let half = f(style.arrow_half_width);
    let full = f(2.0 * style.arrow_half_width);
    let _ = writeln!(out, "  <defs>");
    let _ = writeln!(
        out,
        r#"    <marker id="arrow" viewBox="0 0 {len} {full}" refX="0.00" refY="{half}" markerWidth="{len}" markerHeight="{full}" markerUnits="userSpaceOnUse" orient="auto">"#
    );
    let _ = writeln!(
        out,
        r#"      <path d="M 0.00 0.00 L {len} {half} L 0.00 {full} Z" fill="{}"/>"#,
        escape_xml(&style.stroke)
    );
    let _ = writeln!(out, "    </marker>");
    let _ = writeln!(out, "  </defs>");

    let pairs: BTreeSet<(&str, &str)> = model
        .edges
        .iter()
        .map(|e| (e.source.as_str(), e.target.as_str()))
        .collect();
    let mut omitted = 0usize;
    for edge in &model.edges {
        let (Some(a), Some(b)) = (layout.get(&edge.source), layout.get(&edge.target)) else {
            omitted += 1;
            continue;
        };
        let arrow = if edge.directed { style.arrow_length } else { 0.0 };
        let Some((mut start, mut end)) = trim_edge(
            a.position - origin,
            a.radius,
            b.position - origin,
            b.radius,
            style.rim_gap,
            arrow,
        ) else {
            omitted += 1;
            continue;
        };
        if pairs.contains(&(edge.target.as_str(), edge.source.as_str())) {
            let u = b.position - a.position;
            let shift = u.perp() * (BIDIRECTIONAL_OFFSET / u.length());
            start += shift;
            end += shift;
        }
        let marker = if edge.directed {
            r#" marker-end="url(#arrow)""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"{marker}/>"#,
            f(start.x),
            f(start.y),
            f(end.x),
            f(end.y),
            escape_xml(&style.stroke),
            f(style.edge_width),
        );
    }
    if omitted > 0 {
        warnings.push(Warning::new(format!(
            "{omitted} edge(s) omitted: circles too close to draw an arrow"
        )));
    }

    for node in &model.nodes {
        let Some(p) = layout.get(&node.iri) else {
            warnings.push(Warning::new(format!("node {} has no position; omitted", node.iri)));
            continue;
        };
        let c = p.position - origin;
        let fill = if style.palette.is_empty() {
            DEFAULT_PALETTE[0]
        } else {
            color_for(&node.iri, &style.palette)
        };
        let _ = writeln!(out, "  <g>");
        let _ = writeln!(
            out,
            r#"    <circle cx="{}" cy="{}" r="{}" fill="{}" stroke="{}" stroke-width="{}"/>"#,
            f(c.x),
            f(c.y),
            f(p.radius),
            escape_xml(fill),
            escape_xml(&style.stroke),
            f(style.stroke_width),
        );
        if style.show_labels {
            let _ = writeln!(
                out,
                r#"    <text x="{}" y="{}" text-anchor="middle" dominant-baseline="central" font-family="{}" font-size="{}" fill="{}">{}</text>"#,
                f(c.x),
                f(c.y),
                escape_xml(&style.font_family),
                f(font_size(p.radius)),
                escape_xml(&style.label_color),
                escape_xml(&xml_chars_only(&node.label)),
            );
        }
        let _ = writeln!(out, "  </g>");
    }
    let _ = writeln!(out, "</svg>");

    Emitted {
        document: SvgDocument { text: out },
        warnings,
    }
}
