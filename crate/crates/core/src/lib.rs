//! Render VoID (Vocabulary of Interlinked Datasets) descriptions as
//! LOD-cloud-style diagrams.
//!
//! The pipeline is four pure stages, each in its own module:
//!
//! 1. [`rdf`] parses Turtle or N-Triples into a [`rdf::Graph`].
//! 2. [`void`] reads the graph under VoID semantics and produces a
//!    [`void::DiagramModel`]: datasets become circles, linksets become arrows.
//! 3. [`layout`] sizes circles from their triple counts and places them with a
//!    seeded force-directed layout followed by overlap removal.
//! 4. [`svg`] writes the model and layout out as a standalone SVG document.
//!
//! The crate is `no_std` and only needs `alloc`. File and stream handling
//! lives in the `voidgraph` command-line crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod layout;
pub mod rdf;
pub mod svg;
pub mod void;

mod diag;

pub use diag::Warning;

use alloc::vec::Vec;

/// Result of running every stage on one document.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub model: void::DiagramModel,
    pub layout: layout::LayoutResult,
    pub svg: svg::SvgDocument,
    /// Warnings from every stage, in pipeline order.
    pub warnings: Vec<Warning>,
}

/// Why [`render`] produced no document.
#[derive(Debug, Clone, PartialEq)]
pub enum RenderError {
    Parse(rdf::ParseError),
    EmptyModel(void::EmptyModel),
    Layout(layout::LayoutError),
}

impl core::fmt::Display for RenderError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RenderError::Parse(e) => e.fmt(f),
            RenderError::EmptyModel(e) => e.fmt(f),
            RenderError::Layout(e) => e.fmt(f),
        }
    }
}

/// Parse, interpret, lay out, and emit in one call.
pub fn render(
    text: &str,
    format: rdf::Format,
    base: Option<&str>,
    config: &layout::LayoutConfig,
    style: &svg::Style,
) -> Result<Rendered, RenderError> {
    let parsed = rdf::parse(text, format, base).map_err(RenderError::Parse)?;
    let mut warnings: Vec<Warning> = parsed.diagnostics.iter().map(Warning::from).collect();

    let model = match void::extract_model(&parsed.graph) {
        Ok(model) => model,
        Err(mut empty) => {
            warnings.append(&mut empty.diagnostics);
            empty.diagnostics = warnings;
            return Err(RenderError::EmptyModel(empty));
        }
    };
    warnings.extend(model.diagnostics.iter().cloned());

    let layout = layout::run_layout(&model, config).map_err(RenderError::Layout)?;
    warnings.extend(layout.warnings.iter().cloned());

    let emitted = svg::emit_svg(&model, &layout, style);
    warnings.extend(emitted.warnings);

    Ok(Rendered {
        model,
        layout,
        svg: emitted.document,
        warnings,
    })
}
