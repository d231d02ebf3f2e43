//! The RDF layer: terms, triples, a deduplicating graph, and parsers for the
//! Turtle subset used by VoID descriptions and for N-Triples.

mod escape;
mod graph;
mod iri;
mod ntriples;
mod parser;
mod prefix;
mod term;

pub use escape::{unescape_string, EscapeError};
pub use graph::Graph;
pub(crate) use iri::path_start as iri_path_start;
pub use iri::{has_scheme, resolve_iri};
pub use ntriples::serialize_ntriples;
pub use parser::parse;
pub use prefix::{expand_prefixed_name, PrefixError};
pub use term::{Literal, Term, Triple};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

/// Input serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Turtle,
    NTriples,
}

/// Guess the serialization of `text`.
///
/// A `.ttl` or `.nt` filename hint wins. Otherwise any line that opens with a
/// Turtle or SPARQL-style directive selects Turtle, and everything else is
/// treated as N-Triples.
pub fn detect_format(text: &str, filename_hint: Option<&str>) -> Format {
    if let Some(hint) = filename_hint {
        if hint.ends_with(".ttl") {
            return Format::Turtle;
        }
        if hint.ends_with(".nt") {
            return Format::NTriples;
        }
    }
    let directive = text.lines().any(|line| {
        let line = line.trim_start_matches(['\u{feff}', ' ', '\t']);
        ["@prefix", "@base", "PREFIX", "BASE"]
            .iter()
            .any(|d| line.starts_with(d))
    });
    if directive {
        Format::Turtle
    } else {
        Format::NTriples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A positioned parser message. Line and column are 1-based; columns count
/// Unicode scalar values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// A successfully parsed document.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub graph: Graph,
    /// Warnings only; errors abort the parse.
    pub diagnostics: Vec<ParseDiagnostic>,
}

/// The first error in a document, plus any warnings seen before it.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub error: ParseDiagnostic,
    pub warnings: Vec<ParseDiagnostic>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.error.fmt(f)
    }
}
