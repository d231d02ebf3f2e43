use alloc::string::String;
use core::fmt::Write;

use super::Graph;

/// Write `graph` as N-Triples, one statement per line in graph order.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for triple in graph {
        // Writing to a String cannot fail.
        let _ = writeln!(out, "{triple}");
    }
    out
}
