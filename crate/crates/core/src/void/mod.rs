//! VoID interpretation: decide which resources are drawn as circles and which
//! as arrows, and with what labels and sizes.

pub mod vocab;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::rdf::{Graph, Term};
use crate::Warning;

/// One circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetNode {
    pub iri: String,
    pub label: String,
    pub triples: Option<u64>,
    /// `false` for resources that only appear as a linkset target.
    pub declared: bool,
}

/// One arrow between two circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkEdge {
    pub source: String,
    pub target: String,
    pub triples: Option<u64>,
    /// `false` when the direction was picked by IRI order rather than read
    /// from the description; such edges are drawn without an arrowhead.
    pub directed: bool,
    /// The linkset resource the edge came from (`_:label` for blank nodes).
    pub origin: String,
}

/// Nodes sorted by IRI and edges sorted by `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiagramModel {
    pub nodes: Vec<DatasetNode>,
    pub edges: Vec<LinkEdge>,
    pub diagnostics: Vec<Warning>,
}

impl DiagramModel {
    /// Assemble a model, sorting nodes and edges into canonical order.
    ///
    /// The caller is responsible for the structural invariants (unique node
    /// IRIs, no self-loops, endpoints present); [`DiagramModel::validate`]
    /// checks them.
    pub fn new(mut nodes: Vec<DatasetNode>, mut edges: Vec<LinkEdge>) -> Self {
        nodes.sort_by(|a, b| a.iri.cmp(&b.iri));
        edges.sort_by(|a, b| (&a.source, &a.target, &a.origin).cmp(&(&b.source, &b.target, &b.origin)));
        DiagramModel {
            nodes,
            edges,
            diagnostics: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_index(&self, iri: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.iri.as_str().cmp(iri)).ok()
    }

    pub fn implicit_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.declared).count()
    }

    /// Check the structural invariants, returning a description of the first
    /// violation.
    pub fn validate(&self) -> Result<(), String> {
        for pair in self.nodes.windows(2) {
            if pair[0].iri >= pair[1].iri {
                return Err(format!("nodes out of order or duplicated at {}", pair[1].iri));
            }
        }
        let mut pairs = BTreeSet::new();
        for e in &self.edges {
            if e.source == e.target {
                return Err(format!("self-loop on {}", e.source));
            }
            for end in [&e.source, &e.target] {
                if self.node_index(end).is_none() {
                    return Err(format!("edge endpoint {end} has no node"));
                }
            }
            if !pairs.insert((&e.source, &e.target)) {
                return Err(format!("duplicate edge {} -> {}", e.source, e.target));
            }
        }
        Ok(())
    }
}

/// Typed resources found in a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    pub datasets: BTreeSet<Term>,
    pub linksets: BTreeSet<Term>,
}

/// Split typed subjects into datasets and linksets. A resource typed as both
/// counts as a linkset only.
pub fn classify_resources(graph: &Graph) -> Classification {
    let dataset = Term::iri(vocab::DATASET);
    let linkset = Term::iri(vocab::LINKSET);
    let linksets: BTreeSet<Term> = graph.subjects(vocab::RDF_TYPE, &linkset).cloned().collect();
    let datasets = graph
        .subjects(vocab::RDF_TYPE, &dataset)
        .filter(|s| !linksets.contains(*s))
        .cloned()
        .collect();
    Classification { datasets, linksets }
}

/// String used to refer to a resource in edges and messages.
pub fn resource_id(term: &Term) -> String {
    match term {
        Term::Iri(iri) => iri.clone(),
        Term::Blank(label) => format!("_:{label}"),
        Term::Literal(_) => term.to_string(),
    }
}

fn distinct_objects(graph: &Graph, subject: &Term, predicate: &str) -> Vec<Term> {
    let set: BTreeSet<&Term> = graph.objects(subject, predicate).collect();
    set.into_iter().cloned().collect()
}

/// Read the triple count of `resource`.
///
/// Each `void:triples` literal is read as an optionally signed decimal
/// integer. Negative or unparseable values are ignored with a warning; when
/// several valid values remain the largest wins, also with a warning.
pub fn read_triple_count(graph: &Graph, resource: &Term) -> (Option<u64>, Vec<Warning>) {
    let id = resource_id(resource);
    let mut warnings = Vec::new();
    let mut values = Vec::new();
    for object in graph.objects(resource, vocab::TRIPLES) {
        let Some(lit) = object.as_literal() else {
            warnings.push(Warning::new(format!(
                "{id}: void:triples value {object} is not a literal; ignored"
            )));
            continue;
        };
        match parse_count(lit.lexical()) {
            Ok(n) => values.push(n),
            Err(reason) => warnings.push(Warning::new(format!(
                "{id}: void:triples value \"{}\" {reason}; ignored",
                lit.lexical()
            ))),
        }
    }
    if values.len() > 1 {
        warnings.push(Warning::new(format!(
            "{id}: {} void:triples values; using the largest",
            values.len()
        )));
    }
    (values.into_iter().max(), warnings)
}

fn parse_count(lexical: &str) -> Result<u64, &'static str> {
    let (negative, digits) = match lexical.as_bytes().first() {
        Some(b'-') => (true, &lexical[1..]),
        Some(b'+') => (false, &lexical[1..]),
        _ => (false, lexical),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err("is not an integer");
    }
    if negative && digits.bytes().any(|b| b != b'0') {
        return Err("is negative");
    }
    digits.parse().map_err(|_| "is too large")
}

/// Pick a display label: `dcterms:title`, then `rdfs:label`, then the IRI
/// fragment, then the last path segment, then the whole IRI.
pub fn resolve_label(graph: &Graph, resource: &Term) -> String {
    for predicate in [vocab::DCTERMS_TITLE, vocab::RDFS_LABEL] {
        let best = graph
            .objects(resource, predicate)
            .filter_map(Term::as_literal)
            .map(|l| l.lexical())
            .filter(|s| !s.is_empty())
            .min();
        if let Some(label) = best {
            return label.to_string();
        }
    }
    let id = resource_id(resource);
    let Term::Iri(iri) = resource else {
        return id;
    };
    if let Some((_, fragment)) = iri.rsplit_once('#') {
        if !fragment.is_empty() {
            return fragment.to_string();
        }
    }
    let without_fragment = iri.split('#').next().unwrap_or(iri);
    let trimmed = without_fragment.strip_suffix('/').unwrap_or(without_fragment);
    let path_start = crate::rdf::iri_path_start(trimmed);
    if let Some(slash) = trimmed.rfind('/') {
        let segment = &trimmed[slash + 1..];
        if slash >= path_start && !segment.is_empty() {
            return segment.to_string();
        }
    }
    id
}

/// Turn one linkset into an edge, or explain why it cannot be drawn.
///
/// Direction comes from `void:subjectsTarget`/`void:objectsTarget` when both
/// have exactly one value. Otherwise the linkset needs exactly two
/// `void:target` values; if exactly one of them lists the linkset as a
/// `void:subset`, that one is the source. Failing both, the edge runs from the
/// smaller IRI to the larger and is marked undirected.
///
/// Warnings from reading the linkset's triple count are appended to
/// `warnings`; the skip reason is returned as the error.
pub fn resolve_edge(
    graph: &Graph,
    linkset: &Term,
    classes: &Classification,
    warnings: &mut Vec<Warning>,
) -> Result<LinkEdge, Warning> {
    let id = resource_id(linkset);
    let skip = |reason: String| Warning::new(format!("linkset {id} skipped: {reason}"));

    let endpoint = |term: &Term, role: &str| -> Result<String, Warning> {
        match term {
            Term::Iri(iri) if classes.linksets.contains(term) => {
                Err(skip(format!("{role} <{iri}> is itself a linkset")))
            }
            Term::Iri(iri) => Ok(iri.clone()),
            other => Err(skip(format!("{role} {other} is not an IRI"))),
        }
    };

    let subjects = distinct_objects(graph, linkset, vocab::SUBJECTS_TARGET);
    let objects = distinct_objects(graph, linkset, vocab::OBJECTS_TARGET);
    let (source, target, directed) = if subjects.len() == 1 && objects.len() == 1 {
        (
            endpoint(&subjects[0], "subjectsTarget")?,
            endpoint(&objects[0], "objectsTarget")?,
            true,
        )
    } else {
        let targets = distinct_objects(graph, linkset, vocab::TARGET);
        if targets.len() != 2 {
            return Err(skip(format!(
                "{} void:target value(s), expected exactly two",
                targets.len()
            )));
        }
        let a = endpoint(&targets[0], "target")?;
        let b = endpoint(&targets[1], "target")?;
        let parents: Vec<&Term> = graph
            .subjects(vocab::SUBSET, linkset)
            .filter(|p| **p == targets[0] || **p == targets[1])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        match parents.as_slice() {
            [parent] if **parent == targets[0] => (a, b, true),
            [_] => (b, a, true),
            _ if a <= b => (a, b, false),
            _ => (b, a, false),
        }
    };
    if source == target {
        return Err(skip(format!("self-loop on <{source}>")));
    }

    let (triples, mut count_warnings) = read_triple_count(graph, linkset);
    warnings.append(&mut count_warnings);
    Ok(LinkEdge {
        source,
        target,
        triples,
        directed,
        origin: id,
    })
}

/// Returned by [`extract_model`] when nothing would be drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyModel {
    pub diagnostics: Vec<Warning>,
}

impl fmt::Display for EmptyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("no datasets found")
    }
}

/// Build the diagram model for `graph`.
pub fn extract_model(graph: &Graph) -> Result<DiagramModel, EmptyModel> {
    let classes = classify_resources(graph);
    let mut warnings = Vec::new();

    let mut nodes: BTreeMap<String, DatasetNode> = BTreeMap::new();
    for dataset in &classes.datasets {
        let Term::Iri(iri) = dataset else {
            warnings.push(Warning::new(format!(
                "dataset {} skipped: blank-node datasets cannot be drawn",
                resource_id(dataset)
            )));
            continue;
        };
        let (triples, mut count_warnings) = read_triple_count(graph, dataset);
        warnings.append(&mut count_warnings);
        nodes.insert(
            iri.clone(),
            DatasetNode {
                iri: iri.clone(),
                label: resolve_label(graph, dataset),
                triples,
                declared: true,
            },
        );
    }

    let mut edges: BTreeMap<(String, String), LinkEdge> = BTreeMap::new();
    for linkset in &classes.linksets {
        let edge = match resolve_edge(graph, linkset, &classes, &mut warnings) {
            Ok(edge) => edge,
            Err(w) => {
                warnings.push(w);
                continue;
            }
        };
        for end in [&edge.source, &edge.target] {
            nodes.entry(end.clone()).or_insert_with(|| DatasetNode {
                iri: end.clone(),
                label: resolve_label(graph, &Term::iri(end.as_str())),
                triples: None,
                declared: false,
            });
        }
        match edges.entry((edge.source.clone(), edge.target.clone())) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(edge);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                let merged = slot.get_mut();
                merged.triples = match (merged.triples, edge.triples) {
                    (Some(a), Some(b)) => Some(a.saturating_add(b)),
                    (a, b) => a.or(b),
                };
                merged.directed |= edge.directed;
                if edge.origin < merged.origin {
                    merged.origin = edge.origin;
                }
            }
        }
    }

    if nodes.is_empty() {
        return Err(EmptyModel { diagnostics: warnings });
    }
    let mut model = DiagramModel::new(nodes.into_values().collect(), edges.into_values().collect());
    model.diagnostics = warnings;
    Ok(model)
}
