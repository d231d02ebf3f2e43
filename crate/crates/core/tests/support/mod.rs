//! Shared test helpers: comparing parser output against the oxttl reference
//! parser, up to blank-node renaming, and the Turtle test corpus.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use voidgraph_core::layout::SplitMix64;
use voidgraph_core::rdf::{Graph, Literal, Term, Triple, XSD_INTEGER};

/// A parser-neutral term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Iri(String),
    Blank(String),
    Literal {
        lexical: String,
        datatype: String,
        language: Option<String>,
    },
}

pub type Statement = [Node; 3];

fn from_term(t: &Term) -> Node {
    match t {
        Term::Iri(s) => Node::Iri(s.clone()),
        Term::Blank(s) => Node::Blank(s.clone()),
        Term::Literal(l) => Node::Literal {
            lexical: l.lexical().to_string(),
            datatype: l.datatype().to_string(),
            language: l.language().map(str::to_string),
        },
    }
}

pub fn from_graph(g: &Graph) -> BTreeSet<Statement> {
    g.iter()
        .map(|t| [from_term(&t.subject), from_term(&t.predicate), from_term(&t.object)])
        .collect()
}

fn from_ox_term(t: &oxrdf::Term) -> Node {
    match t {
        oxrdf::Term::NamedNode(n) => Node::Iri(n.as_str().to_string()),
        oxrdf::Term::BlankNode(b) => Node::Blank(b.as_str().to_string()),
        oxrdf::Term::Literal(l) => Node::Literal {
            lexical: l.value().to_string(),
            datatype: l.datatype().as_str().to_string(),
            language: l.language().map(str::to_string),
        },
    }
}

/// Parse Turtle with oxttl. A leading byte-order mark is dropped first.
pub fn reference_turtle(text: &str, base: Option<&str>) -> Result<BTreeSet<Statement>, String> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut parser = oxttl::TurtleParser::new();
    if let Some(base) = base {
        parser = parser.with_base_iri(base).map_err(|e| e.to_string())?;
    }
    parser
        .for_slice(text.as_bytes())
        .map(|r| {
            let t = r.map_err(|e| e.to_string())?;
            let subject = match &t.subject {
                oxrdf::NamedOrBlankNode::NamedNode(n) => Node::Iri(n.as_str().to_string()),
                oxrdf::NamedOrBlankNode::BlankNode(b) => Node::Blank(b.as_str().to_string()),
            };
            Ok([
                subject,
                Node::Iri(t.predicate.as_str().to_string()),
                from_ox_term(&t.object),
            ])
        })
        .collect()
}

fn blanks(s: &Statement) -> impl Iterator<Item = &String> {
    s.iter().filter_map(|n| match n {
        Node::Blank(b) => Some(b),
        _ => None,
    })
}

fn rename(s: &Statement, map: &BTreeMap<&String, &String>) -> Option<Statement> {
    let mut out = s.clone();
    for n in out.iter_mut() {
        if let Node::Blank(b) = n {
            *n = Node::Blank((*map.get(b)?).clone());
        }
    }
    Some(out)
}

/// `true` if some bijection between blank-node labels maps `a` onto `b`.
pub fn isomorphic(a: &BTreeSet<Statement>, b: &BTreeSet<Statement>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ground = |set: &BTreeSet<Statement>| -> BTreeSet<Statement> {
        set.iter().filter(|s| blanks(s).next().is_none()).cloned().collect()
    };
    if ground(a) != ground(b) {
        return false;
    }
    let a_blanks: Vec<&String> = a.iter().flat_map(blanks).collect::<BTreeSet<_>>().into_iter().collect();
    let b_blanks: Vec<&String> = b.iter().flat_map(blanks).collect::<BTreeSet<_>>().into_iter().collect();
    if a_blanks.len() != b_blanks.len() {
        return false;
    }
    // Degree signatures prune the search.
    let degree = |set: &BTreeSet<Statement>, label: &String| -> (usize, usize) {
        let as_subject = set
            .iter()
            .filter(|s| matches!(&s[0], Node::Blank(x) if x == label))
            .count();
        let as_object = set
            .iter()
            .filter(|s| matches!(&s[2], Node::Blank(x) if x == label))
            .count();
        (as_subject, as_object)
    };
    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    search(a, b, &a_blanks, &b_blanks, 0, &mut map, &mut used, &degree)
}

type Degree = dyn Fn(&BTreeSet<Statement>, &String) -> (usize, usize);

#[allow(clippy::too_many_arguments)]
fn search<'a>(
    a: &'a BTreeSet<Statement>,
    b: &'a BTreeSet<Statement>,
    a_blanks: &[&'a String],
    b_blanks: &[&'a String],
    i: usize,
    map: &mut BTreeMap<&'a String, &'a String>,
    used: &mut BTreeSet<&'a String>,
    degree: &Degree,
) -> bool {
    // Every statement whose blanks are all mapped must appear in `b`.
    let consistent = a.iter().all(|s| match rename(s, map) {
        Some(r) => b.contains(&r),
        None => true,
    });
    if !consistent {
        return false;
    }
    if i == a_blanks.len() {
        return true;
    }
    let want = degree(a, a_blanks[i]);
    for &candidate in b_blanks {
        if used.contains(candidate) || degree(b, candidate) != want {
            continue;
        }
        map.insert(a_blanks[i], candidate);
        used.insert(candidate);
        if search(a, b, a_blanks, b_blanks, i + 1, map, used, degree) {
            return true;
        }
        map.remove(a_blanks[i]);
        used.remove(candidate);
    }
    false
}

/// Works from either workspace crate: both live side by side under `crates/`.
pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .expect("crate directory has a parent")
        .join("core/tests/corpus")
}

/// Hand-written corpus files, sorted by name.
pub fn corpus_files() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ttl"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

/// Rewrite `@prefix p: <ns> .` lines as SPARQL `PREFIX p: <ns>`.
fn sparql_prefixes(text: &str) -> String {
    text.lines()
        .map(|line| {
            let trimmed = line.trim_end();
            match trimmed.strip_prefix("@prefix ").and_then(|r| r.strip_suffix(" .")) {
                Some(body) => format!("PREFIX {body}"),
                None => match trimmed.strip_prefix("@base ").and_then(|r| r.strip_suffix(" .")) {
                    Some(body) => format!("BASE {body}"),
                    None => line.to_string(),
                },
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Each corpus file plus syntactic mutations that keep the triple set.
pub fn corpus_with_mutations() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (name, text) in corpus_files() {
        out.push((format!("{name} [crlf]"), text.replace('\n', "\r\n")));
        out.push((format!("{name} [sparql-directives]"), sparql_prefixes(&text)));
        out.push((format!("{name} [tabs]"), text.replace("    ", "\t")));
        out.push((
            format!("{name} [bom+comment]"),
            format!("\u{feff}# mutated copy of {name}\n{text}\n# end\n"),
        ));
        out.push((name, text));
    }
    out
}

/// Base IRI handed to both parsers for the corpus.
pub const CORPUS_BASE: &str = "http://example.org/corpus/void.ttl";

const IRI_CHARS: &[char] = &[
    'a', 'b', 'z', 'Q', '0', '9', '-', '_', '.', '~', '/', '#', '?', '=', '&', '%', ':', '@', 'é', 'ß', '中', '😀',
];
const TEXT_CHARS: &[char] = &[
    'a', 'Z', ' ', '"', '\'', '\\', '\n', '\r', '\t', '<', '>', '&', '.', ';', '#', 'é', 'ñ', '日', '本', '😀',
    '\u{7f}', '\u{1}', '\u{feff}',
];

fn pick<T: Copy>(rng: &mut SplitMix64, items: &[T]) -> T {
    items[(rng.next_u64() % items.len() as u64) as usize]
}

fn random_text(rng: &mut SplitMix64, pool: &[char], max_len: u64) -> String {
    let len = rng.next_u64() % (max_len + 1);
    (0..len).map(|_| pick(rng, pool)).collect()
}

fn random_iri(rng: &mut SplitMix64) -> String {
    let scheme = pick(
        rng,
        &["http://example.org/", "urn:x:", "https://ex.com/a/b?c=", "tag:t,2024:"],
    );
    format!("{scheme}{}", random_text(rng, IRI_CHARS, 12))
}

fn random_blank(rng: &mut SplitMix64) -> String {
    pick(rng, &["b0", "b1", "node_2", "x-y", "a.b", "genid-1", "genid-7", "Z9"]).to_string()
}

fn random_lang(rng: &mut SplitMix64) -> String {
    pick(rng, &["en", "fr", "en-gb", "de-ch-1996", "zh-hans", "x"]).to_string()
}

fn random_object(rng: &mut SplitMix64) -> Term {
    match rng.next_u64() % 6 {
        0 => Term::iri(random_iri(rng)),
        1 => Term::blank(random_blank(rng)),
        2 => Term::Literal(Literal::simple(random_text(rng, TEXT_CHARS, 16))),
        3 => Term::Literal(Literal::lang(random_text(rng, TEXT_CHARS, 16), &random_lang(rng))),
        4 => Term::Literal(Literal::typed(random_text(rng, TEXT_CHARS, 16), random_iri(rng))),
        _ => Term::Literal(Literal::typed(format!("{}", rng.next_u64() % 1000), XSD_INTEGER)),
    }
}

/// A graph of at most `max_triples` triples with awkward literals, unicode
/// IRIs and shared blank nodes, fully determined by `seed`.
pub fn random_graph(seed: u64, max_triples: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let count = rng.next_u64() % (max_triples + 1);
    let mut graph = Graph::new();
    for _ in 0..count {
        let subject = if rng.next_u64().is_multiple_of(3) {
            Term::blank(random_blank(&mut rng))
        } else {
            Term::iri(random_iri(&mut rng))
        };
        let predicate = Term::iri(random_iri(&mut rng));
        let object = random_object(&mut rng);
        graph.insert(Triple::new(subject, predicate, object));
    }
    graph
}
