//! Acceptance harness: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use voidgraph_core::layout::{radius_for, run_layout, LayoutConfig, SplitMix64, SEPARATION_TOLERANCE};
use voidgraph_core::rdf::{parse, serialize_ntriples, Format};
use voidgraph_core::svg::{emit_svg, Style, SVG_NS};
use voidgraph_core::void::{DatasetNode, DiagramModel, LinkEdge};
use voidgraph_core::{render, RenderError};

const BIN: &str = env!("CARGO_BIN_EXE_void-graph");

const CANONICAL: &str = "@prefix void: <http://rdfs.org/ns/void#> .
@prefix dcterms: <http://purl.org/dc/terms/> .
@prefix : <http://example.org/void#> .

:A a void:Dataset ;
    dcterms:title \"Dataset A\" ;
    void:triples 1000000 ;
    void:subset :AB .
:B a void:Dataset ;
    dcterms:title \"Dataset B\" .
:AB a void:Linkset ;
    void:target :A , :B .
";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn run_binary(args: &[&str], stdin: &str) -> (Option<i32>, Vec<u8>, String) {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn void-graph");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code(),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn check_svg_root(text: &str) -> Result<roxmltree::Document<'_>, String> {
    let doc = roxmltree::Document::parse(text).map_err(|e| format!("not well-formed: {e}"))?;
    let root = doc.root_element();
    ensure(
        root.tag_name().name() == "svg" && root.tag_name().namespace() == Some(SVG_NS),
        || format!("root is {:?}", root.tag_name()),
    )?;
    Ok(doc)
}

fn canonical_end_to_end() -> Outcome {
    let started = Instant::now();
    let (code, stdout, stderr) = run_binary(&[], CANONICAL);
    let elapsed = started.elapsed();
    ensure(code == Some(0), || format!("exit {code:?}: {stderr}"))?;
    let text = String::from_utf8(stdout).map_err(|e| e.to_string())?;
    let doc = check_svg_root(&text)?;
    let circles: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("circle")).collect();
    let lines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("line")).collect();
    let mut radii: Vec<&str> = circles.iter().filter_map(|c| c.attribute("r")).collect();
    radii.sort();
    ensure(circles.len() == 2, || format!("{} circles", circles.len()))?;
    ensure(lines.len() == 1 && lines[0].attribute("marker-end").is_some(), || {
        format!(
            "{} lines, marker-end on first: {:?}",
            lines.len(),
            lines.first().map(|l| l.attribute("marker-end"))
        )
    })?;
    ensure(radii == ["20.00", "50.00"], || format!("radii {radii:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("2 circles (r 50.00, 20.00), 1 arrow, {elapsed:.0?}"))
}

fn parser_oracle() -> Outcome {
    let docs = support::corpus_with_mutations();
    ensure(docs.len() >= 50, || format!("only {} documents", docs.len()))?;
    let mut triples = 0;
    for (name, text) in &docs {
        let expected = support::reference_turtle(text, Some(support::CORPUS_BASE))
            .map_err(|e| format!("{name}: reference parser failed: {e}"))?;
        let parsed = parse(text, Format::Turtle, Some(support::CORPUS_BASE)).map_err(|e| format!("{name}: {e}"))?;
        let ours = support::from_graph(&parsed.graph);
        ensure(support::isomorphic(&ours, &expected), || {
            format!("{name}: triple sets differ")
        })?;
        triples += ours.len();
    }
    Ok(format!(
        "{} documents ({} files + mutations), {triples} triples match the reference parser",
        docs.len(),
        support::corpus_files().len()
    ))
}

fn ntriples_round_trip() -> Outcome {
    let mut triples = 0;
    for seed in 0..100u64 {
        let graph = support::random_graph(seed, 30);
        ensure(graph.len() <= 30, || format!("seed {seed}: {} triples", graph.len()))?;
        let text = serialize_ntriples(&graph);
        let back = parse(&text, Format::NTriples, None).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(back.graph.triple_set() == graph.triple_set(), || {
            format!("seed {seed}: triple sets differ")
        })?;
        triples += graph.len();
    }
    Ok(format!("100 graphs, {triples} triples reproduced exactly"))
}

fn random_model(rng: &mut SplitMix64, n: usize) -> DiagramModel {
    let nodes = (0..n)
        .map(|i| DatasetNode {
            iri: format!("http://example.org/ds/{i:02}"),
            label: format!("ds{i}"),
            triples: match rng.next_u64() % 5 {
                0 => None,
                _ => Some(pow10(rng.next_f64() * 12.0)),
            },
            declared: true,
        })
        .collect();
    let mut edges = BTreeMap::new();
    let wanted = rng.next_u64() % (2 * n as u64 + 1);
    for _ in 0..wanted {
        let a = (rng.next_u64() % n as u64) as usize;
        let b = (rng.next_u64() % n as u64) as usize;
        if a != b {
            edges.insert(
                (a, b),
                LinkEdge {
                    source: format!("http://example.org/ds/{a:02}"),
                    target: format!("http://example.org/ds/{b:02}"),
                    triples: None,
                    directed: !rng.next_u64().is_multiple_of(4),
                    origin: format!("http://example.org/ls/{a}-{b}"),
                },
            );
        }
    }
    DiagramModel::new(nodes, edges.into_values().collect())
}

fn pow10(x: f64) -> u64 {
    10f64.powf(x) as u64
}

fn separated(layout: &voidgraph_core::layout::LayoutResult, padding: f64) -> Result<(), String> {
    let p = &layout.placements;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let d = p[i].position.distance(p[j].position);
            let need = p[i].radius + p[j].radius + padding - SEPARATION_TOLERANCE;
            ensure(d >= need, || format!("{} and {}: {d} < {need}", p[i].iri, p[j].iri))?;
        }
    }
    Ok(())
}

fn layout_non_overlap() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed);
    let mut converged = 0;
    for trial in 0..100 {
        let n = 2 + (rng.next_u64() % 49) as usize;
        let model = random_model(&mut rng, n);
        let config = LayoutConfig {
            seed: rng.next_u64(),
            ..LayoutConfig::default()
        };
        let layout = run_layout(&model, &config).map_err(|e| e.to_string())?;
        if layout.converged {
            converged += 1;
            separated(&layout, config.padding).map_err(|e| format!("trial {trial} (n = {n}): {e}"))?;
        }
    }
    let model = random_model(&mut rng, 50);
    let config = LayoutConfig::default();
    let started = Instant::now();
    let layout = run_layout(&model, &config).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("n = 50 took {elapsed:?}"))?;
    if layout.converged {
        separated(&layout, config.padding)?;
    }
    Ok(format!(
        "{converged}/100 runs converged and all are separated; n = 50 in {elapsed:.0?}"
    ))
}

const COORDINATE_ATTRIBUTES: [&str; 11] = [
    "x", "y", "x1", "y1", "x2", "y2", "cx", "cy", "width", "height", "viewBox",
];

/// Element sequence with coordinate attributes removed.
fn skeleton(text: &str) -> Result<Vec<String>, String> {
    let doc = check_svg_root(text)?;
    Ok(doc
        .descendants()
        .filter(|n| n.is_element())
        .map(|n| {
            let attrs: Vec<String> = n
                .attributes()
                .filter(|a| !COORDINATE_ATTRIBUTES.contains(&a.name()))
                .map(|a| format!("{}={}", a.name(), a.value()))
                .collect();
            format!("{} {} {:?}", n.tag_name().name(), attrs.join(" "), n.text())
        })
        .collect())
}

fn determinism() -> Outcome {
    let mut inputs = vec![("canonical".to_string(), CANONICAL.to_string())];
    inputs.extend(
        support::corpus_files()
            .into_iter()
            .filter(|(name, _)| name.contains("lod_cloud") || name.contains("life_sciences")),
    );
    let style = Style::default();
    let draw = |text: &str, seed: u64| -> Result<String, String> {
        let config = LayoutConfig {
            seed,
            ..LayoutConfig::default()
        };
        render(text, Format::Turtle, Some(support::CORPUS_BASE), &config, &style)
            .map(|r| r.svg.text)
            .map_err(|e| e.to_string())
    };
    for (name, text) in &inputs {
        let a = draw(text, 42)?;
        ensure(a == draw(text, 42)?, || format!("{name}: same seed, different bytes"))?;
        let b = draw(text, 1234)?;
        ensure(a != b, || format!("{name}: a new seed moved nothing"))?;
        ensure(skeleton(&a)? == skeleton(&b)?, || {
            format!("{name}: new seed changed more than coordinates")
        })?;
    }
    Ok(format!(
        "{} documents byte-identical per seed; seed change alters coordinates only",
        inputs.len()
    ))
}

fn radius_scale() -> Outcome {
    let c = LayoutConfig::default();
    let anchors = [(1_000u64, 20.0), (1_000_000_000, 80.0), (1_000_000, 50.0)];
    for (t, want) in anchors {
        let got = radius_for(Some(t), &c);
        ensure((got - want).abs() <= 1e-9, || {
            format!("radius_for({t}) = {got}, want {want}")
        })?;
    }
    let mut previous = f64::NEG_INFINITY;
    for decade in 0..=12 {
        let r = radius_for(Some(10u64.pow(decade)), &c);
        ensure(r >= previous, || format!("decreases at 10^{decade}: {r} < {previous}"))?;
        previous = r;
    }
    Ok("20.0 at 10^3, 50.0 at 10^6, 80.0 at 10^9; nondecreasing over 10^0..10^12".into())
}

fn well_formedness() -> Outcome {
    let style = Style::default();
    let config = LayoutConfig::default();
    let mut emitted = 0;
    let mut texts = vec![
        CANONICAL.to_string(),
        "@prefix void: <http://rdfs.org/ns/void#> .
<http://ex.org/a> a void:Dataset ; <http://purl.org/dc/terms/title> \"<&> \\\" ' \\u0001 ]]> \\uFFFE\" ."
            .to_string(),
    ];
    texts.extend(support::corpus_with_mutations().into_iter().map(|(_, t)| t));
    for text in &texts {
        match render(text, Format::Turtle, Some(support::CORPUS_BASE), &config, &style) {
            Ok(r) => {
                check_svg_root(&r.svg.text)?;
                emitted += 1;
            }
            Err(RenderError::EmptyModel(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    let mut rng = SplitMix64::new(7);
    for _ in 0..100 {
        let n = 1 + (rng.next_u64() % 50) as usize;
        let model = random_model(&mut rng, n);
        let layout = run_layout(
            &model,
            &LayoutConfig {
                iterations: 50,
                ..config.clone()
            },
        )
        .map_err(|e| e.to_string())?;
        for labels in [true, false] {
            let style = Style {
                show_labels: labels,
                ..Style::default()
            };
            check_svg_root(&emit_svg(&model, &layout, &style).document.text)?;
            emitted += 1;
        }
    }
    Ok(format!(
        "{emitted} documents well-formed with an svg root in the SVG namespace"
    ))
}

fn exit_code_matrix() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let missing = dir.path().join("absent.ttl");
    let cases: [(&str, Vec<&str>, &str, i32); 4] = [
        ("usage", vec!["--canvas", "800"], CANONICAL, 1),
        ("parse", vec![], "not rdf @@@", 2),
        ("empty model", vec![], "<http://a> <http://b> <http://c> .", 3),
        ("I/O", vec![missing.to_str().unwrap()], "", 4),
    ];
    let mut seen = Vec::new();
    for (class, args, input, want) in cases {
        let (code, stdout, stderr) = run_binary(&args, input);
        ensure(code == Some(want), || format!("{class}: exit {code:?}, want {want}"))?;
        ensure(stderr.lines().any(|l| l.starts_with("error: ")), || {
            format!("{class}: no error line in {stderr:?}")
        })?;
        ensure(stdout.is_empty(), || format!("{class}: wrote to stdout"))?;
        seen.push(format!("{class}={want}"));
    }
    let (code, _, stderr) = run_binary(&[], CANONICAL);
    ensure(code == Some(0), || format!("valid input: exit {code:?}: {stderr}"))?;
    Ok(format!("{}, success=0", seen.join(", ")))
}

fn attr(node: &roxmltree::Node, name: &str) -> Result<f64, String> {
    node.attribute(name)
        .ok_or_else(|| format!("missing {name}"))?
        .parse()
        .map_err(|e| format!("{name}: {e}"))
}

fn edge_geometry() -> Outcome {
    let style = Style::default();
    let mut rng = SplitMix64::new(0xed6e);
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let counts: Vec<Option<u64>> = (0..2).map(|_| Some(pow10(rng.next_f64() * 10.0))).collect();
        let nodes: Vec<DatasetNode> = (0..2)
            .map(|i| DatasetNode {
                iri: format!("http://example.org/geo/{trial}/{i}"),
                label: format!("n{i}"),
                triples: counts[i],
                declared: true,
            })
            .collect();
        let (s, t) = if rng.next_u64().is_multiple_of(2) {
            (0, 1)
        } else {
            (1, 0)
        };
        let edge = LinkEdge {
            source: nodes[s].iri.clone(),
            target: nodes[t].iri.clone(),
            triples: None,
            directed: true,
            origin: format!("http://example.org/geo/{trial}/ls"),
        };
        let model = DiagramModel::new(nodes, vec![edge]);
        let config = LayoutConfig {
            seed: rng.next_u64(),
            ..LayoutConfig::default()
        };
        let layout = run_layout(&model, &config).map_err(|e| e.to_string())?;
        let text = emit_svg(&model, &layout, &style).document.text;
        let doc = check_svg_root(&text)?;
        let line = doc
            .descendants()
            .find(|n| n.has_tag_name("line"))
            .ok_or_else(|| format!("trial {trial}: edge omitted"))?;
        ensure(line.attribute("marker-end").is_some(), || {
            format!("trial {trial}: no arrowhead")
        })?;
        let start = voidgraph_core::layout::Vec2::new(attr(&line, "x1")?, attr(&line, "y1")?);
        let end = voidgraph_core::layout::Vec2::new(attr(&line, "x2")?, attr(&line, "y2")?);
        let source = layout.get(&model.edges[0].source).unwrap();
        let target = layout.get(&model.edges[0].target).unwrap();
        let start_err = (start.distance(source.position) - (source.radius + style.rim_gap)).abs();
        let end_err = (end.distance(target.position) - (target.radius + style.rim_gap + style.arrow_length)).abs();
        worst = worst.max(start_err).max(end_err);
        ensure(start_err <= 0.01 && end_err <= 0.01, || {
            format!("trial {trial}: start off by {start_err}, end off by {end_err}")
        })?;
    }
    Ok(format!("50 directed edges, worst rim-distance error {worst:.4}"))
}

fn prng_conformance() -> Outcome {
    let mut rng = SplitMix64::new(0);
    let reference = [0xE220_A839_7B1D_CDAFu64, 0x6E78_9E6A_A1B9_65F4, 0x06C4_5D18_8009_454F];
    for (i, want) in reference.into_iter().enumerate() {
        let got = rng.next_u64();
        ensure(got == want, || format!("output {i}: {got:#018X}, want {want:#018X}"))?;
    }
    Ok("seed 0 -> 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("canonical end-to-end", canonical_end_to_end),
        ("parser oracle", parser_oracle),
        ("n-triples round trip", ntriples_round_trip),
        ("layout non-overlap", layout_non_overlap),
        ("determinism", determinism),
        ("radius anchors and monotonicity", radius_scale),
        ("svg well-formedness", well_formedness),
        ("exit-code matrix", exit_code_matrix),
        ("edge geometry", edge_geometry),
        ("prng conformance", prng_conformance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
