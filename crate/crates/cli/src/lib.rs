//! Command-line front end for `voidgraph-core`: reads a VoID description from
//! a file or standard input and writes an SVG diagram.

use std::ffi::OsString;
use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};

use voidgraph_core::layout::{LayoutConfig, LayoutResult};
use voidgraph_core::rdf::{detect_format, has_scheme, Format};
use voidgraph_core::svg::{format_coord, Style};
use voidgraph_core::void::DiagramModel;
use voidgraph_core::{render, RenderError, Warning};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Turtle,
    Ntriples,
}

/// Canvas size given as `WxH`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canvas {
    pub width: u32,
    pub height: u32,
}

impl FromStr for Canvas {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (w, h) = s
            .split_once('x')
            .ok_or_else(|| format!("expected WxH, e.g. 1000x1000, got '{s}'"))?;
        let dim = |v: &str| match v.parse::<u32>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("'{v}' is not a positive integer")),
        };
        Ok(Canvas {
            width: dim(w)?,
            height: dim(h)?,
        })
    }
}

impl fmt::Display for Canvas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

/// Render a VoID description (Turtle or N-Triples) as an SVG diagram.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "void-graph", version, about)]
pub struct CliOptions {
    /// Input file, or `-` for standard input.
    #[arg(default_value = "-")]
    pub input: String,

    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Input syntax; `auto` goes by file extension, then by content.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,

    /// Absolute base IRI for resolving relative IRIs.
    #[arg(long)]
    pub base: Option<String>,

    /// Layout random seed.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Force-layout iterations.
    #[arg(long, default_value_t = 500)]
    pub iterations: usize,

    /// Area the force layout spreads nodes over.
    #[arg(long, value_name = "WxH", default_value = "1000x1000")]
    pub canvas: Canvas,

    /// Radius of datasets with 1000 or fewer triples, or no count.
    #[arg(long, default_value_t = 20.0)]
    pub min_radius: f64,

    /// Radius of datasets with a billion or more triples.
    #[arg(long, default_value_t = 80.0)]
    pub max_radius: f64,

    /// Minimum gap between circles, also used as the outer margin.
    #[arg(long, default_value_t = 10.0)]
    pub padding: f64,

    /// Draw circles without text labels.
    #[arg(long)]
    pub no_labels: bool,

    /// Print a model summary to standard error.
    #[arg(long)]
    pub stats: bool,

    /// Print warnings to standard error.
    #[arg(long)]
    pub verbose: bool,
}

impl CliOptions {
    pub fn layout_config(&self) -> LayoutConfig {
        LayoutConfig {
            canvas_width: f64::from(self.canvas.width),
            canvas_height: f64::from(self.canvas.height),
            seed: self.seed,
            iterations: self.iterations,
            padding: self.padding,
            r_min: self.min_radius,
            r_max: self.max_radius,
            ..LayoutConfig::default()
        }
    }

    pub fn style(&self) -> Style {
        Style {
            show_labels: !self.no_labels,
            ..Style::default()
        }
    }
}

/// Parse `argv` (program name first). Help and version requests come back as
/// errors of kind `DisplayHelp` / `DisplayVersion`.
pub fn parse_args<I, T>(argv: I) -> Result<CliOptions, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let options = CliOptions::try_parse_from(argv)?;
    let invalid = |msg: String| Err(CliOptions::command().error(ErrorKind::ValueValidation, msg));
    if options.min_radius > options.max_radius {
        return invalid(format!(
            "--min-radius ({}) must not exceed --max-radius ({})",
            options.min_radius, options.max_radius
        ));
    }
    if let Some(base) = &options.base {
        if !has_scheme(base) {
            return invalid(format!("--base must be an absolute IRI, got '{base}'"));
        }
    }
    if let Err(e) = options.layout_config().validate() {
        return invalid(e.to_string());
    }
    Ok(options)
}

/// Write the model summary: node, edge and implicit-node counts and the
/// final drawing size.
pub fn print_stats(model: &DiagramModel, layout: &LayoutResult, err: &mut dyn Write) -> std::io::Result<()> {
    writeln!(err, "datasets: {}", model.nodes.len())?;
    writeln!(err, "linksets: {}", model.edges.len())?;
    writeln!(err, "implicit: {}", model.implicit_count())?;
    writeln!(
        err,
        "canvas: {}x{}",
        format_coord(layout.bounds.width()),
        format_coord(layout.bounds.height())
    )
}

fn report_warnings(warnings: &[Warning], err: &mut dyn Write) {
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn fail(err: &mut dyn Write, code: i32, message: impl fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {message}");
    code
}

/// Run the pipeline once and return the process exit code.
pub fn run(options: &CliOptions, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let show_warnings = options.verbose || options.stats;

    let mut bytes = Vec::new();
    let read = if options.input == "-" {
        input.read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(&options.input).map(|b| bytes = b)
    };
    if let Err(e) = read {
        return fail(err, EXIT_IO, format_args!("cannot read {}: {e}", options.input));
    }
    let text = match String::from_utf8(bytes) {
        Ok(text) => text,
        Err(e) => return fail(err, EXIT_IO, format_args!("{}: input is not UTF-8: {e}", options.input)),
    };

    let format = match options.format {
        InputFormat::Turtle => Format::Turtle,
        InputFormat::Ntriples => Format::NTriples,
        InputFormat::Auto => {
            let hint = (options.input != "-").then_some(options.input.as_str());
            detect_format(&text, hint)
        }
    };

    let rendered = match render(
        &text,
        format,
        options.base.as_deref(),
        &options.layout_config(),
        &options.style(),
    ) {
        Ok(r) => r,
        Err(RenderError::Parse(e)) => {
            if show_warnings {
                let warnings: Vec<Warning> = e.warnings.iter().map(Warning::from).collect();
                report_warnings(&warnings, err);
            }
            return fail(err, EXIT_PARSE, &e.error);
        }
        Err(RenderError::EmptyModel(e)) => {
            if show_warnings {
                report_warnings(&e.diagnostics, err);
            }
            return fail(err, EXIT_EMPTY, e);
        }
        Err(RenderError::Layout(e)) => return fail(err, EXIT_USAGE, e),
    };

    if show_warnings {
        report_warnings(&rendered.warnings, err);
    }
    if options.stats {
        let _ = print_stats(&rendered.model, &rendered.layout, err);
    }

    let svg = rendered.svg.text.as_bytes();
    match &options.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, svg) {
                return fail(err, EXIT_IO, format_args!("cannot write {}: {e}", path.display()));
            }
        }
        None => {
            if let Err(e) = out.write_all(svg).and_then(|_| out.flush()) {
                return fail(err, EXIT_IO, format_args!("cannot write output: {e}"));
            }
        }
    }
    EXIT_OK
}

/// Parse arguments and run: the whole program minus process exit.
pub fn main_with<I, T>(argv: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(options) => run(&options, input, out, err),
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            }
            _ => {
                let message = e.render().to_string();
                let _ = write!(err, "{message}");
                if !message.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", CliOptions::command().render_usage());
                }
                EXIT_USAGE
            }
        },
    }
}
