//! `szlam`: check Szlam data, build ordered colorings, verify and synthesize
//! dominance certificates, sample unit-distance witnesses and render SVGs.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a clean negative
//! verdict, 2 for usage, input or internal errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use szlam_core::dominance::{DEFAULT_ORDER_GUARD, RoundtripReport};
use szlam_core::io::{Body, CertificateDoc, DocSpace, Document};
use szlam_core::unit_distance::{witness_points, ColoredPointSet, NormTag, Sampling};
use szlam_core::{
    build_ordered_coloring, check_proper, roundtrip_check, roundtrip_orderings, synthesize_any, synthesize_certificate,
    validate_szlam, verify_dominance, Coloring, DominanceCertificate, SynthOptions,
};

#[derive(Parser, Debug)]
#[command(name = "szlam", version, about = "Exact Szlam colorings and dominance certificates")]
struct Cli {
    /// Print documents instead of human-readable reports where applicable.
    #[arg(long, value_enum, global = true, default_value_t = Format::Report)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Doc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the covering condition of Szlam data.
    Validate { file: PathBuf },
    /// Build the ordered Szlam coloring of Szlam data.
    Color {
        file: PathBuf,
        /// Write the coloring document here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a dominance certificate for a coloring.
    Dominate {
        file: PathBuf,
        /// Comma-separated color labels, first color first.
        #[arg(long, value_delimiter = ',', requires = "t", conflicts_with = "cert")]
        ordering: Option<Vec<String>>,
        /// Comma-separated translaters t_2,...,t_k.
        #[arg(long, allow_hyphen_values = true, requires = "ordering")]
        t: Option<String>,
        /// Read the ordering and translaters from a certificate document.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Find an ordering and translaters witnessing dominance.
    Synth {
        file: PathBuf,
        /// Only try this ordering.
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<String>>,
        /// Write the certificate document here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild the coloring from each dominant ordering and compare.
    Roundtrip {
        file: PathBuf,
        /// Stop after this many dominant orderings.
        #[arg(long, default_value_t = 1)]
        max: usize,
        /// Check only this ordering (comma-separated labels).
        #[arg(long, value_delimiter = ',', num_args = 1)]
        ordering: Vec<String>,
    },
    /// Check that no sampled unit-distance pair is monochromatic.
    Unitcheck {
        file: PathBuf,
        #[arg(long, default_value = "l2")]
        norm: NormTag,
        /// Approximate number of base samples (unit partners are added).
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a coloring or Szlam data as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// An error that ends the run with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<(String, bool), Fatal>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((report, verdict)) => {
            print!("{report}");
            ExitCode::from(if verdict { 0 } else { 1 })
        }
        Err(Fatal(msg)) => {
            eprintln!("szlam: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Document, Fatal> {
    let bytes = fs::read(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|_| Fatal(format!("{}: not valid UTF-8", path.display())))?;
    szlam_core::parse(&text).map_err(|e| Fatal(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message)))
}

fn store(path: &Path, text: &str) -> Result<(), Fatal> {
    fs::write(path, text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn order_guard() -> Result<SynthOptions, Fatal> {
    match std::env::var("SZLAM_ORDER_GUARD") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|order_guard| SynthOptions { order_guard })
            .map_err(|_| Fatal(format!("SZLAM_ORDER_GUARD must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(SynthOptions { order_guard: DEFAULT_ORDER_GUARD }),
    }
}

/// Work that is generic over the space of a document.
trait Job {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome;
}

fn dispatch(doc: Document, job: &impl Job) -> Outcome {
    match doc {
        Document::Line(b) => job.run(b),
        Document::Hex(b) => job.run(b),
    }
}

fn run(cli: &Cli) -> Outcome {
    let doc_format = cli.format == Format::Doc;
    match &cli.command {
        Command::Validate { file } => dispatch(load(file)?, &Validate),
        Command::Color { file, output } => dispatch(load(file)?, &Color { output: output.clone(), doc_format }),
        Command::Dominate { file, ordering, t, cert } => {
            let source = match (ordering, t, cert) {
                (Some(o), Some(t), None) => CertSource::Flags(o.clone(), t.clone()),
                (None, None, Some(path)) => CertSource::Doc(load(path)?),
                (None, None, None) => CertSource::Inline,
                _ => return Err(Fatal("give either --ordering with --t, or --cert".into())),
            };
            dispatch(load(file)?, &Dominate { source })
        }
        Command::Synth { file, ordering, output } => dispatch(
            load(file)?,
            &Synth { ordering: ordering.clone(), output: output.clone(), doc_format, opts: order_guard()? },
        ),
        Command::Roundtrip { file, max, ordering } => {
            let orderings = if ordering.is_empty() { Vec::new() } else { vec![ordering.clone()] };
            dispatch(load(file)?, &Roundtrip { max: *max, orderings, opts: order_guard()? })
        }
        Command::Unitcheck { file, norm, samples, seed } => {
            dispatch(load(file)?, &UnitCheck { norm: *norm, samples: *samples, seed: *seed })
        }
        Command::Render { file, output } => {
            let svg = szlam_core::render_svg(&load(file)?)?;
            match output {
                Some(path) => {
                    store(path, &svg)?;
                    Ok((format!("wrote {}\n", path.display()), true))
                }
                None => Ok((svg, true)),
            }
        }
    }
}

/// The coloring a document describes: its own, or the ordered coloring of
/// its Szlam data.
fn coloring_of<S: DocSpace>(body: Body<S>) -> Result<Coloring<S>, Fatal> {
    Ok(match body {
        Body::Coloring(c) => c,
        Body::Certificate(c) => c.coloring,
        Body::Szlam(d) => build_ordered_coloring(&d)?,
    })
}

fn classes_report<S: DocSpace>(phi: &Coloring<S>) -> String {
    let mut out = String::new();
    for (label, class) in phi.labels().iter().zip(phi.classes()) {
        let _ = writeln!(out, "class {label} = {}", phi.space().format_set(class));
    }
    out
}

struct Validate;

impl Job for Validate {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome {
        let Body::Szlam(data) = body else {
            return Ok((format!("valid {} document\n", body.kind()), true));
        };
        let report = validate_szlam(&data);
        if report.is_valid() {
            Ok(("valid: the translates B - f cover the space\n".into(), true))
        } else {
            let set = data.space().format_set(&report.uncovered);
            Ok((format!("invalid: translates of F inside R start at {set}\n"), false))
        }
    }
}

struct Color {
    output: Option<PathBuf>,
    doc_format: bool,
}

impl Job for Color {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome {
        let Body::Szlam(data) = body else {
            return Err(Fatal(format!("`color` expects a szlam document, got a {} document", body.kind())));
        };
        let report = validate_szlam(&data);
        if !report.is_valid() {
            let set = data.space().format_set(&report.uncovered);
            return Ok((format!("invalid: translates of F inside R start at {set}\n"), false));
        }
        let phi = build_ordered_coloring(&data)?;
        let doc = szlam_core::serialize(&Document::from(phi.clone()));
        if let Some(path) = &self.output {
            store(path, &doc)?;
        }
        Ok((if self.doc_format { doc } else { classes_report(&phi) }, true))
    }
}

enum CertSource {
    Flags(Vec<String>, String),
    Doc(Document),
    Inline,
}

struct Dominate {
    source: CertSource,
}

fn parse_translaters<S: DocSpace>(space: &S, text: &str) -> Result<Vec<S::Shift>, Fatal> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| space.shift_from_str(t).ok_or_else(|| Fatal(format!("`{}` is not a valid translater", t.trim()))))
        .collect()
}

impl Job for Dominate {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome {
        let (phi, inline) = match body {
            Body::Certificate(c) => (c.coloring, Some(c.certificate)),
            Body::Coloring(c) => (c, None),
            Body::Szlam(_) => return Err(Fatal("`dominate` expects a coloring or certificate document".into())),
        };
        let cert = match &self.source {
            CertSource::Flags(ordering, t) => {
                DominanceCertificate { ordering: ordering.clone(), translaters: parse_translaters(phi.space(), t)? }
            }
            CertSource::Doc(doc) => match S::unwrap(doc.clone()) {
                Some(Body::Certificate(c)) if c.coloring.space() == phi.space() => c.certificate,
                _ => return Err(Fatal("--cert must name a certificate document over the same space".into())),
            },
            CertSource::Inline => inline.ok_or_else(|| {
                Fatal("no certificate: pass --ordering and --t, --cert, or a certificate document".into())
            })?,
        };
        let ok = verify_dominance(&phi, &cert)?;
        Ok((format!("dominant: {}\n", if ok { "yes" } else { "no" }), ok))
    }
}

struct Synth {
    ordering: Option<Vec<String>>,
    output: Option<PathBuf>,
    doc_format: bool,
    opts: SynthOptions,
}

impl Job for Synth {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome {
        let phi = coloring_of(body)?;
        let found = match &self.ordering {
            Some(o) => synthesize_certificate(&phi, o)?,
            None => synthesize_any(&phi, self.opts)?,
        };
        let Some(cert) = found else {
            return Ok(("no certificate\n".into(), false));
        };
        let space = phi.space();
        let ts: Vec<String> = cert.translaters.iter().map(|t| space.format_shift(t)).collect();
        let report = format!("ordering: {}\nt: {}\n", cert.ordering.join(", "), ts.join(", "));
        let doc = szlam_core::serialize(&Document::from(CertificateDoc { coloring: phi, certificate: cert, given: None }));
        if let Some(path) = &self.output {
            store(path, &doc)?;
        }
        Ok((if self.doc_format { doc } else { report }, true))
    }
}

struct Roundtrip {
    max: usize,
    orderings: Vec<Vec<String>>,
    opts: SynthOptions,
}

fn roundtrip_text<S: DocSpace>(space: &S, report: &RoundtripReport<S::Shift>) -> String {
    if report.entries.is_empty() {
        return "no dominant ordering\n".into();
    }
    let mut out = String::new();
    for e in &report.entries {
        let _ = write!(out, "ordering {}: ", e.ordering.join(", "));
        match (&e.certificate, e.equal) {
            (None, _) => out.push_str("no certificate\n"),
            (Some(c), equal) => {
                let ts: Vec<String> = c.translaters.iter().map(|t| space.format_shift(t)).collect();
                let verdict = if equal == Some(true) { "psi = phi" } else { "DEFECT: psi != phi" };
                let _ = writeln!(out, "t = {}; {verdict}", ts.join(", "));
            }
        }
    }
    out
}

impl Job for Roundtrip {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome {
        let phi = coloring_of(body)?;
        let report = if self.orderings.is_empty() {
            roundtrip_check(&phi, self.max, self.opts)?
        } else {
            roundtrip_orderings(&phi, &self.orderings)?
        };
        let text = roundtrip_text(phi.space(), &report);
        if !report.is_consistent() {
            return Err(Fatal(format!("reconstruction differs from the input coloring\n{text}")));
        }
        let ok = !report.entries.is_empty() && report.entries.iter().all(|e| e.certificate.is_some());
        Ok((text, ok))
    }
}

struct UnitCheck {
    norm: NormTag,
    samples: usize,
    seed: u64,
}

impl Job for UnitCheck {
    fn run<S: DocSpace + Sampling>(&self, body: Body<S>) -> Outcome {
        let phi = coloring_of(body)?;
        let points = witness_points(&phi, self.samples.max(1), self.seed, self.norm);
        let ps = ColoredPointSet::from_coloring(&phi, points);
        let report = check_proper(&ps, self.norm);
        let mut out = format!("{report}\n");
        for &(a, b) in report.violations.iter().take(10) {
            let (p, q) = (&ps.points()[a], &ps.points()[b]);
            let _ = writeln!(out, "  {p} and {q} both colored {}", ps.colors()[a]);
        }
        let verdict = if report.is_proper() { "proper" } else { "improper" };
        let _ = writeln!(out, "{verdict}");
        Ok((out, report.is_proper()))
    }
}
