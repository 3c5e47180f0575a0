//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! Every subcommand produces a [`CommandOutcome`] holding an exit code, a JSON
//! report and a text rendering. Exit codes: 0 when the checked property holds,
//! 1 when a violation was found, 2 for invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::injection::{self, ColoredEdge, InjectionReport, Injector, Trace, TraceStepOut};
use crate::labels::LabelSet;
use crate::lediagram::{parse_diagram, parse_diagram_unchecked, LeDiagram, LeGraph};
use crate::paths::SearchOrder;
use crate::positroid::{BasisRule, Positroid};
use crate::rayleigh::{self, RayleighReport};
use crate::weights::plain_string;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// Vertex-disjoint paths (the positroid).
    #[default]
    Vertex,
    /// Edge-disjoint walks.
    Edge,
}

#[derive(Debug, Parser)]
#[command(name = "posray", version, about = "Positroids from Le-diagrams and the Rayleigh property")]
pub struct Cli {
    /// Report format on standard output.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct PairArgs {
    #[arg(long)]
    pub e: usize,
    #[arg(long)]
    pub f: usize,
}

#[derive(Debug, clap::Args)]
pub struct OptionalPair {
    /// Restrict to this e (requires --f).
    #[arg(long, requires = "f")]
    pub e: Option<usize>,
    #[arg(long, requires = "e")]
    pub f: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct BasisPair {
    /// Comma-separated labels, e.g. 2,6,7.
    #[arg(long, value_parser = parse_labels)]
    pub b1: LabelSet,
    #[arg(long, value_parser = parse_labels)]
    pub b2: LabelSet,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a diagram file against every invariant.
    Validate { file: PathBuf },
    /// Enumerate the bases of the positroid of a diagram.
    Bases {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "vertex")]
        rule: RuleArg,
    },
    /// Bases containing --contract and avoiding --delete.
    Minor {
        file: PathBuf,
        #[arg(long, value_parser = parse_labels, default_value = "")]
        contract: LabelSet,
        #[arg(long, value_parser = parse_labels, default_value = "")]
        delete: LabelSet,
    },
    /// Sample the Rayleigh difference at random rational weights.
    Rayleigh {
        file: PathBuf,
        #[command(flatten)]
        pair: OptionalPair,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow zero weights.
        #[arg(long)]
        nonnegative: bool,
    },
    /// Coefficients of the Rayleigh difference polynomial.
    RayleighPoly {
        file: PathBuf,
        #[command(flatten)]
        pair: OptionalPair,
    },
    /// Run the marker-walk injection on one pair of bases.
    Inject {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        bases: BasisPair,
        #[arg(long)]
        trace: bool,
    },
    /// Run the reverse walk on the colouring of (--b1, --b2).
    Reverse {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        bases: BasisPair,
        #[arg(long)]
        trace: bool,
    },
    /// Check the injection exhaustively on one pair or all pairs.
    VerifyInjection {
        file: PathBuf,
        #[command(flatten)]
        pair: OptionalPair,
        /// Also run with reverse-lexicographic families and list differences.
        #[arg(long)]
        compare_choice: bool,
    },
    /// Counting inequality on every minor.
    Balanced { file: PathBuf },
    /// Derivative-form difference at signed rational inputs.
    ProbeStrong {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a random Le-diagram.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_labels(text: &str) -> Result<LabelSet, String> {
    LabelSet::parse_list(text).ok_or_else(|| format!("expected comma-separated labels in 1..=64, got {text:?}"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutcome {
    pub code: u8,
    pub report: Value,
    pub text: String,
}

impl CommandOutcome {
    fn new<T: Serialize>(code: u8, report: &T, text: String) -> Self {
        let report = serde_json::to_value(report).expect("reports serialize");
        CommandOutcome { code, report, text }
    }
}

/// Diagnostic for exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidInput(pub String);

impl<E: std::fmt::Display> From<E> for InvalidInput {
    fn from(err: E) -> Self {
        InvalidInput(err.to_string())
    }
}

/// JSON with sorted keys and a trailing newline, or the text rendering.
pub fn render_report(outcome: &CommandOutcome, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&outcome.report).expect("json values serialize");
            out.push('\n');
            out.into_bytes()
        }
        Format::Text => {
            let mut out = outcome.text.clone();
            if !out.ends_with('\n') {
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

/// Everything a process run produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: u8,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = err.render().to_string();
            return if err.use_stderr() {
                Invocation { code, stdout: Vec::new(), stderr: rendered }
            } else {
                Invocation { code, stdout: rendered.into_bytes(), stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => Invocation { code: outcome.code, stdout: render_report(&outcome, cli.format), stderr: String::new() },
        Err(InvalidInput(msg)) => Invocation { code: EXIT_INVALID, stdout: Vec::new(), stderr: format!("error: {msg}\n") },
    }
}

fn read(path: &Path) -> Result<String, InvalidInput> {
    std::fs::read_to_string(path).map_err(|e| InvalidInput(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<LeDiagram, InvalidInput> {
    parse_diagram(&read(path)?).map_err(|e| InvalidInput(format!("{}: {e}", path.display())))
}

/// A positroid file (`{n, r, bases}`) or a diagram file.
fn load_positroid(path: &Path) -> Result<Positroid, InvalidInput> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| InvalidInput(format!("{}: {e}", path.display())))?;
    if value.get("bases").is_some() {
        serde_json::from_value(value).map_err(|e| InvalidInput(format!("{}: {e}", path.display())))
    } else {
        let d = parse_diagram(&text).map_err(|e| InvalidInput(format!("{}: {e}", path.display())))?;
        Ok(Positroid::enumerate(&d.build_graph()))
    }
}

fn check_label(n: usize, label: usize) -> Result<(), InvalidInput> {
    if label == 0 || label > n {
        return Err(InvalidInput(format!("label {label} outside 1..={n}")));
    }
    Ok(())
}

/// Ordered pairs to examine: the requested one, or all `e != f`.
fn pairs(n: usize, pair: &OptionalPair) -> Result<Vec<(usize, usize)>, InvalidInput> {
    match (pair.e, pair.f) {
        (Some(e), Some(f)) => {
            check_label(n, e)?;
            check_label(n, f)?;
            if e == f {
                return Err(InvalidInput(format!("e and f must differ (both are {e})")));
            }
            Ok(vec![(e, f)])
        }
        _ => Ok((1..=n).flat_map(|e| (1..=n).filter(move |&f| f != e).map(move |f| (e, f))).collect()),
    }
}

fn summary(violations: usize) -> String {
    if violations == 0 {
        "OK (0 violations)".to_string()
    } else {
        format!("FAIL ({violations} violation{})", if violations == 1 { "" } else { "s" })
    }
}

fn code_for(violations: usize) -> u8 {
    if violations == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn join_sets(sets: &[LabelSet]) -> String {
    sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn dispatch(command: &Command) -> Result<CommandOutcome, InvalidInput> {
    match command {
        Command::Validate { file } => validate(file),
        Command::Bases { file, rule } => bases(file, *rule),
        Command::Minor { file, contract, delete } => minor(file, *contract, *delete),
        Command::Rayleigh { file, pair, trials, seed, nonnegative } => {
            sample(file, pair, *trials, *seed, !*nonnegative)
        }
        Command::RayleighPoly { file, pair } => rayleigh_poly(file, pair),
        Command::Inject { file, pair, bases, trace } => inject(file, pair, bases, *trace),
        Command::Reverse { file, pair, bases, trace } => reverse(file, pair, bases, *trace),
        Command::VerifyInjection { file, pair, compare_choice } => verify(file, pair, *compare_choice),
        Command::Balanced { file } => balanced(file),
        Command::ProbeStrong { file, pair, trials, seed } => probe(file, pair, *trials, *seed),
        Command::Random { n, r, density, seed } => random(*n, *r, *density, *seed),
    }
}

fn validate(file: &Path) -> Result<CommandOutcome, InvalidInput> {
    let d = parse_diagram_unchecked(&read(file)?)?;
    let violations = d.validate();
    let messages: Vec<Value> = violations
        .iter()
        .map(|v| {
            let mut item = serde_json::to_value(v).expect("violations serialize");
            item["message"] = Value::String(v.to_string());
            item
        })
        .collect();
    let mut text = String::new();
    for v in &violations {
        let _ = writeln!(text, "{v}");
    }
    text.push_str(&summary(violations.len()));
    let report = json!({ "valid": violations.is_empty(), "violations": messages });
    Ok(CommandOutcome::new(code_for(violations.len()), &report, text))
}

fn bases(file: &Path, rule: RuleArg) -> Result<CommandOutcome, InvalidInput> {
    let d = load_diagram(file)?;
    let rule = match rule {
        RuleArg::Vertex => BasisRule::VertexDisjoint,
        RuleArg::Edge => BasisRule::EdgeDisjoint,
    };
    let p = Positroid::enumerate_with(&d.build_graph(), rule);
    let text = format!("{} bases (n={}, r={})\n{}", p.len(), p.n(), p.r(), join_sets(p.bases()));
    Ok(CommandOutcome::new(EXIT_OK, &p, text))
}

fn minor(file: &Path, contract: LabelSet, delete: LabelSet) -> Result<CommandOutcome, InvalidInput> {
    let p = load_positroid(file)?;
    let bases = p.minor(contract, delete)?;
    let text = format!("{} bases containing {contract} and avoiding {delete}\n{}", bases.len(), join_sets(&bases));
    let report = json!({ "contract": contract, "delete": delete, "bases": bases });
    Ok(CommandOutcome::new(EXIT_OK, &report, text))
}

#[derive(Serialize)]
struct PairViolation<'a> {
    pair: (usize, usize),
    #[serde(flatten)]
    violation: &'a rayleigh::RayleighViolation,
}

fn rayleigh_text(reports: &[RayleighReport]) -> String {
    let mut text = String::new();
    for r in reports {
        let min = r.min_delta.as_ref().map(plain_string).unwrap_or_else(|| "-".into());
        let ones = r.delta_at_ones.as_ref().map(plain_string).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "({},{}) trials {} at ones {} min {} violations {}",
            r.pair.0,
            r.pair.1,
            r.trials,
            ones,
            min,
            r.violations.len()
        );
    }
    text
}

fn sample(file: &Path, pair: &OptionalPair, trials: usize, seed: u64, positive: bool) -> Result<CommandOutcome, InvalidInput> {
    let p = load_positroid(file)?;
    let wanted = pairs(p.n(), pair)?;
    let reports: Vec<RayleighReport> = rayleigh::sample_rayleigh(&p, trials, seed, positive)?
        .into_iter()
        .filter(|r| wanted.contains(&r.pair))
        .collect();
    let violations: Vec<PairViolation> = reports
        .iter()
        .flat_map(|r| r.violations.iter().map(|v| PairViolation { pair: r.pair, violation: v }))
        .collect();
    let mut text = rayleigh_text(&reports);
    text.push_str(&summary(violations.len()));
    let report = json!({ "seed": seed, "trials": trials, "reports": reports, "violations": violations });
    Ok(CommandOutcome::new(code_for(violations.len()), &report, text))
}

fn rayleigh_poly(file: &Path, pair: &OptionalPair) -> Result<CommandOutcome, InvalidInput> {
    let p = load_positroid(file)?;
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    let mut text = String::new();
    for (e, f) in pairs(p.n(), pair)? {
        let poly = rayleigh::rayleigh_delta_poly(&p, e, f)?;
        for (m, c) in poly.negative_terms() {
            violations.push(json!({ "pair": (e, f), "monomial": m.to_string(), "coefficient": c }));
        }
        let _ = writeln!(text, "({e},{f}) {poly}");
        entries.push(json!({
            "pair": (e, f),
            "terms": poly,
            "min_coefficient": poly.min_coefficient(),
        }));
    }
    text.push_str(&summary(violations.len()));
    let report = json!({ "polynomials": entries, "violations": violations });
    Ok(CommandOutcome::new(code_for(violations.len()), &report, text))
}

#[derive(Serialize)]
struct WalkReport {
    pair: (usize, usize),
    input: (LabelSet, LabelSet),
    output: (LabelSet, LabelSet),
    moves: usize,
    colored_edges: Vec<ColoredEdge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_image: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceStepOut>>,
}

fn walk_text(g: &LeGraph, r: &WalkReport, trace: &Trace, show_trace: bool) -> String {
    let mut text = format!("({}, {}) -> ({}, {})", r.input.0, r.input.1, r.output.0, r.output.1);
    if let Some(in_image) = r.in_image {
        let _ = write!(text, "\nin image: {in_image}");
    }
    if show_trace {
        let _ = write!(text, "\ntrace: {}", trace.compact(g));
    }
    text
}

fn inject(file: &Path, pair: &PairArgs, bases: &BasisPair, show_trace: bool) -> Result<CommandOutcome, InvalidInput> {
    let d = load_diagram(file)?;
    let g = d.build_graph();
    let out = injection::run_injection(&g, pair.e, pair.f, bases.b1, bases.b2)?;
    let report = WalkReport {
        pair: (pair.e, pair.f),
        input: out.input,
        output: out.output,
        moves: out.trace.moves(),
        colored_edges: out.config.describe(&g),
        in_image: None,
        trace: show_trace.then(|| out.trace.render(&g)),
    };
    let text = walk_text(&g, &report, &out.trace, show_trace);
    Ok(CommandOutcome::new(EXIT_OK, &report, text))
}

fn reverse(file: &Path, pair: &PairArgs, bases: &BasisPair, show_trace: bool) -> Result<CommandOutcome, InvalidInput> {
    let d = load_diagram(file)?;
    let g = d.build_graph();
    let out = Injector::lazy(&g, SearchOrder::LexLeast).reverse_bases(pair.e, pair.f, bases.b1, bases.b2)?;
    let report = WalkReport {
        pair: (pair.e, pair.f),
        input: (bases.b1, bases.b2),
        output: out.output,
        moves: out.trace.moves(),
        colored_edges: out.config.describe(&g),
        in_image: Some(out.in_image),
        trace: show_trace.then(|| out.trace.render(&g)),
    };
    let text = walk_text(&g, &report, &out.trace, show_trace);
    Ok(CommandOutcome::new(EXIT_OK, &report, text))
}

fn verify(file: &Path, pair: &OptionalPair, compare_choice: bool) -> Result<CommandOutcome, InvalidInput> {
    let d = load_diagram(file)?;
    let g = d.build_graph();
    let p = Positroid::enumerate(&g);
    let reports: Vec<InjectionReport> = match (pair.e, pair.f) {
        (Some(_), Some(_)) => {
            let (e, f) = pairs(p.n(), pair)?[0];
            vec![injection::verify_injection(&g, &p, e, f, compare_choice)?]
        }
        _ => injection::verify_all_pairs(&g, &p, compare_choice)?,
    };
    let violations: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.failures.iter().map(move |x| {
                let mut item = serde_json::to_value(x).expect("failures serialize");
                item["pair"] = json!(r.pair);
                item
            })
        })
        .collect();
    let mut text = String::new();
    for r in &reports {
        let _ = write!(
            text,
            "({},{}) domain {} codomain {} images {} failures {}",
            r.pair.0,
            r.pair.1,
            r.domain,
            r.codomain,
            r.distinct_images,
            r.failures.len()
        );
        if let Some(diffs) = &r.choice_differences {
            let _ = write!(text, " choice differences {}", diffs.len());
        }
        text.push('\n');
    }
    text.push_str(&summary(violations.len()));
    let report = json!({ "reports": reports, "violations": violations });
    Ok(CommandOutcome::new(code_for(violations.len()), &report, text))
}

fn balanced(file: &Path) -> Result<CommandOutcome, InvalidInput> {
    let p = load_positroid(file)?;
    let report = rayleigh::balanced_check(&p)?;
    let mut text = format!("minors {} inequalities {}\n", report.minors_checked, report.inequalities_checked);
    for v in &report.violations {
        let _ = writeln!(
            text,
            "contract {} delete {} pair ({},{}): {} > {}",
            v.contract, v.delete, v.pair.0, v.pair.1, v.lhs, v.rhs
        );
    }
    text.push_str(&summary(report.violations.len()));
    Ok(CommandOutcome::new(code_for(report.violations.len()), &report, text))
}

fn probe(file: &Path, pair: &PairArgs, trials: usize, seed: u64) -> Result<CommandOutcome, InvalidInput> {
    let p = load_positroid(file)?;
    let report = rayleigh::strong_probe(&p, pair.e, pair.f, trials, seed)?;
    let mut text = rayleigh_text(std::slice::from_ref(&report));
    let _ = writeln!(text, "sign checks {} mismatches {}", report.sign_checks, report.sign_mismatches);
    let failures = report.violations.len() + report.sign_mismatches;
    text.push_str(&summary(failures));
    Ok(CommandOutcome::new(code_for(failures), &report, text))
}

fn random(n: usize, r: usize, density: f64, seed: u64) -> Result<CommandOutcome, InvalidInput> {
    let d = LeDiagram::random(n, r, density, seed)?;
    let report: Value = serde_json::from_str(&d.to_json()).expect("canonical diagram json");
    let text = format!("{}\n{}", d.to_json(), d.ascii());
    Ok(CommandOutcome::new(EXIT_OK, &report, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summaries() {
        assert_eq!(summary(0), "OK (0 violations)");
        assert_eq!(summary(1), "FAIL (1 violation)");
        assert_eq!(summary(3), "FAIL (3 violations)");
    }

    #[test]
    fn json_keys_are_sorted() {
        let outcome = CommandOutcome::new(0, &json!({ "zeta": 1, "alpha": { "b": 2, "a": 1 } }), String::new());
        let out = String::from_utf8(render_report(&outcome, Format::Json)).unwrap();
        assert!(out.find("alpha").unwrap() < out.find("zeta").unwrap());
        assert!(out.find("\"a\"").unwrap() < out.find("\"b\"").unwrap());
    }

    #[test]
    fn usage_errors_exit_2() {
        let inv = run(["posray", "inject"]);
        assert_eq!(inv.code, EXIT_INVALID);
        assert!(inv.stdout.is_empty());
        let inv = run(["posray", "bases", "x.json", "--format", "yaml"]);
        assert_eq!(inv.code, EXIT_INVALID);
        assert_eq!(run(["posray", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn label_lists() {
        assert_eq!(parse_labels("2,6,7"), Ok(LabelSet::from_labels([2, 6, 7])));
        assert!(parse_labels("2,x").is_err());
    }
}
