//! Command-line front end: argument parsing, dispatch and report output.
//!
//! Exit codes: 0 when no check fails (unknown verdicts only fail under
//! `--strict`), 1 when a check fails, 2 for unreadable input.

mod report;
mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::classify::{classify, gamma1_report, ClassInput, ClassVerdict, VerdictKind, Witness};
use crate::combine::{run_combine, CombineOptions, GraphOfGroups, GraphSpec, Strategy, Verdict};
use crate::freegrp::{format_word, parse_word, Alphabet, Word};
use crate::ogroup::LexVector;
use crate::treecalc::{axis_geometry, commutator_length, CayleyTreeAction, MeetKind};

pub use report::{CheckLine, Report, Status};
pub use suites::{run_suite, CaseFailure, Suite, SuiteResult};

pub const SEED_VAR: &str = "LAMBDATREE_SEED";
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{what}: {message} (at position {position})")]
    Parse {
        what: String,
        position: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Decide ITF/ATF for Γ(m,n;r,s) = ⟨x, y, t | t[x^m,y^n]t⁻¹ = [x^r,y^s]⟩.
    #[command(allow_negative_numbers = true)]
    Classify {
        m: i64,
        n: i64,
        r: i64,
        s: i64,
        /// Show the witness action and its checks.
        #[arg(long)]
        witness: bool,
    },
    /// Britton certificate that v_k = t^k x t^-k is nontrivial in Γ₁.
    Gamma1 {
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Translation length of a word on a weighted Cayley tree.
    Lengths {
        /// Generator weights, e.g. `x=1,y=1` or `x=(0,2),z=(1,0)`.
        #[arg(long)]
        weights: String,
        #[arg(long)]
        word: String,
    },
    /// How the axes of two words meet.
    Axis {
        #[arg(long)]
        weights: String,
        x: String,
        y: String,
    },
    /// Build an affine action of π₁ of a graph of groups.
    Combine {
        spec: PathBuf,
        #[arg(long, default_value = "scaleq")]
        strategy: Strategy,
        /// Word length for the freeness enumeration.
        #[arg(long, value_name = "L")]
        check_freeness: Option<usize>,
        /// Ball radius for the equivariance check.
        #[arg(long, value_name = "N")]
        verify_equivariance: Option<usize>,
        /// Conjugator length for the bounded π₁ search.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Randomized oracle suites.
    Verify {
        /// commutator, lengths, conjugacy or classify; all when omitted.
        #[arg(long)]
        suite: Vec<Suite>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Defaults to $LAMBDATREE_SEED, then 7.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Parser)]
#[command(name = "lambdatree", version, about = "Exact calculus for actions of groups on Λ-trees")]
struct Args {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Treat unknown verdicts as failures.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub strict: bool,
    /// Seed used when a suite has none of its own.
    pub seed: u64,
}

/// A report together with the extra lines shown in text mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn render(&self, format: Format, strict: bool) -> String {
        match format {
            Format::Json => self.report.to_json() + "\n",
            Format::Text => self.report.to_text(&self.lines, strict),
        }
    }
}

pub fn default_seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| CliError::Input(format!("{SEED_VAR}={v:?}: {e}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Splits `a=1,b=(0,2)` at top-level commas.
pub fn parse_weights(text: &str) -> Result<CayleyTreeAction, CliError> {
    let err = |position: usize, message: String| CliError::Parse {
        what: "weights".into(),
        position,
        message,
    };
    let mut items = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(err(i, "unbalanced ')'".into()));
        }
    }
    if depth != 0 {
        return Err(err(text.len(), "unclosed '('".into()));
    }
    items.push((start, &text[start..]));

    let mut names = Vec::new();
    let mut weights = Vec::new();
    for (at, item) in items {
        let Some((name, value)) = item.split_once('=') else {
            return Err(err(at, format!("expected name=weight, got {:?}", item.trim())));
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(err(at, "missing generator name".into()));
        }
        let value_at = at + item.find('=').unwrap() + 1;
        let w = LexVector::parse(value.trim(), None).map_err(|e| err(value_at, e.to_string()))?;
        names.push(name.to_string());
        weights.push(w);
    }
    let alphabet = Alphabet::new(names).map_err(|e| err(0, e.to_string()))?;
    CayleyTreeAction::new(alphabet, weights).map_err(input_err)
}

fn parse_in(what: &str, alphabet: &Alphabet, text: &str) -> Result<Word, CliError> {
    parse_word(alphabet, text).map_err(|e| CliError::Parse {
        what: what.into(),
        position: e.position,
        message: e.message,
    })
}

fn coords(v: &LexVector) -> Vec<String> {
    v.coords().iter().map(ToString::to_string).collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn witness_lines(v: &ClassVerdict) -> Vec<String> {
    let mut lines = vec![match &v.witness {
        Witness::ItfWeights { lx, ly, commutator_length } => format!(
            "witness: free ℤ-tree action with ℓ(x) = {lx}, ℓ(y) = {ly}; both commutators have length {commutator_length}"
        ),
        Witness::BenignHnn { replacement } => {
            format!("witness: {replacement} centralizes the right-hand commutator, so Γ is a benign HNN extension")
        }
        Witness::Z2Shear { a, length_u, length_v, scale_factor } => format!(
            "witness: shear (p,q) ↦ (p, q{a:+}p) on ℤ² takes ℓ(u) = {length_u} to ℓ(v) = {length_v}; \
             over ℚ the stable letter scales by {scale_factor}"
        ),
        Witness::None => "witness: none (a hypothesis of the combination fails)".into(),
    }];
    lines.extend(v.transcript.iter().map(|t| format!("· {t}")));
    lines
}

fn run_classify(m: i64, n: i64, r: i64, s: i64, witness: bool) -> Result<Outcome, CliError> {
    let c = ClassInput::new(m, n, r, s).map_err(input_err)?;
    let v = classify(c).map_err(input_err)?;
    let mut data = to_value(&v);
    if !witness {
        data.as_object_mut().expect("struct").remove("witness");
    }
    let mut report = Report::new("classify", format!("{c}: {}", v.kind), data);
    let what = match v.kind {
        VerdictKind::NotEssentiallyAtf => "a hypothesis check fails for this input",
        VerdictKind::ItfZ2 => "ITF witness verified",
        VerdictKind::AtfeNotItf => "ATF witnesses verified",
    };
    report.check(what, Status::from_bool(v.verified), "");
    let lines = if witness { witness_lines(&v) } else { Vec::new() };
    Ok(Outcome { report, lines })
}

fn run_gamma1(k: usize) -> Result<Outcome, CliError> {
    if k == 0 {
        return Err(CliError::Input("--k must be positive".into()));
    }
    let g = gamma1_report(k).map_err(input_err)?;
    let mut report = Report::new("gamma1", g.conclusion.clone(), to_value(&g));
    report.check(
        "ℓ(x₁) = 4, ℓ(y₁) = 1, Ξ = 3, ℓ[x₁,y₁] = 4",
        Status::from_bool(
            [&g.length_x1, &g.length_y1, &g.overlap, &g.length_commutator]
                .iter()
                .zip([4, 1, 3, 4])
                .all(|(v, k)| **v == LexVector::integers(&[k])),
        ),
        "",
    );
    for s in &g.steps {
        report.check(
            format!("v_{} ≠ 1", s.k),
            Status::from_bool(s.trivial),
            format!("difference word Britton-reduces to 1 ({} letters)", s.length),
        );
    }
    Ok(Outcome {
        report,
        lines: g.transcript.clone(),
    })
}

fn run_lengths(weights: &str, word: &str) -> Result<Outcome, CliError> {
    let a = parse_weights(weights)?;
    let w = parse_in("word", a.alphabet(), word)?;
    let l = a.translation_length(&w);
    let data = json!({"word": format_word(a.alphabet(), &w.reduce()), "length": coords(&l)});
    Ok(Outcome {
        report: Report::new("lengths", l.to_string(), data),
        lines: Vec::new(),
    })
}

fn run_axis(weights: &str, x: &str, y: &str) -> Result<Outcome, CliError> {
    let a = parse_weights(weights)?;
    let x = parse_in("x", a.alphabet(), x)?;
    let y = parse_in("y", a.alphabet(), y)?;
    let geo = axis_geometry(&a, &x, &y).map_err(input_err)?;
    let lc = commutator_length(&a, &x, &y, 1, 1).map_err(input_err)?;
    let zero = LexVector::zero(a.signature());
    let mut data = json!({
        "length_x": coords(&a.translation_length(&x)),
        "length_y": coords(&a.translation_length(&y)),
        "meet": geo.meet.name(),
        "commutator_length": coords(&lc),
    });
    let summary = match &geo.meet {
        MeetKind::Segment { overlap } => {
            data["xi"] = json!(coords(overlap));
            format!("axes share a segment of length {overlap}")
        }
        MeetKind::Point => {
            data["xi"] = json!(coords(&zero));
            "axes meet in a point".to_string()
        }
        MeetKind::Disjoint { bridge } => {
            data["bridge"] = json!(coords(bridge));
            format!("axes are disjoint, at distance {bridge}")
        }
    };
    Ok(Outcome {
        report: Report::new("axis", summary, data),
        lines: vec![format!("ℓ([x,y]) = {lc}")],
    })
}

fn run_combine_cmd(
    path: &PathBuf,
    strategy: Strategy,
    freeness: Option<usize>,
    equivariance: Option<usize>,
    bound: usize,
) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let spec: GraphSpec = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        what: path.display().to_string(),
        position: byte_offset(&text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let g = GraphOfGroups::from_spec(&spec).map_err(input_err)?;
    let mut opts = CombineOptions::new(strategy);
    opts.bound = bound;
    opts.freeness = freeness;
    opts.equivariance = equivariance;
    let r = run_combine(&g, &opts).map_err(input_err)?;

    let summary = match &r.failure {
        None => format!("affine action constructed with {strategy}"),
        Some(why) => format!("no action with {strategy}: {why}"),
    };
    let mut report = Report::new("combine", summary, to_value(&r));
    for c in &r.hypotheses.checks {
        let (status, detail) = match &c.verdict {
            Verdict::Pass => (Status::Pass, String::new()),
            Verdict::Fail { witness, detail } => (Status::Fail, format!("{detail} (witness {witness})")),
            Verdict::Unknown { reason } => (Status::Unknown, reason.clone()),
        };
        report.check(format!("{} {}", c.condition.name(), c.subject), status, detail);
    }
    if !r.hypotheses.has_fail() {
        let stage = r.failure.as_deref().unwrap_or("");
        report.check("construction", Status::from_bool(r.failure.is_none()), stage);
    }
    if let Some(f) = &r.freeness {
        report.check(
            format!("free and tame on words of length ≤ {}", f.length),
            Status::from_bool(f.passed()),
            std::iter::once(format!("{} words, {} hyperbolic, {} elliptic", f.words, f.hyperbolic, f.elliptic))
                .chain(f.failures.iter().cloned())
                .collect::<Vec<_>>()
                .join("; "),
        );
    }
    if let Some(e) = &r.equivariance {
        let detail = match &e.violation {
            None => format!("{} same-ball and {} adjacent-ball identities", e.same_ball_checks, e.adjacent_checks),
            Some(v) => format!("s = {}, x = {}, y = {}: {} ≠ {}", v.element, v.x, v.y, v.lhs, v.rhs),
        };
        report.check(format!("equivariance at radius {}", e.bound), Status::from_bool(e.passed()), detail);
    }
    let mut lines: Vec<String> = r.ends.iter().map(|e| format!("end {e}")).collect();
    lines.extend(r.dilations.iter().map(|d| format!("θ_{} = {}", d.edge, d.theta)));
    lines.extend(r.rho.iter().map(|(g, v)| format!("ρ̄({g}) = {v}")));
    lines.extend(r.beta.iter().map(|b| format!("β({}) = {}", b.generator, b.beta)));
    lines.extend(r.notes.iter().cloned());
    Ok(Outcome { report, lines })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum::<usize>() + column.saturating_sub(1)
}

fn run_verify(suites: &[Suite], cases: usize, seed: u64) -> Result<Outcome, CliError> {
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let results: Vec<SuiteResult> = suites.iter().map(|&s| run_suite(s, cases, seed)).collect();
    let mut report = Report::new("verify", format!("{} suites, {cases} cases each, seed {seed}", suites.len()), to_value(&results));
    let mut lines = Vec::new();
    for r in &results {
        report.check(
            r.suite.name(),
            Status::from_bool(r.failures.is_empty()),
            format!("{}/{} cases", r.passed, r.cases),
        );
        lines.extend(r.failures.iter().map(|f| format!("{} case {}: {}", r.suite.name(), f.case, f.detail)));
    }
    Ok(Outcome { report, lines })
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match &config.command {
        &Command::Classify { m, n, r, s, witness } => run_classify(m, n, r, s, witness),
        &Command::Gamma1 { k } => run_gamma1(k),
        Command::Lengths { weights, word } => run_lengths(weights, word),
        Command::Axis { weights, x, y } => run_axis(weights, x, y),
        Command::Combine {
            spec,
            strategy,
            check_freeness,
            verify_equivariance,
            bound,
        } => run_combine_cmd(spec, *strategy, *check_freeness, *verify_equivariance, *bound),
        Command::Verify { suite, cases, seed } => run_verify(suite, *cases, seed.unwrap_or(config.seed)),
    }
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let seed = match default_seed() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let config = RunConfig {
        command: parsed.command,
        format: if parsed.json { Format::Json } else { Format::Text },
        strict: parsed.strict,
        seed,
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.render(config.format, config.strict));
            out.report.exit_code(config.strict)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome, CliError> {
        let parsed = Args::try_parse_from(std::iter::once("lambdatree").chain(args.iter().copied())).unwrap();
        run(&RunConfig {
            command: parsed.command,
            format: Format::Json,
            strict: parsed.strict,
            seed: DEFAULT_SEED,
        })
    }

    #[test]
    fn weights_with_vectors() {
        let a = parse_weights("x=(0,2), z=(1,0)").unwrap();
        assert_eq!(a.alphabet().names(), &["x", "z"]);
        assert_eq!(a.weight(0), &LexVector::integers(&[0, 2]));
        match parse_weights("x=1,y") {
            Err(CliError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_weights("x=(1,2"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn lengths_example() {
        let out = run_args(&["lengths", "--weights", "u=1,v=1", "--word", "[u^3 v, u]"]).unwrap();
        assert_eq!(out.report.data["length"], json!(["4"]));
    }

    #[test]
    fn axis_example() {
        let out = run_args(&["axis", "--weights", "u=1,v=1", "u^3 v", "u"]).unwrap();
        assert_eq!(out.report.data["meet"], "segment");
        assert_eq!(out.report.data["xi"], json!(["3"]));
        assert_eq!(out.report.data["commutator_length"], json!(["4"]));
    }

    #[test]
    fn classify_example() {
        let out = run_args(&["classify", "1", "1", "2", "2", "--witness"]).unwrap();
        assert_eq!(out.report.data["kind"], "ATFe_NotITF");
        assert_eq!(out.report.data["witness"]["a"], 2);
        assert_eq!(out.report.exit_code(true), 0);
        let out = run_args(&["classify", "-1", "1", "1", "1"]).unwrap();
        assert_eq!(out.report.data["kind"], "NotEssentiallyATF");
        assert!(out.report.data.get("witness").is_none());
    }

    #[test]
    fn word_errors_carry_positions() {
        match run_args(&["lengths", "--weights", "x=1", "--word", "x q"]) {
            Err(CliError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_offsets() {
        assert_eq!(byte_offset("ab\ncd", 2, 2), 4);
    }
}
