//! Command-line front end. `run` never exits the process; it returns the
//! status so tests can drive it with in-memory streams.

mod suite;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coloring::{enumerate_strong_colorings_capped, extension, is_2_robust, ColoringError};
use crate::constructions::{verify_witness, ConstructionError, WitnessConfig, WitnessKind, DEFAULT_CLOSURE_CAP};
use crate::hg_semiring::build_semiring;
use crate::hypergraph::{family, FamilyKind, Hypergraph};
use crate::semiring::FiniteSemiring;
use crate::terms::{
    builtin_identity, check_identity_bruteforce, check_identity_flat, parse_identity, CheckConfig, CheckResult,
    Identity, Method, TermError,
};
use crate::words::{build_sc_from_str, builtin_s7};

pub use suite::{
    certificate_members, random_identity, run_criterion, run_suite, sample_hyperforests, SuiteCheck, SuiteConfig,
    CRITERIA,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON record per line, fields in declaration order.
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "hgring", version, about = "Flat semirings from 3-hypergraphs and words: build, check, verify")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Largest number of assignments the brute-force checker may evaluate.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_evals: u64,
    /// Largest generated subsemiring a witness may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub closure_cap: u64,
    /// Largest number of strong colorings enumerated.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub colorings_cap: u64,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a hypergraph file against the admissibility rules.
    Validate { hypergraph: String },
    /// Build S_H; `--export` writes its tables as JSON.
    Semiring { hypergraph: String },
    /// Decide identities on a semiring, hypergraph, or builtin.
    Check {
        target: String,
        /// Builtin name, file of identities (one per line), or literal text.
        identity: String,
        #[arg(long)]
        brute_force: bool,
    },
    /// Strong 3-colorings; finds one when no mode is given.
    Color {
        hypergraph: String,
        #[arg(long, group = "mode")]
        enumerate: bool,
        #[arg(long, group = "mode")]
        robust: bool,
        /// Partial coloring such as `u1=0,u4=1`.
        #[arg(long, group = "mode")]
        extend: Option<String>,
    },
    /// Run a witness construction end to end.
    Witness {
        kind: String,
        /// Hypergraph reference or step index, depending on the kind.
        param: Option<String>,
    },
    /// Print a family member; `--export` writes JSON, or DOT for `.dot` paths.
    Family { kind: String, index: usize },
    /// Run the full acceptance battery.
    Suite,
}

impl RunConfig {
    pub fn check_config(&self) -> CheckConfig {
        CheckConfig { budget_evals: self.budget_evals, workers: self.workers as usize, ..CheckConfig::default() }
    }

    pub fn witness_config(&self) -> WitnessConfig {
        WitnessConfig {
            closure_cap: self.closure_cap as usize,
            colorings_cap: self.colorings_cap as usize,
            check: self.check_config(),
            ..WitnessConfig::default()
        }
    }
}

/// Everything that ends a command with status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cannot read `{path}`: {message}")]
    Unreadable { path: String, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl From<TermError> for CliError {
    fn from(e: TermError) -> Self {
        match e {
            TermError::BudgetExceeded { .. } | TermError::TooManyMonomials(_) => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::TooMany(_) => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::ClosureCap(_) | ConstructionError::Term(TermError::BudgetExceeded { .. }) => {
                CliError::Budget(e.to_string())
            }
            ConstructionError::Coloring(ColoringError::TooMany(_)) => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

struct Reporter<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Reporter<'_> {
    fn emit<T: Serialize>(&mut self, text: &str, record: &T) -> Result<(), CliError> {
        match self.format {
            Format::Text => writeln!(self.out, "{text}")?,
            Format::Structured => {
                let line = serde_json::to_string(record).map_err(|e| CliError::Output(e.to_string()))?;
                writeln!(self.out, "{line}")?;
            }
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{rendered}");
            code
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut rep = Reporter { format: cfg.format, out };
    match dispatch(cfg, &mut rep) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CLAIM_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cfg: &RunConfig, rep: &mut Reporter<'_>) -> Result<bool, CliError> {
    match &cfg.command {
        Command::Validate { hypergraph } => validate(cfg, rep, hypergraph),
        Command::Semiring { hypergraph } => semiring(cfg, rep, hypergraph),
        Command::Check { target, identity, brute_force } => check(cfg, rep, target, identity, *brute_force),
        Command::Color { hypergraph, enumerate, robust, extend } => {
            color(cfg, rep, hypergraph, *enumerate, *robust, extend.as_deref())
        }
        Command::Witness { kind, param } => witness(cfg, rep, kind, param.as_deref()),
        Command::Family { kind, index } => family_cmd(cfg, rep, kind, *index),
        Command::Suite => suite_cmd(cfg, rep),
    }
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Unreadable { path: path.to_string(), message: e.to_string() })
}

fn write_export(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

/// `family:<kind>:<i>`, optionally behind `builtin:`.
fn parse_family_ref(name: &str) -> Option<Result<Hypergraph, CliError>> {
    let rest = name.strip_prefix("family:")?;
    let Some((kind, index)) = rest.split_once(':') else {
        return Some(Err(CliError::Usage(format!("expected family:<kind>:<i>, got `{name}`"))));
    };
    Some((|| {
        let kind: FamilyKind = kind.parse().map_err(input)?;
        let index: usize = index.parse().map_err(|_| CliError::Usage(format!("bad family index `{index}`")))?;
        family(kind, index).map_err(input)
    })())
}

pub fn resolve_hypergraph(reference: &str) -> Result<Hypergraph, CliError> {
    let name = reference.strip_prefix("builtin:").unwrap_or(reference);
    if let Some(h) = parse_family_ref(name) {
        return h;
    }
    Hypergraph::from_json(&read(reference)?).map_err(input)
}

/// A semiring with a display name; hypergraphs become `S_H`.
pub fn resolve_semiring(reference: &str) -> Result<(String, FiniteSemiring), CliError> {
    let name = reference.strip_prefix("builtin:").unwrap_or(reference);
    match name {
        "sc_abc" => return Ok(("S_c(abc)".into(), build_sc_from_str("abc").map_err(input)?)),
        "sc_abcd" => return Ok(("S_c(abcd)".into(), build_sc_from_str("abcd").map_err(input)?)),
        "s7" => return Ok(("S_7".into(), builtin_s7())),
        _ => {}
    }
    if let Some(words) = name.strip_prefix("sc:") {
        return Ok((format!("S_c({words})"), build_sc_from_str(words).map_err(input)?));
    }
    if let Some(h) = parse_family_ref(name) {
        let s = build_semiring(&h?).map_err(input)?.into_semiring();
        return Ok((format!("S_H for {name}"), s));
    }
    let text = read(reference)?;
    if let Ok(h) = Hypergraph::from_json(&text) {
        let s = build_semiring(&h).map_err(input)?.into_semiring();
        return Ok((format!("S_H for {reference}"), s));
    }
    FiniteSemiring::from_json(&text).map(|s| (reference.to_string(), s)).map_err(|e| {
        CliError::Input(format!("`{reference}` is neither a hypergraph nor a semiring document ({e})"))
    })
}

/// Builtin name, then file, then literal identity text.
pub fn resolve_identities(reference: &str) -> Result<Vec<(String, Identity)>, CliError> {
    if let Ok(id) = builtin_identity(reference) {
        return Ok(vec![(reference.to_string(), id)]);
    }
    if Path::new(reference).is_file() {
        let text = read(reference)?;
        let ids: Result<Vec<_>, CliError> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| Ok((l.to_string(), parse_identity(l)?)))
            .collect();
        let ids = ids?;
        if ids.is_empty() {
            return Err(CliError::Input(format!("`{reference}` contains no identities")));
        }
        return Ok(ids);
    }
    if !reference.contains('=') {
        return Err(CliError::Input(format!("unknown identity `{reference}` (not a builtin, file, or equation)")));
    }
    Ok(vec![(reference.to_string(), parse_identity(reference)?)])
}

#[derive(Serialize)]
struct ValidateRecord<'a> {
    command: &'static str,
    hypergraph: &'a str,
    valid: bool,
    violations: &'a [crate::hypergraph::Violation],
}

fn validate(_cfg: &RunConfig, rep: &mut Reporter<'_>, reference: &str) -> Result<bool, CliError> {
    let h = resolve_hypergraph(reference)?;
    let report = h.validate();
    let text = format!("{reference}: {}", report.summary());
    rep.emit(&text, &ValidateRecord { command: "validate", hypergraph: reference, valid: report.valid, violations: &report.violations })?;
    Ok(report.valid)
}

#[derive(Serialize)]
struct SemiringRecord<'a> {
    command: &'static str,
    hypergraph: &'a str,
    size: usize,
    flat: bool,
    axioms: bool,
    top: String,
    flags: &'a [String],
    export: Option<String>,
}

fn semiring(cfg: &RunConfig, rep: &mut Reporter<'_>, reference: &str) -> Result<bool, CliError> {
    let h = resolve_hypergraph(reference)?;
    let hs = build_semiring(&h).map_err(input)?;
    let s = hs.semiring();
    if let Some(path) = &cfg.export {
        write_export(path, &s.to_json())?;
    }
    let axioms = s.verify_axioms().all_pass();
    let record = SemiringRecord {
        command: "semiring",
        hypergraph: reference,
        size: s.size(),
        flat: s.is_flat(),
        axioms,
        top: s.label(hs.top_index()).to_string(),
        flags: hs.flags(),
        export: cfg.export.as_ref().map(|p| p.display().to_string()),
    };
    let mut text = format!("S_H for {h}: {} elements, flat {}, axioms {}", record.size, record.flat, axioms);
    for f in hs.flags() {
        text.push_str(&format!("\nflag: {f}"));
    }
    rep.emit(&text, &record)?;
    Ok(axioms)
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    command: &'static str,
    semiring: &'a str,
    identity: &'a str,
    verdict: crate::terms::Verdict,
    method: Method,
    counterexample: Option<BTreeMap<String, String>>,
    sides: Option<(String, String)>,
    nodes: u64,
}

fn check(
    cfg: &RunConfig,
    rep: &mut Reporter<'_>,
    target: &str,
    identity: &str,
    brute_force: bool,
) -> Result<bool, CliError> {
    let (name, s) = resolve_semiring(target)?;
    let ids = resolve_identities(identity)?;
    let ccfg = cfg.check_config();
    let mut all = true;
    for (label, id) in &ids {
        let result: CheckResult = if brute_force || !s.is_flat() {
            check_identity_bruteforce(&s, id, &ccfg)?
        } else {
            check_identity_flat(&s, id, &ccfg)?
        };
        let cx = result.named_counterexample(id, &s);
        let sides = result.sides.map(|(l, r)| (s.label(l).to_string(), s.label(r).to_string()));
        let text = match (&cx, &sides) {
            (Some(cx), Some((l, r))) => {
                let parts: Vec<String> = cx.iter().map(|(v, e)| format!("{v}={e}")).collect();
                format!("{name} fails {label}: at {} the sides are {l} and {r}", parts.join(" "))
            }
            (Some(cx), None) => {
                let parts: Vec<String> = cx.iter().map(|(v, e)| format!("{v}={e}")).collect();
                format!("{name} fails {label}: at {}", parts.join(" "))
            }
            _ => format!("{name} satisfies {label}"),
        };
        let text = if result.holds() { format!("holds: {text}") } else { format!("fails: {text}") };
        rep.emit(
            &text,
            &CheckRecord {
                command: "check",
                semiring: &name,
                identity: label,
                verdict: result.verdict,
                method: result.method,
                counterexample: cx.map(|c| c.into_iter().collect()),
                sides,
                nodes: result.nodes,
            },
        )?;
        all &= result.holds();
    }
    Ok(all)
}

fn named_coloring(h: &Hypergraph, c: &[u8]) -> BTreeMap<String, u8> {
    c.iter().enumerate().map(|(v, &x)| (h.vertex_name(v).to_string(), x)).collect()
}

fn coloring_text(h: &Hypergraph, c: &[u8]) -> String {
    let parts: Vec<String> = c.iter().enumerate().map(|(v, x)| format!("{}={x}", h.vertex_name(v))).collect();
    parts.join(" ")
}

/// `u1=0,u4=1` against the vertex names of `h`.
pub fn parse_partial(h: &Hypergraph, text: &str) -> Result<Vec<(usize, u8)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (v, c) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("expected vertex=color, got `{p}`")))?;
            let v = h.vertex_index(v.trim()).ok_or_else(|| CliError::Input(format!("unknown vertex `{}`", v.trim())))?;
            let c = c.trim().parse::<u8>().map_err(|_| CliError::Input(format!("bad color `{}`", c.trim())))?;
            Ok((v, c))
        })
        .collect()
}

#[derive(Serialize)]
struct ColorRecord {
    command: &'static str,
    mode: &'static str,
    pass: bool,
    count: Option<usize>,
    coloring: Option<BTreeMap<String, u8>>,
    colorings: Option<Vec<BTreeMap<String, u8>>>,
    failure_pair: Option<(String, String)>,
    failure_colors: Option<(u8, u8)>,
    partials_checked: Option<usize>,
    warning: Option<String>,
}

impl ColorRecord {
    fn new(mode: &'static str, pass: bool) -> Self {
        Self {
            command: "color",
            mode,
            pass,
            count: None,
            coloring: None,
            colorings: None,
            failure_pair: None,
            failure_colors: None,
            partials_checked: None,
            warning: None,
        }
    }
}

fn color(
    cfg: &RunConfig,
    rep: &mut Reporter<'_>,
    reference: &str,
    enumerate: bool,
    robust: bool,
    extend: Option<&str>,
) -> Result<bool, CliError> {
    let h = resolve_hypergraph(reference)?;
    let mut exported: Option<Vec<u8>> = None;
    let pass = if enumerate {
        let all = enumerate_strong_colorings_capped(&h, cfg.colorings_cap as usize)?;
        let mut text = format!("{} strong 3-colorings", all.len());
        for c in &all {
            text.push_str(&format!("\n{}", coloring_text(&h, c)));
        }
        let mut record = ColorRecord::new("enumerate", !all.is_empty());
        record.count = Some(all.len());
        record.colorings = Some(all.iter().map(|c| named_coloring(&h, c)).collect());
        rep.emit(&text, &record)?;
        exported = all.first().cloned();
        !all.is_empty()
    } else if robust {
        let r = is_2_robust(&h);
        let mut record = ColorRecord::new("robust", r.robust);
        record.partials_checked = Some(r.partials_checked);
        record.warning = r.warning.clone();
        let text = match &r.failure {
            None => format!("2-robust ({} partial colorings extended)", r.partials_checked),
            Some(f) => {
                let (u, v) = (h.vertex_name(f.pair.0).to_string(), h.vertex_name(f.pair.1).to_string());
                let t = format!("not 2-robust: {{{u},{v}}} colored ({},{}) has no extension", f.colors.0, f.colors.1);
                record.failure_pair = Some((u, v));
                record.failure_colors = Some(f.colors);
                t
            }
        };
        let text = match &r.warning {
            Some(w) => format!("warning: {w}\n{text}"),
            None => text,
        };
        rep.emit(&text, &record)?;
        r.robust
    } else {
        let partial = match extend {
            Some(p) => parse_partial(&h, p)?,
            None => Vec::new(),
        };
        let found = extension(&h, &partial)?;
        let mode = if extend.is_some() { "extend" } else { "find" };
        let mut record = ColorRecord::new(mode, found.is_some());
        record.coloring = found.as_ref().map(|c| named_coloring(&h, c));
        let text = match &found {
            Some(c) => format!("strong 3-coloring: {}", coloring_text(&h, c)),
            None if extend.is_some() => "no strong 3-coloring extends the partial coloring".to_string(),
            None => "no strong 3-coloring".to_string(),
        };
        rep.emit(&text, &record)?;
        exported = found.clone();
        found.is_some()
    };
    if let Some(path) = &cfg.export {
        write_export(path, &h.to_dot_colored(exported.as_deref()))?;
    }
    Ok(pass)
}

fn witness_kind(kind: &str, param: Option<&str>) -> Result<WitnessKind, CliError> {
    let hypergraph = || {
        param.map(resolve_hypergraph).unwrap_or_else(|| Err(CliError::Usage(format!("{kind} needs a hypergraph parameter"))))
    };
    let step = || -> Result<usize, CliError> {
        let p = param.ok_or_else(|| CliError::Usage(format!("{kind} needs a step index")))?;
        p.parse().map_err(|_| CliError::Usage(format!("bad step index `{p}`")))
    };
    Ok(match kind {
        "triangle_in_abcd" => {
            if param.is_some() {
                return Err(CliError::Usage("triangle_in_abcd takes no parameter".into()));
            }
            WitnessKind::TriangleInAbcd
        }
        "strongcolor_equiv" => WitnessKind::StrongcolorEquiv(hypergraph()?),
        "uniform_reduction" => WitnessKind::UniformReduction(hypergraph()?),
        "leaf_removal" => WitnessKind::LeafRemoval(hypergraph()?),
        "beam_step" => WitnessKind::BeamStep(step()?),
        "nested_chain" => WitnessKind::NestedChain(step()?),
        other => {
            return Err(CliError::Usage(format!(
                "unknown witness kind `{other}`; expected one of {}",
                WitnessKind::NAMES.join(", ")
            )))
        }
    })
}

fn witness(cfg: &RunConfig, rep: &mut Reporter<'_>, kind: &str, param: Option<&str>) -> Result<bool, CliError> {
    let kind = witness_kind(kind, param)?;
    let report = verify_witness(&kind, &cfg.witness_config())?;
    let mut text = format!("witness {} {}", report.kind, report.params).trim_end().to_string();
    text.push_str(&format!("\nclaim: {}", report.claim));
    for f in &report.flags {
        text.push_str(&format!("\nflag: {f}"));
    }
    for (i, step) in report.steps.iter().enumerate() {
        text.push_str(&format!("\nstep {}: {}", i + 1, describe_step(step)));
    }
    text.push_str(&match &report.failure {
        None => "\nresult: verified".to_string(),
        Some(f) => format!("\nresult: FAILED ({f})"),
    });
    rep.emit(&text, &report)?;
    Ok(report.success)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn describe_step(step: &crate::constructions::Step) -> String {
    use crate::constructions::Step;
    match step {
        Step::Construction(t) => {
            let mut s = format!("[{}] {}", mark(t.ok), t.label);
            if let Some(n) = t.complement_size {
                s.push_str(&format!("; |A\\J| = {n}"));
            }
            if let Some(n) = t.quotient_size {
                s.push_str(&format!("; |A/J| = {n} against {} of size {}", t.target, t.target_size));
            }
            if let Some(seeded) = t.seeded {
                let how = if seeded { "generator map extends to an isomorphism" } else { "isomorphic, not via the generator map" };
                if t.isomorphism.is_some() {
                    s.push_str(&format!("; {how}"));
                }
            }
            if let Some(c) = &t.cross_check {
                s.push_str(&format!("; cross-check: {c}"));
            }
            if let Some(f) = &t.failure {
                s.push_str(&format!("; {f}"));
            }
            s
        }
        Step::Identity(t) => {
            let verdict = match t.verdict {
                Some(crate::terms::Verdict::Holds) => "satisfies",
                Some(crate::terms::Verdict::Fails) => "fails",
                None => "undecided on",
            };
            let mut s = format!("[{}] {} {} {}", mark(t.ok), t.semiring, verdict, t.identity);
            if let Some(f) = &t.failure {
                s.push_str(&format!("; {f}"));
            }
            s
        }
        Step::HypergraphIso { from, to, ok, .. } => format!("[{}] {from} is isomorphic to {to}", mark(*ok)),
        Step::Embedding { sub, ambient, seed, ok } => format!("[{}] {sub} embeds in {ambient} via {seed}", mark(*ok)),
        Step::Robustness { robust, failure, ok } => match failure {
            Some(f) => format!("[{}] not 2-robust: {f}", mark(*ok)),
            None => format!("[{}] 2-robust {robust}", mark(*ok)),
        },
    }
}

#[derive(Serialize)]
struct FamilyRecord<'a> {
    command: &'static str,
    kind: &'a str,
    index: usize,
    hypergraph: crate::hypergraph::HypergraphDocument,
    linear: bool,
    girth: Option<usize>,
}

fn family_cmd(cfg: &RunConfig, rep: &mut Reporter<'_>, kind: &str, index: usize) -> Result<bool, CliError> {
    let fk: FamilyKind = kind.parse().map_err(|e: crate::hypergraph::HypergraphError| CliError::Usage(e.to_string()))?;
    let h = family(fk, index).map_err(input)?;
    if let Some(path) = &cfg.export {
        let dot = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("dot"));
        write_export(path, &if dot { h.to_dot() } else { h.to_json() })?;
    }
    let girth = match h.girth() {
        crate::hypergraph::Girth::Finite(g) => Some(g),
        crate::hypergraph::Girth::Infinite => None,
    };
    let girth_text = girth.map_or_else(|| "infinite".to_string(), |g| g.to_string());
    let text = format!("{kind}({index}): {h}; linear {}, girth {girth_text}", h.is_linear());
    rep.emit(&text, &FamilyRecord { command: "family", kind, index, hypergraph: h.to_document(), linear: h.is_linear(), girth })?;
    Ok(true)
}

fn suite_cmd(cfg: &RunConfig, rep: &mut Reporter<'_>) -> Result<bool, CliError> {
    let scfg = SuiteConfig { check: cfg.check_config(), witness: cfg.witness_config() };
    let mut all = true;
    for c in CRITERIA {
        let checks = run_criterion(c, &scfg);
        let pass = checks.iter().all(|k| k.pass);
        for k in &checks {
            let mut text = format!("[{}] C{} {}: {}", if k.pass { "PASS" } else { "FAIL" }, k.criterion, k.name, k.detail);
            if !k.pass {
                text.push_str(&format!(" (contradicts: {})", k.claim));
            }
            rep.emit(&text, k)?;
        }
        #[derive(Serialize)]
        struct Summary {
            criterion: u8,
            checks: usize,
            pass: bool,
        }
        let text = format!("criterion {c}: {} ({} checks)", if pass { "PASS" } else { "FAIL" }, checks.len());
        rep.emit(&text, &Summary { criterion: c, checks: checks.len(), pass })?;
        all &= pass;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["hgring"];
        full.extend_from_slice(args);
        let code = run_args(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn budgets_must_be_positive() {
        let (code, _, err) = run_capture(&["--budget-evals", "0", "suite"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("budget-evals"));
    }

    #[test]
    fn unknown_subcommand_is_usage() {
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn builtin_references() {
        assert_eq!(resolve_semiring("builtin:sc_abc").unwrap().1.size(), 8);
        assert_eq!(resolve_semiring("s7").unwrap().1.size(), 3);
        assert_eq!(resolve_semiring("sc:ab,bc").unwrap().1.label(0), "0");
        assert_eq!(resolve_hypergraph("family:beam:1").unwrap().edge_count(), 3);
        assert!(matches!(resolve_hypergraph("family:beam"), Err(CliError::Usage(_))));
        assert!(matches!(resolve_hypergraph("/no/such/file.json"), Err(CliError::Unreadable { .. })));
    }

    #[test]
    fn identity_references() {
        assert_eq!(resolve_identities("eq3.1").unwrap().len(), 1);
        assert_eq!(resolve_identities("x*y = y*x").unwrap()[0].1.var_count(), 2);
        assert!(matches!(resolve_identities("nonsense"), Err(CliError::Input(_))));
    }

    #[test]
    fn partial_parsing() {
        let h = resolve_hypergraph("family:beam:1").unwrap();
        assert_eq!(parse_partial(&h, "u1=0, u4=1").unwrap(), vec![(0, 0), (3, 1)]);
        assert!(parse_partial(&h, "u1").is_err());
        assert!(parse_partial(&h, "z9=0").is_err());
    }
}
