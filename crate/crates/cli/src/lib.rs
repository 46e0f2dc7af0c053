//! Command-line front end: argument parsing, dispatch and report output.
//!
//! [`run`] does all the work in-process and returns what the binary would
//! print, which keeps the integration tests cheap.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use leibniz_core::chains::{chain_intersection, qa_witness, stabilization_index, validate_chain, ChainSpec, Side};
use leibniz_core::claims::any_failed;
use leibniz_core::lazy::{instantiate, FamilyParams};
use leibniz_core::primes::{enumerate_ideals, DEFAULT_GUARD};
use leibniz_core::series::{self, RadicalMethod, SeriesKind};
use leibniz_core::{direct_sum, EnumerationGuard, LeibnizAlgebra, Subspace};
use serde_json::{json, Value};

use crate::format::{parse_algebra_file, AlgebraBlock, FormatError};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_AUDIT_FAILED: i32 = 3;

/// Environment override for the default enumeration guard.
pub const GUARD_ENV: &str = "LEIBNIZ_GUARD";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "leibniz", version, about = "Exact computations with finite-dimensional Leibniz algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Upper bound on enumerated subspaces (default 1000000, or $LEIBNIZ_GUARD).
    #[arg(long, global = true)]
    pub guard: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report wall-clock time. Off by default so reports stay reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Input {
    /// Algebra file.
    pub file: PathBuf,
    /// Algebra name inside the file.
    #[arg(short = 'a', long = "algebra")]
    pub algebra: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Derived,
    Lower,
    Upper,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Audit both Leibniz identities on all basis triples.
    Check(Input),
    /// Derived, lower central or upper central series.
    Series {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// The ideal spanned by all squares.
    Leib(Input),
    /// Left, right and two-sided centers.
    Centers(Input),
    /// Solvable radical.
    Radical(Input),
    /// Whether the solvable radical is zero.
    Semisimple(Input),
    /// All two-sided ideals (finite fields only).
    Ideals(Input),
    /// Prime ideals, and whether a given ideal is prime.
    Primes {
        #[command(flatten)]
        input: Input,
        /// Generators such as `e1,e2`; closed to an ideal first.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Intersection of the minimal primes over an ideal (default 0).
    PrimeRadical {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Validate a descending chain of ideals and search for a witness.
    Chain {
        #[command(flatten)]
        input: Input,
        /// One generator list per term, each closed to an ideal.
        #[arg(long, num_args = 1.., required = true)]
        terms: Vec<String>,
    },
    /// Snapshot of an infinite family, optionally auditing its claims.
    Lazy {
        /// example2, remark-sl2 or sum-simple.
        family: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        audit: bool,
    },
    /// Quotient by the ideal generated by a list.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        by: String,
    },
    /// Direct sum of two algebras from the same file.
    Dsum {
        file: PathBuf,
        #[arg(short = 'a', long = "algebra", num_args = 1, required = true)]
        algebras: Vec<String>,
    },
}

/// What a run printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Guard(String),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Algebra { source: leibniz_core::Error::EnumerationTooLarge { .. }, .. } => {
                CliError::Guard(e.to_string())
            }
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<leibniz_core::Error> for CliError {
    fn from(e: leibniz_core::Error) -> Self {
        match e {
            leibniz_core::Error::EnumerationTooLarge { .. } => CliError::Guard(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

type CmdResult<T> = Result<T, CliError>;

/// Parsed result plus its text rendering.
struct Done {
    inputs: String,
    result: Value,
    text: Vec<String>,
    code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: rendered, code }
            } else {
                Outcome { stdout: rendered, stderr: String::new(), code }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(done) => {
            let timing_ms = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            let report = Report { command: echo, inputs: done.inputs, result: done.result, timing_ms };
            let stdout = match cli.format {
                OutputFormat::Json => report.to_json_string(),
                OutputFormat::Text => {
                    let mut lines = done.text;
                    lines.push(format!("inputs digest: {}", report.digest()));
                    if let Some(ms) = timing_ms {
                        lines.push(format!("time: {ms:.1} ms"));
                    }
                    lines.join("\n") + "\n"
                }
            };
            Outcome { stdout, stderr: String::new(), code: done.code }
        }
        Err(CliError::Input(msg)) => Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_INPUT },
        Err(CliError::Guard(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg} (raise it with --guard or {GUARD_ENV})\n"),
            code: EXIT_GUARD,
        },
    }
}

fn guard(cli: &Cli) -> CmdResult<EnumerationGuard> {
    if let Some(g) = cli.guard {
        return Ok(EnumerationGuard(g));
    }
    match std::env::var(GUARD_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(EnumerationGuard)
            .map_err(|_| CliError::Input(format!("{GUARD_ENV}='{s}' is not a non-negative integer"))),
        Err(_) => Ok(EnumerationGuard(DEFAULT_GUARD)),
    }
}

fn load(input: &Input) -> CmdResult<(AlgebraBlock, LeibnizAlgebra)> {
    load_named(&input.file, &input.algebra)
}

fn load_named(file: &PathBuf, name: &str) -> CmdResult<(AlgebraBlock, LeibnizAlgebra)> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
    let parsed = parse_algebra_file(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let block = parsed.get(name)?.clone();
    let g = block.build()?;
    Ok((block, g))
}

/// A generator list such as `e1,e2` or `e1+2*e3,e4`; `0` is the zero
/// ideal and `g` the whole algebra.
pub fn parse_generators(g: &LeibnizAlgebra, spec: &str) -> Result<Vec<Vec<leibniz_core::Scalar>>, String> {
    let spec = spec.trim();
    if spec == "0" || spec.is_empty() {
        return Ok(Vec::new());
    }
    if spec == "g" {
        return Ok((0..g.dim()).map(|i| g.unit(i)).collect());
    }
    let mut out = Vec::new();
    for item in spec.split(',') {
        let expr: String = item.chars().filter(|c| !c.is_whitespace()).collect();
        let terms = format::parse_expr(0, &expr, g.dim()).map_err(|e| format!("'{spec}': {}", strip_line(&e)))?;
        let mut v = g.zero_vector();
        for (k, c) in terms {
            v[k - 1] = g.field().from_rational(&c).map_err(|e| format!("'{spec}': {e}"))?;
        }
        out.push(v);
    }
    Ok(out)
}

fn strip_line(e: &FormatError) -> String {
    let s = e.to_string();
    s.strip_prefix("line 0: ").map(str::to_string).unwrap_or(s)
}

struct ClosedSpec {
    spec: String,
    ideal: Subspace,
    closure_added: bool,
}

impl ClosedSpec {
    fn json(&self) -> Value {
        json!({"generators": self.spec, "ideal": report::subspace(&self.ideal), "closure_added": self.closure_added})
    }
}

fn close_spec(g: &LeibnizAlgebra, flag: &str, spec: &str) -> CmdResult<ClosedSpec> {
    let gens = parse_generators(g, spec).map_err(|e| CliError::Input(format!("{flag} {e}")))?;
    let span = g.span(&gens)?;
    let ideal = g.ideal_closure_of(&span);
    Ok(ClosedSpec { spec: spec.to_string(), closure_added: ideal.dim() > span.dim(), ideal })
}

fn inputs_text(command: &str, blocks: &[&AlgebraBlock], options: &[(&str, String)]) -> String {
    let mut s = format!("command {command}\n");
    for (k, v) in options {
        s.push_str(&format!("{k} {v}\n"));
    }
    for b in blocks {
        s.push_str(&b.to_text());
    }
    s
}

fn header(g: &LeibnizAlgebra) -> String {
    format!("{} over {}, dim {}, convention {}", g.name(), g.field(), g.dim(), g.convention())
}

fn opt_usize(v: Option<usize>) -> String {
    v.map_or_else(|| "none".into(), |n| n.to_string())
}

fn dispatch(cli: &Cli) -> CmdResult<Done> {
    let ok = |inputs, result, text| Done { inputs, result, text, code: EXIT_OK };
    match &cli.command {
        Command::Check(input) => {
            let (block, g) = load(input)?;
            let audit = g.identity_audit();
            let n = g.dim();
            let triples: Vec<Value> = audit
                .failing_triples
                .iter()
                .map(|t| {
                    let (i, j, k) = t.triple;
                    json!({
                        "identity": report::identity_name(t.identity),
                        "triple": [format!("e{}", i + 1), format!("e{}", j + 1), format!("e{}", k + 1)],
                        "residual": report::vector(&t.residual),
                    })
                })
                .collect();
            let mut text = vec![
                header(&g),
                format!("left identity: {}", if audit.left_ok { "holds" } else { "fails" }),
                format!("right identity: {}", if audit.right_ok { "holds" } else { "fails" }),
            ];
            for t in &audit.failing_triples {
                let (i, j, k) = t.triple;
                text.push(format!(
                    "  {} fails at (e{}, e{}, e{}): residual {}",
                    report::identity_name(t.identity),
                    i + 1,
                    j + 1,
                    k + 1,
                    leibniz_core::algebra::render_vector(&t.residual)
                ));
            }
            let result = json!({
                "algebra": g.name(), "convention": g.convention().as_str(), "left_ok": audit.left_ok,
                "right_ok": audit.right_ok, "triples_checked": n * n * n, "failing_triples": triples,
            });
            Ok(ok(inputs_text("check", &[&block], &[]), result, text))
        }
        Command::Series { input, kind } => {
            let (block, g) = load(input)?;
            let (rep, extra, extra_text) = match kind {
                Kind::Derived => {
                    let len = series::derived_length(&g);
                    let r = series::derived_series(&g);
                    (r, json!({"solvable": len.is_some(), "derived_length": len}), format!("derived length: {}", opt_usize(len)))
                }
                Kind::Lower => {
                    let class = series::nilpotency_class(&g);
                    let r = series::lower_central_series(&g);
                    (
                        r,
                        json!({"nilpotent": class.is_some(), "nilpotency_class": class}),
                        format!("nilpotency class: {}", opt_usize(class)),
                    )
                }
                Kind::Upper => {
                    let r = series::upper_central_series(&g);
                    let hyper = r.last().is_full();
                    (r, json!({"hypercentral": hyper}), format!("hypercentral: {hyper}"))
                }
            };
            let mut result = json!({
                "algebra": g.name(), "kind": rep.kind.as_str(), "dims": rep.dims,
                "stabilized_at": rep.stabilized_at, "terms": report::subspaces(&rep.terms),
            });
            merge(&mut result, extra);
            let mut text = vec![header(&g), format!("{} series dims: {:?}", rep.kind.as_str(), rep.dims)];
            for (k, t) in rep.terms.iter().enumerate() {
                text.push(format!("  [{k}] {}", leibniz_core::algebra::render_subspace(t)));
            }
            text.push(format!("stabilized at: {}", rep.stabilized_at));
            text.push(extra_text);
            let kind_name = match kind {
                Kind::Derived => SeriesKind::Derived,
                Kind::Lower => SeriesKind::LowerCentral,
                Kind::Upper => SeriesKind::UpperCentral,
            };
            Ok(ok(inputs_text("series", &[&block], &[("kind", kind_name.as_str().into())]), result, text))
        }
        Command::Leib(input) => {
            let (block, g) = load(input)?;
            let leib = g.leib()?;
            let result = json!({"algebra": g.name(), "leib": report::subspace(&leib), "quotient_dim": g.dim() - leib.dim()});
            let text = vec![header(&g), format!("Leib: {} (dim {})", leibniz_core::algebra::render_subspace(&leib), leib.dim())];
            Ok(ok(inputs_text("leib", &[&block], &[]), result, text))
        }
        Command::Centers(input) => {
            let (block, g) = load(input)?;
            let c = g.centers();
            let result = json!({
                "algebra": g.name(), "left": report::subspace(&c.left),
                "right": report::subspace(&c.right), "center": report::subspace(&c.center),
            });
            let r = leibniz_core::algebra::render_subspace;
            let text = vec![
                header(&g),
                format!("left center: {}", r(&c.left)),
                format!("right center: {}", r(&c.right)),
                format!("center: {}", r(&c.center)),
            ];
            Ok(ok(inputs_text("centers", &[&block], &[]), result, text))
        }
        Command::Radical(input) | Command::Semisimple(input) => {
            let semisimple_cmd = matches!(cli.command, Command::Semisimple(_));
            let (block, g) = load(input)?;
            let guard = guard(cli)?;
            let rad = series::solvable_radical(&g, guard)?;
            let method = RadicalMethod::for_field(g.field()).as_str();
            let mut result = json!({"algebra": g.name(), "radical": report::subspace(&rad), "method": method});
            let mut text = vec![header(&g), format!("solvable radical: {} ({method})", leibniz_core::algebra::render_subspace(&rad))];
            if semisimple_cmd {
                merge(&mut result, json!({"semisimple": rad.is_zero()}));
                text.push(format!("semisimple: {}", rad.is_zero()));
            }
            let name = if semisimple_cmd { "semisimple" } else { "radical" };
            Ok(ok(inputs_text(name, &[&block], &[("guard", guard.0.to_string())]), result, text))
        }
        Command::Ideals(input) => {
            let (block, g) = load(input)?;
            if !g.field().is_finite() {
                return Err(CliError::Input(format!("ideals: algebra '{}' is over Q; enumeration needs GF(p)", g.name())));
            }
            let guard = guard(cli)?;
            let lattice = enumerate_ideals(&g, guard)?;
            let result = json!({
                "algebra": g.name(), "count": lattice.len(), "provenance": lattice.provenance().as_str(),
                "ideals": report::subspaces(lattice.ideals()),
            });
            let mut text = vec![header(&g), format!("{} ideals:", lattice.len())];
            text.extend(lattice.ideals().iter().map(|u| format!("  {}", leibniz_core::algebra::render_subspace(u))));
            Ok(ok(inputs_text("ideals", &[&block], &[("guard", guard.0.to_string())]), result, text))
        }
        Command::Primes { input, ideal } => {
            let (block, g) = load(input)?;
            let guard = guard(cli)?;
            let lattice = enumerate_ideals(&g, guard)?;
            let primes = lattice.primes();
            let mut result = json!({
                "algebra": g.name(), "primes": report::subspaces(primes.iter().copied()), "count": primes.len(),
                "prime_algebra": lattice.is_prime_algebra()?, "semiprime_algebra": lattice.is_semiprime_algebra()?,
            });
            let mut text = vec![header(&g), format!("{} prime ideals:", primes.len())];
            text.extend(primes.iter().map(|u| format!("  {}", leibniz_core::algebra::render_subspace(u))));
            let mut options = vec![("guard", guard.0.to_string())];
            if let Some(spec) = ideal {
                let c = close_spec(&g, "--ideal", spec)?;
                let named = |e: leibniz_core::Error| CliError::Input(format!("--ideal '{spec}': {e}"));
                let prime = lattice.is_prime_ideal(&c.ideal).map_err(named)?;
                let semiprime = lattice.is_semiprime_ideal(&c.ideal).map_err(named)?;
                let maximal = lattice.is_maximal_ideal(&c.ideal).map_err(named)?;
                let mut q = c.json();
                merge(&mut q, json!({"prime": prime, "semiprime": semiprime, "maximal": maximal}));
                merge(&mut result, json!({"query": q}));
                text.push(format!(
                    "ideal {}: prime {prime}, semiprime {semiprime}, maximal {maximal}",
                    leibniz_core::algebra::render_subspace(&c.ideal)
                ));
                options.push(("ideal", render_ideal(&c.ideal)));
            }
            Ok(ok(inputs_text("primes", &[&block], &options), result, text))
        }
        Command::PrimeRadical { input, ideal } => {
            let (block, g) = load(input)?;
            let guard = guard(cli)?;
            let lattice = enumerate_ideals(&g, guard)?;
            let c = close_spec(&g, "--ideal", ideal.as_deref().unwrap_or("0"))?;
            let minimal = lattice.minimal_primes_over(&c.ideal)?;
            let rad = lattice.prime_radical(&c.ideal)?;
            let result = json!({
                "algebra": g.name(), "query": c.json(), "minimal_primes": report::subspaces(minimal.iter().copied()),
                "prime_radical": report::subspace(&rad), "equals_leib": rad == g.leib()?,
            });
            let text = vec![
                header(&g),
                format!("ideal: {}", leibniz_core::algebra::render_subspace(&c.ideal)),
                format!("minimal primes over it: {}", minimal.len()),
                format!("prime radical: {}", leibniz_core::algebra::render_subspace(&rad)),
            ];
            let options = [("guard", guard.0.to_string()), ("ideal", render_ideal(&c.ideal))];
            Ok(ok(inputs_text("prime-radical", &[&block], &options), result, text))
        }
        Command::Chain { input, terms } => {
            let (block, g) = load(input)?;
            let closed = terms.iter().map(|t| close_spec(&g, "--terms", t)).collect::<CmdResult<Vec<_>>>()?;
            let spec = ChainSpec::finite(closed.iter().map(|c| c.ideal.clone()).collect());
            let spec = validate_chain(&g, spec).map_err(|e| match e {
                leibniz_core::Error::NotDescending(k) => CliError::Input(format!(
                    "--terms '{}' is not contained in the previous term '{}'",
                    terms[k],
                    terms[k - 1]
                )),
                e => e.into(),
            })?;
            let derived = series::derived_series(&g);
            let max_m = derived.terms.len() + spec.len();
            let w = qa_witness(&g, &spec, max_m, Side::Both)?;
            let meet = chain_intersection(&spec);
            let result = json!({
                "algebra": g.name(),
                "terms": closed.iter().map(ClosedSpec::json).collect::<Vec<_>>(),
                "strictly_descending": spec.is_strictly_descending(),
                "stabilization_index": stabilization_index(&spec),
                "intersection": report::subspace(&meet),
                "witness": {
                    "side": w.side.as_str(), "witness_m": w.witness_m, "left_m": w.left_m,
                    "right_m": w.right_m, "search_depth": w.search_depth,
                },
            });
            let mut text = vec![header(&g)];
            for (k, c) in closed.iter().enumerate() {
                let note = if c.closure_added { " (closed)" } else { "" };
                text.push(format!("  I{k} = {}{note}", leibniz_core::algebra::render_subspace(&c.ideal)));
            }
            text.push(format!("intersection: {}", leibniz_core::algebra::render_subspace(&meet)));
            text.push(format!(
                "witness m: {} (left {}, right {})",
                opt_usize(w.witness_m),
                opt_usize(w.left_m),
                opt_usize(w.right_m)
            ));
            let options: Vec<(&str, String)> = closed.iter().map(|c| ("term", render_ideal(&c.ideal))).collect();
            Ok(ok(inputs_text("chain", &[&block], &options), result, text))
        }
        Command::Lazy { family, depth, audit } => lazy_command(cli, family, *depth, *audit),
        Command::Quotient { input, by } => {
            let (block, g) = load(input)?;
            let c = close_spec(&g, "--by", by)?;
            if c.ideal.is_full() {
                return Err(CliError::Input(format!("--by '{by}' generates the whole algebra")));
            }
            let q = g.quotient(&c.ideal)?;
            let qa = q.algebra.clone().with_name(&format!("{}_quot", g.name()));
            let out_block = AlgebraBlock::from_algebra(&qa);
            let result = json!({
                "algebra": g.name(), "by": c.json(), "quotient": report::algebra_summary(&qa),
                "complement": q.coordinates().complement().iter().map(|k| format!("e{}", k + 1)).collect::<Vec<_>>(),
            });
            let mut text = vec![header(&g), format!("# quotient by {}", leibniz_core::algebra::render_subspace(&c.ideal))];
            text.push(out_block.to_text().trim_end().to_string());
            Ok(ok(inputs_text("quotient", &[&block], &[("by", render_ideal(&c.ideal))]), result, text))
        }
        Command::Dsum { file, algebras } => {
            let [a, b] = algebras.as_slice() else {
                return Err(CliError::Input(format!("dsum takes exactly two -a names, got {}", algebras.len())));
            };
            let (ba, ga) = load_named(file, a)?;
            let (bb, gb) = load_named(file, b)?;
            let s = direct_sum(&ga, &gb)?.with_name(&format!("{a}_{b}"));
            let result = json!({"summands": [a, b], "sum": report::algebra_summary(&s)});
            let text = vec![AlgebraBlock::from_algebra(&s).to_text().trim_end().to_string()];
            Ok(ok(inputs_text("dsum", &[&ba, &bb], &[]), result, text))
        }
    }
}

fn render_ideal(u: &Subspace) -> String {
    leibniz_core::algebra::render_subspace(u)
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn lazy_command(cli: &Cli, family: &str, depth: usize, audit: bool) -> CmdResult<Done> {
    let fam = instantiate(family, FamilyParams::default())?;
    let t = fam.truncate(depth)?;
    let mut chains = Vec::new();
    let mut text = vec![
        format!("{} at depth {depth}: dim {}, convention {}", fam.name(), t.algebra.dim(), t.algebra.convention()),
        format!("snapshot is {}", if t.exact { "exact" } else { "approximate" }),
        format!("escapes: {}", t.escapes.len()),
    ];
    for rule in fam.rules() {
        let (_, spec) = fam.chain(rule)?.snapshot(depth)?;
        let dims: Vec<usize> = spec.terms.iter().map(Subspace::dim).collect();
        let status = match validate_chain(&t.algebra, spec) {
            Ok(v) if v.is_strictly_descending() => "strictly-descending".to_string(),
            Ok(_) => "descending".to_string(),
            Err(e) => e.to_string(),
        };
        text.push(format!("chain {rule}: dims {dims:?}, {status}"));
        chains.push(json!({"rule": rule, "dims": dims, "status": status}));
    }
    let verdict = fam.artinian_report(depth)?;
    text.push(format!("artinian: {}", verdict.as_str()));
    let escapes: Vec<Value> = t
        .escapes
        .iter()
        .map(|e| {
            json!({
                "left": e.left.to_string(), "right": e.right.to_string(),
                "dropped": e.dropped.as_ref().map(|d| d.to_string()), "reason": e.reason,
            })
        })
        .collect();
    let mut result = json!({
        "family": fam.name(), "depth": depth, "field": fam.field().to_string(),
        "snapshot": {
            "dim": t.algebra.dim(), "exact": t.exact, "convention": t.algebra.convention().as_str(),
            "labels": t.index_map.iter().map(|l| l.to_string()).collect::<Vec<_>>(), "escapes": escapes,
        },
        "chains": chains, "artinian": report::artinian(&verdict),
    });
    let mut options = vec![("family", fam.name().to_string()), ("depth", depth.to_string())];
    let mut code = EXIT_OK;
    if audit {
        let claims = fam.audit_claims(depth, cli.seed)?;
        if any_failed(&claims) {
            code = EXIT_AUDIT_FAILED;
        }
        for c in &claims {
            let mut line = format!("claim {}: {}", c.id, c.status.as_str());
            if let Some(ce) = &c.counterexample {
                line.push_str(&format!(" ({})", report::counterexample_text(ce)));
            }
            text.push(line);
        }
        merge(&mut result, json!({"claims": claims.iter().map(report::claim).collect::<Vec<_>>()}));
        options.push(("audit-seed", cli.seed.to_string()));
    }
    Ok(Done { inputs: inputs_text("lazy", &[], &options), result, text, code })
}
