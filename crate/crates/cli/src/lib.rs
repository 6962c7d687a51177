//! The `svkit` command line. [`run_command`] does all the work and returns
//! the exit status with the text that `main` prints.
//!
//! Exit statuses: 0 success, 1 negative answer (`eq`, `in-kernel`, failed
//! verification or self-test), 2 usage or input error, 3 budget exhausted.

mod selftest;

use std::io::Read;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use svkit::element::{CantorPoint, Quadruple};
use svkit::kuznetsov::{decide_word, Budget, Derivation, FinitePresentation, Verdict};
use svkit::label::{analyze_finite_action, format_word, LabelGroup, LabelGroupConfig, LabelOracle};
use svkit::subgroups::{
    deferment, generating_set, in_canonical_kernel, normal_generation_witness, quasi_retract,
    sk_commutator_decomposition, WitnessBase, WitnessOptions,
};
use svkit::syntax::{eval_element, format_brick, format_element, format_point, format_wreath, parse_brick, parse_label, parse_point};
use svkit::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "svkit", version, about = "Exact arithmetic in twisted Brin-Thompson groups SV_G")]
struct Cli {
    /// Label group description (JSON). Default: trivial group on one color `s`.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Print {"command": ..., "result": ...} instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ExprArg {
    /// Element expression; read from stdin when absent.
    #[arg(short = 'e', long = "expr", value_name = "EXPR")]
    expr: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its reduced quadruple.
    Eval(ExprArg),
    /// Decide whether two expressions denote the same element.
    Eq { a: String, b: String },
    /// Image of a point.
    Act {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(short = 'p', long = "point")]
        point: String,
    },
    /// Germinal twist at a point.
    Twist {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(short = 'p', long = "point")]
        point: String,
    },
    /// Membership in the canonical kernel SK_G.
    InKernel(ExprArg),
    /// Quasi-retraction to Z wr_S G at a point (default: the basepoint).
    Retract {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(short = 'p', long = "point")]
        point: Option<String>,
    },
    /// Write an element of SK_G as a product of two commutators.
    Decompose {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(long)]
        verify: bool,
    },
    /// Express the deferment D_B(k) through conjugates of h and h^-1.
    Witness {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(long)]
        brick: String,
        #[arg(long)]
        label: String,
        #[arg(long)]
        verify: bool,
    },
    /// A finite generating set (finite color sets only).
    Gens,
    /// Orbit and stabilizer data of a finite action on S^n.
    Analyze {
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
    },
    /// Day/night decision of the word problem in a finite presentation.
    Kuznetsov {
        #[arg(long, value_name = "FILE")]
        presentation: PathBuf,
        #[arg(long)]
        word: String,
        /// Maximal word length explored.
        #[arg(long, default_value_t = Budget::default().max_length)]
        budget: usize,
        #[arg(long, default_value_t = Budget::default().max_states)]
        max_states: usize,
    },
    /// Relation and property smoke checks on built-in examples.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Eq { .. } => "eq",
            Command::Act { .. } => "act",
            Command::Twist { .. } => "twist",
            Command::InKernel(_) => "in-kernel",
            Command::Retract { .. } => "retract",
            Command::Decompose { .. } => "decompose",
            Command::Witness { .. } => "witness",
            Command::Gens => "gens",
            Command::Analyze { .. } => "analyze",
            Command::Kuznetsov { .. } => "kuznetsov",
            Command::Selftest => "selftest",
        }
    }
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    status: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Report { status: EXIT_OK, text: text.into(), json }
    }
}

/// Runs one command. `argv[0]` is the program name. A given `oracle`
/// takes precedence over `--config`.
pub fn run_command<I, T>(argv: I, oracle: Option<&LabelGroup>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: text }
            } else {
                Outcome { status, stdout: text, stderr: String::new() }
            };
        }
    };
    let name = cli.command.name();
    let result = load_oracle(&cli, oracle).and_then(|o| dispatch(&cli.command, &o));
    match result {
        Ok(r) => {
            let stdout = if cli.json {
                pretty(&json!({"command": name, "result": r.json}))
            } else {
                ensure_newline(r.text)
            };
            Outcome { status: r.status, stdout, stderr: String::new() }
        }
        Err(e) => {
            let status = match e.downcast_ref::<Error>() {
                Some(Error::BudgetExhausted(_)) => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            let message = format!("{e:#}");
            if cli.json {
                Outcome {
                    status,
                    stdout: pretty(&json!({"command": name, "error": message})),
                    stderr: String::new(),
                }
            } else {
                Outcome { status, stdout: String::new(), stderr: format!("error: {message}\n") }
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// The trivial group on the single color `s`, without generators.
pub fn default_oracle() -> LabelGroup {
    LabelGroup::trivial(1, &[]).and_then(|g| g.with_color_names(&["s"])).expect("valid default")
}

fn load_oracle(cli: &Cli, given: Option<&LabelGroup>) -> anyhow::Result<LabelGroup> {
    if let Some(o) = given {
        return Ok(o.clone());
    }
    match &cli.config {
        None => Ok(default_oracle()),
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(LabelGroupConfig::from_json(&text)?.build()?)
        }
    }
}

fn expression(arg: &ExprArg) -> anyhow::Result<String> {
    match &arg.expr {
        Some(e) => Ok(e.clone()),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading the expression from stdin")?;
            Ok(s)
        }
    }
}

fn element(o: &LabelGroup, arg: &ExprArg) -> anyhow::Result<Quadruple> {
    Ok(eval_element(o, &expression(arg)?)?)
}

fn point_or_base(o: &LabelGroup, p: Option<&str>) -> anyhow::Result<CantorPoint> {
    Ok(match p {
        Some(text) => parse_point(o, text)?,
        None => CantorPoint::basepoint(),
    })
}

fn boolean(value: bool) -> Report {
    Report {
        status: if value { EXIT_OK } else { EXIT_NEGATIVE },
        text: value.to_string(),
        json: json!({ "value": value }),
    }
}

fn dispatch(command: &Command, o: &LabelGroup) -> anyhow::Result<Report> {
    match command {
        Command::Eval(arg) => {
            let q = element(o, arg)?.reduce(o)?;
            let text = format_element(o, &q);
            Ok(Report::ok(text.clone(), json!({"element": text, "leaves": q.leaf_count()})))
        }
        Command::Eq { a, b } => {
            let (x, y) = (eval_element(o, a)?, eval_element(o, b)?);
            Ok(boolean(x.equal(o, &y)?))
        }
        Command::Act { expr, point } => {
            let p = parse_point(o, point)?;
            let image = format_point(o, &element(o, expr)?.act(o, &p)?);
            Ok(Report::ok(image.clone(), json!({ "point": image })))
        }
        Command::Twist { expr, point } => {
            let p = parse_point(o, point)?;
            let g = format_word(o, &element(o, expr)?.germinal_twist(o, &p)?);
            Ok(Report::ok(g.clone(), json!({ "label": g })))
        }
        Command::InKernel(arg) => Ok(boolean(in_canonical_kernel(o, &element(o, arg)?)?)),
        Command::Retract { expr, point } => {
            let p = point_or_base(o, point.as_deref())?;
            let w = quasi_retract(o, &element(o, expr)?, &p)?;
            let vector: serde_json::Map<String, Value> =
                w.vector().iter().map(|(&s, &x)| (o.color_name(s), json!(x))).collect();
            Ok(Report::ok(
                format_wreath(o, &w),
                json!({"vector": vector, "label": format_word(o, w.label()), "text": format_wreath(o, &w)}),
            ))
        }
        Command::Decompose { expr, verify } => decompose(o, &element(o, expr)?, *verify),
        Command::Witness { expr, brick, label, verify } => {
            let h = element(o, expr)?;
            let psi = parse_brick(o, brick)?;
            let k = parse_label(o, label)?;
            witness(o, &h, &psi, &k, *verify)
        }
        Command::Gens => {
            let gens = generating_set(o)?;
            let texts: Vec<String> = gens.iter().map(|q| format_element(o, q)).collect();
            Ok(Report::ok(texts.join("\n"), json!({"count": texts.len(), "generators": texts})))
        }
        Command::Analyze { n } => analyze(o, *n),
        Command::Kuznetsov { presentation, word, budget, max_states } => {
            let text = std::fs::read_to_string(presentation)
                .with_context(|| format!("reading {}", presentation.display()))?;
            let p = FinitePresentation::from_json(&text)?;
            let w = p.parse_word(word)?;
            let verdict = decide_word(&p, &w, Budget { max_length: *budget, max_states: *max_states })?;
            Ok(kuznetsov_report(&p, &verdict))
        }
        Command::Selftest => Ok(selftest::run()),
    }
}

fn decompose(o: &LabelGroup, h: &Quadruple, verify: bool) -> anyhow::Result<Report> {
    let (p, q) = sk_commutator_decomposition(o, h)?;
    let mut lines = Vec::new();
    let mut pairs = Vec::new();
    for (i, pair) in [&p, &q].iter().enumerate() {
        let (c, d) = (format_element(o, &pair.c), format_element(o, &pair.d));
        lines.push(format!("c{} = {c}", i + 1));
        lines.push(format!("d{} = {d}", i + 1));
        pairs.push(json!({"c": c, "d": d}));
    }
    let mut status = EXIT_OK;
    let verified = if verify {
        let ok = p.evaluate(o)?.multiply(o, &q.evaluate(o)?)?.equal(o, h)?;
        lines.push(format!("verified: {ok}"));
        if !ok {
            status = EXIT_NEGATIVE;
        }
        json!(ok)
    } else {
        Value::Null
    };
    Ok(Report { status, text: lines.join("\n"), json: json!({"pairs": pairs, "verified": verified}) })
}

fn witness(
    o: &LabelGroup,
    h: &Quadruple,
    psi: &svkit::forest::BrickAddress,
    k: &svkit::label::LabelElement,
    verify: bool,
) -> anyhow::Result<Report> {
    let word = normal_generation_witness(o, h, psi, k, WitnessOptions::default())?;
    let factors: Vec<Value> = word
        .factors
        .iter()
        .map(|(base, u)| {
            let base = match base {
                WitnessBase::H => "h",
                WitnessBase::HInverse => "h^-1",
            };
            json!({"base": base, "conjugator": format_element(o, u)})
        })
        .collect();
    let mut lines = vec![
        format!("target: D_{}({})", format_brick(o, psi), format_word(o, k)),
        format!("factors: {}", word.len()),
        svkit::syntax::format_conjugacy_word(o, &word),
    ];
    let mut status = EXIT_OK;
    let verified = if verify {
        let ok = word.evaluate(o, h)?.equal(o, &deferment(psi, k))?;
        lines.push(format!("verified: {ok}"));
        if !ok {
            status = EXIT_NEGATIVE;
        }
        json!(ok)
    } else {
        Value::Null
    };
    Ok(Report {
        status,
        text: lines.join("\n"),
        json: json!({"length": word.len(), "factors": factors, "verified": verified}),
    })
}

fn analyze(o: &LabelGroup, n: usize) -> anyhow::Result<Report> {
    let r = analyze_finite_action(o, n)?;
    let kernel: Vec<String> = r.kernel_generators.iter().map(|g| format_word(o, g)).collect();
    let orbits: Vec<Value> = r
        .subset_orbits
        .iter()
        .map(|s| {
            let rep: Vec<String> = s.representative.iter().map(|&c| o.color_name(c)).collect();
            json!({
                "size": s.size,
                "representative": rep,
                "orbit_size": s.orbit_size,
                "setwise_stabilizer_order": s.setwise_stabilizer_order,
                "pointwise_stabilizer_order": s.pointwise_stabilizer_order,
            })
        })
        .collect();
    let mut lines = vec![
        format!("group order: {}", r.group_order),
        format!("colors: {}", r.color_count),
        format!("kernel order: {}", r.kernel_order),
        format!("kernel generators: [{}]", kernel.join(", ")),
        format!("kernel is G: {}", r.kernel_is_whole_group),
    ];
    for (m, c) in r.orbit_counts.iter().enumerate() {
        lines.push(format!("orbits on S^{}: {c}", m + 1));
    }
    for s in &r.subset_orbits {
        let rep: Vec<String> = s.representative.iter().map(|&c| o.color_name(c)).collect();
        lines.push(format!(
            "subset orbit {{{}}}: size {}, setwise stabilizer {}, pointwise stabilizer {}",
            rep.join(", "),
            s.orbit_size,
            s.setwise_stabilizer_order,
            s.pointwise_stabilizer_order
        ));
    }
    lines.push(format!("finiteness clauses hold: {}", r.finiteness_clauses_hold));
    Ok(Report::ok(
        lines.join("\n"),
        json!({
            "n": r.n,
            "group_order": r.group_order,
            "color_count": r.color_count,
            "kernel_order": r.kernel_order,
            "kernel_generators": kernel,
            "kernel_is_whole_group": r.kernel_is_whole_group,
            "orbit_counts": r.orbit_counts,
            "subset_orbits": orbits,
            "finiteness_clauses_hold": r.finiteness_clauses_hold,
        }),
    ))
}

fn derivation_json(p: &FinitePresentation, d: &Derivation) -> Value {
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|s| {
            json!({
                "position": s.position,
                "relator": p.format_word(&d.relators[s.relator]),
                "inverse": s.inverse,
                "rotation": s.rotation,
                "result": p.format_word(&s.result),
            })
        })
        .collect();
    json!({"start": p.format_word(&d.start), "steps": steps})
}

fn derivation_text(p: &FinitePresentation, d: &Derivation, out: &mut Vec<String>) {
    out.push(format!("  {}", p.format_word(&d.start)));
    for s in &d.steps {
        let sign = if s.inverse { "^-1" } else { "" };
        out.push(format!(
            "  -> {}    (insert ({}){sign} rotated {} at {})",
            p.format_word(&s.result),
            p.format_word(&d.relators[s.relator]),
            s.rotation,
            s.position
        ));
    }
}

fn kuznetsov_report(p: &FinitePresentation, v: &Verdict) -> Report {
    match v {
        Verdict::Trivial(d) => {
            let mut lines = vec!["verdict: trivial".to_string()];
            derivation_text(p, d, &mut lines);
            Report::ok(lines.join("\n"), json!({"verdict": "trivial", "derivations": [derivation_json(p, d)]}))
        }
        Verdict::Nontrivial(ds) => {
            let mut lines = vec!["verdict: nontrivial (the quotient by w is trivial)".to_string()];
            for d in ds {
                derivation_text(p, d, &mut lines);
            }
            let ds: Vec<Value> = ds.iter().map(|d| derivation_json(p, d)).collect();
            Report::ok(lines.join("\n"), json!({"verdict": "nontrivial", "derivations": ds}))
        }
        Verdict::BudgetExhausted(stats) => Report {
            status: EXIT_BUDGET,
            text: format!("verdict: budget exhausted after {} states (length {})", stats.states, stats.last_length),
            json: json!({"verdict": "budget_exhausted", "states": stats.states, "last_length": stats.last_length}),
        },
    }
}

/// Runs `main`'s argument vector and returns the status.
pub fn main_with_args() -> i32 {
    let out = run_command(std::env::args_os(), None);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.status
}
