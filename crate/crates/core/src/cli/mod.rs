//! Command surface of `hopfcheck`.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 usage or input error.

pub mod dsl;
pub mod library;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bialgebra::{CheckOptions, CheckReport, Checker, GenMap, Overall, Presentation};
use crate::error::{Error, Result};
use crate::rewrite::{Status, DEFAULT_DEGREE_BOUND};
use crate::scalars::{integer, Rational};

use report::{render_json, render_text, Output, SCHEMA};

pub const EXIT_USAGE: i32 = 3;

pub const CONFIRMED: &str = "no new deformation: CONFIRMED";

#[derive(Parser, Debug)]
#[command(
    name = "hopfcheck",
    version,
    about = "Certifies identities between presented matrix bialgebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Degree bound for completion.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    pub degree_bound: usize,
    /// Normal-form order of the generators, e.g. `a,b,c,d`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub order: Option<Vec<String>>,
    /// Seed for the oracle's random parameter points.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Random parameter points per oracle run.
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    /// Skip the linear-algebra cross-check.
    #[arg(long, global = true)]
    pub no_oracle: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print rewrite traces.
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a check.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Substitute values for parameters and print the result.
    Specialize {
        presentation: String,
        /// `name=value` with a rational value.
        #[arg(long = "set", required = true)]
        set: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the normal form of an expression.
    Reduce {
        presentation: String,
        #[arg(long)]
        expr: String,
    },
    /// Print a presentation in DSL form.
    Show { presentation: String },
    /// Run the full certification chain.
    Paper,
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Δ respects the relations, coassociativity and counit.
    Bialgebra { presentation: String },
    /// The map and its inverse are bialgebra morphisms.
    Equiv {
        p: String,
        q: String,
        #[arg(long)]
        map: String,
    },
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn options(g: &GlobalArgs) -> CheckOptions {
    CheckOptions {
        degree_bound: g.degree_bound,
        seed: g.seed,
        trials: g.trials,
        oracle: !g.no_oracle,
        trace: g.trace,
        special_points: Vec::new(),
    }
}

fn load(g: &GlobalArgs, arg: &str) -> Result<Presentation> {
    let p = library::resolve_presentation(arg)?;
    match &g.order {
        Some(order) => p.with_order(order),
        None => Ok(p),
    }
}

fn emit(g: &GlobalArgs, out: &Output) -> Outcome {
    let stdout = if g.json { render_json(out) } else { render_text(out) };
    Outcome {
        code: out.overall.exit_code(),
        stdout,
        stderr: String::new(),
    }
}

fn parse_assignment(items: &[String]) -> Result<Vec<(String, Rational)>> {
    items
        .iter()
        .map(|s| {
            let bad = || Error::Usage(format!("expected name=value, got `{s}`"));
            let (name, value) = s.split_once('=').ok_or_else(bad)?;
            let value: Rational = value.trim().parse().map_err(|_| bad())?;
            Ok((name.trim().to_string(), value))
        })
        .collect()
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Check(CheckCommand::Bialgebra { presentation }) => {
            let p = load(g, presentation)?;
            let out = Output::new("check bialgebra", check_bialgebra(&Checker::new(options(g)), &p)?);
            Ok(emit(g, &out))
        }
        Command::Check(CheckCommand::Equiv { p, q, map }) => {
            let (p, q) = (load(g, p)?, load(g, q)?);
            let m = library::resolve_map(map, &p, &q)?;
            let report = Checker::new(options(g)).check_equivalence(&p, &q, &m)?;
            Ok(emit(g, &Output::new("check equiv", vec![report])))
        }
        Command::Specialize { presentation, set, out } => {
            let p = load(g, presentation)?;
            let s = crate::bialgebra::specialize(&p, &parse_assignment(set)?)?;
            let text = dsl::print_presentation(&s);
            if let Some(path) = out {
                std::fs::write(path, &text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            }
            let stdout = if g.json {
                render_json(&SpecializeOutput {
                    schema: SCHEMA,
                    command: "specialize",
                    source: p.name().into(),
                    presentation: text,
                })
            } else if let Some(path) = out {
                format!("wrote {}\n", path.display())
            } else {
                text
            };
            Ok(Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Reduce { presentation, expr } => reduce(g, &load(g, presentation)?, expr),
        Command::Show { presentation } => Ok(Outcome {
            code: 0,
            stdout: dsl::print_presentation(&load(g, presentation)?),
            stderr: String::new(),
        }),
        Command::Paper => {
            let out = paper(&options(g), g.order.as_deref())?;
            Ok(emit(g, &out))
        }
    }
}

#[derive(Serialize)]
struct SpecializeOutput {
    schema: u32,
    command: &'static str,
    source: String,
    presentation: String,
}

#[derive(Serialize)]
struct ReduceOutput {
    schema: u32,
    command: &'static str,
    presentation: String,
    input: String,
    normal_form: String,
    rules: usize,
    status: Status,
    degree_bound: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    trace: Vec<String>,
}

fn reduce(g: &GlobalArgs, p: &Presentation, expr: &str) -> Result<Outcome> {
    let arity = if dsl::mentions_tensor(expr) { 2 } else { 1 };
    let alphabet = if arity == 2 {
        p.alphabet().tensor(2)
    } else {
        p.alphabet().clone()
    };
    let x = dsl::parse_element(expr, p.generators(), p.params(), &alphabet)?;
    let checker = Checker::new(options(g));
    let sys = checker.system(p, arity)?;
    let (nf, trace) = sys.normal_form_traced(&x)?;
    let lines = if g.trace {
        trace.lines(&sys, p.params())
    } else {
        Vec::new()
    };
    let nf_text = nf.display(p.params()).to_string();
    let stdout = if g.json {
        render_json(&ReduceOutput {
            schema: SCHEMA,
            command: "reduce",
            presentation: p.name().into(),
            input: x.display(p.params()).to_string(),
            normal_form: nf_text,
            rules: sys.rules().len(),
            status: sys.status(),
            degree_bound: sys.degree_bound(),
            trace: lines,
        })
    } else {
        let mut s: String = lines.iter().map(|l| format!("{l}\n")).collect();
        s.push_str(&nf_text);
        s.push('\n');
        s
    };
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

/// Δ-homomorphism, coassociativity and counit reports for `p`.
pub fn check_bialgebra(checker: &Checker, p: &Presentation) -> Result<Vec<CheckReport>> {
    Ok(vec![
        checker.check_delta_hom(p)?,
        checker.check_coassoc(p)?,
        checker.check_counit(p)?,
    ])
}

fn at_g0_h1() -> Vec<(String, Rational)> {
    vec![("g".into(), integer(0)), ("h".into(), integer(1))]
}

/// The certification chain:
///
/// 1. `illy` and `glgh` (symbolic g, h) are bialgebras;
/// 2. `glgh` at g = 0, h = 1 has exactly the relations of `glgh01`;
/// 3. the exchange map is a bialgebra isomorphism from that specialization
///    onto `illy`: relation images lie in each ideal and Δ is preserved;
/// 4. the exchanged relations are those of `glghb`, whose ideal is the one of
///    `illy`.
pub fn paper(opts: &CheckOptions, order: Option<&[String]>) -> Result<Output> {
    let mut opts = opts.clone();
    opts.special_points.push(at_g0_h1());
    let checker = Checker::new(opts);
    let load = |name: &str| -> Result<Presentation> {
        let p = library::builtin(name)?;
        match order {
            Some(o) => p.with_order(o),
            None => Ok(p),
        }
    };
    let (illy, glgh, glgh01, glghb) = (load("illy")?, load("glgh")?, load("glgh01")?, load("glghb")?);
    let mut reports = check_bialgebra(&checker, &illy)?;
    reports.extend(check_bialgebra(&checker, &glgh)?);
    let (special, spec_report) = checker.check_specialization(&glgh, &at_g0_h1(), &glgh01)?;
    reports.push(spec_report);
    let exchange = library::resolve_map("exchange", &special, &illy)?;
    reports.push(checker.check_equivalence(&special, &illy, &exchange)?);
    reports.push(exchanged_relations(&checker, &exchange, &glghb)?);
    let identity = library::resolve_map("identity", &glghb, &illy)?;
    reports.push(checker.check_equivalence(&glghb, &illy, &identity)?);
    let mut out = Output::new("paper", reports);
    out.notes.push(format!(
        "certified: bialgebra presentations up to degree bound {}; no antipode or quantum determinant is modeled",
        checker.options().degree_bound
    ));
    out.summary = Some(match out.overall {
        Overall::Pass => CONFIRMED.to_string(),
        Overall::Fail => "no new deformation: NOT CONFIRMED".to_string(),
        Overall::Inconclusive => "no new deformation: INCONCLUSIVE".to_string(),
    });
    Ok(out)
}

/// The images of the source relations under `m`, compared as a canonical set
/// with the relations of `expected`.
fn exchanged_relations(checker: &Checker, m: &GenMap, expected: &Presentation) -> Result<CheckReport> {
    let parts = {
        let mut parts = m.target().to_parts();
        parts.name = format!("{}_{}", m.source().name(), m.name());
        parts.params = m.params().to_vec();
        parts.relations = m.image_relations()?;
        parts
    };
    let image = Presentation::new(parts)?;
    let (_, mut report) = checker.check_specialization(&image, &[], expected)?;
    report.check = format!("relations under {}", m.name());
    report.presentations = vec![m.source().name().into(), expected.name().into()];
    Ok(report)
}
