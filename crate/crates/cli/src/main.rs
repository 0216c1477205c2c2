use std::fmt::Debug;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ginf_core::correspond::{annotate, synthesize_context, to_ginf};
use ginf_core::frontend::{parse_context, parse_term, print_term, ParseEnv};
use ginf_core::ginf::{GinfChecker, GinfJudgment};
use ginf_core::oracle::{correspondence_report, CorrespondenceReport, EnumBudget};
use ginf_core::pts::{check_judgment, infer_type, Context, ContextfulJudgment};
use ginf_core::spec::Preset;
use ginf_core::syntax::{hfv, hfvt, normalize, VarSet};
use ginf_core::{PtsSpec, Term, TypeError};

/// Type checking for Pure Type Systems, with or without contexts.
#[derive(Parser)]
#[command(name = "ginf", version)]
struct Cli {
    /// Reduction steps allowed per conversion check.
    #[arg(long, global = true, default_value_t = 10_000)]
    fuel: u64,
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check or infer a type under a declared context.
    CheckPts {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        ctx: PathBuf,
        /// Untagged context entries are tagged with their own type.
        #[arg(long)]
        annotated: bool,
        term: PathBuf,
        ty: Option<PathBuf>,
    },
    /// Check or infer a type without a context.
    CheckGinf {
        #[arg(long)]
        spec: String,
        term: PathBuf,
        ty: Option<PathBuf>,
    },
    /// Rebuild the annotated context of a context-free judgment.
    Synth {
        #[arg(long)]
        spec: String,
        term: PathBuf,
        ty: Option<PathBuf>,
    },
    /// Rename a contextful judgment into annotated form and drop the context.
    Annotate {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        ctx: PathBuf,
        term: PathBuf,
        ty: PathBuf,
    },
    /// Print the beta normal form.
    Normalize { term: PathBuf },
    /// Print the hereditarily free variables.
    Hfv { term: PathBuf },
    /// Print the variables occurring in tags.
    Hfvt { term: PathBuf },
    /// Cross-check both presentations on every small term.
    Enumerate {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        size: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    Fail,
    FuelExhausted,
    Error,
}

#[derive(Debug, Serialize)]
struct Outcome {
    status: Status,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    ty: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    context: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variables: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Box<CorrespondenceReport>>,
    diagnostics: Vec<String>,
    #[serde(skip)]
    lines: Vec<String>,
}

impl Outcome {
    fn new(status: Status) -> Self {
        Outcome {
            status,
            ty: None,
            term: None,
            context: None,
            variables: None,
            report: None,
            diagnostics: Vec::new(),
            lines: Vec::new(),
        }
    }

    fn ok(lines: Vec<String>) -> Self {
        Outcome { lines, ..Outcome::new(Status::Ok) }
    }

    fn error(message: String) -> Self {
        Outcome { diagnostics: vec![message], ..Outcome::new(Status::Error) }
    }

    fn fail(message: String) -> Self {
        Outcome { diagnostics: vec![message], ..Outcome::new(Status::Fail) }
    }

    fn rejected(e: &TypeError) -> Self {
        let status = if e.is_fuel_exhausted() { Status::FuelExhausted } else { Status::Fail };
        Outcome { diagnostics: vec![diagnostic(e)], ..Outcome::new(status) }
    }

    fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::FuelExhausted => 3,
        }
    }
}

/// `Variant: message`, so that scripts can match on the variant.
fn diagnostic<E: Debug + std::fmt::Display>(e: &E) -> String {
    let debug = format!("{e:?}");
    let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default();
    format!("{kind}: {e}")
}

/// A usage, input or parse problem: exit code 2.
struct Usage(String);

fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load_spec(arg: &str) -> Result<PtsSpec, Usage> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        return PtsSpec::parse(&text).map_err(|e| Usage(format!("{arg}: {e}")));
    }
    arg.parse::<Preset>()
        .map(PtsSpec::preset)
        .map_err(|_| Usage(format!("{arg}: neither a spec file nor a preset (stlc, f, p, omega, coc)")))
}

fn load_term(path: &Path, env: &ParseEnv) -> Result<Term, Usage> {
    let text = read(path)?;
    parse_term(&text, env).map_err(|e| {
        let (line, col) = e.line_col(&text);
        Usage(format!("{}:{line}:{col}: {e}", path.display()))
    })
}

fn load_context(path: &Path, env: &ParseEnv, annotated: bool) -> Result<Context, Usage> {
    let text = read(path)?;
    parse_context(&text, env, annotated).map_err(|e| {
        let (line, col) = e.line_col(&text);
        Usage(format!("{}:{line}:{col}: {e}", path.display()))
    })
}

fn var_lines(vars: &VarSet) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

fn context_lines(ctx: &Context) -> Vec<String> {
    ctx.iter().map(|d| d.to_string()).collect()
}

fn inferred(term: &Term, ty: &Term) -> Outcome {
    Outcome {
        ty: Some(print_term(ty)),
        lines: vec![format!("{} : {}", print_term(term), print_term(ty))],
        ..Outcome::new(Status::Ok)
    }
}

fn checked(result: Result<bool, TypeError>, j: String) -> Outcome {
    match result {
        Ok(true) => Outcome::ok(vec![j]),
        Ok(false) => Outcome::fail(format!("TypeMismatch: {j} does not hold")),
        Err(e) => Outcome::rejected(&e),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Usage> {
    let fuel = cli.fuel;
    Ok(match &cli.cmd {
        Cmd::CheckPts { spec, ctx, annotated, term, ty } => {
            let spec = load_spec(spec)?;
            let ctx = load_context(ctx, &ParseEnv::for_spec(&spec), *annotated)?;
            let env = ParseEnv::for_spec(&spec).with_context(&ctx);
            let m = load_term(term, &env)?;
            match ty {
                Some(ty) => {
                    let a = load_term(ty, &env)?;
                    let j = ContextfulJudgment::new(ctx, m, a);
                    checked(check_judgment(&spec, &j, fuel), j.to_string())
                }
                None => match infer_type(&spec, &ctx, &m, fuel) {
                    Ok(a) => inferred(&m, &a),
                    Err(e) => Outcome::rejected(&e),
                },
            }
        }
        Cmd::CheckGinf { spec, term, ty } => {
            let spec = load_spec(spec)?;
            let env = ParseEnv::for_spec(&spec);
            let m = load_term(term, &env)?;
            let checker = match GinfChecker::new(&spec, fuel) {
                Ok(c) => c,
                Err(e) => return Ok(Outcome::rejected(&e)),
            };
            match ty {
                Some(ty) => {
                    let j = GinfJudgment::new(m, load_term(ty, &env)?);
                    checked(checker.check(&j), j.to_string())
                }
                None => match checker.infer(&m) {
                    Ok(a) => inferred(&m, &a),
                    Err(e) => Outcome::rejected(&e),
                },
            }
        }
        Cmd::Synth { spec, term, ty } => {
            let spec = load_spec(spec)?;
            let env = ParseEnv::for_spec(&spec);
            let m = load_term(term, &env)?;
            let a = match ty {
                Some(ty) => load_term(ty, &env)?,
                None => match GinfChecker::new(&spec, fuel).and_then(|c| c.infer(&m)) {
                    Ok(a) => a,
                    Err(e) => return Ok(Outcome::rejected(&e)),
                },
            };
            let j = GinfJudgment::new(m, a);
            match synthesize_context(&j, &spec, fuel) {
                Ok(aj) => {
                    let mut lines = context_lines(aj.ctx());
                    lines.push(aj.to_string());
                    Outcome {
                        ty: Some(print_term(aj.ty())),
                        context: Some(context_lines(aj.ctx())),
                        ..Outcome::ok(lines)
                    }
                }
                Err(e) => correspond_failure(&e),
            }
        }
        Cmd::Annotate { spec, ctx, term, ty } => {
            let spec = load_spec(spec)?;
            let ctx = load_context(ctx, &ParseEnv::for_spec(&spec), false)?;
            let env = ParseEnv::for_spec(&spec).with_context(&ctx);
            let j = ContextfulJudgment::new(ctx, load_term(term, &env)?, load_term(ty, &env)?);
            match annotate(&j).and_then(|aj| Ok((to_ginf(&aj, &spec, fuel)?, aj))) {
                Ok((g, aj)) => Outcome {
                    ty: Some(print_term(&g.ty)),
                    term: Some(print_term(&g.subject)),
                    context: Some(context_lines(aj.ctx())),
                    ..Outcome::ok(vec![aj.to_string(), g.to_string()])
                },
                Err(e) => correspond_failure(&e),
            }
        }
        Cmd::Normalize { term } => {
            let m = load_term(term, &ParseEnv::new())?;
            match normalize(&m, fuel) {
                Ok(n) => Outcome { term: Some(print_term(&n)), ..Outcome::ok(vec![print_term(&n)]) },
                Err(e) => Outcome::rejected(&TypeError::from(e)),
            }
        }
        Cmd::Hfv { term } | Cmd::Hfvt { term } => {
            let m = load_term(term, &ParseEnv::new())?;
            let vars = if matches!(cli.cmd, Cmd::Hfv { .. }) { hfv(&m) } else { hfvt(&m) };
            Outcome { variables: Some(var_lines(&vars)), ..Outcome::ok(var_lines(&vars)) }
        }
        Cmd::Enumerate { spec, size } => {
            let spec = load_spec(spec)?;
            let mut budget = EnumBudget::for_spec(&spec, *size);
            budget.fuel = fuel;
            let report = correspondence_report(&spec, &budget);
            let mut out = if report.is_clean() {
                Outcome::ok(Vec::new())
            } else {
                Outcome::fail(format!("{} correspondence violations", report.violations.len()))
            };
            out.lines = report.to_string().lines().map(str::to_string).collect();
            out.report = Some(Box::new(report));
            out
        }
    })
}

fn correspond_failure(e: &ginf_core::error::CorrespondError) -> Outcome {
    let mut out = Outcome::fail(diagnostic(e));
    if matches!(e, ginf_core::error::CorrespondError::FuelExhausted(_)) {
        out.status = Status::FuelExhausted;
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli).unwrap_or_else(|Usage(e)| Outcome::error(e));
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out).expect("outcome serializes"));
    } else {
        for line in &out.lines {
            println!("{line}");
        }
        for d in &out.diagnostics {
            eprintln!("{d}");
        }
    }
    ExitCode::from(out.exit_code())
}
