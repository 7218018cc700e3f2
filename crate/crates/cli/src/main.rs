mod job;
mod report;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use swanlab::differentials::{bgr_normal_form, DiffFormF, GradedForm, Variant};
use swanlab::expr::{parse_residue, parse_witt, render_witt};
use swanlab::field::LaurentRing;
use swanlab::ramification::{reduce_representative, CharacterClass};
use swanlab::selftest::{self, Scale, Suite};
use swanlab::witt::{
    self, fil_level, fil_membership, fil_prime_level, fil_prime_membership, WittContext,
};
use swanlab::{Error, Result};

use job::{Budget, FieldSpec, JobSpec};
use report::{ErrorJson, GradedJson, NormalFormJson, Output, Status, SCHEMA};

/// Swan conductors of Artin-Schreier-Witt characters over F((pi)).
#[derive(Parser, Debug)]
#[command(name = "swanlab", version)]
struct Cli {
    #[command(flatten)]
    field: FieldFlags,

    /// Witt vector components as a JSON list of expressions, e.g. '["pi^-2"]'.
    #[arg(long, global = true)]
    witt: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldFlags {
    /// The characteristic.
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 2)]
    p: u64,

    /// Size of the constant field GF(q); defaults to p.
    #[arg(short = 'q', long = "q", global = true)]
    q: Option<u64>,

    /// Modulus of GF(q) over GF(p), comma separated, low degree first.
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,

    /// `perfect` for F = GF(q), `rational(y)` for F = GF(q)(y).
    #[arg(long, global = true, default_value = "perfect")]
    residue: String,
}

impl FieldFlags {
    fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            q: self.q,
            modulus: self.modulus.clone(),
            residue: Some(self.residue.clone()),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct BudgetFlags {
    /// Cap on reduction moves.
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Depth of the fallback search.
    #[arg(long)]
    search_depth: Option<usize>,
    /// Cap on representatives visited by the fallback search.
    #[arg(long)]
    search_nodes: Option<usize>,
}

impl BudgetFlags {
    fn budget(&self) -> Budget {
        Budget {
            max_iterations: self.max_iterations,
            search_depth: self.search_depth,
            search_nodes: self.search_nodes,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum WittOp {
    Add,
    Neg,
    Frobenius,
    V,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum VariantArg {
    Log,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Swan conductors, refinements, slopes and characteristic points.
    Conductor {
        /// Outputs to compute; all by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        outputs: Option<Vec<Output>>,
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// A representative of least filtration level.
    Reduce {
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// Membership of the given vector in fil_n and fil'_n for n in a..b (inclusive).
    Filtration {
        #[arg(long, value_name = "A..B")]
        n_range: String,
    },
    /// Normal form of the graded class (alpha dy + beta w) at level n.
    Normalform {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value = "log")]
        variant: VariantArg,
        /// Coefficient of dy, an element of F.
        #[arg(long, default_value = "0")]
        alpha: String,
        /// Coefficient of dlog(pi) (log) or dpi (plain), an element of F.
        #[arg(long, default_value = "0")]
        beta: String,
    },
    /// Witt vector arithmetic.
    Witt {
        #[arg(long, value_enum)]
        op: WittOp,
        /// Second operand for `add`, as a JSON list.
        #[arg(long)]
        rhs: Option<String>,
    },
    /// Property and oracle checks.
    Selftest {
        /// Suites to run; all by default.
        #[arg(long, value_delimiter = ',')]
        suite: Option<Vec<String>>,
        /// Run a tenth of the trials.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
    /// Conductor jobs from a JSON array of job specs ('-' for standard input).
    Batch { file: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Conductor { .. } => "conductor",
            Command::Reduce { .. } => "reduce",
            Command::Filtration { .. } => "filtration",
            Command::Normalform { .. } => "normalform",
            Command::Witt { .. } => "witt",
            Command::Selftest { .. } => "selftest",
            Command::Batch { .. } => "batch",
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    // A closed pipe is not an error for a filter-style tool.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn witt_list(src: Option<&str>) -> Result<Vec<String>> {
    let src = src.ok_or_else(|| Error::Config("--witt is required".into()))?;
    serde_json::from_str(src)
        .map_err(|e| Error::Config(format!("--witt must be a JSON list of strings: {e}")))
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Config(format!("--n-range must look like a..b, got '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a < 0 || b < a {
        return Err(bad());
    }
    Ok((a, b))
}

struct Context {
    field: FieldSpec,
    witt: Option<String>,
}

impl Context {
    fn ring(&self) -> Result<LaurentRing> {
        self.field.ring()
    }

    fn character(&self, ring: &LaurentRing) -> Result<(Vec<String>, CharacterClass)> {
        let input = witt_list(self.witt.as_deref())?;
        let x = parse_witt(&input, ring)?;
        Ok((input.clone(), CharacterClass::new(ring.clone(), x)?))
    }
}

fn run(cli: Cli) -> Result<Status> {
    let ctx = Context {
        field: cli.field.spec(),
        witt: cli.witt,
    };
    match cli.command {
        Command::Conductor { outputs, budget } => {
            let input = witt_list(ctx.witt.as_deref())?;
            let outputs = outputs.unwrap_or_else(|| Output::ALL.to_vec());
            let (value, status) =
                job::conductor(&ctx.field, &input, None, &outputs, &budget.budget());
            emit(&value);
            Ok(status)
        }
        Command::Reduce { budget } => {
            let ring = ctx.ring()?;
            let (input, chi) = ctx.character(&ring)?;
            let red = reduce_representative(&chi, &budget.budget().reduction_config())?;
            emit(&json!({
                "schema": SCHEMA,
                "command": "reduce",
                "status": Status::Ok,
                "field": ring.residue().config(),
                "input": input,
                "reduced": render_witt(&ring, &red.rep),
                "sw": red.sw,
                "reduction_iterations": red.iterations,
            }));
            Ok(Status::Ok)
        }
        Command::Filtration { n_range } => {
            let ring = ctx.ring()?;
            let (a, b) = parse_range(&n_range)?;
            let (input, chi) = ctx.character(&ring)?;
            let x = chi.representative();
            let p = ring.p();
            let rows: Vec<_> = (a..=b)
                .map(|n| {
                    json!({
                        "n": n,
                        "fil": fil_membership(x, p, n),
                        "fil_prime": fil_prime_membership(x, p, n),
                    })
                })
                .collect();
            emit(&json!({
                "schema": SCHEMA,
                "command": "filtration",
                "status": Status::Ok,
                "field": ring.residue().config(),
                "input": input,
                "fil_level": fil_level(x, p),
                "fil_prime_level": fil_prime_level(x, p),
                "rows": rows,
            }));
            Ok(Status::Ok)
        }
        Command::Normalform {
            n,
            variant,
            alpha,
            beta,
        } => {
            let ring = ctx.ring()?;
            let field = ring.residue();
            let g = GradedForm {
                n,
                variant: match variant {
                    VariantArg::Log => Variant::Log,
                    VariantArg::Plain => Variant::Plain,
                },
                alpha: DiffFormF::new(parse_residue(&alpha, &ring)?),
                beta: parse_residue(&beta, &ring)?,
            };
            let nf = bgr_normal_form(field, &g)?;
            emit(&json!({
                "schema": SCHEMA,
                "command": "normalform",
                "status": Status::Ok,
                "field": field.config(),
                "graded": GradedJson::new(field, &g),
                "normal_form": NormalFormJson::new(field, &nf),
            }));
            Ok(Status::Ok)
        }
        Command::Witt { op, rhs } => {
            let ring = ctx.ring()?;
            let input = witt_list(ctx.witt.as_deref())?;
            let x = parse_witt(&input, &ring)?;
            let wctx = WittContext::shared(ring.p(), x.m())?;
            let result = match op {
                WittOp::Add => {
                    let rhs = witt_list(Some(
                        rhs.as_deref()
                            .ok_or_else(|| Error::Config("--op add needs --rhs".into()))?,
                    ))?;
                    let y = parse_witt(&rhs, &ring)?;
                    wctx.add(&ring, &x, &y)?
                }
                WittOp::Neg => wctx.neg(&ring, &x)?,
                WittOp::Frobenius => witt::frobenius(&ring, &x),
                WittOp::V => {
                    witt::check_range(ring.p(), x.len())?;
                    witt::verschiebung(&ring, &x)
                }
            };
            emit(&json!({
                "schema": SCHEMA,
                "command": "witt",
                "status": Status::Ok,
                "field": ring.residue().config(),
                "op": format!("{op:?}").to_lowercase(),
                "input": input,
                "result": render_witt(&ring, &result),
            }));
            Ok(Status::Ok)
        }
        Command::Selftest { suite, quick, seed } => {
            let suites = match suite {
                Some(names) => names
                    .iter()
                    .map(|s| s.parse::<Suite>())
                    .collect::<Result<Vec<_>>>()?,
                None => Suite::ALL.to_vec(),
            };
            let scale = if quick { Scale::Quick } else { Scale::Full };
            let checks: Vec<_> = suites
                .into_iter()
                .flat_map(|s| selftest::run_suite(s, scale, seed))
                .collect();
            for c in &checks {
                eprintln!(
                    "{} {:<14} {} ({} trials, {} failures, {:.2}s)",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.suite.name(),
                    c.name,
                    c.trials,
                    c.failures,
                    c.elapsed.as_secs_f64()
                );
            }
            let passed = checks.iter().all(|c| c.passed());
            emit(&json!({
                "schema": SCHEMA,
                "command": "selftest",
                "status": if passed { "ok" } else { "failed" },
                "seed": seed,
                "passed": passed,
                "checks": checks,
            }));
            Ok(if passed { Status::Ok } else { Status::Error })
        }
        Command::Batch { file } => {
            let text = if file == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Io(e.to_string()))?;
                s
            } else {
                std::fs::read_to_string(&file).map_err(|e| Error::Io(format!("{file}: {e}")))?
            };
            let jobs: Vec<JobSpec> = serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("batch file: {e}")))?;
            let results: Vec<_> = jobs.par_iter().map(job::run_job).collect();
            let status = results.iter().fold(Status::Ok, |acc, (_, s)| acc.worst(*s));
            let values: Vec<_> = results.into_iter().map(|(v, _)| v).collect();
            emit(&json!({
                "schema": SCHEMA,
                "command": "batch",
                "status": status,
                "results": values,
            }));
            Ok(status)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    let ring = cli.field.spec().ring().ok();
    match run(cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("swanlab {command}: {e}");
            let report = ErrorJson::new(command, &e, ring.as_ref());
            emit(&report);
            ExitCode::from(report.status.exit_code() as u8)
        }
    }
}
