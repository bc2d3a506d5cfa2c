//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for bad input, 2 when a verification or a
//! cross-check fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arnold::parse_expression;
use crate::decomposition::{decompose, pair};
use crate::kseq::KSequence;
use crate::rewrite::Reducer;
use crate::tree::{enumerate_balanced, enumerate_trees, parse_tree, Tree};
use crate::verify::{run_suite, Ceilings, SUITES};

const GRAMMAR: &str = "\
Input grammars:
  TREE   := LEAF | \"(\" TREE \",\" TREE \")\"      LEAF := positive integer
            leaves must be exactly 1..g-1; e.g. \"((1,2),3)\" has genus 4
  K      := INT (\",\" INT)*                      with 1 <= k_i <= i
  EXPR   := TERM ((\"+\" | \"-\") TERM)*
  TERM   := [INT \"*\"] FACTOR (\"*\" FACTOR)*
  FACTOR := \"w(\" INT \",\" INT \")\"

Exit status: 0 success, 1 invalid input, 2 verification failure.";

#[derive(Parser, Debug)]
#[command(
    name = "tree-cycles",
    version,
    about = "Tree cycles, balanced bases and Arnold relations",
    after_help = GRAMMAR
)]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel suites.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Det,
    Rewrite,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count the trees of genus g.
    Trees {
        #[arg(long)]
        g: usize,
        /// Only balanced trees.
        #[arg(long)]
        balanced: bool,
        /// Print the number of trees instead of listing them.
        #[arg(long)]
        count: bool,
    },
    /// Decompose a tree's cycle in the balanced basis.
    Decompose {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        /// Include every rotation performed by the rewrite path.
        #[arg(long)]
        trace: bool,
    },
    /// Pair W_k with a tree's cycle.
    Pair {
        #[arg(long)]
        k: String,
        #[arg(long)]
        tree: String,
    },
    /// Straighten an expression in the cohomology ring on n strands.
    Arnold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// Run a verification suite.
    Verify {
        /// counts, duality, relations, crosspath or arnold.
        #[arg(long)]
        suite: String,
        /// Genus, or strand count for the arnold suite.
        #[arg(long, alias = "n")]
        g: Option<usize>,
        /// Sample size for sampled checks.
        #[arg(long, default_value_t = 1000)]
        sample: usize,
    },
}

enum Outcome {
    Ok,
    Failed,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit arguments (including the program name) and sinks.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    if let Some(threads) = cli.threads {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 2,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Trees { g, balanced, count } => {
            let trees = if *balanced {
                enumerate_balanced(*g)?
            } else {
                enumerate_trees(*g)?
            };
            match (cli.format.unwrap_or(Format::Text), count) {
                (Format::Text, true) => writeln!(out, "{}", trees.len())?,
                (Format::Text, false) => {
                    for t in &trees {
                        writeln!(out, "{t}")?;
                    }
                }
                (Format::Json, true) => emit_json(
                    out,
                    &json!({ "g": g, "balanced": balanced, "count": trees.len() }),
                )?,
                (Format::Json, false) => emit_json(
                    out,
                    &Value::from(trees.iter().map(Tree::to_json).collect::<Vec<_>>()),
                )?,
            }
            Ok(Outcome::Ok)
        }
        Command::Decompose {
            tree,
            method,
            trace,
        } => cmd_decompose(cli, out, tree, *method, *trace),
        Command::Pair { k, tree } => {
            let k = KSequence::parse(k)?;
            let tree = parse_tree(tree)?;
            let value = pair(&k, &tree)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Text => writeln!(out, "{value}")?,
                Format::Json => emit_json(
                    out,
                    &json!({ "g": tree.genus(), "k": k.to_json(), "tree": tree.render(), "value": value }),
                )?,
            }
            Ok(Outcome::Ok)
        }
        Command::Arnold { n, expr } => {
            let class = parse_expression(expr, *n)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Text => writeln!(out, "{class}")?,
                Format::Json => {
                    let mut value = class.to_json();
                    value["text"] = Value::from(class.to_string());
                    emit_json(out, &value)?
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { suite, g, sample } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(InputError(format!(
                    "unknown suite '{suite}', expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let param = g.ok_or_else(|| InputError("--g is required".into()))?;
            let report = run_suite(suite, param, *sample, cli.seed, &Ceilings::default())?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => emit_json(out, &report.to_json())?,
                Format::Text => {
                    let status = if report.passed() { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{status} {} param={} cases={} failures={} millis={}",
                        report.suite,
                        report.param,
                        report.cases,
                        report.failures.len(),
                        report.millis
                    )?;
                    for failure in &report.failures {
                        writeln!(out, "{failure}")?;
                    }
                }
            }
            Ok(if report.passed() {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
    }
}

fn cmd_decompose(
    cli: &Cli,
    out: &mut dyn Write,
    tree: &str,
    method: Method,
    trace: bool,
) -> Result<Outcome, InputError> {
    let tree = parse_tree(tree)?;
    let by_det = (method != Method::Rewrite).then(|| decompose(&tree));
    let mut reducer = if trace {
        Reducer::new().with_trace()
    } else {
        Reducer::new()
    };
    let reduction = if method != Method::Det {
        Some(reducer.reduce(&tree)?)
    } else {
        None
    };
    let by_rewrite = reduction.as_ref().map(|r| r.to_decomposition());
    let primary = by_det
        .as_ref()
        .or(by_rewrite.as_ref())
        .expect("one method ran");
    let agree = match (&by_det, &by_rewrite) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };

    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut value = primary.to_json();
            value["tree"] = Value::from(tree.render());
            if let Some(reduction) = &reduction {
                value["balanced"] = reduction.to_json();
            }
            if let Some(agree) = agree {
                value["agree"] = Value::from(agree);
                if !agree {
                    value["rewrite_terms"] = by_rewrite
                        .as_ref()
                        .map(|d| d.to_json()["terms"].clone())
                        .unwrap_or_default();
                }
            }
            if trace && reduction.is_some() {
                value["trace"] = Value::from(
                    reducer
                        .trace()
                        .iter()
                        .map(|s| s.to_json())
                        .collect::<Vec<_>>(),
                );
            }
            emit_json(out, &value)?;
        }
        Format::Text => {
            for (k, coeff) in primary.terms() {
                writeln!(out, "{coeff:+} {k}")?;
            }
            if let Some(agree) = agree {
                writeln!(out, "agree: {agree}")?;
            }
        }
    }
    Ok(match agree {
        Some(false) => Outcome::Failed,
        _ => Outcome::Ok,
    })
}
