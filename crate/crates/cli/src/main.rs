use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qh_toeplitz::mellin::mellin_symbol;
use qh_toeplitz::numeric::numeric_commutator_check;
use qh_toeplitz::shift::{GradedOperator, QhOperator};
use qh_toeplitz::symbol::RadialSymbol;
use qh_toeplitz::theorem::{verify_theorem1, CandidatePair, TheoremParams};
use serde_json::json;

mod render;
mod sweep;

#[derive(Parser, Debug)]
#[command(name = "qht", version, about = "Exact weighted-shift calculus for quasihomogeneous Toeplitz operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout (JSON lines for `sweep`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Mellin transform of a radial symbol.
    Mellin {
        #[arg(long)]
        symbol: String,
    },
    /// Weighted-shift form of T_{e^{ip theta} symbol}.
    Op {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        symbol: String,
        /// Also list the weights w(0..=k_max).
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Degree-one root of T_{e^{ip theta} r^((2M+1)p)}.
    Root {
        #[arg(long)]
        p: u32,
        #[arg(long = "M", conflicts_with = "symbol", required_unless_present = "symbol")]
        order: Option<u32>,
        /// The symbol r^((2M+1)p) itself; anything else is rejected.
        #[arg(long)]
        symbol: Option<String>,
    },
    /// Graded commutator [X, Y] of operator sums given as DEGREE:SYMBOL terms.
    Commutator {
        #[arg(long = "x", required = true)]
        x: Vec<String>,
        #[arg(long = "y", required = true)]
        y: Vec<String>,
    },
    /// Both sides of the commutation identity for one candidate (m, l = m + s - p).
    Check {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        m: u32,
    },
    /// Sweep m = 1..=m_max for one parameter tuple.
    VerifyTheorem {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 20)]
        m_max: u32,
    },
    /// Run verify-theorem over a grid read from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare finite matrix sections against the exact graded commutator.
    NumericCheck {
        #[arg(long = "x", required = true)]
        x: Vec<String>,
        #[arg(long = "y", required = true)]
        y: Vec<String>,
        #[arg(long = "K", default_value_t = 64)]
        k: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    s: u32,
    #[arg(long = "M")]
    phi_order: u32,
    #[arg(long = "N")]
    psi_order: u32,
}

impl ParamArgs {
    fn build(&self) -> Result<TheoremParams, CliError> {
        TheoremParams::new(self.p, self.s, self.phi_order, self.psi_order).map_err(usage)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparsable input, unreadable files: exit 2.
    Usage(String),
}

pub fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Completed computation: `ok = false` maps to exit 1.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn parse_symbol(s: &str) -> Result<RadialSymbol, CliError> {
    s.parse().map_err(|e| usage(format!("symbol {s:?}: {e}")))
}

/// `DEGREE:SYMBOL`, e.g. `2:r^6`.
fn parse_term(spec: &str) -> Result<QhOperator, CliError> {
    let (deg, sym) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("operator term {spec:?} must look like DEGREE:SYMBOL")))?;
    let deg: u32 = deg.trim().parse().map_err(|_| usage(format!("bad degree in {spec:?}")))?;
    Ok(QhOperator::from_symbol(deg, &parse_symbol(sym)?))
}

fn parse_sum(specs: &[String]) -> Result<GradedOperator, CliError> {
    let ops = specs.iter().map(|s| parse_term(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(GradedOperator::from_ops(&ops))
}

fn emit(format: Format, text: impl FnOnce() -> String, value: serde_json::Value) -> String {
    match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let fmt = cli.format;
    let done = |text: String| Ok(Output { text, ok: true });
    match &cli.command {
        Command::Mellin { symbol } => {
            let s = parse_symbol(symbol)?;
            let m = mellin_symbol(&s);
            done(emit(fmt, || m.to_string(), json!({"symbol": s.to_string(), "mellin": m.to_string()})))
        }
        Command::Op { p, symbol, k_max } => {
            let s = parse_symbol(symbol)?;
            let op = QhOperator::from_symbol(*p, &s);
            done(render::operator(fmt, &s, &op, *k_max))
        }
        Command::Root { p, order, symbol } => {
            let (root, sym) = match (order, symbol) {
                (Some(order), _) => QhOperator::root(*p, *order),
                (None, Some(s)) => QhOperator::root_of_symbol(*p, &parse_symbol(s)?),
                (None, None) => unreachable!("clap requires one of --M, --symbol"),
            }
            .map_err(usage)?;
            done(render::root(fmt, &root, &sym))
        }
        Command::Commutator { x, y } => {
            let c = GradedOperator::commutator(&parse_sum(x)?, &parse_sum(y)?);
            done(render::graded(fmt, &c))
        }
        Command::Check { params, m } => {
            let params = params.build()?;
            let cand = CandidatePair::new(&params, *m).map_err(usage)?;
            done(render::check(fmt, &params, &cand))
        }
        Command::VerifyTheorem { params, m_max } => {
            let params = params.build()?;
            let report = verify_theorem1(&params, *m_max).map_err(usage)?;
            let ok = report.confirmed();
            let text = match fmt {
                Format::Text => render::report_text(&report),
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
            };
            Ok(Output { text, ok })
        }
        Command::Sweep { config, jobs } => sweep::run(fmt, config, cli.out.as_deref(), *jobs),
        Command::NumericCheck { x, y, k, tol } => {
            let (x, y) = (parse_sum(x)?, parse_sum(y)?);
            let c = numeric_commutator_check(&x, &y, *k, *tol).map_err(usage)?;
            let text = emit(
                fmt,
                || {
                    format!(
                        "max |deviation| = {:.16e} over {} columns (K = {k}, tol = {tol:.16e}): {}",
                        c.max_abs_deviation,
                        c.valid_columns,
                        if c.pass { "pass" } else { "FAIL" }
                    )
                },
                json!({
                    "K": k,
                    "tol": format!("{tol:.16e}"),
                    "valid_columns": c.valid_columns,
                    "max_abs_deviation": format!("{:.16e}", c.max_abs_deviation),
                    "pass": c.pass,
                }),
            );
            Ok(Output { text, ok: c.pass })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let write_res = match (&cli.out, &cli.command) {
                (_, Command::Sweep { .. }) | (None, _) => {
                    if !out.text.is_empty() {
                        println!("{}", out.text);
                    }
                    Ok(())
                }
                (Some(path), _) => fs::File::create(path).and_then(|mut f| writeln!(f, "{}", out.text)),
            };
            if let Err(e) = write_res {
                eprintln!("qht: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("qht: {msg}");
            ExitCode::from(2)
        }
    }
}
