//! `hochkit`: command-line front end for the Hochschild toolkit.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage or parse error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hochkit_core::{
    alt, cohomology_until_stable, cup, gerstenhaber, hochschild_delta,
    hochschild_delta_via_bracket, parse_operator, parse_polynomial, partial_compose,
    sder_decompose, selftest, split_cocycle, total_compose, Cochain, Error, MultiDiffOp,
    SignConvention, Truncation,
};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "hochkit",
    version,
    about = "Exact Hochschild complex of multidifferential operators over Q[x1..xm]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Number of variables m.
    #[arg(long = "vars", short = 'm')]
    vars: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CupSign {
    Paper,
    Unsigned,
}

impl From<CupSign> for SignConvention {
    fn from(c: CupSign) -> Self {
        match c {
            CupSign::Paper => SignConvention::PaperSigned,
            CupSign::Unsigned => SignConvention::Unsigned,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operator to polynomial arguments.
    Eval {
        #[command(flatten)]
        common: Common,
        operator: String,
        args: Vec<String>,
    },
    /// Cup product f ⌣ g.
    Cup {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
        #[arg(long, value_enum, default_value = "unsigned")]
        cup_sign: CupSign,
    },
    /// Total composition f ∘ g, or the partial composition into one slot with --slot.
    Compose {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
        /// 1-based slot of f for a partial composition.
        #[arg(long)]
        slot: Option<usize>,
    },
    /// Gerstenhaber bracket ⟦f, g⟧.
    Bracket {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
    },
    /// Hochschild differential.
    Delta {
        #[command(flatten)]
        common: Common,
        f: String,
        /// Compute through (−1)^m ⟦μ, f⟧ instead of the direct formula.
        #[arg(long)]
        via_bracket: bool,
    },
    /// Alternator.
    Alt {
        #[command(flatten)]
        common: Common,
        f: String,
    },
    /// Split a cocycle D as δ(E) + ψ(η).
    Split {
        #[command(flatten)]
        common: Common,
        d: String,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        deg: u32,
        #[arg(long, default_value_t = 2)]
        slack: u32,
    },
    /// Decompose a constant-free order-≤r operator into composites of vector fields.
    SderDecompose {
        #[command(flatten)]
        common: Common,
        d: String,
        #[arg(long)]
        order: u32,
    },
    /// Cohomology dimensions of the truncated polydifferential complex.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        deg: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        slack: u32,
        /// Raise the slack up to this value until the HKR prediction is met.
        #[arg(long)]
        max_slack: Option<u32>,
    },
    /// Run the embedded randomized property suite.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

/// Reads operator text, taking `-` to mean standard input.
fn source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn operator(arg: &str, vars: usize) -> Result<MultiDiffOp, Failure> {
    Ok(parse_operator(&source(arg)?, vars)?)
}

fn print_op(d: &MultiDiffOp, json: bool) {
    if json {
        println!("{}", serde_json::to_string(&d.to_json()).unwrap());
    } else {
        println!("{d}");
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Eval {
            common,
            operator: src,
            args,
        } => {
            let d = operator(&src, common.vars)?;
            let args = args
                .iter()
                .map(|a| parse_polynomial(a, common.vars))
                .collect::<Result<Vec<_>, _>>()?;
            let value = d.apply(&args)?;
            if common.json {
                println!("{}", serde_json::to_string(&value.to_json()).unwrap());
            } else {
                println!("{value}");
            }
        }
        Command::Cup {
            common,
            f,
            g,
            cup_sign,
        } => {
            let f = operator(&f, common.vars)?;
            let g = operator(&g, common.vars)?;
            print_op(&cup(&f, &g, cup_sign.into())?, common.json);
        }
        Command::Compose { common, f, g, slot } => {
            let f = operator(&f, common.vars)?;
            let g = operator(&g, common.vars)?;
            let out = match slot {
                Some(i) if i == 0 || i > f.arity() => {
                    return Err(Failure::Usage(format!(
                        "--slot must be in 1..={} for an operator of arity {}",
                        f.arity(),
                        f.arity()
                    )));
                }
                Some(i) => partial_compose(&f, i - 1, &g)?,
                None => total_compose(&f, &g)?,
            };
            print_op(&out, common.json);
        }
        Command::Bracket { common, f, g } => {
            let f = operator(&f, common.vars)?;
            let g = operator(&g, common.vars)?;
            print_op(&gerstenhaber(&f, &g)?, common.json);
        }
        Command::Delta {
            common,
            f,
            via_bracket,
        } => {
            let f = operator(&f, common.vars)?;
            let out = if via_bracket {
                hochschild_delta_via_bracket(&f)
            } else {
                hochschild_delta(&f)
            };
            print_op(&out, common.json);
        }
        Command::Alt { common, f } => {
            let f = operator(&f, common.vars)?;
            print_op(&alt(&f), common.json);
        }
        Command::Split {
            common,
            d,
            order,
            deg,
            slack,
        } => {
            let d = operator(&d, common.vars)?;
            let t = Truncation::new(common.vars, d.arity(), order, deg);
            let split = split_cocycle(&d, &t, slack)?;
            if common.json {
                let primitive = match &split.primitive {
                    Cochain::Op(e) => serde_json::to_value(e.to_json()).unwrap(),
                    Cochain::Scalar(z) => json!({ "scalar": z.value.to_json() }),
                };
                let out = json!({ "E": primitive, "eta": split.field.to_json() });
                println!("{out}");
            } else {
                let e = match &split.primitive {
                    Cochain::Op(e) => e.to_string(),
                    Cochain::Scalar(z) => z.value.to_string(),
                };
                println!("E = {e}");
                println!("eta = {}", split.field);
            }
        }
        Command::SderDecompose { common, d, order } => {
            let d = operator(&d, common.vars)?;
            let dec = sder_decompose(&d, order)?;
            if common.json {
                println!("{}", serde_json::to_string(&dec.to_json()).unwrap());
            } else {
                for (scalar, word) in &dec.words {
                    let factors: Vec<String> = word
                        .factors()
                        .iter()
                        .map(|f| format!("({})", f.to_op()))
                        .collect();
                    println!(
                        "{} * {}",
                        hochkit_core::poly::format_rational(scalar),
                        factors.join(" o ")
                    );
                }
            }
        }
        Command::Cohomology {
            common,
            order,
            deg,
            nmax,
            slack,
            max_slack,
        } => {
            let reports = cohomology_until_stable(
                common.vars,
                order,
                deg,
                nmax,
                slack,
                max_slack.unwrap_or(slack),
            )?;
            let rep = reports.last().expect("at least one slack tried");
            if common.json {
                println!("{}", serde_json::to_string(rep).unwrap());
            } else {
                for earlier in &reports[..reports.len() - 1] {
                    println!(
                        "slack {}: dims {:?} (no match)",
                        earlier.window.slack, earlier.dims
                    );
                }
                println!(
                    "window m={} r={} d={} nmax={} slack={}",
                    rep.window.m, rep.window.r, rep.window.d, rep.window.n, rep.window.slack
                );
                for n in 0..rep.dims.len() {
                    println!(
                        "H^{n} = {} (basis {}, HKR {})",
                        rep.dims[n], rep.basis_sizes[n], rep.hkr_prediction[n]
                    );
                }
                println!("match: {}", rep.matches);
            }
            if !rep.matches {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Selftest { seed, cases, json } => {
            let report = selftest::run_selftest(seed, cases);
            if json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                for c in &report.checks {
                    let tag = if c.passed == c.total { "PASS" } else { "FAIL" };
                    println!("[{tag}] {}: {}/{}", c.name, c.passed, c.total);
                }
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn init_threads() {
    if let Some(n) = std::env::var("HOCHKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    init_threads();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error[usage]: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error[domain]: {e}");
            ExitCode::from(1)
        }
    }
}
