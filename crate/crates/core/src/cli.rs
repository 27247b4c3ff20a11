//! Command-line front end. [`run`] is pure: it takes the argument vector and
//! returns the exit code with everything meant for stdout and stderr, so the
//! binary is a thin wrapper and tests can call it directly.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage, parse
//! or evaluation errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::evolution::{heisenberg_series, DEFAULT_ORDER};
use crate::oracle::{self, build_fock_rep, OpExpr, ParamAssignment};
use crate::parser::{parse, parse_poly};
use crate::poly::NCPoly;
use crate::render::{render, to_json_value, Format, PolyJson};
use crate::verifier::{verify_paper, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ncps", version, about = "Exact algebra on the phase space [x, p] = i*hbar")]
struct Cli {
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit plain text (default)
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Expressions
    exprs: Vec<String>,
    /// Read further expressions from a file, one per line
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse expressions and print their normal-ordered form
    Normalize(Inputs),
    /// Commutator [A, B]
    Comm(Inputs),
    /// Poisson bracket of the classical projections of A and B
    Poisson(Inputs),
    /// Taylor coefficients of F(t) in the Heisenberg picture
    Evolve {
        #[arg(long)]
        observable: String,
        #[arg(long)]
        hamiltonian: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Replay the derivation of the evolution laws
    VerifyPaper {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 5)]
        degree: u32,
        /// Also check every identity numerically on Fock-space matrices
        #[arg(long)]
        oracle: bool,
    },
    /// Check an identity `lhs == rhs` on truncated Fock-space matrices
    Oracle {
        #[arg(long, default_value_t = oracle::DEFAULT_DIM)]
        dim: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_TOL)]
        tol: f64,
        /// Numeric parameter values, e.g. `m=2,omega=0.5`
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        check: String,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(stderr: String) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr }
    }
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}

/// An expression together with where it came from, for diagnostics.
struct Source {
    text: String,
    origin: Option<String>,
}

impl Inputs {
    fn collect(&self) -> Result<Vec<Source>, String> {
        let mut out: Vec<Source> = self.exprs.iter().map(|e| Source { text: e.clone(), origin: None }).collect();
        if let Some(path) = &self.file {
            let content = std::fs::read_to_string(path).map_err(|e| format!("error: cannot read {}: {e}\n", path.display()))?;
            for (n, l) in content.lines().enumerate() {
                if !l.trim().is_empty() {
                    out.push(Source {
                        text: l.to_string(),
                        origin: Some(format!("{}:{}", path.display(), n + 1)),
                    });
                }
            }
        }
        Ok(out)
    }
}

fn parse_source(src: &Source) -> Result<NCPoly, String> {
    parse_poly(&src.text).map_err(|e| {
        let mut msg = String::new();
        if let Some(o) = &src.origin {
            msg.push_str(&format!("in {o}:\n"));
        }
        msg.push_str(&e.annotate(&src.text));
        line(msg)
    })
}

fn parse_str(text: &str) -> Result<NCPoly, String> {
    parse_source(&Source { text: text.to_string(), origin: None })
}

fn exactly_two(inputs: &Inputs) -> Result<(NCPoly, NCPoly), String> {
    let srcs = inputs.collect()?;
    if srcs.len() != 2 {
        return Err(format!("error: expected exactly two expressions, got {}\n", srcs.len()));
    }
    Ok((parse_source(&srcs[0])?, parse_source(&srcs[1])?))
}

#[derive(Serialize)]
struct SeriesJson {
    order: usize,
    terms: Vec<PolyJson>,
}

fn dispatch(cli: Cli) -> Result<Outcome, String> {
    let format = if cli.json { Format::Json } else { Format::Text };
    match cli.command {
        Command::Normalize(inputs) => {
            let srcs = inputs.collect()?;
            if srcs.is_empty() {
                return Err("error: no expression given\n".into());
            }
            let mut out = String::new();
            for s in &srcs {
                out.push_str(&line(render(&parse_source(s)?, format)));
            }
            Ok(Outcome::ok(out))
        }
        Command::Comm(inputs) => {
            let (a, b) = exactly_two(&inputs)?;
            Ok(Outcome::ok(line(render(&a.commutator(&b), format))))
        }
        Command::Poisson(inputs) => {
            let (a, b) = exactly_two(&inputs)?;
            let bracket = a
                .classical_limit()
                .and_then(|ca| b.classical_limit().and_then(|cb| ca.poisson_bracket(&cb)))
                .map_err(|e| format!("error: {e}\n"))?;
            Ok(Outcome::ok(line(render(&bracket, format))))
        }
        Command::Evolve { observable, hamiltonian, order } => {
            let f = parse_str(&observable)?;
            let h = parse_str(&hamiltonian)?;
            let series = heisenberg_series(&f, &h, order).map_err(|e| format!("error: {e}\n"))?;
            let out = match format {
                Format::Text => series.terms.iter().map(|t| line(render(t, Format::Text))).collect(),
                Format::Json => line(
                    serde_json::to_string(&SeriesJson {
                        order,
                        terms: series.terms.iter().map(to_json_value).collect(),
                    })
                    .expect("series serializes"),
                ),
            };
            Ok(Outcome::ok(out))
        }
        Command::VerifyPaper { seed, cases, degree, oracle } => {
            let cfg = VerifyConfig { seed, degree_cap: degree, cases, with_oracle: oracle };
            let report = verify_paper(&cfg).map_err(|e| format!("error: {e}\n"))?;
            let stdout = match format {
                Format::Text => report.to_text(),
                Format::Json => line(report.to_json()),
            };
            let code = if report.pass { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { code, stdout, stderr: String::new() })
        }
        Command::Oracle { dim, tol, params, check } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(format!("error: tolerance must be a nonnegative number, got {tol}\n"));
            }
            let params = ParamAssignment::parse_list(&params).map_err(|e| format!("error: {e}\n"))?;
            let sides: Vec<&str> = check.split("==").collect();
            let [lhs_src, rhs_src] = sides[..] else {
                return Err("error: --check needs exactly one `==`\n".into());
            };
            let tree = |src: &str| -> Result<OpExpr, String> {
                let ast = parse(src).map_err(|e| line(e.annotate(src)))?;
                OpExpr::from_ast(&ast, src).map_err(|e| line(e.annotate(src)))
            };
            let (lhs, rhs) = (tree(lhs_src)?, tree(rhs_src)?);
            let rep = build_fock_rep(dim, params).map_err(|e| format!("error: {e}\n"))?;
            let outcome = oracle::check_expr_identity(&lhs, &rhs, &rep, tol).map_err(|e| format!("error: {e}\n"))?;
            let stdout = match format {
                Format::Text => line(outcome.to_string()),
                Format::Json => line(serde_json::to_string(&outcome).expect("outcome serializes")),
            };
            let code = if outcome.pass { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { code, stdout, stderr: String::new() })
        }
    }
}

/// Parse `argv` (including the program name) and execute the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(text) };
        }
    };
    dispatch(cli).unwrap_or_else(Outcome::usage)
}
