//! `dqcalc`: evaluate valid functions at dual quaternions, run the
//! verification suites, print Pauli-Pascal rows.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 evaluation error (domain or singular input).

mod spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dqcalc::pauli::{pauli_pascal_row, MAX_PASCAL_ROW};
use dqcalc::verify::{self, Suite, VerifyConfig};
use dqcalc::{CalcError, DualQuaternion, LogBranch, Vector3};

use crate::spec::{evaluate, parse_axis, parse_dual_quaternion, FnSpec, Output};

#[derive(Parser)]
#[command(name = "dqcalc", version, about = "Functional calculus for dual quaternions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a dual quaternion and print the result as JSON.
    Eval {
        /// exp | log | pow:ALPHA | cayley | inv | abs | poly:@FILE
        #[arg(long = "fn")]
        function: String,
        /// Dual quaternion JSON {"real":{w,x,y,z},"dual":{w,x,y,z}}, or @FILE.
        #[arg(long)]
        dq: String,
        /// log: polar angle t (defaults to the principal angle).
        #[arg(long = "branch-t", allow_hyphen_values = true)]
        branch_t: Option<f64>,
        /// log: winding n for a scalar real part.
        #[arg(long = "branch-n", allow_hyphen_values = true)]
        branch_n: Option<i64>,
        /// log: fallback rotation axis "x,y,z" (default 0,0,1).
        #[arg(long, allow_hyphen_values = true)]
        axis: Option<String>,
    },
    /// Run the seeded verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = verify::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Overrides every per-check tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print Pauli-Pascal triangle rows 0..=N.
    Pascal {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=MAX_PASCAL_ROW as u64))]
        n: u64,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn eval_error(err: &CalcError) -> ExitCode {
    eprintln!("{err}");
    ExitCode::from(3)
}

fn cmd_eval(
    function: &str,
    dq: &str,
    branch_t: Option<f64>,
    branch_n: Option<i64>,
    axis: Option<&str>,
) -> ExitCode {
    let spec: FnSpec = match function.parse() {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let eta: DualQuaternion = match parse_dual_quaternion(dq) {
        Ok(eta) => eta,
        Err(e) => return usage_error(e),
    };
    let axis_fallback = match axis.map(parse_axis).transpose() {
        Ok(a) => a.unwrap_or(Vector3::K),
        Err(e) => return usage_error(e),
    };
    let branch = LogBranch { t: branch_t, n: branch_n, axis_fallback, ..LogBranch::default() };
    let spec = match spec.load() {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    match evaluate(&spec, eta, &branch) {
        Ok(Output::Value(v)) => print_json(&v),
        Ok(Output::Log(v)) => print_json(&v),
        Err(e) => eval_error(&e),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> ExitCode {
    match serde_json::to_string(value) {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_verify(suite: Suite, trials: usize, seed: u64, tol: Option<f64>) -> ExitCode {
    if trials == 0 {
        return usage_error("--trials must be at least 1");
    }
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return usage_error("--tol must be a positive finite number");
        }
    }
    let report = verify::run(suite, &VerifyConfig { trials, seed, tolerance: tol });
    println!("{report}");
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_pascal(n: usize) -> ExitCode {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for row in 0..=n {
        let coeffs = match pauli_pascal_row(row) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        };
        let line: Vec<String> = coeffs.iter().map(u64::to_string).collect();
        if writeln!(out, "{}", line.join(" ")).is_err() {
            return ExitCode::from(2);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { function, dq, branch_t, branch_n, axis } => {
            cmd_eval(&function, &dq, branch_t, branch_n, axis.as_deref())
        }
        Command::Verify { suite, trials, seed, tol } => cmd_verify(suite, trials, seed, tol),
        Command::Pascal { n } => cmd_pascal(n as usize),
    }
}
