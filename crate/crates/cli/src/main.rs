//! `excedance`: command-line front end for the excedance library.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use excedance::closed_form::{d_closed, d_closed_row, d_explicit_row, poly_json};
use excedance::exact_dist::{exc_a_dist, exc_dist, joint_table, ExcAMethod};
use excedance::oracle::{brute_tables, FEASIBILITY_LIMIT};
use excedance::properties::symmetry_map;
use excedance::statistics::{exc, summarize};
use excedance::verify::{self, CheckOptions, Suite};
use excedance::{ColoredPermutation, CountSeq, GroupParams, JointDistTable};

#[derive(Debug, Parser)]
#[command(name = "excedance", version, about = "Excedance statistics on colored permutation groups G(r, n)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for brute-force passes (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Exc,
    #[value(name = "excA")]
    ExcA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistMethod {
    Brute,
    Dp,
    Closed,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JointMethod {
    Brute,
    Dp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Lemma,
    Recursion,
    Closed,
    Eq2,
    Symmetry,
    Logconcave,
    Initial,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Lemma => Suite::Lemma,
            SuiteArg::Recursion => Suite::Recursion,
            SuiteArg::Closed => Suite::Closed,
            SuiteArg::Eq2 => Suite::Eq2,
            SuiteArg::Symmetry => Suite::Symmetry,
            SuiteArg::Logconcave => Suite::LogConcave,
            SuiteArg::Initial => Suite::Initial,
            SuiteArg::All => Suite::All,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// exc, exc_A, csum and both excedance sets of one element.
    Stats {
        #[arg(long, value_parser = positive)]
        r: usize,
        /// Window such as `3,1^1,2^2`.
        window: String,
    },
    /// A distribution row: b(r,n,.) for `--target exc`, d(r,n,.) for `--target excA`.
    Dist {
        #[arg(long, value_parser = positive)]
        r: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Target::Exc)]
        target: Target,
        #[arg(long, value_enum, default_value_t = DistMethod::Dp)]
        method: DistMethod,
    },
    /// The joint (csum, exc_A) table c_i(r,n,k).
    Joint {
        #[arg(long, value_parser = positive)]
        r: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_enum, default_value_t = JointMethod::Dp)]
        method: JointMethod,
    },
    /// The generating polynomial of exc_A from its Stirling-number expansion.
    Poly {
        #[arg(long, value_parser = positive)]
        r: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
    },
    /// Image of an element under the excedance-complementing involution.
    Bijection {
        #[arg(long, value_parser = positive)]
        r: usize,
        window: String,
    },
    /// Run verification suites over r = 1..=r-max, n = 1..=n-max.
    Check {
        #[arg(long, value_parser = positive)]
        r_max: usize,
        #[arg(long, value_parser = positive)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Perturb one recursion coefficient, as `<term>:<delta>`.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

/// How a run ended, short of success.
enum Failure {
    Verification,
    Usage(String),
}

impl From<excedance::Error> for Failure {
    fn from(e: excedance::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn params(r: usize, n: usize) -> Result<GroupParams, Failure> {
    Ok(GroupParams::new(r, n)?)
}

fn warn_if_large(p: GroupParams) {
    if p.order() > BigUint::from(FEASIBILITY_LIMIT) {
        eprintln!(
            "warning: brute force over G({}, {}) visits {} elements",
            p.r(),
            p.n(),
            p.order()
        );
    }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json serializes");
    s.push('\n');
    s
}

fn render_row(format: Format, row: &CountSeq, header: serde_json::Value) -> String {
    match format {
        Format::Text => format!("{row}\n"),
        Format::Csv => row.to_csv(),
        Format::Json => {
            let mut doc = header;
            doc["values"] = json!(row.to_decimal_strings());
            to_json(&doc)
        }
    }
}

fn render_table(format: Format, table: &JointDistTable) -> String {
    match format {
        Format::Text | Format::Csv => table.to_csv(),
        Format::Json => to_json(&table.to_json_value()),
    }
}

fn cmd_stats(format: Format, r: usize, window: &str) -> Result<String, Failure> {
    let p = ColoredPermutation::parse(window, r)?;
    let s = summarize(&p).map_err(|e| Failure::Usage(e.to_string()))?;
    let letters: Vec<String> = s.exc_set.iter().map(ToString::to_string).collect();
    let positions: Vec<String> = s.exc_a_set.iter().map(ToString::to_string).collect();
    Ok(match format {
        Format::Text => format!(
            "window={p}\nexc={}\nexc_A={}\ncsum={}\nExc={{{}}}\nExc_A={{{}}}\n",
            s.exc,
            s.exc_a,
            s.csum,
            letters.join(","),
            positions.join(",")
        ),
        Format::Csv => format!(
            "statistic,value\nexc,{}\nexc_A,{}\ncsum,{}\nExc,\"{}\"\nExc_A,\"{}\"\n",
            s.exc,
            s.exc_a,
            s.csum,
            letters.join(","),
            positions.join(",")
        ),
        Format::Json => to_json(&json!({
            "r": r,
            "n": p.n(),
            "window": p.to_string(),
            "exc": s.exc,
            "exc_A": s.exc_a,
            "csum": s.csum,
            "exc_set": letters,
            "exc_A_set": s.exc_a_set,
        })),
    })
}

fn cmd_dist(format: Format, r: usize, n: usize, target: Target, method: DistMethod) -> Result<String, Failure> {
    let p = params(r, n)?;
    let row = match (target, method) {
        (Target::Exc, DistMethod::Closed | DistMethod::Explicit) => {
            return Err(Failure::Usage(
                "methods `closed` and `explicit` only apply to --target excA".into(),
            ))
        }
        (Target::Exc, DistMethod::Brute) => {
            warn_if_large(p);
            brute_tables(p).exc_row
        }
        (Target::Exc, DistMethod::Dp) => exc_dist(&joint_table(p)),
        (Target::ExcA, DistMethod::Brute) => {
            warn_if_large(p);
            brute_tables(p).exc_a_row()
        }
        (Target::ExcA, DistMethod::Dp) => exc_a_dist(p, ExcAMethod::Recurrence),
        (Target::ExcA, DistMethod::Closed) => d_closed_row(p)?,
        (Target::ExcA, DistMethod::Explicit) => d_explicit_row(p)?,
    };
    let target_name = match target {
        Target::Exc => "exc",
        Target::ExcA => "excA",
    };
    let method_name = method.to_possible_value().expect("named").get_name().to_string();
    let header = json!({"r": r, "n": n, "target": target_name, "method": method_name});
    Ok(render_row(format, &row, header))
}

fn cmd_joint(format: Format, r: usize, n: usize, method: JointMethod) -> Result<String, Failure> {
    let p = params(r, n)?;
    let table = match method {
        JointMethod::Dp => joint_table(p),
        JointMethod::Brute => {
            warn_if_large(p);
            brute_tables(p).joint_by_csum
        }
    };
    Ok(render_table(format, &table))
}

fn cmd_poly(format: Format, r: usize, n: usize) -> Result<String, Failure> {
    let p = params(r, n)?;
    let poly = d_closed(p);
    Ok(match format {
        Format::Text => format!("{poly}\n"),
        Format::Csv => {
            let mut out = String::from("power,coefficient\n");
            for (power, c) in poly.coefficients().iter().enumerate() {
                out.push_str(&format!("{power},{c}\n"));
            }
            out
        }
        Format::Json => to_json(&poly_json(p, &poly)),
    })
}

fn cmd_bijection(format: Format, r: usize, window: &str) -> Result<String, Failure> {
    let p = ColoredPermutation::parse(window, r)?;
    let image = symmetry_map(&p);
    let (before, after) = (exc(&p), exc(&image));
    let expected = p.params().alphabet_len() - 1;
    Ok(match format {
        Format::Text => format!(
            "{image}\nexc: {before} -> {after}, sum {} (rn-1 = {expected})\n",
            before + after
        ),
        Format::Csv => format!(
            "input,image,exc_input,exc_image,sum\n\"{p}\",\"{image}\",{before},{after},{}\n",
            before + after
        ),
        Format::Json => to_json(&json!({
            "r": r,
            "n": p.n(),
            "input": p.to_string(),
            "image": image.to_string(),
            "exc_input": before,
            "exc_image": after,
            "sum": before + after,
            "expected_sum": expected,
        })),
    })
}

fn cmd_check(
    format: Format,
    r_max: usize,
    n_max: usize,
    suite: SuiteArg,
    fault: Option<&str>,
) -> Result<(String, bool), Failure> {
    let mut opts = CheckOptions::new(r_max, n_max)?;
    if let Some(spec) = fault {
        opts.fault = Some(verify::parse_fault(spec)?);
    }
    let suite = Suite::from(suite);
    let verdicts = verify::run(suite, &opts)?;
    let pass = verify::all_pass(&verdicts);
    let out = match format {
        Format::Text => {
            let mut out = String::new();
            for v in &verdicts {
                out.push_str(&format!("{v}\n"));
            }
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            out.push_str(&format!(
                "{}: {} verdicts, {failed} failed\n",
                if pass { "PASS" } else { "FAIL" },
                verdicts.len()
            ));
            out
        }
        Format::Csv => {
            let mut out = String::from("property,r,n,pass,counterexample\n");
            for v in &verdicts {
                let field = |x: Option<usize>| x.map(|x| x.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},\"{}\"\n",
                    v.property,
                    field(v.r),
                    field(v.n),
                    v.pass,
                    v.counterexample.as_deref().unwrap_or("").replace('"', "\"\"")
                ));
            }
            out
        }
        Format::Json => to_json(&json!({
            "suite": suite.name(),
            "r_max": r_max,
            "n_max": n_max,
            "pass": pass,
            "verdicts": verdicts,
        })),
    };
    Ok((out, pass))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let format = cli.format;
    let (output, pass) = match &cli.command {
        Command::Stats { r, window } => (cmd_stats(format, *r, window)?, true),
        Command::Dist { r, n, target, method } => (cmd_dist(format, *r, *n, *target, *method)?, true),
        Command::Joint { r, n, method } => (cmd_joint(format, *r, *n, *method)?, true),
        Command::Poly { r, n } => (cmd_poly(format, *r, *n)?, true),
        Command::Bijection { r, window } => (cmd_bijection(format, *r, window)?, true),
        Command::Check { r_max, n_max, suite, inject_fault } => {
            cmd_check(format, *r_max, *n_max, *suite, inject_fault.as_deref())?
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, output)?,
        None => io::stdout().lock().write_all(output.as_bytes())?,
    }
    if pass {
        Ok(true)
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
