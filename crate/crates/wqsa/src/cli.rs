//! Command line front end. Four subcommands cover the experiment surface:
//! `run` prints one search record as JSON, `sweep` prints the scale
//! comparison as CSV, `verify` runs the self-check suites, and `encode`
//! translates between item indices and hierarchical digit codes.
//!
//! Output is written through `&mut dyn Write` so every command is testable
//! in-process, and all floats go through [`fmt_g`] so identical flags give
//! byte-identical stdout. The only intentionally nondeterministic value is
//! `wall_time_ms` in run records.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{angles_for_target, speedup_table, theory_residual};
use crate::codebook::{choose_k, decode_digit, encode};
use crate::engine::{run_search, SearchConfig, SearchVariant};
use crate::haar::index_to_scale;
use crate::verify::{run_all, Corruption, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wqsa",
    about = "Statevector experiments for wavelet-accelerated search",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one search and print the record as a JSON line.
    Run(RunArgs),
    /// Compare query counts across scales and print CSV.
    Sweep(SweepArgs),
    /// Run the numeric self-check suites.
    Verify(VerifyArgs),
    /// Encode an item into digits, or decode one digit into its block.
    Encode(EncodeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Grover,
    Wqsa,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Qubit count.
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    /// Marked item index.
    #[arg(long)]
    pub target: usize,
    /// Wavelet index, an alternative to --lambda/--j.
    #[arg(long)]
    pub k: Option<usize>,
    /// Scale of the known block.
    #[arg(long)]
    pub lambda: Option<u32>,
    /// Shift of the known block within its scale.
    #[arg(long)]
    pub j: Option<usize>,
    /// Iteration cap override.
    #[arg(long)]
    pub max_iterations: Option<u64>,
    /// Seed for any sampling; run itself is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Qubit count.
    #[arg(long)]
    pub n: u32,
    /// Scales to compare: "all", "2..5" (inclusive), "1,3,7", or one number.
    #[arg(long)]
    pub lambdas: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Cap for every suite grid (defaults: 10 dense, 14 residual).
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fault injection used by the test suite to prove failures are caught.
    #[arg(long, hide = true)]
    pub corrupt: bool,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Qubit count.
    #[arg(long)]
    pub n: u32,
    /// Item to encode into digits.
    #[arg(long)]
    pub z: Option<usize>,
    /// Scale of a digit to decode (with --j).
    #[arg(long)]
    pub lambda: Option<u32>,
    /// The digit value to decode (with --lambda).
    #[arg(long)]
    pub j: Option<usize>,
}

/// One completed search, as printed by `run`. Field order is fixed.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub n: u32,
    pub variant: &'static str,
    pub k: Option<usize>,
    pub lambda: Option<u32>,
    pub j: Option<usize>,
    pub target: usize,
    pub m_star: u64,
    pub p_star: f64,
    pub oracle_calls: u64,
    pub theory_residual: Option<f64>,
    pub wall_time_ms: f64,
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"n\":{},\"variant\":\"{}\",\"k\":{},\"lambda\":{},\"j\":{},\"target\":{},\
             \"m_star\":{},\"p_star\":{},\"oracle_calls\":{},\"theory_residual\":{},\
             \"wall_time_ms\":{}}}",
            self.n,
            self.variant,
            json_opt_int(self.k.map(|v| v as u64)),
            json_opt_int(self.lambda.map(u64::from)),
            json_opt_int(self.j.map(|v| v as u64)),
            self.target,
            self.m_star,
            fmt_g(self.p_star),
            self.oracle_calls,
            self.theory_residual.map(fmt_g).unwrap_or_else(|| "null".into()),
            fmt_g(self.wall_time_ms),
        )
    }

    pub fn csv_header() -> &'static str {
        "n,variant,k,lambda,j,target,m_star,p_star,oracle_calls,theory_residual,wall_time_ms"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.variant,
            csv_opt_int(self.k.map(|v| v as u64)),
            csv_opt_int(self.lambda.map(u64::from)),
            csv_opt_int(self.j.map(|v| v as u64)),
            self.target,
            self.m_star,
            fmt_g(self.p_star),
            self.oracle_calls,
            self.theory_residual.map(fmt_g).unwrap_or_default(),
            fmt_g(self.wall_time_ms),
        )
    }
}

fn json_opt_int(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "null".into())
}

fn csv_opt_int(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Formats a float with 12 significant digits and no trailing zero noise,
/// switching to scientific notation outside a comfortable decimal range.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_decimal(format!("{x:.decimals$}"))
    } else {
        let formatted = format!("{x:.11e}");
        let (mantissa, exponent) = formatted
            .split_once('e')
            .expect("{:e} always contains an exponent");
        format!("{}e{}", trim_decimal(mantissa.to_string()), exponent)
    }
}

fn trim_decimal(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Parses the --lambdas grammar into a sorted, deduplicated list.
fn parse_lambdas(list: &str, n: u32) -> Option<Vec<u32>> {
    let list = list.trim();
    let mut out: Vec<u32> = if list == "all" {
        (1..=n).collect()
    } else if let Some((lo, hi)) = list.split_once("..") {
        let lo: u32 = lo.trim().parse().ok()?;
        let hi: u32 = hi.trim().strip_prefix('=').unwrap_or(hi.trim()).trim().parse().ok()?;
        if lo > hi {
            return None;
        }
        (lo..=hi).collect()
    } else {
        list.split(',')
            .map(|part| part.trim().parse().ok())
            .collect::<Option<Vec<u32>>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return None;
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

fn usage(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let variant = match args.variant {
        VariantArg::Grover => {
            if args.k.is_some() || args.lambda.is_some() || args.j.is_some() {
                return usage(err, "--k/--lambda/--j only apply to --variant wqsa");
            }
            SearchVariant::Grover
        }
        VariantArg::Wqsa => {
            let k = match (args.k, args.lambda, args.j) {
                (Some(k), None, None) => k,
                (None, Some(lambda), Some(j)) => match choose_k(args.n, lambda, j) {
                    Ok(k) => k,
                    Err(e) => return usage(err, &e.to_string()),
                },
                _ => {
                    return usage(
                        err,
                        "--variant wqsa needs either --k or both --lambda and --j",
                    )
                }
            };
            SearchVariant::Wqsa { k }
        }
    };

    let mut config = match SearchConfig::new(args.n, args.target, variant) {
        Ok(c) => c,
        Err(e) => return usage(err, &e.to_string()),
    };
    if let Some(cap) = args.max_iterations {
        config = config.with_max_iterations(cap);
    }

    let angles = match variant {
        SearchVariant::Grover => {
            crate::analysis::rotation_angles(1u64 << args.n, 1, 1).ok()
        }
        SearchVariant::Wqsa { k } => {
            let idx = index_to_scale(args.n, k).expect("validated by SearchConfig");
            let angles = angles_for_target(&idx, args.target);
            if angles.is_none() {
                let _ = writeln!(
                    err,
                    "warning: target {} lies outside the scale-{} block [{}, {}]; \
                     the search cannot amplify it",
                    args.target,
                    idx.lambda.map(|l| l.to_string()).unwrap_or_else(|| "0".into()),
                    idx.support_lo,
                    idx.support_hi,
                );
            }
            angles
        }
    };

    let started = Instant::now();
    let trace = match run_search(&config) {
        Ok(t) => t,
        Err(e) => return usage(err, &e.to_string()),
    };
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

    let (k, lambda, j) = match variant {
        SearchVariant::Grover => (None, None, None),
        SearchVariant::Wqsa { k } => {
            let idx = index_to_scale(args.n, k).expect("validated by SearchConfig");
            (Some(k), idx.lambda, idx.j)
        }
    };
    let record = RunRecord {
        n: args.n,
        variant: match args.variant {
            VariantArg::Grover => "grover",
            VariantArg::Wqsa => "wqsa",
        },
        k,
        lambda,
        j,
        target: args.target,
        m_star: trace.m_star,
        p_star: trace.p_star,
        oracle_calls: trace.oracle_calls,
        theory_residual: angles.map(|a| theory_residual(&trace, &a)),
        wall_time_ms,
    };
    let _ = writeln!(out, "{}", record.to_json());
    EXIT_OK
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(lambdas) = parse_lambdas(&args.lambdas, args.n) else {
        return usage(err, "--lambdas expects \"all\", \"a..b\", a comma list, or one scale >= 1");
    };
    let (valid, skipped): (Vec<u32>, Vec<u32>) =
        lambdas.into_iter().partition(|&lambda| lambda <= args.n);

    let rows = match speedup_table(args.n, &valid) {
        Ok(rows) => rows,
        Err(e) => return usage(err, &e.to_string()),
    };

    let _ = writeln!(out, "n,lambda,L,N1,m_wqsa,m_grover,ratio,sqrtL");
    let mut rows = rows.iter().peekable();
    let mut skipped = skipped.iter().peekable();
    loop {
        match (rows.peek(), skipped.peek()) {
            (Some(row), skip) if skip.is_none_or(|&&s| row.lambda < s) => {
                let row = rows.next().unwrap();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    args.n,
                    row.lambda,
                    row.l,
                    row.n1,
                    row.m_wqsa,
                    row.m_grover,
                    fmt_g(row.ratio),
                    fmt_g(row.sqrt_l),
                );
            }
            (_, Some(&&lambda)) => {
                skipped.next();
                let _ = writeln!(out, "# skipped lambda={lambda} > n");
            }
            (None, None) => break,
            _ => unreachable!(),
        }
    }
    EXIT_OK
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut opts = VerifyOptions { seed: args.seed, ..VerifyOptions::default() };
    if let Some(max_n) = args.max_n {
        if max_n < 2 {
            return usage(err, "--max-n must be at least 2");
        }
        opts = opts.with_max_n(max_n);
    }
    if args.corrupt {
        opts.corruption = Some(Corruption::SkewTransform);
    }

    let reports = match run_all(&opts) {
        Ok(r) => r,
        Err(e) => return usage(err, &e.to_string()),
    };
    let mut all_passed = true;
    for report in &reports {
        all_passed &= report.passed;
        let _ = writeln!(
            out,
            "suite {:<16} {}  worst {} (bound {}, {} cases)",
            report.name,
            if report.passed { "pass" } else { "FAIL" },
            fmt_g(report.worst),
            fmt_g(report.bound),
            report.cases,
        );
    }
    if all_passed {
        let _ = writeln!(out, "all suites passed");
        EXIT_OK
    } else {
        let failed: Vec<&str> =
            reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
        let _ = writeln!(out, "FAILED: {}", failed.join(", "));
        EXIT_VERIFY_FAILED
    }
}

pub fn cmd_encode(args: &EncodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match (args.z, args.lambda, args.j) {
        (Some(z), None, None) => match encode(args.n, z) {
            Ok(label) => {
                let digits: Vec<String> =
                    label.digits.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "[{}]", digits.join(","));
                EXIT_OK
            }
            Err(e) => usage(err, &e.to_string()),
        },
        (None, Some(lambda), Some(j)) => match decode_digit(args.n, lambda, j) {
            Ok(block) => {
                let _ = writeln!(out, "{{\"lo\":{},\"hi\":{}}}", block.lo, block.hi);
                EXIT_OK
            }
            Err(e) => usage(err, &e.to_string()),
        },
        _ => usage(err, "pass either --z to encode, or --lambda and --j to decode"),
    }
}

/// Dispatches a parsed command, returning the process exit code.
pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Run(args) => cmd_run(args, out, err),
        Command::Sweep(args) => cmd_sweep(args, out, err),
        Command::Verify(args) => cmd_verify(args, out, err),
        Command::Encode(args) => cmd_encode(args, out, err),
    }
}
