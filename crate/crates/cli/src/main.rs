//! `pkcong`: multipartition congruences from the command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success or
//! certified, 1 refuted, counterexample or failed check, 2 usage error.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pkcong::certifier::{
    certify_chain, family_label, search, verify_empirical, Certificate, ChainOutcome,
    CongruenceClaim, SearchParams, SearchTable,
};
use pkcong::coefficients::is_prime;
use pkcong::multipartition::pk_series;
use pkcong::par::Execution;
use pkcong::selftest::{run_suite, Suite};
use pkcong::{Error, Integers, Modulus};

#[derive(Parser)]
#[command(
    name = "pkcong",
    version,
    about = "Congruences for multipartition numbers p_k(n)"
)]
struct Cli {
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print p_k(0..=limit), exactly or modulo a prime power.
    Pk(PkArgs),
    /// Certify the congruence chain for (ell, m, k) by the finite criterion.
    Certify(CertifyArgs),
    /// Check p_k(ell^m n + a) = 0 (mod ell^m) for 0 <= n <= nmax.
    Verify(VerifyArgs),
    /// Certify every admissible (ell, m, k) within the bounds and tabulate families.
    Search(SearchArgs),
    /// Run a property suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct PkArgs {
    #[arg(long)]
    k: u64,
    /// Reduce modulo this prime power (ell >= 5).
    #[arg(long, conflicts_with = "exact", required_unless_present = "exact")]
    modulus: Option<u64>,
    /// Print exact integers.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// `n value` per line.
    Plain,
    /// One JSON object per line.
    Json,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u64,
    /// Print the certificate as a single JSON line.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    ell: u64,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    a: u64,
    #[arg(long)]
    nmax: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    ell_max: u64,
    #[arg(long)]
    m_max: u32,
    #[arg(long)]
    k_max: u64,
    /// One JSON record per family.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Suite to run; all suites when omitted.
    #[arg(long, value_enum)]
    suite: Option<SuiteArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Ladic,
    Eisenstein,
    Cko,
    Tau,
    Scaffold,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Ladic => Suite::Ladic,
            SuiteArg::Eisenstein => Suite::Eisenstein,
            SuiteArg::Cko => Suite::Cko,
            SuiteArg::Tau => Suite::Tau,
            SuiteArg::Scaffold => Suite::Scaffold,
        }
    }
}

enum Failure {
    Usage(String),
    Failed(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_ell(ell: u64) -> Result<(), Failure> {
    if ell < 5 || !is_prime(ell) {
        return Err(usage(format!("--ell {ell} must be a prime >= 5")));
    }
    Ok(())
}

fn check_positive(name: &str, value: u64) -> Result<(), Failure> {
    if value == 0 {
        return Err(usage(format!("--{name} must be positive")));
    }
    Ok(())
}

fn cmd_pk(args: &PkArgs, out: &mut impl Write) -> Outcome {
    check_positive("k", args.k)?;
    match args.modulus {
        Some(value) => {
            let md =
                Modulus::from_value(value).map_err(|e| usage(format!("--modulus {value}: {e}")))?;
            if md.ell() < 5 {
                return Err(usage(format!("--modulus {value}: prime must be >= 5")));
            }
            dump(pk_series(args.k, md, args.limit).values(), args.format, out)?;
        }
        None => dump(
            pk_series(args.k, Integers, args.limit).values(),
            args.format,
            out,
        )?,
    }
    Ok(true)
}

fn dump<T: std::fmt::Display>(
    values: &[T],
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    for (n, v) in values.iter().enumerate() {
        match format {
            Format::Plain => writeln!(out, "{n} {v}")?,
            Format::Json => writeln!(out, "{{\"n\":{n},\"value\":\"{v}\"}}")?,
        }
    }
    Ok(())
}

fn print_certificate(cert: &Certificate, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "certified {}", cert.claim)?;
    writeln!(out, "family {}", family_label(&cert.claim))?;
    writeln!(
        out,
        "hypothesis k = {} (mod {}) holds: {}",
        cert.hypothesis.k_residue, cert.hypothesis.modulus, cert.hypothesis.holds
    )?;
    writeln!(
        out,
        "{:>3} {:>8} {:>8} {:>12} {:>6} {:>7}  digest",
        "r", "modulus", "target", "delta", "bound", "checked"
    )?;
    for level in &cert.levels {
        writeln!(
            out,
            "{:>3} {:>8} {:>8} {:>12} {:>6} {:>7}  {}",
            level.r,
            level.modulus,
            level.target,
            level.delta,
            level.bound,
            level.checked.len(),
            level.digest
        )?;
    }
    Ok(())
}

fn cmd_certify(args: &CertifyArgs, out: &mut impl Write) -> Outcome {
    check_ell(args.ell)?;
    check_positive("k", args.k)?;
    check_positive("m", args.m as u64)?;
    Modulus::new(args.ell, args.m).map_err(|e| usage(e.to_string()))?;
    match certify_chain(args.k, args.ell, args.m) {
        Ok(ChainOutcome::Certified(cert)) => {
            if args.json {
                writeln!(out, "{}", cert.to_line())?;
            } else {
                print_certificate(&cert, out)?;
            }
            Ok(true)
        }
        Ok(ChainOutcome::Refuted(refutation)) => {
            if args.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&refutation).expect("refutation serializes")
                )?;
            } else {
                writeln!(out, "{refutation}")?;
            }
            Ok(false)
        }
        Err(e @ Error::HypothesisViolated { .. }) => {
            Err(Failure::Failed(format!("HypothesisViolated: {e}")))
        }
        Err(e) => Err(Failure::Failed(e.to_string())),
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Outcome {
    check_ell(args.ell)?;
    check_positive("k", args.k)?;
    check_positive("m", args.m as u64)?;
    let claim =
        CongruenceClaim::new(args.ell, args.m, args.k, args.a).map_err(|e| usage(e.to_string()))?;
    let report = verify_empirical(&claim, args.nmax);
    if args.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        )?;
    } else {
        match report.counterexample {
            None => writeln!(
                out,
                "ok {claim} for 0 <= n <= {} ({} values)",
                args.nmax, report.checked
            )?,
            Some(c) => writeln!(
                out,
                "counterexample to {claim} at n = {}: p_{}({}) = {} (mod {})",
                c.n,
                claim.k,
                c.argument,
                c.value,
                claim.modulus().value()
            )?,
        }
    }
    Ok(report.passed())
}

fn print_table(table: &SearchTable, json: bool, out: &mut impl Write) -> io::Result<()> {
    if json {
        for row in &table.rows {
            let record = serde_json::json!({
                "modulus": row.family.modulus().value(),
                "ell": row.family.ell,
                "m": row.family.m,
                "k": row.family.k,
                "a": row.family.a,
                "label": row.label,
                "origin": row.origin,
                "certificate": row.certificate,
            });
            writeln!(out, "{record}")?;
        }
        return Ok(());
    }
    writeln!(out, "{:>7} {:>4} {:>4}  family", "modulus", "k", "a")?;
    for row in &table.rows {
        writeln!(
            out,
            "{:>7} {:>4} {:>4}  {}",
            row.family.modulus().value(),
            row.family.k,
            row.family.a,
            row.label
        )?;
    }
    writeln!(
        out,
        "{} families from {} chains",
        table.rows.len(),
        table.attempted
    )
}

fn cmd_search(args: &SearchArgs, exec: Execution, out: &mut impl Write) -> Outcome {
    if args.ell_max < 5 {
        return Err(usage("--ell-max must be at least 5"));
    }
    check_positive("m-max", args.m_max as u64)?;
    check_positive("k-max", args.k_max)?;
    let params = SearchParams {
        ell_max: args.ell_max,
        m_max: args.m_max,
        k_max: args.k_max,
    };
    let table = search(&params, exec).map_err(|e| Failure::Failed(e.to_string()))?;
    print_table(&table, args.json, out)?;
    Ok(true)
}

fn cmd_selftest(args: &SelftestArgs, exec: Execution, out: &mut impl Write) -> Outcome {
    let suites: Vec<Suite> = match args.suite {
        Some(s) => vec![s.into()],
        None => Suite::ALL.to_vec(),
    };
    let mut all = true;
    for suite in suites {
        for check in run_suite(suite, exec) {
            let status = if check.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {} {}: {}",
                check.suite, check.name, check.detail
            )?;
            all &= check.passed;
        }
    }
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let outcome = match &cli.command {
        Command::Pk(args) => cmd_pk(args, &mut out),
        Command::Certify(args) => cmd_certify(args, &mut out),
        Command::Verify(args) => cmd_verify(args, &mut out),
        Command::Search(args) => cmd_search(args, exec, &mut out),
        Command::Selftest(args) => cmd_selftest(args, exec, &mut out),
    };
    let flushed = out.flush();
    match (outcome, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Failed(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Err(Failure::Io(e)), _) | (Ok(_), Err(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
