use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ghforge_core::matrix_file::{read_matrix_file, render_pretty, write_matrix};
use ghforge_core::{
    classify_all_functions, verify_gh_with, Construction, FiniteField, VerifyOptions,
    DEFAULT_MAX_ORDER,
};

/// Exit status for a matrix that fails verification.
const EXIT_GH_FAILURE: u8 = 1;
/// Exit status for unreadable input or invalid parameters.
const EXIT_FORMAT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ghforge",
    version,
    about = "Generalized Hadamard matrices over GF(q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a GH(q, q) or GH(q, q^2) and write it as a matrix file.
    Construct(ConstructArgs),
    /// Check the row-pair difference property of a matrix file.
    Verify(VerifyArgs),
    /// Count planar and type II maps on GF(p^n) by exhaustion.
    Classify(FieldArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// blocks M(a_i a_j + x^2), odd q
    #[value(name = "3.1")]
    Quadratic,
    /// blocks M((a_i + a_j) x)
    #[value(name = "3.2")]
    Linear,
    /// outer blocks a_i a_j J + H_q
    #[value(name = "3.3")]
    ShiftedLinear,
}

impl Theorem {
    fn construction(self) -> Construction {
        match self {
            Theorem::Quadratic => Construction::QuadraticBlocks,
            Theorem::Linear => Construction::LinearBlocks,
            Theorem::ShiftedLinear => Construction::ShiftedLinearBlocks,
        }
    }
}

#[derive(clap::Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Monic modulus coefficients c_0,...,c_n (default: smallest irreducible).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn field(&self) -> anyhow::Result<FiniteField> {
        FiniteField::create(self.p, self.n, self.modulus.as_deref())
            .with_context(|| format!("cannot build GF({}^{})", self.p, self.n))
    }
}

#[derive(clap::Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    #[command(flatten)]
    field: FieldArgs,
    /// Output path; the matrix file goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the matrix with symbolic field elements.
    #[arg(long)]
    pretty: bool,
    /// Largest matrix order to build.
    #[arg(long, env = "GHFORGE_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Matrix file to check.
    #[arg(value_name = "FILE")]
    input: PathBuf,
    /// Multiplicity to check for (default: the header's lambda).
    #[arg(long)]
    lambda: Option<usize>,
    /// Worker threads (default: all available).
    #[arg(long)]
    threads: Option<usize>,
    /// Report every failing row pair, not just the first.
    #[arg(long)]
    all: bool,
    /// Also check the column-pair property.
    #[arg(long)]
    columns: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::Classify(args) => classify(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_FORMAT)
        }
    }
}

fn construct(args: ConstructArgs) -> anyhow::Result<ExitCode> {
    if matches!(args.theorem, Theorem::Quadratic) && args.field.p == 2 {
        bail!("theorem 3.1 requires odd characteristic");
    }
    let field = args.field.field()?;
    let h = args
        .theorem
        .construction()
        .build_capped(&field, args.max_order)?;
    let summary = format!(
        "order={} lambda={} u={} provenance={}",
        h.order(),
        h.claimed_lambda(),
        field.q(),
        h.provenance()
    );
    match &args.out {
        Some(path) => {
            std::fs::write(path, write_matrix(&h))
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {} {summary}", path.display());
        }
        None if !args.pretty => print!("{}", write_matrix(&h)),
        None => println!("{summary}"),
    }
    if args.pretty {
        print!("{}", render_pretty(&h));
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let h = read_matrix_file(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let lambda = args.lambda.unwrap_or(h.claimed_lambda());
    let options = VerifyOptions {
        threads: args.threads,
        collect_all: args.all,
        check_columns: args.columns,
    };
    let report = verify_gh_with(&h, lambda, &options)?;
    let stats = format!(
        "u={} λ={} k={} pairs={}",
        report.u, report.lambda, report.order, report.checked_pairs
    );
    if let Some(columns) = report.columns_passed {
        println!("columns: {}", if columns { "PASS" } else { "FAIL" });
    }
    if report.passed {
        println!("PASS {stats}");
        return Ok(ExitCode::SUCCESS);
    }
    println!("FAIL {stats}");
    let failures = if args.all {
        report.failures.iter().collect::<Vec<_>>()
    } else {
        report.first_failure.iter().collect()
    };
    for f in failures {
        println!(
            "rows ({}, {}) histogram {:?}",
            f.row_i, f.row_l, f.histogram
        );
    }
    Ok(ExitCode::from(EXIT_GH_FAILURE))
}

fn classify(args: FieldArgs) -> anyhow::Result<ExitCode> {
    let field = args.field()?;
    let counts = classify_all_functions(&field)?;
    println!("type I: {}, type II: {}", counts.type_i, counts.type_ii);
    Ok(ExitCode::SUCCESS)
}
