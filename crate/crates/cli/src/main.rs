use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use feec_core::expr::{format_form, matrix_csv};
use feec_core::json::{FormJson, PairingJson, SpaceJson};
use feec_core::pairing::{duality_spaces, pairing_matrix, PairingCheck};
use feec_core::suite::{self, SuiteConfig};
use feec_core::ops::{self, Applied, Operator};
use feec_core::{Error, FormSpace, SimplexContext, SpaceKind};
use rayon::prelude::*;

const EXIT_PARSE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "feec", version, about = "Exact polynomial differential forms on the orthant and the simplex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dimension of a form space.
    Dim(SpaceArgs),
    /// List a basis of a form space.
    Basis {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Apply an operator to a form expression.
    Apply(ApplyArgs),
    /// Assemble a duality pairing matrix and report its rank and determinant.
    Pair(PairArgs),
    /// Run the property suite for one n and all r <= max-r.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: usize,
    /// H, P, Pminus, ringH, ringP or ringPminus.
    #[arg(long, value_parser = parse_space)]
    space: SpaceKind,
}

fn parse_op(s: &str) -> Result<Operator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_space(s: &str) -> Result<SpaceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args)]
struct ApplyArgs {
    /// d, boldd, sboldd, ix, jx, dswedge, koszul, star, starinv, hr or restrict.
    #[arg(long, value_parser = parse_op)]
    op: Operator,
    #[arg(long)]
    n: usize,
    /// Extension degree, required by `hr`.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    json: bool,
    /// Form expression, e.g. "y*dx - x*dy" or "x^2*dx/\dy".
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "P")]
    P,
    #[value(name = "Pminus")]
    Pminus,
    #[value(name = "H")]
    H,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "Pminus")]
    family: Family,
    /// Print only the matrix, as CSV.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_r: u32,
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    seed: u64,
    /// Random cases per form degree in the randomized checks.
    #[arg(long, default_value_t = SuiteConfig::default().cases)]
    cases: usize,
    /// Print every check, not only failures and the summary.
    #[arg(long, short)]
    verbose: bool,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dim(args) => dim(&args),
        Command::Basis { space, json } => basis(&space, json),
        Command::Apply(args) => apply(&args),
        Command::Pair(args) => pair(&args),
        Command::Verify(args) => verify(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { EXIT_PARSE } else { EXIT_DOMAIN })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
    }
}

fn build(args: &SpaceArgs) -> Result<FormSpace, Failure> {
    Ok(FormSpace::build(args.n, args.r, args.k, args.space)?)
}

fn dim(args: &SpaceArgs) -> Result<(), Failure> {
    println!("{}", build(args)?.dim());
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn basis(args: &SpaceArgs, json: bool) -> Result<(), Failure> {
    let space = build(args)?;
    if json {
        println!("{}", to_json(&SpaceJson::from_space(&space)));
        return Ok(());
    }
    println!("{} (n = {}), dim {}", space.label(), space.n(), space.dim());
    for (i, b) in space.basis().iter().enumerate() {
        println!("{:>4}  {}", i + 1, format_form(b));
    }
    Ok(())
}

fn apply(args: &ApplyArgs) -> Result<(), Failure> {
    let result = ops::apply(args.op, args.n, args.r, &args.expr)?;
    match (result, args.json) {
        (out, false) => println!("{out}"),
        (Applied::Orthant(f), true) => println!("{}", to_json(&FormJson::from_form(&f))),
        (Applied::Simplex(a), true) => println!("{}", to_json(&FormJson::from_tform(&a))),
    }
    Ok(())
}

fn pair(args: &PairArgs) -> Result<(), Failure> {
    let n = args.n;
    let family = match args.family {
        Family::P => SpaceKind::P,
        Family::Pminus => SpaceKind::Pminus,
        Family::H => SpaceKind::H,
    };
    let (rows, cols) = duality_spaces(n, args.r, args.k, family)?;
    let m = pairing_matrix(&rows, &cols)?;
    let check = PairingCheck::from_matrix(&m);
    if args.csv {
        print!("{}", matrix_csv(&m.entries));
    } else if args.json {
        println!("{}", to_json(&PairingJson::from_check(&check, Some(&m.entries))));
    } else {
        println!("{} × {} (n = {n})", check.rows_label, check.cols_label);
        print!("{}", m.entries);
        println!("size: {}×{}", check.rows, check.cols);
        println!("rank: {}", check.rank);
        match &check.determinant {
            Some(d) => println!("determinant: {d}"),
            None => println!("determinant: (not square)"),
        }
        println!("nondegenerate: {}", check.nondegenerate());
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    SimplexContext::new(args.n)?;
    let mut cells = suite::cells(args.n, args.max_r);
    if let Ok(cap) = std::env::var("FEEC_MAX_CELLS") {
        let cap: usize = cap
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("FEEC_MAX_CELLS must be a count, got `{cap}`")))?;
        if cap < cells.len() {
            eprintln!("FEEC_MAX_CELLS = {cap}: running {cap} of {} cells", cells.len());
            cells.truncate(cap);
        }
    }
    let config = SuiteConfig {
        seed: args.seed,
        cases: args.cases,
    };
    let start = Instant::now();
    let results: Vec<Vec<suite::Check>> = cells.par_iter().map(|&cell| suite::run_cell(cell, config)).collect();
    let mut total = 0;
    let mut failed = 0;
    for check in results.iter().flatten() {
        total += 1;
        if check.passed() {
            if args.verbose {
                println!("[ok]   {:<14} n={} r={}  {} ({} cases)", check.group, check.n, check.r, check.name, check.cases);
            }
        } else {
            failed += 1;
            println!(
                "[FAIL] {:<14} n={} r={}  {}: {} of {} cases failed",
                check.group,
                check.n,
                check.r,
                check.name,
                check.failures.len(),
                check.cases
            );
            for msg in check.failures.iter().take(3) {
                println!("         {msg}");
            }
        }
    }
    println!(
        "{} cells, {} checks, {} failed ({:.2?})",
        cells.len(),
        total,
        failed,
        start.elapsed()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
