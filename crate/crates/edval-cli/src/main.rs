//! Command-line front end: parse symbol classes, print essential-dimension
//! reports, generate the named class families, verify the combinatorial
//! claims, and drive the acceptance sweeps.
//!
//! Exit codes: 0 success, 1 property or sweep failure, 2 parse error,
//! 3 contract violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use edval::{claims, ed, sweep, Error, SymbolClass};

const DEFAULT_MAX_RANK: usize = 12;

#[derive(Parser)]
#[command(
    name = "edval",
    version,
    about = "Exact essential-dimension calculator for sums of Galois symbols over valued fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full essential-dimension report for a class
    Ed(EdArgs),
    /// Classification only: Zero, Symbol, NonSymbol, or Mixed
    Classify(ClassArgs),
    /// Basis of a minimal-rank subgroup supporting the class
    Witness(ClassArgs),
    /// Skew matrix, elementary divisors, and i0 of a degree-2 class
    Brauer(ClassArgs),
    /// Zero-sum subset witnesses in Z/n (one JSON line per residue)
    CheckClaim(ClaimArgs),
    /// Emit one of the named class families in DSL form
    Gen(GenArgs),
    /// Run the acceptance sweeps and print a pass/fail table
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ClassArgs {
    /// Inline class text, e.g. "(t0,t1)_2 + (t2,t3)_2"
    #[arg(
        value_name = "CLASS",
        required_unless_present = "file",
        conflicts_with = "file"
    )]
    class: Option<String>,
    /// Read the class from a file instead
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Embed the class in a larger ambient rank
    #[arg(long)]
    rank: Option<usize>,
    /// Emit JSON instead of human-readable text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EdArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Assert a strictly Henselian base field: the bound is then exact
    /// even in the presence of unit-scalar slots
    #[arg(long)]
    henselian: bool,
}

#[derive(Args)]
struct ClaimArgs {
    /// Modulus
    #[arg(long)]
    n: u64,
    /// Subset size
    #[arg(long)]
    d: usize,
    /// Single residue; all residues mod n when omitted
    #[arg(long)]
    j: Option<u64>,
}

#[derive(Args)]
struct GenArgs {
    /// Family: generic, block, chain, congruence, t1, t2
    #[arg(long)]
    preset: String,
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Symbol degree; defaults to 2 for generic, 3 for congruence
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Variable count for the congruence family
    #[arg(long, default_value_t = 5)]
    nv: usize,
    /// Write to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Perturb the pinned corpus seeds
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the outcome table as JSON
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ed(args) => cmd_ed(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Brauer(args) => cmd_brauer(args),
        Command::CheckClaim(args) => cmd_check_claim(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::ClaimFalsified { .. } => 1,
        _ => 3,
    }
}

fn max_rank() -> usize {
    std::env::var("EDVAL_MAX_RANK")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_RANK)
}

fn load_class(args: &ClassArgs) -> Result<SymbolClass, Error> {
    let text = match (&args.class, &args.file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))?,
        _ => unreachable!("clap enforces exactly one input source"),
    };
    let mut class = SymbolClass::parse(text.trim())?;
    if let Some(rank) = args.rank {
        class = class.embed_in_rank(rank)?;
    }
    let limit = max_rank();
    if class.rank() > limit {
        return Err(Error::Contract(format!(
            "rank {} exceeds EDVAL_MAX_RANK = {limit}",
            class.rank()
        )));
    }
    Ok(class)
}

fn cmd_ed(args: EdArgs) -> Result<ExitCode, Error> {
    let class = load_class(&args.class)?;
    let report = ed::ed_report(&class, args.henselian);
    if args.class.json {
        println!(
            "{}",
            serde_json::to_string(&report.to_json()).expect("serializable")
        );
        return Ok(ExitCode::SUCCESS);
    }
    println!("class: {}", class.render());
    match report.degree {
        Some(d) => println!("p = {}   rank = {}   degree = {}", report.p, report.rank, d),
        None => println!("p = {}   rank = {}   degree = mixed", report.p, report.rank),
    }
    println!("classification: {}", report.classification);
    println!("width rho = {}", report.rho);
    if report.a_omega.factors().is_empty() {
        println!("A_omega: trivial");
    } else {
        let factors: Vec<String> = report
            .a_omega
            .factors()
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("A_omega invariant factors: {}", factors.join(", "));
    }
    if report.exact {
        println!("ed = {} (exact)", report.rho);
    } else {
        println!(
            "ed >= {} (lower bound; unit-scalar slots present, pass --henselian to assert exactness)",
            report.rho
        );
    }
    println!("witness basis:");
    if report.witness.rank() == 0 {
        println!("  (rank 0)");
    } else {
        for row in report.witness.to_string_rows() {
            println!("  [{}]", row.join(", "));
        }
    }
    if let Some(block) = &report.brauer {
        let divisors: Vec<String> = block.divisors.iter().map(ToString::to_string).collect();
        println!(
            "brauer route: divisors = {}   i0 = {}",
            divisors.join(", "),
            block.i0
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: ClassArgs) -> Result<ExitCode, Error> {
    let class = load_class(&args)?;
    let report = ed::ed_report(&class, false);
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "classification": report.classification,
                "rho": report.rho,
            })
        );
    } else {
        println!("{} (width {})", report.classification, report.rho);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(args: ClassArgs) -> Result<ExitCode, Error> {
    let class = load_class(&args)?;
    let omega = class.wedge_valuation();
    let witness = ed::witness(&omega);
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "rank": witness.rank(),
                "basis": witness.to_string_rows(),
            })
        );
    } else if witness.rank() == 0 {
        println!("(rank 0)");
    } else {
        for row in witness.to_string_rows() {
            println!("[{}]", row.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_brauer(args: ClassArgs) -> Result<ExitCode, Error> {
    let class = load_class(&args)?;
    let matrix = ed::brauer_matrix(&class)?;
    let level = class
        .common_level()
        .expect("brauer_matrix enforced one level");
    let inv = ed::brauer_invariants(&matrix, class.p(), level)?;
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "M": matrix.to_string_rows(),
                "divisors": inv.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "i0": inv.i0,
                "factors": inv.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("M =");
        for row in matrix.to_string_rows() {
            println!("  [{}]", row.join(", "));
        }
        let divisors: Vec<String> = inv.divisors.iter().map(ToString::to_string).collect();
        println!("elementary divisors: {}", divisors.join(", "));
        println!("i0 = {}", inv.i0);
        if inv.factors.is_empty() {
            println!("invariant factors: (trivial group)");
        } else {
            let factors: Vec<String> = inv.factors.iter().map(ToString::to_string).collect();
            println!("invariant factors: {}", factors.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_claim(args: ClaimArgs) -> Result<ExitCode, Error> {
    let residues: Vec<u64> = match args.j {
        Some(j) => vec![j],
        None => (0..args.n).collect(),
    };
    for j in residues {
        let witness = claims::find_zero_sum_subset(args.n, args.d, j)?;
        println!("{}", serde_json::to_string(&witness).expect("serializable"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, Error> {
    let class = match args.preset.as_str() {
        "generic" => SymbolClass::generic(args.r, args.d.unwrap_or(2), args.p, args.n)?,
        "block" => SymbolClass::block_brauer(args.r, args.p, args.n)?,
        "chain" => SymbolClass::chain(args.r, args.p)?,
        "congruence" => SymbolClass::congruence(args.nv, args.d.unwrap_or(3), args.p)?,
        "t1" => SymbolClass::chain(3, 2)?,
        "t2" => SymbolClass::chain(4, 2)?,
        other => {
            return Err(Error::Contract(format!(
                "unknown preset {other:?}; expected generic, block, chain, congruence, t1, t2"
            )))
        }
    };
    let text = format!("{}\n", class.render());
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Contract(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let outcomes = sweep::run_all(args.seed);
    let all_pass = outcomes.iter().all(|o| o.passed());
    if args.json {
        let rows: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                serde_json::json!({
                    "id": o.id,
                    "name": o.name,
                    "cases": o.cases,
                    "pass": o.passed(),
                    "failures": o.failures,
                })
            })
            .collect();
        println!("{}", serde_json::json!(rows));
    } else {
        for outcome in &outcomes {
            println!("{}", outcome.summary_line());
        }
        println!(
            "{}",
            if all_pass {
                "all criteria passed"
            } else {
                "SWEEP FAILURES PRESENT"
            }
        );
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
