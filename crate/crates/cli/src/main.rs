use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use dirichlet_cli::commands::{self, ConstructArgs, FieldChoice, ProblemSource, SampleMode};
use dirichlet_cli::CliError;
use dirichlet_core::dirichlet::DEFAULT_SEARCH_BUDGET;
use dirichlet_core::embedding::DEFAULT_BUDGET;

/// Fixed default so that sampled output is reproducible.
const DEFAULT_SEED: u64 = 0xd1c7_5eed;

#[derive(Parser)]
#[command(name = "dirichlet", version, about = "Irreducible polynomials with symmetric Galois group, and finite-group experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[command(group(ArgGroup::new("field").required(true).args(["prime", "rationals"])))]
struct FieldArgs {
    /// Work over F_p.
    #[arg(long)]
    prime: Option<u64>,
    /// Work over Q.
    #[arg(long)]
    rationals: bool,
}

impl FieldArgs {
    fn choice(&self) -> FieldChoice {
        match self.prime {
            Some(p) => FieldChoice::Prime(p),
            None => FieldChoice::Rationals,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build c with a + Y*b*c of Galois group S_n, writing both certificates.
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: usize,
        /// Cycle length; chosen automatically when omitted.
        #[arg(long)]
        e: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Directory receiving certificate.json and sn_certificate.json.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Recheck a certificate; exit 0 iff the symmetric group is certified.
    Verify { file: PathBuf },
    /// Factor a polynomial over F_p.
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
    },
    /// Frobenius cycle types of specializations, as CSV.
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "trials"])))]
    Sample {
        file: PathBuf,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Offsets alpha in F_p with a + alpha*b*c irreducible of degree n.
    Offsets {
        file: PathBuf,
        #[arg(long, default_value_t = usize::MAX)]
        limit: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Report on a group description, with wreath checks for twisted_wreath.
    Wreath { spec: String },
    /// Enumerate solutions of an embedding problem or double embedding problem.
    #[command(group(ArgGroup::new("problem").required(true).args(["file", "catalog"])))]
    Dep {
        file: Option<PathBuf>,
        /// One of the built-in problems (z4-z2, iso, z2-z4, s3-sign, dep-klein).
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Construct { field, a, b, n, e, budget, out } => {
            commands::construct(&ConstructArgs { field: field.choice(), a: &a, b: &b, n, e, budget, out: &out })
        }
        Command::Verify { file } => commands::verify(&commands::read(&file)?),
        Command::Factor { field, f } => match field.choice() {
            FieldChoice::Prime(p) => commands::factor_command(p, &f),
            FieldChoice::Rationals => Err(CliError::Invalid(String::from("factoring is only available over F_p"))),
        },
        Command::Sample { file, exhaustive, trials, seed, jobs } => {
            let mode = match (exhaustive, trials) {
                (true, _) => SampleMode::Exhaustive,
                (false, Some(count)) => SampleMode::Trials { count, seed },
                (false, None) => unreachable!("clap requires a mode"),
            };
            let (csv, sample) = commands::sample(&commands::read(&file)?, &mode, jobs)?;
            eprintln!("trials {}, skipped {}", sample.trials, sample.skipped);
            Ok(csv)
        }
        Command::Offsets { file, limit, jobs } => commands::offsets(&commands::read(&file)?, limit, jobs),
        Command::Wreath { spec } => commands::wreath(&spec),
        Command::Dep { file, catalog, budget, jobs } => match (file, catalog) {
            (_, Some(name)) => commands::dep(ProblemSource::Catalog(&name), budget, jobs),
            (Some(path), None) => commands::dep(ProblemSource::File(&commands::read(&path)?), budget, jobs),
            (None, None) => unreachable!("clap requires a problem"),
        },
    }
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with parse errors; 2 means NotCoprime
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
