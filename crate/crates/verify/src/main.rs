use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use npd_core::characters::{an_character_table, sn_character_table};
use npd_core::derangements::two_derangement_decompose_with_rng;
use npd_core::{GroupKind, Permutation};
use npd_verify::{
    all_pass, parse_n_range, render, run_suite, suite_names, ActionSpec, Format, SuiteConfig,
    TSV_HEADER,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "npd",
    version,
    about = "Exact verification of normal-subset product statements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named suite, or `all`.
    Verify(VerifyArgs),
    /// List registered suites.
    Suites,
    /// Print the character table of S_n or A_n as JSON.
    Table {
        /// `S5`, `A6`, ...
        group: String,
    },
    /// Write an even permutation as a product of two even derangements.
    Decompose {
        #[arg(long)]
        n: usize,
        /// Cycle notation on 0-based points, e.g. `(0 1 2)(3 4 5 6)`.
        perm: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Suite name (alternative to --suite).
    name: Option<String>,
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Comma-separated field sizes.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `N`, `A..B` or `A..=B`.
    #[arg(long)]
    n: Option<String>,
    /// `natural` or `subsets:k`.
    #[arg(long)]
    action: Option<String>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Record per-check wall time; output is then not reproducible.
    #[arg(long)]
    timings: bool,
}

fn verify(args: VerifyArgs) -> Result<bool, Box<dyn std::error::Error>> {
    let suite = match (args.suite, args.name) {
        (Some(s), None) | (None, Some(s)) => s,
        (Some(_), Some(_)) => {
            return Err("give the suite either positionally or with --suite".into())
        }
        (None, None) => return Err("missing suite; use --suite <name|all>".into()),
    };
    let format: Format = args.format.parse()?;
    let config = SuiteConfig {
        max_n: args.max_n,
        qs: args.q,
        seed: args.seed,
        n_range: args.n.as_deref().map(parse_n_range).transpose()?,
        action: args
            .action
            .as_deref()
            .map(str::parse::<ActionSpec>)
            .transpose()?,
        s: args.s,
        t: args.t,
        timings: args.timings,
    };
    let results = run_suite(&suite, &config)?;
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if format == Format::Tsv {
        writeln!(out, "{TSV_HEADER}")?;
    }
    for r in &results {
        writeln!(out, "{}", render(r, format))?;
    }
    out.flush()?;
    let failed = results.iter().filter(|r| r.is_failure()).count();
    let skipped = results.iter().filter(|r| r.is_skipped()).count();
    eprintln!(
        "{} checks, {} failed, {} skipped",
        results.len(),
        failed,
        skipped
    );
    Ok(all_pass(&results))
}

fn table(group: &str) -> Result<(), Box<dyn std::error::Error>> {
    let (kind, n) = group.split_at(1);
    let n: usize = n.parse()?;
    let t = match kind.parse::<GroupKind>()? {
        GroupKind::Sn => sn_character_table(n)?,
        GroupKind::An => an_character_table(n)?,
    };
    println!("{}", serde_json::to_string(&t)?);
    Ok(())
}

fn decompose(n: usize, perm: &str, seed: u64) -> Result<(), Box<dyn std::error::Error>> {
    let g = Permutation::parse_cycles(n, perm)?;
    let d = two_derangement_decompose_with_rng(&g, &mut ChaCha8Rng::seed_from_u64(seed))?;
    println!("{}", serde_json::to_string(&d)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Suites => {
            suite_names().iter().for_each(|s| println!("{s}"));
            Ok(true)
        }
        Command::Table { group } => table(&group).map(|_| true),
        Command::Decompose { n, perm, seed } => decompose(n, &perm, seed).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
