mod commands;
mod make;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Outcome;

#[derive(Parser)]
#[command(name = "gradkill", version, about = "Support-killing of graded algebras and modules")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Also write the produced algebra, module, set or map to this file.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ring-supporting subsets of Z_n with trivial stabilizer.
    Enumerate {
        #[arg(long)]
        n: i64,
        /// Enumerate every n from --n up to this bound.
        #[arg(long)]
        max_n: Option<i64>,
    },
    /// Is the degree set in FILE ring-supporting?
    CheckSet { file: PathBuf },
    /// Is (S, U) a modular pair?
    CheckPair {
        s_file: PathBuf,
        u_file: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Kill the support of an algebra outside U.
    Kill { alg_file: PathBuf, u_file: PathBuf },
    /// Regrade an algebra along a pseudomorphism.
    Regrade { alg_file: PathBuf, map_file: PathBuf },
    /// Check whether a module over the killed algebra lifts.
    LiftCheck(LiftArgs),
    /// Lift a module over the killed algebra back to the full algebra.
    Lift(LiftArgs),
    /// Compare Hom dimensions before and after killing on random modules.
    VerifyEquivalence(EquivalenceArgs),
    /// Kill, enumerate and regrade a homogeneous dual.
    KoszulPipeline(KoszulArgs),
    /// Build algebras, modules, degree sets and maps.
    Make {
        #[command(subcommand)]
        what: make::Make,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Args)]
struct LiftArgs {
    /// Module over the killed algebra.
    #[arg(long)]
    module: PathBuf,
    /// The full algebra A.
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    s: PathBuf,
    #[arg(long)]
    u: PathBuf,
    /// Use the reduced criterion for translations of intervals (lift-check only).
    #[arg(long)]
    interval: bool,
}

#[derive(Args)]
struct EquivalenceArgs {
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Q or GF(p) for the built-in algebra; files carry their own field.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Algebra file; defaults to K[x] truncated above degree 6.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Defaults to 3Z ∪ (3Z+1).
    #[arg(long)]
    u: Option<PathBuf>,
    /// Defaults to U.
    #[arg(long)]
    s: Option<PathBuf>,
    /// Module window `lo,hi` or `hi`; defaults to the algebra window.
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct KoszulArgs {
    #[arg(long)]
    n: i64,
    /// Top degree of the dual.
    #[arg(long)]
    window: i64,
    #[arg(long, default_value_t = 1)]
    vdim: usize,
    /// Relations spanning R; defaults to x^n.
    #[arg(long)]
    rel: Vec<String>,
    /// Shift m of the regraded module.
    #[arg(long, default_value_t = 0)]
    m: i64,
    #[arg(long, default_value = "Q")]
    field: String,
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Enumerate { n, max_n } => commands::enumerate(*n, *max_n),
        Command::CheckSet { file } => commands::check_set(file),
        Command::CheckPair { s_file, u_file, side } => commands::check_pair(s_file, u_file, *side == Side::Left),
        Command::Kill { alg_file, u_file } => commands::kill(alg_file, u_file),
        Command::Regrade { alg_file, map_file } => commands::regrade(alg_file, map_file),
        Command::LiftCheck(args) => commands::lift(args, false),
        Command::Lift(args) => commands::lift(args, true),
        Command::VerifyEquivalence(args) => commands::verify_equivalence(args),
        Command::KoszulPipeline(args) => commands::koszul(args),
        Command::Make { what } => make::run(what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let (Some(path), Some(obj)) = (&cli.output, &outcome.object) {
        let text = serde_json::to_string_pretty(obj).expect("JSON values serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize") + "\n",
        Format::Text => outcome.text,
    };
    let _ = std::io::stdout().write_all(body.as_bytes());
    if outcome.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
