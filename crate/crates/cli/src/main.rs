//! `mm`: minimal-model tables, braiding matrices and verifications.
//!
//! Exit status is 0 when every check passes, 1 when a verification fails and
//! 2 on a usage error.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use minimal_fusion_cli::commands::{self, Ctx, Target, UsageError};
use minimal_fusion_cli::Report;

#[derive(Parser)]
#[command(
    name = "mm",
    version,
    about = "Exact Virasoro minimal-model data and FFK braiding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Bits of precision for numeric embeddings.
    #[arg(long, global = true, default_value_t = 53, value_parser = clap::value_parser!(u32).range(16..=4096))]
    precision: u32,
    /// Corrupt every expected value (exercises the failure exit code).
    #[arg(long, global = true, hide = true)]
    inject_failure: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Central charge, modules, weights and quantum dimensions.
    Info {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Fusion product of two modules.
    Fusion {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// First module as m,n.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Second module as m,n.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Quantum dimension of a module.
    Qdim {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Module as m,n.
        #[arg(long, allow_hyphen_values = true)]
        label: String,
    },
    /// Braiding matrix for four external modules.
    Braid {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Four modules as Kac pairs, or P/U indices in (7,8) and (11,12).
        #[arg(long)]
        ext: String,
        /// A single entry (μ, γ) in the same notation.
        #[arg(long)]
        entry: Option<String>,
    },
    /// Run a verification target.
    Verify {
        #[arg(value_enum)]
        target: TargetArg,
    },
    /// Sector table of an algebra or components of one of its modules.
    Decompose {
        /// 5a or 3c.
        algebra: String,
        /// Module key: i,j for 5A or k for 3C.
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(name = "lemma-5a")]
    Lemma5a,
    #[value(name = "lemma-3c")]
    Lemma3c,
    #[value(name = "uniqueness-5a")]
    Uniqueness5a,
    #[value(name = "uniqueness-3c")]
    Uniqueness3c,
    #[value(name = "chains-5a")]
    Chains5a,
    #[value(name = "chains-3c")]
    Chains3c,
    #[value(name = "fusion-5a")]
    Fusion5a,
    #[value(name = "fusion-3c")]
    Fusion3c,
    All,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Lemma5a => Target::Lemma5a,
            TargetArg::Lemma3c => Target::Lemma3c,
            TargetArg::Uniqueness5a => Target::Uniqueness5a,
            TargetArg::Uniqueness3c => Target::Uniqueness3c,
            TargetArg::Chains5a => Target::Chains5a,
            TargetArg::Chains3c => Target::Chains3c,
            TargetArg::Fusion5a => Target::Fusion5a,
            TargetArg::Fusion3c => Target::Fusion3c,
            TargetArg::All => Target::All,
        }
    }
}

fn run(cmd: &Command, ctx: &Ctx) -> Result<Report, UsageError> {
    match cmd {
        Command::Info { p, q } => commands::info(ctx, *p, *q),
        Command::Fusion { p, q, a, b } => commands::fusion(ctx, *p, *q, a, b),
        Command::Qdim { p, q, label } => commands::qdim(ctx, *p, *q, label),
        Command::Braid { p, q, ext, entry } => commands::braid(ctx, *p, *q, ext, entry.as_deref()),
        Command::Verify { target } => Ok(commands::verify(ctx, (*target).into())),
        Command::Decompose { algebra, module } => {
            commands::decompose(ctx, algebra, module.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        precision: cli.precision,
        inject_failure: cli.inject_failure,
    };
    let start = Instant::now();
    let mut report = match run(&cli.command, &ctx) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    report.elapsed_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    match cli.format {
        Format::Table => print!("{}", report.to_table()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
