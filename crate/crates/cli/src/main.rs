mod cache;
mod commands;
mod select;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 0 pass, 1 usage or IO, 2 consistency failure, 3 bar operator failure.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CHECK: u8 = 2;
pub const EXIT_BAR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qpcox", version, about = "Quasiparabolic sets, canonical bases and W-graphs of Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Classify every twisted conjugacy class of a finite system.
    Survey(Common),
    /// Canonical-basis tables of one quasiparabolic set.
    Basis(Common),
    /// W-graphs and cells of one quasiparabolic set.
    Wgraph(Common),
    /// Run a verification suite and exit 0 only if every check passes.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(clap::Args, Debug, Clone, serde::Serialize)]
pub struct Common {
    /// Type string (A3, B2, D4, F4, I2(5), U3, ...), an explicit matrix, or a file holding one.
    #[arg(long = "type")]
    pub ty: String,
    /// id, swap, rot, w0, list, or the images of s1..sn such as "2,1".
    #[arg(long)]
    pub theta: Option<String>,
    /// Element part of the seed, such as "s1s3" or "" for the identity.
    #[arg(long)]
    pub seed: Option<String>,
    /// Named class; only "fpf" (fixed-point-free involutions in type A odd rank).
    #[arg(long)]
    pub class: Option<String>,
    /// Parabolic coset set W^J for the listed generators.
    #[arg(long)]
    pub coset: Option<String>,
    /// W acting on itself.
    #[arg(long)]
    pub regular: bool,
    #[arg(long, value_enum, default_value = "both")]
    pub kind: KindArg,
    /// Height2 cutoff; required for universal systems.
    #[arg(long)]
    pub cutoff: Option<i32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum KindArg {
    M,
    N,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Suite {
    Hecke,
    Bar,
    Inversion,
    FiniteClassification,
    Wgraph,
    Universal,
    All,
}

/// Rendered output of a command plus its exit code.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Outcome {
    pub code: u8,
    pub body: String,
    pub log: Vec<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, common, suite) = match &cli.command {
        Command::Survey(c) => ("survey", c, None),
        Command::Basis(c) => ("basis", c, None),
        Command::Wgraph(c) => ("wgraph", c, None),
        Command::Verify { common, suite } => ("verify", common, Some(*suite)),
    };
    if let Some(j) = common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let run = || -> anyhow::Result<Outcome> {
        let key = cache::key(name, common, suite)?;
        if !common.no_cache {
            if let Some(hit) = cache::load(&key) {
                return Ok(hit);
            }
        }
        let outcome = match &cli.command {
            Command::Survey(c) => commands::survey(c)?,
            Command::Basis(c) => commands::basis(c)?,
            Command::Wgraph(c) => commands::wgraph(c)?,
            Command::Verify { common, suite } => commands::verify(common, *suite)?,
        };
        if !common.no_cache && outcome.code != EXIT_USAGE {
            cache::store(&key, &outcome);
        }
        Ok(outcome)
    };
    match run() {
        Ok(o) => {
            for line in &o.log {
                eprintln!("{line}");
            }
            if let Err(e) = commands::emit(common.out.as_deref(), &o.body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
