use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pnu::commands::{self, Output};

#[derive(Parser)]
#[command(name = "pnu", about = "Permissive nominal unification")]
struct Cli {
    /// Print every rule applied
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Unify the equalities of a problem file
    Unify { file: PathBuf },
    /// Decide alpha-equivalence of each equality
    Alpha { file: PathBuf },
    /// Simplify support inclusions and print the renaming they induce
    Support { file: PathBuf },
    /// Translate a nominal problem into a permissive one
    FromNominal { file: PathBuf },
    /// Translate a problem (and optionally a substitution) to lambda patterns
    ToPattern {
        file: PathBuf,
        /// Abstracted atoms, e.g. `a0,b1`; defaults to the capturable atoms
        #[arg(long)]
        d: Option<String>,
        /// Argument atoms for the substitution; defaults to D then its capturable atoms
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        subst: Option<PathBuf>,
    },
    /// Check whether a substitution solves a problem
    Check { file: PathBuf, subst: PathBuf },
}

fn read(p: &Path) -> Result<String, Output> {
    std::fs::read_to_string(p).map_err(|e| Output { text: format!("error: {}: {e}\n", p.display()), code: 2 })
}

fn run(cli: Cli) -> Result<Output, Output> {
    Ok(match cli.cmd {
        Cmd::Unify { file } => commands::cmd_unify(&read(&file)?, cli.trace),
        Cmd::Alpha { file } => commands::cmd_alpha(&read(&file)?),
        Cmd::Support { file } => commands::cmd_support(&read(&file)?, cli.trace),
        Cmd::FromNominal { file } => commands::cmd_from_nominal(&read(&file)?),
        Cmd::ToPattern { file, d, e, subst } => {
            let subst = subst.map(|p| read(&p)).transpose()?;
            commands::cmd_to_pattern(&read(&file)?, d.as_deref(), e.as_deref(), subst.as_deref())
        }
        Cmd::Check { file, subst } => commands::cmd_check(&read(&file)?, &read(&subst)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(cli).unwrap_or_else(|e| e);
    if out.code == 2 {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
