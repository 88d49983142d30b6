//! `bihom`: load a graded BiHom algebra from a JSON document and analyse it.
//!
//! Exit codes:
//! - 0: success
//! - 1: a check failed (the report carries a witness)
//! - 2: missing file, unknown catalog entry or bad arguments
//! - 3: the document violates the input schema

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "bihom", version, about = "Analyse graded BiHom matrix algebras")]
pub struct Cli {
    /// Output style. `machine` prints canonical JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Warn about unknown document keys instead of rejecting them.
    #[arg(long, global = true)]
    pub lenient: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every axiom of a graded BiHom algebra.
    Validate { path: PathBuf },
    /// Support, its symmetry and component dimensions.
    Support { path: PathBuf },
    /// Connection classes of the support, with witnesses.
    Classes {
        path: PathBuf,
        /// Replay every witness against the definition.
        #[arg(long)]
        verify_witnesses: bool,
    },
    /// Split into graded ideals, one per class, plus a complement in degree zero.
    Decompose {
        path: PathBuf,
        /// Include bases of the ideals, the complement and the centre.
        #[arg(long)]
        bases: bool,
    },
    /// Run the graded simplicity criterion.
    Simplicity {
        path: PathBuf,
        /// Cross-check by enumerating graded ideals, when small enough.
        #[arg(long)]
        oracle: bool,
    },
    /// Built-in example algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List entries with their expected properties.
    List,
    /// Write an entry as an input document.
    Emit {
        name: String,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
