//! Command-line front end. [`run`] never panics on bad input; every failure
//! becomes a message and an exit code.

mod check;
mod commands;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dsl::{self, DslDocument};
use crate::catalog::builtin_document;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gcoh", version, about = "Exact cohomology of oriented Grassmann manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Extra declarations, resolved against the built-in catalog.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded groups of a ring with generator representatives.
    Groups {
        ring: String,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// E_2 and E_infinity pages and the total groups of a sphere bundle.
    Gysin { bundle: String },
    /// The E_2 page of a sphere bundle.
    Page { bundle: String },
    /// Solve a torsion problem.
    Solve {
        problem: String,
        /// Print the first failing constraint of every rejected assignment.
        #[arg(long)]
        explain: bool,
        /// Succeed whatever the number of solutions.
        #[arg(long)]
        all: bool,
        /// Leave out the SO(3) bundle constraint.
        #[arg(long)]
        no_so3: bool,
        /// Add Z_9 to the candidate groups.
        #[arg(long)]
        extend_candidates: bool,
    },
    /// Run the built-in verification suite.
    VerifyPaper,
    /// Monomials needed to present the ring without a top-degree truncation.
    FinitePresentation {
        ring: String,
        #[arg(long)]
        scan_to: u32,
    },
    /// Cup product pairings into the top degree.
    Duality { ring: String },
    /// Mod 2 Betti numbers by universal coefficients.
    Mod2Dims { ring: String },
    /// Evaluate every `expect` declaration.
    Check,
}

/// A failed command: message plus exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    pub(crate) fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_INPUT, message: format!("output error: {e}") }
    }
}

pub(crate) type CmdResult = Result<i32, Failure>;

/// Runs the command line `args`, program name first, writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(file: Option<&PathBuf>) -> Result<DslDocument, Failure> {
    let builtin = builtin_document();
    let Some(path) = file else { return Ok(builtin.clone()) };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let local = dsl::parse_in(&text, builtin).map_err(|e| Failure::input(format!("{}:{e}", path.display())))?;
    Ok(local.merged(builtin))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let doc = load(cli.file.as_ref())?;
    let f = cli.format;
    match &cli.command {
        Command::Groups { ring, max_deg } => commands::groups(&doc, ring, *max_deg, f, out),
        Command::Gysin { bundle } => commands::gysin(&doc, bundle, f, out),
        Command::Page { bundle } => commands::page(&doc, bundle, f, out),
        Command::Solve { problem, explain, all, no_so3, extend_candidates } => {
            let opts = commands::SolveFlags {
                explain: *explain,
                all: *all,
                no_so3: *no_so3,
                extend: *extend_candidates,
            };
            commands::solve(&doc, problem, opts, f, out)
        }
        Command::VerifyPaper => commands::verify_paper(f, out),
        Command::FinitePresentation { ring, scan_to } => commands::finite_presentation(&doc, ring, *scan_to, f, out),
        Command::Duality { ring } => commands::duality(&doc, ring, f, out),
        Command::Mod2Dims { ring } => commands::mod2_dims(&doc, ring, f, out),
        Command::Check => check::run(&doc, f, out),
    }
}

#[cfg(test)]
mod tests;
