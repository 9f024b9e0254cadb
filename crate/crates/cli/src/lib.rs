//! `t3ech`: census, ECH, surgery and index computations from the command line.
//!
//! [`run`] is the whole program minus process plumbing, so it can be driven
//! from tests. Exit codes: 0 success, 1 usage, 2 invalid input, 3
//! mathematical inconsistency (including a failed self-test).

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use t3ech_core::{CensusError, Conventions, ContactError, DocumentError, EchError, IndexError, SurgeryError, WorkspaceDocument};

mod commands;
pub mod format;
pub mod selftest;

use format::{render, OutMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Invalid(String),
    Inconsistent(String),
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ContactError> for CliError {
    fn from(e: ContactError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Contact(_) | CensusError::InvalidCutoff(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Inconsistent(e.to_string()),
        }
    }
}

impl From<EchError> for CliError {
    fn from(e: EchError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::Inconsistent(_) => CliError::Inconsistent(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        match e {
            IndexError::Undecided => CliError::Inconsistent(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "t3ech", version, about = "Reeb orbits, ECH of T³, torus surgeries and index arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub(crate) struct Common {
    /// Workspace document (TOML)
    #[arg(value_name = "WORKSPACE")]
    workspace_path: Option<PathBuf>,
    /// Workspace document (TOML); alternative to the positional argument
    #[arg(long = "workspace", value_name = "PATH", conflicts_with = "workspace_path")]
    workspace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutMode::Table)]
    out: OutMode,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Morse–Bott families and Bourgeois-perturbed orbits below an action cutoff
    #[command(allow_negative_numbers = true)]
    Census(commands::CensusArgs),
    /// Degree-0 ECH of T³
    Ech {
        #[command(subcommand)]
        verb: commands::EchVerb,
    },
    /// Torus surgeries and the product formula
    Surgery {
        #[command(subcommand)]
        verb: commands::SurgeryVerb,
    },
    /// Index arithmetic on intersection-form models
    Index {
        #[command(subcommand)]
        verb: commands::IndexVerb,
    },
    /// Run every invariant suite at desk scale
    Selftest(selftest::SelftestArgs),
}

/// Loaded workspace (possibly empty) plus its conventions.
pub(crate) struct Context {
    pub doc: WorkspaceDocument,
    pub conventions: Conventions,
}

impl Context {
    fn load(common: &Common) -> Result<Context, CliError> {
        let path = common.workspace.as_ref().or(common.workspace_path.as_ref());
        let doc = match path {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?;
                WorkspaceDocument::parse(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?
            }
            None => WorkspaceDocument::default(),
        };
        let conventions = doc.conventions()?;
        Ok(Context { doc, conventions })
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let (name, common, result) = match cli.command {
        Command::Census(args) => ("census", args.common.clone(), with_context(&args.common, |ctx| commands::census(ctx, &args))),
        Command::Ech { verb } => {
            let common = verb.common().clone();
            ("ech", common.clone(), with_context(&common, |ctx| commands::ech(ctx, &verb)))
        }
        Command::Surgery { verb } => {
            let common = verb.common().clone();
            ("surgery", common.clone(), with_context(&common, |ctx| commands::surgery(ctx, &verb)))
        }
        Command::Index { verb } => {
            let common = verb.common().clone();
            ("index", common.clone(), with_context(&common, |ctx| commands::index(ctx, &verb)))
        }
        Command::Selftest(args) => return selftest::run_selftest(&args),
    };
    match result {
        Ok((conventions, body)) => {
            Outcome { code: EXIT_OK, stdout: render(common.out, &conventions, name, &body), stderr: String::new() }
        }
        Err(CliError::Invalid(m)) => Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(CliError::Inconsistent(m)) => {
            Outcome { code: EXIT_INCONSISTENT, stdout: String::new(), stderr: format!("inconsistent: {m}\n") }
        }
    }
}

fn with_context<F>(common: &Common, f: F) -> Result<(Conventions, format::Rendered), CliError>
where
    F: FnOnce(&Context) -> Result<format::Rendered, CliError>,
{
    let ctx = Context::load(common)?;
    let body = f(&ctx)?;
    Ok((ctx.conventions, body))
}
