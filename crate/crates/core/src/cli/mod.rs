//! Command-line front end: task files, the symbol language and report
//! emission.
//!
//! Exit status: 0 on success, 2 for parse errors, 3 for validation errors,
//! 4 for computation errors and 5 for I/O failures.

pub mod dsl;
pub mod emit;
pub mod run;
pub mod task;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::symbol::ChartContext;
use crate::{Error, Result};
use task::{Computation, Format, TaskSpec};

#[derive(Parser, Debug)]
#[command(name = "wres", version, about = "Exact residue densities of twisted Bismut Laplacians")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Run a task file; flags override its fields.
    Run {
        /// TOML task file.
        task: Option<PathBuf>,
        #[arg(long)]
        dim: Option<u8>,
        /// interior, boundary or both.
        #[arg(long, value_parser = |s: &str| s.parse::<Computation>())]
        mode: Option<Computation>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// text or json.
        #[arg(long, value_parser = |s: &str| s.parse::<Format>())]
        format: Option<Format>,
        #[arg(long, value_enum)]
        oracle: Option<Switch>,
        /// Parametrix depth cap.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Parse a symbol file and print its canonical form.
    Symbol {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: u8,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::Validation(_) | Error::UnknownBuiltin(_) | Error::OddDimension(_) => 3,
        Error::Io(_) => 5,
        _ => 4,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn color_enabled() -> bool {
    std::env::var("WRES_COLOR").is_ok_and(|v| v == "1")
}

fn execute(cmd: Cmd, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Cmd::Run { task, dim, mode, out, format, oracle, depth } => {
            let mut t = match &task {
                Some(p) => task::parse_task(&read(p)?, p.parent().unwrap_or(Path::new("."))).map_err(|e| match e {
                    Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{}: {msg}", p.display()) },
                    other => other,
                })?,
                None => TaskSpec::default(),
            };
            if let Some(d) = dim {
                t.dimension = d;
            }
            if let Some(m) = mode {
                t.computation = m;
            }
            if let Some(o) = out {
                t.output = Some(o);
            }
            if let Some(f) = format {
                t.format = f;
            }
            if let Some(o) = oracle {
                t.oracle = matches!(o, Switch::On);
            }
            if let Some(d) = depth {
                t.depth = d;
            }
            let report = run::run_task(&t)?;
            match &t.output {
                Some(path) => fs::write(path, emit::emit(&report, t.format, false)).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => stdout.write_all(emit::emit(&report, t.format, color_enabled()).as_bytes()).map_err(Error::from),
            }
        }
        Cmd::Symbol { file, dim } => {
            let chart = ChartContext::new(dim)?;
            let sym = dsl::parse_symbol(&read(&file)?, &chart)?;
            stdout.write_all(dsl::print_symbol(&sym)?.as_bytes()).map_err(Error::from)
        }
    }
}

/// Entry point shared by the binary and the tests; returns the exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.cmd, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
