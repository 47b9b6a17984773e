//! Subcommands. Exit codes follow the explainer: 0 when the interpretation
//! is an answer set (or the command succeeded), 1 when it is not (or a
//! cross-check found a mismatch), 2 on errors.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use aspdebug::meta::cross::cross_check;
use aspdebug::meta::{debug_program, emit_debug_program};
use aspdebug::reify::reify_input;
use aspdebug::{
    enumerate_answer_sets, explain_with, ground, parse_interpretation, parse_program, ExplainOptions,
    Interpretation, Program,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::config::resolve_solver;
use crate::service::{self, ServiceConfig};

#[derive(Debug, Parser)]
#[command(name = "debug-asp", version, about = "Explains why an interpretation is not an answer set of a disjunctive logic program")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the interpretation is an answer set.
    Check { program: PathBuf, interpretation: PathBuf },
    /// List unsatisfied rule instances and unfounded loops.
    Explain {
        program: PathBuf,
        interpretation: PathBuf,
        /// Report only subset-minimal unfounded loops.
        #[arg(long)]
        minimal_loops: bool,
        /// Stop after the first finding of each kind.
        #[arg(long)]
        first: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Give up after this many loops.
        #[arg(long, default_value_t = aspdebug::loops::DEFAULT_LOOP_CAP)]
        loop_cap: usize,
    },
    /// Enumerate answer sets.
    Solve {
        program: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Print the ground program.
    Ground { program: PathBuf },
    /// Print the fact encoding of a program and an interpretation.
    Reify {
        program: PathBuf,
        interpretation: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the meta-program together with the fact encoding.
    EmitMeta {
        program: PathBuf,
        interpretation: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the meta-program's answer sets with the native explanation.
    CrossCheck {
        program: PathBuf,
        interpretation: PathBuf,
        /// Solver command template; `{file}` is replaced by the program path.
        #[arg(long, env = aspdebug::meta::solver::SOLVER_ENV)]
        solver_cmd: Option<String>,
        /// TOML file with a `[solver]` section.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Reject programs with comparisons.
        #[arg(long)]
        strict: bool,
    },
    /// Serve the JSON API and the workbench.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory served at `/` instead of the built-in page.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Directory where sessions are saved and loaded from.
        #[arg(long)]
        session_dir: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_program(path: &Path) -> Result<Program> {
    parse_program(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_interpretation(path: &Path) -> Result<Interpretation> {
    parse_interpretation(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict_code(is_answer_set: bool) -> i32 {
    if is_answer_set {
        0
    } else {
        1
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Check { program, interpretation } => {
            let (p, i) = (load_program(&program)?, load_interpretation(&interpretation)?);
            let e = explain_with(&p, &i, &ExplainOptions { first: true, ..Default::default() })?;
            println!("{}", e.verdict().as_str());
            Ok(verdict_code(e.is_answer_set()))
        }
        Command::Explain {
            program,
            interpretation,
            minimal_loops,
            first,
            format,
            loop_cap,
        } => {
            let (p, i) = (load_program(&program)?, load_interpretation(&interpretation)?);
            let e = explain_with(&p, &i, &ExplainOptions { minimal_loops, first, loop_cap })?;
            match format {
                Format::Text => print!("{}", e.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&e.to_json(&p))?),
            }
            Ok(verdict_code(e.is_answer_set()))
        }
        Command::Solve { program, limit } => {
            let sets = enumerate_answer_sets(&load_program(&program)?, limit)?;
            for (k, s) in sets.iter().enumerate() {
                println!("Answer {}: {s}", k + 1);
            }
            println!("{} answer set{}", sets.len(), if sets.len() == 1 { "" } else { "s" });
            Ok(0)
        }
        Command::Ground { program } => {
            print!("{}", ground(&load_program(&program)?));
            Ok(0)
        }
        Command::Reify { program, interpretation, output } => {
            let d = reify_input(&load_program(&program)?, &load_interpretation(&interpretation)?)?;
            write_or_print(output.as_deref(), &d.to_text())?;
            Ok(0)
        }
        Command::EmitMeta { program, interpretation, output } => {
            let (p, i) = (load_program(&program)?, load_interpretation(&interpretation)?);
            match output {
                Some(path) => emit_debug_program(&p, &i, &path)?,
                None => print!("{}", debug_program(&p, &i)?),
            }
            Ok(0)
        }
        Command::CrossCheck {
            program,
            interpretation,
            solver_cmd,
            config,
            strict,
        } => {
            let solver = resolve_solver(solver_cmd.as_deref(), config.as_deref(), strict)?;
            let report = cross_check(&load_program(&program)?, &load_interpretation(&interpretation)?, &solver)?;
            print!("{report}");
            Ok(if report.agrees() { 0 } else { 1 })
        }
        Command::Serve {
            port,
            host,
            static_dir,
            session_dir,
        } => {
            let config = ServiceConfig { static_dir, session_dir };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(service::serve(SocketAddr::new(host, port), config))?;
            Ok(0)
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
