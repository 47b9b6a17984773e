//! Bridge to an external ASP solver.
//!
//! The solver is a command template. `{file}` in the template is replaced
//! by the path of the program to solve; without it the path is appended.
//! Answer sets are read from clingo-style output (an `Answer: k` line
//! followed by a line of space-separated atoms) or from DLV-style lines of
//! the form `{a, b, c}`.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::process::Command;

use crate::error::{Error, Result};
use crate::meta::debug_program;
use crate::model::{Interpretation, Program};

/// Environment variable holding the default solver command template.
pub const SOLVER_ENV: &str = "DEBUG_ASP_SOLVER";

const CLINGO_ARGS: &str = "--warn=none -n 0 --project {file}";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub program: String,
    pub args: Vec<String>,
    /// Reject programs with comparisons.
    pub strict: bool,
}

impl SolverConfig {
    pub fn from_template(template: &str) -> Result<Self> {
        let mut words = template.split_whitespace().map(str::to_owned);
        let program = words.next().ok_or(Error::SolverNotConfigured)?;
        Ok(SolverConfig {
            program,
            args: words.collect(),
            strict: false,
        })
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    /// `$DEBUG_ASP_SOLVER`, else `clingo` on the `PATH`, else the clingo
    /// Python module.
    pub fn detect() -> Result<Self> {
        if let Ok(t) = std::env::var(SOLVER_ENV) {
            if !t.trim().is_empty() {
                return Self::from_template(&t);
            }
        }
        if runs("clingo", &["--version"]) {
            return Self::from_template(&format!("clingo {CLINGO_ARGS}"));
        }
        if runs("python3", &["-m", "clingo", "--version"]) {
            return Self::from_template(&format!("python3 -m clingo {CLINGO_ARGS}"));
        }
        Err(Error::SolverNotConfigured)
    }

    fn command_for(&self, file: &Path) -> Command {
        let path = file.to_string_lossy();
        let mut cmd = Command::new(&self.program);
        let mut placed = false;
        for a in &self.args {
            if a.contains("{file}") {
                placed = true;
                cmd.arg(a.replace("{file}", &path));
            } else {
                cmd.arg(a);
            }
        }
        if !placed {
            cmd.arg(file);
        }
        cmd
    }

    /// Solves `text` and returns its answer sets.
    pub fn solve(&self, text: &str) -> Result<Vec<MetaAnswerSet>> {
        let mut file = tempfile::Builder::new().suffix(".lp").tempfile()?;
        file.write_all(text.as_bytes())?;
        file.flush()?;
        let out = self.command_for(file.path()).output().map_err(|e| {
            Error::SolverFailure(format!("cannot run {}: {e}", self.program))
        })?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        match out.status.code() {
            Some(0 | 10 | 20 | 30) => parse_answer_sets(&stdout),
            _ => Err(Error::SolverFailure(format!(
                "{} exited with {}\n{}{}",
                self.program,
                out.status,
                stdout,
                String::from_utf8_lossy(&out.stderr)
            ))),
        }
    }
}

fn runs(program: &str, args: &[&str]) -> bool {
    Command::new(program)
        .args(args)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

/// A ground atom as printed by the solver.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn parse(text: &str) -> Result<Atom> {
        let bad = || Error::SolverFailure(format!("cannot read atom {text:?}"));
        let text = text.trim();
        match text.find('(') {
            None if !text.is_empty() => Ok(Atom {
                name: text.to_owned(),
                args: Vec::new(),
            }),
            None => Err(bad()),
            Some(open) => {
                let inner = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                Ok(Atom {
                    name: text[..open].to_owned(),
                    args: inner.split(',').map(|a| a.trim().to_owned()).collect(),
                })
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct MetaAnswerSet {
    pub atoms: BTreeSet<Atom>,
}

impl MetaAnswerSet {
    pub fn contains(&self, name: &str) -> bool {
        self.atoms.iter().any(|a| a.name == name)
    }

    pub fn with_name<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Atom> + 'a {
        self.atoms.iter().filter(move |a| a.name == name)
    }
}

/// Splits a line of atoms at top-level separators.
fn split_atoms(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (k, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ' ' | ',' if depth == 0 => {
                if k > start {
                    out.push(&line[start..k]);
                }
                start = k + 1;
            }
            _ => {}
        }
    }
    if line.len() > start {
        out.push(&line[start..]);
    }
    out
}

pub fn parse_answer_sets(output: &str) -> Result<Vec<MetaAnswerSet>> {
    let mut sets = Vec::new();
    let mut lines = output.lines();
    while let Some(line) = lines.next() {
        let line = line.trim();
        let atoms_line = if line.starts_with("Answer:") {
            lines.next().unwrap_or("")
        } else if let Some(inner) = line.strip_prefix('{').and_then(|l| l.strip_suffix('}')) {
            inner
        } else {
            continue;
        };
        let atoms = split_atoms(atoms_line.trim())
            .into_iter()
            .map(Atom::parse)
            .collect::<Result<_>>()?;
        sets.push(MetaAnswerSet { atoms });
    }
    Ok(sets)
}

/// Solves the meta-program for `p` and `i` plus `extra` (constraints or
/// `#show` directives).
pub fn run_meta_with(p: &Program, i: &Interpretation, solver: &SolverConfig, extra: &str) -> Result<Vec<MetaAnswerSet>> {
    if solver.strict && p.has_builtins() {
        return Err(Error::StrictModeBuiltins);
    }
    let text = format!("{}\n%%% QUERY\n{extra}\n", debug_program(p, i)?);
    solver.solve(&text)
}

/// Answer sets of the meta-program, projected onto the explanation
/// vocabulary.
pub fn run_meta(p: &Program, i: &Interpretation, solver: &SolverConfig) -> Result<Vec<MetaAnswerSet>> {
    run_meta_with(
        p,
        i,
        solver,
        "#show unsatisfied/0. #show guessRule/1. #show subst/2. #show isLoop/0. \
         #show inLoop/1. #show unfounded/0. #show notAnswerSet/0.",
    )
}
