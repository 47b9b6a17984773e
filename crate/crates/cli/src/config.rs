//! Solver configuration file.
//!
//! ```toml
//! [solver]
//! command = "clingo --warn=none -n 0 --project {file}"
//! strict = false
//! ```

use std::path::Path;

use anyhow::{Context, Result};
use aspdebug::meta::solver::SolverConfig;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub solver: SolverSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub command: Option<String>,
    #[serde(default)]
    pub strict: bool,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// `--solver-cmd` wins over the configuration file, which wins over
/// detection.
pub fn resolve_solver(cmd: Option<&str>, config: Option<&Path>, strict: bool) -> Result<SolverConfig> {
    let file = config.map(ConfigFile::load).transpose()?.unwrap_or_default();
    let strict = strict || file.solver.strict;
    let solver = match cmd.or(file.solver.command.as_deref()) {
        Some(t) => SolverConfig::from_template(t)?,
        None => SolverConfig::detect()?,
    };
    Ok(solver.strict(strict))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_overrides_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "[solver]\ncommand = \"from-file {file}\"\nstrict = true\n").unwrap();
        let s = resolve_solver(None, Some(&path), false).unwrap();
        assert_eq!(s.program, "from-file");
        assert!(s.strict);
        let s = resolve_solver(Some("flag"), Some(&path), false).unwrap();
        assert_eq!(s.program, "flag");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "[solver]\ncmd = \"x\"\n").unwrap();
        assert!(resolve_solver(None, Some(&path), false).is_err());
    }
}
