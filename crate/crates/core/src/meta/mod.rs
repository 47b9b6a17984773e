//! The fixed meta-program and its instance encoding.
//!
//! The answer sets of the meta-program together with the reified facts of
//! a program `P` and an interpretation `I` witness why `I` is not an answer
//! set of `P`; there are none when it is one. [`solver`] runs an external
//! ASP solver on the combined program and [`cross`] compares its findings
//! with the native explainer.

pub mod cross;
pub mod solver;

use std::path::Path;

use crate::error::Result;
use crate::model::{Interpretation, Program};
use crate::reify::reify_input;

const GAMMA: &str = include_str!("../../assets/gamma.lp");

/// A named part of the meta-program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaModule {
    pub name: &'static str,
    pub text: &'static str,
}

/// The meta-program text.
pub fn gamma_text() -> &'static str {
    GAMMA
}

/// The meta-program split at its `%%% MODULE <name>` headers.
pub fn gamma() -> Vec<GammaModule> {
    let mut out = Vec::new();
    let mut rest = GAMMA;
    while let Some(start) = rest.find("%%% MODULE ") {
        let after = &rest[start + "%%% MODULE ".len()..];
        let name_end = after.find('\n').unwrap_or(after.len());
        let name = after[..name_end].trim();
        let body = &after[(name_end + 1).min(after.len())..];
        let end = body.find("%%% MODULE ").unwrap_or(body.len());
        out.push(GammaModule {
            name,
            text: body[..end].trim_end(),
        });
        rest = &body[end..];
    }
    out
}

/// The meta-program followed by the facts for `p` and `i`.
pub fn debug_program(p: &Program, i: &Interpretation) -> Result<String> {
    let facts = reify_input(p, i)?.to_text();
    Ok(format!("{GAMMA}\n%%% INPUT\n{facts}"))
}

pub fn emit_debug_program(p: &Program, i: &Interpretation, path: &Path) -> Result<()> {
    std::fs::write(path, debug_program(p, i)?)?;
    Ok(())
}
