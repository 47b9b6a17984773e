//! Command-line front end and local HTTP service for the `aspdebug` engine.

pub mod commands;
pub mod config;
pub mod service;

pub use commands::{run, Cli};
