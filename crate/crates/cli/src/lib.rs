//! Batch front end for the altlex engine and its self-test corpus.

pub mod commands;
pub mod selftest;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
