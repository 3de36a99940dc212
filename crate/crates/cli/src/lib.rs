//! Command-line front end: JSON documents, subcommands and SVG star plots.

pub mod app;
pub mod commands;
pub mod document;
pub mod error;
pub mod svg;

pub use error::CliError;
