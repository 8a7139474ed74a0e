//! Command-line front end for `hkdiag-core`: polynomial and coefficient-file
//! parsing, text/JSON/CSV rendering, and the subcommands.

pub mod cli;
pub mod coeffs;
pub mod commands;
pub mod error;
pub mod reproduce;
pub mod parse;
pub mod render;
