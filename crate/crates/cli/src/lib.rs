//! Command-line front end: expression language, setup files and commands.

pub mod arith;
pub mod commands;
pub mod config;
pub mod eval;
pub mod expr;
