//! Script language, runner, SVG output and the `demo whitehead` pipeline
//! behind the `pi1lab` binary.

pub mod demo;
pub mod dsl;
pub mod runner;
pub mod svg;

/// Environment variable overriding the number of decimals in reports.
pub const DIGITS_VAR: &str = "PI1LAB_DIGITS";
