//! Library surface of the CLI: scenario ingestion, command execution and
//! deterministic CSV/SVG emission. The `d2dyn` binary is a thin argument
//! parser over these modules.

pub mod commands;
pub mod format;
pub mod scenario;
pub mod svg;
