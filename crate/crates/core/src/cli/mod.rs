//! Job files, their execution, and report rendering.

pub mod parse;
pub mod run;

pub use parse::{parse_job, resolve_ideal, Command, IdealDecl, IdealExpr, JobSpec, RingDecl};
pub use run::{run_job, JobOutput, RunOptions, SCHEMA_VERSION};
