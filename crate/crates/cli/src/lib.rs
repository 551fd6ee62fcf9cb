//! Command-line surface for the `maxdim` tool: group description files,
//! JSON reports and the on-disk result cache.

pub mod cache;
pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, Cli};
pub use report::{decode_report, encode_report, Report};
pub use spec::{parse_group_spec, serialize_group_spec, GroupSpec, SpecError};
