//! Library half of the `dualgraph` binary.

pub mod cmd;
pub mod dot;
pub mod dsl;
pub mod report;
