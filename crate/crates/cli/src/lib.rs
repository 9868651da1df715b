//! Report types and command implementations behind the `mm` binary.

pub mod commands;
pub mod report;

pub use commands::{Ctx, Target, UsageError};
pub use report::{Check, Report, Status};
