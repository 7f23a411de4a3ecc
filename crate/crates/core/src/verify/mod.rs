//! Executable checks of control-of-fusion statements on concrete groups.

mod checks;
mod report;
mod sweep;

pub use checks::*;
pub use report::{CheckKind, ReportFile, Skipped, VerificationReport};
pub use sweep::*;
