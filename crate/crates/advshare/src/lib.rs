//! File formats, JSON reports and the `advshare` command line on top of
//! `advshare-core`.

pub mod cli;
pub mod format;
pub mod report;

pub use cli::{run, Outcome};
pub use report::Report;
