//! Standard-library companion to `basisgrid-core`: text formats, JSON run
//! reports, timed and multi-threaded drivers, and the `basisgrid` CLI.

pub mod cli;
pub mod format;
pub mod report;
pub mod run;
