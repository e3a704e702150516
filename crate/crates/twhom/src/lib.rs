//! File formats, graph specifiers, run reports, experiments and the
//! command-line front end for `twhom-core`.

pub mod budget;
pub mod cli;
pub mod commands;
pub mod experiments;
pub mod formats;
pub mod parallel;
pub mod report;
pub mod specifier;
