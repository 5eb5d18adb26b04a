//! File formats, reports and the command-line front end for `simplicial-core`.

pub mod cli;
pub mod formats;
pub mod plot;
