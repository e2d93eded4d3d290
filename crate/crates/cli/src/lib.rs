//! Command-line harness: group files, configuration, caching and reports.

pub mod app;
pub mod cache;
pub mod config;
pub mod groupfile;
pub mod report;
