use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use autl_core::automorphism::DEFAULT_AUT_CAP;
use autl_core::theorems::RunSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "md",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown format `{other}` (expected json, csv or markdown)")),
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub max_order: usize,
    pub aut_cap: usize,
    pub timeout_secs: u64,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: ReportFormat,
    pub autl_route: String,
    /// Empty means every registered checker.
    pub checks: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_order: 243,
            aut_cap: DEFAULT_AUT_CAP,
            timeout_secs: 30,
            jobs: default_jobs(),
            cache_dir: None,
            format: ReportFormat::Json,
            autl_route: "filter".into(),
            checks: Vec::new(),
        }
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("max-order", self.max_order as u64),
            ("aut-cap", self.aut_cap as u64),
            ("timeout", self.timeout_secs),
            ("jobs", self.jobs as u64),
        ] {
            if v == 0 {
                return Err(format!("--{name} must be positive"));
            }
        }
        Ok(())
    }

    pub fn settings(&self) -> RunSettings {
        RunSettings {
            aut_cap: self.aut_cap,
            timeout: Duration::from_secs(self.timeout_secs),
            jobs: self.jobs,
            autl_route: self.autl_route.clone(),
        }
    }
}
