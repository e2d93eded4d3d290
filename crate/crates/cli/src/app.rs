use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use autl_core::constructions::{builtin, builtin_corpus, BUILTINS};
use autl_core::theorems::{
    census, verify_group, AutomorphismSource, Backtracking, CheckRegistry, GroupAnalysis,
};
use autl_core::Group;
use clap::{Args, Parser, Subcommand};

use crate::cache::AutCache;
use crate::config::{default_jobs, ReportFormat, RunConfig};
use crate::groupfile::{load_dir, load_file};
use crate::report::{render_aut, render_census, render_outcome, render_verify, AutDump};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "autl", version, about = "Inner versus absolute central automorphisms of finite p-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every checker on one group and print its report.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every checker on a corpus and print per-group reports and a summary.
    Census {
        /// Include the built-in corpus (the default when no other source is given).
        #[arg(long)]
        builtin: bool,
        /// Directory of group files (*.json, *.jsonl); repeatable.
        #[arg(long = "corpus-dir", value_name = "DIR")]
        corpus_dirs: Vec<PathBuf>,
        /// Group file; repeatable.
        #[arg(long = "file", value_name = "PATH")]
        files: Vec<PathBuf>,
        /// Also write the report and one file per group here.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print automorphism group orders and invariants for one group.
    Aut {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the built-in groups.
    List,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Name of a built-in group, e.g. Q8 or heisenberg3.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Group file holding exactly one group.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Largest group order admitted into a census.
    #[arg(long, default_value_t = 243)]
    pub max_order: usize,
    /// Per-group time budget in seconds.
    #[arg(long, default_value_t = 30)]
    pub timeout: u64,
    /// Worker threads [default: logical cores].
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Persist automorphism groups here and reuse them.
    #[arg(long, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// json, csv or markdown.
    #[arg(long, default_value = "json")]
    pub format: ReportFormat,
    /// Largest automorphism group that will be enumerated.
    #[arg(long, default_value_t = autl_core::automorphism::DEFAULT_AUT_CAP)]
    pub aut_cap: usize,
    /// Primary route for Aut_l: filter or constrained.
    #[arg(long, default_value = "filter")]
    pub autl_route: String,
    /// Comma-separated checker ids to run [default: all].
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
}

impl CommonArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            max_order: self.max_order,
            aut_cap: self.aut_cap,
            timeout_secs: self.timeout,
            jobs: self.jobs.unwrap_or_else(default_jobs),
            cache_dir: self.cache_dir.clone(),
            format: self.format,
            autl_route: self.autl_route.clone(),
            checks: self.checks.clone(),
        }
    }
}

/// Output sinks, so tests can capture what the binary prints.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

struct Failure(i32, String);

impl<E: std::fmt::Display> From<(i32, E)> for Failure {
    fn from((code, e): (i32, E)) -> Self {
        Failure(code, e.to_string())
    }
}

pub fn run(cli: Cli, io: &mut Io<'_>) -> i32 {
    let result = match cli.command {
        Command::Verify { source, common } => verify(&source, &common.config(), io),
        Command::Census { builtin, corpus_dirs, files, out_dir, common } => {
            let use_builtin = builtin || (corpus_dirs.is_empty() && files.is_empty());
            run_census(use_builtin, &corpus_dirs, &files, out_dir.as_deref(), &common.config(), io)
        }
        Command::Aut { source, common } => aut(&source, &common.config(), io),
        Command::List => {
            for b in BUILTINS {
                let aliases = if b.aliases.is_empty() { String::new() } else { format!(" ({})", b.aliases.join(", ")) };
                let _ = writeln!(io.out, "{:<20} {:>4}{aliases}", b.name, b.order);
            }
            Ok(EXIT_OK)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(io.err, "error: {message}");
            code
        }
    }
}

fn registry(config: &RunConfig) -> Result<CheckRegistry, Failure> {
    if config.checks.is_empty() {
        return Ok(CheckRegistry::standard());
    }
    CheckRegistry::standard().select(&config.checks).map_err(|e| (EXIT_INPUT, e).into())
}

fn prepare(config: &RunConfig) -> Result<(CheckRegistry, Box<dyn AutomorphismSource>), Failure> {
    config.validate().map_err(|e| Failure(EXIT_INPUT, e))?;
    config.settings().route().map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    let registry = registry(config)?;
    let source: Box<dyn AutomorphismSource> = match &config.cache_dir {
        Some(dir) => Box::new(AutCache::new(dir).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", dir.display())))?),
        None => Box::new(Backtracking),
    };
    Ok((registry, source))
}

fn resolve(source: &SourceArgs) -> Result<Group, Failure> {
    if let Some(name) = &source.builtin {
        let b = builtin(name).ok_or_else(|| Failure(EXIT_INPUT, format!("unknown built-in group `{name}` (see `autl list`)")))?;
        return b.build().map_err(|e| (EXIT_INPUT, e).into());
    }
    let path = source.file.as_ref().expect("clap requires one source");
    let mut entries = load_file(path).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    if entries.len() != 1 {
        return Err(Failure(EXIT_INPUT, format!("{}: expected exactly one group, found {}", path.display(), entries.len())));
    }
    entries.remove(0).group.map_err(|e| (EXIT_INPUT, e).into())
}

fn limit_or_input(e: &autl_core::Error) -> i32 {
    if e.is_resource_limit() {
        EXIT_LIMIT
    } else {
        EXIT_INPUT
    }
}

fn verify(source: &SourceArgs, config: &RunConfig, io: &mut Io<'_>) -> Result<i32, Failure> {
    let (registry, aut_source) = prepare(config)?;
    let g = resolve(source)?;
    let report = verify_group(&g, &registry, aut_source.as_ref(), &config.settings())
        .map_err(|e| Failure(limit_or_input(&e), format!("{}: {e}", g.label())))?;
    let _ = io.out.write_all(render_verify(&report, config.format).as_bytes());
    Ok(if report.has_failure() { EXIT_FAILS } else { EXIT_OK })
}

fn aut(source: &SourceArgs, config: &RunConfig, io: &mut Io<'_>) -> Result<i32, Failure> {
    let (_, aut_source) = prepare(config)?;
    let g = resolve(source)?;
    let settings = config.settings();
    let route = settings.route().map_err(|e| (EXIT_INPUT, e))?;
    let dump = settings
        .pool()
        .install(|| {
            GroupAnalysis::compute(&g, aut_source.as_ref(), route, &settings.aut_config())
                .map(|a| AutDump::from_analysis(&a))
        })
        .map_err(|e| Failure(limit_or_input(&e), format!("{}: {e}", g.label())))?;
    let _ = io.out.write_all(render_aut(&dump, config.format).as_bytes());
    Ok(EXIT_OK)
}

fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn run_census(
    use_builtin: bool,
    dirs: &[PathBuf],
    files: &[PathBuf],
    out_dir: Option<&Path>,
    config: &RunConfig,
    io: &mut Io<'_>,
) -> Result<i32, Failure> {
    let (registry, source) = prepare(config)?;
    let mut groups = Vec::new();
    if use_builtin {
        groups = builtin_corpus(config.max_order).map_err(|e| (EXIT_INPUT, e))?;
    }
    let mut entries = Vec::new();
    for d in dirs {
        entries.extend(load_dir(d).map_err(|e| (EXIT_INPUT, e))?);
    }
    for f in files {
        entries.extend(load_file(f).map_err(|e| (EXIT_INPUT, e))?);
    }
    let mut skipped = 0;
    for entry in entries {
        match entry.group {
            Ok(g) if g.order() > config.max_order => {
                skipped += 1;
                let _ = writeln!(io.err, "skipped {}: order {} exceeds --max-order {}", entry.origin, g.order(), config.max_order);
            }
            Ok(g) => groups.push(g),
            Err(e) => {
                skipped += 1;
                let _ = writeln!(io.err, "skipped {e}");
            }
        }
    }

    let result = census(&groups, &registry, source.as_ref(), &config.settings()).map_err(|e| (EXIT_INPUT, e))?;
    let ids: Vec<String> = registry.ids().into_iter().map(String::from).collect();
    let rendered = render_census(&result, &ids, config.format);
    let _ = io.out.write_all(rendered.as_bytes());

    if let Some(dir) = out_dir {
        let write = |path: PathBuf, text: &str| fs::write(&path, text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())));
        let groups_dir = dir.join("groups");
        fs::create_dir_all(&groups_dir).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", groups_dir.display())))?;
        let ext = config.format.extension();
        write(dir.join(format!("census.{ext}")), &rendered)?;
        for (i, o) in result.outcomes.iter().enumerate() {
            let name = format!("{:03}-{}.{ext}", i + 1, file_stem(o.label()));
            write(groups_dir.join(name), &render_outcome(o, &ids, config.format))?;
        }
    }

    let s = &result.summary;
    let _ = writeln!(
        io.err,
        "census: {} groups, {} analysed, {} errors, {} skipped, {} fails",
        s.groups, s.analysed, s.errors, skipped, s.total_fails
    );
    for o in &result.outcomes {
        if let autl_core::theorems::GroupOutcome::Error { label, error, .. } = o {
            let _ = writeln!(io.err, "error {label}: {error}");
        }
    }
    Ok(if s.total_fails > 0 { EXIT_FAILS } else { EXIT_OK })
}

impl Cli {
    /// Parses and runs, returning the exit code.
    pub fn run_args<I, T>(args: I, io: &mut Io<'_>) -> i32
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        match Cli::try_parse_from(args) {
            Ok(cli) => run(cli, io),
            Err(e) => {
                let _ = write!(io.err, "{e}");
                if e.use_stderr() {
                    EXIT_INPUT
                } else {
                    EXIT_OK
                }
            }
        }
    }
}
