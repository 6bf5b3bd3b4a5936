//! The `fuzzyloc` command-line harness.
//!
//! Each subcommand is also callable as a function so tests can drive it
//! without spawning a process.

pub mod args;
pub mod bench;
pub mod generate;
pub mod solve;
pub mod tune;
pub mod validate;

use std::ffi::OsString;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::Context;
use clap::Parser;
use fuzzyloc_core::{load_instance, load_table1, Error as CoreError, Instance, DEFAULT_ENUMERATION_BUDGET};

use crate::args::{Cli, Command, ModelArgs};

/// Overrides the enumeration budget used by `--algo brute` and `--exact-bounds`.
pub const BUDGET_ENV: &str = "FUZZYLOC_ENUM_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Runtime(e) => write!(f, "error: {e:#}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Generate(a) => generate::cmd_generate(&a),
        Command::Solve(a) => solve::cmd_solve(&a).map(|_| ()),
        Command::Bench(a) => bench::cmd_bench(&a).map(|_| ()),
        Command::Tune(a) => tune::cmd_tune(&a).map(|_| ()),
        Command::Validate(a) => validate::cmd_validate(&a).map(|_| ()),
    }
}

/// Enumeration budget from the environment, or the default.
pub fn enumeration_budget() -> CliResult<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_BUDGET),
    }
}

pub fn apply_overrides(instance: Instance, model: &ModelArgs) -> CliResult<Instance> {
    if model.gamma.is_none() && model.logit.is_none() {
        return Ok(instance);
    }
    instance
        .modify(|d| {
            if let Some(g) = model.gamma {
                d.gamma = g;
            }
            if let Some(a) = model.logit {
                d.logit_sensitivity = a;
            }
        })
        .map_err(usage_error)
}

/// An instance plus the id used for it in result files.
pub struct NamedInstance {
    pub id: String,
    pub instance: Instance,
}

pub fn load_named(path: Option<&Path>, table1: bool, model: &ModelArgs) -> CliResult<NamedInstance> {
    let (id, instance) = match path {
        Some(p) if !table1 => (instance_id(p), read_instance(p)?),
        _ => ("table1".to_string(), load_table1().map_err(anyhow::Error::from)?),
    };
    Ok(NamedInstance { id, instance: apply_overrides(instance, model)? })
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    load_instance(path).with_context(|| format!("cannot load instance {}", path.display())).map_err(CliError::from)
}

pub fn instance_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

/// `;`-joined 1-based indices.
pub fn facilities_field(open: &[usize]) -> String {
    open.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(";")
}

pub fn core_error(e: CoreError) -> CliError {
    match e {
        CoreError::Domain(m) => CliError::Usage(m),
        other => CliError::Runtime(other.into()),
    }
}

/// A core error caused by a bad flag value.
pub fn usage_error(e: CoreError) -> CliError {
    match e {
        CoreError::Domain(m) | CoreError::InvalidInstance(m) => CliError::Usage(m),
        other => CliError::Usage(other.to_string()),
    }
}

/// Maps `f` over `items` on up to `jobs` threads, keeping input order.
pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= items.len() {
                    break;
                }
                let r = f(&items[k]);
                slots.lock().expect("no worker panics while holding the lock")[k] = Some(r);
            });
        }
    });
    slots.into_inner().expect("workers joined").into_iter().map(|r| r.expect("every slot filled")).collect()
}

pub(crate) fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
