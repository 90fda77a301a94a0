use std::fs;
use std::path::Path;

use clap::ValueEnum;

use crate::error::{CliError, CliResult};

/// Environment variable that overrides the thread count.
pub const THREADS_ENV: &str = "WEYL_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn parse(s: &str) -> CliResult<Self> {
        Format::from_str(s, true).map_err(|_| CliError::usage(format!("unknown format '{s}'")))
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub threads: usize,
    pub work_budget: u128,
    pub seed: u64,
    pub format: Format,
}

/// Values that may come from the config file or the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub threads: Option<usize>,
    pub work_budget: Option<u128>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value.parse().map_err(|_| CliError::usage(format!("invalid value '{value}' for '{key}'")))
}

/// Reads `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; unknown keys are an error.
pub fn parse_config_file(text: &str) -> CliResult<Overrides> {
    let mut out = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!("config line {}: expected key=value", lineno + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "threads" => out.threads = Some(parse_value(key, value)?),
            "work_budget" => out.work_budget = Some(parse_value(key, value)?),
            "seed" => out.seed = Some(parse_value(key, value)?),
            "format" => out.format = Some(Format::parse(value)?),
            _ => return Err(CliError::usage(format!("config line {}: unknown key '{key}'", lineno + 1))),
        }
    }
    Ok(out)
}

pub fn load_config_file(path: &Path) -> CliResult<Overrides> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(&path.display().to_string(), e))?;
    parse_config_file(&text)
}

/// Config file, then flags, then (for the thread count only) the
/// environment.
pub fn resolve(file: Overrides, flags: Overrides, env_threads: Option<String>) -> CliResult<RunConfig> {
    let env_threads = match env_threads {
        Some(v) if !v.trim().is_empty() => Some(parse_value::<usize>(THREADS_ENV, v.trim())?),
        _ => None,
    };
    let threads = env_threads
        .or(flags.threads)
        .or(file.threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(CliError::usage("threads must be at least 1"));
    }
    Ok(RunConfig {
        threads,
        work_budget: flags.work_budget.or(file.work_budget).unwrap_or(weyl_lab::WorkBudget::DEFAULT_EVALUATIONS),
        seed: flags.seed.or(file.seed).unwrap_or(weyl_lab::lpcordoba::DEFAULT_FAMILY_SEED),
        format: flags.format.or(file.format).unwrap_or(Format::Csv),
    })
}
