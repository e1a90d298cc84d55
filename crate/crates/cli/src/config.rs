//! Run configuration: command-line flags override `ONEPW_*` environment
//! variables, which override a `onepw.conf` file (`key = value` lines)
//! in the working directory.

use std::path::PathBuf;
use std::time::Duration;

use onepw_core::search::SearchBudget;

pub const CONFIG_FILE: &str = "onepw.conf";

/// Keys: max_crossings, max_nodes, time_limit_secs, symmetry, jobs,
/// cache. Environment variables use the upper-cased key with an
/// `ONEPW_` prefix.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub max_crossings: Option<usize>,
    pub max_nodes: Option<u64>,
    pub time_limit_secs: Option<u64>,
    pub symmetry: Option<bool>,
    pub jobs: Option<usize>,
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub budget: SearchBudget,
    pub jobs: usize,
    pub cache: PathBuf,
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "1" | "true" | "on" | "yes" => Some(true),
        "0" | "false" | "off" | "no" => Some(false),
        _ => None,
    }
}

fn file_overrides() -> Result<Overrides, String> {
    let mut o = Overrides::default();
    let Ok(text) = std::fs::read_to_string(CONFIG_FILE) else {
        return Ok(o);
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{CONFIG_FILE}:{}: expected `key = value`", i + 1))?;
        apply(&mut o, key.trim(), value.trim())
            .map_err(|e| format!("{CONFIG_FILE}:{}: {e}", i + 1))?;
    }
    Ok(o)
}

fn env_overrides() -> Result<Overrides, String> {
    let mut o = Overrides::default();
    for key in [
        "max_crossings",
        "max_nodes",
        "time_limit_secs",
        "symmetry",
        "jobs",
        "cache",
    ] {
        let var = format!("ONEPW_{}", key.to_uppercase());
        if let Ok(value) = std::env::var(&var) {
            apply(&mut o, key, &value).map_err(|e| format!("{var}: {e}"))?;
        }
    }
    Ok(o)
}

fn apply(o: &mut Overrides, key: &str, value: &str) -> Result<(), String> {
    let bad = || format!("bad value `{value}` for {key}");
    match key {
        "max_crossings" => o.max_crossings = Some(value.parse().map_err(|_| bad())?),
        "max_nodes" => o.max_nodes = Some(value.parse().map_err(|_| bad())?),
        "time_limit_secs" => o.time_limit_secs = Some(value.parse().map_err(|_| bad())?),
        "symmetry" => o.symmetry = Some(parse_bool(value).ok_or_else(bad)?),
        "jobs" => o.jobs = Some(value.parse().map_err(|_| bad())?),
        "cache" => o.cache = Some(PathBuf::from(value)),
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

fn merge(base: Overrides, over: Overrides) -> Overrides {
    Overrides {
        max_crossings: over.max_crossings.or(base.max_crossings),
        max_nodes: over.max_nodes.or(base.max_nodes),
        time_limit_secs: over.time_limit_secs.or(base.time_limit_secs),
        symmetry: over.symmetry.or(base.symmetry),
        jobs: over.jobs.or(base.jobs),
        cache: over.cache.or(base.cache),
    }
}

/// Resolves the effective configuration; `flags` wins over environment,
/// environment over file, file over defaults.
pub fn resolve(flags: Overrides) -> Result<RunConfig, String> {
    let o = merge(merge(file_overrides()?, env_overrides()?), flags);
    let default = SearchBudget::default();
    let budget = SearchBudget {
        max_crossings: o.max_crossings.unwrap_or(default.max_crossings),
        max_nodes: o.max_nodes.unwrap_or(default.max_nodes),
        time_limit: Duration::from_secs(o.time_limit_secs.unwrap_or(3600)),
        use_symmetry: o.symmetry.unwrap_or(true),
    };
    if budget.max_crossings == 0 || budget.max_nodes == 0 || budget.time_limit.is_zero() {
        return Err("budget fields must be positive".into());
    }
    let jobs = o.jobs.unwrap_or(1);
    if jobs == 0 {
        return Err("jobs must be positive".into());
    }
    Ok(RunConfig {
        budget,
        jobs,
        cache: o.cache.unwrap_or_else(|| PathBuf::from("onepw-cache.txt")),
    })
}
