//! Command-line front end for `affine-fk`: `compute` prints single objects,
//! `verify` runs identity checks over enumerated ranges and `cache` manages
//! the on-disk tables.

pub mod args;
pub mod bounds;
pub mod cache;
pub mod compute;
pub mod error;
pub mod report;
pub mod suites;

use serde_json::json;

use crate::args::{CacheCmd, Cli, Command, Format};
use crate::cache::{Cache, CacheKey, Lookup};
use crate::compute::Context;
use crate::error::{exit, HarnessError, Result};
use crate::suites::SuiteOptions;

/// What a command prints and the status it exits with.
pub struct Response {
    pub output: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Response> {
    let g = &cli.global;
    let max_degree = bounds::max_degree(g.max_degree)?;
    affine_fk::symfunc::set_degree_bound(max_degree);
    if g.format == Format::Csv && !matches!(cli.command, Command::Compute(args::ComputeCmd::Structure { .. })) {
        return Err(HarnessError::Usage(
            "--format csv is only available for `compute structure`".into(),
        ));
    }
    match &cli.command {
        Command::Compute(cmd) => {
            let n = bounds::check_n(g.n.ok_or_else(|| HarnessError::Usage("compute needs --n".into()))?)?;
            let ctx = Context {
                n,
                max_length: bounds::max_length(n, g.max_length)?,
                max_degree,
                cache: Cache::from_flag(g.cache_dir.as_deref())?,
            };
            let out = compute::run(&ctx, cmd)?;
            Ok(Response {
                output: out.render(g.format)?,
                code: exit::PASS,
            })
        }
        Command::Verify(v) => {
            let opts = SuiteOptions {
                n: g.n,
                max_length: g.max_length,
                max_degree: g.max_degree,
                samples: v.samples,
                seed: v.seed,
            };
            let report = suites::run(v.suite, &opts)?;
            let output = match g.format {
                Format::Text => report.to_text().trim_end().to_string(),
                _ => serde_json::to_string_pretty(&report)?,
            };
            Ok(Response {
                output,
                code: if report.passed { exit::PASS } else { exit::CHECK_FAILED },
            })
        }
        Command::Cache(cmd) => {
            let cache = Cache::from_flag(g.cache_dir.as_deref())?.ok_or_else(|| {
                HarnessError::Usage(format!("cache commands need --cache-dir or ${}", cache::ENV_CACHE_DIR))
            })?;
            cache_command(&cache, cmd, g, max_degree)
        }
    }
}

fn cache_command(cache: &Cache, cmd: &CacheCmd, g: &args::GlobalArgs, max_degree: usize) -> Result<Response> {
    let mut rows = Vec::new();
    let mut code = exit::PASS;
    match cmd {
        CacheCmd::Warm => {
            let ns = match g.n {
                Some(n) => vec![bounds::check_n(n)?],
                None => vec![2, 3, 4],
            };
            for n in ns {
                let top = bounds::max_length(n, g.max_length)?.min(max_degree);
                for d in 0..=top {
                    let key = CacheKey::new(n, "schubert", d);
                    cache.get_or_compute(&key, || compute::schubert_payload(n, d))?;
                    rows.push(json!({"path": cache.path(&key), "status": "ok"}));
                    if d > 0 {
                        let key = CacheKey::new(n, "kschur", d);
                        cache.get_or_compute(&key, || compute::kschur_payload(n, d))?;
                        rows.push(json!({"path": cache.path(&key), "status": "ok"}));
                    }
                }
            }
        }
        CacheCmd::Check => {
            for (path, status) in cache.check()? {
                let status = match status {
                    Lookup::Hit(_) => "ok".to_string(),
                    Lookup::Stale(v) => format!("stale (schema version {v})"),
                    Lookup::Quarantined(to) => {
                        code = exit::CHECK_FAILED;
                        format!("quarantined to {}", to.display())
                    }
                    Lookup::Miss => "missing".to_string(),
                };
                rows.push(json!({"path": path, "status": status}));
            }
        }
        CacheCmd::List => {
            for path in cache.entries()? {
                rows.push(json!({"path": path}));
            }
        }
        CacheCmd::Clear => {
            let removed = cache.clear()?;
            rows.push(json!({"removed": removed}));
        }
    }
    let output = match g.format {
        Format::Text => rows
            .iter()
            .map(|r| match (r.get("path"), r.get("status")) {
                (Some(p), Some(s)) => format!("{} {}", p.as_str().unwrap_or_default(), s.as_str().unwrap_or_default()),
                (Some(p), None) => p.as_str().unwrap_or_default().to_string(),
                _ => r.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => serde_json::to_string_pretty(&rows)?,
    };
    Ok(Response { output, code })
}
