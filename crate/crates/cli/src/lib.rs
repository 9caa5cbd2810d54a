//! Library half of the `posmon` binary: flag resolution, execution,
//! rendering and caching. [`run`] is the whole program.
//!
//! Exit status: 0 on success, 1 on a usage or input error, 2 when a
//! certificate fails its re-check.

pub mod args;
pub mod cache;
pub mod exec;
pub mod render;
pub mod report;
pub mod resolve;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use posmon_core::Error;

use crate::args::{Cli, FileConfig, Format};
use crate::cache::{Cache, Lookup};
use crate::report::Report;

pub const SUCCESS: u8 = 0;
pub const USAGE: u8 = 1;
pub const VERIFICATION: u8 = 2;

fn fail(code: u8, msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    code
}

/// Parses `argv`, runs the command, prints the report and returns the exit status.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return USAGE;
        }
    };
    let cfg = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(c) => c,
            Err(msg) => return fail(USAGE, msg),
        },
        None => FileConfig::default(),
    };
    let query = match resolve::query(&cli.command, &cfg) {
        Ok(q) => q,
        Err(resolve::Usage(msg)) => return fail(USAGE, msg),
    };
    let format = cli.format.or(cfg.format).unwrap_or(Format::Json);
    let row_cap = cli.row_cap.or(cfg.row_cap).unwrap_or(render::DEFAULT_ROW_CAP);
    let parallel = cli.parallel || cfg.parallel.unwrap_or(false);
    let no_cache = cli.no_cache || cfg.no_cache.unwrap_or(false);
    let cache = if no_cache {
        None
    } else {
        cli.cache_dir
            .clone()
            .or_else(|| cfg.cache_dir.clone())
            .or_else(|| std::env::var_os("POSMON_CACHE_DIR").map(Into::into))
            .map(Cache::new)
    };

    let key = cache::cache_key(&query);
    let mut cached = None;
    if let Some(c) = &cache {
        match c.load(&key, &query) {
            Lookup::Hit { text, report } if report.outcome.verification_failures().is_empty() => {
                eprintln!("cache hit: {key}");
                cached = Some((text, *report));
            }
            Lookup::Hit { .. } => {
                eprintln!("warning: cached entry {key} failed re-verification; recomputing");
            }
            Lookup::Corrupt(why) => eprintln!("warning: corrupt cache entry ({why}); recomputing"),
            Lookup::Miss => {}
        }
    }
    let (text, report) = match cached {
        Some(hit) => hit,
        None => {
            let outcome = match exec::execute(&query, parallel) {
                Ok(o) => o,
                Err(e @ Error::VerificationFailed(_)) => return fail(VERIFICATION, e),
                Err(e) => return fail(USAGE, e),
            };
            let report = Report::new(query, outcome);
            let text = report.to_json();
            if let Some(c) = &cache {
                if let Err(e) = c.store(&key, &text) {
                    eprintln!("warning: cannot write cache entry in {}: {e}", c.dir().display());
                }
            }
            (text, report)
        }
    };

    let rendered = match format {
        Format::Json => text,
        Format::Table => render::table(&report, row_cap),
        Format::Csv => render::csv(&report),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(rendered.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return USAGE;
    }
    let failures = report.outcome.verification_failures();
    if !failures.is_empty() {
        return fail(VERIFICATION, format!("verification failed: {}", failures.join(", ")));
    }
    SUCCESS
}
