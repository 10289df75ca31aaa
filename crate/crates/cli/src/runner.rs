//! Deterministic work queue: items are built in sorted order, computed in
//! parallel on an explicitly sized pool, then written strictly in item
//! order. Data bytes never depend on the thread count; wall-clock data
//! lives only in the manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::commands::{build_items, run_item, Shared};
use crate::config::{OutputFormat, RunOptions};
use crate::records::{write_csv, write_jsonl, Record};

pub struct RunOutcome {
    pub records: Vec<Record>,
    pub data_path: PathBuf,
    pub manifest_path: PathBuf,
    pub all_valid: bool,
}

pub fn run_id_for(opts: &RunOptions) -> String {
    let mut hasher = Sha256::new();
    hasher.update(opts.canonical_string().as_bytes());
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn execute(opts: &RunOptions) -> Result<RunOutcome> {
    let started = Instant::now();
    let run_id = run_id_for(opts);
    let items = build_items(opts)?;
    let shared = Shared::for_run(opts);

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if opts.threads > 0 {
            b = b.num_threads(opts.threads);
        }
        b.build().context("building worker pool")?
    };
    let mut indexed: Vec<(usize, Record)> = pool.install(|| {
        items
            .par_iter()
            .enumerate()
            .map(|(i, item)| (i, run_item(&run_id, opts, &shared, item)))
            .collect()
    });
    indexed.sort_by_key(|&(i, _)| i);
    let records: Vec<Record> = indexed.into_iter().map(|(_, r)| r).collect();

    let data_path = data_path_for(opts);
    if let Some(parent) = data_path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    let payload = match opts.format {
        OutputFormat::Jsonl => write_jsonl(&records),
        OutputFormat::Csv => write_csv(&records),
    };
    std::fs::write(&data_path, payload)
        .with_context(|| format!("writing {}", data_path.display()))?;

    let all_valid = records.iter().all(|r| r.is_verified());
    let manifest_path = PathBuf::from(format!("{}.manifest.json", data_path.display()));
    let manifest = serde_json::json!({
        "run_id": run_id,
        "tool": "lvals",
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp": chrono::Utc::now().to_rfc3339(),
        "subcommand": opts.subcommand,
        "config": serde_json::to_value(opts)?,
        "threads_effective": if opts.threads > 0 { opts.threads } else { rayon::current_num_threads() },
        "records": records.len(),
        "verified": records.iter().filter(|r| r.is_verified()).count(),
        "wall_time_ms": started.elapsed().as_millis() as u64,
        "data_file": data_path.display().to_string(),
    });
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("writing {}", manifest_path.display()))?;

    Ok(RunOutcome { records, data_path, manifest_path, all_valid })
}

fn data_path_for(opts: &RunOptions) -> PathBuf {
    let ext = match opts.format {
        OutputFormat::Jsonl => "jsonl",
        OutputFormat::Csv => "csv",
    };
    let p = Path::new(&opts.out);
    if p.extension().is_some_and(|e| e == "jsonl" || e == "csv") {
        p.to_path_buf()
    } else {
        PathBuf::from(format!("{}.{ext}", opts.out))
    }
}
