//! Run configuration: defaults, an optional TOML file, then command-line
//! flags, in that order of precedence (flags win). The merged result is
//! echoed into the run manifest so every output is reproducible from its
//! manifest alone.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use lvals_core::modarith::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(OutputFormat::Jsonl),
            "csv" => Ok(OutputFormat::Csv),
            other => bail!("unknown format {other:?} (expected jsonl or csv)"),
        }
    }
}

/// Parsed --subgroups value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Subgroups {
    All,
    Even,
    List(Vec<u64>),
}

impl std::str::FromStr for Subgroups {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Subgroups::All),
            "even" => Ok(Subgroups::Even),
            list => {
                let v: Result<Vec<u64>> = list
                    .split(',')
                    .filter(|p| !p.is_empty())
                    .map(|p| p.trim().parse::<u64>().context("bad divisor list"))
                    .collect();
                Ok(Subgroups::List(v?))
            }
        }
    }
}

/// Parse a q specification: "499", "13,101,499" or "100..1000"
/// (inclusive range of primes).
pub fn parse_q_spec(spec: &str) -> Result<Vec<u64>> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo.trim().parse().context("bad range start")?;
        let hi: u64 = hi.trim().parse().context("bad range end")?;
        if hi < lo {
            bail!("empty q range {lo}..{hi}");
        }
        return Ok((lo..=hi).filter(|&n| is_prime(n) && n > 2).collect());
    }
    spec.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse::<u64>().context("bad q value"))
        .collect()
}

/// Fully resolved run options; serialized into the manifest verbatim.
#[derive(Debug, Clone, Serialize)]
pub struct RunOptions {
    pub subcommand: String,
    pub q_spec: String,
    pub subgroups: Subgroups,
    pub out: String,
    pub format: OutputFormat,
    pub threads: usize,
    pub cutoff_euler: f64,
    pub cutoff_resonator: u64,
    pub cutoff_primesum: f64,
    pub afe_a: u32,
    pub kappa: f64,
    pub delta: f64,
    pub eta: f64,
    pub c: f64,
    pub b_sigma: String,
    pub sigma: f64,
    pub t_height: f64,
    pub h_target: u64,
    pub n: u64,
    pub hlen: u64,
    pub hscale: u64,
    pub alpha: f64,
    pub alpha_grid: u64,
    pub gamma: f64,
    pub r_count: u64,
    pub seed: u64,
    pub extra: BTreeMap<String, String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            subcommand: String::new(),
            q_spec: String::new(),
            subgroups: Subgroups::All,
            out: String::new(),
            format: OutputFormat::Jsonl,
            threads: 0, // 0 = library default
            cutoff_euler: 1e6,
            cutoff_resonator: 100_000,
            cutoff_primesum: 1e5,
            afe_a: 4,
            kappa: 0.3,
            delta: 1.0,
            eta: 0.02,
            c: 1.0,
            b_sigma: "theorem".into(),
            sigma: 0.75,
            t_height: 5.0,
            h_target: 0, // 0 = derive from subgroup and q
            n: 0,        // 0 = derive from q
            hlen: 0,
            hscale: 0,
            alpha: 0.0,
            alpha_grid: 1,
            gamma: 1.0,
            r_count: 16,
            seed: 1,
            extra: BTreeMap::new(),
        }
    }
}

fn toml_f64(v: &toml::Value) -> Option<f64> {
    v.as_float().or_else(|| v.as_integer().map(|i| i as f64))
}

impl RunOptions {
    /// Overlay a TOML config file: top-level keys apply to every
    /// subcommand, a table named after the subcommand overrides them.
    pub fn apply_file(&mut self, path: &Path, subcommand: &str) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let root: toml::Value = text.parse().context("parsing config")?;
        let tables: Vec<&toml::Value> = match &root {
            toml::Value::Table(t) => {
                let mut v = vec![&root];
                if let Some(sub) = t.get(subcommand) {
                    v.push(sub);
                }
                v
            }
            _ => bail!("config root must be a table"),
        };
        for tab in tables {
            let Some(t) = tab.as_table() else { continue };
            for (k, v) in t {
                if v.is_table() {
                    continue; // subcommand sections handled above
                }
                self.apply_kv(k, v)?;
            }
        }
        Ok(())
    }

    fn apply_kv(&mut self, key: &str, v: &toml::Value) -> Result<()> {
        let missing = || anyhow::anyhow!("config key {key} has the wrong type");
        match key {
            "q" => {
                self.q_spec = match v {
                    toml::Value::String(s) => s.clone(),
                    toml::Value::Integer(i) => i.to_string(),
                    toml::Value::Array(a) => a
                        .iter()
                        .map(|x| x.as_integer().map(|i| i.to_string()))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(missing)?
                        .join(","),
                    _ => bail!("config key q must be string, integer or array"),
                }
            }
            "subgroups" => {
                self.subgroups = v.as_str().ok_or_else(missing)?.parse()?;
            }
            "format" => self.format = v.as_str().ok_or_else(missing)?.parse()?,
            "out" => self.out = v.as_str().ok_or_else(missing)?.into(),
            "threads" => self.threads = v.as_integer().ok_or_else(missing)? as usize,
            "cutoff-euler" => self.cutoff_euler = toml_f64(v).ok_or_else(missing)?,
            "cutoff-resonator" => {
                self.cutoff_resonator = v.as_integer().ok_or_else(missing)? as u64
            }
            "cutoff-primesum" => self.cutoff_primesum = toml_f64(v).ok_or_else(missing)?,
            "afe-a" => self.afe_a = v.as_integer().ok_or_else(missing)? as u32,
            "kappa" => self.kappa = toml_f64(v).ok_or_else(missing)?,
            "delta" => self.delta = toml_f64(v).ok_or_else(missing)?,
            "eta" => self.eta = toml_f64(v).ok_or_else(missing)?,
            "c" => self.c = toml_f64(v).ok_or_else(missing)?,
            "b-sigma" => self.b_sigma = v.as_str().ok_or_else(missing)?.into(),
            "sigma" => self.sigma = toml_f64(v).ok_or_else(missing)?,
            "t-height" => self.t_height = toml_f64(v).ok_or_else(missing)?,
            "h-target" => self.h_target = v.as_integer().ok_or_else(missing)? as u64,
            "n" => self.n = v.as_integer().ok_or_else(missing)? as u64,
            "hlen" => self.hlen = v.as_integer().ok_or_else(missing)? as u64,
            "hscale" => self.hscale = v.as_integer().ok_or_else(missing)? as u64,
            "alpha" => self.alpha = toml_f64(v).ok_or_else(missing)?,
            "alpha-grid" => self.alpha_grid = v.as_integer().ok_or_else(missing)? as u64,
            "gamma" => self.gamma = toml_f64(v).ok_or_else(missing)?,
            "r" => self.r_count = v.as_integer().ok_or_else(missing)? as u64,
            "seed" => self.seed = v.as_integer().ok_or_else(missing)? as u64,
            other => {
                self.extra.insert(other.into(), v.to_string());
            }
        }
        Ok(())
    }

    /// Canonical one-line echo, hashed into the run id. Execution details
    /// (thread count, output location) are stripped: they must never
    /// influence data bytes.
    pub fn canonical_string(&self) -> String {
        let mut v = serde_json::to_value(self).expect("options serialize");
        if let Some(map) = v.as_object_mut() {
            map.remove("threads");
            map.remove("out");
            map.remove("format");
        }
        serde_json::to_string(&v).expect("canonical serialize")
    }
}
