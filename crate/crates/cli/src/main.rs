//! `lvals`: map each extreme-value, mean-value, zero-density and spacing
//! experiment onto a subcommand, emit machine-readable JSONL/CSV rows plus
//! a manifest, and exit nonzero if any record failed validation.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use lvals_cli::config::{OutputFormat, RunOptions, Subgroups};
use lvals_cli::runner;

#[derive(Parser)]
#[command(name = "lvals", version, about = "Numerical experiments on Dirichlet L-functions over subgroups of characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Prime modulus: single value, comma list, or inclusive range "a..b"
    #[arg(long)]
    q: Option<String>,
    /// Subgroup orders: all | even | comma-separated divisors of q-1
    #[arg(long)]
    subgroups: Option<String>,
    /// Output path (extension .jsonl/.csv optional)
    #[arg(long)]
    out: Option<String>,
    /// Output format
    #[arg(long, value_parser = ["jsonl", "csv"])]
    format: Option<String>,
    /// TOML config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads (default: LVALS_THREADS env var, then machine parallelism)
    #[arg(long)]
    threads: Option<usize>,
    /// Finite Euler product cutoff X2
    #[arg(long = "cutoff-euler")]
    cutoff_euler: Option<f64>,
    /// Resonator support truncation
    #[arg(long = "cutoff-resonator")]
    cutoff_resonator: Option<u64>,
    /// Smoothing sharpness A of the approximate functional equation
    #[arg(long = "afe-A")]
    afe_a: Option<u32>,
    /// Resonator length coefficient kappa
    #[arg(long)]
    kappa: Option<f64>,
    /// Margin parameter delta
    #[arg(long)]
    delta: Option<f64>,
    /// Random seed for coefficient/character draws
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SigmaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Real point sigma in (1/2, 1)
    #[arg(long)]
    sigma: Option<f64>,
    /// Prime-sum length X
    #[arg(long = "cutoff-primesum")]
    cutoff_primesum: Option<f64>,
    /// Subgroup-size exponent form: the theorem statement or the proof body
    #[arg(long = "b-sigma", value_parser = ["theorem", "proof"])]
    b_sigma: Option<String>,
}

#[derive(Args, Debug)]
struct HalfArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Structured-set size target h (default: floor(H / sqrt(q)), at least 1)
    #[arg(long = "h-target")]
    h_target: Option<u64>,
}

#[derive(Args, Debug)]
struct LengthArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sum length N (default: derived from q)
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Debug)]
struct HbArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sum length N (default: ceil(q^(2/3)))
    #[arg(long)]
    n: Option<u64>,
    /// Number of distinct characters R
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Args, Debug)]
struct ZeroArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Abscissa sigma > 1/2
    #[arg(long)]
    sigma: Option<f64>,
    /// Height T of the counting rectangle
    #[arg(long = "t-height")]
    t_height: Option<f64>,
}

#[derive(Args, Debug)]
struct SpacingArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of powers N (default: ceil(q^0.72))
    #[arg(long)]
    n: Option<u64>,
    /// Window length H (default: ceil(q^0.45))
    #[arg(long)]
    hlen: Option<u64>,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of powers N (default: ceil(q^0.7))
    #[arg(long)]
    n: Option<u64>,
    /// Window dilation scale (default: N)
    #[arg(long)]
    hscale: Option<u64>,
    /// Window offset alpha in [0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Emit one record per offset alpha = k/grid, k = 0..grid-1
    #[arg(long = "alpha-grid")]
    alpha_grid: Option<u64>,
    /// Window length gamma
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Resonance chain at s = 1 over subgroups
    ExtremeS1(CommonArgs),
    /// Resonance chain at real sigma in (1/2, 1)
    ExtremeSigma(SigmaArgs),
    /// Half-line resonance over even subgroups
    ExtremeHalf(HalfArgs),
    /// Mean value of character sums with doubling envelope
    Meanvalue(LengthArgs),
    /// Double character-sum moment with three-term envelope
    Hbsum(HbArgs),
    /// Zero counts aggregated over a subgroup
    Zerodensity(ZeroArgs),
    /// Window counts and variance of primitive-root powers
    Spacings(SpacingArgs),
    /// Pair correlation of primitive-root powers
    Paircorr(PairArgs),
}

fn apply_common(opts: &mut RunOptions, a: &CommonArgs, subcommand: &str) -> Result<()> {
    opts.subcommand = subcommand.to_string();
    if let Ok(threads) = std::env::var("LVALS_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            opts.threads = t;
        }
    }
    if let Some(cfg) = &a.config {
        opts.apply_file(cfg, subcommand)?;
    }
    if let Some(v) = &a.q {
        opts.q_spec = v.clone();
    }
    if let Some(v) = &a.subgroups {
        opts.subgroups = v.parse::<Subgroups>()?;
    }
    if let Some(v) = &a.out {
        opts.out = v.clone();
    }
    if let Some(v) = &a.format {
        opts.format = v.parse::<OutputFormat>()?;
    }
    if let Some(v) = a.threads {
        opts.threads = v;
    }
    if let Some(v) = a.cutoff_euler {
        opts.cutoff_euler = v;
    }
    if let Some(v) = a.cutoff_resonator {
        opts.cutoff_resonator = v;
    }
    if let Some(v) = a.afe_a {
        opts.afe_a = v;
    }
    if let Some(v) = a.kappa {
        opts.kappa = v;
    }
    if let Some(v) = a.delta {
        opts.delta = v;
    }
    if let Some(v) = a.seed {
        opts.seed = v;
    }
    if opts.q_spec.is_empty() {
        anyhow::bail!("--q is required (flag or config file)");
    }
    if opts.out.is_empty() {
        anyhow::bail!("--out is required (flag or config file)");
    }
    Ok(())
}

fn build_options(cli: &Cli) -> Result<RunOptions> {
    let mut opts = RunOptions::default();
    match &cli.command {
        Command::ExtremeS1(a) => apply_common(&mut opts, a, "extreme-s1")?,
        Command::ExtremeSigma(a) => {
            apply_common(&mut opts, &a.common, "extreme-sigma")?;
            if let Some(v) = a.sigma {
                opts.sigma = v;
            }
            if let Some(v) = a.cutoff_primesum {
                opts.cutoff_primesum = v;
            }
            if let Some(v) = &a.b_sigma {
                opts.b_sigma = v.clone();
            }
        }
        Command::ExtremeHalf(a) => {
            apply_common(&mut opts, &a.common, "extreme-half")?;
            if let Some(v) = a.h_target {
                opts.h_target = v;
            }
        }
        Command::Meanvalue(a) => {
            apply_common(&mut opts, &a.common, "meanvalue")?;
            if let Some(v) = a.n {
                opts.n = v;
            }
        }
        Command::Hbsum(a) => {
            apply_common(&mut opts, &a.common, "hbsum")?;
            if let Some(v) = a.n {
                opts.n = v;
            }
            if let Some(v) = a.r {
                opts.r_count = v;
            }
        }
        Command::Zerodensity(a) => {
            apply_common(&mut opts, &a.common, "zerodensity")?;
            if let Some(v) = a.sigma {
                opts.sigma = v;
            } else {
                opts.sigma = 0.6;
            }
            if let Some(v) = a.t_height {
                opts.t_height = v;
            }
        }
        Command::Spacings(a) => {
            apply_common(&mut opts, &a.common, "spacings")?;
            if let Some(v) = a.n {
                opts.n = v;
            }
            if let Some(v) = a.hlen {
                opts.hlen = v;
            }
        }
        Command::Paircorr(a) => {
            apply_common(&mut opts, &a.common, "paircorr")?;
            if let Some(v) = a.n {
                opts.n = v;
            }
            if let Some(v) = a.hscale {
                opts.hscale = v;
            }
            if let Some(v) = a.alpha {
                opts.alpha = v;
            }
            if let Some(v) = a.alpha_grid {
                opts.alpha_grid = v;
            }
            if let Some(v) = a.gamma {
                opts.gamma = v;
            }
        }
    }
    Ok(opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = match build_options(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("lvals: {e:#}");
            return ExitCode::from(2);
        }
    };
    match runner::execute(&opts) {
        Ok(outcome) => {
            let verified = outcome.records.iter().filter(|r| r.is_verified()).count();
            eprintln!(
                "lvals {}: {} records ({} verified) -> {}",
                opts.subcommand,
                outcome.records.len(),
                verified,
                outcome.data_path.display()
            );
            if outcome.all_valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("lvals: {e:#}");
            ExitCode::from(2)
        }
    }
}
