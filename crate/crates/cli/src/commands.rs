//! Work-item construction and execution for every subcommand. Items are
//! built in a fixed sorted order and each one computes with fixed-order
//! reductions, so the record stream is identical whatever the thread
//! count.

use anyhow::Result;

use lvals_core::charstats::{
    hb_double_sum, mean_value, pair_correlation, window_variance, zero_density_aggregate,
};
use lvals_core::modarith::{is_prime, ModulusContext, PrimeTable};
use lvals_core::resonance::{
    b_sigma, resonance_half_line, resonance_sigma1, resonance_sigma_interior, BSigmaForm,
    ResonanceConfig,
};
use lvals_core::{iter_log, CharacterSet};

use crate::config::{parse_q_spec, RunOptions, Subgroups};
use crate::records::Record;

/// Inputs shared read-only by every worker.
pub struct Shared {
    pub primes: PrimeTable,
}

impl Shared {
    pub fn for_run(opts: &RunOptions) -> Self {
        let limit = match opts.subcommand.as_str() {
            "extreme-s1" => opts.cutoff_euler as u64,
            "extreme-sigma" => opts.cutoff_primesum as u64,
            _ => 0,
        };
        Shared { primes: PrimeTable::up_to(limit) }
    }
}

/// One unit of deterministic work.
#[derive(Debug, Clone)]
pub struct WorkItem {
    pub q: u64,
    pub subgroup: u64,
    pub alpha_index: u64,
    pub invalid: Option<String>,
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    v.sort_unstable();
    v
}

/// Expand the q spec and subgroup selector into items. Invalid entries
/// (composite q, non-divisor subgroup orders) become error items so the
/// run can finish and report them.
pub fn build_items(opts: &RunOptions) -> Result<Vec<WorkItem>> {
    let qs = parse_q_spec(&opts.q_spec)?;
    let wants_subgroups = matches!(
        opts.subcommand.as_str(),
        "extreme-s1" | "extreme-sigma" | "extreme-half" | "meanvalue" | "zerodensity"
    );
    let alpha_count = if opts.subcommand == "paircorr" { opts.alpha_grid.max(1) } else { 1 };
    let mut items = Vec::new();
    for q in qs {
        if q < 3 || !is_prime(q) {
            items.push(WorkItem {
                q,
                subgroup: 0,
                alpha_index: 0,
                invalid: Some(format!("modulus {q} is not an odd prime")),
            });
            continue;
        }
        if !wants_subgroups {
            for a in 0..alpha_count {
                items.push(WorkItem { q, subgroup: 0, alpha_index: a, invalid: None });
            }
            continue;
        }
        let even_only = opts.subcommand == "extreme-half";
        let orders: Vec<u64> = match &opts.subgroups {
            Subgroups::All => divisors_of(q - 1)
                .into_iter()
                .filter(|h| !even_only || h % 2 == 0)
                .collect(),
            Subgroups::Even => {
                divisors_of(q - 1).into_iter().filter(|h| h % 2 == 0).collect()
            }
            Subgroups::List(list) => list.clone(),
        };
        for h in orders {
            let invalid = if h == 0 || (q - 1) % h != 0 {
                Some(format!("{h} does not divide q-1 = {}", q - 1))
            } else if even_only && h % 2 != 0 {
                Some(format!("subgroup order {h} must be even for the half-line pipeline"))
            } else {
                None
            };
            items.push(WorkItem { q, subgroup: h, alpha_index: 0, invalid });
        }
    }
    Ok(items)
}

fn base_record(run_id: &str, opts: &RunOptions, item: &WorkItem) -> Record {
    let mut r = Record::new();
    r.set_str("run_id", run_id)
        .set_str("subcommand", &opts.subcommand)
        .set_u64("q", item.q);
    r
}

fn resonance_config(opts: &RunOptions) -> ResonanceConfig {
    ResonanceConfig {
        delta: opts.delta,
        kappa: opts.kappa,
        eta: opts.eta,
        c: opts.c,
        euler_cutoff: opts.cutoff_euler,
        resonator_cutoff: opts.cutoff_resonator,
        prime_sum_cutoff: opts.cutoff_primesum,
    }
}

/// Deterministic per-item coefficient / exponent generator (splitmix64).
struct MiniRng(u64);

impl MiniRng {
    fn new(seed: u64) -> Self {
        MiniRng(seed.wrapping_add(0x9e37_79b9_7f4a_7c15))
    }
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Execute one item. Never panics on math errors: they become error
/// records with `verified = false`.
pub fn run_item(run_id: &str, opts: &RunOptions, shared: &Shared, item: &WorkItem) -> Record {
    let mut rec = base_record(run_id, opts, item);
    if let Some(msg) = &item.invalid {
        rec.set_str("error", msg).set_bool("verified", false);
        if item.subgroup > 0 {
            rec.set_u64("subgroup_order", item.subgroup);
        }
        return rec;
    }
    let outcome = match opts.subcommand.as_str() {
        "extreme-s1" => run_extreme_s1(opts, shared, item, &mut rec),
        "extreme-sigma" => run_extreme_sigma(opts, shared, item, &mut rec),
        "extreme-half" => run_extreme_half(opts, item, &mut rec),
        "meanvalue" => run_meanvalue(opts, item, &mut rec),
        "hbsum" => run_hbsum(opts, item, &mut rec),
        "zerodensity" => run_zerodensity(opts, item, &mut rec),
        "spacings" => run_spacings(opts, item, &mut rec),
        "paircorr" => run_paircorr(opts, item, &mut rec),
        other => Err(anyhow::anyhow!("unknown subcommand {other}")),
    };
    if let Err(e) = outcome {
        rec.set_str("error", &e.to_string()).set_bool("verified", false);
    }
    rec
}

fn run_extreme_s1(opts: &RunOptions, shared: &Shared, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let cfg = resonance_config(opts);
    let rep = resonance_sigma1(&ctx, item.subgroup, &cfg, &shared.primes)?;
    rec.set_u64("subgroup_order", item.subgroup)
        .set_f64("x_length", rep.resonator_length)
        .set_f64("kappa", opts.kappa)
        .set_f64("delta", opts.delta)
        .set_f64("cutoff_euler", opts.cutoff_euler)
        .set_u64("cutoff_resonator", opts.cutoff_resonator)
        .set_f64("s1_re", rep.s1.re)
        .set_f64("s1_im", rep.s1.im)
        .set_f64("s2", rep.s2)
        .set_f64("ratio", rep.ratio)
        .set_f64("lower_bound", rep.lower_bound)
        .set_f64("truncation_error", rep.truncation_error)
        .set_u64("witness_exponent", rep.witness_exponent)
        .set_f64("witness_value", rep.witness_value)
        .set_bool("degenerate", rep.degenerate)
        .set_bool("vacuous", rep.vacuous)
        .set_bool("verified", rep.verified);
    Ok(())
}

fn run_extreme_sigma(
    opts: &RunOptions,
    shared: &Shared,
    item: &WorkItem,
    rec: &mut Record,
) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let cfg = resonance_config(opts);
    let rep = resonance_sigma_interior(&ctx, item.subgroup, opts.sigma, &cfg, &shared.primes)?;
    let form = match opts.b_sigma.as_str() {
        "proof" => BSigmaForm::Proof,
        _ => BSigmaForm::Theorem,
    };
    let b = b_sigma(opts.sigma, form);
    let threshold = iter_log(item.q as f64, 1).powf((1.0 + opts.delta) * b);
    rec.set_u64("subgroup_order", item.subgroup)
        .set_f64("sigma", opts.sigma)
        .set_f64("y_length", rep.resonator_length)
        .set_f64("kappa", opts.kappa)
        .set_f64("delta", opts.delta)
        .set_f64("cutoff_primesum", opts.cutoff_primesum)
        .set_u64("cutoff_resonator", opts.cutoff_resonator)
        .set_f64("s1_re", rep.s1.re)
        .set_f64("s1_im", rep.s1.im)
        .set_f64("s2", rep.s2)
        .set_f64("ratio", rep.ratio)
        .set_f64("lower_bound", rep.lower_bound)
        .set_f64("truncation_error", rep.truncation_error)
        .set_u64("witness_exponent", rep.witness_exponent)
        .set_f64("witness_value", rep.witness_value)
        .set_str("b_sigma_form", &opts.b_sigma)
        .set_f64("b_sigma_value", b)
        .set_f64("subgroup_threshold", threshold)
        .set_bool("hypothesis_met", (item.subgroup as f64) >= threshold)
        .set_bool("degenerate", rep.degenerate)
        .set_bool("vacuous", rep.vacuous)
        .set_bool("verified", rep.verified);
    Ok(())
}

fn run_extreme_half(opts: &RunOptions, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let h = if opts.h_target > 0 {
        opts.h_target
    } else {
        ((item.subgroup as f64 / (item.q as f64).sqrt()).floor() as u64).max(1)
    };
    let rep = resonance_half_line(&ctx, item.subgroup, h, None)?;
    rec.set_u64("subgroup_order", item.subgroup)
        .set_u64("h_target", rep.h_target)
        .set_u64("set_size", rep.set_size)
        .set_f64("sum_r_sq", rep.weight_sq_sum)
        .set_f64("principal_weight", rep.principal_weight)
        .set_f64("principal_bound", rep.principal_bound)
        .set_f64("s1", rep.base.s1.re)
        .set_f64("s1_bound", rep.s1_bound)
        .set_f64("s2", rep.base.s2)
        .set_f64("ratio", rep.base.ratio)
        .set_f64("truncation_error", rep.base.truncation_error)
        .set_u64("witness_exponent", rep.base.witness_exponent)
        .set_f64("witness_value", rep.base.witness_value)
        .set_bool("vacuous", rep.base.vacuous)
        .set_bool("verified", rep.base.verified);
    Ok(())
}

fn derived_n(q: u64, n: u64, exponent: f64) -> u64 {
    if n > 0 {
        n
    } else {
        (q as f64).powf(exponent).ceil() as u64
    }
}

fn run_meanvalue(opts: &RunOptions, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let subgroup = CharacterSet::subgroup(&ctx, item.subgroup)?;
    let n = derived_n(item.q, opts.n, 2.0 / 3.0).min(item.q);
    let rep = mean_value(&ctx, &subgroup, n, &[])?;
    rec.set_u64("subgroup_order", item.subgroup)
        .set_u64("n", n)
        .set_f64("m", rep.m)
        .set_f64("k_doubling", rep.k)
        .set_f64("envelope", rep.envelope)
        .set_f64("ratio", rep.ratio())
        .set_bool("verified", rep.m <= 100.0 * rep.envelope);
    Ok(())
}

fn run_hbsum(opts: &RunOptions, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let r = opts.r_count.min(item.q - 1).max(1);
    // distinct exponents drawn deterministically from the seed
    let mut rng = MiniRng::new(opts.seed ^ item.q);
    let mut exps = std::collections::BTreeSet::new();
    while (exps.len() as u64) < r {
        exps.insert(rng.below(item.q - 1));
    }
    let exps: Vec<u64> = exps.into_iter().collect();
    let n = derived_n(item.q, opts.n, 2.0 / 3.0).min(item.q);
    let rep = hb_double_sum(&ctx, &exps, n, &[])?;
    rec.set_u64("r", rep.r)
        .set_u64("n", n)
        .set_u64("seed", opts.seed)
        .set_f64("exact", rep.exact)
        .set_f64("envelope", rep.envelope)
        .set_f64("ratio", rep.ratio())
        .set_bool("verified", rep.exact <= 100.0 * rep.envelope);
    Ok(())
}

fn run_zerodensity(opts: &RunOptions, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let agg = zero_density_aggregate(&ctx, item.subgroup, opts.sigma, opts.t_height)?;
    let max_per_char = agg.per_char.iter().map(|&(_, c)| c).max().unwrap_or(0);
    rec.set_u64("subgroup_order", item.subgroup)
        .set_f64("sigma", opts.sigma)
        .set_f64("t_height", opts.t_height)
        .set_u64("total", agg.total)
        .set_u64("max_per_char", max_per_char)
        .set_f64("envelope", agg.bound_envelope)
        .set_bool("verified", true);
    Ok(())
}

fn run_spacings(opts: &RunOptions, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let n = derived_n(item.q, opts.n, 0.72).min(item.q - 1);
    let hlen = if opts.hlen > 0 {
        opts.hlen
    } else {
        (item.q as f64).powf(0.45).ceil() as u64
    }
    .min(item.q);
    let v = window_variance(&ctx, hlen, n)?;
    let hn = hlen as f64 * n as f64;
    // q V / (H N): the fluctuation-sum normalization that tends to 1 in
    // the Poissonian regime
    rec.set_u64("g", ctx.g)
        .set_u64("n", n)
        .set_u64("hlen", hlen)
        .set_f64("variance", v)
        .set_f64("hn", hn)
        .set_f64("fluctuation_ratio", item.q as f64 * v / hn);
    let mut verified = v >= 0.0;
    if n == item.q - 1 {
        // closed form (H/q)(1 - H/q) must hold to full precision
        let frac = hlen as f64 / item.q as f64;
        let closed = frac * (1.0 - frac);
        rec.set_f64("closed_form_abs_err", (v - closed).abs());
        verified = verified && (v - closed).abs() <= 1e-12;
    }
    rec.set_bool("verified", verified);
    Ok(())
}

fn run_paircorr(opts: &RunOptions, item: &WorkItem, rec: &mut Record) -> Result<()> {
    let ctx = ModulusContext::new(item.q)?;
    let n = derived_n(item.q, opts.n, 0.7).min(item.q - 1);
    let hscale = if opts.hscale > 0 { opts.hscale } else { n };
    let alpha = if opts.alpha_grid > 1 {
        item.alpha_index as f64 / opts.alpha_grid as f64
    } else {
        opts.alpha
    };
    let rep = pair_correlation(&ctx, n, hscale, alpha, opts.gamma)?;
    rec.set_u64("g", ctx.g)
        .set_u64("n", n)
        .set_u64("hscale", hscale)
        .set_f64("alpha", alpha)
        .set_f64("gamma", opts.gamma)
        .set_f64("r2", rep.value)
        .set_f64("abs_err_vs_gamma", (rep.value - opts.gamma).abs())
        .set_u64("window_lo", rep.window_lo)
        .set_u64("window_hi", rep.window_hi)
        .set_bool("degenerate", rep.degenerate)
        .set_bool("verified", if rep.degenerate { rep.value == 0.0 } else { rep.value >= 0.0 });
    Ok(())
}
