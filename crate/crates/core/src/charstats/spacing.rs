//! Spacing statistics of the first N powers of a primitive root: window
//! counts f(a, H, N), their variance V(H, N), and the pair correlation
//! R_2 over a dilated window. Window membership is computed on residues
//! (a + h) mod q with h running over the integers 1..=H, so wraparound is
//! part of the definition.

use crate::error::Error;
use crate::modarith::ModulusContext;
use crate::Result;

/// Indicator over residues: hit[x] = 1 when x = g^m mod q for some
/// m in [1, N]. Since ind(x) lives in {0, .., q-2} and g^{q-1} = 1, the
/// residue 1 is reached at m = q-1, every other unit at m = ind(x).
fn power_hits(ctx: &ModulusContext, n: u64) -> Vec<u8> {
    let q = ctx.q;
    let mut hit = vec![0u8; q as usize];
    for x in 1..q {
        let ind = ctx.index_of(x) as u64;
        let reached = if ind == 0 { n >= q - 1 } else { ind <= n };
        hit[x as usize] = reached as u8;
    }
    hit
}

fn check_window(ctx: &ModulusContext, hlen: u64, n: u64) -> Result<()> {
    let q = ctx.q;
    if hlen < 1 || hlen > q {
        return Err(Error::BadParameter(format!("window length {hlen} outside [1, q]")));
    }
    if n < 1 || n > q - 1 {
        return Err(Error::BadParameter(format!("power count {n} outside [1, q-1]")));
    }
    Ok(())
}

/// f(a, H, N): how many n in [1, N] satisfy g^n = a + h (mod q) for some
/// integer h in [1, H].
pub fn window_count(ctx: &ModulusContext, a: u64, hlen: u64, n: u64) -> Result<u64> {
    check_window(ctx, hlen, n)?;
    if a >= ctx.q {
        return Err(Error::BadParameter(format!("offset {a} outside [0, q)")));
    }
    let hit = power_hits(ctx, n);
    let q = ctx.q;
    Ok((1..=hlen).map(|h| hit[((a + h) % q) as usize] as u64).sum())
}

/// V(H, N) = (1/q) sum_a (f(a, H, N) - HN/q)^2, computed in O(q + H) with
/// a sliding window; the f-sums are exact integers before the final
/// division.
pub fn window_variance(ctx: &ModulusContext, hlen: u64, n: u64) -> Result<f64> {
    check_window(ctx, hlen, n)?;
    let q = ctx.q;
    let hit = power_hits(ctx, n);
    let mut f: u64 = (1..=hlen).map(|h| hit[(h % q) as usize] as u64).sum();
    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    for a in 0..q {
        sum += f as u128;
        sum_sq += (f as u128) * (f as u128);
        // slide from a to a+1: drop a+1, gain a+1+H
        f -= hit[((a + 1) % q) as usize] as u64;
        f += hit[((a + 1 + hlen) % q) as usize] as u64;
    }
    let qf = q as f64;
    let mean = hlen as f64 * n as f64 / qf;
    Ok(sum_sq as f64 / qf - 2.0 * mean * (sum as f64) / qf + mean * mean)
}

/// O(q H) brute-force twin of [`window_variance`]; the integer census is
/// identical by construction, so the two must agree exactly.
pub fn window_variance_brute(ctx: &ModulusContext, hlen: u64, n: u64) -> Result<f64> {
    check_window(ctx, hlen, n)?;
    let q = ctx.q;
    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    for a in 0..q {
        let f = window_count(ctx, a, hlen, n)?;
        sum += f as u128;
        sum_sq += (f as u128) * (f as u128);
    }
    let qf = q as f64;
    let mean = hlen as f64 * n as f64 / qf;
    Ok(sum_sq as f64 / qf - 2.0 * mean * (sum as f64) / qf + mean * mean)
}

#[derive(Debug, Clone, Copy)]
pub struct PairCorrelationReport {
    pub value: f64,
    /// integer window (lo, hi] after dilation and intersection with [1, q-1]
    pub window_lo: u64,
    pub window_hi: u64,
    /// the dilated window missed every integer
    pub degenerate: bool,
}

/// R_2 over the dilated window ((q/Hscale) alpha, (q/Hscale)(alpha+gamma)]:
/// ordered pairs 1 <= m != n <= N with g^m - g^n mod q inside, divided by N.
/// Window ends are floored, the interval is half-open.
pub fn pair_correlation(
    ctx: &ModulusContext,
    n: u64,
    hscale: u64,
    alpha: f64,
    gamma: f64,
) -> Result<PairCorrelationReport> {
    let q = ctx.q;
    if n < 1 || n > q - 1 {
        return Err(Error::BadParameter(format!("power count {n} outside [1, q-1]")));
    }
    if hscale < 1 {
        return Err(Error::BadParameter("window scale must be positive".into()));
    }
    if !(0.0..=1.0).contains(&alpha) || gamma < 0.0 {
        return Err(Error::BadParameter(format!("bad window [{alpha}, {alpha} + {gamma}]")));
    }
    let dilate = q as f64 / hscale as f64;
    let lo = (alpha * dilate).floor().max(0.0) as u64;
    let hi = ((alpha + gamma) * dilate).floor().min((q - 1) as f64) as u64;
    let lo = lo.min(q - 1);
    if hi <= lo {
        return Ok(PairCorrelationReport { value: 0.0, window_lo: lo, window_hi: hi, degenerate: true });
    }
    let hit = power_hits(ctx, n);
    let powers: Vec<u64> = (1..q).filter(|&x| hit[x as usize] == 1).collect();
    let mut count: u64 = 0;
    for h in lo + 1..=hi {
        for &y in &powers {
            // some g^m = y + h?
            count += hit[((y + h) % q) as usize] as u64;
        }
    }
    Ok(PairCorrelationReport {
        value: count as f64 / n as f64,
        window_lo: lo,
        window_hi: hi,
        degenerate: false,
    })
}
