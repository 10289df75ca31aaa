//! Zero counting by the argument principle: walk the rectangle
//! [sigma, 1.5] x [t_lo, t_hi] counterclockwise, track the continuous
//! argument of L with adaptive bisection, and accept the winding number
//! only when the accumulated argument lands within 0.1 of an integer
//! number of turns. The right edge sits at Re s = 1.5 where the Euler
//! product keeps L zero-free, so the count equals the number of zeros
//! with Re s >= sigma, t_lo <= Im s <= t_hi.
//!
//! For the principal character the walker tracks (s - 1) L(s, chi_0),
//! which is zero-free exactly where L is and cancels the pole at s = 1,
//! so subgroup aggregation can include chi_0 without a special case.
//!
//! A second, independent counter locates critical-line zeros through sign
//! changes of the Hardy-type rotation
//! Z(t) = eps^{-1/2} (q/pi)^{s/2} Gamma((s+a)/2) L(s, chi), real on the
//! line (for chi_0 the xi-style completion plays the same role).

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::ln_gamma;
use super::gauss::root_number;
use super::oracle::ZetaRow;
use super::ZeroCountReport;
use crate::characters::Character;
use crate::error::Error;
use crate::Result;

/// Right edge of every counting rectangle; inside the zero-free half plane.
const RIGHT_EDGE: f64 = 1.5;
/// |f| below this along a contour triggers a nudge-and-retry.
const DIP_THRESHOLD: f64 = 1e-8;
/// Largest per-step phase jump accepted while walking an edge.
const MAX_PHASE_STEP: f64 = 0.7;
/// Left edges are kept at least this far right of Re s = 0, where the
/// oracle substrate stops converging.
const MIN_SIGMA: f64 = 1.0 / 64.0;

/// The tracked function: L itself, or (s-1) L for the principal character.
fn tracked(chi: &Character<'_>, s: Complex64) -> Result<Complex64> {
    if chi.is_principal() && (s - 1.0).norm() < 1e-9 {
        // limit of (s-1) zeta(s) (1 - q^{-s}) at s = 1
        return Ok(Complex64::new(1.0 - 1.0 / chi.ctx.q as f64, 0.0));
    }
    let l = ZetaRow::new(chi.ctx, s)?.l_value(chi)?.value;
    if chi.is_principal() {
        Ok((s - 1.0) * l)
    } else {
        Ok(l)
    }
}

struct EdgeWalk {
    delta_arg: f64,
    min_abs: f64,
}

/// March the edge at a fixed pitch, bisecting locally wherever the phase
/// jumps or |f| dips. The uniform pitch is what prevents a full hidden
/// turn from slipping through a long well-aligned segment.
fn walk_edge(chi: &Character<'_>, a: Complex64, b: Complex64, pitch: f64) -> Result<EdgeWalk> {
    let len = (b - a).norm();
    let n = (len / pitch).ceil().max(4.0) as usize;
    let fa = tracked(chi, a)?;
    let mut walk = EdgeWalk { delta_arg: 0.0, min_abs: fa.norm() };
    let mut prev_pt = a;
    let mut prev_f = fa;
    for k in 1..=n {
        let pt = a + (b - a) * (k as f64 / n as f64);
        let f = tracked(chi, pt)?;
        walk.min_abs = walk.min_abs.min(f.norm());
        refine(chi, prev_pt, prev_f, pt, f, 0, &mut walk)?;
        prev_pt = pt;
        prev_f = f;
    }
    Ok(walk)
}

fn refine(
    chi: &Character<'_>,
    a: Complex64,
    fa: Complex64,
    b: Complex64,
    fb: Complex64,
    depth: u32,
    walk: &mut EdgeWalk,
) -> Result<()> {
    if fa.norm() < DIP_THRESHOLD || fb.norm() < DIP_THRESHOLD {
        return Err(Error::ContourThroughZero(DIP_THRESHOLD));
    }
    let turn = (fb / fa).arg();
    if turn.abs() <= MAX_PHASE_STEP {
        walk.delta_arg += turn;
        return Ok(());
    }
    if depth > 30 {
        return Err(Error::ContourThroughZero(fa.norm().min(fb.norm())));
    }
    let mid = 0.5 * (a + b);
    let fm = tracked(chi, mid)?;
    walk.min_abs = walk.min_abs.min(fm.norm());
    refine(chi, a, fa, mid, fm, depth + 1, walk)?;
    refine(chi, mid, fm, b, fb, depth + 1, walk)
}

fn winding_once(
    chi: &Character<'_>,
    sigma: f64,
    t_lo: f64,
    t_hi: f64,
    pitch: f64,
) -> Result<(f64, f64)> {
    let corners = [
        Complex64::new(sigma, t_lo),
        Complex64::new(RIGHT_EDGE, t_lo),
        Complex64::new(RIGHT_EDGE, t_hi),
        Complex64::new(sigma, t_hi),
        Complex64::new(sigma, t_lo),
    ];
    let mut total = 0.0;
    let mut margin = f64::INFINITY;
    for w in corners.windows(2) {
        let edge = walk_edge(chi, w[0], w[1], pitch)?;
        total += edge.delta_arg;
        margin = margin.min(edge.min_abs);
    }
    Ok((total / (2.0 * PI), margin))
}

/// Zeros of L(s, chi) in [sigma, 1.5] x [t_lo, t_hi], with contour nudging
/// when the boundary runs too close to a zero. Left edges below 1/64 are
/// pushed to 1/64; any zero that excludes sits on Re s < 1/64, far left of
/// every zero this crate can see.
pub fn zero_count_in(
    chi: &Character<'_>,
    sigma: f64,
    t_lo: f64,
    t_hi: f64,
) -> Result<ZeroCountReport> {
    if !(t_hi > t_lo) {
        return Err(Error::BadParameter("zero count needs t_hi > t_lo".into()));
    }
    if sigma < 0.0 || sigma >= RIGHT_EDGE {
        return Err(Error::BadParameter(format!("sigma = {sigma} outside [0, 1.5)")));
    }
    // nudge schedule: push the left edge right and the horizontal edges out
    let nudges: [(f64, f64); 6] = [
        (0.0, 0.0),
        (1.0 / 64.0, 0.0),
        (0.0, 1.0 / 97.0),
        (1.0 / 32.0, 1.0 / 97.0),
        (3.0 / 64.0, 2.0 / 97.0),
        (1.0 / 16.0, 3.0 / 97.0),
    ];
    let mut last_err = Error::ContourThroughZero(DIP_THRESHOLD);
    for &(ds, dt) in &nudges {
        let s_eff = (sigma + ds).max(MIN_SIGMA);
        let lo = t_lo - dt;
        let hi = t_hi + dt;
        // two marching resolutions must snap to the same integer; on
        // disagreement the pitch halves again
        let mut pitch = 0.1;
        let mut prev_turns: Option<f64> = None;
        'refine: for _ in 0..4 {
            match winding_once(chi, s_eff, lo, hi, pitch) {
                Ok((turns, margin)) => {
                    let rounded = turns.round();
                    let snapped = (turns - rounded).abs() <= 0.1 && rounded >= 0.0;
                    if snapped {
                        if let Some(prev) = prev_turns {
                            if prev.round() == rounded {
                                return Ok(ZeroCountReport {
                                    sigma,
                                    t: t_hi.max(-t_lo),
                                    effective_sigma: s_eff,
                                    effective_t: hi,
                                    count: rounded as u64,
                                    contour_margin: margin,
                                });
                            }
                        }
                        prev_turns = Some(turns);
                    } else {
                        prev_turns = None;
                        last_err = Error::WindingAmbiguous(turns);
                    }
                    pitch /= 2.0;
                }
                Err(e @ Error::ContourThroughZero(_)) => {
                    last_err = e;
                    break 'refine; // nudge the contour instead of refining
                }
                Err(e) => return Err(e),
            }
        }
    }
    Err(last_err)
}

/// Zeros with Re s >= sigma and |Im s| <= t.
pub fn zero_count_rect(chi: &Character<'_>, sigma: f64, t: f64) -> Result<ZeroCountReport> {
    if !(t > 0.0) {
        return Err(Error::BadParameter("height t must be positive".into()));
    }
    zero_count_in(chi, sigma, -t, t)
}

/// Hardy-style rotation: real on the critical line, vanishing exactly at
/// the critical-line zeros of L.
fn hardy_z(chi: &Character<'_>, eps_root: Complex64, t: f64) -> Result<f64> {
    let s = Complex64::new(0.5, t);
    let q = chi.ctx.q as f64;
    let (z, scale) = if chi.is_principal() {
        // xi-style completion of zeta; the local factor (1 - q^{-s}) has
        // no zeros on the line, so sign changes still count zeta zeros
        let zeta = super::hurwitz::hurwitz_zeta(s, 1.0)?.value;
        let lam = s * (s - 1.0) * 0.5 * ((-s / 2.0) * PI.ln() + ln_gamma(s / 2.0)).exp();
        (lam * zeta, lam.norm())
    } else {
        let parity = if chi.is_even() { 0.0 } else { 1.0 };
        let lam = ((s / 2.0) * (q / PI).ln() + ln_gamma((s + parity) / 2.0)).exp();
        let l = ZetaRow::new(chi.ctx, s)?.l_value(chi)?.value;
        (lam * l / eps_root, lam.norm())
    };
    // the imaginary part is pure rounding, bounded by the rotation scale,
    // not by |z| (which vanishes at the zeros being counted)
    debug_assert!(z.im.abs() <= 1e-6 * scale.max(1e-12), "rotation not real: {z}");
    Ok(z.re)
}

/// Count zeros of L(1/2 + it, chi) for t in [t_lo, t_hi] through sign
/// changes of the rotated combination, refining near every small value.
pub fn critical_line_zero_count(chi: &Character<'_>, t_lo: f64, t_hi: f64) -> Result<u64> {
    let eps_root = if chi.is_principal() {
        Complex64::new(1.0, 0.0)
    } else {
        root_number(chi).sqrt()
    };
    let coarse = 0.04;
    let n = ((t_hi - t_lo) / coarse).ceil().max(1.0) as usize;
    let mut count = 0u64;
    let mut prev_t = t_lo;
    let mut prev_z = hardy_z(chi, eps_root, t_lo)?;
    let mut scale: f64 = prev_z.abs();
    for i in 1..=n {
        let t = t_lo + (t_hi - t_lo) * i as f64 / n as f64;
        let z = hardy_z(chi, eps_root, t)?;
        scale = scale.max(z.abs());
        if z.signum() != prev_z.signum() {
            count += 1;
        } else if z.abs().min(prev_z.abs()) < 0.25 * scale {
            // a dip without a sign change may hide an even cluster of
            // crossings; resolve the interval on a 16x finer grid
            let mut sub_prev = prev_z;
            for k in 1..=16 {
                let tt = prev_t + (t - prev_t) * k as f64 / 16.0;
                let zz = hardy_z(chi, eps_root, tt)?;
                if zz.signum() != sub_prev.signum() {
                    count += 1;
                }
                sub_prev = zz;
            }
        }
        prev_t = t;
        prev_z = z;
    }
    Ok(count)
}
