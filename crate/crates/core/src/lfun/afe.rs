//! Smoothed approximate functional equation at the central point.
//!
//! For a primitive chi mod q with parity a in {0, 1} and s on the critical
//! line,
//!
//!   L(s, chi) = sum_n chi(n) n^{-s} V_s(n/sqrt q)
//!             + eps(chi, s) sum_n conj(chi)(n) n^{s-1} V_{1-s}(n/sqrt q),
//!
//! where V_s(y) = (1/2 pi i) int_{Re u = 3} y^{-u} G(u)
//! [gamma(s+u)/gamma(s)] du/u with gamma(z) = pi^{-z/2} Gamma((z+a)/2),
//! G(u) = cos(pi u/4A)^{-4A}, and eps(chi, s) the root number. The
//! V-weights are computed by Gauss-Legendre panels on the truncated
//! vertical line; the series stop at `series_cutoff * sqrt(q)` terms with
//! an analytic tail bound from a shifted contour. Everything feeding
//! `est_error` is computed, not assumed.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::ln_gamma;
use super::gauss::root_number;
use super::{AfeConfig, LValue, LValueMethod};
use crate::characters::Character;
use crate::error::Error;
use crate::modarith::ModulusContext;
use crate::Result;

/// Real part of the integration line for the V-weight integral.
const CONTOUR_RE: f64 = 3.0;

const GL8_X: [f64; 4] =
    [0.183_434_642_495_649_8, 0.525_532_409_916_329_0, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL8_W: [f64; 4] =
    [0.362_683_783_378_362_0, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_4,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_8,
    0.755_404_408_355_003_0,
    0.865_631_202_387_831_8,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_8,
    0.062_253_523_938_647_9,
    0.027_152_459_411_754_1,
];

/// Nodes and weights on [-height, height]: unit panels, GL rule per panel.
fn line_nodes(height: f64, halve_panels: bool, coarse: bool) -> Vec<(f64, f64)> {
    let width = if halve_panels { 0.5 } else { 1.0 };
    let n_panels = (2.0 * height / width).ceil() as i64;
    let mut out = Vec::new();
    for k in 0..n_panels {
        let a = -height + k as f64 * width;
        let b = (a + width).min(height);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        if coarse {
            for i in 0..4 {
                out.push((mid + half * GL8_X[i], half * GL8_W[i]));
                out.push((mid - half * GL8_X[i], half * GL8_W[i]));
            }
        } else {
            for i in 0..8 {
                out.push((mid + half * GL16_X[i], half * GL16_W[i]));
                out.push((mid - half * GL16_X[i], half * GL16_W[i]));
            }
        }
    }
    out
}

/// G(u) = cos(pi u / 4A)^{-4A}; holomorphic and branch-safe for |Re u| < 2A.
fn smoothing_g(u: Complex64, a4: f64) -> Complex64 {
    let z = u * (PI / a4); // pi u / (4A) with a4 = 4A
    (-a4 * z.cos().ln()).exp()
}

/// gamma-factor ratio gamma(s+u)/gamma(s) with gamma(z) = pi^{-z/2} Gamma((z+a)/2).
fn gamma_ratio(s: Complex64, u: Complex64, parity: f64) -> Complex64 {
    let g = ln_gamma((s + u + parity) / 2.0) - ln_gamma((s + parity) / 2.0);
    ((-u / 2.0) * PI.ln() + g).exp()
}

/// Precomputed V-weights V_s(n/sqrt q) for n = 1..=len, one parity, one s.
struct VTable {
    weights: Vec<Complex64>,
    /// sum_n n^{-1/2} |V_fine - V_coarse|: quadrature error forwarded to sums
    quad_error: f64,
}

fn build_vtable(s: Complex64, parity: f64, q: f64, len: usize, cfg: &AfeConfig, halve: bool) -> VTable {
    let a4 = 4.0 * cfg.sharpness as f64;
    let sqrt_q = q.sqrt();
    let fine = line_nodes(cfg.contour_height, halve, false);
    let coarse = line_nodes(cfg.contour_height, halve, true);

    // per-node coefficients K_j = w_j G(u_j) gammaratio(u_j) / (2 pi u_j)
    let coefs = |nodes: &[(f64, f64)]| -> Vec<(Complex64, Complex64)> {
        nodes
            .iter()
            .map(|&(v, w)| {
                let u = Complex64::new(CONTOUR_RE, v);
                let k = smoothing_g(u, a4) * gamma_ratio(s, u, parity) / u * (w / (2.0 * PI));
                (u, k)
            })
            .collect()
    };
    let cf = coefs(&fine);
    let cc = coefs(&coarse);

    let mut weights = Vec::with_capacity(len);
    let mut quad_error = 0.0;
    for n in 1..=len {
        let ln_y = (n as f64 / sqrt_q).ln();
        let eval = |cs: &[(Complex64, Complex64)]| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(u, k) in cs {
                acc += k * (-u * ln_y).exp();
            }
            acc
        };
        let v_fine = eval(&cf);
        let v_coarse = eval(&cc);
        quad_error += (v_fine - v_coarse).norm() / (n as f64).sqrt();
        weights.push(v_fine);
    }
    VTable { weights, quad_error }
}

/// Series tail bound from a shifted contour at Re u = c_t < 2A:
/// |V_s(y)| <= B(c_t) y^{-c_t}, so the tail past M is at most
/// B q^{c_t/2} M^{1/2 - c_t} / (c_t - 1/2).
fn tail_bound(s: Complex64, parity: f64, q: f64, m: usize, cfg: &AfeConfig) -> f64 {
    let a4 = 4.0 * cfg.sharpness as f64;
    let c_t = (2.0 * cfg.sharpness as f64 - 0.5).min(4.0);
    let nodes = line_nodes(cfg.contour_height, false, true);
    let mut b = 0.0;
    for &(v, w) in &nodes {
        let u = Complex64::new(c_t, v);
        b += (smoothing_g(u, a4) * gamma_ratio(s, u, parity) / u).norm() * w / (2.0 * PI);
    }
    b * q.powf(c_t / 2.0) * (m as f64).powf(0.5 - c_t) / (c_t - 0.5)
}

/// Batch evaluator: builds the four V-tables (two parities x {s, 1-s})
/// once per (q, t, cfg), so evaluating a whole character group costs one
/// table build plus a short dot product per character.
pub struct AfeEvaluator {
    s: Complex64,
    /// tables[parity][0] multiplies the chi-sum, tables[parity][1] the conj-sum
    tables: [[VTable; 2]; 2],
    tails: [f64; 2],
    /// parity-dependent scalar q^{1/2-s} gamma(1-s)/gamma(s)
    eps_factor: [Complex64; 2],
    len: usize,
}

impl AfeEvaluator {
    pub fn new(ctx: &ModulusContext, t: f64, cfg: &AfeConfig) -> Result<Self> {
        if cfg.sharpness < 2 {
            return Err(Error::BadParameter("afe sharpness A must be at least 2".into()));
        }
        if cfg.series_cutoff < 1.0 {
            return Err(Error::BadParameter("afe series_cutoff must be >= 1".into()));
        }
        if t.abs() > 10.0 {
            return Err(Error::HeightOutOfRange(t));
        }
        let q = ctx.q as f64;
        let s = Complex64::new(0.5, t);
        let s_dual = Complex64::new(0.5, -t); // 1 - s on the critical line
        let len = (cfg.series_cutoff * q.sqrt()).ceil() as usize;

        let build_pair = |parity: f64| -> Result<[VTable; 2]> {
            let first = build_vtable(s, parity, q, len, cfg, false);
            let second = build_vtable(s_dual, parity, q, len, cfg, false);
            // refinement check: if the 8-vs-16 point discrepancy is not
            // already tiny, redo with halved panels before giving up.
            if first.quad_error + second.quad_error > 1e-9 {
                let first = build_vtable(s, parity, q, len, cfg, true);
                let second = build_vtable(s_dual, parity, q, len, cfg, true);
                if first.quad_error + second.quad_error > 1e-7 {
                    return Err(Error::QuadratureDiverged(format!(
                        "V-weight quadrature residual {:.3e} at q={}",
                        first.quad_error + second.quad_error,
                        q
                    )));
                }
                return Ok([first, second]);
            }
            Ok([first, second])
        };
        let tables = [build_pair(0.0)?, build_pair(1.0)?];
        let tails = [
            tail_bound(s, 0.0, q, len, cfg) + tail_bound(s_dual, 0.0, q, len, cfg),
            tail_bound(s, 1.0, q, len, cfg) + tail_bound(s_dual, 1.0, q, len, cfg),
        ];
        let eps_factor = [0.0f64, 1.0].map(|parity| {
            let g = ln_gamma((s_dual + parity) / 2.0) - ln_gamma((s + parity) / 2.0);
            ((Complex64::new(0.5, 0.0) - s) * q.ln() + (s - s_dual) / 2.0 * PI.ln() + g).exp()
        });
        Ok(AfeEvaluator { s, tables, tails, eps_factor, len })
    }

    /// Evaluate L(1/2 + it, chi) through the smoothed series.
    pub fn eval(&self, chi: &Character<'_>) -> Result<LValue> {
        if chi.is_principal() {
            return Err(Error::BadParameter(
                "the approximate functional equation needs a primitive character".into(),
            ));
        }
        let parity_idx = if chi.is_even() { 0usize } else { 1 };
        let tab = &self.tables[parity_idx];
        let s = self.s;
        let s_dual = Complex64::new(0.5, -s.im);

        let mut sum1 = Complex64::new(0.0, 0.0);
        let mut sum2 = Complex64::new(0.0, 0.0);
        for n in 1..=self.len {
            let cv = chi.eval(n as u64);
            if cv.re == 0.0 && cv.im == 0.0 {
                continue;
            }
            let ln_n = (n as f64).ln();
            sum1 += cv * (-s * ln_n).exp() * tab[0].weights[n - 1];
            sum2 += cv.conj() * (-s_dual * ln_n).exp() * tab[1].weights[n - 1];
        }
        let eps = root_number(chi) * self.eps_factor[parity_idx];
        let value = sum1 + eps * sum2;
        let est_error = tab[0].quad_error + tab[1].quad_error + self.tails[parity_idx];
        Ok(LValue { s, value, method: LValueMethod::Afe, est_error })
    }

    /// Direct access to the first-series weight V_s(y) at y = n/sqrt(q);
    /// exposed so decay checks can probe the smoothing directly.
    pub fn v_weight(&self, even: bool, n: usize) -> Complex64 {
        let parity_idx = if even { 0 } else { 1 };
        self.tables[parity_idx][0].weights[n - 1]
    }
}

/// One-shot convenience wrapper around [`AfeEvaluator`].
pub fn afe_eval_half(chi: &Character<'_>, t: f64, cfg: &AfeConfig) -> Result<LValue> {
    AfeEvaluator::new(chi.ctx, t, cfg)?.eval(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfun::oracle::ZetaRow;

    #[test]
    fn matches_oracle_at_center_q13() {
        let ctx = ModulusContext::new(13).unwrap();
        let cfg = AfeConfig::default();
        let evaluator = AfeEvaluator::new(&ctx, 0.0, &cfg).unwrap();
        let row = ZetaRow::new(&ctx, Complex64::new(0.5, 0.0)).unwrap();
        for e in 1..12 {
            let chi = Character::new(&ctx, e);
            let afe = evaluator.eval(&chi).unwrap();
            let oracle = row.l_value(&chi).unwrap();
            let diff = (afe.value - oracle.value).norm();
            assert!(diff < 1e-6, "e={e} diff={diff:.3e} est={:.3e}", afe.est_error);
        }
    }

    #[test]
    fn matches_oracle_off_center() {
        let ctx = ModulusContext::new(13).unwrap();
        let cfg = AfeConfig::default();
        let t = 1.5;
        let evaluator = AfeEvaluator::new(&ctx, t, &cfg).unwrap();
        let row = ZetaRow::new(&ctx, Complex64::new(0.5, t)).unwrap();
        for e in [1u64, 5, 6] {
            let chi = Character::new(&ctx, e);
            let afe = evaluator.eval(&chi).unwrap();
            let oracle = row.l_value(&chi).unwrap();
            assert!(
                (afe.value - oracle.value).norm() < 1e-5,
                "e={e} diff={:.3e}",
                (afe.value - oracle.value).norm()
            );
        }
    }

    #[test]
    fn conjugate_pair_reflection() {
        let ctx = ModulusContext::new(13).unwrap();
        let cfg = AfeConfig::default();
        let t = 0.7;
        let fwd = AfeEvaluator::new(&ctx, t, &cfg).unwrap();
        let bwd = AfeEvaluator::new(&ctx, -t, &cfg).unwrap();
        for e in [2u64, 3, 7] {
            let chi = Character::new(&ctx, e);
            let a = fwd.eval(&chi).unwrap();
            let b = bwd.eval(&chi.conjugate()).unwrap();
            let tol = (a.est_error + b.est_error).max(1e-9);
            assert!((b.value - a.value.conj()).norm() <= tol * 10.0 + 1e-8);
        }
    }

    #[test]
    fn v_weight_decay() {
        // computed V at y = 10 should be tiny next to y = 0.01 (A = 4)
        let ctx = ModulusContext::new(101).unwrap();
        let cfg = AfeConfig::default();
        let ev = AfeEvaluator::new(&ctx, 0.0, &cfg).unwrap();
        // y = n / sqrt(101): n = 101 gives y ~ 10.05, n = 1 gives y ~ 0.0995
        let far = ev.v_weight(true, 101).norm();
        let near = ev.v_weight(true, 1).norm();
        assert!(far <= 1e-3 * near, "far={far:e} near={near:e}");
    }

    #[test]
    fn rejects_bad_parameters() {
        let ctx = ModulusContext::new(13).unwrap();
        let cfg = AfeConfig { sharpness: 1, ..AfeConfig::default() };
        assert!(AfeEvaluator::new(&ctx, 0.0, &cfg).is_err());
        assert!(AfeEvaluator::new(&ctx, 99.0, &AfeConfig::default()).is_err());
        let chi0 = Character::new(&ctx, 0);
        assert!(afe_eval_half(&chi0, 0.0, &AfeConfig::default()).is_err());
    }
}
