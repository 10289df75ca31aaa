//! Dirichlet characters mod an odd prime, identified by their exponent:
//! chi_e(g^k) = exp(2 pi i e k/(q-1)). Subgroups of the character group,
//! kernels, parity, product sets / multiplicative doubling, and a greedy
//! witness search for the covering structure used by the mean-value bound.

use num_complex::Complex64;

use crate::error::Error;
use crate::modarith::ModulusContext;
use crate::Result;

/// A single character chi_e mod `ctx.q`.
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    pub ctx: &'a ModulusContext,
    pub e: u64,
}

impl<'a> Character<'a> {
    pub fn new(ctx: &'a ModulusContext, e: u64) -> Self {
        Character { ctx, e: e % (ctx.q - 1) }
    }

    pub fn is_principal(&self) -> bool {
        self.e == 0
    }

    /// chi(-1) = (-1)^e.
    pub fn is_even(&self) -> bool {
        self.e % 2 == 0
    }

    /// Multiplicative order: (q-1)/gcd(e, q-1).
    pub fn order(&self) -> u64 {
        let qm1 = self.ctx.q - 1;
        qm1 / gcd(self.e, qm1)
    }

    pub fn conjugate(&self) -> Character<'a> {
        let qm1 = self.ctx.q - 1;
        Character { ctx: self.ctx, e: (qm1 - self.e) % qm1 }
    }

    /// chi(n): zero on multiples of q, otherwise a (q-1)-th root of unity.
    pub fn eval(&self, n: u64) -> Complex64 {
        let q = self.ctx.q;
        let r = n % q;
        if r == 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.ctx.root_of_unity(self.e * self.ctx.index_of(r) as u64)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A finite set of characters, stored as sorted exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSet {
    exponents: Vec<u64>,
    pub is_subgroup: bool,
}

/// Multiplicative doubling of a character set: the exact size of A*A and
/// the ratio K = #(A*A)/#A.
#[derive(Debug, Clone, Copy)]
pub struct DoublingReport {
    pub a: u64,
    pub product_size: u64,
}

impl DoublingReport {
    pub fn k(&self) -> f64 {
        self.product_size as f64 / self.a as f64
    }
}

/// Representation counts from a covering check: for each chi in A, the
/// number of triples (chi1, chi2, eta) in A x A x U with
/// chi = chi1 * conj(chi2) * eta.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub counts: Vec<(u64, u64)>,
    /// true when every count reaches #A/2.
    pub covered: bool,
}

impl CharacterSet {
    /// Build from raw exponents; values are reduced mod q-1, deduplicated
    /// and sorted.
    pub fn from_exponents(ctx: &ModulusContext, exps: impl IntoIterator<Item = u64>) -> Self {
        let qm1 = ctx.q - 1;
        let mut v: Vec<u64> = exps.into_iter().map(|e| e % qm1).collect();
        v.sort_unstable();
        v.dedup();
        CharacterSet { exponents: v, is_subgroup: false }
    }

    /// The cyclic subgroup of order `h`, i.e. all exponents divisible by
    /// (q-1)/h. Rejects h that does not divide q-1.
    pub fn subgroup(ctx: &ModulusContext, h: u64) -> Result<Self> {
        let qm1 = ctx.q - 1;
        if h == 0 || qm1 % h != 0 {
            return Err(Error::NotDivisor { h, qm1 });
        }
        let d = qm1 / h;
        Ok(CharacterSet { exponents: (0..h).map(|k| k * d).collect(), is_subgroup: true })
    }

    /// The even half of the order-`h` subgroup: all exponents divisible by
    /// 2(q-1)/h, cardinality h/2, every member satisfying chi(-1) = 1.
    /// This is the subgroup driving the half-line pipeline.
    pub fn even_subgroup_plus(ctx: &ModulusContext, h: u64) -> Result<Self> {
        if h % 2 != 0 {
            return Err(Error::OddSubgroupOrder(h));
        }
        let qm1 = ctx.q - 1;
        if qm1 % h != 0 {
            return Err(Error::NotDivisor { h, qm1 });
        }
        let d = 2 * qm1 / h;
        Ok(CharacterSet { exponents: (0..h / 2).map(|k| k * d).collect(), is_subgroup: true })
    }

    /// Interval {chi^a : a = 1..len} of consecutive characters.
    pub fn interval(ctx: &ModulusContext, e: u64, len: u64) -> Self {
        let qm1 = ctx.q - 1;
        let mut v: Vec<u64> = (1..=len).map(|a| (e % qm1).wrapping_mul(a) % qm1).collect();
        v.sort_unstable();
        v.dedup();
        CharacterSet { exponents: v, is_subgroup: false }
    }

    pub fn order(&self) -> u64 {
        self.exponents.len() as u64
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn contains(&self, e: u64) -> bool {
        self.exponents.binary_search(&e).is_ok()
    }

    pub fn characters<'a>(&'a self, ctx: &'a ModulusContext) -> impl Iterator<Item = Character<'a>> + 'a {
        self.exponents.iter().map(move |&e| Character::new(ctx, e))
    }

    /// Split into (even, odd) exponent lists by parity of chi(-1).
    pub fn parity_split(&self) -> (Vec<u64>, Vec<u64>) {
        self.exponents.iter().partition(|&&e| e % 2 == 0)
    }

    /// Exact product set A*A (sumset of exponents mod q-1) and doubling K.
    pub fn product_set(&self, ctx: &ModulusContext) -> DoublingReport {
        let qm1 = (ctx.q - 1) as usize;
        let mut hit = vec![false; qm1];
        let mut size = 0u64;
        for &a in &self.exponents {
            for &b in &self.exponents {
                let s = ((a + b) % qm1 as u64) as usize;
                if !hit[s] {
                    hit[s] = true;
                    size += 1;
                }
            }
        }
        DoublingReport { a: self.order(), product_size: size }
    }
}

/// Residues fixed by every character of the order-`h` subgroup:
/// {g^(k h) mod q}, of size (q-1)/h, returned sorted.
pub fn kernel(ctx: &ModulusContext, h: u64) -> Result<Vec<u64>> {
    let qm1 = ctx.q - 1;
    if h == 0 || qm1 % h != 0 {
        return Err(Error::NotDivisor { h, qm1 });
    }
    let d = qm1 / h;
    let mut v: Vec<u64> = (0..d).map(|k| ctx.power_of_root(k * h)).collect();
    v.sort_unstable();
    Ok(v)
}

/// Count, for every chi in `a`, the representations
/// chi = chi1 * conj(chi2) * eta with chi1, chi2 in `a` and eta in `u`.
pub fn verify_cover(ctx: &ModulusContext, a: &CharacterSet, u: &CharacterSet) -> CoverReport {
    let qm1 = ctx.q - 1;
    let mut table = vec![0u64; qm1 as usize];
    for &e1 in a.exponents() {
        for &e2 in a.exponents() {
            for &eu in u.exponents() {
                let e = (e1 + qm1 - e2 + eu) % qm1;
                table[e as usize] += 1;
            }
        }
    }
    let counts: Vec<(u64, u64)> =
        a.exponents().iter().map(|&e| (e, table[e as usize])).collect();
    let threshold2 = a.order(); // count >= A/2  <=>  2*count >= A
    let covered = !counts.is_empty() && counts.iter().all(|&(_, c)| 2 * c >= threshold2);
    CoverReport { counts, covered }
}

/// Greedy witness search for a covering set U: repeatedly pick eta as the
/// most frequent element of the quotient multiset {chi * chi2 * conj(chi1)}
/// over the still-deficient chi. This finds a witness, it does not prove
/// the covering lemma; failure only means the greedy path ran out.
pub fn greedy_cover(ctx: &ModulusContext, a: &CharacterSet) -> Result<CharacterSet> {
    let qm1 = ctx.q - 1;
    assert!(a.order() > 0, "greedy_cover requires a nonempty set");

    // diff[d] = #{(e1, e2) in A^2 : e1 - e2 = d (mod q-1)}
    let mut diff = vec![0u64; qm1 as usize];
    for &e1 in a.exponents() {
        for &e2 in a.exponents() {
            diff[((e1 + qm1 - e2) % qm1) as usize] += 1;
        }
    }
    let nonzero: Vec<(u64, u64)> = diff
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(d, &c)| (d as u64, c))
        .collect();

    let threshold2 = a.order();
    let mut chosen: Vec<u64> = Vec::new();
    let mut counts = vec![0u64; a.exponents().len()];

    loop {
        let deficient: Vec<usize> = (0..counts.len())
            .filter(|&i| 2 * counts[i] < threshold2)
            .collect();
        if deficient.is_empty() {
            let mut u = CharacterSet::from_exponents(ctx, chosen);
            u.is_subgroup = false;
            return Ok(u);
        }
        if chosen.len() as u64 >= qm1 {
            return Err(Error::CoverSearchFailed);
        }
        // chi = chi1 conj(chi2) eta  =>  eta = chi conj(chi1) chi2, i.e.
        // exponent e - d for each difference d = e1 - e2.
        let mut freq = vec![0u64; qm1 as usize];
        for &i in &deficient {
            let e = a.exponents()[i];
            for &(d, c) in &nonzero {
                freq[((e + qm1 - d) % qm1) as usize] += c;
            }
        }
        for &u in &chosen {
            freq[u as usize] = 0;
        }
        let (best, best_f) = freq
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
            .map(|(u, &f)| (u as u64, f))
            .unwrap();
        if best_f == 0 {
            return Err(Error::CoverSearchFailed);
        }
        chosen.push(best);
        for (i, &e) in a.exponents().iter().enumerate() {
            counts[i] += diff[((e + qm1 - best) % qm1) as usize];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::sieve_primes;

    #[test]
    fn eval_basics() {
        let ctx = ModulusContext::new(13).unwrap();
        let chi0 = Character::new(&ctx, 0);
        for n in 1..13 {
            assert!((chi0.eval(n) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        assert_eq!(chi0.eval(13), Complex64::new(0.0, 0.0));
        for e in 0..12 {
            let chi = Character::new(&ctx, e);
            assert!((chi.eval(1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        // q = 13, e = 3, n = 3: ind(3) = 4, exp(2 pi i 3*4/12) = 1
        let chi3 = Character::new(&ctx, 3);
        assert!((chi3.eval(3) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_is_multiplicative() {
        let ctx = ModulusContext::new(101).unwrap();
        for e in [1u64, 7, 50] {
            let chi = Character::new(&ctx, e);
            for m in 1..30u64 {
                for n in 1..30u64 {
                    let lhs = chi.eval(m * n);
                    let rhs = chi.eval(m) * chi.eval(n);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn parity_matches_exponent() {
        for q in sieve_primes(200).into_iter().skip(1) {
            let ctx = ModulusContext::new(q).unwrap();
            for e in 0..q - 1 {
                let chi = Character::new(&ctx, e);
                let want = if e % 2 == 0 { 1.0 } else { -1.0 };
                assert!((chi.eval(q - 1) - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn subgroup_structure() {
        let ctx = ModulusContext::new(13).unwrap();
        assert_eq!(CharacterSet::subgroup(&ctx, 1).unwrap().exponents(), &[0]);
        assert_eq!(
            CharacterSet::subgroup(&ctx, 12).unwrap().exponents(),
            (0..12).collect::<Vec<_>>().as_slice()
        );
        let h4 = CharacterSet::subgroup(&ctx, 4).unwrap();
        assert_eq!(h4.exponents(), &[0, 3, 6, 9]);
        assert!(CharacterSet::subgroup(&ctx, 5).is_err());

        // closure under addition mod q-1
        for &a in h4.exponents() {
            for &b in h4.exponents() {
                assert!(h4.contains((a + b) % 12));
            }
        }
    }

    #[test]
    fn kernel_structure() {
        let ctx = ModulusContext::new(13).unwrap();
        assert_eq!(kernel(&ctx, 12).unwrap(), vec![1]);
        assert_eq!(kernel(&ctx, 1).unwrap(), (1..13).collect::<Vec<u64>>());
        assert_eq!(kernel(&ctx, 4).unwrap(), vec![1, 3, 9]);

        // brute force: residues where every subgroup character equals 1
        for q in [13u64, 31, 61] {
            let ctx = ModulusContext::new(q).unwrap();
            for h in (1..=q - 1).filter(|h| (q - 1) % h == 0) {
                let hs = CharacterSet::subgroup(&ctx, h).unwrap();
                let brute: Vec<u64> = (1..q)
                    .filter(|&n| {
                        hs.characters(&ctx)
                            .all(|chi| (chi.eval(n) - Complex64::new(1.0, 0.0)).norm() < 1e-9)
                    })
                    .collect();
                assert_eq!(kernel(&ctx, h).unwrap(), brute, "q={q} h={h}");
            }
        }
    }

    #[test]
    fn even_subgroup() {
        let ctx = ModulusContext::new(13).unwrap();
        assert_eq!(CharacterSet::even_subgroup_plus(&ctx, 6).unwrap().exponents(), &[0, 4, 8]);
        assert_eq!(
            CharacterSet::even_subgroup_plus(&ctx, 12).unwrap().exponents(),
            &[0, 2, 4, 6, 8, 10]
        );
        assert_eq!(CharacterSet::even_subgroup_plus(&ctx, 2).unwrap().exponents(), &[0]);
        assert!(CharacterSet::even_subgroup_plus(&ctx, 3).is_err());

        for q in [13u64, 101] {
            let ctx = ModulusContext::new(q).unwrap();
            for h in (2..q).filter(|h| h % 2 == 0 && (q - 1) % h == 0) {
                let plus = CharacterSet::even_subgroup_plus(&ctx, h).unwrap();
                assert_eq!(plus.order(), h / 2);
                for chi in plus.characters(&ctx) {
                    assert!(chi.is_even());
                }
            }
        }
    }

    #[test]
    fn orthogonality_small_primes() {
        // full version (q <= 200) lives in the acceptance suite
        for q in sieve_primes(60).into_iter().skip(1) {
            let ctx = ModulusContext::new(q).unwrap();
            for h in (1..q).filter(|h| (q - 1) % h == 0) {
                let hs = CharacterSet::subgroup(&ctx, h).unwrap();
                let ker = kernel(&ctx, h).unwrap();
                for n in 1..q {
                    let s: Complex64 = hs.characters(&ctx).map(|chi| chi.eval(n)).sum();
                    let want = if ker.binary_search(&n).is_ok() { h as f64 } else { 0.0 };
                    assert!((s - Complex64::new(want, 0.0)).norm() < 1e-9, "q={q} h={h} n={n}");
                }
            }
        }
    }

    #[test]
    fn doubling_reports() {
        let ctx = ModulusContext::new(29).unwrap();
        let sub = CharacterSet::subgroup(&ctx, 7).unwrap();
        let d = sub.product_set(&ctx);
        assert_eq!(d.product_size, 7);
        assert_eq!(d.k(), 1.0);

        let single = CharacterSet::from_exponents(&ctx, [5]);
        assert_eq!(single.product_set(&ctx).k(), 1.0);

        // interval {chi^a : a=1..3} with ord(chi) >= 7: sumset {2..6}, K = 5/3
        let iv = CharacterSet::interval(&ctx, 1, 3);
        let d = iv.product_set(&ctx);
        assert_eq!(d.a, 3);
        assert_eq!(d.product_size, 5);
        assert!((d.k() - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cover_verification() {
        let ctx = ModulusContext::new(29).unwrap();
        let sub = CharacterSet::subgroup(&ctx, 7).unwrap();
        let u0 = CharacterSet::from_exponents(&ctx, [0]);
        let rep = verify_cover(&ctx, &sub, &u0);
        assert!(rep.covered);
        for &(_, c) in &rep.counts {
            assert_eq!(c, 7); // any chi2, then chi1 = chi*chi2
        }

        let empty = CharacterSet::from_exponents(&ctx, []);
        let rep = verify_cover(&ctx, &sub, &empty);
        assert!(!rep.covered);
        assert!(rep.counts.iter().all(|&(_, c)| c == 0));

        // interval of length 3 with U = all quotients A*conj(A)
        let iv = CharacterSet::interval(&ctx, 1, 3);
        let qm1 = 28u64;
        let mut quots = Vec::new();
        for &a in iv.exponents() {
            for &b in iv.exponents() {
                quots.push((a + qm1 - b) % qm1);
            }
        }
        let u = CharacterSet::from_exponents(&ctx, quots);
        assert!(verify_cover(&ctx, &iv, &u).covered);
    }

    #[test]
    fn greedy_cover_finds_witnesses() {
        let ctx = ModulusContext::new(29).unwrap();

        let sub = CharacterSet::subgroup(&ctx, 7).unwrap();
        let u = greedy_cover(&ctx, &sub).unwrap();
        assert_eq!(u.exponents(), &[0]);
        assert!(verify_cover(&ctx, &sub, &u).covered);

        let single = CharacterSet::from_exponents(&ctx, [11]);
        let u = greedy_cover(&ctx, &single).unwrap();
        assert_eq!(u.order(), 1);
        assert!(verify_cover(&ctx, &single, &u).covered);

        // intervals have K < 2, so the witness should stay small
        for len in [3u64, 5, 9] {
            let iv = CharacterSet::interval(&ctx, 1, len);
            let u = greedy_cover(&ctx, &iv).unwrap();
            assert!(verify_cover(&ctx, &iv, &u).covered);
            assert!(u.order() <= 3, "len={len} gave #U={}", u.order());
        }
    }
}
