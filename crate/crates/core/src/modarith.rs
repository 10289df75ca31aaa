//! Integer substrate: prime sieves, factorization, primitive roots, index
//! (discrete logarithm) tables and the standard arithmetic functions used
//! by the analytic modules.
//!
//! The index table is stored in full (`O(q)` memory). At the moduli this
//! crate targets (q up to ~10^6) the table beats baby-step/giant-step on
//! both speed and simplicity, and character evaluation becomes two lookups
//! and one root-of-unity multiply.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// Ascending list of all primes up to `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve of Eratosthenes up to `limit` (inclusive).
    pub fn up_to(limit: u64) -> Self {
        PrimeTable { limit, primes: sieve_primes(limit) }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p <= x`; the table must have been sieved at least that far.
    pub fn range_to(&self, x: u64) -> Result<&[u64]> {
        if x > self.limit {
            return Err(Error::PrimeTableTooSmall { limit: self.limit, needed: x });
        }
        let k = self.primes.partition_point(|&p| p <= x);
        Ok(&self.primes[..k])
    }
}

/// All primes `<= limit`, ascending. `limit` 0 or 1 yields an empty list.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 { n / ((n as f64).ln() as usize - 1) } else { 8 });
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Segmented walk over the primes in `(lo, hi]`, calling `f` on each in
/// ascending order. Memory stays `O(sqrt(hi) + block)` so sums over primes
/// up to 10^8 need no giant allocation.
pub fn for_each_prime_in<F: FnMut(u64)>(lo: u64, hi: u64, mut f: F) {
    if hi < 2 || hi <= lo {
        return;
    }
    let root = (hi as f64).sqrt() as u64 + 1;
    let base = sieve_primes(root);
    for &p in &base {
        if p > lo && p <= hi {
            f(p);
        }
    }
    let seg_lo = lo.max(root) + 1;
    if seg_lo > hi {
        return;
    }
    const BLOCK: u64 = 1 << 18;
    let mut start = seg_lo;
    let mut mask = vec![false; BLOCK as usize];
    while start <= hi {
        let end = (start + BLOCK - 1).min(hi);
        let len = (end - start + 1) as usize;
        mask[..len].fill(false);
        for &p in &base {
            if p * p > end {
                break;
            }
            let mut j = start.div_ceil(p) * p;
            if j < p * p {
                j = p * p;
            }
            while j <= end {
                mask[(j - start) as usize] = true;
                j += p;
            }
        }
        for (off, &c) in mask[..len].iter().enumerate() {
            if !c {
                f(start + off as u64);
            }
        }
        start = end + 1;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square and multiply.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n >= 1` as ascending `(prime, exponent)` pairs.
/// `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0u32;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest primitive root mod a prime `q` (1 for q = 2). The search tests
/// candidates in increasing order against `g^((q-1)/l) != 1` for every
/// prime `l | q-1`, so the output is deterministic across runs.
pub fn find_primitive_root(q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q == 2 {
        return Ok(1);
    }
    let qm1 = q - 1;
    let prime_divs: Vec<u64> = factorize(qm1).into_iter().map(|(p, _)| p).collect();
    for g in 2..q {
        if prime_divs.iter().all(|&l| pow_mod(g, qm1 / l, q) != 1) {
            return Ok(g);
        }
    }
    unreachable!("a prime modulus always has a primitive root");
}

/// Mobius function in {-1, 0, 1}.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k >= 2) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Von Mangoldt support: `Some((p, k))` when `n = p^k`, else `None`.
/// The value of Lambda(n) is then `ln p`.
pub fn von_mangoldt(n: u64) -> Option<(u64, u32)> {
    assert!(n >= 1);
    if n == 1 {
        return None;
    }
    let f = factorize(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Value of the von Mangoldt function Lambda(n).
pub fn von_mangoldt_value(n: u64) -> f64 {
    von_mangoldt(n).map_or(0.0, |(p, _)| (p as f64).ln())
}

/// The substrate for all character work mod an odd prime `q`: a primitive
/// root, the factorization of `q-1`, the full index table, the power table
/// (its inverse) and the cached `(q-1)`-th roots of unity.
#[derive(Debug, Clone)]
pub struct ModulusContext {
    pub q: u64,
    pub g: u64,
    pub factor_qm1: Vec<(u64, u32)>,
    /// ind[n] for n in 1..q satisfies g^ind[n] = n (mod q); ind[0] is unused.
    ind: Vec<u32>,
    /// pow[k] = g^k mod q for k in 0..q-1.
    pow: Vec<u32>,
    /// roots[j] = exp(2 pi i j / (q-1)) for j in 0..q-1.
    roots: Vec<Complex64>,
}

impl ModulusContext {
    /// Build the full context. Rejects 2 and composite moduli: character
    /// construction through a single primitive root needs an odd prime.
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || !is_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
        let g = find_primitive_root(q)?;
        let qm1 = q - 1;
        let factor_qm1 = factorize(qm1);
        let mut ind = vec![0u32; q as usize];
        let mut pow = vec![0u32; qm1 as usize];
        let mut x = 1u64;
        for k in 0..qm1 {
            pow[k as usize] = x as u32;
            ind[x as usize] = k as u32;
            x = mul_mod(x, g, q);
        }
        debug_assert_eq!(x, 1, "g must have order q-1");
        let tau = 2.0 * std::f64::consts::PI / qm1 as f64;
        let roots = (0..qm1)
            .map(|j| Complex64::from_polar(1.0, tau * j as f64))
            .collect();
        Ok(ModulusContext { q, g, factor_qm1, ind, pow, roots })
    }

    /// Discrete logarithm of `n` (coprime residue) to base `g`.
    pub fn index_of(&self, n: u64) -> u32 {
        let r = (n % self.q) as usize;
        debug_assert!(r != 0, "index_of needs a unit");
        self.ind[r]
    }

    /// g^k mod q with k reduced mod q-1.
    pub fn power_of_root(&self, k: u64) -> u64 {
        self.pow[(k % (self.q - 1)) as usize] as u64
    }

    /// exp(2 pi i j/(q-1)) with j reduced mod q-1.
    pub fn root_of_unity(&self, j: u64) -> Complex64 {
        self.roots[(j % (self.q - 1)) as usize]
    }
}
