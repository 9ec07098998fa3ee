//! Prime generation, primorials, and certified log-sum accumulation.
//!
//! The sieve is a plain linear (smallest-prime-factor) sieve; every range the
//! pipeline touches fits in memory with lots of headroom, so nothing fancier
//! is warranted. [`log_theta_sum`] accumulates per-prime log enclosures with
//! outward rounding at each addition, which keeps the running sum a sound
//! enclosure of the exact Chebyshev-θ-style quantity.

use crate::arith::Factorization;
use crate::real::{Ctx, Interval};
use crate::{Error, Result};

/// Default inclusive sieve bound: covers the brute-force scan range and the
/// bridge prime 20011 with room to spare.
pub const DEFAULT_SIEVE_LIMIT: u64 = 100_000;

/// First prime at or above 20000; the tail argument takes over from there.
pub const BRIDGE_PRIME: u64 = 20011;

/// Immutable sieve output: the ordered primes up to `limit` and a
/// smallest-prime-factor map for every integer in range.
#[derive(Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    spf: Vec<u32>,
}

/// Linear sieve; each composite is struck exactly once by its least prime.
pub fn sieve_up_to(limit: u64) -> Result<PrimeTable> {
    if limit < 3 {
        return Err(Error::Usage(format!(
            "sieve limit must be >= 3, got {limit}"
        )));
    }
    if limit > u32::MAX as u64 {
        return Err(Error::Usage(format!(
            "sieve limit {limit} exceeds the supported range"
        )));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u64> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u64);
        }
        for &p in &primes {
            let p = p as usize;
            if p > spf[i] as usize || i * p > n {
                break;
            }
            spf[i * p] = p as u32;
        }
    }
    Ok(PrimeTable { limit, primes, spf })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Smallest prime factor of `m`, `2 <= m <= limit`.
    pub fn spf(&self, m: u64) -> u64 {
        self.spf[m as usize] as u64
    }

    /// The k-th prime, 1-based: `nth_prime(1) = 2`.
    pub fn nth_prime(&self, k: usize) -> Result<u64> {
        self.primes.get(k.wrapping_sub(1)).copied().ok_or_else(|| {
            Error::Usage(format!(
                "prime index {k} is outside the sieve (pi({}) = {})",
                self.limit,
                self.primes.len()
            ))
        })
    }

    /// 1-based index of a prime, if it is one.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    pub fn is_prime(&self, p: u64) -> bool {
        p >= 2 && p <= self.limit && self.spf[p as usize] as u64 == p
    }

    /// π(x) for x within the sieve.
    pub fn pi(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    /// Index k of the first prime >= 20000 (so `nth_prime(k) = 20011`).
    pub fn bridge_index(&self) -> Result<usize> {
        self.prime_index(BRIDGE_PRIME).ok_or_else(|| {
            Error::Usage(format!(
                "sieve limit {} does not reach the bridge prime {BRIDGE_PRIME}",
                self.limit
            ))
        })
    }
}

/// A primorial `N_k` (all primes through the k-th) or its odd counterpart
/// `N'_k` (the same product with 2 omitted), kept in factorized form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimorialSpec {
    pub k: usize,
    pub includes_two: bool,
    pub factorization: Factorization,
}

/// The odd primorial `N'_k = 3·5···p_k`. Requires `k >= 2`.
pub fn odd_primorial(k: usize, table: &PrimeTable) -> Result<PrimorialSpec> {
    if k < 2 {
        return Err(Error::Usage(
            "odd primorials start at k = 2 (the empty product has no index)".into(),
        ));
    }
    let _ = table.nth_prime(k)?;
    let pairs = table.primes[1..k].iter().map(|&p| (p, 1)).collect();
    Ok(PrimorialSpec {
        k,
        includes_two: false,
        factorization: Factorization::new(pairs)?,
    })
}

/// The full primorial `N_k = 2·3···p_k`.
pub fn primorial(k: usize, table: &PrimeTable) -> Result<PrimorialSpec> {
    if k < 1 {
        return Err(Error::Usage("primorials start at k = 1".into()));
    }
    let _ = table.nth_prime(k)?;
    let pairs = table.primes[..k].iter().map(|&p| (p, 1)).collect();
    Ok(PrimorialSpec {
        k,
        includes_two: true,
        factorization: Factorization::new(pairs)?,
    })
}

/// Certified enclosure of `Σ log p_i` over `i = 1..=k` (or `2..=k` when
/// `include_two` is false), i.e. `log N_k` resp. `log N'_k`.
pub fn log_theta_sum(
    k: usize,
    include_two: bool,
    table: &PrimeTable,
    ctx: &Ctx,
) -> Result<Interval> {
    let start = if include_two { 1 } else { 2 };
    if k < start {
        return Err(Error::Usage(format!("log_theta_sum needs k >= {start}")));
    }
    let _ = table.nth_prime(k)?;
    let mut acc = LogSumAccumulator::new(ctx);
    for &p in &table.primes[start - 1..k] {
        acc.push(p)?;
    }
    Ok(acc.sum().clone())
}

/// Running outward-rounded sum of prime logarithms; lets sweeps extend the
/// sum one prime at a time instead of recomputing it per index.
pub struct LogSumAccumulator<'c> {
    ctx: &'c Ctx,
    sum: Interval,
}

impl<'c> LogSumAccumulator<'c> {
    pub fn new(ctx: &'c Ctx) -> LogSumAccumulator<'c> {
        LogSumAccumulator {
            ctx,
            sum: Interval::zero(ctx.prec()),
        }
    }

    pub fn push(&mut self, p: u64) -> Result<()> {
        let lp = self.ctx.ln_u64(p)?;
        self.sum = self.sum.add(&lp, self.ctx.prec());
        Ok(())
    }

    pub fn sum(&self) -> &Interval {
        &self.sum
    }
}
