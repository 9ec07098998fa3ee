//! Exact arithmetic over prime factorizations.
//!
//! Huge integers (primorials, colossally abundant numbers) are never
//! expanded unless [`Factorization::value`] is called explicitly; the
//! multiplicative quantities σ(n)/n and n/φ(n) are computed directly from
//! the factorization as reduced big rationals, so comparisons stay exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::primes::PrimeTable;
use crate::{Error, Result};

/// Multiset of `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn new(pairs: Vec<(u64, u32)>) -> Result<Factorization> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Usage(format!(
                    "primes must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(p, _)) = pairs.first() {
            if p < 2 {
                return Err(Error::Usage(format!("{p} is not a prime")));
            }
        }
        if pairs.iter().any(|&(_, a)| a == 0) {
            return Err(Error::Usage("exponents must be at least 1".into()));
        }
        Ok(Factorization { pairs })
    }

    /// The empty product, representing 1.
    pub fn empty() -> Factorization {
        Factorization { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True when the prime 2 does not appear.
    pub fn is_odd(&self) -> bool {
        self.pairs.first().is_none_or(|&(p, _)| p != 2)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    /// Exact integer value `∏ p^a`.
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for &(p, a) in &self.pairs {
            v *= BigInt::from(p).pow(a);
        }
        v
    }

    /// Rough size estimate in bits, without expanding the value.
    pub fn approx_bits(&self) -> f64 {
        self.pairs
            .iter()
            .map(|&(p, a)| (p as f64).log2() * a as f64)
            .sum()
    }

    /// The integer when it is small, the factorization otherwise.
    pub fn compact(&self) -> String {
        if self.approx_bits() < 60.0 {
            self.value().to_string()
        } else {
            format!("{self}")
        }
    }

    /// Product with a single extra prime (the prime may already occur).
    pub fn multiplied_by_prime(&self, p: u64) -> Factorization {
        let mut pairs = self.pairs.clone();
        match pairs.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => pairs[i].1 += 1,
            Err(i) => pairs.insert(i, (p, 1)),
        }
        Factorization { pairs }
    }

    /// Product of two coprime factorizations.
    pub fn mul_coprime(&self, other: &Factorization) -> Result<Factorization> {
        let mut pairs = self.pairs.clone();
        for &(p, a) in &other.pairs {
            match pairs.binary_search_by_key(&p, |&(q, _)| q) {
                Ok(_) => return Err(Error::Usage(format!("factorizations share the prime {p}"))),
                Err(i) => pairs.insert(i, (p, a)),
            }
        }
        Ok(Factorization { pairs })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(p, a) in &self.pairs {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

/// Factor `n` by walking the smallest-prime-factor table.
pub fn factorize(n: u64, table: &PrimeTable) -> Result<Factorization> {
    if n < 2 || n > table.limit() {
        return Err(Error::Usage(format!(
            "factorize expects 2 <= n <= {}, got {n}",
            table.limit()
        )));
    }
    let mut pairs = Vec::new();
    let mut m = n;
    while m > 1 {
        let p = table.spf(m);
        let mut a = 0u32;
        while m.is_multiple_of(p) {
            m /= p;
            a += 1;
        }
        pairs.push((p, a));
    }
    Ok(Factorization { pairs })
}

fn big(p: u64) -> BigInt {
    BigInt::from(p)
}

/// Exact `σ(n)/n = ∏_p (p^(a+1) - 1) / (p^a (p - 1))`.
pub fn sigma_over_n(f: &Factorization) -> BigRational {
    let mut r = BigRational::one();
    for &(p, a) in f.pairs() {
        let num = big(p).pow(a + 1) - 1;
        let den = big(p).pow(a) * (big(p) - 1);
        r *= BigRational::new(num, den);
    }
    r
}

/// Exact `n/φ(n) = ∏_p p/(p - 1)`; depends only on the radical.
pub fn n_over_phi(f: &Factorization) -> BigRational {
    let mut r = BigRational::one();
    for &(p, _) in f.pairs() {
        r *= BigRational::new(big(p), big(p) - 1);
    }
    r
}
