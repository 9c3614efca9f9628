//! Prime generation and primality testing.
//!
//! Everything downstream indexes primes from zero: `p_0 = 2`, `p_1 = 3`,
//! `p_2 = 5`, ... A [`PrimeTable`] grows on demand and is the only thing the
//! other modules consult for prime values; [`is_prime`] is an exact
//! trial-division test used where a table would be wasteful.

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Hard ceiling on how far a [`PrimeTable`] will sieve (~2.1e9). Requests
/// that would push past it fail with a resource error instead of thrashing.
pub const PRIME_LIMIT_CAP: u64 = 1 << 31;

/// Exact deterministic primality test by trial division over 6k±1 candidates.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// All primes `<= limit`, ascending. `limit` must be at least 2.
pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::domain(format!("prime limit must be >= 2, got {limit}")));
    }
    if limit > PRIME_LIMIT_CAP {
        return Err(Error::resource(format!(
            "prime limit {limit} exceeds cap {PRIME_LIMIT_CAP}"
        )));
    }
    // Odd-only sieve of Eratosthenes: bit i stands for 2i+1.
    let half = ((limit - 1) / 2 + 1) as usize; // candidates 1,3,5,..,<=limit
    let mut bits = Bits::all_set(half);
    bits.clear(0); // 1 is not prime
    let mut i = 1usize;
    loop {
        let p = 2 * i as u64 + 1;
        if p * p > limit {
            break;
        }
        if bits.get(i) {
            let mut j = (p * p / 2) as usize; // index of p^2
            while j < half {
                bits.clear(j);
                j += p as usize;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(est_prime_count(limit));
    primes.push(2);
    primes.extend(bits.iter_ones().map(|i| 2 * i as u64 + 1));
    Ok(primes)
}

/// Overestimate of pi(limit), for preallocation only.
fn est_prime_count(limit: u64) -> usize {
    if limit < 17 {
        return 8;
    }
    let x = limit as f64;
    (x / (x.ln() - 1.2)) as usize + 8
}

/// A growable table of the primes in order.
///
/// Operations that need "the first m primes" or "all primes up to L" take the
/// table mutably and extend it as required; lookups on already-covered ranges
/// never re-sieve.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    primes: Vec<u64>,
    limit: u64,
}

impl Default for PrimeTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeTable {
    /// A table seeded with the primes below 2^16.
    pub fn new() -> Self {
        Self::with_limit(1 << 16).expect("seed limit is valid")
    }

    /// A table covering exactly the primes `<= limit`.
    pub fn with_limit(limit: u64) -> Result<Self> {
        Ok(PrimeTable { primes: primes_up_to(limit)?, limit })
    }

    /// Largest value the table is exhaustive up to.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes currently held.
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The primes sieved so far, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The m-th prime, zero-based: `nth_prime(0) == 2`.
    pub fn nth_prime(&mut self, m: usize) -> Result<u64> {
        self.ensure_count(m + 1)?;
        Ok(self.primes[m])
    }

    /// Extend until at least `count` primes are available.
    pub fn ensure_count(&mut self, count: usize) -> Result<&[u64]> {
        while self.primes.len() < count {
            self.grow(self.limit.saturating_mul(2))?;
        }
        Ok(&self.primes)
    }

    /// Extend until every prime `<= limit` is present.
    pub fn ensure_limit(&mut self, limit: u64) -> Result<&[u64]> {
        if limit > PRIME_LIMIT_CAP {
            return Err(Error::resource(format!(
                "prime limit {limit} exceeds cap {PRIME_LIMIT_CAP}"
            )));
        }
        if limit > self.limit {
            // Grow geometrically so repeated small bumps stay cheap.
            self.grow(limit.max(self.limit.saturating_mul(2)))?;
        }
        Ok(&self.primes)
    }

    fn grow(&mut self, new_limit: u64) -> Result<()> {
        let new_limit = new_limit.min(PRIME_LIMIT_CAP);
        if new_limit <= self.limit {
            return Err(Error::resource(format!(
                "prime table cannot grow past {PRIME_LIMIT_CAP}"
            )));
        }
        self.primes = primes_up_to(new_limit)?;
        self.limit = new_limit;
        Ok(())
    }

    /// pi(limit): how many primes are `<= limit`.
    pub fn count_up_to(&mut self, limit: u64) -> Result<usize> {
        self.ensure_limit(limit)?;
        Ok(self.primes.partition_point(|&p| p <= limit))
    }

    /// Smallest prime strictly greater than `n`.
    pub fn next_prime_after(&mut self, n: u64) -> Result<u64> {
        self.ensure_limit(n.saturating_add(2))?;
        loop {
            let idx = self.primes.partition_point(|&p| p <= n);
            if let Some(&p) = self.primes.get(idx) {
                return Ok(p);
            }
            self.grow(self.limit.saturating_mul(2))?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_prime_small_and_known() {
        let below_20: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(below_20, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(9));
        assert!(is_prime(1481));
        assert!(is_prime(1_299_449) && is_prime(1_299_451));
        assert!(!is_prime(1_299_453)); // divisible by 3
    }

    #[test]
    fn primes_up_to_matches_trial_division() {
        let sieved = primes_up_to(1000).unwrap();
        let trial: Vec<u64> = (2..=1000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
        assert_eq!(sieved.len(), 168);
    }

    #[test]
    fn limit_below_two_is_rejected() {
        assert!(matches!(primes_up_to(1), Err(Error::Domain(_))));
    }

    #[test]
    fn nth_prime_grows_on_demand() {
        let mut t = PrimeTable::with_limit(10).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.nth_prime(0).unwrap(), 2);
        assert_eq!(t.nth_prime(16).unwrap(), 59);
        assert_eq!(t.nth_prime(999).unwrap(), 7919); // p_999, zero-based
    }

    #[test]
    fn count_and_successor() {
        let mut t = PrimeTable::new();
        assert_eq!(t.count_up_to(10_000).unwrap(), 1229);
        assert_eq!(t.next_prime_after(7919).unwrap(), 7927);
        assert_eq!(t.next_prime_after(2).unwrap(), 3);
    }
}
