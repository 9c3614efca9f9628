//! Offset-constellation sieves over the naturals.
//!
//! An [`OffsetSystem`] is a finite set of even offsets `O = {0, o_1, ...}`.
//! Sieving the naturals by the first `m+1` primes removes every `n` for which
//! `n + o` is divisible by one of those primes for some `o` in `O`; what is
//! left is periodic with period `p_0 * p_1 * ... * p_m`. The classic examples
//! are `{0}` (survivors of depth m are the numbers coprime to the first m+1
//! primes), `{0, 2}` (twin-style survivors) and `{0, 2, 6, 8}` (quadruplet
//! survivors).

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::primes::{is_prime, PrimeTable};

/// Widest span a single [`sieve_segment`] call will materialize (bits).
pub const DEFAULT_SEGMENT_CAP: u64 = 1 << 26;

/// Default ceiling on full-period enumeration and other bulk scans.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

/// Largest offset a custom system may carry; keeps all cutoff arithmetic
/// comfortably inside u64.
pub const MAX_OFFSET_BOUND: u64 = 1 << 32;

/// A set of offsets defining one sieve.
///
/// Invariants (enforced by [`OffsetSystem::custom`], true by construction for
/// the named systems): offsets start at 0, strictly increase, and for every
/// prime `p` the residues they remove leave at least one class of `Z/pZ`
/// untouched, so no sieving step can empty the naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetSystem {
    name: String,
    offsets: Vec<u64>,
}

impl OffsetSystem {
    /// `{0}`: survivors are the integers coprime to every sieving prime.
    pub fn single() -> Self {
        OffsetSystem { name: "single".into(), offsets: vec![0] }
    }

    /// `{0, 2}`: the twin-former sieve.
    pub fn double() -> Self {
        OffsetSystem { name: "double".into(), offsets: vec![0, 2] }
    }

    /// `{0, 2, 6, 8}`: the prime-quadruplet sieve.
    pub fn quad() -> Self {
        OffsetSystem { name: "quad".into(), offsets: vec![0, 2, 6, 8] }
    }

    /// A user-supplied system. Rejects offset lists that are empty, do not
    /// start at 0, are not strictly increasing, or whose removed residues
    /// cover all of `Z/pZ` for some prime `p` (which would eventually kill
    /// every natural).
    pub fn custom(offsets: Vec<u64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::domain("offset list must not be empty"));
        }
        if offsets[0] != 0 {
            return Err(Error::domain("offset list must start with 0"));
        }
        if !offsets.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::domain("offsets must be strictly increasing"));
        }
        let max = *offsets.last().unwrap();
        if max > MAX_OFFSET_BOUND {
            return Err(Error::domain(format!("offsets must not exceed {MAX_OFFSET_BOUND}")));
        }
        let sys = OffsetSystem { name: "custom".into(), offsets };
        // |O| residues can only cover Z/pZ when p <= |O|, so finitely many
        // primes need checking.
        let mut p = 2u64;
        while p as usize <= sys.offsets.len() {
            if is_prime(p) && sys.removed_count(p) == p {
                return Err(Error::domain(format!(
                    "offsets remove every residue class mod {p}; system is inadmissible"
                )));
            }
            p += 1;
        }
        Ok(sys)
    }

    /// Look up one of the named systems.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "single" => Some(Self::single()),
            "double" => Some(Self::double()),
            "quad" => Some(Self::quad()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn max_offset(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    /// Shift subtracted from `p^2` when bounding searches and effective
    /// ranges: `max_offset + 2`.
    pub fn cutoff_shift(&self) -> u64 {
        self.max_offset() + 2
    }

    /// The residue classes mod `p` that sieving by `p` removes, i.e.
    /// `{-o mod p : o in O}`, sorted with duplicates merged.
    pub fn removed_residues(&self, p: u64) -> Vec<u64> {
        let mut rs: Vec<u64> = self.offsets.iter().map(|&o| (p - o % p) % p).collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    }

    /// Number of distinct residue classes removed mod `p`.
    pub fn removed_count(&self, p: u64) -> u64 {
        self.removed_residues(p).len() as u64
    }

    /// Does sieving by `p` remove `n`?
    #[inline]
    pub fn removes(&self, n: u64, p: u64) -> bool {
        self.offsets.iter().any(|&o| (n % p + o % p) % p == 0)
    }
}

/// Does `n` survive sieving by the first `depth + 1` primes?
///
/// Membership is decided purely by the residue rule above; in particular
/// `n = 1` survives the single sieve at every depth but is removed by the
/// double and quadruplet sieves from depth 1 on.
pub fn survives(n: u64, depth: usize, system: &OffsetSystem, table: &mut PrimeTable) -> Result<bool> {
    if n == 0 {
        return Err(Error::domain("sieve membership is defined on n >= 1"));
    }
    table.ensure_count(depth + 1)?;
    Ok(survives_in(n, depth, system, table.primes()))
}

pub(crate) fn survives_in(n: u64, depth: usize, system: &OffsetSystem, primes: &[u64]) -> bool {
    primes[..=depth].iter().all(|&p| !system.removes(n, p))
}

/// The survivors of one sieve over a finite window, stored as a bitmap.
#[derive(Clone, Debug)]
pub struct SurvivorSegment {
    lo: u64,
    hi: u64,
    depth: usize,
    bits: Bits,
}

impl SurvivorSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Window width in integers.
    pub fn span(&self) -> u64 {
        self.hi - self.lo + 1
    }

    /// Membership of `n`, which must lie in `[lo, hi]`.
    pub fn contains(&self, n: u64) -> bool {
        assert!(
            n >= self.lo && n <= self.hi,
            "{} outside segment [{}, {}]",
            n,
            self.lo,
            self.hi
        );
        self.bits.get((n - self.lo) as usize)
    }

    pub fn survivor_count(&self) -> usize {
        self.bits.count_ones()
    }

    /// Surviving values, ascending.
    pub fn survivors(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(move |i| self.lo + i as u64)
    }

    pub fn first(&self) -> Option<u64> {
        self.survivors().next()
    }
}

/// Sieve the window `[lo, hi]` (1 <= lo <= hi) to `depth`.
pub fn sieve_segment(
    lo: u64,
    hi: u64,
    depth: usize,
    system: &OffsetSystem,
    table: &mut PrimeTable,
) -> Result<SurvivorSegment> {
    sieve_segment_capped(lo, hi, depth, system, table, DEFAULT_SEGMENT_CAP)
}

/// [`sieve_segment`] with an explicit span ceiling.
pub fn sieve_segment_capped(
    lo: u64,
    hi: u64,
    depth: usize,
    system: &OffsetSystem,
    table: &mut PrimeTable,
    cap: u64,
) -> Result<SurvivorSegment> {
    if lo < 1 || lo > hi {
        return Err(Error::domain(format!("segment requires 1 <= lo <= hi, got [{lo}, {hi}]")));
    }
    if hi - lo + 1 > cap {
        return Err(Error::resource(format!(
            "segment span {} exceeds cap {cap}",
            hi - lo + 1
        )));
    }
    table.ensure_count(depth + 1)?;
    Ok(sieve_segment_in(lo, hi, depth, system, table.primes()))
}

/// Core marking loop; `primes` must already hold at least `depth + 1` entries.
pub(crate) fn sieve_segment_in(
    lo: u64,
    hi: u64,
    depth: usize,
    system: &OffsetSystem,
    primes: &[u64],
) -> SurvivorSegment {
    let span = (hi - lo + 1) as usize;
    let mut bits = Bits::all_set(span);
    let max_offset = system.max_offset();
    for &p in &primes[..=depth] {
        if p > max_offset {
            // Offsets are distinct mod p here, so no dedup pass is needed.
            for &o in system.offsets() {
                stride_clear(&mut bits, lo, hi, p, (p - o) % p);
            }
        } else {
            for r in system.removed_residues(p) {
                stride_clear(&mut bits, lo, hi, p, r);
            }
        }
    }
    SurvivorSegment { lo, hi, depth, bits }
}

/// Clear every index of `[lo, hi]` congruent to `r` mod `p`.
fn stride_clear(bits: &mut Bits, lo: u64, hi: u64, p: u64, r: u64) {
    let mut n = lo + (r + p - lo % p) % p;
    while n <= hi {
        bits.clear((n - lo) as usize);
        match n.checked_add(p) {
            Some(next) => n = next,
            None => break,
        }
    }
}

/// The first `count` survivors of the sieve, scanning upward from 1.
pub fn first_survivors(
    count: usize,
    depth: usize,
    system: &OffsetSystem,
    table: &mut PrimeTable,
) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut lo = 1u64;
    let chunk = 1u64 << 16;
    while out.len() < count {
        if lo > DEFAULT_ENUMERATION_CAP {
            return Err(Error::resource(format!(
                "prefix scan passed {DEFAULT_ENUMERATION_CAP} with only {} of {count} survivors",
                out.len()
            )));
        }
        let hi = lo + chunk - 1;
        let seg = sieve_segment(lo, hi, depth, system, table)?;
        out.extend(seg.survivors().take(count - out.len()));
        lo = hi + 1;
    }
    Ok(out)
}

/// Period length and exact survivor count per period at `depth`.
///
/// Both are products over the sieving primes — `period = prod p_i` and
/// `survivor_count = prod (p_i - r_i)` with `r_i` the distinct removed
/// residues mod `p_i` — so they are reported as big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSummary {
    pub depth: usize,
    pub period: BigUint,
    pub survivor_count: BigUint,
}

pub fn period_summary(depth: usize, system: &OffsetSystem, table: &mut PrimeTable) -> Result<PeriodSummary> {
    table.ensure_count(depth + 1)?;
    let mut period = BigUint::from(1u32);
    let mut survivors = BigUint::from(1u32);
    for &p in &table.primes()[..=depth] {
        let removed = system.removed_count(p);
        if removed == p {
            return Err(Error::invariant(format!(
                "system {} removes all residues mod {p}",
                system.name()
            )));
        }
        period *= p;
        survivors *= p - removed;
    }
    Ok(PeriodSummary { depth, period, survivor_count: survivors })
}

/// Every survivor in the first period `[1, prod p_i]`, ascending.
pub fn period_elements(depth: usize, system: &OffsetSystem, table: &mut PrimeTable) -> Result<Vec<u64>> {
    period_elements_capped(depth, system, table, DEFAULT_ENUMERATION_CAP)
}

/// [`period_elements`] with an explicit ceiling on the period length.
pub fn period_elements_capped(
    depth: usize,
    system: &OffsetSystem,
    table: &mut PrimeTable,
    cap: u64,
) -> Result<Vec<u64>> {
    let summary = period_summary(depth, system, table)?;
    let period = u64::try_from(&summary.period)
        .ok()
        .filter(|&p| p <= cap)
        .ok_or_else(|| {
            Error::resource(format!(
                "period {} at depth {depth} exceeds enumeration ceiling {cap}",
                summary.period
            ))
        })?;
    table.ensure_count(depth + 1)?;
    let primes = table.primes();
    let chunk = 1u64 << 22;
    let ranges: Vec<(u64, u64)> = (0..period.div_ceil(chunk))
        .map(|i| (1 + i * chunk, period.min((i + 1) * chunk)))
        .collect();
    let found: Vec<Vec<u64>> = ranges
        .par_iter()
        .map(|&(lo, hi)| sieve_segment_in(lo, hi, depth, system, primes).survivors().collect())
        .collect();
    Ok(found.concat())
}
