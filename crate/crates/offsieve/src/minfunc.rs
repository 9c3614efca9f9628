//! The minimum function of a sieve: the smallest survivor above 1 at each
//! depth, the depths where it jumps, and the effective range where surviving
//! a sieve already certifies primality of the whole constellation.

use crate::error::{Error, Result};
use crate::primes::{is_prime, PrimeTable};
use crate::sieve::{sieve_segment_in, OffsetSystem, DEFAULT_ENUMERATION_CAP};

/// One row of the minimum sequence: `value` is the least survivor `> 1` at
/// depth `m`, or `None` if no survivor was found at or below the search bound
/// `p_{m+1}^2 + max_offset + 2` (a bound-model violation worth surfacing,
/// never silently extended).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinSeqEntry {
    pub m: usize,
    pub prime: u64,
    pub value: Option<u64>,
    pub is_jump: bool,
}

/// A depth where the minimum strictly increased.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpPoint {
    pub m: usize,
    pub prime: u64,
    pub prev: u64,
    pub value: u64,
}

/// Incremental walker over the minimum sequence.
///
/// The minimum is monotone, so each step either keeps the previous value
/// (when `p_m` spares it) or scans forward from just past it. A scan runs in
/// segments and stops at the depth's search bound.
struct MinWalker<'s> {
    system: &'s OffsetSystem,
    m: usize,
    prev: Option<u64>,
    scan_from: u64,
}

impl<'s> MinWalker<'s> {
    fn new(system: &'s OffsetSystem) -> Self {
        MinWalker { system, m: 0, prev: None, scan_from: 2 }
    }

    fn step(&mut self, table: &mut PrimeTable) -> Result<MinSeqEntry> {
        let m = self.m;
        let prime = table.nth_prime(m)?;
        let p_next = table.nth_prime(m + 1)?;
        let bound = p_next
            .checked_mul(p_next)
            .and_then(|sq| sq.checked_add(self.system.cutoff_shift()))
            .ok_or_else(|| Error::resource(format!("search bound at depth {m} overflows u64")))?;
        let value = match self.prev {
            Some(v) if !self.system.removes(v, prime) => Some(v),
            _ => scan_min(self.scan_from, bound, m, self.system, table.primes()),
        };
        let is_jump = matches!((self.prev, value), (Some(pv), Some(v)) if v > pv);
        match value {
            Some(v) => {
                self.prev = Some(v);
                self.scan_from = v + 1;
            }
            None => {
                // Nothing at or below the bound: later depths can only find
                // survivors beyond it.
                self.prev = None;
                self.scan_from = bound + 1;
            }
        }
        self.m += 1;
        Ok(MinSeqEntry { m, prime, value, is_jump })
    }
}

/// Least survivor of depth `depth` in `[from, bound]`, if any.
fn scan_min(from: u64, bound: u64, depth: usize, system: &OffsetSystem, primes: &[u64]) -> Option<u64> {
    const SCAN_CHUNK: u64 = 1 << 16;
    let mut lo = from.max(2);
    while lo <= bound {
        let hi = bound.min(lo.saturating_add(SCAN_CHUNK - 1));
        if let Some(n) = sieve_segment_in(lo, hi, depth, system, primes).first() {
            return Some(n);
        }
        lo = hi + 1;
    }
    None
}

/// The minimum sequence `n_{0,1}, ..., n_{m_max,1}` for one system.
pub fn minimum_function(
    system: &OffsetSystem,
    m_max: usize,
    table: &mut PrimeTable,
) -> Result<Vec<MinSeqEntry>> {
    table.ensure_count(m_max + 2)?;
    let mut walker = MinWalker::new(system);
    (0..=m_max).map(|_| walker.step(table)).collect()
}

/// The jump points of an already-computed minimum sequence.
pub fn jump_points(entries: &[MinSeqEntry]) -> Vec<JumpPoint> {
    entries
        .windows(2)
        .filter_map(|w| match (w[0].value, w[1].value) {
            (Some(prev), Some(value)) if w[1].is_jump => {
                Some(JumpPoint { m: w[1].m, prime: w[1].prime, prev, value })
            }
            _ => None,
        })
        .collect()
}

/// Previous-minimum values at the jumps of a system, collected while the
/// minimum stays `<= limit`, keeping only values `>= 5`.
///
/// For the quadruplet sieve these are exactly the starts of prime
/// quadruplets, which is what [`crate::constellations::jump_equivalence_report`]
/// cross-checks against a plain prime scan.
pub fn jump_values_up_to(system: &OffsetSystem, limit: u64, table: &mut PrimeTable) -> Result<Vec<u64>> {
    let mut walker = MinWalker::new(system);
    let mut out = Vec::new();
    let mut prev: Option<u64> = None;
    loop {
        let entry = walker.step(table)?;
        let value = entry.value.ok_or_else(|| {
            Error::invariant(format!(
                "no survivor at or below the depth-{} search bound while walking jumps",
                entry.m
            ))
        })?;
        if let Some(pv) = prev {
            if value > pv && pv >= 5 && pv <= limit {
                out.push(pv);
            }
        }
        if value > limit {
            return Ok(out);
        }
        prev = Some(value);
    }
}

/// The window `(p_m, p_{m+1}^2 - max_offset - 2]` at depth `m`, inside which
/// every survivor's full constellation is provably prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveRange {
    pub m: usize,
    /// `p_m`; the window opens just above it.
    pub prime: u64,
    /// Exclusive lower end (= `p_m`).
    pub lo: u64,
    /// Inclusive upper end.
    pub hi: u64,
    /// Survivors in the window, ascending.
    pub members: Vec<u64>,
}

/// Compute the effective range at depth `m` and verify the primality
/// guarantee on every member (an internal cross-check; failure means a bug).
pub fn effective_range(m: usize, system: &OffsetSystem, table: &mut PrimeTable) -> Result<EffectiveRange> {
    let prime = table.nth_prime(m)?;
    let p_next = table.nth_prime(m + 1)?;
    let hi = p_next
        .checked_mul(p_next)
        .and_then(|sq| sq.checked_sub(system.cutoff_shift()))
        .filter(|&hi| hi > prime)
        .ok_or_else(|| {
            Error::domain(format!(
                "effective range of {} is empty at depth {m}",
                system.name()
            ))
        })?;
    if hi - prime > DEFAULT_ENUMERATION_CAP {
        return Err(Error::resource(format!(
            "effective range span {} exceeds ceiling {DEFAULT_ENUMERATION_CAP}",
            hi - prime
        )));
    }
    let mut members = Vec::new();
    let chunk = 1u64 << 20;
    let mut lo = prime + 1;
    while lo <= hi {
        let seg_hi = hi.min(lo + chunk - 1);
        members.extend(sieve_segment_in(lo, seg_hi, m, system, table.primes()).survivors());
        lo = seg_hi + 1;
    }
    for &z in &members {
        for &o in system.offsets() {
            if !is_prime(z + o) {
                return Err(Error::invariant(format!(
                    "effective-range member {z} at depth {m} has composite companion {}",
                    z + o
                )));
            }
        }
    }
    Ok(EffectiveRange { m, prime, lo: prime, hi, members })
}

/// One row of the bound check `n_{m,1} <= p_{m+1}^2 - 4` for the double sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinBoundRow {
    pub m: usize,
    pub prime: u64,
    pub value: Option<u64>,
    /// `p_{m+1}^2 - 4`.
    pub cutoff: u64,
    /// `p_m < value <= cutoff`: the minimum sits inside the effective range.
    pub within: bool,
    /// `cutoff - value`; negative means the bound failed.
    pub margin: Option<i64>,
    pub is_jump: bool,
    /// At jumps: primes strictly between the old and new minimum whose +2
    /// companion is composite (solitary primes the sieve skipped).
    pub solitary_skipped: Option<usize>,
}

/// Bound-model check for the double sieve up to depth `m_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinBoundReport {
    pub m_max: usize,
    pub rows: Vec<MinBoundRow>,
    /// Depths where the bound failed (empty = hypothesis holds).
    pub violations: Vec<usize>,
    pub min_margin: Option<i64>,
}

impl MinBoundReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `n_{m,1} <= p_{m+1}^2 - 4` for the double sieve at every depth up to
/// `m_max`, recording margins and the solitary primes skipped at each jump.
pub fn min_bound_report(m_max: usize, table: &mut PrimeTable) -> Result<MinBoundReport> {
    let system = OffsetSystem::double();
    let entries = minimum_function(&system, m_max, table)?;
    let mut rows = Vec::with_capacity(entries.len());
    let mut violations = Vec::new();
    let mut min_margin: Option<i64> = None;
    let mut prev_value: Option<u64> = None;
    for e in &entries {
        let p_next = table.nth_prime(e.m + 1)?;
        let cutoff = p_next * p_next - system.cutoff_shift();
        let (within, margin) = match e.value {
            Some(v) => (v > e.prime && v <= cutoff, Some(cutoff as i64 - v as i64)),
            None => (false, None),
        };
        if !within {
            violations.push(e.m);
        }
        if let Some(mg) = margin {
            min_margin = Some(min_margin.map_or(mg, |cur| cur.min(mg)));
        }
        let solitary_skipped = match (e.is_jump, prev_value, e.value) {
            (true, Some(a), Some(b)) => Some(count_solitary_between(a, b, table)?),
            _ => None,
        };
        rows.push(MinBoundRow {
            m: e.m,
            prime: e.prime,
            value: e.value,
            cutoff,
            within,
            margin,
            is_jump: e.is_jump,
            solitary_skipped,
        });
        prev_value = e.value;
    }
    Ok(MinBoundReport { m_max, rows, violations, min_margin })
}

/// Primes `q` with `a < q < b` whose companion `q + 2` is composite.
fn count_solitary_between(a: u64, b: u64, table: &mut PrimeTable) -> Result<usize> {
    table.ensure_limit(b)?;
    let primes = table.primes();
    let from = primes.partition_point(|&p| p <= a);
    let to = primes.partition_point(|&p| p < b);
    Ok(primes[from..to].iter().filter(|&&q| !is_prime(q + 2)).count())
}
