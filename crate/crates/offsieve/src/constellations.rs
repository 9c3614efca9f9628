//! Brute-force prime-constellation scans.
//!
//! Everything here works off a plain segmented prime bitmap and trial
//! division — deliberately sharing no code with the offset sieve — so the two
//! sides can be played against each other: twin formers, twin-gap tables,
//! prime quadruplets `{z, z+2, z+6, z+8}`, per-decade counts, quadruplet
//! birth/death primes, and the jump-point equivalence report.

use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::minfunc;
use crate::primes::{is_prime, PrimeTable};
use crate::sieve::{OffsetSystem, DEFAULT_ENUMERATION_CAP};

const SCAN_CHUNK: u64 = 1 << 22;

const QUAD_OFFSETS: [u64; 4] = [0, 2, 6, 8];

/// Primality bitmap over `[lo, hi]`; `base` must contain every prime up to
/// `sqrt(hi)`.
fn prime_flags(lo: u64, hi: u64, base: &[u64]) -> Bits {
    let span = (hi - lo + 1) as usize;
    let mut bits = Bits::all_set(span);
    for n in [0u64, 1] {
        if n >= lo && n <= hi {
            bits.clear((n - lo) as usize);
        }
    }
    for &p in base {
        if p.checked_mul(p).is_none_or(|sq| sq > hi) {
            break;
        }
        // Start at p^2 so p itself stays marked prime.
        let mut n = (p * p).max(lo.div_ceil(p) * p);
        while n <= hi {
            bits.clear((n - lo) as usize);
            match n.checked_add(p) {
                Some(next) => n = next,
                None => break,
            }
        }
    }
    bits
}

fn chunks(lo: u64, hi: u64, size: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = lo;
    while a <= hi {
        let b = hi.min(a + (size - 1));
        out.push((a, b));
        a = b + 1;
    }
    out
}

/// All odd `z` in `[lo, hi]` with `z + o` prime for every offset. The offset
/// patterns used here start even-distanced, so no even `z` can qualify.
fn constellation_starts(lo: u64, hi: u64, offsets: &[u64], table: &mut PrimeTable) -> Result<Vec<u64>> {
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    if hi - lo + 1 > DEFAULT_ENUMERATION_CAP {
        return Err(Error::resource(format!(
            "scan span {} exceeds ceiling {DEFAULT_ENUMERATION_CAP}",
            hi - lo + 1
        )));
    }
    let reach = *offsets.last().unwrap();
    let scan_hi = hi
        .checked_add(reach)
        .ok_or_else(|| Error::domain("scan range too close to u64::MAX"))?;
    table.ensure_limit(scan_hi.isqrt() + 1)?;
    let base = table.primes();
    let found: Vec<Vec<u64>> = chunks(lo, hi, SCAN_CHUNK)
        .par_iter()
        .map(|&(a, b)| {
            let flags = prime_flags(a, b + reach, base);
            let mut v = Vec::new();
            let mut z = if a % 2 == 0 { a + 1 } else { a };
            while z <= b {
                if offsets.iter().all(|&o| flags.get((z + o - a) as usize)) {
                    v.push(z);
                }
                z += 2;
            }
            v
        })
        .collect();
    Ok(found.concat())
}

/// Ascending `p` in `[lo, hi]` with `p` and `p + 2` both prime.
pub fn twin_formers(lo: u64, hi: u64, table: &mut PrimeTable) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::domain(format!("twin scan requires lo <= hi, got [{lo}, {hi}]")));
    }
    constellation_starts(lo, hi, &[0, 2], table)
}

/// One twin former and the distance to the next; the last former in range
/// carries no gap rather than an extrapolated one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapEntry {
    pub former: u64,
    pub gap: Option<u64>,
}

/// Consecutive twin formers up to `limit` with forward differences.
pub fn gap_table(limit: u64, table: &mut PrimeTable) -> Result<Vec<GapEntry>> {
    if limit < 5 {
        return Err(Error::domain(format!("gap table requires limit >= 5, got {limit}")));
    }
    let formers = twin_formers(2, limit, table)?;
    Ok(formers
        .iter()
        .enumerate()
        .map(|(i, &f)| GapEntry { former: f, gap: formers.get(i + 1).map(|&next| next - f) })
        .collect())
}

/// A quadruplet start and the distance to the next one found in range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstellationRecord {
    pub start: u64,
    pub gap_to_next: Option<u64>,
}

/// Starts of prime quadruplets in `[lo, hi]`, without gap bookkeeping.
pub fn quadruplet_starts(lo: u64, hi: u64, table: &mut PrimeTable) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::domain(format!("quadruplet scan requires lo <= hi, got [{lo}, {hi}]")));
    }
    constellation_starts(lo, hi, &QUAD_OFFSETS, table)
}

/// All `z` in `[lo, hi]` with `z, z+2, z+6, z+8` prime, with gaps.
pub fn quadruplets(lo: u64, hi: u64, table: &mut PrimeTable) -> Result<Vec<ConstellationRecord>> {
    let starts = quadruplet_starts(lo, hi, table)?;
    Ok(starts
        .iter()
        .enumerate()
        .map(|(i, &z)| ConstellationRecord {
            start: z,
            gap_to_next: starts.get(i + 1).map(|&next| next - z),
        })
        .collect())
}

/// Quadruplet count for one decade `(10^exponent, 10^(exponent+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecadeCount {
    pub exponent: u32,
    pub count: u64,
}

/// Quadruplet counts per decade. Defaults keep the top decade at 10^9;
/// `allow_large` lifts that (the CLI warns, since each further decade costs
/// ten times more).
pub fn decade_histogram(
    d_lo: u32,
    d_hi: u32,
    allow_large: bool,
    table: &mut PrimeTable,
) -> Result<Vec<DecadeCount>> {
    if d_lo < 3 || d_lo > d_hi {
        return Err(Error::domain(format!(
            "decade range requires 3 <= d_lo <= d_hi, got {d_lo}..={d_hi}"
        )));
    }
    if d_hi > 17 {
        return Err(Error::domain("decade exponent above 17 overflows u64"));
    }
    if d_hi > 8 && !allow_large {
        return Err(Error::resource(format!(
            "decade exponent {d_hi} exceeds the default ceiling of 8; pass the large-run flag to proceed"
        )));
    }
    (d_lo..=d_hi)
        .map(|d| {
            let lo = 10u64.pow(d) + 1;
            let hi = 10u64.pow(d + 1) - 1;
            Ok(DecadeCount { exponent: d, count: quadruplet_starts(lo, hi, table)?.len() as u64 })
        })
        .collect()
}

/// Birth and death primes of a quadruplet start `z`.
///
/// `dead` is `z` itself; `birth` is the largest prime below `sqrt(z + 10)`,
/// the last sieving prime for which the whole block `[z, z+10)` still sits
/// inside the sieve's effective range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LifeSpan {
    pub start: u64,
    pub birth: u64,
    pub dead: u64,
}

impl LifeSpan {
    /// The open prime interval `(birth, dead)`.
    pub fn interval(&self) -> (u64, u64) {
        (self.birth, self.dead)
    }
}

pub fn life_span(z: u64) -> Result<LifeSpan> {
    for o in QUAD_OFFSETS {
        if !is_prime(z + o) {
            return Err(Error::domain(format!(
                "{z} is not a quadruplet start: {} is composite",
                z + o
            )));
        }
    }
    let s = z + 10;
    let q = s.isqrt();
    // Largest prime strictly below sqrt(s).
    let hi = if q * q == s { q - 1 } else { q };
    let birth = (2..=hi)
        .rev()
        .find(|&p| is_prime(p))
        .expect("quadruplet starts are >= 5, so sqrt(z+10) > 3");
    Ok(LifeSpan { start: z, birth, dead: z })
}

/// Two-pointer difference of sorted lists: elements of `a` not in `b`.
fn sorted_diff(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

/// Quad-sieve jump values vs. brute-force quadruplet starts up to `limit`,
/// with the spacing statistics of the jump-value sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpEquivalenceReport {
    pub limit: u64,
    /// Previous minima at the jumps of the quadruplet sieve, values >= 5.
    pub jump_values: Vec<u64>,
    /// Quadruplet starts from the prime-bitmap oracle.
    pub quad_starts: Vec<u64>,
    pub sieve_only: Vec<u64>,
    pub oracle_only: Vec<u64>,
    /// Gap between the first two jump values (6 when the list is long enough).
    pub first_gap: Option<u64>,
    /// Indices `i >= 2` where `w_i - w_{i-1} < 30`.
    pub spacing_violations: Vec<usize>,
}

impl JumpEquivalenceReport {
    pub fn pass(&self) -> bool {
        self.sieve_only.is_empty()
            && self.oracle_only.is_empty()
            && self.first_gap.map_or(true, |g| g == 6)
            && self.spacing_violations.is_empty()
    }
}

/// Check that the quadruplet sieve's jump values `>= 5` are exactly the prime
/// quadruplet starts, up to `limit`. Discrepancies land in the report, not in
/// the error channel.
pub fn jump_equivalence_report(limit: u64, table: &mut PrimeTable) -> Result<JumpEquivalenceReport> {
    let jump_values = minfunc::jump_values_up_to(&OffsetSystem::quad(), limit, table)?;
    let quad_starts = quadruplet_starts(1, limit, table)?;
    let sieve_only = sorted_diff(&jump_values, &quad_starts);
    let oracle_only = sorted_diff(&quad_starts, &jump_values);
    let first_gap = (jump_values.len() >= 2).then(|| jump_values[1] - jump_values[0]);
    let spacing_violations = jump_values
        .windows(2)
        .enumerate()
        .skip(1)
        .filter(|(_, w)| w[1] - w[0] < 30)
        .map(|(i, _)| i + 1)
        .collect();
    Ok(JumpEquivalenceReport {
        limit,
        jump_values,
        quad_starts,
        sieve_only,
        oracle_only,
        first_gap,
        spacing_violations,
    })
}
