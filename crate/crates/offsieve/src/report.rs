//! Flat report rows and their CSV/JSON encodings.
//!
//! Every CLI subcommand emits a list of rows; CSV output is the row list with
//! a header line, JSON output wraps the same rows in `{"schema": ..., "rows":
//! [...]}` plus per-command summary fields. CSV encoding round-trips: for any
//! row list `x`, `from_csv(to_csv(x)) == x`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::constellations::{ConstellationRecord, DecadeCount, GapEntry, JumpEquivalenceReport, LifeSpan};
use crate::error::{Error, Result};
use crate::minfunc::{EffectiveRange, JumpPoint, MinBoundRow, MinSeqEntry};
use crate::sieve::PeriodSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Serialize rows as CSV with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::invariant(e.to_string()))
}

/// Parse rows from CSV produced by [`to_csv`].
pub fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(csv_error)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::parse(line, e.to_string())
}

/// Serialize rows as `{"schema": ..., "rows": [...]}`.
pub fn to_json<T: Serialize>(schema: &str, rows: &[T]) -> Result<String> {
    let value = serde_json::json!({ "schema": schema, "rows": rows });
    serde_json::to_string_pretty(&value).map_err(|e| Error::invariant(e.to_string()))
}

/// Parse `(schema, rows)` from JSON produced by [`to_json`].
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<(String, Vec<T>)> {
    #[derive(Deserialize)]
    struct Wrapper<T> {
        schema: String,
        rows: Vec<T>,
    }
    let w: Wrapper<T> =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    Ok((w.schema, w.rows))
}

// --- row shapes ---

/// One survivor of a sieved window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorRow {
    pub n: u64,
}

/// Period length and survivor count at one depth; both are exact products
/// over the sieving primes, so they travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodRow {
    pub depth: usize,
    pub period: String,
    pub survivors: String,
}

impl From<&PeriodSummary> for PeriodRow {
    fn from(s: &PeriodSummary) -> Self {
        PeriodRow {
            depth: s.depth,
            period: s.period.to_string(),
            survivors: s.survivor_count.to_string(),
        }
    }
}

/// One depth of the minimum sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinRow {
    pub m: usize,
    pub p_m: u64,
    /// Empty when the search bound was exhausted without a survivor.
    pub n_m1: Option<u64>,
    pub is_jump: bool,
}

impl From<&MinSeqEntry> for MinRow {
    fn from(e: &MinSeqEntry) -> Self {
        MinRow { m: e.m, p_m: e.prime, n_m1: e.value, is_jump: e.is_jump }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpRow {
    pub m: usize,
    pub p_m: u64,
    pub prev: u64,
    pub value: u64,
}

impl From<&JumpPoint> for JumpRow {
    fn from(j: &JumpPoint) -> Self {
        JumpRow { m: j.m, p_m: j.prime, prev: j.prev, value: j.value }
    }
}

/// One member of an effective range, with the window it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectiveRow {
    pub m: usize,
    pub p_m: u64,
    pub lo_exclusive: u64,
    pub hi_inclusive: u64,
    pub z: u64,
}

pub fn effective_rows(r: &EffectiveRange) -> Vec<EffectiveRow> {
    r.members
        .iter()
        .map(|&z| EffectiveRow { m: r.m, p_m: r.prime, lo_exclusive: r.lo, hi_inclusive: r.hi, z })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormerRow {
    pub former: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRow {
    pub former: u64,
    /// Absent on the last former in range.
    pub gap: Option<u64>,
}

impl From<&GapEntry> for GapRow {
    fn from(e: &GapEntry) -> Self {
        GapRow { former: e.former, gap: e.gap }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRow {
    pub start: u64,
    pub gap_to_next: Option<u64>,
}

impl From<&ConstellationRecord> for QuadRow {
    fn from(r: &ConstellationRecord) -> Self {
        QuadRow { start: r.start, gap_to_next: r.gap_to_next }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecadeRow {
    pub exponent: u32,
    pub count: u64,
}

impl From<&DecadeCount> for DecadeRow {
    fn from(d: &DecadeCount) -> Self {
        DecadeRow { exponent: d.exponent, count: d.count }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LifeSpanRow {
    pub start: u64,
    pub birth: u64,
    pub dead: u64,
}

impl From<&LifeSpan> for LifeSpanRow {
    fn from(l: &LifeSpan) -> Self {
        LifeSpanRow { start: l.start, birth: l.birth, dead: l.dead }
    }
}

/// One depth of the minimum-bound check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub m: usize,
    pub p_m: u64,
    pub n_m1: Option<u64>,
    pub cutoff: u64,
    pub within: bool,
    pub margin: Option<i64>,
    pub is_jump: bool,
    pub solitary_skipped: Option<u64>,
}

impl From<&MinBoundRow> for BoundRow {
    fn from(r: &MinBoundRow) -> Self {
        BoundRow {
            m: r.m,
            p_m: r.prime,
            n_m1: r.value,
            cutoff: r.cutoff,
            within: r.within,
            margin: r.margin,
            is_jump: r.is_jump,
            solitary_skipped: r.solitary_skipped.map(|s| s as u64),
        }
    }
}

/// One value from the union of quad-sieve jump values and brute-force
/// quadruplet starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceRow {
    pub i: usize,
    pub value: u64,
    pub in_sieve: bool,
    pub in_oracle: bool,
    /// Difference to the previous union value.
    pub gap_to_prev: Option<u64>,
}

pub fn equivalence_rows(r: &JumpEquivalenceReport) -> Vec<EquivalenceRow> {
    let mut union: Vec<u64> = r.jump_values.iter().chain(r.quad_starts.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();
    union
        .iter()
        .enumerate()
        .map(|(i, &value)| EquivalenceRow {
            i,
            value,
            in_sieve: r.jump_values.binary_search(&value).is_ok(),
            in_oracle: r.quad_starts.binary_search(&value).is_ok(),
            gap_to_prev: (i > 0).then(|| value - union[i - 1]),
        })
        .collect()
}

/// One fixture entry's verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffRow {
    /// Line number of the entry in the fixture file.
    pub line: usize,
    /// "match", "mismatch", or "suspect".
    pub status: String,
    pub expected: String,
    pub computed: String,
    pub note: String,
}
