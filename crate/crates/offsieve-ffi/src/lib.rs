//! C ABI over the offsieve crate.
//!
//! Conventions:
//! - Handles ([`OffsieveCtx`], [`OffsieveSystem`], [`OffsieveU64Array`]) are
//!   opaque; create and free them only through these functions, and do not
//!   share one handle across threads without external synchronization.
//! - Every fallible call returns an [`OffsieveStatus`] and writes results
//!   through out-pointers, which it leaves untouched on failure.
//! - Period and survivor counts are exact big integers and cross the boundary
//!   as decimal C strings owned by the caller (free with
//!   [`offsieve_string_free`]).
//! - Panics never unwind across the boundary; they surface as
//!   `OFFSIEVE_STATUS_ERR_INTERNAL`.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use offsieve::error::Error;
use offsieve::{constellations, minfunc, sieve};
use offsieve::{OffsetSystem, PrimeTable};

/// Status of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffsieveStatus {
    Ok = 0,
    /// An argument was outside the operation's domain.
    ErrDomain = 1,
    /// The request would exceed a resource ceiling.
    ErrResource = 2,
    /// A required pointer was null.
    ErrNull = 3,
    /// A bug: invariant violation or caught panic.
    ErrInternal = 4,
}

/// Growable prime cache shared across calls.
pub struct OffsieveCtx {
    table: PrimeTable,
}

/// One offset system (`{0}`, `{0,2}`, `{0,2,6,8}`, or custom).
pub struct OffsieveSystem {
    inner: OffsetSystem,
}

/// An owned, immutable list of 64-bit values.
pub struct OffsieveU64Array {
    values: Vec<u64>,
}

fn status_of(e: &Error) -> OffsieveStatus {
    match e {
        Error::Domain(_) | Error::Parse { .. } => OffsieveStatus::ErrDomain,
        Error::Resource(_) | Error::Io(_) => OffsieveStatus::ErrResource,
        Error::Invariant(_) => OffsieveStatus::ErrInternal,
    }
}

fn guarded<F: FnOnce() -> OffsieveStatus>(f: F) -> OffsieveStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(OffsieveStatus::ErrInternal)
}

unsafe fn put_array(out: *mut *mut OffsieveU64Array, values: Vec<u64>) -> OffsieveStatus {
    *out = Box::into_raw(Box::new(OffsieveU64Array { values }));
    OffsieveStatus::Ok
}

/// Crate version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn offsieve_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a prime-cache context. Free with [`offsieve_ctx_free`].
#[no_mangle]
pub extern "C" fn offsieve_ctx_new() -> *mut OffsieveCtx {
    Box::into_raw(Box::new(OffsieveCtx { table: PrimeTable::new() }))
}

/// Free a context created by [`offsieve_ctx_new`]. Null is a no-op.
///
/// # Safety
/// `ctx` must be null or a pointer returned by [`offsieve_ctx_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn offsieve_ctx_free(ctx: *mut OffsieveCtx) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// The `{0}` system.
#[no_mangle]
pub extern "C" fn offsieve_system_single() -> *mut OffsieveSystem {
    Box::into_raw(Box::new(OffsieveSystem { inner: OffsetSystem::single() }))
}

/// The `{0, 2}` system.
#[no_mangle]
pub extern "C" fn offsieve_system_double() -> *mut OffsieveSystem {
    Box::into_raw(Box::new(OffsieveSystem { inner: OffsetSystem::double() }))
}

/// The `{0, 2, 6, 8}` system.
#[no_mangle]
pub extern "C" fn offsieve_system_quad() -> *mut OffsieveSystem {
    Box::into_raw(Box::new(OffsieveSystem { inner: OffsetSystem::quad() }))
}

/// Build a custom system from `len` offsets. Offsets must start at 0,
/// strictly increase, and leave at least one residue class mod every prime.
///
/// # Safety
/// `offsets` must point to `len` readable u64 values (or `len` must be 0);
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn offsieve_system_custom(
    offsets: *const u64,
    len: usize,
    out: *mut *mut OffsieveSystem,
) -> OffsieveStatus {
    if out.is_null() || (offsets.is_null() && len > 0) {
        return OffsieveStatus::ErrNull;
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(offsets, len) };
    guarded(|| match OffsetSystem::custom(slice.to_vec()) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(OffsieveSystem { inner }));
            OffsieveStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Free a system handle. Null is a no-op.
///
/// # Safety
/// `sys` must be null or an unfreed pointer from a system constructor.
#[no_mangle]
pub unsafe extern "C" fn offsieve_system_free(sys: *mut OffsieveSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of offsets in the system; 0 if `sys` is null.
///
/// # Safety
/// `sys` must be null or a valid system handle.
#[no_mangle]
pub unsafe extern "C" fn offsieve_system_offset_count(sys: *const OffsieveSystem) -> usize {
    if sys.is_null() {
        return 0;
    }
    (*sys).inner.offsets().len()
}

/// Copy up to `cap` offsets into `buf`; returns the total offset count.
///
/// # Safety
/// `sys` must be a valid system handle; `buf` must hold `cap` writable u64
/// slots (or `cap` must be 0).
#[no_mangle]
pub unsafe extern "C" fn offsieve_system_offsets(
    sys: *const OffsieveSystem,
    buf: *mut u64,
    cap: usize,
) -> usize {
    if sys.is_null() {
        return 0;
    }
    let offsets = (*sys).inner.offsets();
    if !buf.is_null() {
        let n = offsets.len().min(cap);
        std::ptr::copy_nonoverlapping(offsets.as_ptr(), buf, n);
    }
    offsets.len()
}

/// Exact primality test.
#[no_mangle]
pub extern "C" fn offsieve_is_prime(n: u64) -> bool {
    offsieve::is_prime(n)
}

/// The m-th prime, zero-based (m = 0 gives 2).
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_nth_prime(
    ctx: *mut OffsieveCtx,
    m: usize,
    out: *mut u64,
) -> OffsieveStatus {
    if ctx.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match (*ctx).table.nth_prime(m) {
        Ok(p) => {
            *out = p;
            OffsieveStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Does `n` survive sieving by the first `depth + 1` primes?
///
/// # Safety
/// `ctx`, `sys` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_survives(
    ctx: *mut OffsieveCtx,
    sys: *const OffsieveSystem,
    n: u64,
    depth: usize,
    out: *mut bool,
) -> OffsieveStatus {
    if ctx.is_null() || sys.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match sieve::survives(n, depth, &(*sys).inner, &mut (*ctx).table) {
        Ok(v) => {
            *out = v;
            OffsieveStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The residue classes mod `p` removed by the system.
///
/// # Safety
/// `sys` and `out` must be valid pointers. The array is owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn offsieve_removed_residues(
    sys: *const OffsieveSystem,
    p: u64,
    out: *mut *mut OffsieveU64Array,
) -> OffsieveStatus {
    if sys.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    if p == 0 {
        return OffsieveStatus::ErrDomain;
    }
    guarded(|| put_array(out, (*sys).inner.removed_residues(p)))
}

/// Period length and exact survivors-per-period at `depth`, as decimal
/// strings (both owned by the caller; free with [`offsieve_string_free`]).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn offsieve_period(
    ctx: *mut OffsieveCtx,
    sys: *const OffsieveSystem,
    depth: usize,
    period_out: *mut *mut c_char,
    survivors_out: *mut *mut c_char,
) -> OffsieveStatus {
    if ctx.is_null() || sys.is_null() || period_out.is_null() || survivors_out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match sieve::period_summary(depth, &(*sys).inner, &mut (*ctx).table) {
        Ok(summary) => {
            let period = CString::new(summary.period.to_string()).expect("decimal digits");
            let survivors = CString::new(summary.survivor_count.to_string()).expect("decimal digits");
            *period_out = period.into_raw();
            *survivors_out = survivors.into_raw();
            OffsieveStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Free a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or an unfreed string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn offsieve_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Survivors of the sieve in `[lo, hi]` at `depth`.
///
/// # Safety
/// `ctx`, `sys` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_sieve_segment(
    ctx: *mut OffsieveCtx,
    sys: *const OffsieveSystem,
    lo: u64,
    hi: u64,
    depth: usize,
    out: *mut *mut OffsieveU64Array,
) -> OffsieveStatus {
    if ctx.is_null() || sys.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match sieve::sieve_segment(lo, hi, depth, &(*sys).inner, &mut (*ctx).table) {
        Ok(seg) => put_array(out, seg.survivors().collect()),
        Err(e) => status_of(&e),
    })
}

/// The minimum survivor above 1 at each depth `0..=m_max`.
///
/// Fails with `OFFSIEVE_STATUS_ERR_RESOURCE` if some depth found no survivor
/// at or below its search bound (`p_{m+1}^2 + max_offset + 2`).
///
/// # Safety
/// `ctx`, `sys` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_minimum_values(
    ctx: *mut OffsieveCtx,
    sys: *const OffsieveSystem,
    m_max: usize,
    out: *mut *mut OffsieveU64Array,
) -> OffsieveStatus {
    if ctx.is_null() || sys.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match minfunc::minimum_function(&(*sys).inner, m_max, &mut (*ctx).table) {
        Ok(entries) => {
            let mut values = Vec::with_capacity(entries.len());
            for e in &entries {
                match e.value {
                    Some(v) => values.push(v),
                    None => return OffsieveStatus::ErrResource,
                }
            }
            put_array(out, values)
        }
        Err(e) => status_of(&e),
    })
}

/// Previous-minimum values (>= 5) at the jumps of the system's minimum
/// function, collected while the minimum stays at or below `limit`.
///
/// # Safety
/// `ctx`, `sys` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_jump_values(
    ctx: *mut OffsieveCtx,
    sys: *const OffsieveSystem,
    limit: u64,
    out: *mut *mut OffsieveU64Array,
) -> OffsieveStatus {
    if ctx.is_null() || sys.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match minfunc::jump_values_up_to(&(*sys).inner, limit, &mut (*ctx).table) {
        Ok(values) => put_array(out, values),
        Err(e) => status_of(&e),
    })
}

/// Twin formers (p and p+2 prime) in `[lo, hi]`, by direct primality scan.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_twin_formers(
    ctx: *mut OffsieveCtx,
    lo: u64,
    hi: u64,
    out: *mut *mut OffsieveU64Array,
) -> OffsieveStatus {
    if ctx.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match constellations::twin_formers(lo, hi, &mut (*ctx).table) {
        Ok(values) => put_array(out, values),
        Err(e) => status_of(&e),
    })
}

/// Prime quadruplet starts in `[lo, hi]`, by direct primality scan.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_quadruplet_starts(
    ctx: *mut OffsieveCtx,
    lo: u64,
    hi: u64,
    out: *mut *mut OffsieveU64Array,
) -> OffsieveStatus {
    if ctx.is_null() || out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match constellations::quadruplet_starts(lo, hi, &mut (*ctx).table) {
        Ok(values) => put_array(out, values),
        Err(e) => status_of(&e),
    })
}

/// Birth prime (largest prime below `sqrt(z + 10)`) and death prime (`z`
/// itself) of a quadruplet start.
///
/// # Safety
/// `birth_out` and `dead_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offsieve_life_span(
    z: u64,
    birth_out: *mut u64,
    dead_out: *mut u64,
) -> OffsieveStatus {
    if birth_out.is_null() || dead_out.is_null() {
        return OffsieveStatus::ErrNull;
    }
    guarded(|| match constellations::life_span(z) {
        Ok(span) => {
            *birth_out = span.birth;
            *dead_out = span.dead;
            OffsieveStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Pointer to the array's values (valid until the array is freed).
///
/// # Safety
/// `arr` must be null or a valid array handle.
#[no_mangle]
pub unsafe extern "C" fn offsieve_u64_array_data(arr: *const OffsieveU64Array) -> *const u64 {
    if arr.is_null() {
        return std::ptr::null();
    }
    (*arr).values.as_ptr()
}

/// Number of values in the array; 0 for null.
///
/// # Safety
/// `arr` must be null or a valid array handle.
#[no_mangle]
pub unsafe extern "C" fn offsieve_u64_array_len(arr: *const OffsieveU64Array) -> usize {
    if arr.is_null() {
        return 0;
    }
    (*arr).values.len()
}

/// Free an array returned by this library. Null is a no-op.
///
/// # Safety
/// `arr` must be null or an unfreed array returned by this library.
#[no_mangle]
pub unsafe extern "C" fn offsieve_u64_array_free(arr: *mut OffsieveU64Array) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}
