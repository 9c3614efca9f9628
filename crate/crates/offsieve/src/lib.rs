//! Offset-constellation sieves over the naturals.
//!
//! A sieve here is given by a finite set of even offsets: sieving by a prime
//! `p` removes every `n` for which some `n + offset` is divisible by `p`.
//! Three systems get names — `{0}` (coprimality), `{0, 2}` (twin formers) and
//! `{0, 2, 6, 8}` (prime quadruplets) — and arbitrary admissible systems are
//! supported. The crate computes:
//!
//! - survivor segments, periods (`prod p_i`) and exact survivor counts per
//!   period ([`sieve`]);
//! - the minimum survivor above 1 at each depth, its jump points, and the
//!   effective range in which surviving the sieve certifies primality of the
//!   whole constellation ([`minfunc`]);
//! - brute-force twin/quadruplet scans on a plain prime bitmap, used as an
//!   independent oracle against the sieve ([`constellations`]);
//! - CSV/JSON reports, reference-table fixtures, and a CLI gluing it all
//!   together ([`report`], [`fixtures`], [`cli`]).

pub mod error;

mod bits;

pub mod cli;
pub mod constellations;
pub mod fixtures;
pub mod minfunc;
pub mod primes;
pub mod report;
pub mod sieve;

pub use error::{Error, Result};
pub use primes::{is_prime, primes_up_to, PrimeTable};
pub use sieve::{OffsetSystem, PeriodSummary, SurvivorSegment};
