//! Acceptance battery: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`) and
//! enforcing the criterion's runtime budget.

use std::time::{Duration, Instant};

use offsieve::constellations::{decade_histogram, jump_equivalence_report, life_span};
use offsieve::fixtures::{reproduce_builtin, TableId};
use offsieve::minfunc::{effective_range, min_bound_report, minimum_function};
use offsieve::report::{from_csv, MinRow};
use offsieve::sieve::{period_elements, period_summary, sieve_segment, survives};
use offsieve::{is_prime, OffsetSystem, PrimeTable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn criterion(number: u32, name: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let outcome = body();
    let elapsed = started.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= budget { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({name}): {verdict} in {elapsed:.2?} (budget {budget:?})");
    if let Err(why) = outcome {
        panic!("criterion {number} ({name}): {why}");
    }
    assert!(
        elapsed <= budget,
        "criterion {number} ({name}) took {elapsed:?}, budget {budget:?}"
    );
}

fn lib<T>(r: offsieve::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Criterion 1: the double-sieve minimum table for m <= 16, through the
/// actual CLI binary, matches the reference fixture row for row.
#[test]
fn acceptance_1_double_minimum_table() {
    criterion(1, "double-sieve minimum table", Duration::from_secs(1), || {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_offsieve"))
            .args(["minfunc", "--system", "double", "--m-max", "16"])
            .output()
            .map_err(|e| format!("spawning CLI: {e}"))?;
        ensure(out.status.success(), format!("CLI exited {:?}", out.status.code()))?;
        let rows: Vec<MinRow> =
            lib(from_csv(&String::from_utf8_lossy(&out.stdout)))?;
        expect("row count", rows.len(), 17)?;
        let values: Vec<u64> = rows.iter().map(|r| r.n_m1.unwrap_or(0)).collect();
        expect(
            "minimum values",
            values,
            vec![3, 5, 11, 11, 17, 17, 29, 29, 29, 41, 41, 41, 59, 59, 59, 59, 71],
        )?;
        expect("last prime", rows[16].p_m, 59)?;

        let diff = lib(reproduce_builtin(TableId::MinTable, &mut PrimeTable::new()))?;
        expect("fixture matches", diff.matches(), 17)?;
        ensure(diff.pass(), "fixture diff reported mismatches")
    });
}

/// Criterion 2: first-survivor prefix listings for every system and depth in
/// the reference file match, and 821 / 1481 survive the quad sieve at depth 3.
#[test]
fn acceptance_2_survivor_prefix_listings() {
    criterion(2, "survivor prefix listings", Duration::from_secs(1), || {
        let mut table = PrimeTable::new();
        let diff = lib(reproduce_builtin(TableId::NListings, &mut table))?;
        expect("listing rows", diff.matches(), 13)?;
        ensure(diff.pass(), "listing diff reported mismatches")?;

        let quad = OffsetSystem::quad();
        for z in [821u64, 1481] {
            ensure(
                lib(survives(z, 3, &quad, &mut table))?,
                format!("{z} should survive the quad sieve at depth 3"),
            )?;
        }
        let segment = lib(sieve_segment(1, 1500, 3, &quad, &mut table))?;
        ensure(segment.contains(821), "821 missing from depth-3 segment")?;
        ensure(segment.contains(1481), "1481 missing from depth-3 segment")
    });
}

/// Criterion 3: closed-form period summaries equal both the bitmap
/// enumeration and a definitional per-element count, for every depth whose
/// period fits under 10^7, plus the four spot values.
#[test]
fn acceptance_3_period_summaries() {
    criterion(3, "period summaries", Duration::from_secs(10), || {
        let mut table = PrimeTable::new();
        let spots = [
            (OffsetSystem::single(), 2usize, 30u64, 8u64),
            (OffsetSystem::double(), 3, 210, 15),
            (OffsetSystem::quad(), 2, 30, 1),
            (OffsetSystem::quad(), 3, 210, 3),
        ];
        for (system, depth, period, count) in spots {
            let summary = lib(period_summary(depth, &system, &mut table))?;
            expect(
                &format!("{} period at depth {depth}", system.name()),
                summary.period.to_string(),
                period.to_string(),
            )?;
            expect(
                &format!("{} survivors at depth {depth}", system.name()),
                summary.survivor_count.to_string(),
                count.to_string(),
            )?;
        }

        for system in [OffsetSystem::single(), OffsetSystem::double(), OffsetSystem::quad()] {
            let mut depth = 0;
            loop {
                let summary = lib(period_summary(depth, &system, &mut table))?;
                let Ok(period) = u64::try_from(&summary.period) else { break };
                if period > 10_000_000 {
                    break;
                }
                let elements = lib(period_elements(depth, &system, &mut table))?;
                expect(
                    &format!("{} bitmap count at depth {depth}", system.name()),
                    elements.len().to_string(),
                    summary.survivor_count.to_string(),
                )?;
                let direct = definitional_count(system.offsets(), &table.primes()[..=depth], period);
                expect(
                    &format!("{} definitional count at depth {depth}", system.name()),
                    direct.to_string(),
                    summary.survivor_count.to_string(),
                )?;
                depth += 1;
            }
            ensure(depth >= 8, format!("{}: expected at least 8 checkable depths", system.name()))?;
        }
        Ok(())
    });
}

/// Count survivors in `[1, period]` straight from the definition, sharing no
/// code with the sieve.
fn definitional_count(offsets: &[u64], primes: &[u64], period: u64) -> u64 {
    let mut count = 0;
    'next: for n in 1..=period {
        for &p in primes {
            for &o in offsets {
                if (n + o) % p == 0 {
                    continue 'next;
                }
            }
        }
        count += 1;
    }
    count
}

/// Criterion 4: the twin-former gap table reproduces both reference blocks
/// entry for entry; the four typo entries are flagged suspect (never a plain
/// mismatch), with 4648 replaced by the computed former 4649.
#[test]
fn acceptance_4_twin_gap_table() {
    criterion(4, "twin-former gap table", Duration::from_secs(30), || {
        let mut table = PrimeTable::new();

        let head = lib(reproduce_builtin(TableId::GapHead, &mut table))?;
        ensure(head.mismatches().is_empty(), "head block has plain mismatches")?;
        let head_suspects = head.suspects();
        expect("head suspect count", head_suspects.len(), 2)?;
        let evens: Vec<_> =
            head_suspects.iter().filter(|r| r.expected.contains("4648")).collect();
        expect("suspect rows naming 4648", evens.len(), 1)?;
        ensure(
            evens[0].computed.contains("4649"),
            "suspect 4648 should substitute the computed former 4649",
        )?;
        ensure(
            head_suspects.iter().any(|r| r.expected.contains("2459")),
            "suspect 2459 not flagged",
        )?;
        ensure(head.pass(), "head diff failed")?;

        let tail = lib(reproduce_builtin(TableId::GapTail, &mut table))?;
        ensure(tail.mismatches().is_empty(), "tail block has plain mismatches")?;
        let tail_suspects = tail.suspects();
        expect("tail suspect count", tail_suspects.len(), 2)?;
        for former in ["1287179", "1294197"] {
            ensure(
                tail_suspects.iter().any(|r| r.expected.contains(former)),
                format!("suspect {former} not flagged"),
            )?;
        }
        ensure(tail.pass(), "tail diff failed")
    });
}

/// Criterion 5: quadruplet counts per decade from 10^3 up to 10^8.
#[test]
fn acceptance_5_quadruplet_decade_counts() {
    criterion(5, "quadruplet decade counts", Duration::from_secs(60), || {
        let mut table = PrimeTable::new();
        let counts = lib(decade_histogram(3, 7, false, &mut table))?;
        let got: Vec<(u32, u64)> = counts.iter().map(|d| (d.exponent, d.count)).collect();
        expect(
            "decade counts",
            got,
            vec![(3, 7), (4, 26), (5, 128), (6, 733), (7, 3869)],
        )?;
        let diff = lib(reproduce_builtin(TableId::DecadeCounts, &mut table))?;
        ensure(diff.pass(), "decade fixture diff failed")
    });
}

/// Criterion 6: birth/death primes of the first six quadruplets.
#[test]
fn acceptance_6_life_span_table() {
    criterion(6, "life-span table", Duration::from_secs(1), || {
        for (start, birth) in [(5, 3), (11, 3), (101, 7), (191, 13), (821, 23), (1481, 37)] {
            let span = lib(life_span(start))?;
            expect(&format!("birth prime of {start}"), span.birth, birth)?;
            expect(&format!("death prime of {start}"), span.dead, start)?;
        }
        let diff = lib(reproduce_builtin(TableId::LifespanTable, &mut PrimeTable::new()))?;
        expect("fixture matches", diff.matches(), 6)?;
        ensure(diff.pass(), "life-span fixture diff failed")
    });
}

/// Criterion 7: quad-sieve jump values >= 5 equal brute-force quadruplet
/// starts up to 10^6 in both directions, with the spacing laws intact.
#[test]
fn acceptance_7_jump_quadruplet_equivalence() {
    criterion(7, "jump/quadruplet equivalence", Duration::from_secs(300), || {
        let mut table = PrimeTable::new();
        let report = lib(jump_equivalence_report(1_000_000, &mut table))?;
        ensure(report.sieve_only.is_empty(), format!("sieve-only values: {:?}", report.sieve_only))?;
        ensure(report.oracle_only.is_empty(), format!("oracle-only values: {:?}", report.oracle_only))?;
        expect("list lengths", report.jump_values.len(), report.quad_starts.len())?;
        ensure(!report.jump_values.is_empty(), "no jump values found")?;
        expect("first spacing", report.first_gap, Some(6))?;
        ensure(
            report.spacing_violations.is_empty(),
            format!("spacings under 30 at indices {:?}", report.spacing_violations),
        )?;
        ensure(report.pass(), "equivalence report failed")
    });
}

/// Criterion 8: for every m with p_m <= 10^4 the double-sieve minimum lands
/// inside (p_m, p_{m+1}^2 - 4]; the checker reports zero violations.
#[test]
fn acceptance_8_minimum_bound_status() {
    criterion(8, "minimum-bound status", Duration::from_secs(120), || {
        let mut table = PrimeTable::new();
        let report = lib(min_bound_report(1228, &mut table))?;
        expect("row count", report.rows.len(), 1229)?;
        expect("last prime checked", report.rows[1228].prime, 9973)?;
        ensure(
            report.violations.is_empty(),
            format!("bound violated at depths {:?}", report.violations),
        )?;
        ensure(report.rows.iter().all(|r| r.within), "a row fell outside its window")?;
        ensure(report.min_margin.is_some_and(|m| m >= 0), "negative bound margin")?;
        ensure(report.pass(), "bound report failed")
    });
}

/// Criterion 9: the five property suites.
///   (a) segment bitmap vs. membership test on 1000 seeded probes per system;
///   (b) n_{m,1} + o is coprime to every sieved prime for m <= 200;
///   (c) n_{m,1} >= p_{m+1} for m <= 200;
///   (d) every double effective-range member z <= 10^6 is a twin former;
///   (e) quad survivors > 5 at depth >= 2 are 11 (mod 30) on sampled segments.
#[test]
fn acceptance_9_property_suites() {
    criterion(9, "property suites", Duration::from_secs(120), || {
        let mut table = PrimeTable::new();
        let systems = [OffsetSystem::single(), OffsetSystem::double(), OffsetSystem::quad()];

        // (a) two independent membership paths agree on random probes.
        let mut rng = StdRng::seed_from_u64(0x0FF5_E7ED);
        for system in &systems {
            for _ in 0..1000 {
                let n = rng.random_range(1..=1_000_000u64);
                let depth = rng.random_range(0..=25usize);
                let lo = n.saturating_sub(50).max(1);
                let segment = lib(sieve_segment(lo, n + 50, depth, system, &mut table))?;
                let direct = lib(survives(n, depth, system, &mut table))?;
                expect(
                    &format!("{} membership of {n} at depth {depth}", system.name()),
                    segment.contains(n),
                    direct,
                )?;
            }
        }

        // (b) + (c) structure of the minimum sequence.
        for system in &systems {
            let entries = lib(minimum_function(system, 200, &mut table))?;
            for e in &entries {
                let n = e.value.ok_or(format!(
                    "{} minimum at depth {} is unexpectedly unbounded",
                    system.name(),
                    e.m
                ))?;
                for i in 0..=e.m {
                    let p = table.primes()[i];
                    for &o in system.offsets() {
                        ensure(
                            (n + o) % p != 0,
                            format!("{} min {n} at depth {}: {p} divides {n}+{o}", system.name(), e.m),
                        )?;
                    }
                }
                let p_next = lib(table.nth_prime(e.m + 1))?;
                ensure(
                    n >= p_next,
                    format!("{} min {n} at depth {} is below p_{}={p_next}", system.name(), e.m, e.m + 1),
                )?;
            }
        }

        // (d) double effective-range members up to 10^6 are twin formers.
        let double = OffsetSystem::double();
        let mut m = 0;
        let mut checked = 0usize;
        loop {
            let range = lib(effective_range(m, &double, &mut table))?;
            for &z in range.members.iter().filter(|&&z| z <= 1_000_000) {
                ensure(
                    is_prime(z) && is_prime(z + 2),
                    format!("effective-range member {z} at depth {m} is not a twin former"),
                )?;
                checked += 1;
            }
            if range.hi >= 1_000_000 {
                break;
            }
            m += 1;
        }
        ensure(checked > 1000, format!("only {checked} members checked"))?;

        // (e) deep quad survivors collapse onto 11 mod 30.
        let quad = OffsetSystem::quad();
        for (lo, hi, depth) in [
            (1u64, 10_000u64, 2usize),
            (1, 10_000, 3),
            (100_000, 150_000, 5),
            (1_000_000, 1_050_000, 10),
            (10_000_000, 10_040_000, 25),
        ] {
            let segment = lib(sieve_segment(lo, hi, depth, &quad, &mut table))?;
            for z in segment.survivors().filter(|&z| z > 5) {
                expect(
                    &format!("residue of quad survivor {z} at depth {depth}"),
                    z % 30,
                    11,
                )?;
            }
        }
        Ok(())
    });
}
