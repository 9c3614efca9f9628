//! Command-line front end.
//!
//! Every subcommand prints CSV (default) or JSON to stdout. Exit codes:
//! 0 success, 1 verification failure, 2 usage or malformed input, 3 resource
//! ceiling. Range scans honor `--segment-size` (values per work segment) and
//! refuse spans above 10^9 unless `--allow-large` acknowledges the cost.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constellations;
use crate::error::{Error, Result};
use crate::fixtures::{self, TableId};
use crate::minfunc;
use crate::primes::PrimeTable;
use crate::report::{self, *};
use crate::sieve::{self, OffsetSystem, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Worker threads for parallel scans (0 = one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Values per work segment for range scans.
    #[arg(long, default_value_t = 4_194_304)]
    segment_size: u64,

    /// Acknowledge ranges wider than 10^9 values.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Offset system: single, double, quad, or custom.
    #[arg(long, default_value = "double")]
    system: String,

    /// Offsets for --system custom, comma separated (e.g. 0,2,6,8).
    #[arg(long, value_delimiter = ',')]
    offsets: Vec<u64>,
}

impl SystemArgs {
    fn resolve(&self) -> Result<OffsetSystem> {
        if self.system == "custom" {
            if self.offsets.is_empty() {
                return Err(Error::domain("--system custom requires --offsets"));
            }
            return OffsetSystem::custom(self.offsets.clone());
        }
        if !self.offsets.is_empty() {
            return Err(Error::domain("--offsets only applies to --system custom"));
        }
        OffsetSystem::named(&self.system)
            .ok_or_else(|| Error::domain(format!("unknown system {:?}", self.system)))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "offsieve",
    version,
    about = "Offset-constellation sieves: survivors, periods, minimum functions, and prime-constellation cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the survivors of a sieved window.
    Sieve {
        #[command(flatten)]
        system: SystemArgs,
        /// Sieve by the primes p_0..p_depth.
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Period length and survivors-per-period at a depth.
    Period {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        depth: usize,
        /// List every survivor of the first period instead of the summary.
        #[arg(long)]
        elements: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The minimum survivor above 1 at each depth 0..=m_max.
    Minfunc {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        m_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Depths where the minimum survivor increases.
    Jumps {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        m_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Members of the effective range at one depth (all provably prime
    /// across the system's offsets).
    Effective {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Twin formers (p with p and p+2 prime) in [lo, hi].
    Twins {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Twin formers up to a limit, with the gap to the next former.
    Gaps {
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Prime quadruplet starts (z with z, z+2, z+6, z+8 prime) in [lo, hi].
    Quads {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Quadruplet counts per decade (10^d, 10^(d+1)).
    Decades {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Birth/death primes of quadruplet starts.
    Lifespan {
        /// One quadruplet start to report on.
        #[arg(long, alias = "z")]
        start: Option<u64>,
        /// Report on every quadruplet start up to this limit.
        #[arg(long)]
        limit: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        /// equivalence: quad-sieve jump values vs. brute-force quadruplets.
        /// minbound: minimum-bound check for the double sieve.
        #[arg(value_parser = PossibleValuesParser::new(["equivalence", "minbound"]))]
        target: String,
        /// Upper limit for equivalence (default 10^6).
        #[arg(long)]
        limit: Option<u64>,
        /// Depth bound for minbound (default 1228, i.e. p_m <= 10^4).
        #[arg(long)]
        m_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute a reference table and diff it against its fixture.
    Reproduce {
        #[arg(value_parser = PossibleValuesParser::new([
            "min_table", "gap_head", "gap_tail", "decade_counts", "lifespan_table", "n_listings",
        ]))]
        table: String,
        /// Fixture file to diff against (defaults to the built-in copy).
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// Parse `args` and run. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli) {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("offsieve: {e}");
            e.exit_code()
        }
    }
}

fn apply_threads(n: usize) {
    if n > 0 {
        // First configuration wins; later calls in the same process no-op.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn ranges(lo: u64, hi: u64, size: u64) -> Result<Vec<(u64, u64)>> {
    if size == 0 {
        return Err(Error::domain("--segment-size must be positive"));
    }
    let mut out = Vec::new();
    let mut a = lo;
    while a <= hi {
        let b = hi.min(a.saturating_add(size - 1));
        out.push((a, b));
        a = match b.checked_add(1) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(out)
}

fn check_span(lo: u64, hi: u64, allow_large: bool) -> Result<()> {
    if lo > hi {
        return Err(Error::domain(format!("range requires lo <= hi, got [{lo}, {hi}]")));
    }
    let span = hi - lo + 1;
    if !allow_large && span > DEFAULT_ENUMERATION_CAP {
        return Err(Error::resource(format!(
            "span {span} exceeds {DEFAULT_ENUMERATION_CAP}; pass --allow-large to run anyway"
        )));
    }
    Ok(())
}

fn emit<T: serde::Serialize>(format: FormatArg, schema: &str, rows: &[T]) -> Result<String> {
    match format {
        FormatArg::Csv => report::to_csv(rows),
        FormatArg::Json => Ok(report::to_json(schema, rows)? + "\n"),
    }
}

fn dispatch(cli: Cli) -> Result<(String, bool)> {
    let mut table = PrimeTable::new();
    match cli.command {
        Command::Sieve { system, depth, lo, hi, common } => {
            apply_threads(common.threads);
            check_span(lo, hi, common.allow_large)?;
            let sys = system.resolve()?;
            let mut rows = Vec::new();
            for (a, b) in ranges(lo, hi, common.segment_size)? {
                let seg = sieve::sieve_segment_capped(a, b, depth, &sys, &mut table, common.segment_size)?;
                rows.extend(seg.survivors().map(|n| SurvivorRow { n }));
            }
            Ok((emit(common.format, "offsieve.survivors.v1", &rows)?, true))
        }
        Command::Period { system, depth, elements, common } => {
            apply_threads(common.threads);
            let sys = system.resolve()?;
            if elements {
                let cap = if common.allow_large { u64::MAX } else { DEFAULT_ENUMERATION_CAP };
                let rows: Vec<SurvivorRow> = sieve::period_elements_capped(depth, &sys, &mut table, cap)?
                    .into_iter()
                    .map(|n| SurvivorRow { n })
                    .collect();
                Ok((emit(common.format, "offsieve.period.elements.v1", &rows)?, true))
            } else {
                let summary = sieve::period_summary(depth, &sys, &mut table)?;
                let rows = vec![PeriodRow::from(&summary)];
                Ok((emit(common.format, "offsieve.period.v1", &rows)?, true))
            }
        }
        Command::Minfunc { system, m_max, common } => {
            apply_threads(common.threads);
            let sys = system.resolve()?;
            let rows: Vec<MinRow> =
                minfunc::minimum_function(&sys, m_max, &mut table)?.iter().map(MinRow::from).collect();
            Ok((emit(common.format, "offsieve.minfunc.v1", &rows)?, true))
        }
        Command::Jumps { system, m_max, common } => {
            apply_threads(common.threads);
            let sys = system.resolve()?;
            let entries = minfunc::minimum_function(&sys, m_max, &mut table)?;
            let rows: Vec<JumpRow> =
                minfunc::jump_points(&entries).iter().map(JumpRow::from).collect();
            Ok((emit(common.format, "offsieve.jumps.v1", &rows)?, true))
        }
        Command::Effective { system, m, common } => {
            apply_threads(common.threads);
            let sys = system.resolve()?;
            let range = minfunc::effective_range(m, &sys, &mut table)?;
            let rows = effective_rows(&range);
            Ok((emit(common.format, "offsieve.effective.v1", &rows)?, true))
        }
        Command::Twins { lo, hi, common } => {
            apply_threads(common.threads);
            check_span(lo, hi, common.allow_large)?;
            let mut rows = Vec::new();
            for (a, b) in ranges(lo, hi, common.segment_size)? {
                rows.extend(
                    constellations::twin_formers(a, b, &mut table)?
                        .into_iter()
                        .map(|former| FormerRow { former }),
                );
            }
            Ok((emit(common.format, "offsieve.twins.v1", &rows)?, true))
        }
        Command::Gaps { limit, common } => {
            apply_threads(common.threads);
            if limit < 5 {
                return Err(Error::domain(format!("gap table requires limit >= 5, got {limit}")));
            }
            check_span(2, limit, common.allow_large)?;
            let mut formers = Vec::new();
            for (a, b) in ranges(2, limit, common.segment_size)? {
                formers.extend(constellations::twin_formers(a, b, &mut table)?);
            }
            let rows: Vec<GapRow> = formers
                .iter()
                .enumerate()
                .map(|(i, &f)| GapRow { former: f, gap: formers.get(i + 1).map(|&n| n - f) })
                .collect();
            Ok((emit(common.format, "offsieve.gaps.v1", &rows)?, true))
        }
        Command::Quads { lo, hi, common } => {
            apply_threads(common.threads);
            check_span(lo, hi, common.allow_large)?;
            let mut starts = Vec::new();
            for (a, b) in ranges(lo, hi, common.segment_size)? {
                starts.extend(constellations::quadruplet_starts(a, b, &mut table)?);
            }
            let rows: Vec<QuadRow> = starts
                .iter()
                .enumerate()
                .map(|(i, &z)| QuadRow { start: z, gap_to_next: starts.get(i + 1).map(|&n| n - z) })
                .collect();
            Ok((emit(common.format, "offsieve.quads.v1", &rows)?, true))
        }
        Command::Decades { from, to, common } => {
            apply_threads(common.threads);
            if to > 8 && common.allow_large {
                eprintln!("offsieve: scanning past 10^9; each further decade costs ~10x more time");
            }
            let rows: Vec<DecadeRow> =
                constellations::decade_histogram(from, to, common.allow_large, &mut table)?
                    .iter()
                    .map(DecadeRow::from)
                    .collect();
            Ok((emit(common.format, "offsieve.decades.v1", &rows)?, true))
        }
        Command::Lifespan { start, limit, common } => {
            apply_threads(common.threads);
            let spans = match (start, limit) {
                (Some(z), None) => vec![constellations::life_span(z)?],
                (None, Some(limit)) => {
                    check_span(1, limit, common.allow_large)?;
                    constellations::quadruplet_starts(1, limit, &mut table)?
                        .into_iter()
                        .map(constellations::life_span)
                        .collect::<Result<Vec<_>>>()?
                }
                _ => return Err(Error::domain("pass exactly one of --start or --limit")),
            };
            let rows: Vec<LifeSpanRow> = spans.iter().map(LifeSpanRow::from).collect();
            Ok((emit(common.format, "offsieve.lifespan.v1", &rows)?, true))
        }
        Command::Verify { target, limit, m_max, common } => {
            apply_threads(common.threads);
            match target.as_str() {
                "equivalence" => {
                    let limit = limit.unwrap_or(1_000_000);
                    let report = constellations::jump_equivalence_report(limit, &mut table)?;
                    let rows = equivalence_rows(&report);
                    let text = match common.format {
                        FormatArg::Csv => report::to_csv(&rows)?,
                        FormatArg::Json => {
                            let value = serde_json::json!({
                                "schema": "offsieve.verify.equivalence.v1",
                                "limit": report.limit,
                                "pass": report.pass(),
                                "sieve_minus_oracle": report.sieve_only,
                                "oracle_minus_sieve": report.oracle_only,
                                "first_gap": report.first_gap,
                                "spacing_violations": report.spacing_violations,
                                "rows": rows,
                            });
                            serde_json::to_string_pretty(&value)
                                .map_err(|e| Error::invariant(e.to_string()))?
                                + "\n"
                        }
                    };
                    Ok((text, report.pass()))
                }
                "minbound" => {
                    let m_max = m_max.unwrap_or(1228);
                    let report = minfunc::min_bound_report(m_max, &mut table)?;
                    let rows: Vec<BoundRow> = report.rows.iter().map(BoundRow::from).collect();
                    let text = match common.format {
                        FormatArg::Csv => report::to_csv(&rows)?,
                        FormatArg::Json => {
                            let value = serde_json::json!({
                                "schema": "offsieve.verify.minbound.v1",
                                "m_max": report.m_max,
                                "pass": report.pass(),
                                "violations": report.violations,
                                "min_margin": report.min_margin,
                                "rows": rows,
                            });
                            serde_json::to_string_pretty(&value)
                                .map_err(|e| Error::invariant(e.to_string()))?
                                + "\n"
                        }
                    };
                    Ok((text, report.pass()))
                }
                other => Err(Error::domain(format!("unknown verify target {other:?}"))),
            }
        }
        Command::Reproduce { table: table_name, fixture, common } => {
            apply_threads(common.threads);
            let id = TableId::parse(&table_name)
                .ok_or_else(|| Error::domain(format!("unknown table {table_name:?}")))?;
            let text = match &fixture {
                Some(path) => std::fs::read_to_string(path)?,
                None => id.builtin().to_string(),
            };
            let diff = fixtures::reproduce(id, &text, &mut table)?;
            let out = match common.format {
                FormatArg::Csv => report::to_csv(&diff.rows)?,
                FormatArg::Json => {
                    let value = serde_json::json!({
                        "schema": "offsieve.reproduce.v1",
                        "table": diff.table.as_str(),
                        "entries": diff.rows.len(),
                        "matches": diff.matches(),
                        "mismatches": diff.mismatches().len(),
                        "suspects": diff.suspects().len(),
                        "pass": diff.pass(),
                        "rows": diff.rows,
                    });
                    serde_json::to_string_pretty(&value).map_err(|e| Error::invariant(e.to_string()))?
                        + "\n"
                }
            };
            Ok((out, diff.pass()))
        }
    }
}
