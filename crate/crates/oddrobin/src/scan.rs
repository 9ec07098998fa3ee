//! Exhaustive certified verification over a bounded odd range.
//!
//! Every odd `n` in the range gets the full certified treatment: exact
//! σ(n)/n from the sieve factorization against the interval bound. The scan
//! carries no floating-point shortcut and no pre-filter; at the scale of the
//! documented range (45045) the exact check is cheap enough that a filter
//! would only add its own correctness burden.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith::{factorize, sigma_over_n};
use crate::primes::PrimeTable;
use crate::real::{Interval, Ladder, Position};
use crate::robin::{Outcome, Snapshot};
use crate::{Error, Result};

/// Certified slack `rhs − σ(n)/n` at one n, kept as an enclosure.
#[derive(Clone, Debug)]
pub struct SlackSample {
    pub n: u64,
    pub slack: Interval,
}

/// Aggregate result of a range scan.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub lo: u64,
    pub hi: u64,
    /// Number of odd integers examined in `[max(lo, 3), hi]`.
    pub checked: u64,
    pub violations: Vec<u64>,
    pub equality_cases: Vec<u64>,
    pub undecided: Vec<u64>,
    /// Minimizer of the certified slack, equality cases excluded.
    pub min_slack: Option<SlackSample>,
    pub wall_time: Duration,
    pub max_precision_used: u32,
}

impl ScanReport {
    pub fn overall(&self) -> Outcome {
        if !self.violations.is_empty() {
            Outcome::Fails
        } else if !self.undecided.is_empty() {
            Outcome::Undecided
        } else {
            Outcome::Holds
        }
    }

    /// Summary row for report serialization.
    pub fn summary(&self) -> String {
        format!(
            "checked {} odd n in [{}, {}]: {} violations, equality at {:?}, min slack at n = {}",
            self.checked,
            self.lo.max(3),
            self.hi,
            self.violations.len(),
            self.equality_cases,
            self.min_slack
                .as_ref()
                .map_or("n/a".to_string(), |s| s.n.to_string()),
        )
    }

    /// Merge two reports over disjoint ranges. Associative and commutative
    /// in the semantic fields; wall time accumulates.
    pub fn merge(mut self, other: ScanReport) -> ScanReport {
        self.lo = self.lo.min(other.lo);
        self.hi = self.hi.max(other.hi);
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.violations.sort_unstable();
        self.equality_cases.extend(other.equality_cases);
        self.equality_cases.sort_unstable();
        self.undecided.extend(other.undecided);
        self.undecided.sort_unstable();
        self.min_slack = match (self.min_slack.take(), other.min_slack) {
            (Some(a), Some(b)) => Some(if slack_le(&a, &b) { a } else { b }),
            (a, b) => a.or(b),
        };
        self.wall_time += other.wall_time;
        self.max_precision_used = self.max_precision_used.max(other.max_precision_used);
        self
    }
}

/// Deterministic slack ordering: by lower endpoint, then upper, then n.
fn slack_le(a: &SlackSample, b: &SlackSample) -> bool {
    match a.slack.lo().cmp(b.slack.lo()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => match a.slack.hi().cmp(b.slack.hi()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => a.n <= b.n,
        },
    }
}

/// Scan every odd `n` in `[max(lo, 3), hi]` against the main bound.
pub fn brute_force_scan(
    lo: u64,
    hi: u64,
    table: &PrimeTable,
    ladder: &Ladder,
) -> Result<ScanReport> {
    if lo < 3 || lo > hi {
        return Err(Error::Usage(format!(
            "scan needs 3 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    if hi > table.limit() {
        return Err(Error::Usage(format!(
            "scan upper bound {hi} exceeds the sieve limit {}",
            table.limit()
        )));
    }
    let start_time = Instant::now();
    let mut report = ScanReport {
        lo,
        hi,
        checked: 0,
        violations: Vec::new(),
        equality_cases: Vec::new(),
        undecided: Vec::new(),
        min_slack: None,
        wall_time: Duration::ZERO,
        max_precision_used: 0,
    };
    let first = if lo.is_multiple_of(2) { lo + 1 } else { lo };
    let mut n = first.max(3);
    while n <= hi {
        scan_one(n, table, ladder, &mut report)?;
        n += 2;
    }
    report.wall_time = start_time.elapsed();
    Ok(report)
}

fn scan_one(n: u64, table: &PrimeTable, ladder: &Ladder, report: &mut ScanReport) -> Result<()> {
    let f = factorize(n, table)?;
    let sigma = sigma_over_n(&f);
    let is_equality_case = n == 315;
    report.checked += 1;
    for ctx in ladder.iter() {
        let t = ctx.loglog_u64(n)?;
        let (a, b) = ctx.main_coefficients();
        let rhs = ctx.rhs_bound(&t, &a, &b)?;
        match rhs.position_of_ratio(&sigma) {
            Position::Below => {
                // σ(n)/n certified below the whole bound enclosure.
                let slack = rhs.sub(&Interval::from_ratio(&sigma, ctx.prec()), ctx.prec());
                let sample = SlackSample { n, slack };
                report.max_precision_used = report.max_precision_used.max(ctx.prec());
                let keep = match report.min_slack.take() {
                    Some(best) if slack_le(&best, &sample) => best,
                    Some(_) | None => sample,
                };
                report.min_slack = Some(keep);
                return Ok(());
            }
            Position::Above => {
                report.max_precision_used = report.max_precision_used.max(ctx.prec());
                report.violations.push(n);
                return Ok(());
            }
            Position::Within if is_equality_case && !ctx.has_override_c() => {
                report.max_precision_used = report.max_precision_used.max(ctx.prec());
                report.equality_cases.push(n);
                return Ok(());
            }
            Position::Within => {}
        }
    }
    report.undecided.push(n);
    Ok(())
}

/// The slack minimizer of a completed report; rejects reports whose range
/// contained no strict comparison.
pub fn min_slack(report: &ScanReport) -> Result<(u64, Interval)> {
    report
        .min_slack
        .as_ref()
        .map(|s| (s.n, s.slack.clone()))
        .ok_or_else(|| {
            Error::Usage("the scan produced no strict comparisons to minimize over".into())
        })
}

/// Serializable digest of a scan for the pipeline report.
#[derive(Clone, Debug, Serialize)]
pub struct ScanDigest {
    pub lo: u64,
    pub hi: u64,
    pub checked: u64,
    pub violations: Vec<u64>,
    pub equality_cases: Vec<u64>,
    pub undecided: Vec<u64>,
    pub min_slack_n: Option<u64>,
    pub min_slack: Option<Snapshot>,
    pub outcome: Outcome,
}

impl ScanDigest {
    pub fn of(report: &ScanReport) -> ScanDigest {
        ScanDigest {
            lo: report.lo,
            hi: report.hi,
            checked: report.checked,
            violations: report.violations.clone(),
            equality_cases: report.equality_cases.clone(),
            undecided: report.undecided.clone(),
            min_slack_n: report.min_slack.as_ref().map(|s| s.n),
            min_slack: report
                .min_slack
                .as_ref()
                .map(|s| Snapshot::from_interval(&s.slack)),
            outcome: report.overall(),
        }
    }
}

/// Split an odd range into `parts` odd-aligned chunks for parallel scanning.
pub fn partition_odd_range(lo: u64, hi: u64, parts: u64) -> Vec<(u64, u64)> {
    let lo = lo.max(3);
    let lo = if lo.is_multiple_of(2) { lo + 1 } else { lo };
    if lo > hi || parts == 0 {
        return Vec::new();
    }
    let count = (hi - lo) / 2 + 1; // odd numbers in range
    let parts = parts.min(count);
    let per = count / parts;
    let extra = count % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut cursor = lo;
    for i in 0..parts {
        let take = per + if i < extra { 1 } else { 0 };
        let last = cursor + 2 * (take - 1);
        out.push((cursor, last));
        cursor = last + 2;
    }
    out
}
