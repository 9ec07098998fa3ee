//! Odd colossally abundant numbers and the split/coverage machinery.
//!
//! An odd integer `N` is colossally abundant (within the odd integers) when
//! some `ε > 0` makes `σ(n)/n^(1+ε)` maximal exactly at `N`. Because
//! `σ(n)/n^(1+ε)` is multiplicative, the maximizer grows one prime power at
//! a time: raising the exponent of `p` from `a-1` to `a` pays off precisely
//! for `ε` below the critical threshold `log_p((p^(a+1)−1)/(p^a−1)) − 1`.
//! The generator therefore keeps one candidate step per prime and always
//! applies the step with the largest remaining threshold, escalating
//! precision whenever two threshold enclosures refuse to separate.
//!
//! On top of the generated sequence sit the split checks (an `α` fraction of
//! the bound controlled by `A·loglog n` at both endpoints of a consecutive
//! pair, a `β` fraction controlled by `B/loglog n` at the upper endpoint,
//! with `α + β ≤ 1`) and the audit that the verified ranges chain without
//! gaps from 3 all the way into the primorial tail.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{self, Factorization};
use crate::primes::PrimeTable;
use crate::real::{Ctx, Interval, Ladder, Position};
use crate::robin::{Outcome, Snapshot, Verdict};
use crate::{Error, Result};

/// Threshold at which raising `p`'s exponent to `a` becomes profitable.
#[derive(Clone, Debug)]
pub struct CriticalEpsilon {
    pub p: u64,
    pub a: u32,
    pub eps: Interval,
}

/// One element of the generated sequence, with the `ε` window on which it
/// maximizes `σ(n)/n^(1+ε)`.
#[derive(Clone, Debug)]
pub struct OddCaNumber {
    /// 1-based position in the sequence.
    pub ordinal: usize,
    pub factorization: Factorization,
    pub eps_window: Interval,
}

/// `eps(p, a) = log((p^(a+1)−1)/(p^a−1))/log p − 1` for an odd prime power.
pub fn critical_epsilon(p: u64, a: u32, ctx: &Ctx) -> Result<CriticalEpsilon> {
    if p == 2 {
        return Err(Error::Usage(
            "critical epsilons are defined on odd primes only".into(),
        ));
    }
    if p < 3 || p.is_multiple_of(2) || !is_prime_u64(p) {
        return Err(Error::Usage(format!("{p} is not an odd prime")));
    }
    if a == 0 {
        return Err(Error::Usage("exponent must be at least 1".into()));
    }
    let prec = ctx.prec();
    let num = BigInt::from(p).pow(a + 1) - 1;
    let den = BigInt::from(p).pow(a) - 1;
    let ln_ratio = ctx.ln_bigint(&num)?.sub(&ctx.ln_bigint(&den)?, prec);
    let eps = ln_ratio
        .div(&ctx.ln_u64(p)?, prec)?
        .sub(&Interval::one(prec), prec);
    Ok(CriticalEpsilon { p, a, eps })
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

struct Candidate {
    p: u64,
    next_a: u32,
    rung: usize,
    eps: Interval,
}

fn candidate_eps(p: u64, a: u32, ladder: &Ladder, rung: usize) -> Result<Interval> {
    let ctx = ladder
        .ctx(rung)
        .ok_or_else(|| Error::Exhausted("precision rung out of range".into()))?;
    Ok(critical_epsilon(p, a, ctx)?.eps)
}

/// Generate the first `count` odd colossally abundant numbers in increasing
/// order. The prime table must extend a little past the largest prime the
/// sequence will absorb.
pub fn generate_odd_ca(
    count: usize,
    table: &PrimeTable,
    ladder: &Ladder,
) -> Result<Vec<OddCaNumber>> {
    if count == 0 {
        return Err(Error::Usage("generation needs count >= 1".into()));
    }
    let odd_primes: Vec<u64> = table.primes().iter().copied().filter(|&p| p != 2).collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut frontier = 0usize; // index of the next unused odd prime

    fn push_frontier(
        odd_primes: &[u64],
        table_limit: u64,
        candidates: &mut Vec<Candidate>,
        frontier: &mut usize,
        ladder: &Ladder,
    ) -> Result<()> {
        let p = *odd_primes.get(*frontier).ok_or_else(|| {
            Error::Usage(format!(
                "prime table (limit {table_limit}) too small for the requested sequence"
            ))
        })?;
        candidates.push(Candidate {
            p,
            next_a: 1,
            rung: 0,
            eps: candidate_eps(p, 1, ladder, 0)?,
        });
        *frontier += 1;
        Ok(())
    }

    push_frontier(
        &odd_primes,
        table.limit(),
        &mut candidates,
        &mut frontier,
        ladder,
    )?;

    let mut factorization = Factorization::empty();
    let mut step_eps: Vec<Interval> = Vec::with_capacity(count + 1);
    let mut numbers: Vec<Factorization> = Vec::with_capacity(count);

    // One extra step so every returned number gets a closed epsilon window.
    for _ in 0..=count {
        let winner = select_max_candidate(&mut candidates, ladder)?;
        let (p, a) = (candidates[winner].p, candidates[winner].next_a);
        step_eps.push(candidates[winner].eps.clone());
        if numbers.len() < count {
            factorization = factorization.multiplied_by_prime(p);
            numbers.push(factorization.clone());
        }
        // Advance the winning candidate to its next exponent; open a new
        // frontier prime the first time a prime enters the product.
        let rung = candidates[winner].rung;
        candidates[winner].next_a = a + 1;
        candidates[winner].eps = candidate_eps(p, a + 1, ladder, rung)?;
        if a == 1 {
            push_frontier(
                &odd_primes,
                table.limit(),
                &mut candidates,
                &mut frontier,
                ladder,
            )?;
        }
    }

    Ok(numbers
        .into_iter()
        .enumerate()
        .map(|(i, f)| OddCaNumber {
            ordinal: i + 1,
            factorization: f,
            eps_window: Interval::new(
                step_eps[i + 1].lo().clone(),
                step_eps[i].hi().clone(),
                ladder.base().prec(),
            ),
        })
        .collect())
}

/// Index of the candidate with certified-largest epsilon, escalating the
/// precision of any candidate whose enclosure overlaps the leader.
fn select_max_candidate(candidates: &mut [Candidate], ladder: &Ladder) -> Result<usize> {
    loop {
        let best = candidates
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.eps.lo().cmp(b.eps.lo()))
            .map(|(i, _)| i)
            .expect("candidate list is never empty");
        let best_lo = candidates[best].eps.lo().clone();
        let ambiguous: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|&(i, c)| i != best && *c.eps.hi() >= best_lo)
            .map(|(i, _)| i)
            .collect();
        if ambiguous.is_empty() {
            return Ok(best);
        }
        let mut escalated = false;
        for i in ambiguous.into_iter().chain([best]) {
            if candidates[i].rung + 1 < ladder.len() {
                let (p, a, rung) = {
                    let c = &candidates[i];
                    (c.p, c.next_a, c.rung + 1)
                };
                candidates[i].eps = candidate_eps(p, a, ladder, rung)?;
                candidates[i].rung = rung;
                escalated = true;
            }
        }
        if !escalated {
            // Ladder exhausted with overlapping enclosures. Genuine algebraic
            // ties are not expected for distinct odd prime powers; fall back
            // to the deterministic smaller-prime preference.
            let mut tied: Vec<usize> = candidates
                .iter()
                .enumerate()
                .filter(|&(i, c)| i == best || *c.eps.hi() >= best_lo)
                .map(|(i, _)| i)
                .collect();
            tied.sort_by_key(|&i| candidates[i].p);
            return Ok(tied[0]);
        }
    }
}

/// Report of one split verification over a consecutive CA pair.
#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub verdicts: Vec<Verdict>,
    pub conclusion: Outcome,
}

fn resolve_ratio_le_interval(
    subject: String,
    lhs: &BigRational,
    rhs_of: impl Fn(&Ctx) -> Result<Interval>,
    ladder: &Ladder,
) -> Result<Verdict> {
    let mut last: Option<(Snapshot, u32)> = None;
    for ctx in ladder.iter() {
        let rhs = rhs_of(ctx)?;
        match rhs.position_of_ratio(lhs) {
            Position::Below => {
                return Ok(Verdict {
                    subject,
                    outcome: Outcome::Holds,
                    lhs: Snapshot::from_ratio(lhs),
                    rhs: Snapshot::from_interval(&rhs),
                    precision_used: ctx.prec(),
                })
            }
            Position::Above => {
                return Ok(Verdict {
                    subject,
                    outcome: Outcome::Fails,
                    lhs: Snapshot::from_ratio(lhs),
                    rhs: Snapshot::from_interval(&rhs),
                    precision_used: ctx.prec(),
                })
            }
            Position::Within => last = Some((Snapshot::from_interval(&rhs), ctx.prec())),
        }
    }
    let (rhs, precision_used) = last.expect("ladder has at least one rung");
    Ok(Verdict {
        subject,
        outcome: Outcome::Undecided,
        lhs: Snapshot::from_ratio(lhs),
        rhs,
        precision_used,
    })
}

/// Split verification on a consecutive CA pair: part (1) `α·σ/n ≤ A·loglog`
/// at both endpoints, part (2) `β·σ/n ≤ B/loglog` at the upper endpoint.
/// With `α + β ≤ 1` the two parts give the full bound on the closed range.
pub fn verify_split(
    n: &OddCaNumber,
    n_next: &OddCaNumber,
    alpha: &BigRational,
    beta: &BigRational,
    ladder: &Ladder,
) -> Result<SplitReport> {
    if n_next.ordinal != n.ordinal + 1 {
        return Err(Error::Usage(format!(
            "endpoints must be consecutive in the sequence, got ordinals {} and {}",
            n.ordinal, n_next.ordinal
        )));
    }
    if !alpha.is_positive() || beta < &BigRational::from_integer(0.into()) {
        return Err(Error::Usage("need α > 0 and β >= 0".into()));
    }
    if alpha + beta > BigRational::one() {
        return Err(Error::Usage(format!(
            "the split requires α + β <= 1, got {alpha} + {beta}"
        )));
    }
    let mut verdicts = Vec::with_capacity(3);
    for endpoint in [n, n_next] {
        let lhs = alpha * arith::sigma_over_n(&endpoint.factorization);
        let f = endpoint.factorization.clone();
        verdicts.push(resolve_ratio_le_interval(
            format!(
                "α·σ(N)/N ≤ (e^γ/2)·loglog N at N = {} (α = {alpha})",
                endpoint.factorization.compact()
            ),
            &lhs,
            move |ctx| {
                let t = ctx.loglog_factorization(&f)?;
                Ok(ctx.half_egamma().mul(&t, ctx.prec()))
            },
            ladder,
        )?);
    }
    let lhs2 = beta * arith::sigma_over_n(&n_next.factorization);
    let f2 = n_next.factorization.clone();
    verdicts.push(resolve_ratio_le_interval(
        format!(
            "β·σ(N)/N ≤ C/loglog N at N = {} (β = {beta})",
            n_next.factorization.compact()
        ),
        &lhs2,
        move |ctx| {
            let t = ctx.loglog_factorization(&f2)?;
            ctx.main_constant_c().enclosure.div(&t, ctx.prec())
        },
        ladder,
    )?);
    let conclusion = Outcome::combine(verdicts.iter().map(|v| v.outcome));
    Ok(SplitReport {
        verdicts,
        conclusion,
    })
}

/// One of the three (α, β) range cases.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: u8,
    pub alpha: BigRational,
    pub beta: BigRational,
    pub lo: Factorization,
    pub hi: Factorization,
}

fn endpoint(
    table: &PrimeTable,
    head: &[(u64, u32)],
    fill_from: u64,
    fill_to: u64,
) -> Result<Factorization> {
    let mut pairs: Vec<(u64, u32)> = head.to_vec();
    for &p in table.primes() {
        if p >= fill_from && p <= fill_to {
            pairs.push((p, 1));
        }
    }
    Factorization::new(pairs)
}

/// The documented (α, β) cases, smallest range first:
/// case 3 covers `3²·5·7···13 ≤ n ≤ 3³·5²·7···17`,
/// case 2 covers `3³·5²·7···17 ≤ n ≤ 3⁴·5³·7²·11···59`,
/// case 1 covers `3³·5²·7·11···31 ≤ n ≤ 3⁶·5⁴·7³·11²·13²·17²·19²·23·29···251`.
pub fn case_spec(id: u8, table: &PrimeTable) -> Result<CaseSpec> {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match id {
        1 => Ok(CaseSpec {
            id,
            alpha: q(39, 40),
            beta: q(1, 40),
            lo: endpoint(table, &[(3, 3), (5, 2)], 7, 31)?,
            hi: endpoint(
                table,
                &[(3, 6), (5, 4), (7, 3), (11, 2), (13, 2), (17, 2), (19, 2)],
                23,
                251,
            )?,
        }),
        2 => Ok(CaseSpec {
            id,
            alpha: q(19, 20),
            beta: q(1, 20),
            lo: endpoint(table, &[(3, 3), (5, 2)], 7, 17)?,
            hi: endpoint(table, &[(3, 4), (5, 3), (7, 2)], 11, 59)?,
        }),
        3 => Ok(CaseSpec {
            id,
            alpha: q(19, 21),
            beta: q(2, 21),
            lo: endpoint(table, &[(3, 2)], 5, 13)?,
            hi: endpoint(table, &[(3, 3), (5, 2)], 7, 17)?,
        }),
        _ => Err(Error::Usage(format!("case id must be 1, 2 or 3, got {id}"))),
    }
}

/// Aggregate report of one case sweep.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case_id: u8,
    pub pair_count: usize,
    pub verdicts: Vec<Verdict>,
    pub overall: Outcome,
}

/// Upper bound on the sequence length any case sweep can need; the largest
/// documented endpoint is reached within 70 steps.
const MAX_SEQUENCE: usize = 120;

/// Locate a factorization in the generated sequence.
pub fn find_in_sequence(seq: &[OddCaNumber], f: &Factorization) -> Option<usize> {
    seq.iter().position(|n| n.factorization == *f)
}

/// Verify one (α, β) case over every consecutive CA pair inside its range.
pub fn corollary_sweep(case_id: u8, table: &PrimeTable, ladder: &Ladder) -> Result<CaseReport> {
    let spec = case_spec(case_id, table)?;
    // Grow the sequence until the top endpoint shows up; the deepest
    // documented endpoint arrives at ordinal 67.
    let mut count = 68;
    let (seq, end) = loop {
        let seq = generate_odd_ca(count, table, ladder)?;
        if let Some(end) = find_in_sequence(&seq, &spec.hi) {
            break (seq, end);
        }
        if count >= MAX_SEQUENCE {
            return Err(Error::Structural(format!(
                "case {case_id} upper endpoint {} did not appear within {MAX_SEQUENCE} numbers",
                spec.hi
            )));
        }
        count = (count + 16).min(MAX_SEQUENCE);
    };
    let start = find_in_sequence(&seq, &spec.lo).ok_or_else(|| {
        Error::Structural(format!(
            "case {case_id} lower endpoint {} is not in the generated sequence",
            spec.lo
        ))
    })?;
    if start >= end {
        return Err(Error::Structural(format!(
            "case {case_id} endpoints out of order in the sequence"
        )));
    }
    let mut verdicts = Vec::new();
    for i in start..end {
        let split = verify_split(&seq[i], &seq[i + 1], &spec.alpha, &spec.beta, ladder)?;
        verdicts.extend(split.verdicts);
    }
    let overall = Outcome::combine(verdicts.iter().map(|v| v.outcome));
    Ok(CaseReport {
        case_id,
        pair_count: end - start,
        verdicts,
        overall,
    })
}

/// Inputs of the coverage audit, exact integers only.
#[derive(Clone, Debug)]
pub struct CoverageInputs {
    /// Closed brute-force range, both endpoints odd.
    pub brute: (BigInt, BigInt),
    /// Closed case ranges in chaining order.
    pub case_ranges: Vec<(BigInt, BigInt)>,
    /// Start of the primorial tail (covered from here to infinity).
    pub tail_start: BigInt,
}

/// Outcome of the audit; `gap` reports an uncovered odd interval on failure.
#[derive(Clone, Debug)]
pub struct CoverageOutcome {
    pub verdict: Verdict,
    pub gap: Option<(BigInt, BigInt)>,
}

/// Certify that the brute-force range, the case ranges, and the primorial
/// tail jointly cover every odd integer from 3 upward. Pure big-integer
/// endpoint comparisons; adjacent closed ranges may touch or overlap, and a
/// gap of at least one odd integer is a failure.
pub fn coverage_audit(inputs: &CoverageInputs) -> Result<CoverageOutcome> {
    let three = BigInt::from(3);
    if inputs.brute.0 > three {
        return Err(Error::Usage("the brute range must start at 3".into()));
    }
    let snapshot = |v: &BigInt| Snapshot {
        lo: v.to_string(),
        hi: v.to_string(),
        exact: Some(v.to_string()),
        digits: 0,
    };
    let fail = |gap: (BigInt, BigInt), note: &str| CoverageOutcome {
        verdict: Verdict {
            subject: format!(
                "range coverage: uncovered odd interval [{}, {}]{note}",
                gap.0, gap.1
            ),
            outcome: Outcome::Fails,
            lhs: snapshot(&gap.0),
            rhs: snapshot(&gap.1),
            precision_used: 0,
        },
        gap: Some(gap),
    };
    let mut covered_hi = inputs.brute.1.clone();
    for range in &inputs.case_ranges {
        if range.0 > &covered_hi + 2 {
            let gap = (&covered_hi + 2, &range.0 - 2);
            return Ok(fail(gap, ""));
        }
        if range.1 > covered_hi {
            covered_hi = range.1.clone();
        }
    }
    if inputs.tail_start > &covered_hi + 2 {
        let gap = (&covered_hi + 2, &inputs.tail_start - 2);
        return Ok(fail(gap, " before the tail"));
    }
    let verdict = Verdict {
        subject: format!(
            "range coverage: [3, {}] ∪ case ranges ∪ [tail start, ∞) has no gaps",
            inputs.brute.1
        ),
        outcome: Outcome::Holds,
        lhs: snapshot(&inputs.brute.1),
        rhs: snapshot(&inputs.tail_start),
        precision_used: 0,
    };
    Ok(CoverageOutcome { verdict, gap: None })
}

/// Audit inputs assembled from the documented ranges and `N'_54`.
pub fn default_coverage_inputs(table: &PrimeTable) -> Result<CoverageInputs> {
    let mut case_ranges = Vec::new();
    for id in [3u8, 2, 1] {
        let spec = case_spec(id, table)?;
        case_ranges.push((spec.lo.value(), spec.hi.value()));
    }
    let tail_start = crate::primes::odd_primorial(54, table)?
        .factorization
        .value();
    Ok(CoverageInputs {
        brute: (BigInt::from(3), BigInt::from(45_045)),
        case_ranges,
        tail_start,
    })
}
