//! Shared evaluation context and the certified named constants.
//!
//! A [`Ctx`] fixes a working precision, carries an enclosure of `ln 2` for
//! the transcendental kernels, and caches the constants every checker needs:
//! the Euler–Mascheroni constant, `e^γ/2`, the equality constant of the main
//! bound, the tail-lemma constant `0.125·(1+ln 2)/(1-(1+ln 2)/(8·ln 20000))`,
//! and the even-case cross-check constant pinned by equality at n = 12.
//!
//! γ itself is not derived at run time. It comes from a stored decimal
//! literal; an independent Euler–Maclaurin evaluation in the test suite
//! certifies every stored digit (see `gamma_two_source_check`).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::dyadic::{Dyadic, Round};
use super::interval::{log2_interval, Interval};
use crate::arith::{self, Factorization};
use crate::{Error, Result};

/// Decimal digits of the Euler–Mascheroni constant after the decimal point.
/// The true value lies in `[literal, literal + 2·10^-160]`.
const GAMMA_FRACTION_DIGITS: &str = "5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495146314472498070824809605040144865428362241739976449235362535";

/// Extra `ln 2` accuracy over the working precision, so that exponent
/// contributions `k·ln 2` do not erode the guard bits of the kernels.
const LOG2_EXTRA_BITS: u32 = 64;

/// Precisions the automatic ladder may visit.
pub const LADDER_PRECISIONS: [u32; 4] = [64, 128, 256, 512];

/// A named enclosure together with a note on how it was derived.
#[derive(Clone, Debug)]
pub struct CertifiedConstant {
    pub name: String,
    pub enclosure: Interval,
    pub derivation: String,
}

/// Fixed-precision evaluation context.
pub struct Ctx {
    prec: u32,
    log2: Interval,
    override_c: Option<BigRational>,
    gamma: OnceLock<Interval>,
    half_egamma: OnceLock<Interval>,
    c_main: OnceLock<CertifiedConstant>,
    c_lemma24: OnceLock<CertifiedConstant>,
    c_robin_even: OnceLock<CertifiedConstant>,
}

impl Ctx {
    pub fn new(prec: u32) -> Ctx {
        Ctx {
            prec,
            log2: log2_interval(prec + LOG2_EXTRA_BITS),
            override_c: None,
            gamma: OnceLock::new(),
            half_egamma: OnceLock::new(),
            c_main: OnceLock::new(),
            c_lemma24: OnceLock::new(),
            c_robin_even: OnceLock::new(),
        }
    }

    /// Context whose main constant is replaced by an arbitrary rational.
    /// Only for negative testing; the reports flag it as unsound.
    pub fn with_override_c(prec: u32, c: BigRational) -> Ctx {
        let mut ctx = Ctx::new(prec);
        ctx.override_c = Some(c);
        ctx
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn has_override_c(&self) -> bool {
        self.override_c.is_some()
    }

    pub fn log2(&self) -> &Interval {
        &self.log2
    }

    pub fn ln_iv(&self, x: &Interval) -> Result<Interval> {
        x.ln(&self.log2, self.prec)
    }

    pub fn exp_iv(&self, x: &Interval) -> Interval {
        x.exp(&self.log2, self.prec)
    }

    pub fn ln_u64(&self, n: u64) -> Result<Interval> {
        self.ln_iv(&Interval::from_u64(n, self.prec))
    }

    pub fn ln_bigint(&self, n: &BigInt) -> Result<Interval> {
        self.ln_iv(&Interval::from_bigint(n, self.prec))
    }

    pub fn ln_ratio(&self, q: &BigRational) -> Result<Interval> {
        self.ln_iv(&Interval::from_ratio(q, self.prec))
    }

    /// `log n` from a factorization, as `Σ a_p · log p`; the integer itself
    /// is never materialized.
    pub fn log_of_factorization(&self, f: &Factorization) -> Result<Interval> {
        let mut sum = Interval::zero(self.prec);
        for &(p, a) in f.pairs() {
            let lp = self.ln_u64(p)?;
            let term = if a == 1 {
                lp
            } else {
                lp.mul(&Interval::from_u64(a as u64, self.prec), self.prec)
            };
            sum = sum.add(&term, self.prec);
        }
        Ok(sum)
    }

    /// `log log n` for a plain integer, `n >= 3`.
    pub fn loglog_u64(&self, n: u64) -> Result<Interval> {
        if n < 3 {
            return Err(Error::Domain(format!(
                "log log is only evaluated for n >= 3, got {n}"
            )));
        }
        self.loglog_from_logsum(&self.ln_u64(n)?)
    }

    /// `log log n` for a factorized integer, `n >= 3`.
    pub fn loglog_factorization(&self, f: &Factorization) -> Result<Interval> {
        if f.is_empty() || (f.pairs() == [(2, 1)]) {
            return Err(Error::Domain("log log is only evaluated for n >= 3".into()));
        }
        self.loglog_from_logsum(&self.log_of_factorization(f)?)
    }

    /// Outer logarithm for a pre-computed `log n` enclosure. Requires
    /// `log n > 1`, i.e. the regime where `log log` is positive.
    pub fn loglog_from_logsum(&self, log_n: &Interval) -> Result<Interval> {
        if log_n.lo().cmp_ratio(&BigRational::one()).is_le() {
            return Err(Error::Domain(format!(
                "log log needs log n > 1, enclosure starts at {}",
                log_n.lo()
            )));
        }
        self.ln_iv(log_n)
    }

    /// Enclosure of γ from the stored literal.
    pub fn euler_gamma(&self) -> &Interval {
        self.gamma.get_or_init(|| {
            let digits: BigInt = GAMMA_FRACTION_DIGITS.parse().expect("valid digits");
            let scale = BigInt::from(10u8).pow(GAMMA_FRACTION_DIGITS.len() as u32);
            let lo = BigRational::new(digits.clone(), scale.clone());
            let hi = BigRational::new(digits + 2, scale);
            Interval::new(
                Dyadic::from_ratio(&lo, self.prec + 8, Round::Floor),
                Dyadic::from_ratio(&hi, self.prec + 8, Round::Ceil),
                self.prec,
            )
        })
    }

    /// Enclosure of `e^γ / 2`, the coefficient of `log log n` in the bound.
    pub fn half_egamma(&self) -> &Interval {
        self.half_egamma
            .get_or_init(|| self.exp_iv(self.euler_gamma()).mul_pow2(-1))
    }

    /// The equality constant `(σ(315)/315 − (e^γ/2)·loglog 315)·loglog 315`.
    pub fn main_constant_c(&self) -> &CertifiedConstant {
        self.c_main.get_or_init(|| {
            if let Some(c) = &self.override_c {
                return CertifiedConstant {
                    name: "C".into(),
                    enclosure: Interval::from_ratio(c, self.prec),
                    derivation: format!("UNSOUND debug override: C := {c}"),
                };
            }
            let f315 =
                Factorization::new(vec![(3, 2), (5, 1), (7, 1)]).expect("315 factors as 3^2·5·7");
            let sigma = arith::sigma_over_n(&f315);
            let sigma_iv = Interval::from_ratio(&sigma, self.prec);
            let t = self.loglog_u64(315).expect("315 is in the loglog domain");
            let a = self.half_egamma();
            let enclosure = sigma_iv
                .sub(&a.mul(&t, self.prec), self.prec)
                .mul(&t, self.prec);
            CertifiedConstant {
                name: "C".into(),
                enclosure,
                derivation: format!(
                    "(σ(315)/315 − (e^γ/2)·loglog 315)·loglog 315 with σ(315)/315 = {sigma}"
                ),
            }
        })
    }

    /// The tail-lemma constant
    /// `0.125·(1+log 2)·(1 − (1+log 2)/(8·log 20000))^{-1} = 0.21626511…`.
    pub fn lemma24_constant(&self) -> &CertifiedConstant {
        self.c_lemma24.get_or_init(|| {
            let one = Interval::one(self.prec);
            let one_plus_ln2 = one.add(&self.log2.round_to(self.prec), self.prec);
            let ln20000 = self.ln_u64(20_000).expect("20000 > 0");
            let correction = one_plus_ln2
                .div(&ln20000.mul_pow2(3), self.prec)
                .expect("8·ln 20000 is positive");
            let inner = one
                .div(&one.sub(&correction, self.prec), self.prec)
                .expect("1 − (1+ln 2)/(8 ln 20000) is positive");
            let enclosure = one_plus_ln2.mul_pow2(-3).mul(&inner, self.prec);
            CertifiedConstant {
                name: "lemma24".into(),
                enclosure,
                derivation: "0.125·(1+log 2)·(1 − (1+log 2)/(8·log 20000))^{-1}".into(),
            }
        })
    }

    /// The even-case constant `(σ(12)/12 − e^γ·loglog 12)·loglog 12`,
    /// pinned by equality at n = 12; used only as a cross-check.
    pub fn robin_even_constant(&self) -> &CertifiedConstant {
        self.c_robin_even.get_or_init(|| {
            let sigma12 = BigRational::new(BigInt::from(7), BigInt::from(3));
            let t = self.loglog_u64(12).expect("12 is in the loglog domain");
            let egamma = self.half_egamma().mul_pow2(1);
            let enclosure = Interval::from_ratio(&sigma12, self.prec)
                .sub(&egamma.mul(&t, self.prec), self.prec)
                .mul(&t, self.prec);
            CertifiedConstant {
                name: "robin_even".into(),
                enclosure,
                derivation: "(σ(12)/12 − e^γ·loglog 12)·loglog 12".into(),
            }
        })
    }

    /// Evaluate `A·t + B/t` for `t > 0`.
    pub fn rhs_bound(&self, t: &Interval, a: &Interval, b: &Interval) -> Result<Interval> {
        if !t.lo().is_positive() {
            return Err(Error::Domain("the bound A·t + B/t needs t > 0".into()));
        }
        let quotient = b.div(t, self.prec)?;
        Ok(a.mul(t, self.prec).add(&quotient, self.prec))
    }

    /// The coefficient pair `(A, B) = (e^γ/2, C)` of the main bound.
    pub fn main_coefficients(&self) -> (Interval, Interval) {
        (
            self.half_egamma().clone(),
            self.main_constant_c().enclosure.clone(),
        )
    }
}

/// Lazily-built stack of contexts at increasing precision. Checkers try the
/// base rung and climb only when an interval comparison fails to resolve.
pub struct Ladder {
    rungs: Vec<u32>,
    cells: Vec<OnceLock<Ctx>>,
    override_c: Option<BigRational>,
}

impl Ladder {
    /// Ladder starting at `start` bits, doubling through 512 when
    /// `escalate` is set, otherwise pinned to the single starting rung.
    pub fn new(start: u32, escalate: bool) -> Result<Ladder> {
        if !LADDER_PRECISIONS.contains(&start) {
            return Err(Error::Usage(format!(
                "precision must be one of {LADDER_PRECISIONS:?}, got {start}"
            )));
        }
        let rungs: Vec<u32> = if escalate {
            LADDER_PRECISIONS
                .iter()
                .copied()
                .filter(|&p| p >= start)
                .collect()
        } else {
            vec![start]
        };
        let cells = rungs.iter().map(|_| OnceLock::new()).collect();
        Ok(Ladder {
            rungs,
            cells,
            override_c: None,
        })
    }

    pub fn with_override_c(start: u32, escalate: bool, c: BigRational) -> Result<Ladder> {
        let mut l = Ladder::new(start, escalate)?;
        l.override_c = Some(c);
        Ok(l)
    }

    pub fn base(&self) -> &Ctx {
        self.ctx(0).expect("ladder has at least one rung")
    }

    pub fn len(&self) -> usize {
        self.rungs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rungs.is_empty()
    }

    pub fn ctx(&self, i: usize) -> Option<&Ctx> {
        let prec = *self.rungs.get(i)?;
        Some(self.cells[i].get_or_init(|| match &self.override_c {
            Some(c) => Ctx::with_override_c(prec, c.clone()),
            None => Ctx::new(prec),
        }))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ctx> {
        (0..self.rungs.len()).filter_map(|i| self.ctx(i))
    }

    /// First rung where `f` resolves.
    pub fn run<T>(&self, mut f: impl FnMut(&Ctx) -> Result<Option<T>>) -> Result<Option<T>> {
        for ctx in self.iter() {
            if let Some(v) = f(ctx)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};
    use std::cmp::Ordering;

    fn q(n: i64, d: u64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pow10(k: u32) -> BigRational {
        BigRational::new(BigInt::from(10u8).pow(k), BigInt::one())
    }

    fn decimal_to_ratio(s: &str) -> BigRational {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits: BigInt = format!("{int}{frac}").parse().unwrap();
        BigRational::new(digits, BigInt::from(10u8).pow(frac.len() as u32))
    }

    /// Exact Bernoulli numbers B_0..B_m via the defining recurrence.
    fn bernoulli_numbers(m: usize) -> Vec<BigRational> {
        let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
        for n in 0..=m {
            if n == 0 {
                b.push(BigRational::one());
                continue;
            }
            // sum_{j=0}^{n} C(n+1, j) B_j = 0
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(n+1, 0)
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            // remaining coefficient is C(n+1, n) = n+1
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    }

    /// Independent enclosure of γ by Euler–Maclaurin on the harmonic sum:
    /// γ = H_N − ln N − 1/(2N) + Σ_{k=1}^m B_{2k}/(2k N^{2k}) ± first omitted
    /// term (the tail for 1/x is enveloped by its first omitted term).
    fn em_gamma(prec: u32, n_base: u64, m: usize) -> Interval {
        let b = bernoulli_numbers(2 * m + 2);
        let nq = BigRational::from_integer(BigInt::from(n_base));
        let mut exact = BigRational::zero();
        for j in 1..=n_base {
            exact += BigRational::new(BigInt::one(), BigInt::from(j));
        }
        exact -= (nq.clone() * BigRational::from_integer(2.into())).recip();
        let nsq = &nq * &nq;
        let mut npow = BigRational::one();
        for k in 1..=m {
            npow *= &nsq;
            exact += &b[2 * k] / (BigRational::from_integer(BigInt::from(2 * k)) * &npow);
        }
        let eps = (&b[2 * m + 2]
            / (BigRational::from_integer(BigInt::from(2 * m + 2)) * &npow * &nsq))
            .abs();
        let ctx = Ctx::new(prec);
        let ln_n = ctx.ln_u64(n_base).unwrap();
        let centered = Interval::from_ratio(&exact, prec).sub(&ln_n, prec);
        let eps_dy = Dyadic::from_ratio(&eps, 64, Round::Ceil);
        Interval::new(centered.lo().sub(&eps_dy), centered.hi().add(&eps_dy), prec)
    }

    #[test]
    fn bernoulli_recurrence_matches_classical_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], BigRational::zero());
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert_eq!(b[10], q(5, 66));
        assert_eq!(b[12], q(-691, 2730));
    }

    #[test]
    fn gamma_two_source_check() {
        // The stored literal must agree with an independent Euler–Maclaurin
        // evaluation on every digit it pins down.
        let em = em_gamma(700, 1000, 34);
        assert!(
            em.width().cmp_ratio(&pow10(165).recip()) == Ordering::Less,
            "oracle enclosure too wide: {}",
            em.width()
        );
        let digits: BigInt = GAMMA_FRACTION_DIGITS.parse().unwrap();
        let scale = BigInt::from(10u8).pow(GAMMA_FRACTION_DIGITS.len() as u32);
        let lo = BigRational::new(digits.clone(), scale.clone());
        let hi = BigRational::new(digits + 2, scale);
        // The literal bracket must contain the whole certified enclosure,
        // which proves it contains γ.
        assert!(
            em.lo().cmp_ratio(&lo).is_gt(),
            "literal lower bound too high"
        );
        assert!(em.hi().cmp_ratio(&hi).is_lt(), "literal bracket too low");
    }

    #[test]
    fn gamma_literal_starts_with_the_classical_digits() {
        assert_eq!(GAMMA_FRACTION_DIGITS.len(), 160);
        assert!(
            GAMMA_FRACTION_DIGITS.starts_with("57721566490153286060651209008240243104215933593992")
        );
    }

    #[test]
    fn gamma_width_contract() {
        for prec in LADDER_PRECISIONS {
            let ctx = Ctx::new(prec);
            let width = ctx.euler_gamma().width();
            let bound = Dyadic::new(BigInt::one(), 8 - prec as i64);
            assert!(
                width <= bound,
                "γ enclosure at {prec} bits is wider than 2^(8-{prec})"
            );
        }
    }

    #[test]
    fn gamma_enclosures_nest_with_precision() {
        let coarse = Ctx::new(64);
        let fine = Ctx::new(128);
        assert!(coarse.euler_gamma().contains(fine.euler_gamma()));
        assert!(coarse.half_egamma().contains(fine.half_egamma()));
    }

    #[test]
    fn half_egamma_reference_digits() {
        // e^γ = 1.7810724179…, so e^γ/2 must print 0.8905362090 at ten digits.
        let ctx = Ctx::new(128);
        let a = ctx.half_egamma();
        let v = decimal_to_ratio("0.8905362090");
        let tol = pow10(10).recip();
        assert!(a.lo().cmp_ratio(&(&v - &tol)).is_gt());
        assert!(a.hi().cmp_ratio(&(&v + &tol)).is_lt());
        let egamma = a.mul_pow2(1);
        let ev = decimal_to_ratio("1.7810724179");
        let etol = pow10(9).recip();
        assert!(egamma.lo().cmp_ratio(&(&ev - &etol)).is_gt());
        assert!(egamma.hi().cmp_ratio(&(&ev + &etol)).is_lt());
    }

    #[test]
    fn loglog_matches_double_precision_at_reference_points() {
        let ctx = Ctx::new(128);
        // 315 → 1.74964…, 3 → 0.09405…, 12 → 0.91023….
        for n in [315u64, 3, 12] {
            let t = ctx.loglog_u64(n).unwrap();
            let naive = (n as f64).ln().ln();
            let lo = decimal_to_ratio(&format!("{:.12}", naive - 1e-9));
            let hi = decimal_to_ratio(&format!("{:.12}", naive + 1e-9));
            assert!(t.lo().cmp_ratio(&lo).is_gt(), "loglog({n}) too low");
            assert!(t.hi().cmp_ratio(&hi).is_lt(), "loglog({n}) too high");
        }
        // Consistency with the factorization route.
        let t = ctx.loglog_u64(315).unwrap();
        let f = Factorization::new(vec![(3, 2), (5, 1), (7, 1)]).unwrap();
        let via_f = ctx.loglog_factorization(&f).unwrap();
        assert!(t.lo() <= via_f.hi() && via_f.lo() <= t.hi());
    }

    #[test]
    fn loglog_rejects_small_arguments() {
        let ctx = Ctx::new(64);
        assert!(ctx.loglog_u64(2).is_err());
        assert!(ctx.loglog_u64(1).is_err());
        assert!(ctx.loglog_u64(3).is_ok());
        // log N <= 1 is rejected by the logsum route.
        let small = Interval::from_ratio(&q(1, 1), 64);
        assert!(ctx.loglog_from_logsum(&small).is_err());
    }

    #[test]
    fn loglog_from_logsum_of_e_is_one() {
        // A thin enclosure of e maps to an enclosure of 1.
        let ctx = Ctx::new(128);
        let e = ctx.exp_iv(&Interval::one(128));
        let out = ctx.loglog_from_logsum(&e).unwrap();
        assert!(out.contains_ratio(&BigRational::one()));
    }

    #[test]
    fn main_constant_value_and_nesting() {
        let ctx = Ctx::new(128);
        let c = ctx.main_constant_c();
        // Enclosure within the coarse bracket.
        assert!(c
            .enclosure
            .lo()
            .cmp_ratio(&decimal_to_ratio("0.7397"))
            .is_gt());
        assert!(c
            .enclosure
            .hi()
            .cmp_ratio(&decimal_to_ratio("0.7401"))
            .is_lt());
        // Tight width.
        assert!(c.enclosure.width().cmp_ratio(&pow10(10).recip()) == Ordering::Less);
        // The defining identity: A·t + C/t must enclose σ(315)/315 exactly.
        let t = ctx.loglog_u64(315).unwrap();
        let (a, b) = ctx.main_coefficients();
        let rhs = ctx.rhs_bound(&t, &a, &b).unwrap();
        assert!(rhs.contains_ratio(&q(208, 105)));
        // Strictly above the even-case constant 0.6482….
        assert!(c
            .enclosure
            .lo()
            .cmp_ratio(&decimal_to_ratio("0.6482"))
            .is_gt());
        // Doubling the precision nests.
        let fine = Ctx::new(256);
        assert!(c.enclosure.contains(&fine.main_constant_c().enclosure));
    }

    #[test]
    fn main_constant_certified_digits() {
        // The defining expression evaluates to 0.7398002037…; this pins the
        // first digits so any derivation drift is caught loudly.
        let ctx = Ctx::new(256);
        let c = &ctx.main_constant_c().enclosure;
        let v = decimal_to_ratio("0.7398002037");
        let tol = pow10(9).recip();
        assert!(c.lo().cmp_ratio(&(&v - &tol)).is_gt());
        assert!(c.hi().cmp_ratio(&(&v + &tol)).is_lt());
    }

    #[test]
    fn lemma24_constant_digits() {
        let ctx = Ctx::new(128);
        let c = ctx.lemma24_constant();
        let v = decimal_to_ratio("0.21626511");
        let tol = pow10(8).recip() / BigRational::from_integer(2.into());
        assert!(c.enclosure.lo().cmp_ratio(&(&v - &tol)).is_gt());
        assert!(c.enclosure.hi().cmp_ratio(&(&v + &tol)).is_lt());
        // Inner factor 1.02183726….
        let one = Interval::one(128);
        let one_plus_ln2 = one.add(&ctx.log2().round_to(128), 128);
        let corr = one_plus_ln2
            .div(&ctx.ln_u64(20_000).unwrap().mul_pow2(3), 128)
            .unwrap();
        let inner = one.div(&one.sub(&corr, 128), 128).unwrap();
        let iv = decimal_to_ratio("1.02183726");
        let itol = pow10(7).recip();
        assert!(inner.lo().cmp_ratio(&(&iv - &itol)).is_gt());
        assert!(inner.hi().cmp_ratio(&(&iv + &itol)).is_lt());
        // Degenerate limit (log 20000 -> ∞): 0.125·(1+log 2) = 0.2116434….
        let limit = one_plus_ln2.mul_pow2(-3);
        let lv = decimal_to_ratio("0.2116433976");
        let ltol = pow10(9).recip();
        assert!(limit.lo().cmp_ratio(&(&lv - &ltol)).is_gt());
        assert!(limit.hi().cmp_ratio(&(&lv + &ltol)).is_lt());
    }

    #[test]
    fn robin_even_constant_digits() {
        let ctx = Ctx::new(128);
        let c = ctx.robin_even_constant();
        let v = decimal_to_ratio("0.6482");
        let tol = pow10(4).recip();
        assert!(c.enclosure.lo().cmp_ratio(&(&v - &tol)).is_gt());
        assert!(c.enclosure.hi().cmp_ratio(&(&v + &tol)).is_lt());
    }

    #[test]
    fn certified_constants_meet_the_width_invariant() {
        let ctx = Ctx::new(128);
        let bound = pow10(30).recip();
        for width in [
            ctx.main_constant_c().enclosure.width(),
            ctx.lemma24_constant().enclosure.width(),
            ctx.robin_even_constant().enclosure.width(),
            ctx.euler_gamma().width(),
            ctx.half_egamma().width(),
        ] {
            assert!(width.cmp_ratio(&bound) == Ordering::Less);
        }
    }

    #[test]
    fn rhs_bound_point_case_and_monotonicity() {
        let ctx = Ctx::new(128);
        let one = Interval::one(128);
        let x = Interval::from_ratio(&q(5, 4), 128);
        let y = Interval::from_ratio(&q(3, 4), 128);
        let r = ctx.rhs_bound(&one, &x, &y).unwrap();
        assert!(r.contains_ratio(&q(2, 1)));
        // t ↦ A·t + C/t is increasing for t >= 1 because the turning point
        // sqrt(C/A) is below 1, which reduces to C < A.
        let (a, c) = ctx.main_coefficients();
        assert!(c.certainly_lt(&a), "C must stay below e^γ/2");
        let mut prev: Option<Interval> = None;
        for t_num in [10i64, 11, 13, 20, 40, 100] {
            let t = Interval::from_ratio(&q(t_num, 10), 128);
            let r = ctx.rhs_bound(&t, &a, &c).unwrap();
            if let Some(p) = prev {
                assert!(
                    p.certainly_lt(&r),
                    "bound failed to increase at t = {t_num}/10"
                );
            }
            prev = Some(r);
        }
        // Zero-touching t is rejected.
        let z = Interval::from_ratio(&q(0, 1), 128);
        assert!(ctx.rhs_bound(&z, &a, &c).is_err());
    }

    #[test]
    fn ladder_rungs_and_override() {
        let l = Ladder::new(128, true).unwrap();
        let precs: Vec<u32> = l.iter().map(|c| c.prec()).collect();
        assert_eq!(precs, vec![128, 256, 512]);
        let single = Ladder::new(64, false).unwrap();
        assert_eq!(single.len(), 1);
        assert!(Ladder::new(100, true).is_err());
        let o = Ladder::with_override_c(128, false, q(3, 5)).unwrap();
        let c = o.base().main_constant_c();
        assert!(c.derivation.contains("UNSOUND"));
        assert!(c.enclosure.contains_ratio(&q(3, 5)));
    }
}
