//! Directed-rounding interval arithmetic.
//!
//! Every operation maintains the enclosure property: if `x ∈ X` and `y ∈ Y`
//! then `x ∘ y ∈ X ∘ Y`. Sums, differences and products of dyadic endpoints
//! are computed exactly and only then rounded outward, so soundness does not
//! depend on any case analysis. Division and the transcendental maps round
//! every intermediate step in the widening direction.
//!
//! `ln` uses the atanh series after the argument is split as `f * 2^k` with
//! `f ∈ [1, 2)`, so the series variable `z = (f-1)/(f+1)` stays in `[0, 1/3]`.
//! `exp` reduces by the nearest multiple of `ln 2` and sums the Taylor series.
//! Both add an explicit tail bound before rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{Dyadic, Round};
use crate::{Error, Result};

/// Closed enclosure `[lo, hi]` of a real number, with the mantissa precision
/// it was rounded to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

/// Position of an exact rational relative to an enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    /// Certified strictly below the whole enclosure.
    Below,
    /// Inside the enclosure; the comparison did not resolve.
    Within,
    /// Certified strictly above the whole enclosure.
    Above,
}

const GUARD_BITS: u32 = 32;

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: lo.round(prec, Round::Floor),
            hi: hi.round(prec, Round::Ceil),
            prec,
        }
    }

    pub fn point(d: &Dyadic, prec: u32) -> Interval {
        Interval::new(d.clone(), d.clone(), prec)
    }

    pub fn zero(prec: u32) -> Interval {
        Interval::point(&Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Interval {
        Interval::point(&Dyadic::one(), prec)
    }

    pub fn from_u64(n: u64, prec: u32) -> Interval {
        Interval::point(&Dyadic::from_u64(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Interval {
        Interval::point(&Dyadic::from_bigint(n), prec)
    }

    pub fn from_ratio(q: &BigRational, prec: u32) -> Interval {
        Interval {
            lo: Dyadic::from_ratio(q, prec, Round::Floor),
            hi: Dyadic::from_ratio(q, prec, Round::Ceil),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn round_to(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Floor),
            hi: self.hi.round(prec, Round::Ceil),
            prec,
        }
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo
            .add(&self.hi)
            .mul_pow2(-1)
            .round(self.prec, Round::Floor)
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval::new(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        Interval::new(self.lo.sub(&other.hi), self.hi.sub(&other.lo), prec)
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        // Products of dyadics are exact, so min/max over the four corner
        // products is the exact range for monotone selection.
        let c1 = self.lo.mul(&other.lo);
        let c2 = self.lo.mul(&other.hi);
        let c3 = self.hi.mul(&other.lo);
        let c4 = self.hi.mul(&other.hi);
        let mut lo = c1.clone();
        let mut hi = c1;
        for c in [c2, c3, c4] {
            if c < lo {
                lo = c.clone();
            }
            if c > hi {
                hi = c;
            }
        }
        Interval::new(lo, hi, prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval> {
        if !(other.lo.is_positive() || other.hi.is_negative()) {
            return Err(Error::Domain(
                "interval division by an enclosure containing zero".into(),
            ));
        }
        let corners = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in corners {
            let f = a.div(b, prec + 2, Round::Floor);
            let c = a.div(b, prec + 2, Round::Ceil);
            if lo.as_ref().is_none_or(|v| f < *v) {
                lo = Some(f);
            }
            if hi.as_ref().is_none_or(|v| c > *v) {
                hi = Some(c);
            }
        }
        Ok(Interval::new(lo.unwrap(), hi.unwrap(), prec))
    }

    /// Whether every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_ratio(&self, q: &BigRational) -> bool {
        self.position_of_ratio(q) == Position::Within
    }

    /// Certified position of an exact rational relative to the enclosure.
    pub fn position_of_ratio(&self, q: &BigRational) -> Position {
        if self.lo.cmp_ratio(q) == Ordering::Greater {
            Position::Below
        } else if self.hi.cmp_ratio(q) == Ordering::Less {
            Position::Above
        } else {
            Position::Within
        }
    }

    /// Enclosure of the natural logarithm. Requires `lo > 0`.
    pub fn ln(&self, log2: &Interval, prec: u32) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::Domain(
                "ln of an enclosure touching (-inf, 0]".into(),
            ));
        }
        let work = prec + GUARD_BITS;
        let lo_enc = ln_point(&self.lo, work, log2);
        if self.lo == self.hi {
            return Ok(lo_enc.round_to(prec));
        }
        let hi_enc = ln_point(&self.hi, work, log2);
        Ok(Interval::new(lo_enc.lo, hi_enc.hi, prec))
    }

    /// Enclosure of the exponential.
    pub fn exp(&self, log2: &Interval, prec: u32) -> Interval {
        let work = prec + GUARD_BITS;
        let lo_enc = exp_point(&self.lo, work, log2);
        if self.lo == self.hi {
            return lo_enc.round_to(prec);
        }
        let hi_enc = exp_point(&self.hi, work, log2);
        Interval::new(lo_enc.lo, hi_enc.hi, prec)
    }

    /// Decimal rendering of both endpoints, rounded outward.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Floor),
            self.hi.to_decimal(digits, Round::Ceil),
        )
    }
}

/// Enclosure of `ln 2 = 2 atanh(1/3)` at the given working precision.
pub fn log2_interval(prec: u32) -> Interval {
    let work = prec + GUARD_BITS;
    let third = Interval::from_ratio(&BigRational::new(BigInt::from(1), BigInt::from(3)), work);
    atanh_times_two(&third, work).round_to(prec)
}

/// Enclosure of `2 atanh(z)` for `0 <= z < 1/2`, tail bound included.
fn atanh_times_two(z: &Interval, work: u32) -> Interval {
    assert!(
        !z.lo.is_negative()
            && z.hi.cmp_ratio(&BigRational::new(1.into(), 2.into())) == Ordering::Less,
        "atanh argument out of range"
    );
    if z.hi.is_zero() {
        return Interval::zero(work);
    }
    let zsq = z.mul(z, work);
    let eps = Dyadic::new(BigInt::from(1), -(work as i64));
    let mut sum = z.clone();
    let mut power = z.clone();
    let mut j: u64 = 1;
    loop {
        power = power.mul(&zsq, work);
        let term = power
            .div(&Interval::from_u64(2 * j + 1, work), work)
            .expect("odd denominator is nonzero");
        sum = sum.add(&term, work);
        if term.hi < eps {
            break;
        }
        j += 1;
        assert!(j < 100 * work as u64, "atanh series failed to converge");
    }
    // Remaining tail: sum_{i>j} z^(2i+1)/(2i+1) <= z^(2j+3)/((2j+3)(1-z^2)).
    let num = power.hi.mul(&zsq.hi);
    let one_minus = Dyadic::one().sub(&zsq.hi);
    assert!(one_minus.is_positive());
    let tail =
        num.div(&one_minus, work, Round::Ceil)
            .div(&Dyadic::from_u64(2 * j + 3), work, Round::Ceil);
    let with_tail = Interval::new(sum.lo.clone(), sum.hi.add(&tail), work);
    with_tail.mul_pow2(1)
}

/// Enclosure of `ln x` for a single positive dyadic.
fn ln_point(x: &Dyadic, work: u32, log2: &Interval) -> Interval {
    debug_assert!(x.is_positive());
    // x = f * 2^k with f in [1, 2)
    let b = x.bits() as i64;
    let k = x.exp() + b - 1;
    let f = x.mul_pow2(-k);
    debug_assert!(f >= Dyadic::one() && f < Dyadic::from_u64(2));
    let num = Interval::point(&f.sub(&Dyadic::one()), work);
    let den = Interval::point(&f.add(&Dyadic::one()), work);
    let z = num.div(&den, work).expect("f + 1 >= 2 is positive");
    let ln_f = atanh_times_two(&z, work);
    if k == 0 {
        return ln_f;
    }
    let k_iv = Interval::point(&Dyadic::from_i64(k), work);
    ln_f.add(&k_iv.mul(log2, work), work)
}

/// Enclosure of `exp x` for a single dyadic.
fn exp_point(x: &Dyadic, work: u32, log2: &Interval) -> Interval {
    // Argument reduction: x = n ln 2 + r with |r| <= 0.75.
    let n = (x.to_f64() / std::f64::consts::LN_2).round();
    assert!(n.abs() < 9e15, "exp argument out of supported range");
    let n = n as i64;
    let r = Interval::point(x, work).sub(
        &Interval::point(&Dyadic::from_i64(n), work).mul(log2, work),
        work,
    );
    let three_quarters = BigRational::new(3.into(), 4.into());
    assert!(
        r.hi.cmp_ratio(&three_quarters) == Ordering::Less
            && r.lo.cmp_ratio(&(-three_quarters.clone())) == Ordering::Greater,
        "exp argument reduction out of range"
    );
    let eps = Dyadic::new(BigInt::from(1), -(work as i64));
    let mut sum = Interval::one(work);
    let mut term = Interval::one(work);
    let mut j: u64 = 1;
    loop {
        term = term
            .mul(&r, work)
            .div(&Interval::from_u64(j, work), work)
            .expect("factorial index is nonzero");
        sum = sum.add(&term, work);
        let mag = term.lo.neg().max(term.hi.clone());
        if j >= 2 && mag < eps {
            // |r|/(j+1) <= 0.25 from here on, so the tail is below 2 * next term.
            let next = mag.mul(&r.lo.neg().max(r.hi.clone()));
            let tail = next
                .div(&Dyadic::from_u64(j + 1), work, Round::Ceil)
                .mul_pow2(1);
            let widened = Interval::new(sum.lo.sub(&tail), sum.hi.add(&tail), work);
            let scaled = widened.mul_pow2(n);
            assert!(scaled.lo.is_positive(), "exp enclosure must stay positive");
            return scaled;
        }
        j += 1;
        assert!(j < 100 * work as u64, "exp series failed to converge");
    }
}
