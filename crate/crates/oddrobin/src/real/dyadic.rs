//! Arbitrary-precision dyadic floats with directed rounding.
//!
//! A [`Dyadic`] is `mant * 2^exp` with an arbitrary-size integer mantissa.
//! Addition, subtraction and multiplication are exact; rounding to a given
//! mantissa width and division are directed (toward -inf or +inf), which is
//! what the interval layer needs to keep enclosures sound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rounding direction for operations that cannot be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Floor => Round::Ceil,
            Round::Ceil => Round::Floor,
        }
    }
}

/// `mant * 2^exp`, canonicalized so the mantissa is odd or zero.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

/// Shift right rounding toward negative infinity, defined for any sign.
fn shr_floor(m: &BigInt, k: u64) -> BigInt {
    if m.sign() == Sign::Minus {
        // floor(m / 2^k) = -ceil(|m| / 2^k)
        let mag = m.magnitude() + ((BigInt::one() << k) - 1u8).magnitude();
        -BigInt::from(mag >> k)
    } else {
        m >> k
    }
}

/// Shift right rounding toward positive infinity.
fn shr_ceil(m: &BigInt, k: u64) -> BigInt {
    -shr_floor(&-m, k)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_bigint(n: &BigInt) -> Dyadic {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_u64(n: u64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_i64(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let m = match dir {
            Round::Floor => shr_floor(&self.mant, k),
            Round::Ceil => shr_ceil(&self.mant, k),
        };
        Dyadic::new(m, self.exp + k as i64)
    }

    /// Exact sum.
    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: if self.mant.is_zero() { 0 } else { self.exp },
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            self.clone()
        } else {
            Dyadic {
                mant: self.mant.clone(),
                exp: self.exp + k,
            }
        }
    }

    /// Directed-rounding quotient with `prec` result bits. `other` must be nonzero.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient carries at least
        // prec + 2 significant bits before the final rounding.
        let want = prec as i64 + 2;
        let have = self.mant.bits() as i64 - other.mant.bits() as i64;
        let s = (want - have).max(0) as u64;
        let num = &self.mant << s;
        let q = match dir {
            Round::Floor => num.div_floor(&other.mant),
            Round::Ceil => num.div_ceil(&other.mant),
        };
        Dyadic::new(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    /// Exact conversion to a rational.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed conversion from a rational.
    pub fn from_ratio(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_bigint(q.numer()).div(&Dyadic::from_bigint(q.denom()), prec, dir)
    }

    /// Exact comparison.
    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (Sign::Minus, Sign::NoSign)
            | (Sign::Minus, Sign::Plus)
            | (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign)
            | (Sign::Plus, Sign::Minus)
            | (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        if self.exp >= other.exp {
            (&self.mant << (self.exp - other.exp) as u64).cmp(&other.mant)
        } else {
            self.mant
                .cmp(&(&other.mant << (other.exp - self.exp) as u64))
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_ratio(&self, q: &BigRational) -> Ordering {
        // mant * 2^exp  vs  a/b   with b > 0
        let a = q.numer();
        let b = q.denom();
        if self.exp >= 0 {
            ((&self.mant << self.exp as u64) * b).cmp(a)
        } else {
            (&self.mant * b).cmp(&(a << (-self.exp) as u64))
        }
    }

    /// Approximate f64 value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 53 {
            let k = bits - 53;
            (shr_floor(&self.mant, k), self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let (sign, digits) = m.to_u64_digits();
        let mut v = digits.first().copied().unwrap_or(0) as f64;
        if sign == Sign::Minus {
            v = -v;
        }
        v * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal rendering with `digits` fractional digits, rounded in `dir`.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let pow10 = BigInt::from(10u8).pow(digits);
        // scaled = round_dir(value * 10^digits) as an integer
        let scaled = if self.exp >= 0 {
            (&self.mant << self.exp as u64) * pow10
        } else {
            let num = &self.mant * pow10;
            let den = BigInt::one() << (-self.exp) as u64;
            match dir {
                Round::Floor => num.div_floor(&den),
                Round::Ceil => num.div_ceil(&den),
            }
        };
        let neg = scaled.sign() == Sign::Minus;
        let mag = scaled.magnitude().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&mag[..split]);
        if digits > 0 {
            out.push('.');
            out.push_str(&mag[split..]);
        }
        out
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_dyadic(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_dyadic(other)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30, Round::Floor))
    }
}
