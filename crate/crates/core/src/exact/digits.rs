//! Constants known only through a finite decimal expansion.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};

use super::constants::{E_DIGITS, PI_DIGITS};
use super::enclosure::{decimal, Enclosure};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Pi,
    E,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Pi => "pi",
            Builtin::E => "e",
        }
    }

    fn digits(self) -> &'static str {
        match self {
            Builtin::Pi => PI_DIGITS,
            Builtin::E => E_DIGITS,
        }
    }
}

/// Where a digit constant's enclosure came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DigitOrigin {
    Builtin(Builtin),
    /// User literal such as `2.71828`; the text is kept verbatim.
    Literal(String),
    /// `v / (v - 1)` of another digit constant.
    Complement(Box<DigitOrigin>),
}

impl fmt::Display for DigitOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitOrigin::Builtin(b) => f.write_str(b.name()),
            DigitOrigin::Literal(text) => write!(f, "dec:{text}"),
            DigitOrigin::Complement(inner) => write!(f, "alpha({inner})"),
        }
    }
}

/// Dyadic outer approximation of an enclosure: `lo / 2^shift <= enc.lo`
/// and `hi / 2^shift >= enc.hi`. Floors against it cost one small
/// multiplication and a shift.
#[derive(Clone, PartialEq, Eq)]
struct Dyadic {
    lo: BigInt,
    hi: BigInt,
    shift: u64,
}

impl Dyadic {
    fn outer(enc: &Enclosure) -> Self {
        let shift = enc.precision_bits() + 64;
        let scale = BigRational::from_integer(BigInt::one() << shift);
        Dyadic {
            lo: (enc.lo() * &scale).floor().to_integer(),
            hi: (enc.hi() * &scale).ceil().to_integer(),
            shift,
        }
    }

    fn floor_bounds(&self, n: &BigInt) -> (BigInt, BigInt) {
        ((n * &self.lo) >> self.shift, (n * &self.hi) >> self.shift)
    }
}

/// A real known to lie strictly inside a fixed rational enclosure.
///
/// The enclosure cannot be refined further: any floor it cannot decide is
/// reported as [`Error::PrecisionExhausted`].
#[derive(Clone)]
pub struct DigitConstant {
    origin: DigitOrigin,
    enclosure: Enclosure,
    fixed: Dyadic,
    recip: Option<Dyadic>,
}

impl PartialEq for DigitConstant {
    fn eq(&self, other: &Self) -> bool {
        self.origin == other.origin && self.enclosure == other.enclosure
    }
}

impl Eq for DigitConstant {}

fn split_literal(text: &str) -> (BigInt, u32) {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let mut all = String::with_capacity(int.len() + frac.len());
    all.push_str(int);
    all.push_str(frac);
    let mantissa: BigInt = all
        .parse()
        .expect("digit strings are validated by the caller");
    (mantissa, frac.len() as u32)
}

fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

impl DigitConstant {
    fn from_enclosure(origin: DigitOrigin, enclosure: Enclosure) -> Self {
        let fixed = Dyadic::outer(&enclosure);
        let recip = enclosure.recip().map(|r| Dyadic::outer(&r));
        DigitConstant {
            origin,
            enclosure,
            fixed,
            recip,
        }
    }

    /// Built-in constant; the stored digits are truncated, so the value lies
    /// in `[m / 10^P, (m + 1) / 10^P]`.
    pub fn builtin(which: Builtin) -> Self {
        let (m, p) = split_literal(which.digits());
        let den = pow10(p);
        let enclosure = Enclosure::new(
            BigRational::new(m.clone(), den.clone()),
            BigRational::new(m + 1, den),
        );
        Self::from_enclosure(DigitOrigin::Builtin(which), enclosure)
    }

    /// Decimal literal `int.frac` with `P = frac.len()` declared digits; the
    /// value lies within `10^-P / 2` of the literal.
    pub fn literal(text: &str) -> Result<Self> {
        let (int, frac) = text
            .split_once('.')
            .ok_or_else(|| Error::parse(0, "expected a decimal point"))?;
        let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(int) {
            return Err(Error::parse(0, "expected digits before the decimal point"));
        }
        if !digits_ok(frac) {
            return Err(Error::parse(
                int.len() + 1,
                "expected digits after the decimal point",
            ));
        }
        let (m, p) = split_literal(text);
        let den: BigInt = pow10(p) * 2;
        let centre: BigInt = m * 2;
        let enclosure = Enclosure::new(
            BigRational::new(&centre - 1, den.clone()),
            BigRational::new(centre + 1, den),
        );
        Ok(Self::from_enclosure(
            DigitOrigin::Literal(text.to_string()),
            enclosure,
        ))
    }

    pub fn origin(&self) -> &DigitOrigin {
        &self.origin
    }

    pub fn enclosure(&self) -> &Enclosure {
        &self.enclosure
    }

    pub fn available_bits(&self) -> u64 {
        self.enclosure.precision_bits()
    }

    pub fn refine(&self, bits: u64) -> Result<Enclosure> {
        if self.enclosure.width_at_most_pow2(bits) {
            Ok(self.enclosure.clone())
        } else {
            Err(Error::PrecisionExhausted(format!(
                "{} supports width 2^-{}, requested 2^-{bits}",
                self.origin,
                self.available_bits()
            )))
        }
    }

    /// Lower and upper floor of `n * value` over the enclosure.
    pub fn floor_bounds(&self, n: u64) -> (BigInt, BigInt) {
        let n = BigInt::from(n);
        let (lo, hi) = self.fixed.floor_bounds(&n);
        if lo == hi {
            return (lo, hi);
        }
        self.enclosure.floor_bounds(&n)
    }

    pub fn floor_mul(&self, n: u64) -> Result<BigInt> {
        let (lo, hi) = self.floor_bounds(n);
        if lo == hi {
            Ok(lo)
        } else {
            Err(self.undecided(&format!("floor({n} * {})", self.origin)))
        }
    }

    /// `floor(x / value)`; requires a strictly positive enclosure.
    pub fn floor_div(&self, x: u64) -> Result<BigInt> {
        let x_big = BigInt::from(x);
        let recip = self.recip.as_ref().ok_or_else(|| {
            Error::BetaOutOfRange(format!("{} is not provably positive", self.origin))
        })?;
        let (lo, hi) = recip.floor_bounds(&x_big);
        if lo == hi {
            return Ok(lo);
        }
        let exact = self.enclosure.recip().expect("positive enclosure");
        let (lo, hi) = exact.floor_bounds(&x_big);
        if lo == hi {
            Ok(lo)
        } else {
            Err(self.undecided(&format!("floor({x} / {})", self.origin)))
        }
    }

    fn undecided(&self, what: &str) -> Error {
        Error::PrecisionExhausted(format!(
            "cannot decide {what}: value known only within [{}, {}]",
            decimal(self.enclosure.lo(), 12),
            decimal(self.enclosure.hi(), 12)
        ))
    }

    /// `v / (v - 1)` by interval division; requires `lo > 1`.
    pub fn complement(&self) -> Option<DigitConstant> {
        let one = BigRational::one();
        let lo_m1 = self.enclosure.lo() - &one;
        if !lo_m1.is_positive() {
            return None;
        }
        let hi_m1 = self.enclosure.hi() - &one;
        // v / (v - 1) = 1 + 1 / (v - 1) decreases in v.
        let enclosure = Enclosure::new(&one + hi_m1.recip(), &one + lo_m1.recip());
        Some(Self::from_enclosure(
            DigitOrigin::Complement(Box::new(self.origin.clone())),
            enclosure,
        ))
    }

    pub fn approx_f64(&self) -> f64 {
        let mid = self.enclosure.midpoint();
        let scaled = (mid * BigRational::from_integer(BigInt::one() << 60u32)).floor();
        scaled.to_integer().to_f64().unwrap_or(f64::NAN) / (1u64 << 60) as f64
    }
}

impl fmt::Debug for DigitConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.origin, self.enclosure)
    }
}
