//! Exact arithmetic for the irrational game parameter.
//!
//! Every floor `⌊n·β⌋` used anywhere in the crate is computed here, either
//! by integer square roots (quadratic surds) or from a stored rational
//! enclosure (digit constants). Nothing in this module touches floating
//! point except [`IrrationalSpec::approx_f64`], which is for display only.

mod constants;
mod digits;
mod enclosure;
mod grammar;
mod surd;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use digits::{Builtin, DigitConstant, DigitOrigin};
pub use enclosure::{decimal, Enclosure};
pub use grammar::parse_beta_spec;
pub use surd::Surd;

use crate::error::{Error, Result};

/// Exact description of an irrational constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrationalSpec {
    Surd(Surd),
    Digits(DigitConstant),
}

fn to_u64(v: BigInt, what: impl FnOnce() -> String) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::Overflow(what()))
}

impl IrrationalSpec {
    pub fn pi() -> Self {
        IrrationalSpec::Digits(DigitConstant::builtin(Builtin::Pi))
    }

    pub fn e() -> Self {
        IrrationalSpec::Digits(DigitConstant::builtin(Builtin::E))
    }

    pub fn surd(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        Surd::new(a, b, c, d).map(IrrationalSpec::Surd)
    }

    pub fn decimal(text: &str) -> Result<Self> {
        DigitConstant::literal(text).map(IrrationalSpec::Digits)
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn refine(&self, bits: u64) -> Result<Enclosure> {
        match self {
            IrrationalSpec::Surd(s) => Ok(s.refine(bits)),
            IrrationalSpec::Digits(d) => d.refine(bits),
        }
    }

    /// `⌊n·value⌋`.
    pub fn floor_mul(&self, n: u64) -> Result<u64> {
        match self {
            IrrationalSpec::Surd(_) => self.floor_bounds(n).map(|(lo, _)| lo),
            IrrationalSpec::Digits(d) => to_u64(d.floor_mul(n)?, || {
                format!("floor({n} * {self}) does not fit in u64")
            }),
        }
    }

    /// Lower and upper candidates for `⌊n·value⌋`; equal whenever the floor
    /// is decidable.
    fn floor_bounds(&self, n: u64) -> Result<(u64, u64)> {
        let overflow = || format!("floor({n} * {self}) does not fit in u64");
        match self {
            IrrationalSpec::Surd(s) => {
                let v = s
                    .floor_mul(n)
                    .and_then(|v| u64::try_from(v).ok())
                    .ok_or_else(overflow)
                    .map_err(Error::Overflow)?;
                Ok((v, v))
            }
            IrrationalSpec::Digits(d) => {
                let (lo, hi) = d.floor_bounds(n);
                Ok((to_u64(lo, overflow)?, to_u64(hi, overflow)?))
            }
        }
    }

    /// `⌊x / value⌋`; the value must be provably positive.
    pub fn floor_div(&self, x: u64) -> Result<u64> {
        let overflow = || format!("floor({x} / {self}) does not fit in u64");
        match self {
            IrrationalSpec::Surd(s) => {
                if s.cmp_rational(&BigRational::zero()) != Ordering::Greater {
                    return Err(Error::BetaOutOfRange(format!("{self} is not positive")));
                }
                to_u64(s.recip().floor_mul_big(&BigInt::from(x)), overflow)
            }
            IrrationalSpec::Digits(d) => to_u64(d.floor_div(x)?, overflow),
        }
    }

    /// True when the value is provably greater than `q`.
    pub fn exceeds(&self, q: &BigRational) -> bool {
        match self {
            IrrationalSpec::Surd(s) => s.cmp_rational(q) == Ordering::Greater,
            IrrationalSpec::Digits(d) => d.enclosure().lo() >= q,
        }
    }

    /// True when the value is provably less than `q`.
    pub fn below(&self, q: &BigRational) -> bool {
        match self {
            IrrationalSpec::Surd(s) => s.cmp_rational(q) == Ordering::Less,
            IrrationalSpec::Digits(d) => d.enclosure().hi() <= q,
        }
    }

    fn exceeds_int(&self, v: i64) -> bool {
        self.exceeds(&BigRational::from_integer(v.into()))
    }

    /// `α = β / (β − 1)`; `β > 2` must be provable.
    pub fn derive_alpha(&self) -> Result<IrrationalSpec> {
        if !self.exceeds_int(2) {
            return Err(Error::BetaOutOfRange(format!(
                "{self} is not provably greater than 2"
            )));
        }
        Ok(match self {
            IrrationalSpec::Surd(s) => IrrationalSpec::Surd(s.complement()),
            IrrationalSpec::Digits(d) => {
                IrrationalSpec::Digits(d.complement().expect("β > 2 gives a positive denominator"))
            }
        })
    }

    /// The `n ≥ 1` with `⌊n·value⌋ = x`, if any.
    ///
    /// `[x/β, (x+1)/β)` has length below one, so the only candidate is
    /// `⌊x/β⌋ + 1`.
    pub fn beatty_member(&self, x: u64) -> Result<Option<u64>> {
        if !self.exceeds_int(1) {
            return Err(Error::BetaOutOfRange(format!(
                "{self} is not provably greater than 1"
            )));
        }
        if x == 0 {
            return Ok(None);
        }
        let n = self.floor_div(x)? + 1;
        Ok((self.floor_mul(n)? == x).then_some(n))
    }

    /// `⌊n·value⌋` for `n = 1..=count`.
    pub fn beatty_prefix(&self, count: u64) -> Result<Vec<u64>> {
        (1..=count).map(|n| self.floor_mul(n)).collect()
    }

    /// Every `⌊n·value⌋ ≤ limit` with `n ≥ 1`, ascending.
    ///
    /// Stops as soon as the lower floor bound passes `limit`, so an
    /// undecidable floor strictly beyond the limit is not an error.
    pub fn beatty_up_to(&self, limit: u64) -> Result<Vec<u64>> {
        if !self.exceeds_int(1) {
            return Err(Error::BetaOutOfRange(format!(
                "{self} is not provably greater than 1"
            )));
        }
        let mut out = Vec::new();
        for n in 1.. {
            let (lo, hi) = self.floor_bounds(n)?;
            if lo > limit {
                break;
            }
            if lo != hi {
                self.floor_mul(n)?;
            }
            out.push(lo);
        }
        Ok(out)
    }

    /// Largest `p` for which [`refine`](Self::refine) succeeds; `None` when
    /// unbounded.
    pub fn available_bits(&self) -> Option<u64> {
        match self {
            IrrationalSpec::Surd(_) => None,
            IrrationalSpec::Digits(d) => Some(d.available_bits()),
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            IrrationalSpec::Surd(s) => {
                let e = s.refine(64);
                let scaled = (e.lo() * BigRational::from_integer(BigInt::one() << 60u32)).floor();
                scaled.to_integer().to_f64().unwrap_or(f64::NAN) / (1u64 << 60) as f64
            }
            IrrationalSpec::Digits(d) => d.approx_f64(),
        }
    }

    /// Inverse of [`parse_beta_spec`] for every spec the grammar can express.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for IrrationalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrationalSpec::Surd(s) => fmt::Display::fmt(s, f),
            IrrationalSpec::Digits(d) => fmt::Display::fmt(d.origin(), f),
        }
    }
}

impl FromStr for IrrationalSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_beta_spec(s)
    }
}

/// A complementary Beatty pair `(α, β)` with `α = β/(β−1)` and `β > 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeattyPair {
    beta: IrrationalSpec,
    alpha: IrrationalSpec,
}

impl BeattyPair {
    pub fn new(beta: IrrationalSpec) -> Result<Self> {
        let alpha = beta.derive_alpha()?;
        let pair = BeattyPair { beta, alpha };
        if !pair.alpha_in_unit_gap() || !pair.densities_sum_to_one() {
            return Err(Error::BetaOutOfRange(format!(
                "cannot certify 1 < α < 2 and 1/α + 1/β = 1 for {}",
                pair.beta
            )));
        }
        Ok(pair)
    }

    pub fn beta(&self) -> &IrrationalSpec {
        &self.beta
    }

    pub fn alpha(&self) -> &IrrationalSpec {
        &self.alpha
    }

    /// `⌊β⌋`, the diagonal width of the game.
    pub fn k(&self) -> u64 {
        self.beta
            .floor_mul(1)
            .expect("β > 2 is certified, so ⌊β⌋ is bracketed")
    }

    pub fn alpha_in_unit_gap(&self) -> bool {
        self.alpha.exceeds_int(1) && self.alpha.below(&BigRational::from_integer(2.into()))
    }

    /// Checks `1/α + 1/β = 1`: exactly for surds, by enclosure containment
    /// for digit constants.
    pub fn densities_sum_to_one(&self) -> bool {
        match (&self.alpha, &self.beta) {
            (IrrationalSpec::Surd(a), IrrationalSpec::Surd(b)) => {
                if a.d() != b.d() {
                    return false;
                }
                let (ra, ia) = a.recip().parts();
                let (rb, ib) = b.recip().parts();
                (ra + rb).is_one() && (ia + ib).is_zero()
            }
            (IrrationalSpec::Digits(a), IrrationalSpec::Digits(b)) => {
                match (a.enclosure().recip(), b.enclosure().recip()) {
                    (Some(ra), Some(rb)) => ra.add(&rb).contains(&BigRational::one()),
                    _ => false,
                }
            }
            _ => false,
        }
    }
}
