use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// A rational interval `[lo, hi]` known to contain an irrational value
/// strictly in its interior.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    /// Panics unless `lo < hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo < hi, "enclosure requires lo < hi");
        Enclosure { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// True when `width <= 2^-bits`.
    pub fn width_at_most_pow2(&self, bits: u64) -> bool {
        let scaled = self.width() * BigRational::from_integer(BigInt::one() << bits);
        scaled <= BigRational::one()
    }

    /// Largest `p` with `width <= 2^-p` (zero when the width exceeds one).
    pub fn precision_bits(&self) -> u64 {
        let w = self.width();
        if w >= BigRational::one() {
            return 0;
        }
        // 1/w >= 2^p  <=>  floor(1/w) >= 2^p
        let inv = (BigRational::one() / w).floor().to_integer();
        inv.bits() - 1
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// True when `other` lies inside `self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `[1/hi, 1/lo]`; `None` unless the interval is strictly positive.
    pub fn recip(&self) -> Option<Enclosure> {
        if !self.lo.is_positive() {
            return None;
        }
        Some(Enclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub_rational(&self, q: &BigRational) -> Enclosure {
        Enclosure {
            lo: &self.lo - q,
            hi: &self.hi - q,
        }
    }

    /// Floors of `n * lo` and `n * hi`.
    pub fn floor_bounds(&self, n: &BigInt) -> (BigInt, BigInt) {
        let scale = |q: &BigRational| (q.numer() * n).div_floor(q.denom());
        (scale(&self.lo), scale(&self.hi))
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", decimal(&self.lo, 20), decimal(&self.hi, 20))
    }
}

/// Truncated decimal rendering of a rational, for diagnostics.
pub fn decimal(q: &BigRational, digits: usize) -> String {
    let neg = q.is_negative();
    let q = q.abs();
    let int = q.floor().to_integer();
    let mut frac = q - BigRational::from_integer(int.clone());
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if digits > 0 {
        out.push('.');
        let ten = BigRational::from_integer(BigInt::from(10));
        for _ in 0..digits {
            frac *= &ten;
            let d = frac.floor().to_integer();
            out.push_str(&d.to_string());
            frac -= BigRational::from_integer(d);
        }
    }
    out
}
