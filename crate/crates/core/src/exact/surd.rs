//! Quadratic surds `(a + b*sqrt(d)) / c` with exact floors.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enclosure::Enclosure;
use crate::error::{Error, Result};

/// `(a + b*sqrt(d)) / c` in canonical form: `gcd(a, b, c) = 1`, `c > 0`,
/// `b != 0` and `d` a positive non-square.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    small: Option<SmallSurd>,
}

/// Machine-word copy of the coefficients for the floor fast path.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct SmallSurd {
    a: i64,
    b: i64,
    c: i64,
    d: u64,
}

impl Surd {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (mut a, mut b, mut c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::parse(0, "zero denominator"));
        }
        if b.is_zero() {
            return Err(Error::NotIrrational("coefficient of sqrt is zero".into()));
        }
        if !d.is_positive() {
            return Err(Error::NotIrrational(format!(
                "radicand {d} is not positive"
            )));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(Error::NotIrrational(format!("{d} is a perfect square")));
        }
        let g = a.gcd(&b).gcd(&c);
        a /= &g;
        b /= &g;
        c /= &g;
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let small = match (a.to_i64(), b.to_i64(), c.to_i64(), d.to_u64()) {
            (Some(a), Some(b), Some(c), Some(d)) => Some(SmallSurd { a, b, c, d }),
            _ => None,
        };
        Ok(Surd { a, b, c, d, small })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `floor(n * b * sqrt(d))`, exact.
    fn floor_sqrt_part(&self, n: &BigInt) -> BigInt {
        let scaled = n * &self.b;
        let m = (&scaled * &scaled * &self.d).sqrt();
        match scaled.sign() {
            Sign::Minus => -m - 1,
            Sign::Plus => m,
            Sign::NoSign => BigInt::zero(),
        }
    }

    /// `floor(n * value)`.
    pub fn floor_mul_big(&self, n: &BigInt) -> BigInt {
        // floor((N + f) / c) = floor(N / c) for integer N, c > 0 and 0 <= f < 1.
        let whole = n * &self.a + self.floor_sqrt_part(n);
        whole.div_floor(&self.c)
    }

    pub fn floor_mul(&self, n: u64) -> Option<i128> {
        if let Some(s) = self.small {
            if let Some(v) = s.floor_mul(n) {
                return Some(v);
            }
        }
        self.floor_mul_big(&BigInt::from(n)).to_i128()
    }

    /// Enclosure of width `<= 2^-bits` from one integer square root.
    pub fn refine(&self, bits: u64) -> Enclosure {
        let scale = BigInt::one() << bits;
        let radicand = &self.b * &self.b * &self.d * &scale * &scale;
        let r = radicand.sqrt();
        let base = &self.a * &scale;
        let (lo, hi) = if self.b.is_positive() {
            (&base + &r, &base + &r + 1)
        } else {
            (&base - &r - 1, &base - &r)
        };
        let den = &self.c * &scale;
        Enclosure::new(BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }

    /// Exact comparison of the surd against a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        // (a + b sqrt d)/c  vs  p/r   <=>   r b sqrt d  vs  p c - r a
        let (p, r) = (q.numer(), q.denom());
        let u = r * &self.b;
        let m = p * &self.c - r * &self.a;
        let lhs_sq = &u * &u * &self.d;
        let rhs_sq = &m * &m;
        if u.is_positive() {
            if m.is_negative() {
                Ordering::Greater
            } else {
                lhs_sq.cmp(&rhs_sq)
            }
        } else if !m.is_negative() {
            Ordering::Less
        } else {
            rhs_sq.cmp(&lhs_sq)
        }
    }

    /// `c / (a + b sqrt d)` rationalised.
    pub fn recip(&self) -> Surd {
        let den = &self.a * &self.a - &self.b * &self.b * &self.d;
        Surd::new(&self.c * &self.a, -(&self.c * &self.b), den, self.d.clone())
            .expect("reciprocal of an irrational surd is an irrational surd")
    }

    /// `value / (value - 1)` rationalised.
    pub fn complement(&self) -> Surd {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let shifted = a - c;
        let num_a = a * &shifted - b * b * d;
        let num_b = -(b * c);
        let den = &shifted * &shifted - b * b * d;
        Surd::new(num_a, num_b, den, d.clone())
            .expect("complement of an irrational surd is an irrational surd")
    }

    /// Rational and irrational parts `(a/c, b/c)` of the value.
    pub fn parts(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.a.clone(), self.c.clone()),
            BigRational::new(self.b.clone(), self.c.clone()),
        )
    }
}

impl SmallSurd {
    fn floor_mul(self, n: u64) -> Option<i128> {
        let scaled = (n as i128).checked_mul(self.b as i128)?;
        let sq = (scaled.unsigned_abs()).checked_mul(scaled.unsigned_abs())?;
        let rad = sq.checked_mul(self.d as u128)?;
        let m = rad.sqrt() as i128;
        let sqrt_part = if scaled < 0 { -m - 1 } else { m };
        let whole = (n as i128)
            .checked_mul(self.a as i128)?
            .checked_add(sqrt_part)?;
        Some(whole.div_euclid(self.c as i128))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "surd:({}{}{}*sqrt({}))/{}",
            self.a,
            sign,
            self.b.abs(),
            self.d,
            self.c
        )
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
