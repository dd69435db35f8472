//! Exact non-negative rational arithmetic on `u64` components.
//!
//! Weights, solution values, quality factors and accuracy parameters are all
//! represented by [`Rational`].  Values are kept in lowest terms, every
//! operation is exact, and results that do not fit after reduction are
//! reported as [`Error::Overflow`] — never wrapped silently.
//!
//! ```
//! use setcover_reopt::Rational;
//!
//! let half: Rational = "1/2".parse().unwrap();
//! let three_halves: Rational = "3/2".parse().unwrap();
//! assert_eq!(half.add(&three_halves).unwrap(), Rational::from_int(2));
//! assert_eq!(half.to_string(), "1/2");
//! ```

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Rational> {
        if den == 0 {
            return Err(Error::InvalidRational(format!("{num}/0")));
        }
        let g = gcd(num as u128, den as u128) as u64;
        Ok(Rational {
            num: num / g.max(1),
            den: den / g.max(1),
        })
    }

    pub fn from_int(n: u64) -> Rational {
        Rational { num: n, den: 1 }
    }

    /// Reduce a `u128` fraction and check that it fits into `u64` components.
    pub(crate) fn from_u128(num: u128, den: u128) -> Result<Rational> {
        if den == 0 {
            return Err(Error::InvalidRational("denominator zero".into()));
        }
        // den > 0, so the gcd is positive
        let g = gcd(num, den);
        let (n, d) = (num / g, den / g);
        if n > u64::MAX as u128 || d > u64::MAX as u128 {
            return Err(Error::Overflow(format!("{n}/{d} exceeds 64-bit components")));
        }
        Ok(Rational {
            num: n as u64,
            den: d as u64,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn add(&self, other: &Rational) -> Result<Rational> {
        let n = (self.num as u128)
            .checked_mul(other.den as u128)
            .and_then(|a| a.checked_add((other.num as u128) * (self.den as u128)))
            .ok_or_else(|| Error::Overflow("addition".into()))?;
        Rational::from_u128(n, (self.den as u128) * (other.den as u128))
    }

    /// Exact subtraction; the domain is non-negative, so `self < other` is an
    /// error rather than a wraparound.
    pub fn sub(&self, other: &Rational) -> Result<Rational> {
        if self < other {
            return Err(Error::Overflow("subtraction below zero".into()));
        }
        let n = (self.num as u128) * (other.den as u128) - (other.num as u128) * (self.den as u128);
        Rational::from_u128(n, (self.den as u128) * (other.den as u128))
    }

    pub fn mul(&self, other: &Rational) -> Result<Rational> {
        let n = (self.num as u128)
            .checked_mul(other.num as u128)
            .ok_or_else(|| Error::Overflow("multiplication".into()))?;
        Rational::from_u128(n, (self.den as u128) * (other.den as u128))
    }

    pub fn div(&self, other: &Rational) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::InvalidRational("division by zero".into()));
        }
        Rational::from_u128(
            (self.num as u128) * (other.den as u128),
            (self.den as u128) * (other.num as u128),
        )
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::InvalidRational("reciprocal of zero".into()));
        }
        Ok(Rational {
            num: self.den,
            den: self.num,
        })
    }

    pub fn ceil(&self) -> u64 {
        self.num.div_euclid(self.den) + u64::from(!self.num.is_multiple_of(self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = (self.num as u128) * (other.den as u128);
        let rhs = (other.num as u128) * (self.den as u128);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::InvalidRational(s.to_string());
        match s.split_once('/') {
            None => {
                let n: u64 = s.parse().map_err(|_| bad())?;
                Ok(Rational::from_int(n))
            }
            Some((n, d)) => {
                let n: u64 = n.parse().map_err(|_| bad())?;
                let d: u64 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Rational::new(n, d)
            }
        }
    }
}
