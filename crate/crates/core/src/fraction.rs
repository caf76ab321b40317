//! Exact rationals with a canonical `p/q` token.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::token::{Token, TokenError};

/// An exact rational number. Always stored in lowest terms with a positive
/// denominator, so structural equality is numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(BigRational);

impl Fraction {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Fraction(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Fraction(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }

    pub fn one() -> Self {
        Fraction(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fraction(self.0.abs())
    }

    pub fn midpoint(&self, other: &Fraction) -> Fraction {
        Fraction((&self.0 + &other.0) / BigInt::from(2))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Whether the denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.denom();
        (d & (d - BigInt::one())).is_zero()
    }
}

impl From<BigRational> for Fraction {
    fn from(r: BigRational) -> Self {
        Fraction(r)
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::integer(n)
    }
}

impl Add for &Fraction {
    type Output = Fraction;

    fn add(self, rhs: &Fraction) -> Fraction {
        Fraction(&self.0 + &rhs.0)
    }
}

impl Sub for &Fraction {
    type Output = Fraction;

    fn sub(self, rhs: &Fraction) -> Fraction {
        Fraction(&self.0 - &rhs.0)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Token for Fraction {
    fn token(&self) -> String {
        self.to_string()
    }

    /// Accepts only the canonical form: `p/q` with `q > 0` and
    /// `gcd(p, q) = 1`.
    fn from_token(text: &str) -> Result<Self, TokenError> {
        let err = |reason: &str| TokenError::new("fraction", text, reason);
        let (p, q) = text.split_once('/').ok_or_else(|| err("expected p/q"))?;
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        let unsigned_p = p.strip_prefix('-').unwrap_or(p);
        if !digits(unsigned_p) || !digits(q) {
            return Err(err("expected decimal integers"));
        }
        let numer: BigInt = p.parse().map_err(|_| err("bad numerator"))?;
        let denom: BigInt = q.parse().map_err(|_| err("bad denominator"))?;
        if !denom.is_positive() {
            return Err(err("denominator must be positive"));
        }
        if !numer.gcd(&denom).is_one() {
            return Err(err("not in lowest terms"));
        }
        let f = Fraction::new(numer, denom);
        if f.token() != text {
            return Err(err("not in canonical form"));
        }
        Ok(f)
    }
}
