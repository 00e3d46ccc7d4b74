use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{LocalRing, Ring};

/// Reduced rational number with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PRational(BigRational);

impl PRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(PRational(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: BigInt) -> Self {
        PRational(BigRational::from_integer(n))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::new(BigInt::from(n), BigInt::from(d)).expect("nonzero denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| PRational(self.0.recip()))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl From<BigRational> for PRational {
    fn from(r: BigRational) -> Self {
        PRational(r)
    }
}

impl FromStr for PRational {
    type Err = Error;

    /// Accepts `"12"`, `"-3"` and `"1/4"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                PRational::new(n, d)
            }
            None => Ok(PRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl fmt::Debug for PRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Ring for PRational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: &()) -> Self {
        PRational(BigRational::zero())
    }
    fn one_in(_: &()) -> Self {
        PRational(BigRational::one())
    }
    fn from_bigint(_: &(), n: &BigInt) -> Self {
        PRational::from_integer(n.clone())
    }
    fn vanishes(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        PRational(&self.0 + &rhs.0)
    }
    fn minus(&self, rhs: &Self) -> Self {
        PRational(&self.0 - &rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        PRational(&self.0 * &rhs.0)
    }
    fn negate(&self) -> Self {
        PRational(-&self.0)
    }
}

impl LocalRing for PRational {
    fn inverse(&self) -> Option<Self> {
        self.recip()
    }

    fn residue(&self) -> String {
        self.to_string()
    }
}
