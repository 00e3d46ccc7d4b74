//! Coefficient rings.
//!
//! Every container in the crate (Laurent polynomials, truncated series,
//! period matrices) is generic over a [`Ring`]. Unlike `num_traits::Zero`,
//! constants are built from an explicit context so that residue rings can
//! carry their modulus at runtime and nested polynomial rings their arity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact commutative ring with unit.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Runtime data needed to build constants (modulus, arity, ...).
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn vanishes(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    fn is_unity(&self) -> bool {
        *self == Self::one_in(&self.ctx())
    }

    fn accumulate(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn scale_int(&self, n: &BigInt) -> Self {
        self.times(&Self::from_bigint(&self.ctx(), n))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_in(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Ring with a distinguished maximal ideal: units are exactly the elements
/// that are invertible modulo it.
pub trait LocalRing: Ring {
    fn inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Short description of the image in the residue field, for diagnostics.
    fn residue(&self) -> String;
}

impl Ring for BigInt {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: &()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn one_in(_: &()) -> Self {
        <BigInt as One>::one()
    }
    fn from_bigint(_: &(), n: &BigInt) -> Self {
        n.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn accumulate(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl LocalRing for BigInt {
    // Z is not local; only +-1 are treated as units, which is all the
    // series code needs (constant terms equal to the identity).
    fn inverse(&self) -> Option<Self> {
        if One::is_one(&self.abs()) {
            Some(self.clone())
        } else {
            None
        }
    }

    fn residue(&self) -> String {
        self.to_string()
    }
}
