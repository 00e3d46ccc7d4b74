use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::is_prime;
use crate::error::{Error, Result};
use crate::ring::{LocalRing, Ring};

/// Default bound on the prime accepted by [`Modulus::new`].
pub const DEFAULT_MAX_PRIME: u64 = 97;
/// Default bound on the precision exponent accepted by [`Modulus::new`].
pub const DEFAULT_MAX_PRECISION: u32 = 12;

/// The modulus `p^s` of a residue ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModulusRepr", into = "ModulusRepr")]
pub struct Modulus {
    p: u64,
    s: u32,
    pk: u128,
}

#[derive(Serialize, Deserialize)]
struct ModulusRepr {
    p: u64,
    s: u32,
}

impl TryFrom<ModulusRepr> for Modulus {
    type Error = Error;
    fn try_from(r: ModulusRepr) -> Result<Self> {
        Modulus::new(r.p, r.s)
    }
}

impl From<Modulus> for ModulusRepr {
    fn from(m: Modulus) -> Self {
        ModulusRepr { p: m.p, s: m.s }
    }
}

impl Modulus {
    /// `p^s` with the default limits `p <= 97`, `1 <= s <= 12`.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        Self::with_limits(p, s, DEFAULT_MAX_PRIME, DEFAULT_MAX_PRECISION)
    }

    pub fn with_limits(p: u64, s: u32, max_p: u64, max_s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > max_p {
            return Err(Error::UnsupportedPrime(format!("{p} exceeds the limit {max_p}")));
        }
        if s == 0 || s > max_s {
            return Err(Error::Precision(format!("s = {s} outside 1..={max_s}")));
        }
        let mut pk: u128 = 1;
        for _ in 0..s {
            pk = pk
                .checked_mul(p as u128)
                .filter(|v| *v < (1u128 << 126))
                .ok_or_else(|| Error::Precision(format!("{p}^{s} is too large")))?;
        }
        Ok(Modulus { p, s, pk })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The integer `p^s`.
    pub fn value(&self) -> u128 {
        self.pk
    }

    /// Same prime, different precision (no limit check beyond `s >= 1`).
    pub fn with_precision(&self, s: u32) -> Result<Self> {
        Self::with_limits(self.p, s, u64::MAX, u32::MAX)
    }

    fn reduce_bigint(&self, n: &BigInt) -> u128 {
        let m = BigInt::from(self.pk);
        n.mod_floor(&m).to_u128().expect("residue fits")
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        if self.pk <= u32::MAX as u128 {
            ((a as u64 * b as u64) % self.pk as u64) as u128
        } else if self.pk <= u64::MAX as u128 {
            (a * b) % self.pk
        } else {
            let prod = BigUint::from(a) * BigUint::from(b);
            (prod % BigUint::from(self.pk)).to_u128().expect("residue fits")
        }
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.s)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.s)
    }
}

/// Element of `Z/p^s`, stored canonically in `[0, p^s)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueInt {
    modulus: Modulus,
    value: u128,
}

impl ResidueInt {
    pub fn new(modulus: Modulus, n: &BigInt) -> Self {
        ResidueInt {
            modulus,
            value: modulus.reduce_bigint(n),
        }
    }

    pub fn from_i64(modulus: Modulus, n: i64) -> Self {
        let pk = modulus.pk as i128;
        let v = (n as i128).rem_euclid(pk);
        ResidueInt {
            modulus,
            value: v as u128,
        }
    }

    pub fn from_u128(modulus: Modulus, n: u128) -> Self {
        ResidueInt {
            modulus,
            value: n % modulus.pk,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Canonical representative in `[0, p^s)`.
    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.value)
    }

    /// Representative in `(-p^s/2, p^s/2]`.
    pub fn signed_value(&self) -> BigInt {
        if self.value > self.modulus.pk / 2 {
            BigInt::from(self.value) - BigInt::from(self.modulus.pk)
        } else {
            BigInt::from(self.value)
        }
    }

    /// Ring homomorphism `Z/p^s -> Z/p^t` for `t <= s`.
    pub fn reduce(&self, s: u32) -> Result<Self> {
        if s > self.modulus.s {
            return Err(Error::Precision(format!(
                "cannot raise precision from {} to {s}",
                self.modulus.s
            )));
        }
        let m = self.modulus.with_precision(s)?;
        Ok(ResidueInt {
            modulus: m,
            value: self.value % m.pk,
        })
    }

    /// Reduce into another modulus with the same prime and lower or equal precision.
    pub fn reduce_to(&self, target: Modulus) -> Result<Self> {
        if target.p != self.modulus.p {
            return Err(Error::Invalid(format!("prime mismatch {} vs {}", self.modulus, target)));
        }
        self.reduce(target.s).map(|r| ResidueInt { modulus: target, ..r })
    }

    /// p-adic valuation of the representative, capped at `s`.
    pub fn valuation(&self) -> u32 {
        if self.value == 0 {
            return self.modulus.s;
        }
        let mut v = self.value;
        let mut e = 0;
        while v.is_multiple_of(self.modulus.p as u128) {
            v /= self.modulus.p as u128;
            e += 1;
        }
        e
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus, "residue modulus mismatch");
    }
}

impl fmt::Debug for ResidueInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for ResidueInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for ResidueInt {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        self.modulus
    }

    fn zero_in(ctx: &Modulus) -> Self {
        ResidueInt {
            modulus: *ctx,
            value: 0,
        }
    }

    fn one_in(ctx: &Modulus) -> Self {
        ResidueInt {
            modulus: *ctx,
            value: 1 % ctx.pk,
        }
    }

    fn from_bigint(ctx: &Modulus, n: &BigInt) -> Self {
        ResidueInt::new(*ctx, n)
    }

    fn from_i64(ctx: &Modulus, n: i64) -> Self {
        ResidueInt::from_i64(*ctx, n)
    }

    fn vanishes(&self) -> bool {
        self.value == 0
    }

    fn is_unity(&self) -> bool {
        self.value == 1
    }

    #[inline]
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut v = self.value + rhs.value;
        if v >= self.modulus.pk {
            v -= self.modulus.pk;
        }
        ResidueInt {
            modulus: self.modulus,
            value: v,
        }
    }

    #[inline]
    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus.pk - rhs.value
        };
        ResidueInt {
            modulus: self.modulus,
            value: v,
        }
    }

    #[inline]
    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        ResidueInt {
            modulus: self.modulus,
            value: self.modulus.mul(self.value, rhs.value),
        }
    }

    fn negate(&self) -> Self {
        let v = if self.value == 0 {
            0
        } else {
            self.modulus.pk - self.value
        };
        ResidueInt {
            modulus: self.modulus,
            value: v,
        }
    }

    fn accumulate(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn scale_int(&self, n: &BigInt) -> Self {
        self.times(&ResidueInt::new(self.modulus, n))
    }
}

impl LocalRing for ResidueInt {
    fn inverse(&self) -> Option<Self> {
        if self.value.is_multiple_of(self.modulus.p as u128) {
            return None;
        }
        let m = BigInt::from(self.modulus.pk);
        let a = BigInt::from(self.value);
        let e = a.extended_gcd(&m);
        debug_assert!(num_traits::One::is_one(&e.gcd));
        Some(ResidueInt::new(self.modulus, &e.x))
    }

    fn residue(&self) -> String {
        (self.value % self.modulus.p as u128).to_string()
    }
}

/// Modular inverse of an integer, if it is prime to `p`.
pub fn inverse_mod(n: &BigInt, modulus: Modulus) -> Option<ResidueInt> {
    if n.sign() == Sign::NoSign || (n % BigInt::from(modulus.p)).is_zero() {
        return None;
    }
    ResidueInt::new(modulus, n).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, s: u32) -> Modulus {
        Modulus::new(p, s).unwrap()
    }

    #[test]
    fn canonical_range() {
        let r = ResidueInt::from_i64(m(5, 2), -1);
        assert_eq!(r.value(), 24);
        assert_eq!(r.signed_value(), BigInt::from(-1));
    }

    #[test]
    fn modulus_limits() {
        assert!(Modulus::new(101, 1).is_err());
        assert!(Modulus::new(9, 1).is_err());
        assert!(Modulus::new(3, 0).is_err());
        assert!(Modulus::new(97, 12).is_ok());
        assert!(Modulus::new(2, 5).is_ok());
    }

    #[test]
    fn big_modulus_multiplication() {
        let md = m(97, 12);
        let a = ResidueInt::from_i64(md, -3);
        let b = ResidueInt::from_i64(md, -5);
        assert_eq!(a.times(&b), ResidueInt::from_i64(md, 15));
        let inv = a.inverse().unwrap();
        assert!(inv.times(&a).is_unity());
    }

    #[test]
    fn non_unit_has_no_inverse() {
        assert!(ResidueInt::from_i64(m(3, 2), 6).inverse().is_none());
        assert_eq!(ResidueInt::from_i64(m(3, 3), 18).valuation(), 2);
    }

    #[test]
    fn reduction_rejects_raising() {
        let r = ResidueInt::from_i64(m(3, 2), 7);
        assert_eq!(r.reduce(1).unwrap().value(), 1);
        assert!(r.reduce(3).is_err());
    }
}
