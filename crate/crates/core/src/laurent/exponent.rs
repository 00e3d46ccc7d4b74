use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_ARITY: usize = 6;

/// Integer exponent vector (also used for kernel-lattice keys). Ordered
/// lexicographically; vectors of different arity never compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVec {
    len: u8,
    e: [i32; MAX_ARITY],
}

impl ExponentVec {
    pub fn new(entries: &[i64]) -> Result<Self> {
        if entries.len() > MAX_ARITY {
            return Err(Error::Dimension(entries.len(), MAX_ARITY));
        }
        let mut e = [0i32; MAX_ARITY];
        for (slot, &x) in e.iter_mut().zip(entries) {
            *slot = i32::try_from(x).map_err(|_| Error::Invalid(format!("exponent {x} too large")))?;
        }
        Ok(ExponentVec {
            len: entries.len() as u8,
            e,
        })
    }

    /// Panicking constructor for literals in code and tests.
    pub fn of(entries: &[i64]) -> Self {
        Self::new(entries).expect("valid exponent vector")
    }

    pub fn zeros(arity: usize) -> Self {
        assert!(arity <= MAX_ARITY);
        ExponentVec {
            len: arity as u8,
            e: [0; MAX_ARITY],
        }
    }

    pub fn unit(arity: usize, i: usize) -> Self {
        let mut v = Self::zeros(arity);
        v.e[i] = 1;
        v
    }

    pub fn arity(&self) -> usize {
        self.len as usize
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.e[..self.len as usize]
    }

    pub fn get(&self, i: usize) -> i64 {
        self.as_slice()[i] as i64
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.as_slice().iter().map(|&x| x as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.as_slice().iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut v = *self;
        for x in v.e.iter_mut() {
            *x = (*x as i64 * k) as i32;
        }
        v
    }

    pub fn with(&self, i: usize, value: i64) -> Self {
        let mut v = *self;
        v.e[i] = value as i32;
        v
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.as_slice().iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
    }

    /// Sum of the positive entries.
    pub fn positive_part(&self) -> i64 {
        self.as_slice().iter().filter(|&&x| x > 0).map(|&x| x as i64).sum()
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(i32, i32) -> i32) -> Self {
        assert_eq!(self.len, rhs.len, "exponent arity mismatch");
        let mut v = *self;
        for (x, &y) in v.e.iter_mut().zip(rhs.e.iter()) {
            *x = f(*x, y);
        }
        v
    }
}

impl Add for ExponentVec {
    type Output = ExponentVec;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for ExponentVec {
    type Output = ExponentVec;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl Neg for ExponentVec {
    type Output = ExponentVec;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Debug for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ExponentVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        ExponentVec::new(&v).map_err(serde::de::Error::custom)
    }
}
