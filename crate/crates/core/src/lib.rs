//! Exact computations with Hasse-Witt and Dwork-type period matrices of
//! Laurent polynomials, and verification of their p-adic congruences.

pub mod ahyp;
pub mod builtins;
mod error;
pub mod exactnum;
pub mod hwdwork;
pub mod intmat;
pub mod laurent;
pub mod polytope;
pub mod ring;
pub mod seriesring;

pub use error::{Error, Result};

use exactnum::{PRational, ResidueInt};
use num_bigint::BigInt;

pub type IntPoly = laurent::LaurentPoly<BigInt>;
pub type RatPoly = laurent::LaurentPoly<PRational>;
pub type ModPoly = laurent::LaurentPoly<ResidueInt>;
pub type IntParamPoly = laurent::ParamPoly<BigInt>;
pub type RatParamPoly = laurent::ParamPoly<PRational>;
pub type ModParamPoly = laurent::ParamPoly<ResidueInt>;
pub type IntConeSeries = seriesring::ConeSeries<BigInt>;
pub type ModConeSeries = seriesring::ConeSeries<ResidueInt>;
