//! Truncated power-series rings and square matrices over them.
//!
//! [`TruncSeries`] is `Z/p^s[[t]]` modulo `t^T`. [`ConeSeries`] holds
//! series in `v_1..v_N` supported on a pointed lattice cone, truncated by
//! an additive positive grading so that products, inverses, Frobenius and
//! derivations are exact on the whole window.

mod cone;
mod matrix;
mod trunc;

pub use cone::{ConeCtx, ConeSeries, ConeShape};
pub use matrix::{IndexLabel, PeriodMatrix};
pub use trunc::{SeriesCtx, TruncSeries};

use crate::error::{Error, Result};
use crate::exactnum::ResidueInt;
use crate::ring::{LocalRing, Ring};

/// Series rings with a Frobenius lift and logarithmic derivations.
pub trait SeriesRing: LocalRing {
    /// Substitute `x -> x^p` in every series variable.
    fn frobenius(&self, p: u64) -> Self;
    /// `x_i d/dx_i`.
    fn derive(&self, var: usize) -> Self;
}

impl SeriesRing for TruncSeries {
    fn frobenius(&self, p: u64) -> Self {
        self.frobenius_by(p)
    }

    fn derive(&self, var: usize) -> Self {
        assert_eq!(var, 0, "single-variable series");
        TruncSeries::derive(self)
    }
}

impl<C: LocalRing> SeriesRing for ConeSeries<C> {
    fn frobenius(&self, p: u64) -> Self {
        ConeSeries::frobenius(self, p)
    }

    fn derive(&self, var: usize) -> Self {
        ConeSeries::derive(self, var)
    }
}

/// Evaluation at a point: Frobenius is the identity (fixed lift) and
/// derivations vanish.
impl SeriesRing for ResidueInt {
    fn frobenius(&self, _p: u64) -> Self {
        *self
    }

    fn derive(&self, _var: usize) -> Self {
        ResidueInt::zero_in(&self.modulus())
    }
}

pub fn sr_inverse<S: LocalRing>(f: &S) -> Result<S> {
    f.inverse()
        .ok_or_else(|| Error::NotUnit(format!("constant term {} mod p", f.residue())))
}

pub fn sr_mat_inverse<S: LocalRing>(m: &PeriodMatrix<S>) -> Result<PeriodMatrix<S>> {
    m.inverse()
}

pub fn sr_frobenius<S: SeriesRing>(f: &S, p: u64) -> S {
    f.frobenius(p)
}

pub fn sr_derive<S: SeriesRing>(f: &S, var: usize) -> S {
    f.derive(var)
}

pub fn mat_frobenius<S: SeriesRing>(m: &PeriodMatrix<S>, p: u64) -> PeriodMatrix<S> {
    m.map(|x| x.frobenius(p))
}

pub fn mat_derive<S: SeriesRing>(m: &PeriodMatrix<S>, var: usize) -> PeriodMatrix<S> {
    m.map(|x| x.derive(var))
}

/// `a * sigma(b)^{-1}`.
pub fn frobenius_quotient<S: SeriesRing>(a: &PeriodMatrix<S>, b: &PeriodMatrix<S>, p: u64) -> Result<PeriodMatrix<S>> {
    Ok(a.mul(&mat_frobenius(b, p).inverse()?))
}

/// `delta(a) * a^{-1}`.
pub fn log_derivative<S: SeriesRing>(a: &PeriodMatrix<S>, var: usize) -> Result<PeriodMatrix<S>> {
    Ok(mat_derive(a, var).mul(&a.inverse()?))
}
