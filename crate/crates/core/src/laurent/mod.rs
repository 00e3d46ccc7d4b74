//! Sparse multivariate Laurent polynomials over a pluggable coefficient ring.
//!
//! Parameters (`t`, `z`, `v_1..v_N`) live in the coefficient ring as nested
//! Laurent polynomials, so a constant term in the core variables is a
//! single coefficient lookup.

mod exponent;
pub mod json;
mod poly;

pub use exponent::{ExponentVec, MAX_ARITY};
pub use json::{ParamPoly, PolyJson};
pub use poly::{LaurentPoly, PolyCtx};

use crate::error::Result;
use crate::polytope::LatticePolytope;
use crate::ring::Ring;

/// Product of two Laurent polynomials.
pub fn lp_mul<C: Ring>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
    a.try_mul(b)
}

/// `f^e`; over a residue ring every intermediate product is reduced.
pub fn lp_pow<C: Ring>(f: &LaurentPoly<C>, e: u64) -> LaurentPoly<C> {
    f.pow(e)
}

/// Coefficient of `x^e` in `f`.
pub fn lp_coeff<C: Ring>(f: &LaurentPoly<C>, e: &ExponentVec) -> Result<C> {
    if e.arity() != f.arity() {
        return Err(crate::error::Error::ArityMismatch(e.arity(), f.arity()));
    }
    Ok(f.coeff(e))
}

pub fn lp_support<C: Ring>(f: &LaurentPoly<C>) -> Vec<ExponentVec> {
    f.support()
}

pub fn lp_newton_polytope<C: Ring>(f: &LaurentPoly<C>) -> Result<LatticePolytope> {
    f.newton_polytope()
}
