use crate::error::{Error, Result};
use crate::exactnum::{embed_rational, is_prime, Modulus, PRational, ResidueInt};
use crate::laurent::{ExponentVec, LaurentPoly, ParamPoly, PolyCtx};
use crate::ring::Ring;
use crate::seriesring::{SeriesCtx, TruncSeries};

use super::matrices::hw_ct_sequence;

/// Reduce a p-integral rational polynomial modulo `p^s`.
pub fn embed_poly(g: &LaurentPoly<PRational>, modulus: Modulus) -> Result<LaurentPoly<ResidueInt>> {
    g.try_map_coeffs(&modulus, |c| embed_rational(c, modulus))
}

/// Parametrised polynomial with coefficients reduced modulo `p^s`.
pub fn embed_param_poly(f: &ParamPoly<PRational>, modulus: Modulus) -> Result<ParamPoly<ResidueInt>> {
    let inner = PolyCtx::new(f.poly_ctx().inner().arity(), modulus);
    f.try_map_coeffs(&inner, |c| embed_poly(c, modulus))
}

/// Core polynomial of a parametrised one whose coefficients are constants.
pub fn constant_coeffs(f: &ParamPoly<PRational>) -> Result<LaurentPoly<PRational>> {
    f.try_map_coeffs(&(), |c| {
        if c.terms().all(|(e, _)| e.is_zero()) {
            Ok(c.constant_term())
        } else {
            Err(Error::Invalid(
                "expected constant coefficients, found a parameter".into(),
            ))
        }
    })
}

/// Coefficients as power series in the single parameter.
pub fn series_coeffs(f: &ParamPoly<PRational>, ctx: SeriesCtx) -> Result<LaurentPoly<TruncSeries>> {
    let n = f.poly_ctx().inner().arity();
    if n > 1 {
        return Err(Error::Invalid(format!("expected at most one parameter, found {n}")));
    }
    f.try_map_coeffs(&ctx, |c| {
        if n == 0 {
            let k =
                TruncSeries::from_rational_poly(ctx, &LaurentPoly::constant(&PolyCtx::new(1, ()), c.constant_term()))?;
            return Ok(k);
        }
        TruncSeries::from_rational_poly(ctx, c)
    })
}

/// Substitute residues for the parameters.
pub fn specialize(f: &ParamPoly<PRational>, point: &[ResidueInt]) -> Result<LaurentPoly<ResidueInt>> {
    let n = f.poly_ctx().inner().arity();
    if point.len() != n {
        return Err(Error::ArityMismatch(point.len(), n));
    }
    let modulus = point
        .first()
        .map(|x| x.modulus())
        .ok_or_else(|| Error::Invalid("no parameters to specialise".into()))?;
    let g = embed_param_poly(f, modulus)?;
    g.specialize_params(point, &modulus)
        .ok_or_else(|| Error::NotUnit("negative power of a parameter at a non-unit point".into()))
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// The origin must be the only interior lattice point of the Newton polytope.
pub fn check_origin_hypothesis<C: Ring>(g: &LaurentPoly<C>) -> Result<()> {
    let delta = g.newton_polytope()?;
    let interior = delta.interior_lattice_points();
    if interior != [ExponentVec::zeros(g.arity())] {
        let pts: Vec<String> = interior.iter().map(|u| u.to_string()).collect();
        return Err(Error::Hypothesis(format!(
            "0 must be the only interior lattice point of the Newton polytope; interior points: [{}]",
            pts.join(", ")
        )));
    }
    Ok(())
}

/// Constant terms `b_0..b_{K}` modulo `p^s`, after checking the hypotheses.
pub fn ct_residues(g: &LaurentPoly<PRational>, modulus: Modulus, k_max: usize) -> Result<Vec<ResidueInt>> {
    check_origin_hypothesis(g)?;
    let gm = embed_poly(g, modulus)?;
    Ok(hw_ct_sequence(&gm, k_max))
}

/// `q(t) = sum_{k<T} b_k t^k` modulo `p^s`.
pub fn hw_q_series(g: &LaurentPoly<PRational>, p: u64, s: u32, order: usize) -> Result<TruncSeries> {
    check_prime(p)?;
    let ctx = SeriesCtx::new(Modulus::new(p, s)?, order)?;
    let b = ct_residues(g, ctx.modulus(), order - 1)?;
    Ok(TruncSeries::new(ctx, b))
}

/// `gamma_m(t) = sum_{k<m} b_k t^k` as a series of order `T`.
pub fn truncation(b: &[ResidueInt], m: u64, ctx: SeriesCtx) -> TruncSeries {
    let keep = (m as usize).min(ctx.order()).min(b.len());
    TruncSeries::new(
        ctx,
        b[..keep]
            .iter()
            .map(|c| c.reduce_to(ctx.modulus()).expect("lower precision"))
            .collect(),
    )
}
