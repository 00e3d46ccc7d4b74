use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::binomial;
use crate::laurent::{ExponentVec, LaurentPoly};
use crate::polytope::{LatticePolytope, OpenSubset};
use crate::ring::Ring;
use crate::seriesring::{IndexLabel, PeriodMatrix};

/// Choice of the values `phi_v` in the gamma-matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum Phi<C> {
    /// `phi_v = 1` (the `f = 1 - t g` normalisation).
    Ones,
    /// `phi_v` = coefficient of `x^v` in `f`.
    Coefficients,
    /// One value per point of `mu_Z`, in its order.
    Explicit(Vec<C>),
}

impl<C: Ring> Phi<C> {
    fn values(&self, f: &LaurentPoly<C>, cols: &[ExponentVec]) -> Result<Vec<C>> {
        let inner = f.poly_ctx().inner();
        match self {
            Phi::Ones => Ok(vec![C::one_in(inner); cols.len()]),
            Phi::Coefficients => Ok(cols.iter().map(|v| f.coeff(v)).collect()),
            Phi::Explicit(vals) if vals.len() == cols.len() => Ok(vals.clone()),
            Phi::Explicit(vals) => Err(Error::Invalid(format!(
                "phi has {} values for {} indices",
                vals.len(),
                cols.len()
            ))),
        }
    }
}

fn check_mu<C: Ring>(f: &LaurentPoly<C>, mu: &OpenSubset) -> Result<()> {
    let delta = f.newton_polytope()?;
    if delta.vertices() != mu.parent().vertices() {
        return Err(Error::Invalid(
            "mu is not an open subset of the Newton polytope of f".into(),
        ));
    }
    Ok(())
}

fn point_labels(points: &[ExponentVec]) -> Vec<IndexLabel> {
    points.iter().map(|u| IndexLabel::Point(*u)).collect()
}

/// `beta_k(u, v)` = coefficient of `x^{k v - u}` in `f^{k-1}`, for all
/// `k = 1..=m`, computed from successive powers of `f`.
fn beta_tables<C: Ring>(f: &LaurentPoly<C>, rows: &[ExponentVec], cols: &[ExponentVec], m: u64) -> Vec<Vec<Vec<C>>> {
    let mut power = LaurentPoly::one(f.poly_ctx());
    let mut out = Vec::with_capacity(m as usize);
    for k in 1..=m as i64 {
        if k > 1 {
            power = power.times(f);
        }
        out.push(
            rows.iter()
                .map(|u| cols.iter().map(|v| power.coeff(&(v.scale(k) - *u))).collect())
                .collect(),
        );
    }
    out
}

/// Entries `sum_{k=1}^m (-1)^{k+1} C(m,k) phi_v^{m-k} beta_k(u,v)` for
/// arbitrary row and column exponents.
pub fn gamma_entries<C: Ring>(
    f: &LaurentPoly<C>,
    rows: &[ExponentVec],
    cols: &[ExponentVec],
    m: u64,
    phi: &[C],
) -> Vec<Vec<C>> {
    assert!(m >= 1);
    let inner = f.poly_ctx().inner();
    let betas = beta_tables(f, rows, cols, m);
    let mut out = vec![vec![C::zero_in(inner); cols.len()]; rows.len()];
    for (k, table) in betas.iter().enumerate() {
        let k = k as u64 + 1;
        let mut c = binomial(m, k);
        if k.is_multiple_of(2) {
            c = -c;
        }
        for (r, row) in table.iter().enumerate() {
            for (col, b) in row.iter().enumerate() {
                if b.vanishes() {
                    continue;
                }
                let term = b.times(&phi[col].pow(m - k)).scale_int(&c);
                out[r][col].accumulate(&term);
            }
        }
    }
    out
}

/// The matrix `beta_m(mu)`: entry `(u, v)` is the coefficient of
/// `x^{m v - u}` in `f^{m-1}`, rows and columns indexed by `mu_Z`.
pub fn hw_beta_matrix<C: Ring>(f: &LaurentPoly<C>, mu: &OpenSubset, m: u64) -> Result<PeriodMatrix<C>> {
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    check_mu(f, mu)?;
    let pts = mu.points();
    let power = f.pow(m - 1);
    Ok(PeriodMatrix::from_fn(point_labels(pts), |r, c| {
        power.coeff(&(pts[c].scale(m as i64) - pts[r]))
    }))
}

/// The matrix `gamma_m(mu)` for the given `phi`.
pub fn hw_gamma_matrix<C: Ring>(f: &LaurentPoly<C>, mu: &OpenSubset, m: u64, phi: &Phi<C>) -> Result<PeriodMatrix<C>> {
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    check_mu(f, mu)?;
    let pts = mu.points();
    let phi = phi.values(f, pts)?;
    let entries = gamma_entries(f, pts, pts, m, &phi);
    PeriodMatrix::new(point_labels(pts), entries)
}

fn survives(delta: &LatticePolytope, e: &ExponentVec, steps: i64) -> bool {
    let neg = -*e;
    delta.equations().iter().all(|q| q.eval(&neg) == steps * q.offset)
        && delta.facets().iter().all(|q| q.eval(&neg) >= steps * q.offset)
}

/// `[b_0, ..., b_K]` with `b_k` the constant term of `g^k`. Terms of the
/// running power that can no longer reach the origin within the remaining
/// steps are discarded.
pub fn hw_ct_sequence<C: Ring>(g: &LaurentPoly<C>, k_max: usize) -> Vec<C> {
    let inner = g.poly_ctx().inner().clone();
    let zero = ExponentVec::zeros(g.arity());
    let delta = g.newton_polytope().ok();
    let gterms: Vec<(ExponentVec, C)> = g.terms().map(|(e, c)| (*e, c.clone())).collect();
    let mut current: HashMap<ExponentVec, C> = HashMap::from([(zero, C::one_in(&inner))]);
    let mut out = vec![C::one_in(&inner)];
    for k in 1..=k_max {
        let remaining = (k_max - k) as i64;
        let mut next: HashMap<ExponentVec, C> = HashMap::with_capacity(current.len() * 2);
        for (e, c) in &current {
            for (ge, gc) in &gterms {
                let key = *e + *ge;
                if let Some(d) = &delta {
                    if !survives(d, &key, remaining) {
                        continue;
                    }
                }
                let prod = c.times(gc);
                match next.get_mut(&key) {
                    Some(slot) => slot.accumulate(&prod),
                    None => {
                        next.insert(key, prod);
                    }
                }
            }
        }
        next.retain(|_, c| !c.vanishes());
        out.push(next.get(&zero).cloned().unwrap_or_else(|| C::zero_in(&inner)));
        current = next;
    }
    out
}
