use num_bigint::BigInt;

use crate::error::Result;
use crate::exactnum::{Modulus, ResidueInt};
use crate::hwdwork::gamma_entries;
use crate::laurent::{ExponentVec, LaurentPoly, PolyCtx};

use crate::seriesring::{ConeCtx, ConeSeries, ConeShape, IndexLabel, PeriodMatrix};

use super::config::AConfig;
use super::lattice::{ah_enumerate_li, degree_cap, psi_coefficient};

pub(crate) fn column_labels(cols: &[usize]) -> Vec<IndexLabel> {
    cols.iter().map(|&j| IndexLabel::Column(j)).collect()
}

fn v_ctx(config: &AConfig) -> PolyCtx<()> {
    let names: Vec<String> = (1..=config.len()).map(|r| format!("v{r}")).collect();
    PolyCtx::new(config.len(), ()).named(&names.iter().map(String::as_str).collect::<Vec<_>>())
}

/// Terms `(l, coefficient)` of the entries `(j, i)`, `j` in `cols`, of
/// column `i`, for the elements of `L_i` of degree `d <= cap`. The
/// truncation at `m` keeps the terms of `x^{a_j}/f` of expansion degree
/// `< m`: `d < m` on the diagonal, `d <= m` off it (there `l - e_j` has
/// degree `d - 1`).
fn column_terms(
    config: &AConfig,
    cols: &[usize],
    i: usize,
    m: Option<u64>,
    cap: u64,
) -> Result<Vec<Vec<(ExponentVec, BigInt)>>> {
    let set = ah_enumerate_li(config, i, m.map(|m| m + 1), cap);
    let mut out = vec![Vec::new(); cols.len()];
    for (row, &j) in cols.iter().enumerate() {
        out[row].push((ExponentVec::zeros(config.len()), BigInt::from((i == j) as i64)));
        for l in &set.elements {
            if j == i && m.is_some_and(|m| -l.get(i) >= m as i64) {
                continue;
            }
            let c = psi_coefficient(l, j)?;
            if c != BigInt::from(0) {
                out[row].push((*l, c));
            }
        }
    }
    Ok(out)
}

/// `psi~_m` with exact integer polynomial entries in `v_1..v_N`: entry
/// `(j, i)` is `delta_ij + sum_l l_j prod_k Gamma*(l_k+1)^{-1} v^l` over the
/// `l` in `L_i` kept by the truncation at `m` (see `column_terms`).
pub fn ah_psi_tilde_exact(config: &AConfig, cols: &[usize], m: u64) -> Result<PeriodMatrix<LaurentPoly<BigInt>>> {
    let ctx = v_ctx(config);
    let cap = m;
    let mut columns = Vec::with_capacity(cols.len());
    for &i in cols {
        columns.push(column_terms(config, cols, i, Some(m), cap)?);
    }
    Ok(PeriodMatrix::from_fn(column_labels(cols), |r, c| {
        LaurentPoly::from_terms(&ctx, columns[c][r].clone())
    }))
}

/// `psi~_m` (or the full `Psi~` for `m = None`) over integer cone series
/// modulo keys of grade above the bound of `shape`.
pub fn ah_psi_tilde_int(
    config: &AConfig,
    cols: &[usize],
    m: Option<u64>,
    shape: &ConeShape,
) -> Result<PeriodMatrix<ConeSeries<BigInt>>> {
    let ctx = ConeCtx::new(shape.clone(), ());
    let mut columns = Vec::with_capacity(cols.len());
    for &i in cols {
        let cap = degree_cap(config, shape.grading(), i, shape.bound());
        columns.push(column_terms(config, cols, i, m, cap)?);
    }
    PeriodMatrix::try_from_fn(column_labels(cols), |r, c| {
        ConeSeries::from_terms(&ctx, columns[c][r].clone())
    })
}

/// [`ah_psi_tilde_int`] with coefficients reduced modulo `p^s`.
pub fn ah_psi_tilde(
    config: &AConfig,
    cols: &[usize],
    m: Option<u64>,
    shape: &ConeShape,
    modulus: Modulus,
) -> Result<PeriodMatrix<ConeSeries<ResidueInt>>> {
    reduce_matrix(&ah_psi_tilde_int(config, cols, m, shape)?, modulus)
}

pub fn reduce_matrix(
    m: &PeriodMatrix<ConeSeries<BigInt>>,
    modulus: Modulus,
) -> Result<PeriodMatrix<ConeSeries<ResidueInt>>> {
    m.try_map(|x| x.try_map_coeffs(&modulus, |c| Ok(ResidueInt::new(modulus, c))))
}

/// `gamma_m` from constant terms: entry `(j, i)` is the constant term of
/// `x^{a_j - a_i} sum_{k=1}^m (-1)^{k+1} C(m,k) v_i^{m-k} (f / x^{a_i})^{k-1}`.
pub fn ah_gamma_ct(config: &AConfig, cols: &[usize], m: u64) -> Result<PeriodMatrix<LaurentPoly<BigInt>>> {
    let f = config.int_polynomial();
    let inner = f.poly_ctx().inner().clone();
    let pts: Vec<ExponentVec> = cols.iter().map(|&j| *config.exponent(j)).collect();
    let phi: Vec<LaurentPoly<BigInt>> = cols.iter().map(|&i| LaurentPoly::variable(&inner, i)).collect();
    PeriodMatrix::new(column_labels(cols), gamma_entries(&f, &pts, &pts, m, &phi))
}

/// `psi~_m` recovered from [`ah_gamma_ct`] as `v_j gamma_ji v_i^{-m}`.
pub fn ah_psi_tilde_ct_oracle(config: &AConfig, cols: &[usize], m: u64) -> Result<PeriodMatrix<LaurentPoly<BigInt>>> {
    let gamma = ah_gamma_ct(config, cols, m)?;
    let n = config.len();
    let mut rows = Vec::with_capacity(cols.len());
    for (r, &j) in cols.iter().enumerate() {
        let row = cols
            .iter()
            .enumerate()
            .map(|(c, &i)| {
                let shift = ExponentVec::unit(n, j) - ExponentVec::unit(n, i).scale(m as i64);
                gamma.get(r, c).shift(&shift)
            })
            .collect();
        rows.push(row);
    }
    let ctx = v_ctx(config);
    PeriodMatrix::new(column_labels(cols), rows)
        .map(|p| p.map(|x| LaurentPoly::from_terms(&ctx, x.terms().map(|(e, c)| (*e, c.clone())))))
}

/// `(prod_{j in cols} v_j)^{m-1} det(psi~_m)`, which equals `det(gamma_m)`.
pub fn ah_det_relation_rhs(
    config: &AConfig,
    cols: &[usize],
    psi: &PeriodMatrix<LaurentPoly<BigInt>>,
    m: u64,
) -> LaurentPoly<BigInt> {
    let n = config.len();
    let mut e = ExponentVec::zeros(n);
    for &j in cols {
        e = e + ExponentVec::unit(n, j).scale(m as i64 - 1);
    }
    psi.det().shift(&e)
}
