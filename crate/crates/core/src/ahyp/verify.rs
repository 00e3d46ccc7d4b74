use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, Modulus, ResidueInt};
use crate::hwdwork::{check_prime, CongruenceReport, Failure};
use crate::laurent::{ExponentVec, LaurentPoly, PolyCtx};
use crate::ring::Ring;
use crate::seriesring::{frobenius_quotient, log_derivative, ConeSeries, ConeShape, PeriodMatrix};

use super::config::AConfig;
use super::lattice::{ah_enumerate_li, extreme_rays, solve_nonneg};
use super::psi::{ah_psi_tilde, ah_psi_tilde_int, reduce_matrix};

type ModMatrix = PeriodMatrix<ConeSeries<ResidueInt>>;

fn reduce(m: &ModMatrix, e: u32) -> Result<ModMatrix> {
    m.try_map(|x| x.reduce(e))
}

fn cone_failure(check: &str, lhs: &ModMatrix, rhs: &ModMatrix) -> Option<Failure> {
    let (r, c) = lhs.first_difference(rhs)?;
    let (a, b) = (lhs.get(r, c), rhs.get(r, c));
    let key = a
        .first_difference(b)
        .unwrap_or_else(|| ExponentVec::zeros(a.shape().arity()));
    Some(Failure {
        check: check.into(),
        location: format!("entry ({}, {}) at v^{key}", lhs.labels()[r], lhs.labels()[c]),
        expected: b.coeff(&key).to_string(),
        actual: a.coeff(&key).to_string(),
    })
}

/// Settings for [`ah_verify_main5`].
#[derive(Clone, Debug)]
pub struct Main5Config {
    pub p: u64,
    pub s_max: u32,
    /// Every key of weight `<= weight` lies in the grade window.
    pub weight: u64,
    /// Add 1 to the constant term of entry `(0, 0)` of `psi~_{p^{s_max+1}}`.
    pub perturb: bool,
}

/// Checks, for `m = p^s'` with `1 <= s' <= s_max + 1`, modulo `p^{s'}` and
/// all keys of grade `<= D`:
/// `Psi~ sigma(Psi~)^{-1} == psi~_m sigma(psi~_{m/p})^{-1}`,
/// `delta_i(Psi~) Psi~^{-1} == delta_i(psi~_m) psi~_m^{-1}` for every `i`,
/// and stability of both quotients from `p^{s'}` to `p^{s'+1}`.
pub fn ah_verify_main5(config: &AConfig, cols: &[usize], cfg: &Main5Config) -> Result<CongruenceReport> {
    check_prime(cfg.p)?;
    if cfg.s_max == 0 {
        return Err(Error::Precision("s_max must be at least 1".into()));
    }
    if cols.is_empty() {
        return Err(Error::Hypothesis("no columns selected".into()));
    }
    let p = cfg.p;
    let top = cfg.s_max + 1;
    let shape = config.cone_shape(cfg.weight)?;
    let modulus = Modulus::new(p, top)?;
    let window = format!("grade <= {} (all keys of weight <= {})", shape.bound(), cfg.weight);
    let col_names: Vec<String> = cols.iter().map(|j| format!("a{}", j + 1)).collect();
    let mut rb = CongruenceReport::start("main5", p, window)
        .param("columns", col_names.join(","))
        .param("s_max", cfg.s_max)
        .param("weight", cfg.weight)
        .param("grading", format!("{:?}", shape.grading()));

    let full = ah_psi_tilde(config, cols, None, &shape, modulus)?;
    let mut levels = Vec::with_capacity(top as usize + 1);
    for s in 0..=top {
        levels.push(ah_psi_tilde(config, cols, Some(p.saturating_pow(s)), &shape, modulus)?);
    }
    if cfg.perturb {
        let e = levels[top as usize].get_mut(0, 0);
        let one = ConeSeries::one_in(&e.ctx());
        *e = e.plus(&one);
    }

    let lam_full = frobenius_quotient(&full, &full, p)?;
    let lam: Vec<ModMatrix> = (1..=top)
        .map(|s| frobenius_quotient(&levels[s as usize], &levels[s as usize - 1], p))
        .collect::<Result<_>>()?;
    for s in 1..=top {
        let approx = reduce(&lam[s as usize - 1], s)?;
        rb.check(
            s,
            cone_failure(&format!("Lambda, m = {}^{s}", p), &approx, &reduce(&lam_full, s)?),
        );
        if s < top {
            let next = reduce(&lam[s as usize], s)?;
            rb.check(
                s,
                cone_failure(
                    &format!("Lambda stability, m = {p}^{s} -> {p}^{}", s + 1),
                    &next,
                    &approx,
                ),
            );
        }
    }
    for var in 0..config.len() {
        let n_full = log_derivative(&full, var)?;
        let mut prev: Option<ModMatrix> = None;
        for s in 1..=top {
            let n_s = log_derivative(&levels[s as usize], var)?;
            let name = format!("N_delta{}, m = {p}^{s}", var + 1);
            rb.check(s, cone_failure(&name, &reduce(&n_s, s)?, &reduce(&n_full, s)?));
            if let Some(prev) = prev {
                let name = format!("N_delta{} stability, m = {p}^{} -> {p}^{s}", var + 1, s - 1);
                rb.check(
                    s - 1,
                    cone_failure(&name, &reduce(&n_s, s - 1)?, &reduce(&prev, s - 1)?),
                );
            }
            prev = Some(n_s);
        }
    }
    Ok(rb.finish())
}

/// `Psi~ sigma(Psi~)^{-1}` modulo `p^s` on the grade window for `weight`.
pub fn ah_lambda(config: &AConfig, cols: &[usize], p: u64, s: u32, weight: u64) -> Result<ModMatrix> {
    check_prime(p)?;
    let shape = config.cone_shape(weight)?;
    let full = ah_psi_tilde(config, cols, None, &shape, Modulus::new(p, s)?)?;
    frobenius_quotient(&full, &full, p)
}

/// Exact `delta_var(Psi~) Psi~^{-1}` over the integers on the grade window.
pub fn ah_ndelta_exact(
    config: &AConfig,
    cols: &[usize],
    var: usize,
    shape: &ConeShape,
) -> Result<PeriodMatrix<ConeSeries<BigInt>>> {
    log_derivative(&ah_psi_tilde_int(config, cols, None, shape)?, var)
}

/// Agreement of one p-adic approximant of `N_delta` with the exact matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NdeltaCell {
    pub p: u64,
    pub s: u32,
    pub var: usize,
    pub agree: bool,
}

/// For each prime `p`, each `s <= s_max` and each `delta_i`, whether
/// `delta_i(psi~_{p^s}) psi~_{p^s}^{-1} mod p^s` is the reduction of the
/// exact integer `N_delta`.
pub fn ah_ndelta_across_primes(
    config: &AConfig,
    cols: &[usize],
    primes: &[u64],
    s_max: u32,
    weight: u64,
) -> Result<Vec<NdeltaCell>> {
    let shape = config.cone_shape(weight)?;
    let exact: Vec<_> = (0..config.len())
        .map(|v| ah_ndelta_exact(config, cols, v, &shape))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for &p in primes {
        check_prime(p)?;
        for s in 1..=s_max {
            let modulus = Modulus::new(p, s)?;
            let psi = ah_psi_tilde(config, cols, Some(p.pow(s)), &shape, modulus)?;
            for (var, ex) in exact.iter().enumerate() {
                let approx = log_derivative(&psi, var)?;
                out.push(NdeltaCell {
                    p,
                    s,
                    var,
                    agree: approx == reduce_matrix(ex, modulus)?,
                });
            }
        }
    }
    Ok(out)
}

/// Constant term of `x^u f^{-k}` expanded along `a_i`, keeping the terms
/// of expansion degree `d <= weight`: the sum over `l` with
/// `sum l_r (1, a_r) = -(k, u)`, `l_r >= 0` (`r != i`), `l_i = -k - d`, of
/// `(-1)^d C(k-1+d, d) d! / prod_{r != i} l_r! v^l`.
pub fn ah_period_series(
    config: &AConfig,
    u: &ExponentVec,
    k: u64,
    i: usize,
    weight: u64,
) -> Result<LaurentPoly<BigInt>> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    if i >= config.len() {
        return Err(Error::Invalid(format!("pivot {} outside 1..={}", i + 1, config.len())));
    }
    if u.arity() != config.dim() {
        return Err(Error::ArityMismatch(u.arity(), config.dim()));
    }
    let delta = config.newton_polytope()?;
    let kk = k as i64;
    let inside = delta.equations().iter().all(|q| q.eval(u) == kk * q.offset)
        && delta.facets().iter().all(|q| q.eval(u) >= kk * q.offset);
    if !inside {
        return Err(Error::Invalid(format!(
            "u = {u} is not in {k} times the Newton polytope"
        )));
    }
    let names: Vec<String> = (1..=config.len()).map(|r| format!("v{r}")).collect();
    let ctx = PolyCtx::new(config.len(), ()).named(&names.iter().map(String::as_str).collect::<Vec<_>>());
    let mut terms = Vec::new();
    let a_i = config.exponent(i);
    for d in 0..=weight {
        let target: Vec<i64> = (0..config.dim())
            .map(|x| (kk + d as i64) * a_i.get(x) - u.get(x))
            .collect();
        let sign = if d % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        let head = sign * binomial(k - 1 + d, d) * factorial(d);
        for mut l in solve_nonneg(config.exponents(), i, d, &target) {
            let den: BigInt = l.iter().map(|&x| factorial(x as u64)).product();
            l[i] = -kk - d as i64;
            terms.push((ExponentVec::of(&l), &head / den));
        }
    }
    Ok(LaurentPoly::from_terms(&ctx, terms))
}

/// Outcome of [`ah_cone_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeVerdict {
    /// `pointed`, `not pointed` or `inconclusive`.
    pub verdict: String,
    pub grading: Option<Vec<i64>>,
    /// Number of elements and extreme rays of the `L_i` tested.
    pub checked: usize,
    /// A nonzero element of some `L_i` whose negative is also in the cone.
    pub witness: Option<Vec<i64>>,
}

impl ConeVerdict {
    pub fn pointed(&self) -> bool {
        self.verdict == "pointed"
    }
}

/// Certifies that no nontrivial sum of elements of the `L_i` vanishes, by
/// exhibiting an additive grading positive on every element of degree
/// `<= weight` and on the extreme rays of each `L_i(R)`.
pub fn ah_cone_check(config: &AConfig, weight: u64) -> ConeVerdict {
    if let Some((k, i)) = config.duplicate() {
        let mut w = vec![0; config.len()];
        w[k] = 1;
        w[i] = -1;
        return ConeVerdict {
            verdict: "not pointed".into(),
            grading: None,
            checked: 0,
            witness: Some(w),
        };
    }
    let grading = config.grading().expect("distinct exponents");
    let grade = |l: &[i64]| -> i64 { l.iter().zip(&grading).map(|(a, b)| a * b).sum() };
    let mut checked = 0;
    for i in 0..config.len() {
        let mut candidates: Vec<Vec<i64>> = ah_enumerate_li(config, i, None, weight)
            .elements
            .iter()
            .map(ExponentVec::to_vec)
            .collect();
        candidates.extend(extreme_rays(config, i));
        for l in candidates {
            checked += 1;
            if grade(&l) <= 0 {
                return ConeVerdict {
                    verdict: "inconclusive".into(),
                    grading: Some(grading),
                    checked,
                    witness: Some(l),
                };
            }
        }
    }
    ConeVerdict {
        verdict: "pointed".into(),
        grading: Some(grading),
        checked,
        witness: None,
    }
}
