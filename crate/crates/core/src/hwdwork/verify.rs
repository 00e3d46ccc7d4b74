use crate::error::{Error, Result};
use crate::exactnum::{padic_ord_u64, Modulus, PRational, ResidueInt};
use crate::laurent::{LaurentPoly, ParamPoly};
use crate::polytope::OpenSubset;
use crate::ring::{LocalRing, Ring};
use crate::seriesring::{frobenius_quotient, log_derivative, PeriodMatrix, SeriesCtx, SeriesRing, TruncSeries};

use super::matrices::{hw_beta_matrix, hw_gamma_matrix, Phi};
use super::report::{CongruenceReport, Failure, ReportBuilder};
use super::series::{check_prime, ct_residues, series_coeffs, specialize, truncation};

fn series_failure(check: &str, lhs: &TruncSeries, rhs: &TruncSeries) -> Option<Failure> {
    lhs.first_difference(rhs).map(|k| Failure {
        check: check.into(),
        location: format!("t^{k}"),
        expected: rhs.coeff(k).to_string(),
        actual: lhs.coeff(k).to_string(),
    })
}

fn perturb_series(s: &mut TruncSeries, k: usize) -> Result<()> {
    if k >= s.order() {
        return Err(Error::Invalid(format!(
            "coefficient t^{k} is outside the window t^{}",
            s.order()
        )));
    }
    let one = ResidueInt::one_in(&s.modulus());
    s.set_coeff(k, s.coeff(k).plus(&one));
    Ok(())
}

/// The pieces of `q(t) sigma(gamma_lo) == sigma(q) gamma_hi mod (p^e, t^T)`.
#[derive(Clone, Debug)]
pub struct DworkInputs {
    pub claim: String,
    pub p: u64,
    pub params: Vec<(String, String)>,
    pub q: TruncSeries,
    pub gamma_hi: TruncSeries,
    pub gamma_lo: TruncSeries,
}

impl DworkInputs {
    /// Add 1 to coefficient `t^k` of `side` (`q`, `gamma` or `gamma-lo`).
    pub fn perturb(&mut self, side: &str, k: usize) -> Result<()> {
        match side {
            "q" => perturb_series(&mut self.q, k),
            "gamma" | "gamma-hi" => perturb_series(&mut self.gamma_hi, k),
            "gamma-lo" => perturb_series(&mut self.gamma_lo, k),
            other => Err(Error::Invalid(format!(
                "unknown side {other:?}; expected q, gamma or gamma-lo"
            ))),
        }
    }

    pub fn verify(&self) -> Result<CongruenceReport> {
        let mut rb = CongruenceReport::start(&self.claim, self.p, format!("t^{}", self.q.order()));
        for (k, v) in &self.params {
            rb.set_param(k, v);
        }
        for side in [&self.q, &self.gamma_lo] {
            if !side.is_unit() {
                return Err(Error::Hypothesis(format!(
                    "constant term {} is not a unit",
                    side.coeff(0)
                )));
            }
        }
        let lhs = self.q.times(&self.gamma_lo.frobenius());
        let rhs = self.q.frobenius().times(&self.gamma_hi);
        rb.check(
            self.q.modulus().s(),
            series_failure("q sigma(gamma_{m/p}) vs sigma(q) gamma_m", &lhs, &rhs),
        );
        Ok(rb.finish())
    }
}

/// Inputs of the Mellit-Vlasenko congruence for `m = p^s`.
pub fn mev_inputs(g: &LaurentPoly<PRational>, p: u64, s: u32, order: usize) -> Result<DworkInputs> {
    check_prime(p)?;
    if s == 0 {
        return Err(Error::Precision("s must be at least 1".into()));
    }
    let ctx = SeriesCtx::new(Modulus::new(p, s)?, order)?;
    let b = ct_residues(g, ctx.modulus(), order - 1)?;
    let m = p.pow(s);
    Ok(DworkInputs {
        claim: "mev".into(),
        p,
        params: vec![("s".into(), s.to_string()), ("m".into(), m.to_string())],
        q: TruncSeries::new(ctx, b.clone()),
        gamma_hi: truncation(&b, m, ctx),
        gamma_lo: truncation(&b, m / p, ctx),
    })
}

/// `q(t)/q(t^p) == gamma_{p^s}(t)/gamma_{p^{s-1}}(t^p) mod (p^s, t^T)`.
pub fn hw_verify_mev(g: &LaurentPoly<PRational>, p: u64, s: u32, order: usize) -> Result<CongruenceReport> {
    mev_inputs(g, p, s, order)?.verify()
}

fn ord_of(m: u64, p: u64) -> Result<u32> {
    if m == 0 || !m.is_multiple_of(p) {
        return Err(Error::Hypothesis(format!("p = {p} must divide m = {m}")));
    }
    padic_ord_u64(m, p)
}

/// Inputs of the same congruence for any `m` divisible by `p`, modulo `p^{ord_p m}`.
pub fn any_m_inputs(g: &LaurentPoly<PRational>, p: u64, m: u64, order: usize) -> Result<DworkInputs> {
    check_prime(p)?;
    let e = ord_of(m, p)?;
    let ctx = SeriesCtx::new(Modulus::new(p, e)?, order)?;
    let b = ct_residues(g, ctx.modulus(), order - 1)?;
    Ok(DworkInputs {
        claim: "any-m".into(),
        p,
        params: vec![("m".into(), m.to_string()), ("ord_p(m)".into(), e.to_string())],
        q: TruncSeries::new(ctx, b.clone()),
        gamma_hi: truncation(&b, m, ctx),
        gamma_lo: truncation(&b, m / p, ctx),
    })
}

pub fn hw_verify_any_m(g: &LaurentPoly<PRational>, p: u64, m: u64, order: usize) -> Result<CongruenceReport> {
    any_m_inputs(g, p, m, order)?.verify()
}

/// The pieces of `q' gamma_m == gamma_m' q mod (p^{ord_p m}, t^T)`; both
/// series carry one extra coefficient so that `d/dt` is known up to `t^{T-1}`.
#[derive(Clone, Debug)]
pub struct DerivativeInputs {
    pub p: u64,
    pub m: u64,
    pub q: TruncSeries,
    pub gamma: TruncSeries,
}

impl DerivativeInputs {
    pub fn perturb(&mut self, side: &str, k: usize) -> Result<()> {
        match side {
            "q" => perturb_series(&mut self.q, k),
            "gamma" => perturb_series(&mut self.gamma, k),
            other => Err(Error::Invalid(format!("unknown side {other:?}; expected q or gamma"))),
        }
    }

    pub fn verify(&self) -> Result<CongruenceReport> {
        let order = self.q.order() - 1;
        let mut rb = CongruenceReport::start("derivative", self.p, format!("t^{order}"))
            .param("m", self.m)
            .param("ord_p(m)", self.q.modulus().s());
        let dq = self.q.ddt()?;
        let dg = self.gamma.ddt()?;
        let q = self.q.truncate(order)?;
        let g = self.gamma.truncate(order)?;
        rb.check(
            self.q.modulus().s(),
            series_failure("q' gamma_m vs gamma_m' q", &dq.times(&g), &dg.times(&q)),
        );
        Ok(rb.finish())
    }
}

pub fn derivative_inputs(g: &LaurentPoly<PRational>, p: u64, m: u64, order: usize) -> Result<DerivativeInputs> {
    check_prime(p)?;
    let e = ord_of(m, p)?;
    let ctx = SeriesCtx::new(Modulus::new(p, e)?, order + 1)?;
    let b = ct_residues(g, ctx.modulus(), order)?;
    Ok(DerivativeInputs {
        p,
        m,
        q: TruncSeries::new(ctx, b.clone()),
        gamma: truncation(&b, m, ctx),
    })
}

/// `q'(t)/q(t) == gamma_m'(t)/gamma_m(t) mod (p^{ord_p m}, t^T)`.
pub fn hw_verify_derivative(g: &LaurentPoly<PRational>, p: u64, m: u64, order: usize) -> Result<CongruenceReport> {
    derivative_inputs(g, p, m, order)?.verify()
}

/// Which family of truncated matrices an approximant is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Approx {
    Beta,
    Gamma,
}

fn truncated_matrix<S: SeriesRing>(
    f: &LaurentPoly<S>,
    mu: &OpenSubset,
    m: u64,
    kind: Approx,
    phi: &Phi<S>,
) -> Result<PeriodMatrix<S>> {
    match kind {
        Approx::Beta => hw_beta_matrix(f, mu, m),
        Approx::Gamma => hw_gamma_matrix(f, mu, m, phi),
    }
}

fn singular_with_det<S: SeriesRing>(e: Error, m: &PeriodMatrix<S>) -> Error {
    match e {
        Error::Singular(res) => Error::Singular(format!("det = {} mod p; residues {res}", m.det().residue())),
        other => other,
    }
}

/// `X_{p^s} sigma(X_{p^{s-1}})^{-1}` for `X = beta` or `gamma`, in the
/// coefficient ring of `f` (series: `sigma` is `t -> t^p`; point: identity).
pub fn hw_lambda_approx<S: SeriesRing>(
    f: &LaurentPoly<S>,
    mu: &OpenSubset,
    p: u64,
    s: u32,
    kind: Approx,
    phi: &Phi<S>,
) -> Result<PeriodMatrix<S>> {
    if s == 0 {
        return Err(Error::Precision("s must be at least 1".into()));
    }
    let hi = truncated_matrix(f, mu, p.pow(s), kind, phi)?;
    let lo = truncated_matrix(f, mu, p.pow(s - 1), kind, phi)?;
    frobenius_quotient(&hi, &lo, p).map_err(|e| singular_with_det(e, &lo))
}

/// `delta(X_{p^s}) X_{p^s}^{-1}` with `delta = t d/dt`.
pub fn hw_ndelta_approx<S: SeriesRing>(
    f: &LaurentPoly<S>,
    mu: &OpenSubset,
    p: u64,
    s: u32,
    kind: Approx,
    phi: &Phi<S>,
) -> Result<PeriodMatrix<S>> {
    let x = truncated_matrix(f, mu, p.pow(s), kind, phi)?;
    log_derivative(&x, 0).map_err(|e| singular_with_det(e, &x))
}

/// Settings for [`hw_verify_limits`].
#[derive(Clone, Debug)]
pub struct LimitsConfig {
    pub p: u64,
    pub s_max: u32,
    /// Series order `T`; ignored at a point.
    pub order: usize,
    /// Evaluate at this lift of the parameter instead of working with series.
    pub point: Option<i64>,
    /// `phi` for the gamma-approximants: `Ones` or `Coefficients`.
    pub phi_coefficients: bool,
    /// Add 1 to coefficient `t^k` (at a point: to the value) of entry
    /// `(0, 0)` of `beta_{p^{s_max}}` before forming the quotients.
    pub perturb: Option<usize>,
}

fn matrix_failure<S: Ring>(
    check: &str,
    lhs: &PeriodMatrix<S>,
    rhs: &PeriodMatrix<S>,
    describe: impl Fn(&S, &S) -> (String, String, String),
) -> Option<Failure> {
    lhs.first_difference(rhs).map(|(r, c)| {
        let (loc, exp, act) = describe(lhs.get(r, c), rhs.get(r, c));
        Failure {
            check: check.into(),
            location: format!("entry ({}, {}) {loc}", lhs.labels()[r], lhs.labels()[c]),
            expected: exp,
            actual: act,
        }
    })
}

fn describe_series(a: &TruncSeries, b: &TruncSeries) -> (String, String, String) {
    let k = a.first_difference(b).unwrap_or(0);
    (format!("t^{k}"), b.coeff(k).to_string(), a.coeff(k).to_string())
}

fn describe_residue(a: &ResidueInt, b: &ResidueInt) -> (String, String, String) {
    (String::new(), b.to_string(), a.to_string())
}

/// Cauchy property of the Lambda (and, over series, N) approximants, and
/// agreement of the beta- and gamma-variants modulo `p^s`.
pub fn hw_verify_limits(f: &ParamPoly<PRational>, mu: &OpenSubset, cfg: &LimitsConfig) -> Result<CongruenceReport> {
    check_prime(cfg.p)?;
    if cfg.s_max == 0 {
        return Err(Error::Precision("s must be at least 1".into()));
    }
    let window = match cfg.point {
        Some(t0) => format!("value at lift {t0}"),
        None => format!("t^{}", cfg.order),
    };
    let mut rb = CongruenceReport::start("limits", cfg.p, window).param("s_max", cfg.s_max);
    match cfg.point {
        None => limits_series(f, mu, cfg, &mut rb)?,
        Some(t0) => limits_point(f, mu, cfg, t0, &mut rb)?,
    }
    Ok(rb.finish())
}

type Pair<S> = [PeriodMatrix<S>; 2];

/// Beta- and gamma-variants of Lambda (and optionally N) at level `s`.
fn approximants<S: SeriesRing>(
    f: &LaurentPoly<S>,
    mu: &OpenSubset,
    cfg: &LimitsConfig,
    s: u32,
    phi: &Phi<S>,
    with_ndelta: bool,
    bump: impl Fn(&mut PeriodMatrix<S>),
) -> Result<(Pair<S>, Option<Pair<S>>)> {
    let p = cfg.p;
    let mut lam = Vec::new();
    let mut nd = Vec::new();
    for kind in [Approx::Beta, Approx::Gamma] {
        let mut hi = truncated_matrix(f, mu, p.pow(s), kind, phi)?;
        if kind == Approx::Beta && s == cfg.s_max && cfg.perturb.is_some() {
            bump(&mut hi);
        }
        let lo = truncated_matrix(f, mu, p.pow(s - 1), kind, phi)?;
        lam.push(frobenius_quotient(&hi, &lo, p).map_err(|e| singular_with_det(e, &lo))?);
        if with_ndelta {
            nd.push(log_derivative(&hi, 0).map_err(|e| singular_with_det(e, &hi))?);
        }
    }
    let pair = |mut v: Vec<PeriodMatrix<S>>| -> Pair<S> {
        let g = v.pop().expect("two variants");
        let b = v.pop().expect("two variants");
        [b, g]
    };
    let nd = if with_ndelta { Some(pair(nd)) } else { None };
    Ok((pair(lam), nd))
}

fn limits_series(f: &ParamPoly<PRational>, mu: &OpenSubset, cfg: &LimitsConfig, rb: &mut ReportBuilder) -> Result<()> {
    let p = cfg.p;
    let mut lam: Vec<Pair<TruncSeries>> = Vec::new();
    let mut nd: Vec<Pair<TruncSeries>> = Vec::new();
    for s in 1..=cfg.s_max {
        let ctx = SeriesCtx::new(Modulus::new(p, s)?, cfg.order)?;
        let fs = series_coeffs(f, ctx)?;
        let phi = if cfg.phi_coefficients {
            Phi::Coefficients
        } else {
            Phi::Ones
        };
        let k = cfg.perturb.unwrap_or(0);
        let (l, n) = approximants(&fs, mu, cfg, s, &phi, true, |m| {
            let e = m.get_mut(0, 0);
            let mut c = e.clone();
            c.set_coeff(k, c.coeff(k).plus(&ResidueInt::one_in(&c.modulus())));
            *e = c;
        })?;
        lam.push(l);
        nd.extend(n);
    }
    compare_levels(&lam, "Lambda", rb, |m, s| m.try_map(|x| x.reduce(s)), describe_series)?;
    compare_levels(&nd, "N_delta", rb, |m, s| m.try_map(|x| x.reduce(s)), describe_series)?;
    Ok(())
}

fn limits_point(
    f: &ParamPoly<PRational>,
    mu: &OpenSubset,
    cfg: &LimitsConfig,
    t0: i64,
    rb: &mut ReportBuilder,
) -> Result<()> {
    let p = cfg.p;
    let mut lam: Vec<Pair<ResidueInt>> = Vec::new();
    for s in 1..=cfg.s_max {
        let modulus = Modulus::new(p, s)?;
        let fs = specialize(f, &[ResidueInt::from_i64(modulus, t0)])?;
        let phi = if cfg.phi_coefficients {
            Phi::Coefficients
        } else {
            Phi::Ones
        };
        let (l, _) = approximants(&fs, mu, cfg, s, &phi, false, |m| {
            let e = m.get_mut(0, 0);
            *e = e.plus(&ResidueInt::one_in(&e.modulus()));
        })?;
        lam.push(l);
    }
    compare_levels(&lam, "Lambda", rb, |m, s| m.try_map(|x| x.reduce(s)), describe_residue)
}

/// `levels[s-1] = [beta-variant, gamma-variant]` computed modulo `p^s`.
fn compare_levels<S: Ring>(
    levels: &[Pair<S>],
    name: &str,
    rb: &mut ReportBuilder,
    reduce: impl Fn(&PeriodMatrix<S>, u32) -> Result<PeriodMatrix<S>>,
    describe: impl Fn(&S, &S) -> (String, String, String) + Copy,
) -> Result<()> {
    for (idx, pair) in levels.iter().enumerate() {
        let s = idx as u32 + 1;
        rb.check(
            s,
            matrix_failure(&format!("{name} beta vs gamma, s = {s}"), &pair[0], &pair[1], describe),
        );
        if let Some(next) = levels.get(idx + 1) {
            for (v, label) in [(0, "beta"), (1, "gamma")] {
                let down = reduce(&next[v], s)?;
                rb.check(
                    s,
                    matrix_failure(
                        &format!("{name} {label} Cauchy, s = {} vs {s}", s + 1),
                        &down,
                        &pair[v],
                        describe,
                    ),
                );
            }
        }
    }
    Ok(())
}
