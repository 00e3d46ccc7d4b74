use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, hensel_unit_root, inverse_mod, Modulus, PRational, ResidueInt};
use crate::laurent::{ExponentVec, LaurentPoly, ParamPoly, PolyCtx};
use crate::polytope::{open_subset, MuSpec};
use crate::ring::{LocalRing, Ring};
use crate::seriesring::{SeriesCtx, TruncSeries};

use super::matrices::hw_beta_matrix;
use super::series::{check_prime, ct_residues};

/// `y^2 - x(x-1)(x-z)` with parameter `z`.
pub fn legendre_poly() -> ParamPoly<PRational> {
    let inner = PolyCtx::new(1, ()).named(&["z"]);
    let ctx = PolyCtx::new(2, inner.clone()).named(&["x", "y"]);
    let c = |terms: &[(i64, i64)]| {
        LaurentPoly::from_terms(
            &inner,
            terms
                .iter()
                .map(|&(e, v)| (ExponentVec::of(&[e]), PRational::from_i64(v))),
        )
    };
    LaurentPoly::from_terms(
        &ctx,
        [
            (ExponentVec::of(&[0, 2]), c(&[(0, 1)])),
            (ExponentVec::of(&[3, 0]), c(&[(0, -1)])),
            (ExponentVec::of(&[2, 0]), c(&[(0, 1), (1, 1)])),
            (ExponentVec::of(&[1, 0]), c(&[(1, -1)])),
        ],
    )
}

fn odd_prime(p: u64) -> Result<()> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::UnsupportedPrime(
            "p = 2: the coefficients 16^-k are not 2-integral".into(),
        ));
    }
    Ok(())
}

/// `F_m(z) = sum_{k<m} C(2k,k)^2 16^{-k} z^k` modulo `p^s`, as a series of order `m`.
pub fn hw_legendre_truncation(p: u64, s: u32, m: u64) -> Result<TruncSeries> {
    odd_prime(p)?;
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    let modulus = Modulus::new(p, s)?;
    let inv16 = inverse_mod(&BigInt::from(16), modulus).expect("16 is a unit for odd p");
    let mut scale = ResidueInt::one_in(&modulus);
    let mut coeffs = Vec::with_capacity(m as usize);
    for k in 0..m {
        let c = binomial(2 * k, k);
        coeffs.push(ResidueInt::new(modulus, &(&c * &c)).times(&scale));
        scale = scale.times(&inv16);
    }
    Ok(TruncSeries::new(SeriesCtx::new(modulus, m as usize)?, coeffs))
}

fn legendre_symbol(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let m = Modulus::with_limits(p, 1, u64::MAX, 1).expect("prime modulus");
    let r = ResidueInt::from_u128(m, a as u128).pow((p - 1) / 2);
    if r.is_unity() {
        1
    } else {
        -1
    }
}

/// `a_p = p + 1 - #E(F_p)` for `E: y^2 = x(x-1)(x-z0)`.
pub fn hw_count_points_legendre(z0: i64, p: u64) -> Result<i64> {
    odd_prime(p)?;
    let z = z0.rem_euclid(p as i64) as u64;
    if z == 0 || z == 1 {
        return Err(Error::SingularCurve(format!("z0 = {z0} is 0 or 1 mod {p}")));
    }
    let sum: i64 = (0..p)
        .map(|x| legendre_symbol(x * ((x + p - 1) % p) % p * ((x + p - z) % p), p))
        .sum();
    Ok(-sum)
}

/// Sign `e` with `F_p == e G_p mod p`, where `G_p(z)` is the coefficient
/// of `(xy)^{p-1}` in `(y^2 - x(x-1)(x-z))^{p-1}`.
pub fn legendre_sign_relation(p: u64) -> Result<i64> {
    odd_prime(p)?;
    let modulus = Modulus::new(p, 1)?;
    let f = legendre_poly();
    let mu = open_subset(&f.newton_polytope()?, &MuSpec::interior())?;
    let g = hw_beta_matrix(&f, &mu, p)?.get(0, 0).clone();
    let ctx = SeriesCtx::new(modulus, p as usize)?;
    let g = TruncSeries::from_rational_poly(ctx, &g)?;
    let fp = hw_legendre_truncation(p, 1, p)?;
    if fp == g {
        Ok(1)
    } else if fp == g.negate() {
        Ok(-1)
    } else {
        Err(Error::Invalid(format!("F_{p} is not congruent to +-G_{p} mod {p}")))
    }
}

/// Truncation-quotient value of a unit root and its cross-checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRootResult {
    pub kind: String,
    pub p: u64,
    pub s: u32,
    /// The lift of the point, as a residue mod `p^s`.
    pub z0: String,
    pub lambda_trunc: String,
    pub lambda_hensel: Option<String>,
    pub a_p: Option<i64>,
    /// `lambda_trunc == lambda_hensel mod p^s`, when the oracle applies.
    pub agree: Option<bool>,
    /// `lambda_trunc` recomputed at the lift `z0 + p` agrees.
    pub second_lift_agrees: bool,
}

impl UnitRootResult {
    pub fn lambda(&self) -> Result<ResidueInt> {
        let n: BigInt = self
            .lambda_trunc
            .parse()
            .map_err(|_| Error::Invalid(self.lambda_trunc.clone()))?;
        Ok(ResidueInt::new(Modulus::new(self.p, self.s)?, &n))
    }

    /// True unless some cross-check failed.
    pub fn consistent(&self) -> bool {
        self.agree.unwrap_or(true) && self.second_lift_agrees
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "unit root ({}) p = {}, s = {}, z0 = {}: lambda = {} mod {}^{}",
            self.kind, self.p, self.s, self.z0, self.lambda_trunc, self.p, self.s
        );
        if let (Some(a), Some(h), Some(ok)) = (self.a_p, &self.lambda_hensel, self.agree) {
            out.push_str(&format!(
                "\n  a_p = {a}, Hensel root = {h}, agreement: {}",
                if ok { "yes" } else { "NO" }
            ));
        }
        out.push_str(&format!(
            "\n  second lift agrees: {}",
            if self.second_lift_agrees { "yes" } else { "NO" }
        ));
        out
    }
}

/// `num(z0) / den(z0)` with `den` required to be a unit.
fn quotient_at(num: &TruncSeries, den: &TruncSeries, z0: &ResidueInt) -> Result<ResidueInt> {
    let d = den.eval(z0);
    let inv = d
        .inverse()
        .ok_or_else(|| Error::Hypothesis(format!("non-ordinary point: denominator {d} is not a unit")))?;
    Ok(num.eval(z0).times(&inv))
}

/// Optional corruption of the upper truncation, for negative controls.
pub type Perturbation = Option<usize>;

fn bump(series: &mut TruncSeries, k: Perturbation) {
    if let Some(k) = k {
        let one = ResidueInt::one_in(&series.modulus());
        series.set_coeff(k, series.coeff(k).plus(&one));
    }
}

/// `(-1)^{(p-1)/2} F_{p^s}(z0) / F_{p^{s-1}}(z0)` modulo `p^s`, compared
/// with the Hensel-lifted unit root from the point count.
pub fn hw_unit_root_legendre(p: u64, s: u32, z0: i64, perturb: Perturbation) -> Result<UnitRootResult> {
    odd_prime(p)?;
    if s == 0 {
        return Err(Error::Precision("s must be at least 1".into()));
    }
    let a_p = hw_count_points_legendre(z0, p)?;
    let modulus = Modulus::new(p, s)?;
    let mut hi = hw_legendre_truncation(p, s, p.pow(s))?;
    bump(&mut hi, perturb);
    let lo = hw_legendre_truncation(p, s, p.pow(s - 1))?;
    let fp = hw_legendre_truncation(p, 1, p)?;
    if fp.eval(&ResidueInt::from_i64(fp.modulus(), z0)).vanishes() {
        return Err(Error::Hypothesis(format!(
            "z0 = {z0} is supersingular: F_p(z0) = 0 mod {p}"
        )));
    }
    let sign = if ((p - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let at = |z: i64| -> Result<ResidueInt> {
        Ok(quotient_at(&hi, &lo, &ResidueInt::from_i64(modulus, z))?.scale_int(&BigInt::from(sign)))
    };
    let lambda = at(z0)?;
    let second = at(z0 + p as i64)?;
    let hensel = hensel_unit_root(a_p, p, s)?;
    Ok(UnitRootResult {
        kind: "legendre".into(),
        p,
        s,
        z0: ResidueInt::from_i64(modulus, z0).to_string(),
        lambda_trunc: lambda.to_string(),
        lambda_hensel: Some(hensel.to_string()),
        a_p: Some(a_p),
        agree: Some(lambda == hensel),
        second_lift_agrees: second == lambda,
    })
}

/// `gamma_{p^s}(t0) / gamma_{p^{s-1}}(t0)` for `q(t) = sum b_k t^k`, `b_k`
/// the constant terms of `g^k`.
pub fn hw_unit_root_ct(
    g: &LaurentPoly<PRational>,
    p: u64,
    s: u32,
    t0: i64,
    perturb: Perturbation,
) -> Result<UnitRootResult> {
    check_prime(p)?;
    if s == 0 {
        return Err(Error::Precision("s must be at least 1".into()));
    }
    let modulus = Modulus::new(p, s)?;
    let m = p.pow(s);
    let b = ct_residues(g, modulus, (m - 1) as usize)?;
    let ctx = |n: u64| SeriesCtx::new(modulus, n as usize);
    let mut hi = TruncSeries::new(ctx(m)?, b.clone());
    bump(&mut hi, perturb);
    let lo = TruncSeries::new(ctx(m / p)?, b[..(m / p) as usize].to_vec());
    let gp = TruncSeries::new(ctx(p)?, b[..p as usize].to_vec()).reduce(1)?;
    if gp.eval(&ResidueInt::from_i64(gp.modulus(), t0)).vanishes() {
        return Err(Error::Hypothesis(format!(
            "gamma_p(t0) = 0 mod {p}: t0 = {t0} is not ordinary"
        )));
    }
    let lambda = quotient_at(&hi, &lo, &ResidueInt::from_i64(modulus, t0))?;
    let second = quotient_at(&hi, &lo, &ResidueInt::from_i64(modulus, t0 + p as i64))?;
    Ok(UnitRootResult {
        kind: "ct-series".into(),
        p,
        s,
        z0: ResidueInt::from_i64(modulus, t0).to_string(),
        lambda_trunc: lambda.to_string(),
        lambda_hensel: None,
        a_p: None,
        agree: None,
        second_lift_agrees: second == lambda,
    })
}
