use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{embed_rational, Modulus, PRational, ResidueInt};
use crate::laurent::LaurentPoly;
use crate::ring::{LocalRing, Ring};

/// Modulus `p^s` and order bound `T` of a truncated series ring
/// `Z/p^s [t] / (t^T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeriesCtx {
    modulus: Modulus,
    order: usize,
}

impl SeriesCtx {
    pub fn new(modulus: Modulus, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("series order T must be at least 1".into()));
        }
        Ok(SeriesCtx { modulus, order })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }
}

/// Power series in one variable modulo `(p^s, t^T)`; always exactly `T`
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    ctx: SeriesCtx,
    coeffs: Vec<ResidueInt>,
}

impl TruncSeries {
    /// Pads with zeros or drops terms beyond `t^{T-1}`.
    pub fn new(ctx: SeriesCtx, mut coeffs: Vec<ResidueInt>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.modulus() == ctx.modulus),
            "series modulus mismatch"
        );
        coeffs.resize(ctx.order, ResidueInt::zero_in(&ctx.modulus));
        TruncSeries { ctx, coeffs }
    }

    pub fn from_i64s(ctx: SeriesCtx, coeffs: &[i64]) -> Self {
        Self::new(
            ctx,
            coeffs.iter().map(|&c| ResidueInt::from_i64(ctx.modulus, c)).collect(),
        )
    }

    /// Series of a univariate polynomial with nonnegative exponents.
    pub fn from_poly(ctx: SeriesCtx, f: &LaurentPoly<ResidueInt>) -> Result<Self> {
        if f.arity() != 1 {
            return Err(Error::ArityMismatch(f.arity(), 1));
        }
        let mut coeffs = vec![ResidueInt::zero_in(&ctx.modulus); ctx.order];
        for (e, c) in f.terms() {
            let k = e.get(0);
            if k < 0 {
                return Err(Error::Invalid(format!("negative power t^{k} in a power series")));
            }
            if (k as usize) < ctx.order {
                coeffs[k as usize] = c.reduce_to(ctx.modulus)?;
            }
        }
        Ok(TruncSeries { ctx, coeffs })
    }

    /// As [`TruncSeries::from_poly`], embedding p-integral rationals.
    pub fn from_rational_poly(ctx: SeriesCtx, f: &LaurentPoly<PRational>) -> Result<Self> {
        let m = ctx.modulus;
        let g = f.try_map_coeffs(&m, |c| embed_rational(c, m))?;
        Self::from_poly(ctx, &g)
    }

    pub fn series_ctx(&self) -> SeriesCtx {
        self.ctx
    }

    pub fn modulus(&self) -> Modulus {
        self.ctx.modulus
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn coeff(&self, k: usize) -> ResidueInt {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| ResidueInt::zero_in(&self.ctx.modulus))
    }

    pub fn coeffs(&self) -> &[ResidueInt] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: ResidueInt) {
        assert_eq!(c.modulus(), self.ctx.modulus);
        if k < self.ctx.order {
            self.coeffs[k] = c;
        }
    }

    /// Image under `t^T -> t^{T'}` for `T' <= T`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.ctx.order || order == 0 {
            return Err(Error::Precision(format!(
                "cannot truncate order {} to {order}",
                self.ctx.order
            )));
        }
        let ctx = SeriesCtx { order, ..self.ctx };
        Ok(TruncSeries {
            ctx,
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    /// Image under `p^s -> p^{s'}` for `s' <= s`.
    pub fn reduce(&self, s: u32) -> Result<Self> {
        let modulus = self.ctx.modulus.with_precision(s)?;
        let coeffs = self.coeffs.iter().map(|c| c.reduce(s)).collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries {
            ctx: SeriesCtx { modulus, ..self.ctx },
            coeffs,
        })
    }

    /// Substitution `t -> t^q`; terms pushed beyond the order are dropped.
    pub fn frobenius_by(&self, q: u64) -> Self {
        let mut out = vec![ResidueInt::zero_in(&self.ctx.modulus); self.ctx.order];
        for (k, c) in self.coeffs.iter().enumerate() {
            let target = k as u128 * q as u128;
            if target >= self.ctx.order as u128 {
                break;
            }
            out[target as usize] = *c;
        }
        TruncSeries {
            ctx: self.ctx,
            coeffs: out,
        }
    }

    /// `t -> t^p` with `p` the prime of the modulus.
    pub fn frobenius(&self) -> Self {
        self.frobenius_by(self.ctx.p())
    }

    /// `t d/dt`.
    pub fn derive(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.times(&ResidueInt::from_u128(
                    self.ctx.modulus,
                    k as u128 % self.ctx.modulus.value(),
                ))
            })
            .collect();
        TruncSeries { ctx: self.ctx, coeffs }
    }

    /// `d/dt`; the result has order `T - 1` since the top coefficient is unknown.
    pub fn ddt(&self) -> Result<Self> {
        if self.ctx.order < 2 {
            return Err(Error::Precision("d/dt needs order at least 2".into()));
        }
        let ctx = SeriesCtx {
            order: self.ctx.order - 1,
            ..self.ctx
        };
        let coeffs = (1..self.ctx.order)
            .map(|k| {
                self.coeffs[k].times(&ResidueInt::from_u128(
                    self.ctx.modulus,
                    k as u128 % self.ctx.modulus.value(),
                ))
            })
            .collect();
        Ok(TruncSeries { ctx, coeffs })
    }

    /// Value of the truncated polynomial at `t0`.
    pub fn eval(&self, t0: &ResidueInt) -> ResidueInt {
        let t0 = t0
            .reduce_to(self.ctx.modulus)
            .expect("evaluation point has lower precision than the series");
        let mut acc = ResidueInt::zero_in(&self.ctx.modulus);
        for c in self.coeffs.iter().rev() {
            acc = acc.times(&t0).plus(c);
        }
        acc
    }

    /// Lowest `k` where the coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        (0..self.ctx.order.max(other.ctx.order)).find(|&k| self.coeff(k) != other.coeff(k))
    }

    pub fn display_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            parts.push(match (k, c.value()) {
                (0, _) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, _) => format!("{c}*{var}"),
                (_, 1) => format!("{var}^{k}"),
                _ => format!("{c}*{var}^{k}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + O(t^{}) mod {}",
            self.display_in("t"),
            self.ctx.order,
            self.ctx.modulus
        )
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl Ring for TruncSeries {
    type Ctx = SeriesCtx;

    fn ctx(&self) -> SeriesCtx {
        self.ctx
    }

    fn zero_in(ctx: &SeriesCtx) -> Self {
        TruncSeries {
            ctx: *ctx,
            coeffs: vec![ResidueInt::zero_in(&ctx.modulus); ctx.order],
        }
    }

    fn one_in(ctx: &SeriesCtx) -> Self {
        Self::from_bigint(ctx, &BigInt::from(1))
    }

    fn from_bigint(ctx: &SeriesCtx, n: &BigInt) -> Self {
        let mut s = Self::zero_in(ctx);
        s.coeffs[0] = ResidueInt::new(ctx.modulus, n);
        s
    }

    fn vanishes(&self) -> bool {
        self.coeffs.iter().all(|c| c.vanishes())
    }

    fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx, "series context mismatch");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect();
        TruncSeries { ctx: self.ctx, coeffs }
    }

    fn minus(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx, "series context mismatch");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.minus(b)).collect();
        TruncSeries { ctx: self.ctx, coeffs }
    }

    fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx, "series context mismatch");
        let t = self.ctx.order;
        let mut out = vec![ResidueInt::zero_in(&self.ctx.modulus); t];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in rhs.coeffs[..t - i].iter().enumerate() {
                if !b.vanishes() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        TruncSeries {
            ctx: self.ctx,
            coeffs: out,
        }
    }

    fn negate(&self) -> Self {
        TruncSeries {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }
}

impl LocalRing for TruncSeries {
    fn inverse(&self) -> Option<Self> {
        let inv0 = self.coeffs[0].inverse()?;
        let t = self.ctx.order;
        let mut g = vec![ResidueInt::zero_in(&self.ctx.modulus); t];
        g[0] = inv0;
        for k in 1..t {
            let mut acc = ResidueInt::zero_in(&self.ctx.modulus);
            for j in 1..=k {
                if !self.coeffs[j].vanishes() {
                    acc = acc.plus(&self.coeffs[j].times(&g[k - j]));
                }
            }
            g[k] = acc.times(&inv0).negate();
        }
        Some(TruncSeries {
            ctx: self.ctx,
            coeffs: g,
        })
    }

    fn residue(&self) -> String {
        self.coeffs[0].residue()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    p: u64,
    s: u32,
    #[serde(rename = "T")]
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            p: self.ctx.modulus.p(),
            s: self.ctx.modulus.s(),
            order: self.ctx.order,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SeriesRepr::deserialize(de)?;
        let modulus = Modulus::new(r.p, r.s).map_err(D::Error::custom)?;
        let ctx = SeriesCtx::new(modulus, r.order).map_err(D::Error::custom)?;
        if r.coeffs.len() != r.order {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, got {}",
                r.order,
                r.coeffs.len()
            )));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map(|n| ResidueInt::new(modulus, &n)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(TruncSeries { ctx, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, s: u32, t: usize) -> SeriesCtx {
        SeriesCtx::new(Modulus::new(p, s).unwrap(), t).unwrap()
    }

    #[test]
    fn geometric_inverse() {
        let c = ctx(5, 2, 4);
        let f = TruncSeries::from_i64s(c, &[1, -1]);
        assert_eq!(f.inverse().unwrap(), TruncSeries::from_i64s(c, &[1, 1, 1, 1]));
    }

    #[test]
    fn inverse_of_one_plus_3t() {
        let c = ctx(3, 2, 3);
        let f = TruncSeries::from_i64s(c, &[1, 3]);
        assert_eq!(f.inverse().unwrap(), TruncSeries::from_i64s(c, &[1, -3]));
    }

    #[test]
    fn non_unit_has_no_inverse() {
        let c = ctx(3, 2, 3);
        assert!(TruncSeries::from_i64s(c, &[0, 1, 1]).inverse().is_none());
        assert!(TruncSeries::from_i64s(c, &[3, 1]).inverse().is_none());
    }

    #[test]
    fn frobenius_and_derive() {
        let c = ctx(2, 1, 6);
        let f = TruncSeries::from_i64s(c, &[1, 1, 1]);
        assert_eq!(f.frobenius(), TruncSeries::from_i64s(c, &[1, 0, 1, 0, 1]));
        let c = ctx(7, 1, 4);
        let g = TruncSeries::from_i64s(c, &[1, 2, 3]);
        assert_eq!(g.derive(), TruncSeries::from_i64s(c, &[0, 2, 6]));
        assert_eq!(g.ddt().unwrap(), TruncSeries::from_i64s(ctx(7, 1, 3), &[2, 6]));
        let k = TruncSeries::from_i64s(c, &[4]);
        assert_eq!(k.frobenius(), k);
    }

    #[test]
    fn evaluation_and_display() {
        let c = ctx(5, 2, 5);
        let f = TruncSeries::from_i64s(c, &[1, 4, 1]);
        assert_eq!(f.eval(&ResidueInt::from_i64(c.modulus(), 2)).value(), 13);
        assert_eq!(f.to_string(), "1 + 4*t + t^2");
    }

    #[test]
    fn json_round_trip() {
        let f = TruncSeries::from_i64s(ctx(5, 2, 4), &[1, 24, 0, 7]);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"p":5,"s":2,"T":4,"coeffs":["1","24","0","7"]}"#);
        let back: TruncSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }
}
