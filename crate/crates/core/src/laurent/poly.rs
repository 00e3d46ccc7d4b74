use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::exponent::{ExponentVec, MAX_ARITY};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::ring::{LocalRing, Ring};

/// Arity, optional variable names and the coefficient context of a
/// Laurent polynomial ring. Names are cosmetic and ignored by equality.
#[derive(Clone, Debug)]
pub struct PolyCtx<K> {
    arity: usize,
    names: Option<Arc<[String]>>,
    inner: K,
}

impl<K: PartialEq> PartialEq for PolyCtx<K> {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.inner == other.inner
    }
}

impl<K> PolyCtx<K> {
    pub fn new(arity: usize, inner: K) -> Self {
        assert!(arity <= MAX_ARITY, "arity {arity} exceeds {MAX_ARITY}");
        PolyCtx {
            arity,
            names: None,
            inner,
        }
    }

    pub fn named(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.arity);
        self.names = Some(names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into());
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn inner(&self) -> &K {
        &self.inner
    }

    pub fn names(&self) -> Vec<String> {
        match &self.names {
            Some(n) => n.to_vec(),
            None => default_names(self.arity),
        }
    }
}

fn default_names(arity: usize) -> Vec<String> {
    match arity {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// Sparse Laurent polynomial with coefficients in `C`; zero coefficients
/// are never stored.
#[derive(Clone, Debug)]
pub struct LaurentPoly<C: Ring> {
    ctx: PolyCtx<C::Ctx>,
    terms: BTreeMap<ExponentVec, C>,
}

impl<C: Ring> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.arity == other.ctx.arity && self.terms == other.terms
    }
}

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(ctx: &PolyCtx<C::Ctx>) -> Self {
        LaurentPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &PolyCtx<C::Ctx>, c: C) -> Self {
        Self::monomial(ctx, ExponentVec::zeros(ctx.arity), c)
    }

    pub fn one(ctx: &PolyCtx<C::Ctx>) -> Self {
        Self::constant(ctx, C::one_in(&ctx.inner))
    }

    pub fn monomial(ctx: &PolyCtx<C::Ctx>, e: ExponentVec, c: C) -> Self {
        assert_eq!(e.arity(), ctx.arity, "exponent arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.vanishes() {
            terms.insert(e, c);
        }
        LaurentPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The `i`-th variable.
    pub fn variable(ctx: &PolyCtx<C::Ctx>, i: usize) -> Self {
        Self::monomial(ctx, ExponentVec::unit(ctx.arity, i), C::one_in(&ctx.inner))
    }

    /// Sum of the given terms; repeated exponents are added together.
    pub fn from_terms(ctx: &PolyCtx<C::Ctx>, terms: impl IntoIterator<Item = (ExponentVec, C)>) -> Self {
        let mut map: BTreeMap<ExponentVec, C> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.arity(), ctx.arity, "exponent arity mismatch");
            match map.get_mut(&e) {
                Some(slot) => slot.accumulate(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| !c.vanishes());
        LaurentPoly {
            ctx: ctx.clone(),
            terms: map,
        }
    }

    pub fn poly_ctx(&self) -> &PolyCtx<C::Ctx> {
        &self.ctx
    }

    pub fn arity(&self) -> usize {
        self.ctx.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, &C)> {
        self.terms.iter()
    }

    pub fn coeff_ref(&self, e: &ExponentVec) -> Option<&C> {
        self.terms.get(e)
    }

    /// Coefficient of `x^e` (ring zero when absent).
    pub fn coeff(&self, e: &ExponentVec) -> C {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| C::zero_in(&self.ctx.inner))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&ExponentVec::zeros(self.arity()))
    }

    pub fn support(&self) -> Vec<ExponentVec> {
        self.terms.keys().copied().collect()
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        if self.terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        LatticePolytope::hull(&self.support())
    }

    /// Exact product; errors on arity mismatch.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.arity() != rhs.arity() {
            return Err(Error::ArityMismatch(self.arity(), rhs.arity()));
        }
        let mut acc: HashMap<ExponentVec, C> = HashMap::with_capacity(self.len() * rhs.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let prod = ca.times(cb);
                if prod.vanishes() {
                    continue;
                }
                match acc.entry(*ea + *eb) {
                    std::collections::hash_map::Entry::Occupied(mut o) => o.get_mut().accumulate(&prod),
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.vanishes()).collect();
        Ok(LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, e: u64) -> Self {
        Ring::pow(self, e)
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (*e, x.times(c)))
            .filter(|(_, x)| !x.vanishes())
            .collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &ExponentVec) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k + *e, c.clone())).collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn map_coeffs<D: Ring>(&self, inner: &D::Ctx, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        self.try_map_coeffs(inner, |c| Ok(f(c))).expect("infallible")
    }

    pub fn try_map_coeffs<D: Ring>(&self, inner: &D::Ctx, f: impl Fn(&C) -> Result<D>) -> Result<LaurentPoly<D>> {
        let ctx = PolyCtx {
            arity: self.ctx.arity,
            names: self.ctx.names.clone(),
            inner: inner.clone(),
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = f(c)?;
            if !d.vanishes() {
                terms.insert(*e, d);
            }
        }
        Ok(LaurentPoly { ctx, terms })
    }

    pub fn filter_terms(&self, keep: impl Fn(&ExponentVec, &C) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, c)| keep(e, c))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Self {
        let unit = ExponentVec::unit(self.arity(), i);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(i) != 0)
            .map(|(e, c)| (*e - unit, c.scale_int(&BigInt::from(e.get(i)))))
            .filter(|(_, c)| !c.vanishes())
            .collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// `x_i d/dx_i`.
    pub fn log_derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.scale_int(&BigInt::from(e.get(i)))))
            .filter(|(_, c)| !c.vanishes())
            .collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Largest total degree appearing, for polynomials with nonnegative exponents.
    pub fn max_exponent(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.get(i)).max()
    }

    pub fn min_exponent(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.get(i)).min()
    }

    /// Replace the variable names used for display.
    pub fn with_names(mut self, names: &[&str]) -> Self {
        self.ctx = self.ctx.named(names);
        self
    }
}

impl<C: LocalRing> LaurentPoly<C> {
    /// Value at a point; `None` if a negative power hits a non-unit.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        assert_eq!(point.len(), self.arity());
        let mut acc = C::zero_in(&self.ctx.inner);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, x) in point.iter().enumerate() {
                let k = e.get(i);
                let base = if k < 0 { x.inverse()? } else { x.clone() };
                term = term.times(&base.pow(k.unsigned_abs()));
            }
            acc.accumulate(&term);
        }
        Some(acc)
    }
}

impl<C: LocalRing> LaurentPoly<LaurentPoly<C>> {
    /// Substitute values for the parameter (coefficient) variables.
    pub fn specialize_params(&self, point: &[C], inner: &C::Ctx) -> Option<LaurentPoly<C>> {
        let ctx = PolyCtx {
            arity: self.ctx.arity,
            names: self.ctx.names.clone(),
            inner: inner.clone(),
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = c.eval(point)?;
            if !v.vanishes() {
                terms.insert(*e, v);
            }
        }
        Some(LaurentPoly { ctx, terms })
    }
}

impl<C: Ring> Ring for LaurentPoly<C> {
    type Ctx = PolyCtx<C::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }

    fn zero_in(ctx: &Self::Ctx) -> Self {
        LaurentPoly::zero(ctx)
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        LaurentPoly::one(ctx)
    }

    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self {
        LaurentPoly::constant(ctx, C::from_bigint(&ctx.inner, n))
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.accumulate(rhs);
        out
    }

    fn accumulate(&mut self, rhs: &Self) {
        assert_eq!(self.arity(), rhs.arity(), "arity mismatch");
        for (e, c) in &rhs.terms {
            match self.terms.get_mut(e) {
                Some(slot) => {
                    slot.accumulate(c);
                    if slot.vanishes() {
                        self.terms.remove(e);
                    }
                }
                None => {
                    self.terms.insert(*e, c.clone());
                }
            }
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("arity mismatch in Laurent product")
    }

    fn negate(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, c.negate())).collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&C::from_bigint(&self.ctx.inner, n))
    }
}

impl<C: Ring> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ctx.names();
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mut mono = Vec::new();
            for (i, &k) in e.as_slice().iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(names[i].clone()),
                    k => mono.push(format!("{}^{}", names[i], k)),
                }
            }
            let cs = c.to_string();
            let compound = cs.contains(" + ") || cs.contains(" - ");
            let term = if mono.is_empty() {
                cs
            } else if c.is_unity() {
                mono.join("*")
            } else if cs == "-1" {
                format!("-{}", mono.join("*"))
            } else if compound {
                format!("({cs})*{}", mono.join("*"))
            } else {
                format!("{cs}*{}", mono.join("*"))
            };
            if idx == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        write!(f, "{out}")
    }
}
