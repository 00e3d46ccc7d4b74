use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::ResidueInt;
use crate::laurent::{ExponentVec, LaurentPoly, PolyCtx};
use crate::ring::{LocalRing, Ring};

/// Lattice data shared by all cone series of one configuration: the
/// columns of the matrix whose kernel carries the keys, an additive
/// grading that is positive on the cone, and the grade bound `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeShape {
    columns: Vec<Vec<i64>>,
    grade: Vec<i64>,
    bound: i64,
}

impl ConeShape {
    pub fn new(columns: Vec<Vec<i64>>, grade: Vec<i64>, bound: i64) -> Result<Self> {
        if columns.len() != grade.len() {
            return Err(Error::Dimension(grade.len(), columns.len()));
        }
        if columns.is_empty() || columns.len() > crate::laurent::MAX_ARITY {
            return Err(Error::Dimension(columns.len(), crate::laurent::MAX_ARITY));
        }
        if bound < 0 {
            return Err(Error::Invalid(format!("negative grade bound {bound}")));
        }
        Ok(ConeShape { columns, grade, bound })
    }

    pub fn arity(&self) -> usize {
        self.columns.len()
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn grading(&self) -> &[i64] {
        &self.grade
    }

    pub fn grade(&self, l: &ExponentVec) -> i64 {
        l.dot(&self.grade)
    }

    pub fn with_bound(&self, bound: i64) -> Result<Self> {
        ConeShape::new(self.columns.clone(), self.grade.clone(), bound)
    }

    /// `Ok(true)` for keys inside the window, `Ok(false)` for valid keys
    /// beyond the bound, `Err` for vectors outside the kernel or the cone.
    pub fn check_key(&self, l: &ExponentVec) -> Result<bool> {
        if l.arity() != self.arity() {
            return Err(Error::ArityMismatch(l.arity(), self.arity()));
        }
        let rows = self.columns[0].len();
        for r in 0..rows {
            let s: i64 = (0..self.arity()).map(|k| self.columns[k][r] * l.get(k)).sum();
            if s != 0 {
                return Err(Error::InvalidKey(format!("{l} is not in the kernel lattice")));
            }
        }
        let g = self.grade(l);
        if g < 0 || (g == 0 && !l.is_zero()) {
            return Err(Error::InvalidKey(format!("{l} is not in the cone (grade {g})")));
        }
        Ok(g <= self.bound)
    }
}

/// Ring context of [`ConeSeries`]: the shared shape plus the coefficient context.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeCtx<K> {
    shape: Arc<ConeShape>,
    inner: K,
}

impl<K> ConeCtx<K> {
    pub fn new(shape: ConeShape, inner: K) -> Self {
        ConeCtx {
            shape: Arc::new(shape),
            inner,
        }
    }

    pub fn shape(&self) -> &ConeShape {
        &self.shape
    }

    pub fn inner(&self) -> &K {
        &self.inner
    }

    pub fn with_inner<L>(&self, inner: L) -> ConeCtx<L> {
        ConeCtx {
            shape: self.shape.clone(),
            inner,
        }
    }
}

/// Power series in `v_1..v_N` supported on the cone, modulo all monomials
/// of grade above the bound.
#[derive(Clone, Debug)]
pub struct ConeSeries<C: Ring> {
    ctx: ConeCtx<C::Ctx>,
    terms: BTreeMap<ExponentVec, C>,
}

impl<C: Ring> PartialEq for ConeSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Ring> ConeSeries<C> {
    pub fn monomial(ctx: &ConeCtx<C::Ctx>, l: ExponentVec, c: C) -> Result<Self> {
        Self::from_terms(ctx, [(l, c)])
    }

    /// Validated sum of terms; keys beyond the grade bound are dropped.
    pub fn from_terms(ctx: &ConeCtx<C::Ctx>, terms: impl IntoIterator<Item = (ExponentVec, C)>) -> Result<Self> {
        let mut map: BTreeMap<ExponentVec, C> = BTreeMap::new();
        for (l, c) in terms {
            if !ctx.shape.check_key(&l)? {
                continue;
            }
            match map.get_mut(&l) {
                Some(slot) => slot.accumulate(&c),
                None => {
                    map.insert(l, c);
                }
            }
        }
        map.retain(|_, c| !c.vanishes());
        Ok(ConeSeries {
            ctx: ctx.clone(),
            terms: map,
        })
    }

    pub fn from_poly(ctx: &ConeCtx<C::Ctx>, f: &LaurentPoly<C>) -> Result<Self> {
        Self::from_terms(ctx, f.terms().map(|(e, c)| (*e, c.clone())))
    }

    pub fn to_poly(&self) -> LaurentPoly<C> {
        let pctx = PolyCtx::new(self.ctx.shape.arity(), self.ctx.inner.clone());
        LaurentPoly::from_terms(&pctx, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    pub fn cone_ctx(&self) -> &ConeCtx<C::Ctx> {
        &self.ctx
    }

    pub fn shape(&self) -> &ConeShape {
        &self.ctx.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVec, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &ExponentVec) -> C {
        self.terms
            .get(l)
            .cloned()
            .unwrap_or_else(|| C::zero_in(&self.ctx.inner))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&ExponentVec::zeros(self.ctx.shape.arity()))
    }

    /// Add `c` to the coefficient of `v^l` (validated key).
    pub fn add_term(&mut self, l: ExponentVec, c: &C) -> Result<()> {
        if !self.ctx.shape.check_key(&l)? {
            return Ok(());
        }
        let slot = self.terms.entry(l).or_insert_with(|| C::zero_in(&self.ctx.inner));
        slot.accumulate(c);
        if slot.vanishes() {
            self.terms.remove(&l);
        }
        Ok(())
    }

    /// Image in the quotient with a smaller grade bound.
    pub fn restrict(&self, bound: i64) -> Result<Self> {
        if bound > self.ctx.shape.bound {
            return Err(Error::Precision(format!(
                "cannot raise grade bound {} to {bound}",
                self.ctx.shape.bound
            )));
        }
        let ctx = ConeCtx::new(self.ctx.shape.with_bound(bound)?, self.ctx.inner.clone());
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| ctx.shape.grade(l) <= bound)
            .map(|(l, c)| (*l, c.clone()))
            .collect();
        Ok(ConeSeries { ctx, terms })
    }

    pub fn try_map_coeffs<D: Ring>(&self, inner: &D::Ctx, f: impl Fn(&C) -> Result<D>) -> Result<ConeSeries<D>> {
        let mut terms = BTreeMap::new();
        for (l, c) in &self.terms {
            let d = f(c)?;
            if !d.vanishes() {
                terms.insert(*l, d);
            }
        }
        Ok(ConeSeries {
            ctx: self.ctx.with_inner(inner.clone()),
            terms,
        })
    }

    /// `v_j -> v_j^p` for all `j`: key `l` goes to `p l`, terms leaving the
    /// window are dropped.
    pub fn frobenius(&self, p: u64) -> Self {
        let bound = self.ctx.shape.bound;
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| self.ctx.shape.grade(l).saturating_mul(p as i64) <= bound)
            .map(|(l, c)| (l.scale(p as i64), c.clone()))
            .collect();
        ConeSeries {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// `v_i d/dv_i`.
    pub fn derive(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(l, c)| (*l, c.scale_int(&BigInt::from(l.get(i)))))
            .filter(|(_, c)| !c.vanishes())
            .collect();
        ConeSeries {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Lowest-grade key where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<ExponentVec> {
        let mut keys: Vec<ExponentVec> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort_by_key(|l| (self.ctx.shape.grade(l), *l));
        keys.dedup();
        keys.into_iter().find(|l| self.coeff(l) != other.coeff(l))
    }

    fn graded(&self) -> Vec<(i64, ExponentVec, &C)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(l, c)| (self.ctx.shape.grade(l), *l, c))
            .collect();
        v.sort_by_key(|(g, _, _)| *g);
        v
    }
}

impl ConeSeries<ResidueInt> {
    /// Image under `p^s -> p^{s'}`.
    pub fn reduce(&self, s: u32) -> Result<Self> {
        let m = self.ctx.inner.with_precision(s)?;
        self.try_map_coeffs(&m, |c| c.reduce(s))
    }
}

impl<C: Ring> Ring for ConeSeries<C> {
    type Ctx = ConeCtx<C::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }

    fn zero_in(ctx: &Self::Ctx) -> Self {
        ConeSeries {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_bigint(ctx, &BigInt::from(1))
    }

    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self {
        let c = C::from_bigint(&ctx.inner, n);
        let mut terms = BTreeMap::new();
        if !c.vanishes() {
            terms.insert(ExponentVec::zeros(ctx.shape.arity()), c);
        }
        ConeSeries {
            ctx: ctx.clone(),
            terms,
        }
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
        for (l, c) in &rhs.terms {
            match self.terms.get_mut(l) {
                Some(slot) => {
                    slot.accumulate(c);
                    if slot.vanishes() {
                        self.terms.remove(l);
                    }
                }
                None => {
                    self.terms.insert(*l, c.clone());
                }
            }
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        debug_assert!(self.ctx.shape == rhs.ctx.shape, "cone shape mismatch");
        let bound = self.ctx.shape.bound;
        let (a, b) = (self.graded(), rhs.graded());
        let mut acc: BTreeMap<ExponentVec, C> = BTreeMap::new();
        for (ga, la, ca) in &a {
            for (gb, lb, cb) in &b {
                if ga + gb > bound {
                    break;
                }
                let prod = ca.times(cb);
                if prod.vanishes() {
                    continue;
                }
                let key = *la + *lb;
                match acc.get_mut(&key) {
                    Some(slot) => slot.accumulate(&prod),
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.vanishes());
        ConeSeries {
            ctx: self.ctx.clone(),
            terms: acc,
        }
    }

    fn negate(&self) -> Self {
        ConeSeries {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(l, c)| (*l, c.negate())).collect(),
        }
    }
}

impl<C: LocalRing> LocalRing for ConeSeries<C> {
    /// Newton iteration `g <- g (2 - f g)` from the inverse of the constant
    /// term; every step doubles the lowest grade of `f g - 1`.
    fn inverse(&self) -> Option<Self> {
        let c0 = self.constant_term().inverse()?;
        let one = Self::one_in(&self.ctx);
        let two = Self::from_bigint(&self.ctx, &BigInt::from(2));
        let mut g = Self::from_terms(&self.ctx, [(ExponentVec::zeros(self.ctx.shape.arity()), c0)]).ok()?;
        for _ in 0..64 {
            let e = self.times(&g);
            if e == one {
                return Some(g);
            }
            g = g.times(&two.minus(&e));
        }
        None
    }

    fn residue(&self) -> String {
        self.constant_term().residue()
    }
}

impl<C: Ring> fmt::Display for ConeSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.ctx.shape.arity()).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.to_poly().with_names(&refs))
    }
}

#[derive(Serialize)]
struct ConeTermRepr {
    ell: Vec<i64>,
    coeff: String,
}

#[derive(Serialize)]
struct ConeSeriesRepr {
    columns: Vec<Vec<i64>>,
    grading: Vec<i64>,
    bound: i64,
    terms: Vec<ConeTermRepr>,
}

impl<C: Ring> Serialize for ConeSeries<C> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ConeSeriesRepr {
            columns: self.ctx.shape.columns.clone(),
            grading: self.ctx.shape.grade.clone(),
            bound: self.ctx.shape.bound,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| ConeTermRepr {
                    ell: l.to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}
