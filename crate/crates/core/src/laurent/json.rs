//! JSON exchange format for (parametrised) Laurent polynomials:
//!
//! ```json
//! { "core_vars": ["x"], "param_vars": ["t"],
//!   "terms": [ { "exps": [0], "coeff": "1" },
//!              { "exps": [1], "coeff": { "core_vars": [], "param_vars": ["t"],
//!                                         "terms": [ { "exps": [1], "coeff": "-1" } ] } } ] }
//! ```
//!
//! Scalar coefficients are decimal strings (`"a/b"` is accepted for
//! rationals). Inner polynomials have no core variables and their `exps`
//! index `param_vars`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ExponentVec, LaurentPoly, PolyCtx};
use crate::error::{Error, Result};
use crate::exactnum::PRational;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub core_vars: Vec<String>,
    #[serde(default)]
    pub param_vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<i64>,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Scalar(String),
    Poly(Box<PolyJson>),
}

/// Laurent polynomial in the core variables whose coefficients are Laurent
/// polynomials in the parameters.
pub type ParamPoly<C> = LaurentPoly<LaurentPoly<C>>;

fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

impl PolyJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("polynomial JSON: {e}")))
    }

    pub fn to_poly(&self) -> Result<ParamPoly<PRational>> {
        let inner_ctx = PolyCtx::new(self.param_vars.len(), ()).named(&names(&self.param_vars));
        let ctx = PolyCtx::new(self.core_vars.len(), inner_ctx.clone()).named(&names(&self.core_vars));
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exps.len() != self.core_vars.len() {
                return Err(Error::ArityMismatch(t.exps.len(), self.core_vars.len()));
            }
            let coeff = match &t.coeff {
                CoeffJson::Scalar(s) => LaurentPoly::constant(&inner_ctx, PRational::from_str(s)?),
                CoeffJson::Poly(inner) => inner.to_inner(&inner_ctx)?,
            };
            terms.push((ExponentVec::new(&t.exps)?, coeff));
        }
        Ok(LaurentPoly::from_terms(&ctx, terms))
    }

    fn to_inner(&self, ctx: &PolyCtx<()>) -> Result<LaurentPoly<PRational>> {
        if !self.core_vars.is_empty() {
            return Err(Error::Invalid("inner polynomial must have no core variables".into()));
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.exps.len() != ctx.arity() {
                return Err(Error::ArityMismatch(t.exps.len(), ctx.arity()));
            }
            let CoeffJson::Scalar(s) = &t.coeff else {
                return Err(Error::Invalid("inner polynomial coefficients must be scalars".into()));
            };
            terms.push((ExponentVec::new(&t.exps)?, PRational::from_str(s)?));
        }
        Ok(LaurentPoly::from_terms(ctx, terms))
    }

    /// Serialise a parametrised polynomial; coefficients are printed with `Display`.
    pub fn from_poly<C: Ring>(f: &ParamPoly<C>) -> Self {
        let core_vars = f.poly_ctx().names();
        let param_vars = f.poly_ctx().inner().names();
        let terms = f
            .terms()
            .map(|(e, c)| {
                let coeff = if c.len() == 1 && c.coeff_ref(&ExponentVec::zeros(c.arity())).is_some() {
                    CoeffJson::Scalar(c.constant_term().to_string())
                } else {
                    CoeffJson::Poly(Box::new(PolyJson {
                        core_vars: Vec::new(),
                        param_vars: param_vars.clone(),
                        terms: c
                            .terms()
                            .map(|(ie, ic)| TermJson {
                                exps: ie.to_vec(),
                                coeff: CoeffJson::Scalar(ic.to_string()),
                            })
                            .collect(),
                    }))
                };
                TermJson {
                    exps: e.to_vec(),
                    coeff,
                }
            })
            .collect();
        PolyJson {
            core_vars,
            param_vars,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEGENDRE: &str = r#"{
        "core_vars": ["x", "y"], "param_vars": ["z"],
        "terms": [
            { "exps": [0, 2], "coeff": "1" },
            { "exps": [3, 0], "coeff": "-1" },
            { "exps": [2, 0], "coeff": { "core_vars": [], "param_vars": ["z"],
                "terms": [ { "exps": [0], "coeff": "1" }, { "exps": [1], "coeff": "1" } ] } },
            { "exps": [1, 0], "coeff": { "core_vars": [], "param_vars": ["z"],
                "terms": [ { "exps": [1], "coeff": "-1" } ] } }
        ] }"#;

    #[test]
    fn parse_and_emit_fixed_point() {
        let j = PolyJson::parse(LEGENDRE).unwrap();
        let f = j.to_poly().unwrap();
        assert_eq!(f.len(), 4);
        let again = PolyJson::from_poly(&f);
        let g = again.to_poly().unwrap();
        assert_eq!(f, g);
        assert_eq!(PolyJson::from_poly(&g), again);
    }

    #[test]
    fn rational_coefficients() {
        let j =
            PolyJson::parse(r#"{"core_vars":["x"],"terms":[{"exps":[1],"coeff":"1/4"},{"exps":[-1],"coeff":"1/4"}]}"#)
                .unwrap();
        let f = j.to_poly().unwrap();
        assert_eq!(f.coeff(&ExponentVec::of(&[1])).constant_term(), PRational::ratio(1, 4));
    }

    #[test]
    fn rejects_bad_arity() {
        let j = PolyJson::parse(r#"{"core_vars":["x"],"terms":[{"exps":[1,2],"coeff":"1"}]}"#).unwrap();
        assert!(matches!(j.to_poly(), Err(Error::ArityMismatch(2, 1))));
    }
}
