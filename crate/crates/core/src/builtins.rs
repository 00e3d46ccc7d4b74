//! Named example inputs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::PRational;
use crate::hwdwork::legendre_poly;
use crate::laurent::{ExponentVec, LaurentPoly, ParamPoly, PolyCtx};
use crate::ring::Ring;

/// Exponents of the five-term configuration in two variables.
pub const SECTION6_EXPONENTS: [[i64; 2]; 5] = [[0, 2], [1, 0], [3, 0], [2, 0], [1, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `g = x + 1/x`, `f = 1 - t g`.
    Example1d,
    /// `g = (x + 1/x)(y + 1/y)/4`, `f = 1 - t g`.
    DworkQuartic,
    /// `f = y^2 - x(x-1)(x-z)`.
    Legendre,
    /// `f = sum v_r x^{a_r}` with the coefficients as parameters.
    Section6,
    /// The same with all `v_r = 1`.
    Section6Specialized,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Example1d,
        Builtin::DworkQuartic,
        Builtin::Legendre,
        Builtin::Section6,
        Builtin::Section6Specialized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Example1d => "example-1d",
            Builtin::DworkQuartic => "dwork-quartic",
            Builtin::Legendre => "legendre",
            Builtin::Section6 => "section6",
            Builtin::Section6Specialized => "section6-specialized",
        }
    }

    /// The Laurent polynomial `g` of a `1 - t g` family.
    pub fn g(self) -> Option<LaurentPoly<PRational>> {
        match self {
            Builtin::Example1d => Some(example_1d_g()),
            Builtin::DworkQuartic => Some(dwork_quartic_g()),
            _ => None,
        }
    }

    /// Exponents of an A-configuration.
    pub fn exponents(self) -> Option<Vec<Vec<i64>>> {
        match self {
            Builtin::Section6 | Builtin::Section6Specialized => {
                Some(SECTION6_EXPONENTS.iter().map(|a| a.to_vec()).collect())
            }
            _ => None,
        }
    }

    /// The polynomial, with any parameters as inner variables.
    pub fn poly(self) -> ParamPoly<PRational> {
        match self {
            Builtin::Example1d => one_minus_t(&example_1d_g()),
            Builtin::DworkQuartic => one_minus_t(&dwork_quartic_g()),
            Builtin::Legendre => legendre_poly(),
            Builtin::Section6 => section6_poly(),
            Builtin::Section6Specialized => section6_specialized(),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| {
            let names: Vec<_> = Builtin::ALL.iter().map(|b| b.name()).collect();
            Error::Invalid(format!("unknown builtin '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

pub fn example_1d_g() -> LaurentPoly<PRational> {
    let ctx = PolyCtx::new(1, ()).named(&["x"]);
    LaurentPoly::from_terms(
        &ctx,
        [
            (ExponentVec::of(&[1]), PRational::from_i64(1)),
            (ExponentVec::of(&[-1]), PRational::from_i64(1)),
        ],
    )
}

pub fn dwork_quartic_g() -> LaurentPoly<PRational> {
    let ctx = PolyCtx::new(2, ()).named(&["x", "y"]);
    let quarter = PRational::ratio(1, 4);
    let terms = [[1, 1], [1, -1], [-1, 1], [-1, -1]].map(|e| (ExponentVec::of(&e), quarter.clone()));
    LaurentPoly::from_terms(&ctx, terms)
}

/// `1 - t g` as a polynomial with parameter `t`.
pub fn one_minus_t(g: &LaurentPoly<PRational>) -> ParamPoly<PRational> {
    let inner = PolyCtx::new(1, ()).named(&["t"]);
    let names = g.poly_ctx().names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let ctx = PolyCtx::new(g.arity(), inner.clone()).named(&names);
    let mut terms = vec![(ExponentVec::zeros(g.arity()), LaurentPoly::one(&inner))];
    for (e, c) in g.terms() {
        terms.push((*e, LaurentPoly::monomial(&inner, ExponentVec::of(&[1]), c.negate())));
    }
    LaurentPoly::from_terms(&ctx, terms)
}

/// `sum_r v_r x^{a_r}` over the given exponents, `v_1..v_N` parameters.
pub fn config_poly(exponents: &[Vec<i64>]) -> ParamPoly<PRational> {
    let n_terms = exponents.len();
    let names: Vec<String> = (1..=n_terms).map(|r| format!("v{r}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let inner = PolyCtx::new(n_terms, ()).named(&names);
    let arity = exponents.first().map_or(0, Vec::len);
    let vars: Vec<String> = match arity {
        0..=3 => ["x", "y", "z"][..arity].iter().map(|v| v.to_string()).collect(),
        _ => (1..=arity).map(|i| format!("x{i}")).collect(),
    };
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let ctx = PolyCtx::new(arity, inner.clone()).named(&vars);
    LaurentPoly::from_terms(
        &ctx,
        exponents
            .iter()
            .enumerate()
            .map(|(r, a)| (ExponentVec::of(a), LaurentPoly::variable(&inner, r))),
    )
}

pub fn section6_poly() -> ParamPoly<PRational> {
    let ex: Vec<Vec<i64>> = SECTION6_EXPONENTS.iter().map(|a| a.to_vec()).collect();
    config_poly(&ex)
}

pub fn section6_specialized() -> ParamPoly<PRational> {
    let inner = PolyCtx::new(0, ());
    let ctx = PolyCtx::new(2, inner.clone()).named(&["x", "y"]);
    LaurentPoly::from_terms(
        &ctx,
        SECTION6_EXPONENTS
            .iter()
            .map(|a| (ExponentVec::of(a), LaurentPoly::one(&inner))),
    )
}
