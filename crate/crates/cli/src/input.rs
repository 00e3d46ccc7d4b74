use std::fs;
use std::path::PathBuf;

use clap::Args;
use periodcong::ahyp::{AConfig, AConfigJson, AMu};
use periodcong::builtins::Builtin;
use periodcong::hwdwork::constant_coeffs;
use periodcong::laurent::{LaurentPoly, PolyCtx, PolyJson};
use periodcong::ring::Ring;
use periodcong::{Error, RatParamPoly, RatPoly, Result};

/// Where the polynomial or configuration comes from.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// example-1d, dwork-quartic, legendre, section6 or section6-specialized
    #[arg(long, conflicts_with = "input")]
    pub builtin: Option<String>,
    /// JSON file: a polynomial, or {"exponents", "mu"} for ahyp commands
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl Source {
    fn read(&self) -> Result<Option<String>> {
        match &self.input {
            Some(path) => fs::read_to_string(path)
                .map(Some)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display()))),
            None => Ok(None),
        }
    }

    pub fn builtin(&self) -> Result<Option<Builtin>> {
        self.builtin.as_deref().map(str::parse).transpose()
    }

    /// The polynomial `f`, possibly with parameters.
    pub fn poly(&self) -> Result<RatParamPoly> {
        if let Some(b) = self.builtin()? {
            return Ok(b.poly());
        }
        match self.read()? {
            Some(text) => PolyJson::parse(&text)?.to_poly(),
            None => Err(Error::Invalid("one of --builtin or --input is required".into())),
        }
    }

    /// The Laurent polynomial `g` of a `1 - t g` family.
    pub fn g(&self) -> Result<RatPoly> {
        if let Some(b) = self.builtin()? {
            return b.g().ok_or_else(|| {
                Error::Invalid(format!(
                    "builtin {b} is not of the form 1 - t g; use example-1d or dwork-quartic"
                ))
            });
        }
        let f = self.poly()?;
        if f.poly_ctx().inner().arity() == 0 {
            constant_coeffs(&f)
        } else {
            g_of_family(&f)
        }
    }

    /// Configuration and the `mu` stored with it, if any.
    pub fn config(&self) -> Result<(AConfig, Option<AMu>)> {
        if let Some(b) = self.builtin()? {
            let ex = b
                .exponents()
                .ok_or_else(|| Error::Invalid(format!("builtin {b} is not an exponent configuration; use section6")))?;
            return Ok((AConfig::new(&ex)?, None));
        }
        match self.read()? {
            Some(text) => {
                let j = AConfigJson::parse(&text)?;
                Ok((j.config()?, j.mu))
            }
            None => Err(Error::Invalid("one of --builtin or --input is required".into())),
        }
    }
}

/// `side:index`, `side` or `index`.
pub fn parse_perturb(s: &str) -> Result<(String, Option<usize>)> {
    let bad = || Error::Invalid(format!("bad --perturb {s:?}; expected side:index"));
    match s.split_once(':') {
        Some((side, k)) => Ok((side.trim().to_string(), Some(k.trim().parse().map_err(|_| bad())?))),
        None => match s.trim().parse::<usize>() {
            Ok(k) => Ok((String::new(), Some(k))),
            Err(_) if !s.trim().is_empty() => Ok((s.trim().to_string(), None)),
            Err(_) => Err(bad()),
        },
    }
}

/// `g` from `f = 1 - t g` in a single parameter `t`.
fn g_of_family(f: &RatParamPoly) -> Result<RatPoly> {
    let bad = || Error::Invalid("expected f = 1 - t g with g free of t".into());
    if f.poly_ctx().inner().arity() != 1 {
        return Err(bad());
    }
    let names = f.poly_ctx().names();
    let ctx = PolyCtx::new(names.len(), ()).named(&names.iter().map(String::as_str).collect::<Vec<_>>());
    let mut terms = Vec::new();
    let mut unit = false;
    for (e, c) in f.terms() {
        for (pe, pc) in c.terms() {
            match pe.get(0) {
                0 if e.is_zero() && pc.is_unity() => unit = true,
                1 => terms.push((*e, pc.negate())),
                _ => return Err(bad()),
            }
        }
    }
    if !unit {
        return Err(bad());
    }
    Ok(LaurentPoly::from_terms(&ctx, terms))
}
