use clap::{Args, Subcommand};
use serde_json::json;

use periodcong::ahyp::{
    ah_cone_check, ah_period_series, ah_psi_tilde, ah_psi_tilde_ct_oracle, ah_psi_tilde_exact, ah_psi_tilde_int,
    ah_verify_main5, AConfig, AMu, Main5Config,
};
use periodcong::exactnum::Modulus;
use periodcong::hwdwork::{
    any_m_inputs, ct_residues, derivative_inputs, embed_param_poly, hw_beta_matrix, hw_ct_sequence, hw_gamma_matrix,
    hw_unit_root_ct, hw_unit_root_legendre, hw_verify_limits, mev_inputs, CongruenceReport, LimitsConfig, Phi,
};
use periodcong::laurent::{ExponentVec, LaurentPoly};
use periodcong::polytope::{open_subset, MuSpec, OpenSubset};
use periodcong::ring::Ring;
use periodcong::seriesring::PeriodMatrix;
use periodcong::{Error, RatParamPoly, Result};

use crate::input::{parse_perturb, Source};
use crate::{Outcome, Output};

#[derive(Args, Debug)]
pub struct HwArgs {
    #[command(flatten)]
    pub src: Source,
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value = "interior")]
    pub mu: String,
    /// ones, coefficients, or auto (coefficients when all are nonzero)
    #[arg(long, default_value = "auto")]
    pub phi: String,
    /// Reduce modulo p^s
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct CtSeqArgs {
    #[command(flatten)]
    pub src: Source,
    /// Last index K
    #[arg(long = "K", default_value_t = 10)]
    pub k: usize,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub src: Source,
    #[arg(long)]
    pub p: u64,
    /// Series order (default 3p^s, or 3m)
    #[arg(long = "T")]
    pub t: Option<usize>,
    /// Add 1 to one coefficient: `side:k` (sides q, gamma, gamma-lo)
    #[arg(long)]
    pub perturb: Option<String>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Cross-multiplied congruence for m = p^s
    Mev {
        #[command(flatten)]
        args: SeriesArgs,
        #[arg(long)]
        s: u32,
    },
    /// Congruence for an arbitrary m divisible by p
    AnyM {
        #[command(flatten)]
        args: SeriesArgs,
        #[arg(long)]
        m: u64,
    },
    /// Logarithmic-derivative congruence
    Deriv {
        #[command(flatten)]
        args: SeriesArgs,
        #[arg(long)]
        m: u64,
    },
    /// Cauchy property of the Lambda and N approximants
    Limits {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value = "interior")]
        mu: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        smax: u32,
        #[arg(long = "T")]
        t: Option<usize>,
        /// Work at this lift of the parameter instead of with series
        #[arg(long, alias = "z0")]
        t0: Option<i64>,
        #[arg(long, default_value = "ones")]
        phi: String,
        /// Add 1 to coefficient k of entry (0, 0) of beta at the top level
        #[arg(long)]
        perturb: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Frobenius and derivative congruences of the A-hypergeometric matrix
    Main5 {
        #[command(flatten)]
        src: Source,
        /// all, interior, faces, or c:2,5 (1-based columns)
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        smax: u32,
        /// Weight bound
        #[arg(long = "M")]
        weight: u64,
        /// Add 1 to the constant term of entry (1, 1) at the top level
        #[arg(long)]
        perturb: bool,
        #[command(flatten)]
        out: Output,
    },
}

impl VerifyCommand {
    pub fn output(&self) -> &Output {
        match self {
            VerifyCommand::Mev { args, .. } | VerifyCommand::AnyM { args, .. } | VerifyCommand::Deriv { args, .. } => {
                &args.out
            }
            VerifyCommand::Limits { out, .. } | VerifyCommand::Main5 { out, .. } => out,
        }
    }
}

#[derive(Args, Debug)]
pub struct UnitRootArgs {
    /// A `1 - t g` family; without it the Legendre family is used
    #[command(flatten)]
    pub src: Source,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub s: u32,
    /// Legendre parameter
    #[arg(long)]
    pub z0: Option<i64>,
    /// Parameter of a `1 - t g` family
    #[arg(long)]
    pub t0: Option<i64>,
    /// Add 1 to coefficient k of the upper truncation
    #[arg(long)]
    pub perturb: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand, Debug)]
pub enum AhypCommand {
    /// Normalised period matrix, truncated (--m) or to a weight bound
    Psi {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long = "M")]
        weight: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Compute the truncation from constant terms instead of the lattice
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Exponent matrix, kernel lattice, grading and cone check
    Kernel {
        #[command(flatten)]
        src: Source,
        #[arg(long = "M", default_value_t = 6)]
        weight: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Period series for the monomial x^u
    Period {
        #[command(flatten)]
        src: Source,
        /// Exponent vector, comma separated
        #[arg(long)]
        u: String,
        #[arg(long)]
        k: u64,
        /// Column, 1-based
        #[arg(long)]
        i: usize,
        #[arg(long = "M", default_value_t = 6)]
        weight: u64,
        #[command(flatten)]
        out: Output,
    },
}

impl AhypCommand {
    pub fn output(&self) -> &Output {
        match self {
            AhypCommand::Psi { out, .. } | AhypCommand::Kernel { out, .. } | AhypCommand::Period { out, .. } => out,
        }
    }
}

fn mu_of(f: &RatParamPoly, spec: &str) -> Result<OpenSubset> {
    open_subset(&f.newton_polytope()?, &MuSpec::parse(spec)?)
}

fn matrix_block<C: Ring>(title: &str, m: &PeriodMatrix<C>) -> String {
    format!("{title}\n{m}")
}

fn report_outcome(report: CongruenceReport) -> Outcome {
    Outcome {
        text: report.summary(),
        json: serde_json::to_value(&report).expect("report serialises"),
        ok: report.holds,
    }
}

fn choose_phi(f: &RatParamPoly, mu: &OpenSubset, phi: &str) -> Result<bool> {
    match phi {
        "ones" => Ok(false),
        "coefficients" => Ok(true),
        "auto" => Ok(mu.points().iter().all(|v| !f.coeff(v).vanishes())),
        other => Err(Error::Invalid(format!(
            "unknown --phi {other:?}; expected ones, coefficients or auto"
        ))),
    }
}

fn hw_matrices<C: Ring>(
    f: &LaurentPoly<C>,
    mu: &OpenSubset,
    m: u64,
    coefficients: bool,
) -> Result<[PeriodMatrix<C>; 2]> {
    let phi = if coefficients { Phi::Coefficients } else { Phi::Ones };
    Ok([hw_beta_matrix(f, mu, m)?, hw_gamma_matrix(f, mu, m, &phi)?])
}

fn hw_render<C: Ring>(
    f: &LaurentPoly<C>,
    mu: &OpenSubset,
    m: u64,
    coefficients: bool,
    suffix: &str,
) -> Result<Outcome> {
    let [b, g] = hw_matrices(f, mu, m, coefficients)?;
    let phi = if coefficients { "coefficients" } else { "ones" };
    let labels: Vec<String> = mu.points().iter().map(|u| u.to_string()).collect();
    let text = format!(
        "mu_Z = {{{}}}\n{}\n{}",
        labels.join(", "),
        matrix_block(&format!("beta_{m}{suffix}:"), &b),
        matrix_block(&format!("gamma_{m}{suffix} (phi = {phi}):"), &g)
    );
    let json = json!({ "m": m, "mu": labels, "phi": phi, "modulus": Some(suffix.trim()).filter(|m| !m.is_empty()), "beta": b, "gamma": g });
    Ok(Outcome { text, json, ok: true })
}

pub fn hw(a: &HwArgs) -> Result<Outcome> {
    if a.m == 0 {
        return Err(Error::Invalid("--m must be at least 1".into()));
    }
    let f = a.src.poly()?;
    let mu = mu_of(&f, &a.mu)?;
    let coefficients = choose_phi(&f, &mu, &a.phi)?;
    match a.p {
        None => hw_render(&f, &mu, a.m, coefficients, ""),
        Some(p) => {
            let fm = embed_param_poly(&f, Modulus::new(p, a.s)?)?;
            hw_render(&fm, &mu, a.m, coefficients, &format!(" mod {p}^{}", a.s))
        }
    }
}

pub fn ct_seq(a: &CtSeqArgs) -> Result<Outcome> {
    let g = a.src.g()?;
    let values: Vec<String> = match a.p {
        None => hw_ct_sequence(&g, a.k).iter().map(|b| b.to_string()).collect(),
        Some(p) => ct_residues(&g, Modulus::new(p, a.s)?, a.k)?
            .iter()
            .map(|b| b.to_string())
            .collect(),
    };
    let modulus = a.p.map(|p| format!("{p}^{}", a.s));
    let text = format!(
        "b_0..b_{}{}: {}",
        a.k,
        modulus.as_ref().map(|m| format!(" mod {m}")).unwrap_or_default(),
        values.join(", ")
    );
    Ok(Outcome {
        text,
        json: json!({ "g": g.to_string(), "modulus": modulus, "b": values }),
        ok: true,
    })
}

fn series_perturb(spec: &Option<String>) -> Result<Option<(String, usize)>> {
    match spec {
        None => Ok(None),
        Some(s) => match parse_perturb(s)? {
            (side, Some(k)) => Ok(Some((if side.is_empty() { "q".into() } else { side }, k))),
            (_, None) => Err(Error::Invalid(format!("--perturb {s:?} needs a coefficient index"))),
        },
    }
}

pub fn verify(v: &VerifyCommand) -> Result<Outcome> {
    let report = match v {
        VerifyCommand::Mev { args, s } => {
            let g = args.src.g()?;
            let order = args.t.unwrap_or(3 * (args.p.pow(*s) as usize));
            let mut inputs = mev_inputs(&g, args.p, *s, order)?;
            if let Some((side, k)) = series_perturb(&args.perturb)? {
                inputs.perturb(&side, k)?;
            }
            inputs.verify()?
        }
        VerifyCommand::AnyM { args, m } => {
            let g = args.src.g()?;
            let mut inputs = any_m_inputs(&g, args.p, *m, args.t.unwrap_or(3 * *m as usize))?;
            if let Some((side, k)) = series_perturb(&args.perturb)? {
                inputs.perturb(&side, k)?;
            }
            inputs.verify()?
        }
        VerifyCommand::Deriv { args, m } => {
            let g = args.src.g()?;
            let mut inputs = derivative_inputs(&g, args.p, *m, args.t.unwrap_or(3 * *m as usize))?;
            if let Some((side, k)) = series_perturb(&args.perturb)? {
                inputs.perturb(&side, k)?;
            }
            inputs.verify()?
        }
        VerifyCommand::Limits {
            src,
            mu,
            p,
            smax,
            t,
            t0,
            phi,
            perturb,
            ..
        } => {
            let f = src.poly()?;
            let mu = mu_of(&f, mu)?;
            let cfg = LimitsConfig {
                p: *p,
                s_max: *smax,
                order: t.unwrap_or(3 * p.checked_pow(*smax).unwrap_or(0) as usize),
                point: *t0,
                phi_coefficients: choose_phi(&f, &mu, phi)?,
                perturb: *perturb,
            };
            hw_verify_limits(&f, &mu, &cfg)?
        }
        VerifyCommand::Main5 {
            src,
            mu,
            p,
            smax,
            weight,
            perturb,
            ..
        } => {
            let (config, cols) = config_columns(src, mu.as_deref())?;
            let cfg = Main5Config {
                p: *p,
                s_max: *smax,
                weight: *weight,
                perturb: *perturb,
            };
            ah_verify_main5(&config, &cols, &cfg)?
        }
    };
    Ok(report_outcome(report))
}

pub fn unit_root(a: &UnitRootArgs) -> Result<Outcome> {
    let legendre = match a.src.builtin()? {
        Some(b) => b.name() == "legendre",
        None => a.src.input.is_none(),
    };
    let result = if legendre {
        let z0 = a.z0.or(a.t0).ok_or_else(|| Error::Invalid("--z0 is required".into()))?;
        hw_unit_root_legendre(a.p, a.s, z0, a.perturb)?
    } else {
        let t0 = a.t0.or(a.z0).ok_or_else(|| Error::Invalid("--t0 is required".into()))?;
        hw_unit_root_ct(&a.src.g()?, a.p, a.s, t0, a.perturb)?
    };
    Ok(Outcome {
        text: result.summary(),
        json: serde_json::to_value(&result).expect("result serialises"),
        ok: result.consistent(),
    })
}

/// Configuration and the 0-based columns selected by `mu` (default: the
/// `mu` stored in the input, else the interior).
fn config_columns(src: &Source, mu: Option<&str>) -> Result<(AConfig, Vec<usize>)> {
    let (config, stored) = src.config()?;
    let mu = match (mu, stored) {
        (Some(s), _) => AMu::parse(s)?,
        (None, Some(m)) => m,
        (None, None) => AMu::Spec(MuSpec::interior()),
    };
    let (_, cols) = config.columns_in(&mu)?;
    Ok((config, cols))
}

fn column_names(cols: &[usize]) -> Vec<String> {
    cols.iter().map(|c| format!("a{}", c + 1)).collect()
}

pub fn ahyp(c: &AhypCommand) -> Result<Outcome> {
    match c {
        AhypCommand::Psi {
            src,
            mu,
            m,
            weight,
            p,
            s,
            oracle,
            ..
        } => {
            let (config, cols) = config_columns(src, mu.as_deref())?;
            let names = column_names(&cols);
            let (title, matrix) = match (m, p) {
                (Some(m), None) => {
                    let psi = if *oracle {
                        ah_psi_tilde_ct_oracle(&config, &cols, *m)?
                    } else {
                        ah_psi_tilde_exact(&config, &cols, *m)?
                    };
                    let how = if *oracle { "constant terms" } else { "lattice" };
                    (format!("psi_{m} ({how}):"), psi_json(&psi))
                }
                (_, Some(p)) => {
                    if *oracle {
                        return Err(Error::Invalid("--oracle computes exact integers; drop --p".into()));
                    }
                    let w = weight.ok_or_else(|| Error::Invalid("--M is required with --p".into()))?;
                    let psi = ah_psi_tilde(&config, &cols, *m, &config.cone_shape(w)?, Modulus::new(*p, *s)?)?;
                    let name = m.map(|m| format!("psi_{m}")).unwrap_or_else(|| "Psi".into());
                    (format!("{name} mod {p}^{s}, weight <= {w}:"), psi_json(&psi))
                }
                (None, None) => {
                    if *oracle {
                        return Err(Error::Invalid("--oracle needs --m".into()));
                    }
                    let w = weight.ok_or_else(|| Error::Invalid("one of --m or --M is required".into()))?;
                    let psi = ah_psi_tilde_int(&config, &cols, None, &config.cone_shape(w)?)?;
                    (format!("Psi, weight <= {w}:"), psi_json(&psi))
                }
            };
            let (text, json) = matrix;
            Ok(Outcome {
                text: format!("columns: {}\n{title}\n{text}", names.join(", ")),
                json: json!({ "columns": names, "title": title.trim_end_matches(':'), "matrix": json }),
                ok: true,
            })
        }
        AhypCommand::Kernel { src, weight, .. } => {
            let (config, _) = src.config()?;
            let verdict = ah_cone_check(&config, *weight);
            let fmt_rows = |rows: &[Vec<i64>]| rows.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join("\n  ");
            let text = format!(
                "A~ rows:\n  {}\nkernel basis (rank {}):\n  {}\ncone: {}{}",
                fmt_rows(config.a_tilde()),
                config.kernel_rank(),
                fmt_rows(config.kernel()),
                verdict.verdict,
                verdict
                    .grading
                    .as_ref()
                    .map(|g| format!(", grading {g:?}"))
                    .unwrap_or_default()
            );
            let json = json!({
                "a_tilde": config.a_tilde(),
                "kernel": config.kernel(),
                "rank": config.kernel_rank(),
                "cone": verdict,
            });
            Ok(Outcome { text, json, ok: true })
        }
        AhypCommand::Period {
            src, u, k, i, weight, ..
        } => {
            let (config, _) = src.config()?;
            let u = parse_exponent(u)?;
            if *i == 0 || *i > config.len() {
                return Err(Error::Invalid(format!("--i must be between 1 and {}", config.len())));
            }
            let series = ah_period_series(&config, &u, *k, i - 1, *weight)?;
            let text = format!("F(x^{u}) for k = {k}, column a{i}, weight <= {weight}:\n{series}");
            Ok(Outcome {
                text,
                json: json!({ "u": u.to_string(), "k": k, "i": i, "weight": weight, "series": series.to_string() }),
                ok: true,
            })
        }
    }
}

fn psi_json<C: Ring>(m: &PeriodMatrix<C>) -> (String, serde_json::Value) {
    (m.to_string(), serde_json::to_value(m).expect("matrix serialises"))
}

fn parse_exponent(s: &str) -> Result<ExponentVec> {
    let entries = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Invalid(format!("bad exponent vector {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ExponentVec::new(&entries)
}
