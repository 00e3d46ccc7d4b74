use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::builtins::config_poly;
use crate::error::{Error, Result};
use crate::exactnum::PRational;
use crate::intmat::{self, IntMatrix};
use crate::laurent::{ExponentVec, ParamPoly, MAX_ARITY};
use crate::polytope::{combinations, open_subset, LatticePolytope, MuSpec, OpenSubset};
use crate::seriesring::ConeShape;

/// Integer kernel of an integer matrix given by rows, as a list of basis vectors.
pub fn ah_kernel_lattice(a_tilde: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = a_tilde.first().map_or(0, Vec::len);
    intmat::to_i64(&intmat::kernel_basis(&intmat::from_i64(a_tilde), cols))
}

/// Monomials `v_r x^{a_r}`, `r = 1..N`, of a Laurent polynomial with
/// indeterminate coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AConfig {
    exponents: Vec<ExponentVec>,
    a_tilde: Vec<Vec<i64>>,
    kernel: Vec<Vec<i64>>,
}

impl AConfig {
    pub fn new(exponents: &[Vec<i64>]) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptySupport);
        }
        if exponents.len() > MAX_ARITY {
            return Err(Error::Dimension(exponents.len(), MAX_ARITY));
        }
        let n = exponents[0].len();
        if let Some(bad) = exponents.iter().find(|a| a.len() != n) {
            return Err(Error::ArityMismatch(bad.len(), n));
        }
        let exps = exponents
            .iter()
            .map(|a| ExponentVec::new(a))
            .collect::<Result<Vec<_>>>()?;
        let mut a_tilde = vec![vec![1; exps.len()]];
        for x in 0..n {
            a_tilde.push(exps.iter().map(|a| a.get(x)).collect());
        }
        let kernel = ah_kernel_lattice(&a_tilde);
        Ok(AConfig {
            exponents: exps,
            a_tilde,
            kernel,
        })
    }

    pub fn dim(&self) -> usize {
        self.a_tilde.len() - 1
    }

    /// Number of monomials `N`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[ExponentVec] {
        &self.exponents
    }

    pub fn exponent(&self, r: usize) -> &ExponentVec {
        &self.exponents[r]
    }

    /// Rows of the `(n+1) x N` matrix with columns `(1, a_r)`.
    pub fn a_tilde(&self) -> &[Vec<i64>] {
        &self.a_tilde
    }

    pub fn column(&self, r: usize) -> Vec<i64> {
        self.a_tilde.iter().map(|row| row[r]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|r| self.column(r)).collect()
    }

    pub fn kernel(&self) -> &[Vec<i64>] {
        &self.kernel
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel.len()
    }

    pub fn in_kernel(&self, l: &[i64]) -> bool {
        self.a_tilde
            .iter()
            .all(|row| row.iter().zip(l).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    /// `sum_r v_r x^{a_r}`.
    pub fn polynomial(&self) -> ParamPoly<PRational> {
        config_poly(&self.exponents.iter().map(ExponentVec::to_vec).collect::<Vec<_>>())
    }

    pub fn int_polynomial(&self) -> ParamPoly<BigInt> {
        let f = self.polynomial();
        let inner = f.poly_ctx().inner().clone();
        let inner = crate::laurent::PolyCtx::new(inner.arity(), ())
            .named(&inner.names().iter().map(String::as_str).collect::<Vec<_>>());
        f.map_coeffs(&inner, |c| {
            c.map_coeffs(&(), |q| q.to_integer().expect("integer coefficient"))
        })
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::hull(&self.exponents)
    }

    /// A pair `(k, i)` of distinct columns with equal exponents.
    pub fn duplicate(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for k in i + 1..self.len() {
                if self.exponents[i] == self.exponents[k] {
                    return Some((k, i));
                }
            }
        }
        None
    }

    /// The open subset for `mu` and the (0-based, increasing) columns `j`
    /// with `a_j` in it; each lattice point of `mu` must be exactly one `a_j`.
    pub fn columns_in(&self, mu: &AMu) -> Result<(OpenSubset, Vec<usize>)> {
        let hull = self.newton_polytope()?;
        let subset = match mu {
            AMu::Spec(spec) => open_subset(&hull, spec)?,
            AMu::Columns(idx) => {
                let mut points = Vec::new();
                for &j in idx {
                    if j == 0 || j > self.len() {
                        return Err(Error::Invalid(format!("column index {j} outside 1..={}", self.len())));
                    }
                    points.push(self.exponents[j - 1]);
                }
                open_subset(&hull, &MuSpec::Points { points })?
            }
        };
        let mut cols = Vec::new();
        for u in subset.points() {
            let hits: Vec<usize> = (0..self.len()).filter(|&j| self.exponents[j] == *u).collect();
            match hits.len() {
                0 => {
                    return Err(Error::Hypothesis(format!(
                        "lattice point {u} of mu is not an exponent of the configuration"
                    )))
                }
                1 => cols.push(hits[0]),
                _ => {
                    return Err(Error::Hypothesis(format!(
                        "lattice point {u} of mu is a repeated exponent"
                    )))
                }
            }
        }
        if cols.is_empty() {
            return Err(Error::Hypothesis("mu has no lattice points".into()));
        }
        cols.sort_unstable();
        Ok((subset, cols))
    }

    /// An integer grading, positive on the nonzero keys of the cone, shifted
    /// along the row space of the extended matrix to make its largest entry
    /// small. `None` when two exponents coincide.
    pub fn grading(&self) -> Option<Vec<i64>> {
        if self.duplicate().is_some() {
            return None;
        }
        let base: Vec<BigInt> = self
            .exponents
            .iter()
            .map(|a| BigInt::from(a.dot(&a.to_vec())))
            .collect();
        let rows = intmat::from_i64(&self.a_tilde);
        let mut best: (PRational, Vec<BigInt>) = (max_abs(&base, &BigInt::from(1)), base.clone());
        let size = rows.len();
        for subset in combinations(self.len(), size) {
            let sq: IntMatrix = rows
                .iter()
                .map(|r| subset.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let det = intmat::det(&sq);
            if det == BigInt::from(0) {
                continue;
            }
            // y^T = w_S adj(sq) / det, shifted grading = (det w - y^T det A) / det
            let adj = adjugate(&sq);
            let w_s: Vec<BigInt> = subset.iter().map(|&c| base[c].clone()).collect();
            let y: Vec<BigInt> = (0..size)
                .map(|t| (0..size).map(|q| &w_s[q] * &adj[q][t]).sum())
                .collect();
            let shifted: Vec<BigInt> = (0..self.len())
                .map(|c| &det * &base[c] - (0..size).map(|t| &y[t] * &rows[t][c]).sum::<BigInt>())
                .collect();
            let score = max_abs(&shifted, &det);
            if score < best.0 {
                best = (score, shifted);
            }
        }
        let mut g = best.1;
        let d = g
            .iter()
            .fold(BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, x));
        if d > BigInt::from(1) {
            g.iter_mut().for_each(|x| *x = &*x / &d);
        }
        Some(
            g.iter()
                .map(|x| i64::try_from(x).expect("grading fits in i64"))
                .collect(),
        )
    }

    /// Grade window covering every key of weight `<= weight`: the sum of
    /// positive and of negative parts of a kernel vector are equal, so the
    /// grade is at most `2 |g|_inf |l|`.
    pub fn cone_shape(&self, weight: u64) -> Result<ConeShape> {
        let g = self.grading().ok_or_else(|| {
            let (k, i) = self.duplicate().expect("duplicate");
            Error::Hypothesis(format!(
                "exponents a{} and a{} coincide: the cone is not pointed",
                i + 1,
                k + 1
            ))
        })?;
        let norm = g.iter().map(|x| x.abs()).max().unwrap_or(0);
        ConeShape::new(self.columns(), g, 2 * norm * weight as i64)
    }
}

fn max_abs(v: &[BigInt], den: &BigInt) -> PRational {
    let m = v.iter().map(num_traits::Signed::abs).max().unwrap_or_default();
    PRational::new(m, num_traits::Signed::abs(den)).expect("nonzero denominator")
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    // adj[r][c] = (-1)^{r+c} det(m without row c, column r)
                    let minor: IntMatrix = m
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != c)
                        .map(|(_, row)| {
                            row.iter()
                                .enumerate()
                                .filter(|(j, _)| *j != r)
                                .map(|(_, x)| x.clone())
                                .collect()
                        })
                        .collect();
                    let d = intmat::det(&minor);
                    if (r + c) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect()
}

/// Choice of `mu` for a configuration: a polytope spec, or 1-based columns
/// whose exponents form `mu_Z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AMu {
    Columns(Vec<usize>),
    Spec(MuSpec),
}

impl AMu {
    /// `all`, `interior`, faces as `0,1;2`, or columns as `c:2,5`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().strip_prefix("c:") {
            Some(list) => list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Invalid(format!("bad column index {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(AMu::Columns),
            None => MuSpec::parse(s).map(AMu::Spec),
        }
    }
}

/// `{"exponents": [[...], ...], "mu": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AConfigJson {
    pub exponents: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<AMu>,
}

impl AConfigJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("configuration JSON: {e}")))
    }

    pub fn config(&self) -> Result<AConfig> {
        AConfig::new(&self.exponents)
    }
}
