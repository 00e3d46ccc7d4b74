use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, PRational};
use crate::intmat;
use crate::laurent::ExponentVec;
use crate::polytope::combinations;

use super::config::AConfig;

/// `(n-1)!` for `n >= 1`, `(-1)^n / |n|!` for `n <= 0`.
pub fn ah_gamma_star(n: i64) -> PRational {
    if n >= 1 {
        PRational::from_integer(factorial((n - 1) as u64))
    } else {
        let f = factorial(n.unsigned_abs());
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        PRational::new(sign, f).expect("nonzero factorial")
    }
}

/// `1 / Gamma*(n)` as an integer numerator over an integer denominator.
fn gamma_star_recip(n: i64) -> (BigInt, BigInt) {
    if n >= 1 {
        (BigInt::one(), factorial((n - 1) as u64))
    } else {
        let f = factorial(n.unsigned_abs());
        (if n % 2 == 0 { f } else { -f }, BigInt::one())
    }
}

/// `l_j prod_k Gamma*(l_k + 1)^{-1}`, required to be an integer.
pub fn psi_coefficient(l: &ExponentVec, j: usize) -> Result<BigInt> {
    let mut num = BigInt::from(l.get(j));
    let mut den = BigInt::one();
    if num.is_zero() {
        return Ok(num);
    }
    for k in 0..l.arity() {
        let (a, b) = gamma_star_recip(l.get(k) + 1);
        num *= a;
        den *= b;
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Invalid(format!(
            "coefficient of v^{l} in column {} is not an integer",
            j + 1
        )));
    }
    Ok(q)
}

/// Kernel vectors `l` with `l_r >= 0` for `r != i`, `0 < -l_i = d <= cap`,
/// and `l_i > -m` when `m` is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSolutionSet {
    pub pivot: usize,
    pub m: Option<u64>,
    pub cap: u64,
    pub elements: Vec<ExponentVec>,
}

impl LatticeSolutionSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// All `l` with `l_r >= 0` (`r != skip`), `l_skip = 0`, `sum l_r = d` and
/// `sum l_r a_r = target`.
pub(crate) fn solve_nonneg(exps: &[ExponentVec], skip: usize, d: u64, target: &[i64]) -> Vec<Vec<i64>> {
    let free: Vec<usize> = (0..exps.len()).filter(|&r| r != skip).collect();
    let n = target.len();
    // coordinatewise min/max over the suffix free[t..]
    let mut lo = vec![vec![i64::MAX; n]; free.len() + 1];
    let mut hi = vec![vec![i64::MIN; n]; free.len() + 1];
    for t in (0..free.len()).rev() {
        for x in 0..n {
            let a = exps[free[t]].get(x);
            lo[t][x] = lo[t + 1][x].min(a);
            hi[t][x] = hi[t + 1][x].max(a);
        }
    }
    if free.is_empty() {
        return if d == 0 && target.iter().all(|&x| x == 0) {
            vec![vec![0; exps.len()]]
        } else {
            Vec::new()
        };
    }
    let mut search = Search {
        free: &free,
        exps,
        lo: &lo,
        hi: &hi,
        cur: vec![0; exps.len()],
        rest: target.to_vec(),
        out: Vec::new(),
    };
    search.rec(0, d as i64);
    search.out
}

struct Search<'a> {
    free: &'a [usize],
    exps: &'a [ExponentVec],
    lo: &'a [Vec<i64>],
    hi: &'a [Vec<i64>],
    cur: Vec<i64>,
    rest: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn rec(&mut self, t: usize, left: i64) {
        if t == self.free.len() || left == 0 {
            if left == 0 && self.rest.iter().all(|&x| x == 0) {
                self.out.push(self.cur.clone());
            }
            return;
        }
        let (lo, hi) = (&self.lo[t], &self.hi[t]);
        if self
            .rest
            .iter()
            .enumerate()
            .any(|(x, &v)| v < left * lo[x] || v > left * hi[x])
        {
            return;
        }
        let r = self.free[t];
        let a = self.exps[r];
        let start = if t + 1 == self.free.len() { left } else { 0 };
        for c in start..=left {
            self.cur[r] = c;
            for (x, v) in self.rest.iter_mut().enumerate() {
                *v -= c * a.get(x);
            }
            self.rec(t + 1, left - c);
            for (x, v) in self.rest.iter_mut().enumerate() {
                *v += c * a.get(x);
            }
        }
        self.cur[r] = 0;
    }
}

/// Elements of `L_i` of total degree `d = -l_i` in `1..=min(m-1, cap)`,
/// ordered by degree.
pub fn ah_enumerate_li(config: &AConfig, i: usize, m: Option<u64>, cap: u64) -> LatticeSolutionSet {
    let top = match m {
        Some(m) => cap.min(m.saturating_sub(1)),
        None => cap,
    };
    let a_i = config.exponent(i).to_vec();
    let mut elements = Vec::new();
    for d in 1..=top {
        let target: Vec<i64> = a_i.iter().map(|x| x * d as i64).collect();
        for mut l in solve_nonneg(config.exponents(), i, d, &target) {
            l[i] = -(d as i64);
            elements.push(ExponentVec::of(&l));
        }
    }
    LatticeSolutionSet {
        pivot: i,
        m,
        cap,
        elements,
    }
}

/// Generators of the extreme rays of the real cone `L_i(R)`, as primitive
/// integer kernel vectors.
pub fn extreme_rays(config: &AConfig, i: usize) -> Vec<Vec<i64>> {
    let basis = intmat::from_i64(config.kernel());
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let n_cols = config.len();
    // l_r = sum_t c_t basis[t][r]; inequality rows indexed by r != i
    let ineq: Vec<(usize, Vec<BigInt>)> = (0..n_cols)
        .filter(|&r| r != i)
        .map(|r| (r, (0..k).map(|t| basis[t][r].clone()).collect()))
        .collect();
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for subset in combinations(ineq.len(), k - 1) {
        let m: intmat::IntMatrix = subset.iter().map(|&s| ineq[s].1.clone()).collect();
        let Some(c) = intmat::nullspace_vector(&m, k) else {
            continue;
        };
        for sign in [1i64, -1] {
            let l: Vec<BigInt> = (0..n_cols)
                .map(|r| (0..k).map(|t| &c[t] * &basis[t][r]).sum::<BigInt>() * sign)
                .collect();
            if l.iter().all(Zero::is_zero) {
                continue;
            }
            if (0..n_cols).filter(|&r| r != i).all(|r| !l[r].is_negative()) {
                let g = l.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                let l: Vec<i64> = l
                    .iter()
                    .map(|x| i64::try_from(&(x / &g)).expect("ray fits in i64"))
                    .collect();
                if !rays.contains(&l) {
                    rays.push(l);
                }
            }
        }
    }
    rays.sort();
    rays
}

/// Largest degree `d = -l_i` of an element of `L_i` with grade `<= bound`.
pub fn degree_cap(config: &AConfig, grading: &[i64], i: usize, bound: i64) -> u64 {
    extreme_rays(config, i)
        .iter()
        .map(|g| {
            let w: i64 = g.iter().zip(grading).map(|(a, b)| a * b).sum();
            debug_assert!(w > 0 && g[i] < 0);
            (bound * -g[i] / w) as u64
        })
        .max()
        .unwrap_or(0)
}
