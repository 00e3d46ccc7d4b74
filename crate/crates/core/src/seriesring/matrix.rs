use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::ExponentVec;
use crate::ring::{LocalRing, Ring};

/// Row/column label: a lattice point of `mu`, or a (0-based) column of
/// the exponent matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexLabel {
    Point(ExponentVec),
    Column(usize),
}

impl fmt::Display for IndexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexLabel::Point(u) => write!(f, "{u}"),
            IndexLabel::Column(j) => write!(f, "a{}", j + 1),
        }
    }
}

impl Serialize for IndexLabel {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Square matrix with labelled rows and columns.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix<C: Ring> {
    labels: Vec<IndexLabel>,
    rows: Vec<Vec<C>>,
}

impl<C: Ring> PeriodMatrix<C> {
    pub fn new(labels: Vec<IndexLabel>, rows: Vec<Vec<C>>) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::Dimension(rows.len(), n));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(r.len(), n));
        }
        Ok(PeriodMatrix { labels, rows })
    }

    pub fn from_fn(labels: Vec<IndexLabel>, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let n = labels.len();
        let rows = (0..n).map(|r| (0..n).map(|c| f(r, c)).collect()).collect();
        PeriodMatrix { labels, rows }
    }

    pub fn try_from_fn(labels: Vec<IndexLabel>, mut f: impl FnMut(usize, usize) -> Result<C>) -> Result<Self> {
        let n = labels.len();
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                row.push(f(r, c)?);
            }
            rows.push(row);
        }
        Ok(PeriodMatrix { labels, rows })
    }

    pub fn identity(labels: Vec<IndexLabel>, ctx: &C::Ctx) -> Self {
        Self::from_fn(labels, |r, c| if r == c { C::one_in(ctx) } else { C::zero_in(ctx) })
    }

    pub fn labels(&self) -> &[IndexLabel] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.rows[r][c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut C {
        &mut self.rows[r][c]
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    fn same_shape(&self, rhs: &Self) {
        assert_eq!(self.size(), rhs.size(), "matrix size mismatch");
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.same_shape(rhs);
        let n = self.size();
        let ctx = self.rows[0][0].ctx();
        Self::from_fn(self.labels.clone(), |r, c| {
            let mut acc = C::zero_in(&ctx);
            for k in 0..n {
                acc.accumulate(&self.rows[r][k].times(&rhs.rows[k][c]));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_shape(rhs);
        Self::from_fn(self.labels.clone(), |r, c| self.rows[r][c].plus(&rhs.rows[r][c]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.same_shape(rhs);
        Self::from_fn(self.labels.clone(), |r, c| self.rows[r][c].minus(&rhs.rows[r][c]))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> PeriodMatrix<D> {
        PeriodMatrix {
            labels: self.labels.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn try_map<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<PeriodMatrix<D>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodMatrix {
            labels: self.labels.clone(),
            rows,
        })
    }

    /// Reorder rows and columns: entry `(r, c)` of the result is entry
    /// `(perm[r], perm[c])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.size());
        let labels = perm.iter().map(|&i| self.labels[i]).collect();
        Self::from_fn(labels, |r, c| self.rows[perm[r]][perm[c]].clone())
    }

    /// Leibniz expansion; fine for the small sizes used here.
    pub fn det(&self) -> C {
        let n = self.size();
        let ctx = self.rows[0][0].ctx();
        let mut acc = C::zero_in(&ctx);
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p, odd| {
            let mut term = C::one_in(&ctx);
            for (r, &c) in p.iter().enumerate() {
                term = term.times(&self.rows[r][c]);
                if term.vanishes() {
                    return;
                }
            }
            if odd {
                term = term.negate();
            }
            acc.accumulate(&term);
        });
        acc
    }

    /// First entry (row-major) where the matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .find(|&(r, c)| self.rows[r][c] != other.rows[r][c])
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
    fn rec(p: &mut Vec<usize>, k: usize, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
        if k == p.len() {
            f(p, odd);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, odd ^ (i != k), f);
            p.swap(k, i);
        }
    }
    rec(p, k, false, f)
}

impl<C: LocalRing> PeriodMatrix<C> {
    /// Gauss-Jordan elimination with unit pivots. Fails exactly when the
    /// reduction to the residue field is singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.size();
        if n == 0 {
            return Ok(self.clone());
        }
        let ctx = self.rows[0][0].ctx();
        let mut a = self.rows.clone();
        let mut inv = Self::identity(self.labels.clone(), &ctx).rows;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col].is_unit()) else {
                return Err(Error::Singular(self.residue_matrix()));
            };
            a.swap(col, piv);
            inv.swap(col, piv);
            let s = a[col][col].inverse().expect("pivot is a unit");
            for x in a[col].iter_mut() {
                *x = x.times(&s);
            }
            for x in inv[col].iter_mut() {
                *x = x.times(&s);
            }
            for r in 0..n {
                if r == col || a[r][col].vanishes() {
                    continue;
                }
                let factor = a[r][col].clone();
                for k in 0..n {
                    let da = factor.times(&a[col][k]);
                    a[r][k] = a[r][k].minus(&da);
                    let di = factor.times(&inv[col][k]);
                    inv[r][k] = inv[r][k].minus(&di);
                }
            }
        }
        Ok(PeriodMatrix {
            labels: self.labels.clone(),
            rows: inv,
        })
    }

    pub fn residue_matrix(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.residue()).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl<C: Ring> fmt::Display for PeriodMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        writeln!(f, "labels: {}", labels.join(", "))?;
        for (r, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}: [{}]", labels[r], cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct MatrixRepr {
    labels: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl<C: Ring> Serialize for PeriodMatrix<C> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            labels: self.labels.iter().map(|l| l.to_string()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
        .serialize(ser)
    }
}
