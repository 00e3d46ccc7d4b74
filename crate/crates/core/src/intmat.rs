//! Small dense integer matrices: determinants, ranks, Hermite normal forms
//! and integer kernels. Sizes here never exceed a handful of rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_i64(rows: &IntMatrix) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
        .collect()
}

pub fn transpose(rows: &IntMatrix) -> IntMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row echelon form over Z together with a unimodular `u` such that
/// `u * m = echelon`. Pivots are positive and entries above them reduced.
pub fn hermite_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u: IntMatrix = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        loop {
            let pivot = (row..rows)
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(pr) = pivot else { break };
            a.swap(row, pr);
            u.swap(row, pr);
            let mut done = true;
            for r in row + 1..rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[row][col]);
                sub_row(&mut a, r, row, &q);
                sub_row(&mut u, r, row, &q);
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < rows && !a[row][col].is_zero() {
            if a[row][col].is_negative() {
                negate_row(&mut a, row);
                negate_row(&mut u, row);
            }
            for r in 0..row {
                let q = a[r][col].div_floor(&a[row][col]);
                if !q.is_zero() {
                    sub_row(&mut a, r, row, &q);
                    sub_row(&mut u, r, row, &q);
                }
            }
            row += 1;
        }
    }
    (a, u)
}

fn sub_row(a: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    let src_row = a[src].clone();
    for (x, y) in a[target].iter_mut().zip(src_row.iter()) {
        *x -= q * y;
    }
}

fn negate_row(a: &mut IntMatrix, r: usize) {
    for x in a[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn hermite_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_with_transform(m);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    hermite_basis(m).len()
}

/// Lattice basis of `{x in Z^cols : m x = 0}`, in Hermite normal form.
pub fn kernel_basis(m: &IntMatrix, cols: usize) -> IntMatrix {
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    let (e, u) = hermite_with_transform(&transpose(m));
    let kernel: IntMatrix = e
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|x| x.is_zero()))
        .map(|(_, urow)| urow)
        .collect();
    if kernel.is_empty() {
        return kernel;
    }
    hermite_basis(&kernel)
}

/// Generator of the rational null space of a `(k-1) x k` matrix of rank
/// `k - 1`, as a primitive integer vector (signed minors). `None` if the
/// rank is deficient.
pub fn nullspace_vector(m: &IntMatrix, k: usize) -> Option<Vec<BigInt>> {
    debug_assert!(m.iter().all(|r| r.len() == k));
    debug_assert_eq!(m.len() + 1, k);
    let mut v: Vec<BigInt> = (0..k)
        .map(|j| {
            let minor: IntMatrix = m
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    Some(v)
}

pub fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant() {
        let m = from_i64(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(det(&m), BigInt::from(6));
        let s = from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(det(&s), BigInt::zero());
        let z = from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det(&z), BigInt::from(-1));
    }

    #[test]
    fn kernel_of_section6_matrix() {
        let a = from_i64(&[vec![1, 1, 1, 1, 1], vec![0, 1, 3, 2, 1], vec![2, 0, 0, 0, 1]]);
        let k = kernel_basis(&a, 5);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        let expected = hermite_basis(&from_i64(&[vec![2, 1, 1, 0, -4], vec![1, 0, 0, 1, -2]]));
        assert_eq!(k, expected);
    }

    #[test]
    fn nullspace_cross_product() {
        let m = from_i64(&[vec![1, 0, 0], vec![0, 1, 0]]);
        let v = nullspace_vector(&m, 3).unwrap();
        assert_eq!(v, from_i64(&[vec![0, 0, 1]])[0]);
        let d = from_i64(&[vec![1, 2]]);
        assert_eq!(nullspace_vector(&d, 2).unwrap(), from_i64(&[vec![2, -1]])[0]);
    }

    #[test]
    fn rank_counts_independent_rows() {
        let m = from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
    }
}
