//! Exact integer, rational and `Z/p^s` arithmetic, p-adic valuations and
//! Hensel lifting of elliptic unit roots.

mod rational;
mod residue;

pub use rational::PRational;
pub use residue::{inverse_mod, Modulus, ResidueInt, DEFAULT_MAX_PRECISION, DEFAULT_MAX_PRIME};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{LocalRing, Ring};

/// Trial-division primality test; `p` is always small here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `p^e | n`.
pub fn padic_ord(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::InfiniteValuation);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// `padic_ord` for machine integers.
pub fn padic_ord_u64(n: u64, p: u64) -> Result<u32> {
    padic_ord(&BigInt::from(n), p)
}

/// Image of a p-integral rational in `Z/p^s`.
pub fn embed_rational(q: &PRational, modulus: Modulus) -> Result<ResidueInt> {
    let den =
        inverse_mod(q.denom(), modulus).ok_or_else(|| Error::NotPIntegral(format!("{q} at p = {}", modulus.p())))?;
    Ok(ResidueInt::new(modulus, q.numer()).times(&den))
}

/// The unit root of `T^2 - a_p T + p` in `Z/p^s`, lifted one p-adic digit
/// at a time from the simple root `a_p mod p`.
pub fn hensel_unit_root(a_p: i64, p: u64, s: u32) -> Result<ResidueInt> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(
            "p = 2 has no odd-prime Hensel lift here".into(),
        ));
    }
    let modulus = Modulus::new(p, s)?;
    if a_p.rem_euclid(p as i64) == 0 {
        return Err(Error::Supersingular { p, a_p });
    }
    let pm = BigInt::from(p);
    let a = BigInt::from(a_p);
    let full = BigInt::from(modulus.value());
    let eval = |x: &BigInt| (x * x - &a * x + &pm).mod_floor(&full);

    let mut root = a.mod_floor(&pm);
    let mut pk = pm.clone();
    for _ in 1..s {
        // F(root) = 0 mod p^k; choose the next digit c with F(root + c p^k) = 0 mod p^{k+1}.
        let value = eval(&root);
        debug_assert!((&value % &pk).is_zero());
        let quotient = (&value / &pk).mod_floor(&pm);
        let deriv = (BigInt::from(2) * &root - &a).mod_floor(&pm);
        let fp = Modulus::new(p, 1)?;
        let inv = ResidueInt::new(fp, &deriv)
            .inverse()
            .expect("derivative is a unit for an ordinary prime");
        let c = ResidueInt::new(fp, &(-quotient)).times(&inv).to_bigint();
        root += c * &pk;
        pk *= &pm;
    }
    Ok(ResidueInt::new(modulus, &root))
}

/// Binomial coefficient `C(n, k)` as a big integer (0 outside `0 <= k <= n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padic_ord_examples() {
        assert_eq!(padic_ord(&BigInt::from(12), 2).unwrap(), 2);
        assert_eq!(padic_ord(&BigInt::from(7), 7).unwrap(), 1);
        assert_eq!(padic_ord(&BigInt::from(50), 5).unwrap(), 2);
        assert_eq!(padic_ord(&BigInt::from(-50), 5).unwrap(), 2);
        assert_eq!(padic_ord(&BigInt::from(0), 5), Err(Error::InfiniteValuation));
    }

    #[test]
    fn embed_rational_examples() {
        let q = PRational::ratio(1, 4);
        assert_eq!(embed_rational(&q, Modulus::new(5, 1).unwrap()).unwrap().value(), 4);
        assert_eq!(embed_rational(&q, Modulus::new(5, 2).unwrap()).unwrap().value(), 19);
        let three = PRational::from_i64(3);
        assert_eq!(embed_rational(&three, Modulus::new(7, 2).unwrap()).unwrap().value(), 3);
        let bad = PRational::ratio(1, 5);
        assert!(matches!(
            embed_rational(&bad, Modulus::new(5, 2).unwrap()),
            Err(Error::NotPIntegral(_))
        ));
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_unit_root(-2, 5, 1).unwrap().value(), 3);
        assert_eq!(hensel_unit_root(-2, 5, 2).unwrap().value(), 13);
        assert!(matches!(hensel_unit_root(5, 5, 1), Err(Error::Supersingular { .. })));
        assert!(hensel_unit_root(1, 2, 3).is_err());
    }

    // Brute force over all residues mod p^s: the unique root of
    // T^2 - aT + p congruent to a mod p.
    fn brute_unit_root(a: i64, p: u64, s: u32) -> u128 {
        let pk = (p as i128).pow(s);
        let roots: Vec<i128> = (0..pk)
            .filter(|x| (x * x - a as i128 * x + p as i128).rem_euclid(pk) == 0)
            .filter(|x| (x - a as i128).rem_euclid(p as i128) == 0)
            .collect();
        assert_eq!(roots.len(), 1);
        roots[0] as u128
    }

    #[test]
    fn hensel_matches_brute_force() {
        for &p in &[3u64, 5, 7, 11] {
            for s in 1..=3 {
                for a in -(2 * p as i64)..=(2 * p as i64) {
                    if a.rem_euclid(p as i64) == 0 {
                        continue;
                    }
                    let lam = hensel_unit_root(a, p, s).unwrap();
                    assert_eq!(lam.value(), brute_unit_root(a, p, s), "a={a} p={p} s={s}");
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
