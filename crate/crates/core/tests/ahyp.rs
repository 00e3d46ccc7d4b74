use num_bigint::BigInt;
use periodcong::ahyp::*;
use periodcong::builtins::SECTION6_EXPONENTS;
use periodcong::exactnum::{binomial, factorial, Modulus, PRational};
use periodcong::intmat;
use periodcong::laurent::{ExponentVec, LaurentPoly, PolyCtx};
use periodcong::polytope::MuSpec;
use periodcong::ring::Ring;
use periodcong::Error;
use proptest::prelude::*;

fn section6() -> AConfig {
    AConfig::new(&SECTION6_EXPONENTS.iter().map(|a| a.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn ell(r: i64, s: i64) -> ExponentVec {
    ExponentVec::of(&[r + 2 * s, s, s, r, -2 * r - 4 * s])
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn multinomial(parts: &[i64]) -> BigInt {
    let d: i64 = parts.iter().sum();
    factorial(d as u64) / parts.iter().map(|&x| factorial(x as u64)).product::<BigInt>()
}

#[test]
fn kernel_examples() {
    let c = section6();
    assert_eq!(c.kernel_rank(), 2);
    for b in c.kernel() {
        assert!(c.in_kernel(b));
    }
    let expected = intmat::hermite_basis(&intmat::from_i64(&[vec![2, 1, 1, 0, -4], vec![1, 0, 0, 1, -2]]));
    assert_eq!(intmat::hermite_basis(&intmat::from_i64(c.kernel())), expected);

    let simplex = AConfig::new(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(simplex.kernel_rank(), 0);
    assert!(ah_cone_check(&simplex, 4).pointed());

    let dup = AConfig::new(&[vec![0], vec![0], vec![1]]).unwrap();
    assert_eq!(dup.kernel(), &[vec![1, -1, 0]]);
    let v = ah_cone_check(&dup, 4);
    assert_eq!(v.verdict, "not pointed");
    assert_eq!(v.witness, Some(vec![-1, 1, 0]));
    assert!(matches!(dup.cone_shape(3), Err(Error::Hypothesis(_))));
}

#[test]
fn rejects_ragged_exponents() {
    assert!(AConfig::new(&[vec![0, 1], vec![1]]).is_err());
    assert!(AConfig::new(&[]).is_err());
}

#[test]
fn enumeration_examples() {
    let c = section6();
    for m in [1, 3, 10] {
        assert!(ah_enumerate_li(&c, 0, Some(m), 10).is_empty());
    }
    assert!(ah_enumerate_li(&c, 0, None, 30).is_empty());
    assert_eq!(
        ah_enumerate_li(&c, 3, Some(3), 10).elements,
        vec![ExponentVec::of(&[0, 1, 1, -2, 0])]
    );
    assert_eq!(
        ah_enumerate_li(&c, 4, Some(3), 10).elements,
        vec![ExponentVec::of(&[1, 0, 0, 1, -2])]
    );
    // brute force over the kernel parametrisation for pivot 5
    let set = ah_enumerate_li(&c, 4, None, 12);
    let mut brute = Vec::new();
    for r in -12..=12 {
        for s in -12..=12 {
            let l = ell(r, s);
            let d = -l.get(4);
            if (1..=12).contains(&d) && (0..4).all(|k| l.get(k) >= 0) {
                brute.push(l);
            }
        }
    }
    let mut got = set.elements.clone();
    got.sort();
    brute.sort();
    assert_eq!(got, brute);
    for l in &set.elements {
        assert!(c.in_kernel(&l.to_vec()));
    }
}

#[test]
fn gamma_star_values_and_identities() {
    assert_eq!(ah_gamma_star(3), PRational::from_i64(2));
    assert_eq!(ah_gamma_star(0), PRational::from_i64(1));
    assert_eq!(ah_gamma_star(-2), PRational::ratio(1, 2));
    for n in -20i64..=20 {
        if n != 0 {
            assert_eq!(
                ah_gamma_star(n + 1),
                ah_gamma_star(n).times(&PRational::from_i64(n)),
                "n = {n}"
            );
        }
        let sign = if n > 0 { 1 } else { -1 };
        let parity = if (n - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        assert_eq!(
            ah_gamma_star(n).times(&ah_gamma_star(1 - n)),
            PRational::from_i64(sign * parity),
            "n = {n}"
        );
    }
}

#[test]
fn coefficients_are_multinomials() {
    let c = section6();
    for i in 0..5 {
        for l in ah_enumerate_li(&c, i, None, 20).elements {
            let d = -l.get(i);
            let others: Vec<i64> = (0..5).filter(|&r| r != i).map(|r| l.get(r)).collect();
            for j in 0..5 {
                let got = psi_coefficient(&l, j).unwrap();
                let expect = if j == i {
                    multinomial(&others) * if d % 2 == 0 { 1 } else { -1 }
                } else if l.get(j) == 0 {
                    int(0)
                } else {
                    let parts: Vec<i64> = (0..5).filter(|&r| r != i).map(|r| l.get(r) - (r == j) as i64).collect();
                    multinomial(&parts) * if (d - 1) % 2 == 0 { 1 } else { -1 }
                };
                assert_eq!(got, expect, "l = {l}, j = {j}");
            }
        }
    }
}

#[test]
fn golden_entries() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    let psi = ah_psi_tilde_exact(&c, &all, 200).unwrap();
    // entry (4,4) to weight 8: keys l(-2s, s) with weight 2s
    let e44 = psi.get(3, 3);
    for s in 0..=4i64 {
        assert_eq!(e44.coeff(&ell(-2 * s, s)), binomial(2 * s as u64, s as u64));
    }
    let e55 = psi.get(4, 4);
    assert_eq!(e55.coeff(&ell(0, 1)), int(12));
    assert_eq!(e55.coeff(&ell(1, 0)), int(2));
    for r in 0..4i64 {
        for s in 0..4i64 {
            let d = 2 * r + 4 * s;
            let expect = factorial(d as u64)
                / (factorial((r + 2 * s) as u64) * factorial(s as u64) * factorial(s as u64) * factorial(r as u64));
            assert_eq!(e55.coeff(&ell(r, s)), expect);
        }
    }
    let ctx = PolyCtx::new(5, ());
    for i in 0..3 {
        for j in 0..5 {
            let expect = if i == j {
                LaurentPoly::one(&ctx)
            } else {
                LaurentPoly::zero(&ctx)
            };
            assert_eq!(*psi.get(j, i), expect, "entry ({}, {})", j + 1, i + 1);
        }
    }
}

#[test]
fn m_one_is_identity() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    let psi = ah_psi_tilde_exact(&c, &all, 1).unwrap();
    assert_eq!(
        psi,
        periodcong::seriesring::PeriodMatrix::identity(psi.labels().to_vec(), &PolyCtx::new(5, ()))
    );
    let oracle = ah_gamma_ct(&c, &all, 1).unwrap();
    assert_eq!(oracle, psi);
}

#[test]
fn oracle_equivalence_section6() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    for m in 1..=5 {
        assert_eq!(
            ah_psi_tilde_exact(&c, &all, m).unwrap(),
            ah_psi_tilde_ct_oracle(&c, &all, m).unwrap(),
            "m = {m}"
        );
    }
}

#[test]
fn oracle_entry_44_m3() {
    let c = section6();
    let psi = ah_psi_tilde_ct_oracle(&c, &[3], 3).unwrap();
    let ctx = PolyCtx::new(5, ());
    let expect = LaurentPoly::from_terms(
        &ctx,
        [
            (ExponentVec::zeros(5), int(1)),
            (ExponentVec::of(&[0, 1, 1, -2, 0]), int(2)),
        ],
    );
    assert_eq!(*psi.get(0, 0), expect);
}

#[test]
fn determinant_relation() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    for cols in [vec![4], all] {
        for m in 1..=3 {
            let gamma = ah_gamma_ct(&c, &cols, m).unwrap();
            let psi = ah_psi_tilde_exact(&c, &cols, m).unwrap();
            assert_eq!(
                gamma.det(),
                ah_det_relation_rhs(&c, &cols, &psi, m),
                "cols {cols:?}, m = {m}"
            );
        }
    }
}

#[test]
fn truncation_coherence() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    let big = ah_psi_tilde_exact(&c, &all, 12).unwrap();
    for cap in [2i64, 5, 8] {
        let small = ah_psi_tilde_exact(&c, &all, cap as u64 + 1).unwrap();
        for (col, &i) in all.iter().enumerate() {
            for row in 0..5 {
                let capped = big.get(row, col).filter_terms(|l, _| -l.get(i) <= cap);
                assert_eq!(capped, small.get(row, col).filter_terms(|l, _| -l.get(i) <= cap));
            }
        }
    }
}

#[test]
fn grading_and_window() {
    let c = section6();
    let g = c.grading().unwrap();
    assert_eq!(g.iter().map(|x| x.abs()).max(), Some(1));
    for s in [-3i64, 0, 2] {
        for r in [-4i64, 1, 5] {
            let w: i64 = ell(r, s).dot(&g);
            assert_eq!(w, 2 * r + 5 * s);
        }
    }
    let shape = c.cone_shape(6).unwrap();
    assert_eq!(shape.bound(), 12);
    for i in 0..5 {
        for l in ah_enumerate_li(&c, i, None, 6).elements {
            assert!(shape.check_key(&l).unwrap(), "{l}");
        }
        if !extreme_rays(&c, i).is_empty() {
            assert!(degree_cap(&c, &g, i, 12) >= 6);
        }
    }
    assert_eq!(extreme_rays(&c, 4), vec![vec![1, 0, 0, 1, -2], vec![2, 1, 1, 0, -4]]);
    assert!(extreme_rays(&c, 0).is_empty());
}

#[test]
fn cone_series_matches_exact() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    let shape = c.cone_shape(4).unwrap();
    for m in [2u64, 4, 9] {
        let exact = ah_psi_tilde_exact(&c, &all, m).unwrap();
        let cone = ah_psi_tilde_int(&c, &all, Some(m), &shape).unwrap();
        for r in 0..5 {
            for col in 0..5 {
                let trimmed = exact.get(r, col).filter_terms(|l, _| shape.grade(l) <= shape.bound());
                assert_eq!(cone.get(r, col).to_poly(), trimmed);
            }
        }
    }
    let full = ah_psi_tilde_int(&c, &all, None, &shape).unwrap();
    let deep = ah_psi_tilde_int(&c, &all, Some(1000), &shape).unwrap();
    assert_eq!(full, deep);
}

#[test]
fn columns_from_mu() {
    let c = section6();
    let (_, cols) = c.columns_in(&AMu::Spec(MuSpec::interior())).unwrap();
    assert_eq!(cols, vec![4]);
    let (_, cols) = c.columns_in(&AMu::Spec(MuSpec::all())).unwrap();
    assert_eq!(cols, vec![0, 1, 2, 3, 4]);
    let (_, cols) = c.columns_in(&AMu::Columns(vec![5])).unwrap();
    assert_eq!(cols, vec![4]);
    assert!(c.columns_in(&AMu::Columns(vec![1])).is_err());
    assert!(c.columns_in(&AMu::Columns(vec![9])).is_err());
    let gap = AConfig::new(&[vec![0], vec![2]]).unwrap();
    assert!(matches!(
        gap.columns_in(&AMu::Spec(MuSpec::all())),
        Err(Error::Hypothesis(_))
    ));
    let j: AConfigJson =
        AConfigJson::parse(r#"{"exponents": [[0,2],[1,0],[3,0],[2,0],[1,1]], "mu": "interior"}"#).unwrap();
    assert_eq!(j.config().unwrap(), c);
    assert_eq!(j.mu, Some(AMu::Spec(MuSpec::interior())));
    let j = AConfigJson::parse(r#"{"exponents": [[0]], "mu": [1, 2]}"#).unwrap();
    assert_eq!(j.mu, Some(AMu::Columns(vec![1, 2])));
    assert_eq!(AMu::parse("c:2,5").unwrap(), AMu::Columns(vec![2, 5]));
    assert_eq!(AMu::parse("all").unwrap(), AMu::Spec(MuSpec::all()));
}

#[test]
fn main5_small() {
    let c = section6();
    let cfg = Main5Config {
        p: 3,
        s_max: 1,
        weight: 6,
        perturb: false,
    };
    let r = ah_verify_main5(&c, &[4], &cfg).unwrap();
    assert!(r.holds, "{}", r.summary());
    let r = ah_verify_main5(
        &c,
        &[4],
        &Main5Config {
            perturb: true,
            ..cfg.clone()
        },
    )
    .unwrap();
    assert!(!r.holds);
    let f = r.failure.unwrap();
    assert!(f.location.contains("a5"), "{}", f.location);
    let r = ah_verify_main5(
        &c,
        &[0, 1, 2, 3, 4],
        &Main5Config {
            p: 5,
            s_max: 1,
            weight: 2,
            perturb: false,
        },
    )
    .unwrap();
    assert!(r.holds, "{}", r.summary());
}

#[test]
fn ndelta_consistent_across_primes() {
    let c = section6();
    let cells = ah_ndelta_across_primes(&c, &[4], &[3, 5], 2, 4).unwrap();
    assert_eq!(cells.len(), 2 * 2 * 5);
    assert!(cells.iter().all(|x| x.agree));
}

#[test]
fn period_series_reproduces_psi() {
    let c = section6();
    let all: Vec<usize> = (0..5).collect();
    let weight = 6u64;
    let psi = ah_psi_tilde_exact(&c, &all, weight + 2).unwrap();
    for (col, &i) in all.iter().enumerate() {
        for (row, &j) in all.iter().enumerate() {
            let series = ah_period_series(&c, c.exponent(j), 1, i, weight).unwrap();
            let keep = |l: &ExponentVec| -l.get(i) <= weight as i64;
            let shifted = psi
                .get(row, col)
                .shift(&-ExponentVec::unit(5, j))
                .filter_terms(|l, _| keep(l));
            assert_eq!(
                series.filter_terms(|l, _| keep(l)),
                shifted,
                "entry ({}, {})",
                j + 1,
                i + 1
            );
        }
    }
    let s = ah_period_series(&c, c.exponent(2), 1, 2, 3).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s.coeff(&ExponentVec::of(&[0, 0, -1, 0, 0])), int(1));
    assert!(ah_period_series(&c, &ExponentVec::of(&[5, 5]), 1, 0, 3).is_err());
    assert!(ah_period_series(&c, &ExponentVec::of(&[5, 5]), 3, 4, 3).is_err());
}

#[test]
fn period_series_derivative() {
    let c = section6();
    let m = 7u64;
    for k in 1..=2u64 {
        for i in [3usize, 4] {
            let u = c.exponent(4).scale(k as i64);
            let lhs_full = ah_period_series(&c, &u, k, i, m).unwrap();
            for r in 0..5 {
                let rhs = ah_period_series(&c, &(u + *c.exponent(r)), k + 1, i, m - 1).unwrap();
                let bound = (k + 1 + m - 1) as i64;
                let lhs = lhs_full.partial(r).filter_terms(|l, _| -l.get(i) <= bound);
                assert_eq!(lhs, rhs.scale(&int(-(k as i64))), "k = {k}, i = {i}, r = {r}");
            }
        }
    }
}

#[test]
fn cone_check_section6() {
    let v = ah_cone_check(&section6(), 6);
    assert!(v.pointed());
    assert!(v.checked > 0);
    let sparse = AConfig::new(&[vec![0], vec![1], vec![3]]).unwrap();
    assert!(ah_cone_check(&sparse, 6).pointed());
}

fn small_config() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set(-3i64..=3, 3).prop_map(|s| s.into_iter().map(|x| vec![x]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_equivalence_random_1d(ex in small_config(), m in 1u64..=5) {
        let c = AConfig::new(&ex).unwrap();
        let all: Vec<usize> = (0..3).collect();
        prop_assert_eq!(ah_psi_tilde_exact(&c, &all, m).unwrap(), ah_psi_tilde_ct_oracle(&c, &all, m).unwrap());
    }

    #[test]
    fn grading_positive_on_li(ex in small_config(), d in 1u64..=8) {
        let c = AConfig::new(&ex).unwrap();
        let g = c.grading().unwrap();
        for i in 0..3 {
            for l in ah_enumerate_li(&c, i, None, d).elements {
                prop_assert!(l.dot(&g) > 0);
                prop_assert!(-l.get(i) as u64 <= degree_cap(&c, &g, i, l.dot(&g)));
            }
        }
    }
}

#[test]
fn modulus_reduction_of_psi() {
    let c = section6();
    let shape = c.cone_shape(4).unwrap();
    let m = Modulus::new(5, 1).unwrap();
    let psi = ah_psi_tilde(&c, &[4], Some(5), &shape, m).unwrap();
    assert_eq!(psi.get(0, 0).coeff(&ell(1, 0)).to_string(), "2");
    assert_eq!(psi.get(0, 0).coeff(&ell(0, 1)).to_string(), "2");
    assert!(psi.get(0, 0).coeff(&ell(1, 1)).vanishes());
    let psi = ah_psi_tilde(&c, &[4], Some(4), &shape, m).unwrap();
    assert!(psi.get(0, 0).coeff(&ell(0, 1)).vanishes());
}

#[test]
fn lambda_is_not_trivial() {
    let c = section6();
    let lam = ah_lambda(&c, &[4], 3, 2, 6).unwrap();
    assert!(lam.get(0, 0).len() > 3);
    let all: Vec<usize> = (0..5).collect();
    let lam = ah_lambda(&c, &all, 3, 1, 3).unwrap();
    let off_diagonal = (0..5).flat_map(|r| (0..5).map(move |c| (r, c))).filter(|(r, c)| r != c);
    assert!(off_diagonal.into_iter().any(|(r, col)| !lam.get(r, col).is_empty()));
}
