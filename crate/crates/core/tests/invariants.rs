use num_bigint::BigInt;
use periodcong::exactnum::{embed_rational, hensel_unit_root, Modulus, PRational, ResidueInt};
use periodcong::laurent::{ExponentVec, LaurentPoly, PolyCtx};
use periodcong::polytope::{open_subset, LatticePolytope, MuSpec};
use periodcong::ring::{LocalRing, Ring};
use periodcong::seriesring::{sr_mat_inverse, IndexLabel, PeriodMatrix, SeriesCtx, TruncSeries};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [3, 5, 7, 11];

fn residues(p: u64, s: u32) -> impl Strategy<Value = (ResidueInt, ResidueInt, ResidueInt)> {
    let m = Modulus::new(p, s).unwrap();
    let q = (p as i64).pow(s);
    (0..q, 0..q, 0..q).prop_map(move |(a, b, c)| {
        (
            ResidueInt::from_i64(m, a),
            ResidueInt::from_i64(m, b),
            ResidueInt::from_i64(m, c),
        )
    })
}

fn int_poly(dim: usize) -> impl Strategy<Value = LaurentPoly<BigInt>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, dim), -4i64..=4), 1..=5).prop_map(move |terms| {
        let ctx = PolyCtx::new(dim, ());
        LaurentPoly::from_terms(
            &ctx,
            terms.into_iter().map(|(e, c)| (ExponentVec::of(&e), BigInt::from(c))),
        )
    })
}

fn series(p: u64, s: u32, order: usize) -> impl Strategy<Value = TruncSeries> {
    let q = (p as i64).pow(s);
    prop::collection::vec(0..q, order)
        .prop_map(move |c| TruncSeries::from_i64s(SeriesCtx::new(Modulus::new(p, s).unwrap(), order).unwrap(), &c))
}

fn points_2d() -> impl Strategy<Value = Vec<ExponentVec>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..=7)
        .prop_map(|v| v.into_iter().map(|(a, b)| ExponentVec::of(&[a, b])).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_ring_axioms((x, y, z) in (0usize..4, 1u32..=3).prop_flat_map(|(i, s)| residues(PRIMES[i], s))) {
        prop_assert_eq!(x.plus(&y), y.plus(&x));
        prop_assert_eq!(x.times(&y), y.times(&x));
        prop_assert_eq!(x.plus(&y).plus(&z), x.plus(&y.plus(&z)));
        prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
        prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
        prop_assert!(x.plus(&x.negate()).vanishes());
        prop_assert_eq!(x.times(&ResidueInt::one_in(&x.ctx())), x);
        if let Some(inv) = x.inverse() {
            prop_assert!(x.times(&inv).is_unity());
        } else {
            prop_assert_eq!(x.value() % x.modulus().p() as u128, 0);
        }
    }

    #[test]
    fn reduction_is_a_homomorphism((x, y, _) in (0usize..4, 2u32..=4).prop_flat_map(|(i, s)| residues(PRIMES[i], s)), drop in 1u32..=3) {
        let s = x.modulus().s().saturating_sub(drop).max(1);
        let r = |v: &ResidueInt| v.reduce(s).unwrap();
        prop_assert_eq!(r(&x.plus(&y)), r(&x).plus(&r(&y)));
        prop_assert_eq!(r(&x.times(&y)), r(&x).times(&r(&y)));
    }

    #[test]
    fn embedding_respects_operations(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30, i in 0usize..4, s in 1u32..=4) {
        let p = PRIMES[i] as i64;
        prop_assume!(b % p != 0 && d % p != 0);
        let m = Modulus::new(p as u64, s).unwrap();
        let (x, y) = (PRational::ratio(a, b), PRational::ratio(c, d));
        let e = |q: &PRational| embed_rational(q, m).unwrap();
        prop_assert_eq!(e(&x.plus(&y)), e(&x).plus(&e(&y)));
        prop_assert_eq!(e(&x.times(&y)), e(&x).times(&e(&y)));
    }

    #[test]
    fn hensel_root_solves_the_quadratic(a in -30i64..=30, i in 0usize..4, s in 1u32..=6) {
        let p = PRIMES[i];
        prop_assume!(a.rem_euclid(p as i64) != 0);
        let m = Modulus::new(p, s).unwrap();
        let l = hensel_unit_root(a, p, s).unwrap();
        let lhs = l.times(&l).minus(&ResidueInt::from_i64(m, a).times(&l)).plus(&ResidueInt::from_i64(m, p as i64));
        prop_assert!(lhs.vanishes());
        prop_assert!(l.is_unit());
    }

    #[test]
    fn power_is_additive(f in int_poly(2), a in 0u64..=4, b in 0u64..=4) {
        prop_assert_eq!(f.pow(a + b), f.pow(a).times(&f.pow(b)));
    }

    #[test]
    fn modular_power_matches_integer_power(f in int_poly(2), e in 0u64..=10, i in 0usize..4, s in 1u32..=2) {
        let m = Modulus::new(PRIMES[i], s).unwrap();
        let reduce = |g: &LaurentPoly<BigInt>| g.map_coeffs(&m, |c| ResidueInt::new(m, c));
        prop_assert_eq!(reduce(&f).pow(e), reduce(&f.pow(e)));
    }

    #[test]
    fn newton_polytope_of_product_is_minkowski_sum(f in int_poly(2), g in int_poly(2)) {
        let prod = f.times(&g);
        prop_assume!(!f.vanishes() && !g.vanishes() && !prod.vanishes());
        let (pf, pg) = (f.newton_polytope().unwrap(), g.newton_polytope().unwrap());
        let sums: Vec<ExponentVec> = pf.vertices().iter().flat_map(|u| pg.vertices().iter().map(move |v| *u + *v)).collect();
        let mink = LatticePolytope::hull(&sums).unwrap();
        let pp = prod.newton_polytope().unwrap();
        prop_assert_eq!(pp.vertices(), mink.vertices());
    }

    #[test]
    fn hull_is_idempotent_and_points_check(pts in points_2d()) {
        let p = LatticePolytope::hull(&pts).unwrap();
        let again = LatticePolytope::hull(p.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
        prop_assert_eq!(again.lattice_points(), p.lattice_points());
        let all = p.lattice_points();
        for u in &pts {
            prop_assert!(all.contains(u));
        }
        let interior = p.interior_lattice_points();
        for u in &interior {
            prop_assert!(all.contains(u) && p.contains_interior(u));
        }
        let mu = open_subset(&p, &MuSpec::interior()).unwrap();
        prop_assert_eq!(mu.points(), &interior[..]);
        let everything = open_subset(&p, &MuSpec::all()).unwrap();
        prop_assert_eq!(everything.points(), &all[..]);
    }

    #[test]
    fn series_inverse_and_truncation((f, g) in (0usize..3, 1u32..=3).prop_flat_map(|(i, s)| (series(PRIMES[i], s, 12), series(PRIMES[i], s, 12)))) {
        if let Some(inv) = f.inverse() {
            prop_assert!(f.times(&inv).is_unity());
        }
        let t = |x: &TruncSeries| x.truncate(7).unwrap();
        prop_assert_eq!(t(&f.times(&g)), t(&f).times(&t(&g)));
        prop_assert_eq!(t(&f.frobenius()), t(&f).frobenius());
        prop_assert_eq!(t(&f.derive()), t(&f).derive());
        let s = f.modulus().s();
        if s > 1 {
            let r = |x: &TruncSeries| x.reduce(s - 1).unwrap();
            prop_assert_eq!(r(&f.times(&g)), r(&f).times(&r(&g)));
            prop_assert_eq!(r(&f.frobenius()), r(&f).frobenius());
        }
    }

    #[test]
    fn leibniz_and_frobenius_commutation((f, g) in (0usize..3, 1u32..=3).prop_flat_map(|(i, s)| (series(PRIMES[i], s, 15), series(PRIMES[i], s, 15)))) {
        prop_assert_eq!(f.times(&g).derive(), f.derive().times(&g).plus(&f.times(&g.derive())));
        prop_assert_eq!(f.times(&g).frobenius(), f.frobenius().times(&g.frobenius()));
        let p = BigInt::from(f.modulus().p());
        prop_assert_eq!(f.frobenius().derive(), f.derive().frobenius().scale_int(&p));
    }

    #[test]
    fn matrix_inverse(entries in (0usize..3).prop_flat_map(|i| prop::collection::vec(series(PRIMES[i], 2, 8), 9))) {
        let labels: Vec<IndexLabel> = (0..3).map(IndexLabel::Column).collect();
        let m = PeriodMatrix::from_fn(labels.clone(), |r, c| entries[3 * r + c].clone());
        let id = PeriodMatrix::identity(labels, &entries[0].series_ctx());
        match sr_mat_inverse(&m) {
            Ok(inv) => {
                prop_assert_eq!(m.mul(&inv), id.clone());
                prop_assert_eq!(inv.mul(&m), id);
            }
            Err(_) => prop_assert!(!m.det().is_unit()),
        }
    }
}
