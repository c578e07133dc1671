use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relsmooth_core::algebra::ComponentImage;
use relsmooth_core::fdrel::{random_module, DEFAULT_CHAIN_LIMIT};
use relsmooth_core::*;

fn q() -> Field {
    Field::Rational
}

fn budget() -> Budget {
    Budget::default()
}

fn extnat() -> impl Strategy<Value = ExtendedNat> {
    prop_oneof![
        (0u64..6).prop_map(ExtendedNat::Finite),
        Just(ExtendedNat::Infinite),
        (0u64..6).prop_map(ExtendedNat::AtLeast),
    ]
}

/// `Q[x]/(x^n)`, `Q[x]/(x^2 - 1)` and `Q × Q`.
fn fd_algebra(which: u8) -> FDAlgebra {
    let pres = match which {
        0 => PresentedAlgebra::quotient(q(), &["x"], |r| vec![Poly::var(r, 0).pow(2).unwrap()], &budget()),
        1 => PresentedAlgebra::quotient(q(), &["x"], |r| vec![Poly::var(r, 0).pow(3).unwrap()], &budget()),
        2 => PresentedAlgebra::quotient(
            q(),
            &["x"],
            |r| vec![&Poly::var(r, 0).pow(2).unwrap() - &Poly::one(r)],
            &budget(),
        ),
        _ => {
            let p = PresentedAlgebra::ground(q());
            PresentedAlgebra::product(&[&p, &p])
        }
    }
    .unwrap();
    fd_from_presentation(&pres).unwrap().algebra
}

fn subalgebra(a: &FDAlgebra, whole: bool) -> FDSubalgebra {
    if whole {
        FDSubalgebra::whole(a)
    } else {
        FDSubalgebra::scalars(a)
    }
}

/// `Q[t] → Q[t,x]/(x^2 + q(t) x + r(t))`, always finite free of rank 2.
fn monic_quadratic(qc: &[i64], rc: &[i64]) -> RingMap {
    let base = PresentedAlgebra::quotient(q(), &["t"], |_| vec![], &budget()).unwrap();
    let uni = |r: &Arc<PolyRing>, cs: &[i64]| {
        cs.iter().enumerate().fold(Poly::zero(r), |acc, (i, &c)| {
            &acc + &Poly::constant(r, q().from_i64(c)).checked_mul(&Poly::var(r, 0).pow(i as u32).unwrap()).unwrap()
        })
    };
    let a = PresentedAlgebra::quotient(
        q(),
        &["t", "x"],
        |r| {
            let x = Poly::var(r, 1);
            vec![&(&x.pow(2).unwrap() + &(&uni(r, qc) * &x)) + &uni(r, rc)]
        },
        &budget(),
    )
    .unwrap();
    let ring = a.component(0).ring().clone();
    RingMap::new(base, a, vec![ComponentImage { source: 0, images: vec![Poly::var(&ring, 0)] }]).unwrap()
}

/// Integer polynomial arithmetic for the discriminant oracle.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `x^2 + q x + r` is smooth over `k[t]` iff `q^2 - 4r` is a nonzero constant.
fn discriminant_is_unit(qc: &[i64], rc: &[i64]) -> bool {
    let mut d = poly_mul(qc, qc);
    for (i, c) in rc.iter().enumerate() {
        d[i] -= 4 * c;
    }
    d[0] != 0 && d[1..].iter().all(|&c| c == 0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn join_is_a_semilattice(a in extnat(), b in extnat(), c in extnat()) {
        prop_assert_eq!(a.join(b), b.join(a));
        prop_assert_eq!(a.join(b).join(c), a.join(b.join(c)));
        prop_assert_eq!(a.join(a), a);
        prop_assert!(a.le_join(a.join(b)));
    }

    #[test]
    fn infinity_absorbs(a in extnat()) {
        prop_assert_eq!(a.add(ExtendedNat::Infinite), ExtendedNat::Infinite);
        prop_assert_eq!(a.join(ExtendedNat::Infinite), ExtendedNat::Infinite);
        prop_assert!(a.le_join(ExtendedNat::Infinite));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn induced_modules_are_relatively_projective(which in 0u8..4, whole in any::<bool>(), seed in any::<u64>()) {
        let a = fd_algebra(which);
        let b = subalgebra(&a, whole);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_module(b.as_algebra(), 3, &mut rng);
        let ind = induce(&b, &v);
        prop_assert!(rel_projective_test(&b, &ind.module).is_some());
    }

    #[test]
    fn resolutions_are_contracted_complexes(which in 0u8..4, whole in any::<bool>(), seed in any::<u64>()) {
        let a = fd_algebra(which);
        let b = subalgebra(&a, whole);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, 4, &mut rng);
        let res = standard_resolution(&b, &m, 3);
        prop_assert!(res.is_complex());
        prop_assert!(res.is_contracted());
        prop_assert!(res.is_linear(&b));
    }

    #[test]
    fn rel_pd_bounded_by_cdim(which in 0u8..4, whole in any::<bool>(), seed in any::<u64>()) {
        let a = fd_algebra(which);
        let b = subalgebra(&a, whole);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, 4, &mut rng);
        let cdim = cdim_fd(&b, 3).unwrap();
        prop_assert!(rel_pd(&b, &m, 3).le_join(cdim));
    }

    #[test]
    fn tor_zero_is_tensor_product(which in 0u8..4, seed in any::<u64>()) {
        let a = fd_algebra(which);
        let b = FDSubalgebra::scalars(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, 3, &mut rng);
        let n = random_module(&a, 3, &mut rng);
        let tor = rel_tor(&b, &m, &n, 0, 2);
        let direct = relsmooth_core::fdrel::tensor_over(&m, &n).dim();
        prop_assert_eq!(tor.degrees[0].dim, Some(direct));
    }

    #[test]
    fn hh_zero_is_dim_a(which in 0u8..4, whole in any::<bool>()) {
        let a = fd_algebra(which);
        let b = subalgebra(&a, whole);
        let hh = rel_bar_homology(&b, 1, DEFAULT_CHAIN_LIMIT).unwrap();
        prop_assert_eq!(hh[0], a.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn monic_quadratics_match_discriminant(
        qc in prop::collection::vec(-2i64..3, 1..3),
        rc in prop::collection::vec(-2i64..3, 1..3),
    ) {
        let f = monic_quadratic(&qc, &rc);
        let rep = is_smooth(&f, &budget()).unwrap();
        prop_assert_eq!(rep.flatness, Some(FlatnessStatus::Verified));
        let expected = if discriminant_is_unit(&qc, &rc) { Verdict::Smooth } else { Verdict::NotSmooth };
        prop_assert_eq!(rep.verdict, expected);
        let gl = rel_gldim(&f, &budget()).unwrap().value;
        prop_assert_eq!(gl.is_finite(), expected == Verdict::Smooth);
    }

    #[test]
    fn fibers_bound_relative_dimension(
        qc in prop::collection::vec(-2i64..3, 1..3),
        rc in prop::collection::vec(-2i64..3, 1..3),
        t in -3i64..4,
    ) {
        let f = monic_quadratic(&qc, &rc);
        let total = rel_gldim(&f, &budget()).unwrap().value;
        let point = FiberPoint { component: 0, coords: vec![q().from_i64(t)] };
        let fiber = fiber_gldim(&fiber_algebra(&f, &point, &budget()).unwrap(), &budget()).unwrap().value;
        prop_assert!(fiber.le_join(total));
    }

    #[test]
    fn tensor_of_smooth_maps_adds(a in 0usize..2, b in 0usize..2) {
        // Relative affine spaces of dimension a and b over a point and a line.
        let make = |n: usize| {
            let base = PresentedAlgebra::quotient(q(), &["t"], |_| vec![], &budget()).unwrap();
            let names: Vec<String> = std::iter::once("t".to_string()).chain((0..n).map(|i| format!("y{i}"))).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let target = PresentedAlgebra::quotient(q(), &refs, |_| vec![], &budget()).unwrap();
            let r = target.component(0).ring().clone();
            RingMap::new(base, target, vec![ComponentImage { source: 0, images: vec![Poly::var(&r, 0)] }]).unwrap()
        };
        let check = tensor_gldim_check(&make(a), &make(b), &budget()).unwrap();
        prop_assert_eq!(check.product, ExtendedNat::Finite((a + b) as u64));
        prop_assert!(check.additive);
    }
}
