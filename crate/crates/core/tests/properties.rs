use num_bigint::BigInt;
use proptest::prelude::*;

use quatsuper::biderivations::{
    canonical_eval, has_symmetry, is_super_biderivation, symmetry_split, CanonicalFamily,
};
use quatsuper::derivations::{
    inner_decomposition, inner_superderivation, is_superderivation, superbracket, DerivationParams,
};
use quatsuper::json;
use quatsuper::linear::nullspace;
use quatsuper::local::{classify_local, LocalVerdict};
use quatsuper::{
    AlgebraParams, BilinMap, LinMap, Matrix, Parity, Quaternion, Ring, RingElement, Symmetry,
};

fn rationals() -> impl Strategy<Value = Ring> {
    Just(Ring::Rationals)
}

fn prime_fields() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 101, 65537])
        .prop_map(|p| Ring::prime_field(p).unwrap())
}

fn residue_rings() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec![3u64, 9, 15, 21, 25, 27, 35])
        .prop_map(|n| Ring::residue_ring(n).unwrap())
}

fn fields() -> impl Strategy<Value = Ring> {
    prop_oneof![rationals(), prime_fields()]
}

fn any_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![rationals(), prime_fields(), residue_rings()]
}

fn element(ring: Ring) -> BoxedStrategy<RingElement> {
    match ring.modulus() {
        Some(m) => (0..m).prop_map(move |v| ring.from_residue(v)).boxed(),
        None => (-30i64..=30, 1i64..=12)
            .prop_map(move |(n, d)| {
                ring.from_fraction(&BigInt::from(n), &BigInt::from(d))
                    .unwrap()
            })
            .boxed(),
    }
}

fn unit(ring: Ring) -> BoxedStrategy<RingElement> {
    element(ring)
        .prop_filter("unit", RingElement::is_unit)
        .boxed()
}

fn triple(ring: Ring) -> impl Strategy<Value = (RingElement, RingElement, RingElement)> {
    (element(ring), element(ring), element(ring))
}

fn algebra(rings: impl Strategy<Value = Ring>) -> impl Strategy<Value = AlgebraParams> {
    rings.prop_flat_map(|r| {
        (unit(r), unit(r)).prop_map(move |(a, b)| AlgebraParams::new(r, a, b).unwrap())
    })
}

fn quaternion(h: &AlgebraParams) -> impl Strategy<Value = Quaternion> {
    let h = h.clone();
    prop::collection::vec(element(h.ring()), 4).prop_map(move |v| h.from_vector(&v).unwrap())
}

fn quaternions(
    h: AlgebraParams,
    n: usize,
) -> impl Strategy<Value = (AlgebraParams, Vec<Quaternion>)> {
    prop::collection::vec(quaternion(&h), n).prop_map(move |xs| (h.clone(), xs))
}

fn linmap(h: &AlgebraParams) -> impl Strategy<Value = LinMap> {
    let h = h.clone();
    prop::collection::vec(element(h.ring()), 16)
        .prop_map(move |v| LinMap::from_flat(&h, &v).unwrap())
}

fn bilinmap(h: &AlgebraParams) -> impl Strategy<Value = BilinMap> {
    let h = h.clone();
    prop::collection::vec(element(h.ring()), 64)
        .prop_map(move |v| BilinMap::from_flat(&h, &v).unwrap())
}

fn derivation(h: &AlgebraParams, degree: Parity) -> impl Strategy<Value = LinMap> {
    let h = h.clone();
    let n = quatsuper::derivations::family_size(degree);
    prop::collection::vec(element(h.ring()), n).prop_map(move |c| {
        DerivationParams::from_coords(degree, &c)
            .unwrap()
            .to_linmap(&h)
            .unwrap()
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn check_ring_axioms(
    x: &RingElement,
    y: &RingElement,
    z: &RingElement,
) -> Result<(), TestCaseError> {
    let r = x.ring();
    prop_assert_eq!(&(x + y) + z, x + &(y + z));
    prop_assert_eq!(&(x * y) * z, x * &(y * z));
    prop_assert_eq!(x + y, y + x);
    prop_assert_eq!(x * y, y * x);
    prop_assert_eq!(x * &(y + z), &(x * y) + &(x * z));
    prop_assert_eq!(x + &r.zero(), x.clone());
    prop_assert_eq!(x * &r.one(), x.clone());
    prop_assert!((x + &-x).is_zero());
    prop_assert_eq!(x - y, x + &-y);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_over_rationals((x, y, z) in triple(Ring::Rationals)) {
        check_ring_axioms(&x, &y, &z)?;
    }

    #[test]
    fn ring_axioms_over_prime_fields((x, y, z) in prime_fields().prop_flat_map(triple)) {
        check_ring_axioms(&x, &y, &z)?;
    }

    #[test]
    fn ring_axioms_over_residue_rings((x, y, z) in residue_rings().prop_flat_map(triple)) {
        check_ring_axioms(&x, &y, &z)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_string_round_trips(x in any_ring().prop_flat_map(element)) {
        prop_assert_eq!(x.ring().parse(&x.to_string()).unwrap(), x.clone());
        let v = json::element_to_json(&x);
        prop_assert_eq!(json::element_from_json(x.ring(), &v).unwrap(), x);
    }

    #[test]
    fn inverse_exists_exactly_for_units(x in any_ring().prop_flat_map(element)) {
        match x.try_invert() {
            Ok(inv) => {
                prop_assert!(x.is_unit());
                prop_assert!((&x * &inv).is_one());
            }
            Err(_) => prop_assert!(!x.is_unit()),
        }
        if x.ring().is_field() {
            prop_assert_eq!(x.is_unit(), !x.is_zero());
        }
    }

    #[test]
    fn multiplication_is_associative((_, xs) in algebra(any_ring()).prop_flat_map(|h| quaternions(h, 3))) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&(x * y) * z, x * &(y * z));
    }

    #[test]
    fn products_respect_the_grading(
        (_, xs) in algebra(any_ring()).prop_flat_map(|h| quaternions(h, 2)),
        px in parity(),
        py in parity(),
    ) {
        let prod = &xs[0].component(px) * &xs[1].component(py);
        prop_assert!(prod.component(px + py + Parity::Odd).is_zero());
    }

    #[test]
    fn lie_plus_twice_jordan_is_twice_the_product(
        (h, xs) in algebra(any_ring()).prop_flat_map(|h| quaternions(h, 2)),
    ) {
        let (x, y) = (&xs[0], &xs[1]);
        let two = h.ring().from_i64(2);
        let lhs = &x.lie_super(y).unwrap() + &x.jordan_super(y).unwrap().scale(&two);
        prop_assert_eq!(lhs, (x * y).scale(&two));
    }

    #[test]
    fn lie_superproduct_is_super_anticommutative(
        (_, xs) in algebra(any_ring()).prop_flat_map(|h| quaternions(h, 2)),
        px in parity(),
        py in parity(),
    ) {
        let (x, y) = (xs[0].component(px), xs[1].component(py));
        let swapped = y.lie_super(&x).unwrap();
        let expected = if px.times(py).is_odd() { swapped } else { -swapped };
        prop_assert_eq!(x.lie_super(&y).unwrap(), expected);
    }

    #[test]
    fn nullspace_invariants(
        (ring, rows, cols, entries) in prime_fields().prop_flat_map(|r| (1usize..6, 1usize..8).prop_flat_map(move |(m, n)| {
            (Just(r), Just(m), Just(n), prop::collection::vec(element(r), m * n))
        })),
    ) {
        let a = Matrix::from_rows(ring, entries.chunks(cols).map(<[_]>::to_vec).collect()).unwrap();
        prop_assert_eq!(a.rows(), rows);
        let space = nullspace(&a).unwrap();
        let again = nullspace(&a).unwrap();
        for v in space.basis() {
            prop_assert!(a.mul_vec(v).iter().all(RingElement::is_zero));
        }
        prop_assert_eq!(a.rank().unwrap() + space.dim(), cols);
        prop_assert!(space.is_independent().unwrap());
        prop_assert_eq!(again.basis(), space.basis());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bilinear_evaluation_is_bilinear(
        (b, xs, c) in algebra(fields()).prop_flat_map(|h| {
            (bilinmap(&h), prop::collection::vec(quaternion(&h), 3), element(h.ring()))
        }),
    ) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(b.eval(&(x + y), z).unwrap(), &b.eval(x, z).unwrap() + &b.eval(y, z).unwrap());
        prop_assert_eq!(b.eval(z, &(x + y)).unwrap(), &b.eval(z, x).unwrap() + &b.eval(z, y).unwrap());
        prop_assert_eq!(b.eval(&x.scale(&c), y).unwrap(), b.eval(x, y).unwrap().scale(&c));
        prop_assert_eq!(b.eval(x, &y.scale(&c)).unwrap(), b.eval(x, y).unwrap().scale(&c));
    }

    #[test]
    fn canonical_eval_matches_the_tensor(
        (h, xs, lam) in algebra(fields()).prop_flat_map(|h| {
            let r = h.ring();
            (Just(h.clone()), prop::collection::vec(quaternion(&h), 2), element(r))
        }),
    ) {
        let tensor = CanonicalFamily::new(lam.clone()).to_bilinmap(&h).unwrap();
        prop_assert_eq!(canonical_eval(&lam, &xs[0], &xs[1]).unwrap(), tensor.eval(&xs[0], &xs[1]).unwrap());
        prop_assert!(is_super_biderivation(&tensor, Parity::Even).is_ok());
        prop_assert!(has_symmetry(&tensor, Symmetry::SuperSkew));
    }

    #[test]
    fn symmetry_split_re_adds(b in algebra(any_ring()).prop_flat_map(|h| bilinmap(&h))) {
        let (skew, sym) = symmetry_split(&b);
        prop_assert_eq!(skew.add(&sym).unwrap(), b);
        prop_assert!(has_symmetry(&skew, Symmetry::SuperSkew));
        prop_assert!(has_symmetry(&sym, Symmetry::SuperSymmetric));
    }

    #[test]
    fn inner_decomposition_has_homogeneous_parts(x in algebra(any_ring()).prop_flat_map(|h| quaternion(&h))) {
        let (even, odd) = inner_decomposition(&x);
        prop_assert!(is_superderivation(&even, Parity::Even).is_ok());
        prop_assert!(is_superderivation(&odd, Parity::Odd).is_ok());
        prop_assert_eq!(even.add(&odd).unwrap(), inner_superderivation(&x));
    }

    #[test]
    fn superbracket_stays_in_der(
        (d, e, alpha, beta) in (algebra(fields()), parity(), parity()).prop_flat_map(|(h, alpha, beta)| {
            (derivation(&h, alpha), derivation(&h, beta), Just(alpha), Just(beta))
        }),
    ) {
        let bracket = superbracket((&d, alpha), (&e, beta)).unwrap();
        prop_assert!(is_superderivation(&bracket, alpha + beta).is_ok());
    }

    #[test]
    fn derivations_are_local_with_their_own_parameters(
        (d, degree) in (algebra(fields()), parity()).prop_flat_map(|(h, deg)| (derivation(&h, deg), Just(deg))),
    ) {
        match classify_local(&d, degree).unwrap() {
            LocalVerdict::IsDerivation(p) => prop_assert_eq!(p, DerivationParams::read_from(&d, degree)),
            LocalVerdict::NotLocal { witness, .. } => prop_assert!(false, "rejected at {}", witness),
        }
    }

    #[test]
    fn linmap_json_round_trips(m in algebra(any_ring()).prop_flat_map(|h| linmap(&h))) {
        let v = json::linmap_to_json(&m);
        prop_assert_eq!(json::linmap_from_json(m.params(), &v).unwrap(), m);
    }

    #[test]
    fn slices_of_the_canonical_family(
        (h, x, lam, px) in algebra(fields()).prop_flat_map(|h| {
            let r = h.ring();
            (Just(h.clone()), quaternion(&h), element(r), parity())
        }),
    ) {
        let b = CanonicalFamily::new(lam).to_bilinmap(&h).unwrap();
        let x = x.component(px);
        prop_assert!(is_superderivation(&b.left_slice(&x).unwrap(), px).is_ok());
        // y -> δ(y, x) needs the sign (-1)^{|y|} when x is odd.
        let right = b.right_slice(&x).unwrap();
        let right = match px {
            Parity::Even => right,
            Parity::Odd => right.compose(&grade_involution(&h)).unwrap(),
        };
        prop_assert!(is_superderivation(&right, px).is_ok());
    }
}

/// `y0 + y1 -> y0 - y1`.
fn grade_involution(h: &AlgebraParams) -> LinMap {
    LinMap::from_i64(
        h,
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    )
}

#[test]
fn plain_right_slice_at_an_odd_element_is_not_a_superderivation() {
    let h = AlgebraParams::from_i64(Ring::Rationals, 2, 3).unwrap();
    let b = CanonicalFamily::new(h.ring().one())
        .to_bilinmap(&h)
        .unwrap();
    let right = b.right_slice(&h.basis(2)).unwrap();
    assert!(is_superderivation(&right, Parity::Odd).is_err());
    assert!(
        is_superderivation(&right.compose(&grade_involution(&h)).unwrap(), Parity::Odd).is_ok()
    );
}
