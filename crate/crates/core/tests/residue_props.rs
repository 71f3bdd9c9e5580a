mod oracle;

use std::collections::HashSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use sepcert_core::residue::{abelian_closure, bfs_closure, build_residue_map, group_closure, product_hom};
use sepcert_core::{FiniteRing, HomDescription, IntPoly, Matrix, NumberField, Rational};

use oracle::Ring;

fn fields() -> Vec<NumberField> {
    vec![
        NumberField::rationals(),
        NumberField::new(IntPoly::from_i64(&[1, 0, 1]).unwrap()).unwrap(),
        NumberField::new(IntPoly::from_i64(&[-2, 0, 1]).unwrap()).unwrap(),
    ]
}

fn matrix(k: &NumberField, n: usize, entries: &[(i64, i64, i64)]) -> Matrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b, d) = entries[i * n + j];
                    let c = [a, b][..k.degree()].iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(d))).collect();
                    k.element(c).unwrap()
                })
                .collect()
        })
        .collect();
    Matrix::new(k, rows).unwrap()
}

fn entries() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-20i64..=20, -20i64..=20, prop::sample::select(vec![1i64, 2, 4, 8])), 9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn residue_maps_are_multiplicative(
        fi in 0usize..3,
        q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 13, 15, 21]),
        n in 1usize..=3,
        a in entries(),
        b in entries(),
    ) {
        let k = &fields()[fi];
        let avoid = [BigInt::from(2)];
        let Ok(map) = build_residue_map(k, &BigInt::from(q), &avoid) else {
            return Err(TestCaseError::reject("modulus shares a factor with the discriminant"));
        };
        let ring = Ring { q, g: map.ring().poly().to_vec() };
        let (a, b) = (matrix(k, n, &a), matrix(k, n, &b));
        let fa = map.apply_matrix(&a).unwrap();
        let fb = map.apply_matrix(&b).unwrap();
        prop_assert_eq!(map.apply_matrix(&a.mul(&b)).unwrap(), map.ring().mat_mul(&fa, &fb));
        prop_assert_eq!(fa.entries(), ring.matrix(&a).unwrap());
        let split = product_hom(&[HomDescription::single(map.clone()), HomDescription::single(map.clone())]).unwrap();
        let pair = split.apply_matrix(&a.mul(&b)).unwrap();
        prop_assert_eq!(&pair[0], &pair[1]);
        prop_assert_eq!(split.mul(&split.apply_matrix(&a).unwrap(), &split.apply_matrix(&b).unwrap()), pair);
    }

    #[test]
    fn finite_ring_matches_the_reference(
        q in prop::sample::select(vec![2u64, 4, 7, 12, 25, 101]),
        g in prop::collection::vec(0u64..1000, 1..=3),
        a in prop::collection::vec(0u64..1000, 3),
        b in prop::collection::vec(0u64..1000, 3),
        c in prop::collection::vec(0u64..1000, 3),
    ) {
        let mut poly: Vec<u64> = g.iter().map(|x| x % q).collect();
        poly.push(1);
        let ring = FiniteRing::new(q, poly.clone()).unwrap();
        let reference = Ring { q, g: poly };
        let d = ring.degree();
        let (a, b, c) = (ring.reduce_poly(&a[..d]), ring.reduce_poly(&b[..d]), ring.reduce_poly(&c[..d]));
        prop_assert_eq!(ring.mul(&a, &b), reference.mul(&a, &b));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
        if let Some(inv) = ring.inverse(&a) {
            prop_assert_eq!(ring.mul(&a, &inv), ring.one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closures_are_closed_under_products_and_inverses(
        q in prop::sample::select(vec![2u64, 3, 4, 5]),
        gens in prop::collection::vec(prop::collection::vec(0u64..5, 4), 1..=2),
    ) {
        let ring = FiniteRing::new(q, vec![0, 1]).unwrap();
        let gens: Vec<_> = gens
            .iter()
            .map(|g| ring.matrix(2, &g.iter().map(|&x| vec![x % q]).collect::<Vec<_>>()))
            .filter(|m| ring.is_invertible(m))
            .collect();
        prop_assume!(!gens.is_empty());
        let group = group_closure(&ring, 2, &gens, 100_000).unwrap();
        let elements = group.closure.elements();
        let identity = ring.identity(2);
        prop_assert!(group.contains(&identity));
        for x in elements {
            for y in elements {
                prop_assert!(group.contains(&ring.mat_mul(x, y)));
            }
            let order = ring.matrix_order(x, 100_000).unwrap();
            prop_assert!(group.contains(&ring.mat_pow(x, order - 1)));
            prop_assert_eq!(ring.mat_mul(x, &ring.mat_pow(x, order - 1)), identity.clone());
        }
    }

    #[test]
    fn coset_closure_agrees_with_breadth_first(
        q in prop::sample::select(vec![7u64, 11, 13, 101]),
        gens in prop::collection::vec(1u64..101, 0..=4),
    ) {
        let mul = |a: &u64, b: &u64| a * b % q;
        let gens: Vec<u64> = gens.iter().map(|g| g % q).filter(|&g| g != 0).collect();
        let a: HashSet<u64> = abelian_closure(1, &gens, mul, 1000).unwrap().elements().iter().copied().collect();
        let b: HashSet<u64> = bfs_closure(1, &gens, mul, 1000).unwrap().elements().iter().copied().collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn prime_residue_rings_are_fields() {
    let k = NumberField::rationals();
    for q in [2u64, 3, 5, 7, 11, 13] {
        let ring = build_residue_map(&k, &BigInt::from(q), &[]).unwrap().ring().clone();
        for a in 1..q {
            assert_eq!(ring.mul(&[a], &ring.inverse(&[a]).expect("unit")), ring.one(), "{a} mod {q}");
        }
    }
}
